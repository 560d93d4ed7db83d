import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from bendercuts.cglp import Directional, MisOnes, build_alt_polyhedron
from bendercuts.errors import (EmptyEpigraph, PreconditionViolated,
                               StrategyUnbounded, UnboundedDirection,
                               ZeroCertificate)
from bendercuts.model import (EpiPoint, FiniteDomain, Instance, PolyhedralDomain,
                              epi_contains, subproblem_value)
from bendercuts.randgen import interior_epi_point, random_instance, separable_point
from bendercuts.separation import (Certificate, Cut, DirectionClass, IN_EPIGRAPH,
                                   SEPARATED, boundedness_check, canonical_cut,
                                   certificate_to_cut, exposed_point, separate,
                                   tighten_rhs)
from bendercuts.verify import is_vertex

from conftest import P1, P2, P3, P1_CUT, P2_CUT, P3_CUT, same_cut


def test_certificate_validation():
    with pytest.raises(PreconditionViolated):
        Certificate(row_multipliers=(F(-1),), eta_multiplier=F(0))
    cert = Certificate(row_multipliers=(F(0), F(2)), eta_multiplier=F(1))
    assert cert.as_tuple() == (F(0), F(2), F(1))
    assert cert.support == (1, 2)


def test_cut_validation():
    with pytest.raises(ZeroCertificate):
        Cut(coef_x=(F(0),), coef_eta=F(0), rhs=F(1))
    with pytest.raises(PreconditionViolated):
        Cut(coef_x=(F(1),), coef_eta=F(1), rhs=F(0))


def test_certificate_to_cut_vertices(ex1):
    for vertex, cut in ((P1, P1_CUT), (P2, P2_CUT), (P3, P3_CUT)):
        cert = Certificate(row_multipliers=vertex[:3], eta_multiplier=vertex[3])
        assert same_cut(certificate_to_cut(ex1, cert), cut)


def test_canonical_cut_scale_invariance():
    a = Cut(coef_x=(F(-2, 7),), coef_eta=F(-2, 7), rhs=F(-1))
    b = Cut(coef_x=(F(-2),), coef_eta=F(-2), rhs=F(-7))
    assert canonical_cut(a) == canonical_cut(b)


def test_mis_selection(ex1, origin):
    result = separate(ex1, origin, MisOnes())
    assert result.kind == SEPARATED
    assert same_cut(result.cut, P3_CUT)
    assert result.supporting is False
    assert result.cglp_value == F(-5, 14)
    assert result.certificate.as_tuple() == P3


def test_directional_selection(ex1, origin):
    result = separate(ex1, origin, Directional((F(2),), F(3)))
    assert result.kind == SEPARATED
    assert same_cut(result.cut, P2_CUT)
    assert result.supporting is True
    assert result.cglp_value == F(-4, 3)
    assert result.certificate.as_tuple() == P2


def test_point_inside_epigraph(ex1):
    result = separate(ex1, EpiPoint((F(2),), F(3)), MisOnes())
    assert result.kind == IN_EPIGRAPH
    assert result.cut is None


def test_strategy_unbounded(ex1, origin):
    with pytest.raises(StrategyUnbounded):
        separate(ex1, origin, Directional((F(-1),), F(0)))


def test_empty_epigraph_error(origin):
    inst = Instance(n=1, k=1, m=2, c=(F(1),), d=(F(1),),
                    H=((F(0),), (F(0),)), A=((F(1),), (F(-1),)),
                    b=(F(-1), F(0)),
                    master_domain=PolyhedralDomain(G=((F(-1),),), g=(F(0),)),
                    eta_lower_bound=F(0))
    with pytest.raises(EmptyEpigraph):
        separate(inst, origin, MisOnes())


def test_tighten_rhs(ex1):
    # the redundant-row cut pulls tight onto the epigraph
    assert tighten_rhs(ex1, (F(-2, 7),), F(-2, 7)) == F(-22, 21)
    # already supporting cuts stay put
    assert tighten_rhs(ex1, (F(-2, 5),), F(-1, 5)) == F(-1)
    with pytest.raises(UnboundedDirection):
        tighten_rhs(ex1, (F(1),), F(0))


def test_boundedness_trichotomy(ex1, origin):
    assert boundedness_check(ex1, origin, (F(2),), F(3)) == DirectionClass.IN_SET
    assert boundedness_check(ex1, origin, (F(-1),), F(0)) == DirectionClass.OUTSIDE
    small = boundedness_check(ex1, origin, (F(2, 100),), F(3, 100))
    assert small in (DirectionClass.IN_SET, DirectionClass.IN_CLOSED_CONE)
    assert small == DirectionClass.IN_CLOSED_CONE  # too short to reach epi(z)


def test_exposed_point(ex1, origin):
    p = exposed_point(ex1, origin, (F(2),), F(3))
    assert p == EpiPoint((F(3, 2),), F(9, 4))
    cut = separate(ex1, origin, Directional((F(2),), F(3))).cut
    assert cut.value_at(p) == cut.rhs
    # a boundary point of epi(z) is its own exposed point
    assert exposed_point(ex1, origin, (F(4, 3),), F(7, 3)) == EpiPoint((F(4, 3),), F(7, 3))
    with pytest.raises(PreconditionViolated):
        exposed_point(ex1, EpiPoint((F(2),), F(3)), (F(2),), F(3))
    with pytest.raises(PreconditionViolated):
        exposed_point(ex1, origin, (F(-1),), F(0))


@given(st.integers(0, 100_000))
def test_separation_soundness(seed):
    """Any returned cut cuts the query point off, never cuts a sampled value
    function point, and its certificate is a vertex of the relaxed polyhedron."""
    rng = random.Random(seed)
    inst = random_instance(rng)
    point = separable_point(rng, inst)
    if point is None:
        return
    try:
        result = separate(inst, point, MisOnes())
    except StrategyUnbounded:
        return
    assert result.kind == SEPARATED
    cut = result.cut
    assert cut.value_at(point) > cut.rhs
    for _ in range(4):
        x = tuple(F(rng.randint(0, 4)) for _ in range(inst.n))
        z = subproblem_value(inst, x)
        if isinstance(z, F):
            assert cut.holds_at(EpiPoint(x=x, eta=z))
            assert cut.holds_at(EpiPoint(x=x, eta=z + 5))
    relaxed = build_alt_polyhedron(inst, point, relaxed=True)
    assert is_vertex(relaxed, result.certificate.as_tuple())


@given(st.integers(0, 100_000))
def test_directional_value_matches_membership(seed):
    """Directions that land in epi(z) give selection values of at most -1."""
    rng = random.Random(seed)
    inst = random_instance(rng)
    point = separable_point(rng, inst)
    if point is None:
        return
    target = interior_epi_point(rng, inst)
    if target is None:
        return
    direction = tuple(t - p for t, p in zip(target.x, point.x))
    direction_eta = target.eta - point.eta
    result = separate(inst, point, Directional(direction, direction_eta))
    assert result.kind == SEPARATED
    assert result.cglp_value <= -1
    assert boundedness_check(inst, point, direction, direction_eta) == DirectionClass.IN_SET
