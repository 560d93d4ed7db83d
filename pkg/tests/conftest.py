import random
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from bendercuts.model import EpiPoint, FiniteDomain, Instance, PolyhedralDomain
from bendercuts.separation import Cut, canonical_cut

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# worked example used throughout: one master variable, one subproblem variable,
# three linking rows, the third of which is redundant for the value function
EX1_KW = dict(
    n=1, k=1, m=3,
    c=(F(1),), d=(F(1),),
    H=((F(-2),), (F(-1, 2),), (F(-4),)),
    A=((F(-1),), (F(-1),), (F(-4),)),
    b=(F(-5), F(-3), F(-14)),
    eta_lower_bound=F(0),
)

# vertices of the certificate polyhedron at the origin query point
P1 = (F(1, 5), F(0), F(0), F(1, 5))
P2 = (F(0), F(1, 3), F(0), F(1, 3))
P3 = (F(0), F(0), F(1, 14), F(2, 7))


def ge_cut(coef_x, coef_eta, rhs) -> Cut:
    """Build a Cut from its human >=-form coefficients."""
    return Cut(coef_x=tuple(-F(v) for v in coef_x), coef_eta=-F(coef_eta), rhs=-F(rhs))


# 2x + eta >= 5, x/2 + eta >= 3, x + eta >= 7/2 (from P1, P2, P3)
P1_CUT = ge_cut((2,), 1, 5)
P2_CUT = ge_cut((F(1, 2),), 1, 3)
P3_CUT = ge_cut((1,), 1, F(7, 2))


def same_cut(a: Cut, b: Cut) -> bool:
    return canonical_cut(a) == canonical_cut(b)


@pytest.fixture
def ex1() -> Instance:
    return Instance(master_domain=PolyhedralDomain(G=((F(-1),),), g=(F(0),)), **EX1_KW)


@pytest.fixture
def ex1_shifted() -> Instance:
    """Same data with the master set pushed to x >= 2."""
    return Instance(master_domain=PolyhedralDomain(G=((F(-1),),), g=(F(-2),)), **EX1_KW)


@pytest.fixture
def ex1_finite() -> Instance:
    pts = ((F(0),), (F(1),), (F(2),), (F(3),))
    return Instance(master_domain=FiniteDomain(points=pts), **EX1_KW)


@pytest.fixture
def origin() -> EpiPoint:
    return EpiPoint(x=(F(0),), eta=F(0))


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
