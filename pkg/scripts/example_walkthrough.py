"""Tour of the worked example: one master variable, one subproblem variable,
three linking rows.  Prints everything the library can say about it."""

from fractions import Fraction as F
from pathlib import Path

from bendercuts.benders import SolverConfig, solve
from bendercuts.cglp import Directional, MisOnes, build_alt_polyhedron
from bendercuts.cli import format_cut
from bendercuts.instance_io import load_instance
from bendercuts.model import (EpiPoint, Instance, PolyhedralDomain, subproblem_value,
                              undecomposed_value)
from bendercuts.separation import (Certificate, Cut, certificate_to_cut, exposed_point,
                                   separate, tighten_rhs)
from bendercuts.verify import (enumerate_vertices, face_report, is_mis_certificate,
                               pareto_verdict)

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def ge(coef_x, coef_eta, rhs) -> Cut:
    return Cut(coef_x=tuple(-F(v) for v in coef_x), coef_eta=-F(coef_eta), rhs=-F(rhs))


def describe_separation(inst, point, strategy) -> str:
    res = separate(inst, point, strategy)
    return (f"{format_cut(res.cut)}   value {res.cglp_value}, "
            f"supporting: {res.supporting}")


def main():
    inst = load_instance(INSTANCES / "ex1.json")
    origin = EpiPoint(x=(F(0),), eta=F(0))

    print("== value function ==")
    for x in (F(0), F(1), F(4, 3), F(2), F(3)):
        print(f"  z({x}) = {subproblem_value(inst, (x,))}")
    print(f"  joint model optimum: {undecomposed_value(inst)}")

    print("\n== certificate polyhedron at (0, 0) ==")
    for v in enumerate_vertices(build_alt_polyhedron(inst, origin)):
        cert = Certificate(row_multipliers=v[:inst.m], eta_multiplier=v[inst.m])
        cut = certificate_to_cut(inst, cert)
        mis = is_mis_certificate(inst, origin, cert)
        print(f"  vertex ({', '.join(map(str, v))}) -> {format_cut(cut)}"
              f"   minimal support: {mis}")

    print("\n== separation at (0, 0) ==")
    print(f"  smallest multipliers: {describe_separation(inst, origin, MisOnes())}")
    print(f"  direction (2, 3):     "
          f"{describe_separation(inst, origin, Directional((F(2),), F(3)))}")

    print("\n== tightening the redundant-row cut ==")
    # x + eta >= 7/2 misses the epigraph; the best parallel level is 11/3
    rhs = tighten_rhs(inst, (F(-2, 7),), F(-2, 7))
    print(f"  x + eta >= 7/2 pulls tight to x + eta >= {-rhs * F(7, 2)}")

    print("\n== exposed point along (2, 3) ==")
    hit = exposed_point(inst, origin, (F(2),), F(3))
    print(f"  the segment from (0, 0) enters epi(z) at ({hit.x[0]}, {hit.eta})")

    print("\n== cut verdicts over x >= 0 and over x >= 2 ==")
    shifted = Instance(n=1, k=1, m=3, c=inst.c, d=inst.d, H=inst.H, A=inst.A,
                       b=inst.b,
                       master_domain=PolyhedralDomain(G=((F(-1),),), g=(F(-2),)),
                       eta_lower_bound=inst.eta_lower_bound)
    named_cuts = (("2x + eta >= 5  ", ge((2,), 1, 5)),
                  ("x/2 + eta >= 3 ", ge((F(1, 2),), 1, 3)),
                  ("x + eta >= 7/2 ", ge((1,), 1, F(7, 2))))
    for name, cut in named_cuts:
        face = face_report(inst, cut)
        wide = pareto_verdict(inst, cut).kind.value
        narrow = pareto_verdict(shifted, cut).kind.value
        print(f"  {name}: {face.classification.value:16s} "
              f"x>=0 -> {wide:12s} x>=2 -> {narrow}")

    print("\n== full decomposition runs ==")
    for label, strategy in (("smallest multipliers", MisOnes()),
                            ("direction (2, 3)    ", Directional((F(2),), F(3)))):
        run = solve(inst, SolverConfig(strategy=strategy))
        cuts = " | ".join(format_cut(r.cut) for r in run.trace if r.cut is not None)
        print(f"  {label}: value {run.value} in {len(run.trace)} iterations"
              f"   [{cuts}]")

    finite = load_instance(INSTANCES / "ex1_finite.json")
    run = solve(finite, SolverConfig(strategy=MisOnes()))
    print(f"  finite master set    : value {run.value} at x = {run.x[0]}")


if __name__ == "__main__":
    main()
