"""Print tangents, branch multiplicities and curvatures of the plane examples at the origin."""
import math

from singcurv import catalog
from singcurv.parse import parse_poly
from singcurv.plane import plane_branch_curvatures
from singcurv.singular import multiplicity


def fmt_vec(d):
    return "(" + ", ".join(f"{c.real:.6g}" + (f"{c.imag:+.6g}i" if c.imag else "") for c in d.components) + ")"


def main():
    for i, text in catalog.PLANE.items():
        F = parse_poly(text)
        print(f"example {i}: {text}  (r = {multiplicity(F, (0, 0))})")
        for b in plane_branch_curvatures(F, (0, 0)):
            k = "inf" if not math.isfinite(b.curvature) else f"{b.curvature:.10g}"
            print(f"    tangent {fmt_vec(b.tangent):28s} mult {b.branch_multiplicity}  k = {k:14s} {b.diagnostics}")


if __name__ == "__main__":
    main()
