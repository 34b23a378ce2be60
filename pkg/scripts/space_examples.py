"""Curvature and torsion of the space-curve examples, with traced estimates."""
import math

from singcurv import catalog
from singcurv.oracle import estimate_frenet, trace_space_branch
from singcurv.parse import parse_poly
from singcurv.space import space_branch_frenet

O3 = (0, 0, 0)
CASES = {
    "sphere and cylinder": catalog.sphere_cylinder(1),
    "tangent cylinders R1=R2=1": catalog.two_cylinders(1, 1),
    "tangent cylinders R1=1, R2=2": catalog.two_cylinders(1, 2),
    "pinched surface and cylinder": catalog.pinched_cylinder(1),
    "pinched surface and xy=0": catalog.PINCHED_XY,
}


def main():
    for name, (f, g) in CASES.items():
        F, G = parse_poly(f, "xyz"), parse_poly(g, "xyz")
        print(f"{name}: F = {f}, G = {g}")
        for b in space_branch_frenet(F, G, O3):
            tau = "undetermined" if b.torsion is None else f"{b.torsion:.10g}"
            line = (f"    tangent {tuple(round(float(c), 6) for c in b.tangent.real_vector)}  mult {b.branch_multiplicity}"
                    f"  k = {b.curvature:.10g}  tau = {tau}  {b.diagnostics}")
            if math.isfinite(b.curvature):
                try:
                    k, t = estimate_frenet(trace_space_branch(F, G, O3, b.tangent.real_vector, 1e-1, 8), O3)
                    line += f"  (trace: {k:.4g}, {t:.3g})"
                except Exception as exc:  # the trace may fail near tangent sheets
                    line += f"  (trace failed: {type(exc).__name__})"
            print(line)


if __name__ == "__main__":
    main()
