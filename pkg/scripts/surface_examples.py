"""Gaussian and mean curvature of the surface examples, with normal-section estimates."""
import numpy as np

from singcurv import catalog
from singcurv.oracle import normal_section_curvatures
from singcurv.parse import parse_poly
from singcurv.surface import surface_branch_curvatures

O3 = (0, 0, 0)


def main():
    for text in (catalog.plane_sphere(1), catalog.plane_sphere(2), catalog.PINCHED):
        F = parse_poly(text, "xyz")
        print(text)
        bs = surface_branch_curvatures(F, O3)
        for b in bs:
            n = b.normal.real_vector
            others = [np.cross(n, o.normal.real_vector) for o in bs if o is not b]
            kg, km = normal_section_curvatures(F, O3, n, avoid=others)
            print(f"    normal {np.round(n, 6)}  K_G = {b.K_gauss:.10g}  |K_M| = {b.K_mean_abs:.10g}"
                  f"  (sections: {kg:.4g}, {abs(km):.4g})")


if __name__ == "__main__":
    main()
