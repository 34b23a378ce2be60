"""Circle-fit curvature against the trace radius for every real plane branch.

Writes one CSV per example into the output directory (default: ./traces).
"""
import argparse
import csv
import math
import os

from singcurv import catalog
from singcurv.errors import NoBranch
from singcurv.oracle import curvature_sequence, trace_plane_branch
from singcurv.parse import parse_poly
from singcurv.plane import plane_branch_curvatures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="traces")
    ap.add_argument("--h0", type=float, default=1e-1)
    ap.add_argument("--steps", type=int, default=16)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for i, text in catalog.PLANE.items():
        F = parse_poly(text)
        rows = []
        seen = {}
        for b in plane_branch_curvatures(F, (0, 0)):
            if not b.tangent.is_real:
                continue
            which = seen.setdefault(id(b.tangent), 0)
            seen[id(b.tangent)] += 1
            try:
                samples = trace_plane_branch(F, (0, 0), b.tangent.real_vector, args.h0, args.steps, which)
            except NoBranch:
                continue
            ks = curvature_sequence(samples, (0, 0))
            for s, k in zip(samples[1:], ks):
                rows.append([tuple(round(float(c), 6) for c in b.tangent.real_vector), which, s.h, k,
                             b.curvature if math.isfinite(b.curvature) else "inf"])
        path = os.path.join(args.out, f"example{i}.csv")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["tangent", "which", "h", "k_fit", "k_exact"])
            w.writerows(rows)
        print(f"example {i}: {len(rows)} rows -> {path}")


if __name__ == "__main__":
    main()
