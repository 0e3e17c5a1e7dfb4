"""Concentration of the Moser family: I_1..I_4 over a geometric eps grid.

Writes results/moser_scan_N{N}_s{s}.csv and prints the gap between
(N w_N)^2 * total and gamma_{s,N}, together with the ratio gap * |ln eps|,
which settles to a constant (the approach to the limit is O(1/|ln eps|)).

    python scripts/moser_scan.py --N 2 --s 0.5 --jmax 12
"""

import argparse
import csv
import math
from pathlib import Path

from fracmt.exponents import FractionalParams, gamma_constant, sphere_area
from fracmt.radialnorm import moser_decomposition

ap = argparse.ArgumentParser()
ap.add_argument("--N", type=int, default=2)
ap.add_argument("--s", type=float, default=0.5)
ap.add_argument("--jmax", type=int, default=12, help="eps = 10^-1 .. 10^-jmax")
ap.add_argument("--outdir", default="results")
args = ap.parse_args()

params = FractionalParams(args.N, args.s)
gamma = gamma_constant(params).gamma_value
c = sphere_area(args.N) ** 2
out = Path(args.outdir)
out.mkdir(exist_ok=True)
path = out / f"moser_scan_N{args.N}_s{args.s:g}.csv"
with path.open("w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["eps", "i1", "i2", "i3", "i4", "total", "gamma_limit", "rel_gap"])
    print(f"{'eps':>8} {'C*total':>12} {'rel gap':>10} {'gap*L':>8} {'i1/total':>9}")
    for j in range(1, args.jmax + 1):
        eps = 10.0 ** -j
        d = moser_decomposition(eps, params)
        gap = c * d.total / gamma - 1.0
        w.writerow([repr(x) for x in (eps, d.i1, d.i2, d.i3, d.i4, d.total, gamma, gap)])
        print(f"{eps:8.0e} {c * d.total:12.6f} {gap:10.4%} {gap * -math.log(eps):8.4f} "
              f"{d.i1 / d.total:9.4%}")
print(f"gamma_{{s,N}} = {gamma!r}; wrote {path}")
