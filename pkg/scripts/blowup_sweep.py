"""Functional values on unit-seminorm Moser profiles for several multiples of alpha*.

Uses a long eps grid so the finite-grid decision rules can be compared with
the asymptotic behaviour.  Writes results/blowup_sweep_N{N}_s{s}.csv.

    python scripts/blowup_sweep.py --factors 0.9,1.0,1.1 --jmax 20
"""

import argparse
import csv
from pathlib import Path

from fracmt.exponents import FractionalParams
from fracmt.functional import blowup_sweep, classify_regime

ap = argparse.ArgumentParser()
ap.add_argument("--N", type=int, default=2)
ap.add_argument("--s", type=float, default=0.5)
ap.add_argument("--factors", default="0.9,1.0,1.1")
ap.add_argument("--jmax", type=int, default=20)
ap.add_argument("--outdir", default="results")
args = ap.parse_args()

params = FractionalParams(args.N, args.s)
factors = [float(x) for x in args.factors.split(",")]
grid = [10.0 ** -j for j in range(1, args.jmax + 1)]
cells = blowup_sweep(params, factors, grid)
out = Path(args.outdir)
out.mkdir(exist_ok=True)
path = out / f"blowup_sweep_N{args.N}_s{args.s:g}.csv"
with path.open("w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["factor", "alpha", "eps", "seminorm_p", "functional_value",
                "regime_full_grid", "regime_first5"])
    for f in factors:
        row = [c for c in cells if c.factor == f]
        first5 = classify_regime([c.value for c in row[:5]])
        for c in row:
            w.writerow([f, repr(c.alpha), repr(c.eps), repr(c.seminorm_p), repr(c.value),
                        c.regime, first5])
        vals = ", ".join(f"{c.value:.4g}" for c in row)
        print(f"factor {f:g}: regime(first 5) = {first5}, regime(all) = {row[0].regime}")
        print(f"  values: {vals}")
print(f"wrote {path}")
