"""Freeze reference values of gamma_{s,N} and alpha*_{s,N} computed with mpmath.

The reference route is independent of the package: 40-digit Hurwitz zeta
values from mpmath, with the polynomial re-centring coefficients expanded by
mpmath polynomial arithmetic, cross-checked against mpmath.nsum of the
defining series.

    python scripts/make_golden.py [--out src/fracmt/data/golden.json]
"""

import argparse
import json
from pathlib import Path

import mpmath as mp

DIMS = (1, 2, 3, 4, 5, 6)
ORDERS = (0.3, 0.5, 0.7, 0.9, 0.95, 0.99)
TOLERANCE = 1e-11


def recentred_coefficients(dim):
    # prod_{j=1}^{N-1} (Y + j - N/2), ascending powers of Y = k + N/2
    coeffs = [mp.mpf(1)]
    for j in range(1, dim):
        c = mp.mpf(j) - mp.mpf(dim) / 2
        out = [mp.mpf(0)] * (len(coeffs) + 1)
        for d, b in enumerate(coeffs):
            out[d + 1] += b
            out[d] += c * b
        coeffs = out
    return coeffs


def series(dim, p):
    q = mp.mpf(dim) / 2
    return mp.mpf(2) ** (-p) * mp.fsum(b * mp.zeta(p - d, q)
                                       for d, b in enumerate(recentred_coefficients(dim)) if b)


def series_nsum(dim, p):
    return mp.nsum(lambda k: mp.rf(k + 1, dim - 1) * (dim + 2 * k) ** (-p), [0, mp.inf], method="euler-maclaurin")


def reference(dim, s):
    s = mp.mpf(s)
    p = dim / s
    area = 2 * mp.pi ** (mp.mpf(dim) / 2) / mp.gamma(mp.mpf(dim) / 2)
    g = 2 * area ** 2 * mp.gamma(p + 1) / mp.factorial(dim) * series(dim, p)
    return g, dim * g ** (s / (dim - s)), p


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1]
                                         / "src" / "fracmt" / "data" / "golden.json"))
    args = ap.parse_args()
    mp.mp.dps = 40
    entries = []
    for dim in DIMS:
        for s in ORDERS:
            g, a, p = reference(dim, s)
            if s in (0.3, 0.5):
                gap = abs(series(dim, p) / series_nsum(dim, p) - 1)
                assert gap < mp.mpf(10) ** -20, (dim, s, gap)
            entries.append({"N": dim, "s": s, "p": float(p), "gamma": float(g),
                            "alpha_star": float(a), "method": "mpmath_hurwitz_40_digits",
                            "tolerance": TOLERANCE})
    doc = {"description": "gamma_{s,N} and alpha*_{s,N} reference values",
           "generator": "scripts/make_golden.py", "entries": entries}
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {len(entries)} entries to {args.out}")


if __name__ == "__main__":
    main()
