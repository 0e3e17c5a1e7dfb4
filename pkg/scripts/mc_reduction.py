"""Monte Carlo in 2N dimensions against the radial reduction, with seed spread.

    python scripts/mc_reduction.py --samples 1000000 --seeds 0,1,2 --moser-eps 1e-3,1e-5

``--moser-eps`` adds strongly concentrated Moser profiles to each parameter set.
"""

import argparse

from fracmt.exponents import FractionalParams
from fracmt.oracle import REDUCTION_PARAMS, mc_gagliardo, reduction_profiles
from fracmt.radialnorm import moser_profile, seminorm_radial

ap = argparse.ArgumentParser()
ap.add_argument("--samples", type=int, default=1_000_000)
ap.add_argument("--seeds", default="0,1,2")
ap.add_argument("--moser-eps", default="")
args = ap.parse_args()

seeds = [int(x) for x in args.seeds.split(",")]
extra_eps = [float(x) for x in args.moser_eps.split(",") if x]
for dim, s in REDUCTION_PARAMS:
    params = FractionalParams(dim, s)
    cases = dict(reduction_profiles())
    cases.update({f"moser_eps_{e:g}": moser_profile(e, params) for e in extra_eps})
    for name, prof in cases.items():
        radial = seminorm_radial(prof, params).value_p
        for seed in seeds:
            mc = mc_gagliardo(prof, params, args.samples, seed)
            print(f"N={dim} s={s:g} {name:14s} seed {seed}: radial {radial:.6g}  "
                  f"mc {mc.mean:.6g} +- {mc.std_error:.2g}  "
                  f"({(mc.mean - radial) / radial:+.3%}, {(mc.mean - radial) / mc.std_error:+.2f} sigma)")
