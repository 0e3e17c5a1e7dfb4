"""Supremum probe: best functional value against the number of profile values.

    python scripts/probe_dof.py --factors 0.5,0.9,1.2 --dofs 8,16,32
"""

import argparse
import json
from pathlib import Path

from fracmt.exponents import FractionalParams, alpha_star
from fracmt.functional import supremum_probe

ap = argparse.ArgumentParser()
ap.add_argument("--N", type=int, default=2)
ap.add_argument("--s", type=float, default=0.5)
ap.add_argument("--factors", default="0.5,0.9,1.2")
ap.add_argument("--dofs", default="8,16,32")
ap.add_argument("--max-iters", type=int, default=20)
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--outdir", default="results")
args = ap.parse_args()

params = FractionalParams(args.N, args.s)
a_star = alpha_star(params)
runs = []
for f in (float(x) for x in args.factors.split(",")):
    for dof in (int(x) for x in args.dofs.split(",")):
        st = supremum_probe(params, f * a_star, dof, args.max_iters, args.seed)
        print(f"factor {f:g} dof {dof:3d}: start {st.trace[0]:.6g} -> best "
              f"{st.normalized_value:.6g} after {st.iteration} sweeps"
              f"{' (converged)' if st.converged else ''}")
        runs.append({"factor": f, "dof": dof, **st.as_dict()})
out = Path(args.outdir)
out.mkdir(exist_ok=True)
path = out / f"probe_N{args.N}_s{args.s:g}.json"
path.write_text(json.dumps({"alpha_star": a_star, "runs": runs}, indent=1))
print(f"wrote {path}")
