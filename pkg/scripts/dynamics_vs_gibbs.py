"""Compare simulated final probabilities with the Gibbs law for a range of g."""

import argparse
from math import exp, pi

import numpy as np

from bcs_anneal import gibbs
from bcs_anneal.gibbs import GibbsLaw
from bcs_anneal.hamiltonians import BCSModel, generate_levels
from bcs_anneal.propagate import READOUTS, propagate
from bcs_anneal.sector import build_sector


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--g-list", default="0.1,0.5,1.0")
    ap.add_argument("--t1", type=float, default=1e3)
    ap.add_argument("--readout", choices=sorted(READOUTS), default="asymptotic")
    ap.add_argument("--min-pair-prob", type=float, default=1e-3)
    args = ap.parse_args()

    sec = build_sector(args.n, 0)
    lv = generate_levels(args.n, args.seed)
    lo, hi = gibbs.adjacent_flip_pairs(sec)
    print(f"{'g':>6} {'max|dP|':>10} {'db err %':>9} {'<eta>':>7} {'drift':>9}")
    for g in map(float, args.g_list.split(",")):
        res = propagate(BCSModel(lv, g, sec), t1=args.t1, readout=args.readout, n_samples=40)
        ref = gibbs.enumerate_distribution(GibbsLaw(args.n, 0, g), sec)
        keep = np.minimum(ref[lo], ref[hi]) >= args.min_pair_prob
        ratio = res.final_probs[hi[keep]] / res.final_probs[lo[keep]]
        db = 100 * np.max(np.abs(ratio / exp(-2 * pi * g) - 1)) if keep.any() else float("nan")
        eta = res.final_probs @ sec.eta_values
        print(f"{g:6.3f} {np.max(np.abs(res.final_probs - ref)):10.2e} {db:9.3f} {eta:7.3f} {res.norm_drift:9.1e}")


if __name__ == "__main__":
    main()
