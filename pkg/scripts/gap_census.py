"""Refine every adjacent-level gap minimum and tabulate crossings vs avoided crossings."""

import argparse

import numpy as np

from bcs_anneal.hamiltonians import BCSModel, ThreeBodyCouplings, ThreeBodyModel, generate_levels
from bcs_anneal.sector import build_sector
from bcs_anneal.spectrum import classify_minima, spectrum_scan


def census(model, grid, limit):
    scan = spectrum_scan(model, grid)
    minima = [m for m in classify_minima(model, scan, limit=limit) if m.classification != "boundary"]
    gaps = np.array([m.gap for m in minima])
    return minima, gaps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--seeds", default="7,1,2,3")
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--limit", type=int, default=None, help="refine only the smallest K grid minima")
    args = ap.parse_args()

    sec = build_sector(args.n, 0)
    grid = np.geomspace(0.01, 10, args.points)
    g = 1 / args.n
    for seed in map(int, args.seeds.split(",")):
        for label, model in (
            ("bcs", BCSModel(generate_levels(args.n, seed), g, sec)),
            ("three-body", ThreeBodyModel(ThreeBodyCouplings.random(args.n, seed), g, sec)),
        ):
            minima, gaps = census(model, grid, args.limit)
            n_cross = sum(m.classification == "crossing" for m in minima)
            avoided = gaps[[m.classification == "avoided" for m in minima]]
            smallest = avoided.min() if avoided.size else float("nan")
            print(f"seed {seed:3d} {label:>10}: {len(minima):4d} minima, {n_cross:4d} crossings, "
                  f"smallest avoided gap {smallest:.2e}")


if __name__ == "__main__":
    main()
