"""Write the data tables for every figure into one directory.

Set ANNEAL_THREADS to run the independent propagations in parallel.
"""

import argparse
import time
from pathlib import Path

from bcs_anneal.figures import FIGURES
from bcs_anneal.io import write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--only", nargs="*", choices=sorted(FIGURES), help="subset of figure ids")
    args = ap.parse_args()
    out = Path(args.out)
    for fid in args.only or FIGURES:
        start = time.perf_counter()
        for table in FIGURES[fid]():
            write_csv(out / f"{table.name}.csv", table.header, table.rows, {"figure": fid, "table": table.name, "params": table.params})
        print(f"figure {fid}: {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
