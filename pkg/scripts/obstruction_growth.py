"""Self-Ext of the diagonal module on growing grids, with timings."""

import argparse
import time

from persext.exactfield import FieldSpec
from persext.ext import rigidity_report
from persext.pmodule import diagonal
from persext.poset import grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--field", default="p:32003")
    args = ap.parse_args()
    F = FieldSpec.parse(args.field)
    print(f"{'n':>3} {'Ext^0':>6} {'Ext^1':>6} {'Ext^2':>6} {'label':>24} {'seconds':>8}")
    for n in range(1, args.max_n + 1):
        t = time.perf_counter()
        r = rigidity_report(diagonal(grid(n), F))
        dt = time.perf_counter() - t
        print(f"{n:>3} {r.dims[0]:>6} {r.dims[1]:>6} {r.dims[2]:>6} {r.classification:>24} {dt:>8.3f}")


if __name__ == "__main__":
    main()
