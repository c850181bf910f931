"""Repeat the randomized oracle cross-checks over several seeds and fields."""

import argparse
import sys

from persext.checks import oracle_check
from persext.exactfield import FieldSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--fields", nargs="+", default=["p:32003", "p:2", "q"])
    args = ap.parse_args()
    failed = 0
    for spec in args.fields:
        F = FieldSpec.parse(spec)
        for seed in range(args.seeds):
            tallies = oracle_check(seed, F)
            bad = [t for t in tallies if not t.ok]
            failed += len(bad)
            print(f"{F} seed={seed}: " + ("ok" if not bad else "; ".join(t.line() for t in bad)))
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
