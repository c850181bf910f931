"""Run the reference computations on the square and small grids over several fields."""

import argparse
import sys

from persext.checks import mitchell_suite, reference_suite
from persext.exactfield import FieldSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", nargs="+", default=["p:32003", "p:2", "p:3", "q"])
    args = ap.parse_args()
    ok = True
    for spec in args.fields:
        F = FieldSpec.parse(spec)
        results = reference_suite(F) + mitchell_suite(F)
        print(f"== {F}")
        for r in results:
            print("  " + ("PASS" if r.ok else "FAIL") + "  " + r.name)
        ok &= all(r.ok for r in results)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
