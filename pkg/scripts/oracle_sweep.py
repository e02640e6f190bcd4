"""Compare the linear solvers with exhaustive search over F_2 on the test family."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracles import (LIMIT, casimir_solutions, casimir_space_size, f2_extensions,  # noqa: E402
                     f2_sequences, source_splittings, splitting_space_size, splittings)

from dgsep.modules import find_dg_splitting, restrict_ses  # noqa: E402
from dgsep.separability import find_casimir  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random", type=int, default=24, help="number of random sequences")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    bad = 0
    for name, ext in f2_extensions():
        size = casimir_space_size(ext)
        if size > LIMIT:
            print(f"casimir  {name}: skipped ({size} candidates)")
            continue
        sols = casimir_solutions(ext)
        agree = find_casimir(ext).separable == bool(sols)
        bad += not agree
        print(f"casimir  {name}: {len(sols)} solutions of {size}, {'agree' if agree else 'DISAGREE'}")
    for name, ext, s in f2_sequences(args.random, args.seed):
        for where, seq, enum in (("target", s, lambda: splittings(s)),
                                 ("source", restrict_ses(ext, s).sequence, lambda: source_splittings(ext, s))):
            size = splitting_space_size(seq)
            if size > LIMIT:
                continue
            found = enum()
            solver = find_dg_splitting(s, ext if where == "source" else None).split
            agree = solver == bool(found)
            bad += not agree
            print(f"split    {name} [{where}]: {len(found)} of {size}, {'agree' if agree else 'DISAGREE'}")
    print(f"{bad} disagreements")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
