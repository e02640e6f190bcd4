"""Predicted versus computed verdicts for every dg-division extension in the demo catalog."""

import argparse
import time

from dgsep.demos import main_theorem_instances, resolve
from dgsep.separability import check_main_theorem


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--include-char-2", action="store_true")
    ap.add_argument("--details", action="store_true")
    args = ap.parse_args()

    names = main_theorem_instances(True)
    if args.include_char_2:
        names += main_theorem_instances(False)
    t0 = time.perf_counter()
    rows, mismatches = [], 0
    for name in names:
        r = check_main_theorem(resolve(name).build())
        mismatches += r.mismatch
        status = "silent" if r.silent else ("MISMATCH" if r.mismatch else "ok")
        rows.append((name, r.branch, r.predicted, r.computed, status))
        if args.details:
            rows.append(("", str(r.details), "", "", ""))
    w = max(len(x[0]) for x in rows)
    print(f"{'instance':<{w}}  {'branch':<19} {'predicted':<15} {'computed':<14} status")
    for name, branch, pred, comp, status in rows:
        print(f"{name:<{w}}  {branch:<19} {pred:<15} {comp:<14} {status}")
    print(f"{len(names)} instances, {mismatches} mismatches, {time.perf_counter() - t0:.2f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
