"""Split a sequence over the source of a separable extension, then lift the splitting with omega."""

import argparse

from dgsep.demos import lifting_instances, resolve
from dgsep.modules import find_dg_splitting, lift_splitting
from dgsep.separability import find_casimir


def run(name, verbose):
    ext, s = resolve(name).build()
    cert = find_casimir(ext)
    if not cert.separable:
        print(f"{name}: extension not separable, skipped")
        return True
    tgt, src = find_dg_splitting(s), find_dg_splitting(s, ext)
    line = f"{name}: target {tgt.verdict}, source {src.verdict}"
    ok = tgt.split == src.split
    if src.split:
        tau = lift_splitting(ext, cert, s, src)
        ok = ok and tau.report.passed
        line += f", lifted tau {'verified' if tau.report.passed else 'FAILED'}"
        if verbose:
            line += "\n" + str(tau)
    print(line)
    return ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", help="sequence demos (default: all lifting instances)")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    names = args.names or [n for group in lifting_instances().values() for n in group]
    results = [run(n, args.verbose) for n in names]
    print(f"{sum(results)}/{len(results)} consistent")
    return 0 if all(results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
