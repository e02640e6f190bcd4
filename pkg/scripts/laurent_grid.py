"""Separability of K[T^n, T^-n] -> K[T, T^-1] on a grid of primes and n."""

import argparse

from dgsep import GF, find_casimir, laurent_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--acyclic", action="store_true", help="adjoin y with d(y) = 1 on both sides")
    args = ap.parse_args()

    ns = range(1, args.max_n + 1)
    print("p \\ n " + " ".join(f"{n:>3}" for n in ns))
    for p in args.primes:
        row = []
        for n in ns:
            res = find_casimir(laurent_pair(GF(p), n, acyclic=args.acyclic))
            row.append("  S" if res.separable else "  .")
        print(f"{p:>5} " + " ".join(row))
    print("S = SEPARABLE, . = NOT_SEPARABLE")


if __name__ == "__main__":
    main()
