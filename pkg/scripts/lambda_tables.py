"""Print the lambda(P1, P2) tables for k = 2..K and the total tight counts.

    python scripts/lambda_tables.py --kmax 6 --out tables/
"""

import argparse
import os
import time
from math import comb

from scatterkit.exact import partitions_of
from scatterkit.gradings import lambda_table


def label(P):
    return "(" + ",".join(map(str, P)) + ")"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=5)
    ap.add_argument("--out", default=None, help="directory for one CSV per k")
    args = ap.parse_args()
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    for k in range(2, args.kmax + 1):
        t0 = time.perf_counter()
        table = lambda_table(k)
        ps = partitions_of(k)
        grid = [[table[(a, b)] for b in ps] for a in ps]
        total = sum(map(sum, grid))
        closed = comb(4 * k + 1, k) // (4 * k + 1)
        print(f"k = {k}: total {total} (closed form {closed}), {time.perf_counter() - t0:.2f}s")
        w = max(len(label(p)) for p in ps) + 1
        print(" " * w + "".join(f"{label(p):>{w}}" for p in ps))
        for p, row in zip(ps, grid):
            print(f"{label(p):<{w}}" + "".join(f"{v:>{w}}" for v in row))
        print()
        if args.out:
            with open(os.path.join(args.out, f"lambda_k{k}.csv"), "w") as fh:
                fh.write("P1\\P2," + ",".join(f'"{label(p)}"' for p in ps) + "\n")
                for p, row in zip(ps, grid):
                    fh.write(f'"{label(p)}",' + ",".join(map(str, row)) + "\n")


if __name__ == "__main__":
    main()
