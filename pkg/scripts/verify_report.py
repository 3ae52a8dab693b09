"""Run the conjecture report, the oracle cross-checks and the Weyl sweep.

    SCATTERKIT_JOBS=4 python scripts/verify_report.py --json report.json
"""

import argparse
import time

from scatterkit.wallcoeffs import VerifyConfig, default_jobs, triple_agreement, verify_conjectures
from scatterkit.weyl import check_second_symmetry, check_weyl_bijection


def weyl_sweep(max_degree: int):
    rows = []
    for b in range(1, max_degree):
        for c in range(1, max_degree):
            for i in range(1, max_degree):
                for j in range(1, max_degree):
                    if i * b + j * c > max_degree:
                        continue
                    if c * j - i >= 1:
                        rows.append(("tau(i,j)=tau(cj-i,j)", check_weyl_bijection(b, c, i, j)))
                    if b * i - j >= 1:
                        rows.append(("tau(i,j)=tau(i,bi-j)", check_second_symmetry(b, c, i, j)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", default=None, help="also write the report as JSON")
    ap.add_argument("--weyl-degree", type=int, default=12)
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = verify_conjectures(VerifyConfig(jobs=default_jobs()))
    print(report.table())
    print(f"gated rows ok: {report.gated_ok}  ({time.perf_counter() - t0:.1f}s)\n")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())

    for b, c in [(1, 5), (2, 2), (2, 3), (3, 3)]:
        rows = triple_agreement(b, c, 12)
        bad = [r for r in rows if not r["agree"]]
        print(f"triple agreement (b,c)=({b},{c}): {len(rows)} cells, {len(bad)} disagreements")

    t0 = time.perf_counter()
    rows = weyl_sweep(args.weyl_degree)
    bad = [(name, r) for name, r in rows if not r.ok]
    nonempty = sum(1 for _, r in rows if r.source_count)
    print(f"\nWeyl sweep ib+jc <= {args.weyl_degree}: {len(rows)} cells "
          f"({nonempty} nonempty), {len(bad)} failures, {time.perf_counter() - t0:.1f}s")
    for name, r in bad:
        print("  FAIL", name, r)


if __name__ == "__main__":
    main()
