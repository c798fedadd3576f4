#!/usr/bin/env python3
"""Scan GHZ-Werner visibility for several qubit counts and report crossings.

Writes one CSV per qubit count and prints where each criterion starts to
flag entanglement, next to the closed-form threshold (1/sqrt(2))^(N-1).
"""

import argparse
from pathlib import Path

from entcrit.search import OptimizerOptions
from entcrit.werner import scan_to_csv, visibility_scan, visibility_threshold


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4, help="largest qubit count (default 4)")
    ap.add_argument("--grid", type=int, default=1001, help="grid points (default 1001)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-dir", default="werner_scans", help="CSV output directory")
    args = ap.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    opts = OptimizerOptions(restarts=8, seed=args.seed)

    print(f"{'N':>3} {'threshold':>12} {'info crossing':>14} {'bell crossing':>14}")
    for n in range(2, args.max_n + 1):
        rows = visibility_scan(n, args.grid, opts)
        path = out_dir / f"werner_n{n}.csv"
        path.write_text(scan_to_csv(rows), encoding="utf-8")
        info_cross = next((r.visibility for r in rows if r.info_entangled), None)
        bell_cross = next((r.visibility for r in rows if r.bell_violated), None)
        print(
            f"{n:>3} {visibility_threshold(n):>12.6f} "
            f"{info_cross:>14.6f} {bell_cross:>14.6f}   -> {path}"
        )


if __name__ == "__main__":
    main()
