#!/usr/bin/env python3
"""Evidence scan for the power-family simplicity criterion at alpha >= 2.

Builds a small coefficient grid, runs the necessary-condition check plus
the bounded Darboux search on every cell, and writes one JSONL row per
cell.  The criterion at alpha >= 2 is unproven, so the scan reports
obstructions (or their absence up to bounds), never "simple".

Usage: python scripts/scan_power_grid.py [--alpha 2] [--out evidence.jsonl]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dercert import SearchBounds, UniPoly, conjecture_scan
from dercert.simplicity import scan_rows_to_jsonl

X = UniPoly.x()
ONE = UniPoly.one()
ZERO = UniPoly.zero()

A2_SHAPES = [X, X + ONE, X.scale(2), UniPoly.x(2), ZERO, ONE]
A1_SHAPES = [ZERO, ONE, X, X - ONE]
A0_SHAPES = [ONE, UniPoly.constant(2), UniPoly.constant(-1), X]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", type=int, default=2)
    parser.add_argument("--n-max", type=int, default=2)
    parser.add_argument("--d0-deg", type=int, default=2)
    parser.add_argument("--cx-deg", type=int, default=3)
    parser.add_argument("--out", default="power_grid_evidence.jsonl")
    args = parser.parse_args()

    grid = [(a2, a1, a0) for a2 in A2_SHAPES for a1 in A1_SHAPES for a0 in A0_SHAPES]
    bounds = SearchBounds(
        n_max=args.n_max, d0_deg_max=args.d0_deg, cx_deg_max=args.cx_deg
    )
    rows = conjecture_scan(args.alpha, grid, bounds)

    with open(args.out, "w", encoding="utf-8") as fh:
        for line in scan_rows_to_jsonl(rows, bounds):
            fh.write(line + "\n")

    by_status: dict[str, int] = {}
    for row in rows:
        key = f"{row.necessary}/{row.darboux_status}"
        by_status[key] = by_status.get(key, 0) + 1
    print(f"alpha = {args.alpha}, {len(rows)} cells -> {args.out}")
    for key, count in sorted(by_status.items()):
        print(f"  {key}: {count}")
    found = [r for r in rows if r.darboux_status == "found"]
    if found:
        print("cells with a Darboux polynomial inside the bounds:")
        for row in found:
            print(f"  a2={row.a2!r} a1={row.a1!r} a0={row.a0!r}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
