#!/usr/bin/env python3
"""Verdict table for the quadratic plane family over a coefficient sweep.

For each (a2, a1, a0) cell: decide simplicity, verify the attached
certificate, and cross-check with the bounded Darboux search (a simple
derivation must yield no Darboux polynomial within the bounds; a
non-simple one with a principal witness must have it rediscovered).

Usage: python scripts/quadratic_family_report.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dercert import (
    FamilyA,
    MultiPoly,
    SearchBounds,
    UniPoly,
    darboux_search_family_a,
    decide_simple_family_a,
    poly_to_str,
    verify_stable_ideal,
)

X = UniPoly.x()
ONE = UniPoly.one()
ZERO = UniPoly.zero()

A2_SHAPES = [ZERO, ONE, X, X - ONE, UniPoly.x(2)]
A1_SHAPES = [ZERO, ONE, X]
A0_SHAPES = [ZERO, ONE, UniPoly.constant(-2), X]

BOUNDS = SearchBounds(n_max=2, d0_deg_max=2, cx_deg_max=3)


def uni_str(p: UniPoly) -> str:
    return poly_to_str(MultiPoly.from_unipoly(("x",), "x", p))


def main() -> int:
    header = f"{'a2':>8} {'a1':>6} {'a0':>6} | {'simple':>6} {'tag':>6} | search"
    print(header)
    print("-" * len(header))
    for a2 in A2_SHAPES:
        for a1 in A1_SHAPES:
            for a0 in A0_SHAPES:
                fam = FamilyA(a2=a2, a1=a1, a0=a0)
                verdict = decide_simple_family_a(fam)
                if not verdict.simple:
                    ok = verify_stable_ideal(
                        fam.to_derivation(), verdict.certificate.generators
                    )
                    if not ok:
                        raise AssertionError(f"certificate failed at {fam}")
                searchable = (
                    a2.degree() >= 1 and a0.is_constant() and not a0.is_zero()
                )
                if searchable:
                    outcome = darboux_search_family_a(fam, BOUNDS)
                    if verdict.simple and outcome.status == "found":
                        raise AssertionError(f"search contradicts verdict at {fam}")
                    search = outcome.status
                else:
                    search = "-"
                print(
                    f"{uni_str(a2):>8} {uni_str(a1):>6} {uni_str(a0):>6} | "
                    f"{str(verdict.simple):>6} {verdict.theorem:>6} | {search}"
                )
    print("every non-simple certificate replayed through verify_stable_ideal")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
