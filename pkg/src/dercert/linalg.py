"""Exact linear system solving over the rationals.

Systems are solved by full Gauss-Jordan elimination on sparse rows
(dict column -> Fraction).  The particular solution sets every free
variable to zero, which makes results deterministic for a fixed column
order; the kernel basis has one vector per free column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LinSystem:
    rows: list[list[Fraction]]
    rhs: list[Fraction]


@dataclass
class LinSolution:
    particular: list[Fraction]
    kernel: list[list[Fraction]]
    rank: int


def _rref_sparse(
    rows: list[dict[int, Fraction]], rhs: list[Fraction], ncols: int
) -> tuple[list[dict[int, Fraction]], list[Fraction], dict[int, int]] | None:
    """In-place RREF. Returns (rows, rhs, pivot column -> row index) or None."""
    pivots: dict[int, int] = {}
    pivot_row = 0
    work = [dict(r) for r in rows]
    rvec = list(rhs)
    for col in range(ncols):
        # pick the sparsest candidate row for this column
        best = None
        for i in range(pivot_row, len(work)):
            if work[i].get(col):
                if best is None or len(work[i]) < len(work[best]):
                    best = i
        if best is None:
            continue
        work[pivot_row], work[best] = work[best], work[pivot_row]
        rvec[pivot_row], rvec[best] = rvec[best], rvec[pivot_row]
        inv = 1 / work[pivot_row][col]
        if inv != 1:
            work[pivot_row] = {c: v * inv for c, v in work[pivot_row].items()}
            rvec[pivot_row] *= inv
        prow = work[pivot_row]
        for i in range(len(work)):
            if i == pivot_row:
                continue
            factor = work[i].get(col)
            if not factor:
                continue
            row = work[i]
            for c, v in prow.items():
                new = row.get(c, Fraction(0)) - factor * v
                if new:
                    row[c] = new
                else:
                    row.pop(c, None)
            rvec[i] -= factor * rvec[pivot_row]
        pivots[col] = pivot_row
        pivot_row += 1
        if pivot_row == len(work):
            break
    for i in range(len(work)):
        if not work[i] and rvec[i] != 0:
            return None
    return work, rvec, pivots


def solve_sparse(
    rows: list[dict[int, Fraction]], rhs: list[Fraction], ncols: int
) -> LinSolution | None:
    """Solve A x = b with sparse rows; None means inconsistent."""
    reduced = _rref_sparse(rows, rhs, ncols)
    if reduced is None:
        return None
    work, rvec, pivots = reduced
    particular = [Fraction(0)] * ncols
    for col, rowi in pivots.items():
        particular[col] = rvec[rowi]
    free_cols = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for col, rowi in pivots.items():
            coeff = work[rowi].get(f)
            if coeff:
                vec[col] = -coeff
        kernel.append(vec)
    return LinSolution(particular=particular, kernel=kernel, rank=len(pivots))


def solve_linear(system: LinSystem) -> LinSolution | None:
    """Exact Gaussian elimination; None signals an inconsistent system."""
    ncols = len(system.rows[0]) if system.rows else 0
    for row in system.rows:
        if len(row) != ncols:
            raise ValueError("ragged coefficient matrix")
    if len(system.rhs) != len(system.rows):
        raise ValueError("rhs length does not match row count")
    sparse = [
        {j: Fraction(v) for j, v in enumerate(row) if v != 0} for row in system.rows
    ]
    return solve_sparse(sparse, [Fraction(v) for v in system.rhs], ncols)


def verify_solution(system: LinSystem, solution: Sequence[Fraction]) -> bool:
    for row, b in zip(system.rows, system.rhs):
        if sum(a * x for a, x in zip(row, solution)) != b:
            return False
    return True
