"""Darboux polynomial verification, structure audit, and bounded search.

A Darboux polynomial of D is a non-constant F with D(F) = L*F for some
polynomial cofactor L.  For the plane families

    y^a * dx + (a2(x)*y^(a+1) + a1(x)*y^a + a0) * dy,   deg a2 >= 1, a0 in Q*,

any Darboux polynomial F = sum c_i(x) y^i of y-degree n forces a constant
leading coefficient and a cofactor of y-degree at most a whose top
coefficient is n*a2(x).  Fixing c_n = 1 and treating the lower cofactor
coefficients as unknowns turns D(F) = L*F into a triangular sequence of
first-order solves for c_{n-1}, ..., c_0; the surplus coefficient
equations form a polynomial system in the unknowns whose rational
solutions are exactly the Darboux candidates within the degree bounds.
Every candidate is re-verified by exact division before it is reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .derivation import Derivation, FamilyA, FamilyPow
from .firstorder import (
    MODE_KAC_MINUS_DERIV,
    NoSolutionShape,
    ParamPoly,
    solve_first_order,
)
from .mpoly import MultiPoly, divide_exact
from .upoly import UniPoly, ZeroPolynomial, rational_roots

PLANE = ("x", "y")


@dataclass(frozen=True)
class DarbouxPair:
    F: MultiPoly
    cofactor: MultiPoly


@dataclass(frozen=True)
class NotDarboux:
    reason: str


def verify_darboux(D: Derivation, F: MultiPoly) -> DarbouxPair | NotDarboux:
    """Check D(F) = L*F by exact division and return the pair with L."""
    if F.is_zero():
        raise ZeroPolynomial("the zero polynomial cannot be Darboux")
    F = F.with_variables(D.variables)
    if F.is_constant():
        return NotDarboux("constants are excluded by definition")
    cofactor = divide_exact(D.apply(F), F)
    if cofactor is None:
        return NotDarboux("F does not divide D(F)")
    return DarbouxPair(F=F, cofactor=cofactor)


# -- structure audit ------------------------------------------------------


@dataclass(frozen=True)
class CofactorStructure:
    n: int
    d1: UniPoly
    d0: UniPoly
    c: tuple[UniPoly, ...]
    regime: str  # "full" | "no-linear-term" | "outside-hypotheses"
    note: str = ""


@dataclass(frozen=True)
class ViolationReport:
    check: str
    detail: str = ""


def _decompose_in_y(p: MultiPoly) -> dict[int, UniPoly]:
    return {e: c.to_unipoly("x") for e, c in p.coeffs_in("y").items()}


def audit_structure(
    fam: FamilyA, pair: DarbouxPair
) -> CofactorStructure | ViolationReport:
    """Check the forced cofactor shape and the coefficient recurrences.

    Inside the hypotheses (deg a2 >= 1, a0 a nonzero constant) the audit
    asserts deg_y L <= 1, d1 = n*a2, a constant leading coefficient, and
    the full recurrence chain linking the c_i.  Outside them only the
    decomposition is produced, flagged as such.
    """
    D = fam.to_derivation()
    F = pair.F.with_variables(PLANE)
    cof = pair.cofactor.with_variables(PLANE)
    if D.apply(F) != cof * F:
        return ViolationReport("product-identity", "D(F) != cofactor * F")
    by_y = _decompose_in_y(F)
    n = max(by_y) if by_y else 0
    if n == 0:
        return ViolationReport("y-degree", "F has y-degree 0")
    c = tuple(by_y.get(i, UniPoly.zero()) for i in range(n + 1))
    cof_y = _decompose_in_y(cof)
    if cof_y and max(cof_y) > 1:
        return ViolationReport("cofactor-y-degree", "deg_y of cofactor exceeds 1")
    d1 = cof_y.get(1, UniPoly.zero())
    d0 = cof_y.get(0, UniPoly.zero())
    in_hypotheses = (
        fam.a2.degree() >= 1
        and fam.a0.is_constant()
        and not fam.a0.is_zero()
    )
    if not in_hypotheses:
        return CofactorStructure(
            n=n,
            d1=d1,
            d0=d0,
            c=c,
            regime="outside-hypotheses",
            note="structural constraints not asserted for this coefficient shape",
        )
    regime = "no-linear-term" if fam.a1.is_zero() else "full"
    if not c[n].is_constant():
        return ViolationReport("leading-coefficient", "c_n is not constant")
    if d1 != fam.a2.scale(n):
        return ViolationReport("cofactor-linear-part", "d1 != n * a2")
    a0 = fam.a0.constant_value()
    a1, a2 = fam.a1, fam.a2
    # top recurrence: c_{n-1}' = a2*c_{n-1} + (d0 - n*a1)*c_n
    top = c[n - 1].derivative() - (
        a2 * c[n - 1] + (d0 - a1.scale(n)) * c[n]
    )
    if not top.is_zero():
        return ViolationReport("recurrence-top", "first descent equation fails")
    for i in range(1, n):
        lhs = c[i + 1].scale(Fraction(i + 1) * a0)
        rhs = (
            a2.scale(n - i + 1) * c[i - 1]
            + (d0 - a1.scale(i)) * c[i]
            - c[i - 1].derivative()
        )
        if lhs != rhs:
            return ViolationReport(
                "recurrence-middle", f"descent equation fails at index {i}"
            )
    if c[1].scale(a0) != d0 * c[0]:
        return ViolationReport("recurrence-bottom", "closing equation fails")
    return CofactorStructure(n=n, d1=d1, d0=d0, c=c, regime=regime)


# -- residual polynomial systems ------------------------------------------


@dataclass
class ResidualResult:
    solutions: list[dict[str, Fraction]]
    undecided: bool
    note: str = ""


def _bareiss_det(matrix: list[list[MultiPoly]], variables: tuple[str, ...]) -> MultiPoly:
    """Fraction-free determinant; all intermediate divisions are exact."""
    size = len(matrix)
    if size == 0:
        return MultiPoly.constant(variables, 1)
    m = [row[:] for row in matrix]
    sign = 1
    prev = MultiPoly.constant(variables, 1)
    for k in range(size - 1):
        if m[k][k].is_zero():
            pivot_row = next(
                (r for r in range(k + 1, size) if not m[r][k].is_zero()), None
            )
            if pivot_row is None:
                return MultiPoly.zero(variables)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                q = divide_exact(num, prev)
                assert q is not None, "Bareiss division must be exact"
                m[i][j] = q
            m[i][k] = MultiPoly.zero(variables)
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return det if sign == 1 else -det


def _resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant eliminating var, via the Sylvester determinant."""
    pc = p.coeffs_in(var)
    qc = q.coeffs_in(var)
    m, n = max(pc), max(qc)
    zero = MultiPoly.zero(p.variables)
    p_list = [pc.get(m - i, zero) for i in range(m + 1)]
    q_list = [qc.get(n - i, zero) for i in range(n + 1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + p_list + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + q_list + [zero] * (size - i - n - 1))
    return _bareiss_det(rows, p.variables)


def _support(p: MultiPoly) -> set[str]:
    used = set()
    for exps in p.terms:
        for name, e in zip(p.variables, exps):
            if e:
                used.add(name)
    return used


def _solve_recursive(
    eqs: list[MultiPoly],
    params: tuple[str, ...],
    pending: list[tuple[str, MultiPoly, Fraction]],
    assignment: dict[str, Fraction],
    budget: list[int],
) -> ResidualResult:
    eqs = [e for e in eqs if not e.is_zero()]
    for e in eqs:
        if e.is_constant():
            return ResidualResult([], False)
    if not eqs:
        full = dict(assignment)
        # unwind linear eliminations, then zero any remaining free parameters
        for name, expr, inv in reversed(pending):
            missing = {
                v: Fraction(0) for v in _support(expr) if v not in full
            }
            full.update(missing)
            full[name] = expr.evaluate(full) * inv
        for name in params:
            full.setdefault(name, Fraction(0))
        return ResidualResult([full], False)

    # univariate equation: branch over its rational roots
    for e in eqs:
        sup = _support(e)
        if len(sup) == 1:
            (name,) = sup
            roots = rational_roots(e.to_unipoly(name))
            solutions: list[dict[str, Fraction]] = []
            undecided = False
            for r in roots:
                sub = [other.substitute_value(name, r) for other in eqs if other is not e]
                branch = _solve_recursive(
                    sub, params, pending, {**assignment, name: r}, budget
                )
                solutions.extend(branch.solutions)
                undecided = undecided or branch.undecided
            return ResidualResult(solutions, undecided)

    # an equation every term of which contains v splits as v = 0 or quotient = 0
    for pos, e in enumerate(eqs):
        for name in sorted(_support(e)):
            idx = e.variables.index(name)
            if all(exps[idx] >= 1 for exps in e.terms):
                quotient = MultiPoly(
                    e.variables,
                    [
                        (tuple(x - (1 if i == idx else 0) for i, x in enumerate(exps)), c)
                        for exps, c in e.terms.items()
                    ],
                )
                zero_branch = _solve_recursive(
                    [other.substitute_value(name, 0) for other in eqs],
                    params,
                    pending,
                    {**assignment, name: Fraction(0)},
                    budget,
                )
                rest = list(eqs)
                rest[pos] = quotient
                quot_branch = _solve_recursive(rest, params, pending, assignment, budget)
                return ResidualResult(
                    zero_branch.solutions + quot_branch.solutions,
                    zero_branch.undecided or quot_branch.undecided,
                )

    # variable appearing linearly with a constant coefficient: eliminate it
    for e in eqs:
        for name in sorted(_support(e)):
            partial = e.partial(name)
            if partial.is_constant() and not partial.is_zero():
                coeff = partial.constant_value()
                rest = e.substitute_value(name, 0)
                replacement = rest.scale(Fraction(-1) / coeff)
                sub = [
                    other.substitute_poly(name, replacement)
                    for other in eqs
                    if other is not e
                ]
                return _solve_recursive(
                    sub,
                    params,
                    pending + [(name, rest, Fraction(-1) / coeff)],
                    assignment,
                    budget,
                )

    # fall back to resultants, bounded by the effort budget
    seen = {frozenset(e.terms.items()) for e in eqs}
    candidates = sorted(
        ((name, e) for e in eqs for name in _support(e)), key=lambda t: t[0]
    )
    by_var: dict[str, list[MultiPoly]] = {}
    for name, e in candidates:
        by_var.setdefault(name, []).append(e)
    for name in sorted(by_var):
        polys = sorted(by_var[name], key=lambda p: (p.degree_in(name), len(p.terms)))
        for p, q in itertools.combinations(polys[:4], 2):
            if budget[0] <= 0:
                return ResidualResult([], True, "effort budget exhausted")
            budget[0] -= 1
            res = _resultant(p, q, name)
            if res.is_zero():
                continue
            if frozenset(res.terms.items()) in seen:
                continue
            return _solve_recursive(eqs + [res], params, pending, assignment, budget)
    return ResidualResult([], True, "no elimination step applies")


def solve_residual_system(
    system: Sequence[MultiPoly], effort: int
) -> ResidualResult:
    """All rational solutions of a small polynomial system, or undecided.

    Strategy: branch on rational roots of univariate members, eliminate
    variables that occur linearly with constant coefficient, and fall
    back to effort-capped resultants.  Candidate points coming out of
    resultant steps are verified against the original system, so every
    reported solution is exact.  When the solution set has free
    parameters, the representative with those parameters set to zero is
    returned.
    """
    system = list(system)
    params: tuple[str, ...] = system[0].variables if system else ()
    result = _solve_recursive(system, params, [], {}, [effort])
    verified = []
    seen = set()
    for sol in result.solutions:
        if all(e.evaluate(sol) == 0 for e in system):
            key = tuple(sorted((k, v) for k, v in sol.items()))
            if key not in seen:
                seen.add(key)
                verified.append(sol)
    verified.sort(key=lambda s: sorted(s.items()))
    return ResidualResult(verified, result.undecided, result.note)


# -- bounded triangular search --------------------------------------------


@dataclass(frozen=True)
class SearchBounds:
    n_max: int
    d0_deg_max: int
    cx_deg_max: int
    residual_effort: int = 100


@dataclass
class SearchOutcome:
    status: str  # "found" | "none-up-to-bounds" | "undecided-residual"
    pairs: list[DarbouxPair] = field(default_factory=list)
    detail: str = ""


def _search_fixed_n(
    fam: FamilyPow, n: int, bounds: SearchBounds
) -> tuple[list[DarbouxPair], bool]:
    """One y-degree slice of the search; returns (pairs, undecided)."""
    alpha = fam.alpha
    a2, a1 = fam.a2, fam.a1
    a0_val = fam.a0.constant_value()
    blocks = {
        s: [f"u{s}_{j}" for j in range(bounds.d0_deg_max + 1)] for s in range(alpha)
    }
    params = tuple(name for s in range(alpha) for name in blocks[s])
    e_low = {s: ParamPoly.unknown_block(params, blocks[s]) for s in range(alpha)}
    one = ParamPoly.from_unipoly(params, UniPoly.one())
    c: dict[int, ParamPoly] = {n: one}
    zero = ParamPoly.zero(params)
    constraints: list[MultiPoly] = []
    for i in range(n - 1, -1, -1):
        rhs = (
            c.get(i + 1, zero).mul_uni(a1).scale(i + 1)
            + c.get(i + alpha + 1, zero).scale(Fraction(i + alpha + 1) * a0_val)
        )
        for s in range(alpha):
            rhs = rhs - e_low[s] * c.get(i + alpha - s, zero)
        sol = solve_first_order(a2, rhs, MODE_KAC_MINUS_DERIV, k=Fraction(n - i))
        if isinstance(sol, NoSolutionShape):
            return [], False
        c[i] = sol.c
        constraints.extend(sol.constraints)
        for j in range(bounds.cx_deg_max + 1, sol.c.formal_degree() + 1):
            coeff = sol.c.coeff(j)
            if not coeff.is_zero():
                constraints.append(coeff)
    for m in range(alpha):
        residue = c.get(m + 1, zero).scale(Fraction(m + 1) * a0_val)
        for s in range(min(alpha - 1, m) + 1):
            residue = residue - e_low[s] * c.get(m - s, zero)
        for coeff in residue.coeffs.values():
            constraints.append(coeff)
    result = solve_residual_system(constraints, bounds.residual_effort)
    D = fam.to_derivation()
    pairs = []
    for point in result.solutions:
        F = MultiPoly.zero(PLANE)
        for i, ci in c.items():
            F = F + MultiPoly.from_unipoly(PLANE, "x", ci.specialize(point)) * MultiPoly.var(
                PLANE, "y", i
            )
        verified = verify_darboux(D, F)
        if isinstance(verified, DarbouxPair):
            pairs.append(verified)
    return pairs, result.undecided


def _search_power(fam: FamilyPow, bounds: SearchBounds) -> SearchOutcome:
    if fam.alpha != fam.beta:
        raise ValueError("triangular search requires matching powers")
    if fam.a2.degree() < 1:
        raise ValueError("search requires deg a2 >= 1")
    if not fam.a0.is_constant() or fam.a0.is_zero():
        raise ValueError("search requires a0 to be a nonzero constant")
    pairs: list[DarbouxPair] = []
    undecided_at: list[int] = []
    for n in range(1, bounds.n_max + 1):
        found, undecided = _search_fixed_n(fam, n, bounds)
        pairs.extend(found)
        if undecided:
            undecided_at.append(n)
    if pairs:
        return SearchOutcome("found", pairs)
    if undecided_at:
        return SearchOutcome(
            "undecided-residual",
            [],
            f"residual solver gave up at y-degree {undecided_at}",
        )
    return SearchOutcome("none-up-to-bounds", [])


def darboux_search_family_a(fam: FamilyA, bounds: SearchBounds) -> SearchOutcome:
    """Bounded search over cofactors n*a2*y + d0 with deg d0 <= d0_deg_max.

    No Darboux polynomial within the bounds is reported as
    none-up-to-bounds; this is never a proof for unbounded degrees, the
    simplicity criterion is.
    """
    power = FamilyPow(alpha=1, beta=1, a2=fam.a2, a1=fam.a1, a0=fam.a0)
    return _search_power(power, bounds)


def darboux_search_power_family(fam: FamilyPow, bounds: SearchBounds) -> SearchOutcome:
    """Same triangular descent for the alpha = beta power family."""
    return _search_power(fam, bounds)
