"""Image membership up to a degree bound, and Mathieu-Zhao decisions.

D is linear, so "is target = D(f) solvable with deg f <= bound" is a
finite exact linear system over the monomial basis.  A Member result is
always sound (the preimage is returned and re-checkable); a bounded
failure is only NotFoundUpTo.  Global non-membership is asserted solely
through the proven family patterns in `certified_nonmembership`, each
tagged with the rule it instantiates and cross-checked at issue time by
a bounded solve.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .derivation import (
    Derivation,
    Family,
    FamilyB,
    FamilyDiag,
    FamilyDiagX,
    UnsupportedFamily,
    locally_finite_closed_form,
    recognize_family,
)
from .linalg import solve_sparse
from .mpoly import MultiPoly, grlex_key

TAG_P22 = "P2.2"
TAG_C23 = "C2.3"
TAG_T51 = "T5.1"
TAG_C52 = "C5.2"
TAG_T53 = "T5.3"

DEFAULT_SANITY_BOUND = 4
DEFAULT_M_MIN = 5


@dataclass(frozen=True)
class Member:
    preimage: MultiPoly
    kernel_dim: int
    bound: int


@dataclass(frozen=True)
class NotFoundUpTo:
    bound: int


@dataclass(frozen=True)
class CertifiedNonMember:
    theorem: str
    claim: str
    target: MultiPoly
    m_used: int | None = None


ImageResult = Member | NotFoundUpTo | CertifiedNonMember


def _monomials(variables: tuple[str, ...], bound: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= bound, decreasing graded-lex."""
    nvars = len(variables)
    out = []
    for total in range(bound + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            exps = [0] * nvars
            for idx in combo:
                exps[idx] += 1
            out.append(tuple(exps))
    out.sort(key=grlex_key, reverse=True)
    return out


def image_membership(D: Derivation, target: MultiPoly, bound: int) -> Member | NotFoundUpTo:
    """Solve D(f) = target over all f of total degree <= bound, exactly.

    The particular preimage is canonical: columns are ordered by
    decreasing graded-lex and free coordinates are set to zero.
    kernel_dim is the dimension of {f : deg f <= bound, D(f) = 0},
    constants included.  This routine never claims global
    non-membership.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    target = target.with_variables(D.variables)
    basis = _monomials(D.variables, bound)
    rows_by_monomial: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for j, exps in enumerate(basis):
        image = D.apply(MultiPoly(D.variables, [(exps, 1)]))
        for mono, coeff in image.terms.items():
            rows_by_monomial.setdefault(mono, {})[j] = coeff
    for mono in target.terms:
        rows_by_monomial.setdefault(mono, {})
    monomials = sorted(rows_by_monomial, key=grlex_key, reverse=True)
    rows = [rows_by_monomial[mono] for mono in monomials]
    rhs = [target.terms.get(mono, Fraction(0)) for mono in monomials]
    solution = solve_sparse(rows, rhs, len(basis))
    if solution is None:
        return NotFoundUpTo(bound=bound)
    preimage = MultiPoly(
        D.variables,
        [
            (basis[j], c)
            for j, c in enumerate(solution.particular)
            if c != 0
        ],
    )
    kernel_dim = len(basis) - solution.rank
    assert D.apply(preimage) == target
    return Member(preimage=preimage, kernel_dim=kernel_dim, bound=bound)


def _y_var(D: Derivation, index: int) -> MultiPoly:
    # index counts the y-variables; DiagX derivations carry x in front
    offset = 1 if D.variables[0] == "x" else 0
    return MultiPoly.var(D.variables, D.variables[offset + index])


def certified_nonmembership(
    D: Derivation,
    target: MultiPoly,
    sanity_bound: int = DEFAULT_SANITY_BOUND,
    m_min: int = DEFAULT_M_MIN,
) -> CertifiedNonMember | None:
    """Match (family, hypotheses, target) against a proven non-membership.

    Patterns covered:
      * the plane family y*dx + (a1(x)y + a0)*dy with a0 in Q* and
        deg a1 >= 1: target x is never in the image;
      * dx + sum gamma_i(x) y_i^k_i d_i: target y_i for a coordinate
        with nonzero gamma_i and k_i > 1, or with every such k_i = 1 and
        deg gamma_i >= 1 (zero-image coordinates act as constants and do
        not interfere);
      * sum gamma_i y_i^k_i d_i (n >= 2, gamma_i != 0): target
        y_i * y_j^m for k_i > 1, all k >= 1, j != i, m >= m_min; and
        target y_i for k_i > 1 when some k_j = 0.

    Every certificate is cross-checked by a bounded solve before being
    issued; None means no pattern applies (the target may well be a
    member).
    """
    family = recognize_family(D)
    target = target.with_variables(D.variables)
    cert = _match_pattern(D, family, target, m_min)
    if cert is None:
        return None
    check = image_membership(D, target, sanity_bound)
    if not isinstance(check, NotFoundUpTo):
        raise AssertionError(
            "certified pattern contradicted by a bounded membership solve"
        )
    return cert


def _match_pattern(
    D: Derivation, family: Family, target: MultiPoly, m_min: int
) -> CertifiedNonMember | None:
    if isinstance(family, FamilyB):
        if (
            family.a0 != 0
            and family.a1.degree() >= 1
            and target == MultiPoly.var(D.variables, "x")
        ):
            return CertifiedNonMember(TAG_P22, "x-outside-image", target)
        return None
    if isinstance(family, FamilyDiagX):
        nonzero = [i for i, g in enumerate(family.gammas) if not g.is_zero()]
        for i in nonzero:
            if family.ks[i] > 1 and target == _y_var(D, i):
                return CertifiedNonMember(TAG_T51, "high-power-coordinate", target)
        if all(family.ks[i] == 1 for i in nonzero):
            for i in nonzero:
                if family.gammas[i].degree() >= 1 and target == _y_var(D, i):
                    return CertifiedNonMember(
                        TAG_T51, "nonconstant-coefficient", target
                    )
        return None
    if isinstance(family, FamilyDiag):
        shape = _monomial_shape(target)
        if shape is None:
            return None
        exps = shape
        ks = family.ks
        support = [i for i, e in enumerate(exps) if e]
        if all(k >= 1 for k in ks) and len(support) == 2:
            i, j = support
            if exps[i] != 1:
                i, j = j, i
            if exps[i] == 1 and ks[i] > 1 and exps[j] >= m_min:
                return CertifiedNonMember(
                    TAG_T53, "mixed-power-product", target, m_used=exps[j]
                )
        if any(k == 0 for k in ks) and len(support) == 1:
            (i,) = support
            if exps[i] == 1 and ks[i] > 1:
                return CertifiedNonMember(TAG_T53, "high-power-coordinate", target)
        return None
    return None


def _monomial_shape(target: MultiPoly) -> tuple[int, ...] | None:
    """Exponent vector when the target is a single scaled monomial."""
    if len(target.terms) != 1:
        return None
    (exps,) = target.terms
    return exps


@dataclass(frozen=True)
class MzVerdict:
    mz: bool
    theorem: str
    evidence: object | None = None


def decide_mz(D: Derivation, sanity_bound: int = DEFAULT_SANITY_BOUND) -> MzVerdict:
    """Mathieu-Zhao status of Im D for the supported families.

    Plane family with constant a0: the image is MZ exactly when the
    derivation is not simple.  dx + diagonal families: MZ exactly when
    locally finite.  Pure diagonal families: MZ exactly when every
    exponent is at most 1.  Everything else (notably the quadratic plane
    family with a2 != 0) is refused rather than guessed.
    """
    family = recognize_family(D)
    if isinstance(family, FamilyB):
        simple = family.a0 != 0 and family.a1.degree() >= 1
        if simple:
            evidence = certified_nonmembership(
                D, MultiPoly.var(D.variables, "x"), sanity_bound
            )
            return MzVerdict(mz=False, theorem=TAG_C23, evidence=evidence)
        if family.a0 != 0:
            return MzVerdict(
                mz=True, theorem=TAG_C23, evidence=("locally-finite", True)
            )
        return MzVerdict(mz=True, theorem=TAG_C23, evidence=("image-is-ideal", "y"))
    if isinstance(family, FamilyDiagX):
        loc_fin = locally_finite_closed_form(family)
        all_nonzero = all(not g.is_zero() for g in family.gammas)
        tag = TAG_T51 if all_nonzero else TAG_C52
        if loc_fin:
            return MzVerdict(mz=True, theorem=tag, evidence=("locally-finite", True))
        target = _first_obstruction_diag_x(D, family)
        evidence = certified_nonmembership(D, target, sanity_bound)
        return MzVerdict(mz=False, theorem=tag, evidence=evidence)
    if isinstance(family, FamilyDiag):
        if all(k <= 1 for k in family.ks):
            return MzVerdict(
                mz=True, theorem=TAG_T53, evidence=("locally-finite", True)
            )
        target = _first_obstruction_diag(D, family)
        evidence = certified_nonmembership(D, target, sanity_bound)
        return MzVerdict(mz=False, theorem=TAG_T53, evidence=evidence)
    raise UnsupportedFamily(
        "no Mathieu-Zhao decision is available for this derivation shape"
    )


def _first_obstruction_diag_x(D: Derivation, family: FamilyDiagX) -> MultiPoly:
    nonzero = [i for i, g in enumerate(family.gammas) if not g.is_zero()]
    for i in nonzero:
        if family.ks[i] > 1:
            return _y_var(D, i)
    for i in nonzero:
        if family.gammas[i].degree() >= 1:
            return _y_var(D, i)
    raise AssertionError("called without an obstruction")


def _first_obstruction_diag(D: Derivation, family: FamilyDiag) -> MultiPoly:
    ks = family.ks
    high = next(i for i, k in enumerate(ks) if k > 1)
    if all(k >= 1 for k in ks):
        other = next(j for j in range(len(ks)) if j != high)
        return _y_var(D, high) * _y_var(D, other) ** DEFAULT_M_MIN
    return _y_var(D, high)


def one_in_image(family: FamilyB) -> MultiPoly:
    """Explicit preimage of 1: a0^-1 * (y - A(x)), A the antiderivative of a1."""
    if family.a0 == 0:
        raise ValueError("requires a0 != 0")
    v = ("x", "y")
    anti = family.a1.antiderivative()
    return (
        MultiPoly.var(v, "y") - MultiPoly.from_unipoly(v, "x", anti)
    ).scale(1 / family.a0)
