"""Sparse multivariate polynomials over the rationals.

A MultiPoly carries a fixed, ordered tuple of variable names and a map
from exponent vectors to nonzero rational coefficients.  Terms are kept
canonical (no zero coefficients); printing and division use graded
lexicographic order where later variables in the tuple rank higher,
matching the convention x < y and x < y1 < ... < yn.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .upoly import NEG_INF, UniPoly, ZeroPolynomial

RatLike = Union[Fraction, int]


class DivisorZero(ZeroPolynomial):
    """Exact division was attempted with divisor zero."""


class VariableMismatch(ValueError):
    """Operands live over different variable tuples."""


def _frac(value: RatLike) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def grlex_key(exps: tuple[int, ...]) -> tuple:
    # total degree first, ties broken from the highest-ranked variable down
    return (sum(exps), tuple(reversed(exps)))


class MultiPoly:
    """Polynomial in several variables, exact rational coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(
        self,
        variables: tuple[str, ...],
        terms: Union[Mapping[tuple[int, ...], RatLike], Iterable[tuple[tuple[int, ...], RatLike]]] = (),
    ):
        self.variables = tuple(variables)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise VariableMismatch(
                    f"exponent vector {exps} does not fit variables {self.variables}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _frac(c)
            if exps in acc:
                acc[exps] += c
            else:
                acc[exps] = c
        self.terms: dict[tuple[int, ...], Fraction] = {
            e: c for e, c in acc.items() if c != 0
        }

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(variables: tuple[str, ...]) -> "MultiPoly":
        return MultiPoly(variables)

    @staticmethod
    def constant(variables: tuple[str, ...], c: RatLike) -> "MultiPoly":
        zero_exp = (0,) * len(variables)
        return MultiPoly(variables, [(zero_exp, _frac(c))])

    @staticmethod
    def var(variables: tuple[str, ...], name: str, power: int = 1) -> "MultiPoly":
        idx = variables.index(name)
        exps = tuple(power if i == idx else 0 for i in range(len(variables)))
        return MultiPoly(variables, [(exps, 1)])

    @staticmethod
    def from_unipoly(variables: tuple[str, ...], name: str, p: UniPoly) -> "MultiPoly":
        idx = variables.index(name)
        terms = []
        for e, c in p.coeffs:
            exps = tuple(e if i == idx else 0 for i in range(len(variables)))
            terms.append((exps, c))
        return MultiPoly(variables, terms)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        if not self.terms:
            return Fraction(0)
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(exps) for exps in self.terms)

    def degree_in(self, name: str):
        if not self.terms:
            return NEG_INF
        idx = self.variables.index(name)
        return max(exps[idx] for exps in self.terms)

    def uses_only(self, names: Iterable[str]) -> bool:
        allowed = {self.variables.index(n) for n in names}
        return all(
            all(e == 0 for i, e in enumerate(exps) if i not in allowed)
            for exps in self.terms
        )

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise VariableMismatch(
                f"{self.variables} vs {other.variables}"
            )

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        return MultiPoly(
            self.variables, list(self.terms.items()) + list(other.terms.items())
        )

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        return MultiPoly(
            self.variables,
            list(self.terms.items()) + [(e, -c) for e, c in other.terms.items()],
        )

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, [(e, -c) for e, c in self.terms.items()])

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.variables, out)

    def scale(self, c: RatLike) -> "MultiPoly":
        c = _frac(c)
        if c == 0:
            return MultiPoly.zero(self.variables)
        return MultiPoly(self.variables, [(e, k * c) for e, k in self.terms.items()])

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def partial(self, name: str) -> "MultiPoly":
        """Formal partial derivative with respect to one variable."""
        idx = self.variables.index(name)
        terms = []
        for exps, c in self.terms.items():
            if exps[idx] >= 1:
                new = list(exps)
                new[idx] -= 1
                terms.append((tuple(new), c * exps[idx]))
        return MultiPoly(self.variables, terms)

    # -- substitution and reshaping ---------------------------------------

    def substitute_value(self, name: str, value: RatLike) -> "MultiPoly":
        """Specialize one variable to a rational; variable stays in the tuple."""
        idx = self.variables.index(name)
        value = _frac(value)
        terms = []
        for exps, c in self.terms.items():
            new = list(exps)
            new[idx] = 0
            terms.append((tuple(new), c * value ** exps[idx]))
        return MultiPoly(self.variables, terms)

    def substitute_poly(self, name: str, replacement: "MultiPoly") -> "MultiPoly":
        """Replace a variable by a polynomial over the same variable tuple."""
        self._check(replacement)
        idx = self.variables.index(name)
        result = MultiPoly.zero(self.variables)
        for exps, c in self.terms.items():
            rest = list(exps)
            power = rest[idx]
            rest[idx] = 0
            term = MultiPoly(self.variables, [(tuple(rest), c)])
            result = result + term * replacement**power
        return result

    def with_variables(self, variables: tuple[str, ...]) -> "MultiPoly":
        """Embed into a larger (or reordered) variable tuple by name."""
        mapping = []
        for name in self.variables:
            if name not in variables:
                if not self.uses_only([v for v in self.variables if v in variables]):
                    raise VariableMismatch(f"variable {name} absent from {variables}")
                mapping.append(None)
            else:
                mapping.append(variables.index(name))
        terms = []
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for i, e in enumerate(exps):
                if e:
                    new[mapping[i]] = e
            terms.append((tuple(new), c))
        return MultiPoly(variables, terms)

    def coeffs_in(self, name: str) -> dict[int, "MultiPoly"]:
        """Decompose as a polynomial in one variable; values keep the full tuple."""
        idx = self.variables.index(name)
        buckets: dict[int, list] = {}
        for exps, c in self.terms.items():
            rest = list(exps)
            power = rest[idx]
            rest[idx] = 0
            buckets.setdefault(power, []).append((tuple(rest), c))
        return {
            p: MultiPoly(self.variables, items) for p, items in sorted(buckets.items())
        }

    def to_unipoly(self, name: str) -> UniPoly:
        """Collapse to a UniPoly; every other variable must be absent."""
        if not self.uses_only([name]):
            raise VariableMismatch(f"polynomial involves more than {name}")
        idx = self.variables.index(name)
        return UniPoly([(exps[idx], c) for exps, c in self.terms.items()])

    def evaluate(self, point: Mapping[str, RatLike]) -> Fraction:
        total = Fraction(0)
        for exps, c in self.terms.items():
            val = c
            for i, e in enumerate(exps):
                if e:
                    val *= _frac(point[self.variables[i]]) ** e
            total += val
        return total

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in decreasing graded-lex order (deterministic printing)."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    # -- dunder plumbing ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"MultiPoly({self.variables}, 0)"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return f"MultiPoly({self.variables}, " + " + ".join(parts) + ")"


def divide_exact(h: MultiPoly, g: MultiPoly) -> MultiPoly | None:
    """Exact quotient h / g, or None when g does not divide h.

    Leading-term elimination in graded-lex order; each step strictly
    lowers the leading monomial, so the loop terminates and the quotient
    is unique whenever it exists.
    """
    h._check(g)
    if g.is_zero():
        raise DivisorZero("division by the zero polynomial")
    g_exps, g_coeff = g.leading_term()
    quotient = MultiPoly.zero(h.variables)
    rem = h
    while not rem.is_zero():
        r_exps, r_coeff = rem.leading_term()
        diff = tuple(a - b for a, b in zip(r_exps, g_exps))
        if any(d < 0 for d in diff):
            return None
        t = MultiPoly(h.variables, [(diff, r_coeff / g_coeff)])
        quotient = quotient + t
        rem = rem - t * g
    return quotient
