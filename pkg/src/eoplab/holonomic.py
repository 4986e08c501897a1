"""Differential operators with polynomial coefficients and P-recursive sequences.

An order-r linear ODE sum_i p_i(z) y^(i)(z) = 0 acting on y = sum c_n z^n
imposes, for every n, the coefficient identity

    sum_{i,j} p_{i,j} * (n+i-j)(n+i-j-1)...(n+1-j) * c_{n+i-j} = 0,

which re-indexes to a linear recurrence with polynomial coefficients in n.
Recurrences are kept in a normalized form (lowest shift 0, coefficients a
primitive integer vector with no common polynomial factor, leading coefficient
with positive leading term) so that equality of recurrences is a well-defined
exact test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .numcore import DomainError, PolyQ, Rational, poly_gcd
from .series import TruncatedSeries

__all__ = [
    "DifferentialOperator",
    "LinearRecurrence",
    "HolonomicSequence",
    "LeadingCoefficientVanishes",
    "ode_to_recurrence",
    "unroll",
    "check_series_satisfies",
]


class LeadingCoefficientVanishes(ArithmeticError):
    """The recurrence cannot determine the next term at index ``n``."""

    def __init__(self, n: int):
        super().__init__(f"leading recurrence coefficient vanishes at n={n}")
        self.n = n


@dataclass(frozen=True)
class DifferentialOperator:
    """coeffs[i] is the polynomial coefficient of d^i/dz^i."""

    coeffs: tuple[PolyQ, ...]

    def __init__(self, coeffs):
        cs = [c if isinstance(c, PolyQ) else PolyQ(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise DomainError("differential operator must have a nonzero coefficient")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, f: TruncatedSeries) -> TruncatedSeries:
        """Apply the operator to a truncated series (valid to the common order)."""
        out = None
        deriv = f
        for i, p in enumerate(self.coeffs):
            if i > 0:
                deriv = deriv.differentiate()
            if p.is_zero():
                continue
            term = _poly_times_series(p, deriv)
            out = term if out is None else out + term
        return out if out is not None else TruncatedSeries([])


def _poly_times_series(p: PolyQ, f: TruncatedSeries) -> TruncatedSeries:
    # z^j shifts indices up, so coefficients 0..order-1 of the result only
    # need f up to its own guaranteed order; the order is preserved.
    n = f.order
    out = [Fraction(0)] * n
    for j, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for i in range(n - j):
            out[i + j] += c * f.coeffs[i]
    return TruncatedSeries(out)


@dataclass(frozen=True)
class LinearRecurrence:
    """Recurrence sum_{j=0}^{r} coeffs[j](n) * P_{n+j} = 0 with PolyQ coefficients."""

    coeffs: tuple[PolyQ, ...]

    def __init__(self, coeffs):
        cs = [c if isinstance(c, PolyQ) else PolyQ(c) for c in coeffs]
        if len(cs) < 2 or cs[-1].is_zero():
            raise DomainError("recurrence needs order >= 1 and nonzero leading coefficient")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def normalized(self) -> "LinearRecurrence":
        """Divide out the common polynomial factor and rational content; fix sign."""
        polys = list(self.coeffs)
        g = PolyQ([])
        for p in polys:
            g = poly_gcd(g, p)
        if not g.is_zero() and g.degree() > 0:
            polys = [p.exact_div(g) for p in polys]
        content = Fraction(0)
        for p in polys:
            c = p.content()
            content = (
                c
                if content == 0
                else Fraction(
                    gcd(content.numerator, c.numerator),
                    content.denominator * c.denominator
                    // gcd(content.denominator, c.denominator),
                )
            )
        if content not in (0, 1):
            polys = [p * (1 / content) for p in polys]
        if polys[-1].leading() < 0:
            polys = [-p for p in polys]
        return LinearRecurrence(polys)


@dataclass(frozen=True)
class HolonomicSequence:
    """A recurrence plus its first ``order`` terms, indexed from 0."""

    recurrence: LinearRecurrence
    initial: tuple[Fraction, ...]

    def __init__(self, recurrence: LinearRecurrence, initial):
        init = tuple(Fraction(c) for c in initial)
        if len(init) != recurrence.order:
            raise DomainError(
                f"need exactly {recurrence.order} initial terms, got {len(init)}"
            )
        object.__setattr__(self, "recurrence", recurrence)
        object.__setattr__(self, "initial", init)


def _falling_factorial(shift: Rational, length: int) -> PolyQ:
    """(n + shift)(n + shift - 1)...(n + shift - length + 1) as a PolyQ in n."""
    out = PolyQ([1])
    for m in range(length):
        out = out * PolyQ([Fraction(shift) - m, 1])
    return out


def ode_to_recurrence(op: DifferentialOperator) -> LinearRecurrence:
    """Translate an ODE into the normalized recurrence on Taylor coefficients."""
    shifts: dict[int, PolyQ] = {}
    for i, p in enumerate(op.coeffs):
        for j, c in enumerate(p.coeffs):
            if c == 0:
                continue
            s = i - j
            term = _falling_factorial(s, i) * c
            shifts[s] = shifts.get(s, PolyQ([])) + term
    live = {s: q for s, q in shifts.items() if not q.is_zero()}
    if not live:
        raise DomainError("operator annihilates every series; no recurrence")
    s_min, s_max = min(live), max(live)
    if s_max == s_min:
        raise DomainError("recurrence of order 0; the only solution is trivial")
    coeffs = []
    for s in range(s_min, s_max + 1):
        q = live.get(s, PolyQ([]))
        coeffs.append(q.shift_var(-s_min))
    return LinearRecurrence(coeffs).normalized()


def unroll(seq: HolonomicSequence, N: int) -> list[Fraction]:
    """Exact terms P_0..P_{N-1}; raises if a leading coefficient vanishes."""
    r = seq.recurrence.order
    vals = list(seq.initial[:N])
    lead = seq.recurrence.coeffs[-1]
    lower = seq.recurrence.coeffs[:-1]
    for n in range(N - r):
        ln = lead(Fraction(n))
        if ln == 0:
            raise LeadingCoefficientVanishes(n)
        acc = Fraction(0)
        for j, p in enumerate(lower):
            pj = p(Fraction(n))
            if pj != 0:
                acc += pj * vals[n + j]
        vals.append(-acc / ln)
    return vals


def check_series_satisfies(op: DifferentialOperator, f: TruncatedSeries) -> bool:
    """True iff op(f) vanishes to the checkable order.

    Requires f.order to exceed the operator order plus its maximal polynomial
    degree so that at least one nontrivial coefficient is checked.
    """
    maxdeg = max((p.degree() or 0) for p in op.coeffs)
    checkable = f.order - op.order
    if checkable <= op.order + maxdeg:
        raise DomainError(
            f"series order {f.order} too small to check an operator of "
            f"order {op.order} and degree {maxdeg}"
        )
    result = op.apply(f)
    return all(c == 0 for c in result.coeffs[:checkable])
