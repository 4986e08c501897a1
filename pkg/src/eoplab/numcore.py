"""Exact rational / polynomial arithmetic and the working-precision policy.

Exact quantities are ``fractions.Fraction`` values (always normalized, positive
denominator). Configurable-precision reals are ``mpmath.mpf`` values computed
inside an explicit ``workprec`` context; every public numeric routine takes a
``prec`` argument in bits and guarantees at least that many significand bits.
There is no interval arithmetic: correctness of numeric routines is enforced by
the double-run protocol (recompute at twice the precision and compare), see
:func:`double_run`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from mpmath import mp, mpf, workprec

Rational = Fraction

#: Default significand size in bits for every numeric routine.
DEFAULT_PREC = 256

#: Guard bits used when a routine needs headroom beyond the requested precision.
GUARD_BITS = 16


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PrecisionError(ArithmeticError):
    """A numeric routine could not meet the requested precision."""


def to_mpf(q, prec: int = DEFAULT_PREC) -> mpf:
    """Round an exact rational (or int/mpf) to an mpf with ``prec`` bits."""
    with workprec(prec):
        if isinstance(q, Fraction):
            return mpf(q.numerator) / q.denominator
        return +mpf(q)


def double_run(fn, prec: int, guard: int = GUARD_BITS):
    """Evaluate ``fn(prec)`` and ``fn(2*prec)``; check reproducibility.

    Returns the low-precision value after asserting
    ``|fn(prec) - fn(2p)| <= 2^-(prec-guard) * max(1, |fn(2p)|)``.
    """
    lo, hi = fn(prec), fn(2 * prec)
    with workprec(2 * prec):
        bound = mpf(2) ** (guard - prec) * max(mpf(1), abs(hi))
        if abs(lo - hi) > bound:
            raise PrecisionError(
                f"double-run mismatch at prec={prec}: |lo-hi|={abs(lo - hi)}"
            )
    return lo


def pochhammer(a: Rational, n: int) -> Rational:
    """Rising factorial a(a+1)...(a+n-1); 1 for n=0."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def binomial_general(n: int, k: int, alpha: Rational) -> Rational:
    """Binomial with shifted rational entries: prod_{j=k+1}^{n} (j+alpha) / (n-k)!.

    Equals Gamma(n+alpha+1) / (Gamma(k+alpha+1) (n-k)!) whenever that quotient
    is defined; the product form is exact for all rational alpha with k <= n.
    """
    if not 0 <= k <= n:
        raise DomainError("binomial_general needs 0 <= k <= n")
    num = Fraction(1)
    for j in range(k + 1, n + 1):
        num *= j + alpha
    den = 1
    for j in range(2, n - k + 1):
        den *= j
    return num / den


@lru_cache(maxsize=None)
def _bernoulli_list(m: int) -> tuple[Fraction, ...]:
    """B_0..B_m (second convention, B_1 = -1/2) via the defining recurrence.

    B_j = -1/(j+1) * sum_{i<j} binom(j+1, i) B_i, so step j needs Pascal row j+1.
    """
    out = [Fraction(1)]
    binom = [1, 1]
    for j in range(1, m + 1):
        binom = [1] + [binom[i] + binom[i + 1] for i in range(len(binom) - 1)] + [1]
        s = sum(binom[i] * out[i] for i in range(j) if out[i])
        out.append(Fraction(-s) / (j + 1) if not isinstance(s, Fraction) else -s / (j + 1))
    return tuple(out)


def bernoulli(k: int) -> Rational:
    """Exact Bernoulli number B_k."""
    if k < 0:
        raise DomainError("bernoulli needs k >= 0")
    return _bernoulli_list(max(k, 8))[k]


@dataclass(frozen=True)
class PolyQ:
    """Dense univariate polynomial over the rationals, lowest degree first.

    Trailing zero coefficients are trimmed on construction; the zero polynomial
    has ``degree() is None``.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x: Rational) -> Rational:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __add__(self, other: "PolyQ") -> "PolyQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyQ([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self.coeffs])

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            return PolyQ([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def shift_var(self, c: Rational) -> "PolyQ":
        """Substitute x -> x + c."""
        out = PolyQ([])
        xc = PolyQ([1])
        lin = PolyQ([Fraction(c), Fraction(1)])
        for coef in self.coeffs:
            out = out + xc * coef
            xc = xc * lin
        return out

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 1)
        d = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return PolyQ(q), PolyQ(rem)

    def exact_div(self, other: "PolyQ") -> "PolyQ":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DomainError("polynomial division is not exact")
        return q

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive over the integers."""
        if self.is_zero():
            return Fraction(1)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def __repr__(self) -> str:
        if self.is_zero():
            return "PolyQ(0)"
        parts = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "PolyQ(" + " + ".join(parts) + ")"


def poly_eval(p: PolyQ, x: Rational) -> Rational:
    """Exact Horner evaluation."""
    return p(Fraction(x))


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd over the rationals (monic 1 when coprime)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a * (1 / a.leading())
