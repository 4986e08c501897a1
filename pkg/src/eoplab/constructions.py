"""The five concrete approximation constructions, each computed several ways.

Sequences are produced by independent routes that must agree exactly:

* gamma family: closed-form sum over shifted binomials, order-3 recurrence,
  and series expansion of (1-z)^(-alpha-1) E_alpha(-z/(1-z));
* Euler-constant family: closed-form alternating sum, order-3 recurrence, and
  the series log(1-z)/(1-z) - (1-z)^(-1) E(-z/(1-z));
* diagonal rational approximants to exp and the convergents of e;
* the integer pair (U_k, V_k) attached to the Bessel-type ratio F(1)/F'(1),
  with the recurrence A_{k+1} = k A_k + A_{k-1}.

Limit and growth-model estimation work on the exact rational data: the limit
uses a smooth-window weighted tail mean (exact in rational arithmetic), which
handles the sqrt(n)-phase oscillation these sequences exhibit, with an Aitken
fallback for fast (eventually geometric) convergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf, workprec

from .numcore import (
    DEFAULT_PREC,
    DomainError,
    PolyQ,
    PrecisionError,
    Rational,
    to_mpf,
)
from .series import (
    TruncatedSeries,
    binomial_series,
    e_alpha_series,
    e_log_series,
    euler_substitution,
    log_over_one_minus_z,
    partial_sums,
)
from .holonomic import DifferentialOperator, HolonomicSequence, LinearRecurrence, unroll

__all__ = [
    "ApproximationRun",
    "LimitEstimate",
    "GrowthFit",
    "gamma_generating_ode",
    "gamma_coefficient_recurrence",
    "gamma_seed_values",
    "euler_generating_ode",
    "euler_coefficient_recurrence",
    "gamma_seq",
    "euler_seq",
    "gamma_limit",
    "pade_exp",
    "pade_reflection_signs",
    "e_convergents",
    "cf_convergents",
    "e_cf_quotients",
    "bessel_f",
    "bessel_g",
    "intseq",
    "intseq_constants",
    "intseq_generating_check",
    "limit_estimate",
    "fit_growth",
]


# ---------------------------------------------------------------------------
# Result containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitEstimate:
    limit: mpf
    rate_exponent: float | None
    degenerate: bool
    method: str


@dataclass(frozen=True)
class GrowthFit:
    """Parameters of |P_n| ~ q^n n^(-u-1) (log n)^v, modulus only."""

    q: float
    u: float
    v: int
    sub_geometric: bool = False
    factorial_order: int = 0
    oscillatory: bool = False


@dataclass
class ApproximationRun:
    label: str
    values: list
    limit: mpf | None = None
    rate_exponent: float | None = None
    error_model: GrowthFit | None = None
    metadata: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# The two order-3 constructions: ODEs, recurrences, seed values
# ---------------------------------------------------------------------------


def gamma_generating_ode(alpha: Rational) -> DifferentialOperator:
    """Annihilator of (1-z)^(-alpha-1) E_alpha(-z/(1-z)), alpha instantiated."""
    a = Fraction(alpha)
    p2 = PolyQ([0, 1, -3, 3, -1])
    p1 = PolyQ([1 + a, -5 - 4 * a, 8 + 5 * a, -4 - 2 * a])
    p0 = PolyQ([-1 - a - a * a, 2 + 4 * a + 2 * a * a, -2 - 3 * a - a * a])
    return DifferentialOperator([p0, p1, p2])


def gamma_coefficient_recurrence(alpha: Rational) -> LinearRecurrence:
    """Order-3 recurrence satisfied by the gamma-family coefficients."""
    a = Fraction(alpha)
    c3 = PolyQ([9 + 3 * a, 6 + a, 1])
    c2 = PolyQ([-17 - 9 * a - a * a, -14 - 4 * a, -3])
    c1 = PolyQ([10 + 9 * a + 2 * a * a, 11 + 5 * a, 3])
    c0 = PolyQ([-2 - 3 * a - a * a, -3 - 2 * a, -1])
    return LinearRecurrence([c0, c1, c2, c3])


def gamma_seed_values(alpha: Rational) -> tuple[Fraction, Fraction, Fraction]:
    """P_0 = 1/alpha, P_1 = (1+a+a^2)/(a(a+1)), P_2 = (4+5a+6a^2+4a^3+a^4)/(2a(a+1)(a+2))."""
    a = Fraction(alpha)
    p0 = 1 / a
    p1 = (1 + a + a * a) / (a * (a + 1))
    p2 = (4 + 5 * a + 6 * a**2 + 4 * a**3 + a**4) / (2 * a * (a + 1) * (a + 2))
    return p0, p1, p2


def euler_generating_ode() -> DifferentialOperator:
    """Annihilator of log(1-z)/(1-z) - (1-z)^(-1) E(-z/(1-z))."""
    return DifferentialOperator(
        [PolyQ([-1, 2, -2]), PolyQ([1, -5, 8, -4]), PolyQ([0, 1, -3, 3, -1])]
    )


def euler_coefficient_recurrence() -> LinearRecurrence:
    """(n+3)^2 P_{n+3} - (3n^2+14n+17) P_{n+2} + (n+2)(3n+5) P_{n+1} - (n+1)(n+2) P_n = 0."""
    return LinearRecurrence(
        [
            PolyQ([-2, -3, -1]),
            PolyQ([10, 11, 3]),
            PolyQ([-17, -14, -3]),
            PolyQ([9, 6, 1]),
        ]
    )


def _check_gamma_domain(alpha: Fraction) -> None:
    if alpha.denominator == 1 and alpha <= 0:
        raise DomainError(f"alpha={alpha} is a nonpositive integer")
    if alpha >= 1:
        raise DomainError(f"alpha={alpha} violates the convergence condition alpha < 1")


def _gamma_closed(alpha: Fraction, N: int) -> list:
    # P_n = sum_k binom(n+alpha, k+alpha) (-1)^k / (k! (k+alpha));
    # binom(n+alpha, k+alpha) = C[n] / (C[k] (n-k)!) with C[j] = (alpha+1)_j.
    C = [Fraction(1)]
    for j in range(1, N):
        C.append(C[-1] * (alpha + j))
    fact = [1]
    for j in range(1, N):
        fact.append(fact[-1] * j)
    D = [
        Fraction((-1) ** k) / (C[k] * fact[k] * (k + alpha)) for k in range(N)
    ]
    out = []
    for n in range(N):
        s = Fraction(0)
        for k in range(n + 1):
            s += D[k] / fact[n - k]
        out.append(C[n] * s)
    return out


def _gamma_series(alpha: Fraction, N: int) -> list:
    inner = euler_substitution(e_alpha_series(alpha, N), N)
    prod = binomial_series(alpha + 1, N) * inner
    return list(prod.coeffs)


def _gamma_recurrence(alpha: Fraction, N: int) -> list:
    seeds = gamma_seed_values(alpha)
    seq = HolonomicSequence(gamma_coefficient_recurrence(alpha), seeds)
    return unroll(seq, N) if N >= 3 else list(seeds[:N])


def _euler_closed(N: int) -> list:
    # P_n = sum_{k=1}^n (-1)^k binom(n,k) (1/k) (1 - 1/k!)
    fact = [1]
    for j in range(1, N):
        fact.append(fact[-1] * j)
    ek = [Fraction(0)] + [
        Fraction(fact[k] - 1, k * fact[k]) for k in range(1, N)
    ]
    out = []
    for n in range(N):
        s = Fraction(0)
        b = 1
        for k in range(1, n + 1):
            b = b * (n - k + 1) // k
            s += (-1) ** k * b * ek[k]
        out.append(s)
    return out


def _euler_series(N: int) -> list:
    inner = partial_sums(euler_substitution(e_log_series(N), N))
    total = log_over_one_minus_z(N) - inner
    return list(total.coeffs)


def _euler_recurrence(N: int) -> list:
    seeds = (Fraction(0), Fraction(0), Fraction(1, 4))
    seq = HolonomicSequence(euler_coefficient_recurrence(), seeds)
    return unroll(seq, N) if N >= 3 else list(seeds[:N])


_GAMMA_METHODS = {
    "closed": _gamma_closed,
    "recurrence": _gamma_recurrence,
    "series": _gamma_series,
}

_EULER_METHODS = {
    "closed": lambda N: _euler_closed(N),
    "recurrence": lambda N: _euler_recurrence(N),
    "series": lambda N: _euler_series(N),
}


def _finish_run(run: ApproximationRun, prec: int) -> ApproximationRun:
    if len(run.values) >= 16:
        est = limit_estimate(run.values, prec=prec)
        run.limit = est.limit
        run.rate_exponent = est.rate_exponent
        run.metadata["limit_method"] = est.method
    return run


def gamma_seq(
    alpha: Rational, N: int, method: str = "all", prec: int = DEFAULT_PREC
) -> ApproximationRun:
    """Exact P_0..P_{N-1} converging to Gamma(alpha) for rational alpha < 1."""
    alpha = Fraction(alpha)
    _check_gamma_domain(alpha)
    if N < 1:
        raise DomainError("need N >= 1")
    if method == "all":
        routes = {name: fn(alpha, N) for name, fn in _GAMMA_METHODS.items()}
        vals = routes["closed"]
        agree = all(routes[k] == vals for k in routes)
        if not agree:
            raise ArithmeticError("method disagreement in gamma_seq")
        meta = {"methods": sorted(routes), "exact_agreement": True}
    elif method in _GAMMA_METHODS:
        vals = _GAMMA_METHODS[method](alpha, N)
        meta = {"methods": [method]}
    else:
        raise DomainError(f"unknown method {method!r}")
    meta.update({"N": N, "precision_bits": prec, "alpha": str(alpha)})
    run = ApproximationRun(label=f"gamma(alpha={alpha})", values=vals, metadata=meta)
    return _finish_run(run, prec)


def euler_seq(N: int, method: str = "all", prec: int = DEFAULT_PREC) -> ApproximationRun:
    """Exact P_0..P_{N-1} converging to Euler's constant."""
    if N < 1:
        raise DomainError("need N >= 1")
    if method == "all":
        routes = {name: fn(N) for name, fn in _EULER_METHODS.items()}
        vals = routes["closed"]
        if not all(routes[k] == vals for k in routes):
            raise ArithmeticError("method disagreement in euler_seq")
        meta = {"methods": sorted(routes), "exact_agreement": True}
    elif method in _EULER_METHODS:
        vals = _EULER_METHODS[method](N)
        meta = {"methods": [method]}
    else:
        raise DomainError(f"unknown method {method!r}")
    meta.update({"N": N, "precision_bits": prec})
    run = ApproximationRun(label="euler", values=vals, metadata=meta)
    return _finish_run(run, prec)


def gamma_limit(alpha: Rational, N: int = 1000, prec: int = DEFAULT_PREC) -> mpf:
    """Limit-based estimate of Gamma(alpha), extended to alpha > 1 by
    Gamma(s+1) = s Gamma(s)."""
    alpha = Fraction(alpha)
    if alpha.denominator == 1:
        if alpha <= 0:
            raise DomainError("Gamma pole")
        with workprec(prec):
            return +mpf(math.factorial(int(alpha) - 1))
    m = 0
    base = alpha
    while base >= 1:
        base -= 1
        m += 1
    est = gamma_seq(base, N, method="recurrence", prec=prec).limit
    with workprec(prec):
        factor = Fraction(1)
        for j in range(m):
            factor *= base + j
        return +(est * to_mpf(factor, prec))


# ---------------------------------------------------------------------------
# Rational approximants to exp and the convergents of e
# ---------------------------------------------------------------------------


def pade_exp(n: int) -> tuple[PolyQ, PolyQ]:
    """Degree-(n,n) rational approximant to exp.

    Q is the explicit alternating-binomial polynomial; P is defined as the
    degree-n truncation of Q(z) e^z, which makes Q(z)e^z - P(z) = O(z^(2n+1))
    by construction. The reflection P(z) = Q(-z) is a checked property, not
    the definition (see pade_reflection_signs).
    """
    if n < 0:
        raise DomainError("need n >= 0")
    q = [
        Fraction((-1) ** (n - k) * math.comb(2 * n - k, n), math.factorial(k))
        for k in range(n + 1)
    ]
    p = []
    for j in range(n + 1):
        acc = Fraction(0)
        for k in range(j + 1):
            acc += q[k] / math.factorial(j - k)
        p.append(acc)
    return PolyQ(p), PolyQ(q)


def pade_reflection_signs(n: int) -> dict:
    """Which sign makes the truncation of Q(z)e^z equal s*Q(-z)?"""
    p, q = pade_exp(n)
    refl = PolyQ([(-1) ** i * c for i, c in enumerate(q.coeffs)])
    return {"plus": p == refl, "minus": p == -refl}


def e_convergents(n: int) -> tuple[int, int]:
    """(|n! P_n(1)|, |n! Q_n(1)|), an exact convergent numerator/denominator of e."""
    if n < 1:
        raise DomainError("need n >= 1")
    p, q = pade_exp(n)
    fact = math.factorial(n)
    num = fact * p(Fraction(1))
    den = fact * q(Fraction(1))
    if num.denominator != 1 or den.denominator != 1:
        raise ArithmeticError("n! P_n(1) failed to be an integer")
    return abs(int(num)), abs(int(den))


def cf_convergents(partial_quotients: list) -> list:
    """Convergents p_k/q_k of a simple continued fraction."""
    if not partial_quotients:
        raise DomainError("need at least one partial quotient")
    if any(a <= 0 for a in partial_quotients[1:]):
        raise DomainError("partial quotients after index 0 must be positive")
    out = []
    p_prev, p = 1, partial_quotients[0]
    q_prev, q = 0, 1
    out.append(Fraction(p, q))
    for a in partial_quotients[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append(Fraction(p, q))
    return out


def e_cf_quotients(count: int) -> list:
    """[2; 1, 2, 1, 1, 4, 1, 1, 6, ...] truncated to ``count`` quotients."""
    out = [2]
    m = 1
    while len(out) < count:
        out.extend((1, 2 * m, 1))
        m += 1
    return out[:count]


# ---------------------------------------------------------------------------
# The Bessel-type continued fraction data
# ---------------------------------------------------------------------------


def bessel_f(x, prec: int = DEFAULT_PREC, deriv: int = 0) -> mpf:
    """F(x) = sum_n x^n / n!^2 (or its derivative) by direct summation."""
    wp = prec + 16
    with workprec(wp):
        xv = to_mpf(x, wp)
        acc = mpf(0)
        floor = mpf(2) ** (-wp)
        n = deriv
        while True:
            c = mpf(1)
            for j in range(n - deriv + 1, n + 1):
                c *= j
            term = c * xv ** (n - deriv) / mp.factorial(n) ** 2
            acc += term
            if n > 4 + 2 * abs(float(xv)) and abs(term) < floor * max(mpf(1), abs(acc)):
                break
            n += 1
        return +acc


def bessel_g(x, prec: int = DEFAULT_PREC, deriv: int = 0) -> mpf:
    """G(x) = -2 sum_n H_n x^n / n!^2 (or its derivative)."""
    wp = prec + 16
    with workprec(wp):
        xv = to_mpf(x, wp)
        acc = mpf(0)
        floor = mpf(2) ** (-wp)
        h = mpf(0)
        n = 0
        while True:
            if n >= 1:
                h += mpf(1) / n
            if n >= deriv:
                c = mpf(1)
                for j in range(n - deriv + 1, n + 1):
                    c *= j
                term = h * c * xv ** (n - deriv) / mp.factorial(n) ** 2
                acc += term
                if n > 4 + 2 * abs(float(xv)) and abs(term) < floor * max(
                    mpf(1), abs(acc)
                ):
                    break
            n += 1
        return +(-2 * acc)


@dataclass(frozen=True)
class IntSeqResult:
    A: tuple          # smallest-solution values, direct-series route
    U: tuple          # integer solution with U_0=0, U_1=1
    V: tuple          # integer solution with V_0=1, V_1=0
    recurrence_disagreement: mpf  # max |A_direct - A_recurrence|, k <= kmax


def _a_direct(k: int, wp: int) -> mpf:
    with workprec(wp):
        acc = mpf(0)
        floor = mpf(2) ** (-wp)
        n = 0
        while True:
            term = 1 / (mp.factorial(n) * mp.factorial(n + k))
            acc += term
            if n > 4 and term < floor:
                break
            n += 1
        return +((-1) ** k * acc)


def intseq(kmax: int, prec: int = DEFAULT_PREC) -> IntSeqResult:
    """A_k two ways (defining series vs. recurrence A_{k+1} = k A_k + A_{k-1}),
    plus the integer companion solutions U_k, V_k."""
    if kmax < 2:
        raise DomainError("need kmax >= 2")
    # forward recurrence amplifies initial rounding by ~ V_k * k!, so pad
    amp = int(2 * math.lgamma(kmax + 1) / math.log(2)) + 32
    wp = prec + amp
    direct = [_a_direct(k, wp) for k in range(kmax + 1)]
    with workprec(wp):
        rec = [direct[0], direct[1]]
        for k in range(1, kmax):
            rec.append(k * rec[k] + rec[k - 1])
        disagreement = max(abs(a - b) for a, b in zip(direct, rec))
    U = [0, 1]
    V = [1, 0]
    for k in range(1, kmax):
        U.append(k * U[k] + U[k - 1])
        V.append(k * V[k] + V[k - 1])
    return IntSeqResult(
        A=tuple(direct), U=tuple(U), V=tuple(V),
        recurrence_disagreement=disagreement,
    )


@dataclass(frozen=True)
class IntSeqConstants:
    a: mpf
    b: mpf
    c: mpf
    d: mpf
    wronskian: mpf
    f: mpf
    f_prime: mpf
    g: mpf
    g_prime: mpf


def intseq_constants(prec: int = DEFAULT_PREC) -> IntSeqConstants:
    """The four connection constants over the denominator g f' - f^2 - f g'.

    The denominator equals (minus half) the wronskian of the two order-2
    solutions at the evaluation point and must be bounded away from zero.
    """
    wp = prec + 16
    f = bessel_f(1, wp)
    fp = bessel_f(1, wp, deriv=1)
    g = bessel_g(1, wp)
    gp = bessel_g(1, wp, deriv=1)
    with workprec(wp):
        w = g * fp - f * f - f * gp
        if abs(w) < mpf(2) ** (-prec // 2):
            raise PrecisionError("wronskian denominator not separated from zero")
        return IntSeqConstants(
            a=+(g / w), b=+(-f / w), c=+(-(f + gp) / w), d=+(fp / w),
            wronskian=+w, f=+f, f_prime=+fp, g=+g, g_prime=+gp,
        )


def intseq_generating_check(z, prec: int = DEFAULT_PREC) -> dict:
    """Absolute defects of the two generating-function identities at z.

    With W = g f' - f^2 - f g' and the constants of intseq_constants, the
    identities satisfied by the integer solutions read

        sum_k U_k z^k / k! = -a F(1-z) - b G(1-z) - b log(1-z) F(1-z)
        sum_k V_k z^k / k! =  c F(1-z) + d G(1-z) + d log(1-z) F(1-z).

    (The U-side signs are opposite to the V-side ones; both checks use the
    plain, unsigned integer sequences.)
    """
    wp = prec + 48
    consts = intseq_constants(wp)
    with workprec(wp):
        zv = to_mpf(z, wp)
        if not abs(zv) < 1:
            raise DomainError("the identity check needs |z| < 1")
        floor = mpf(2) ** (-wp)
        U = [0, 1]
        V = [1, 0]
        sU = mpf(0)
        sV = mpf(0)
        k = 0
        while True:
            while len(U) <= k:
                m = len(U)
                U.append((m - 1) * U[m - 1] + U[m - 2])
                V.append((m - 1) * V[m - 1] + V[m - 2])
            t = zv**k / mp.factorial(k)
            sU += U[k] * t
            sV += V[k] * t
            if k >= 8 and abs(t) * max(abs(U[k]), abs(V[k])) < floor:
                break
            k += 1
        Fz = bessel_f(1 - zv, wp)
        Gz = bessel_g(1 - zv, wp)
        logF = mp.log(1 - zv) * Fz
        rhsU = -consts.a * Fz - consts.b * Gz - consts.b * logF
        rhsV = consts.c * Fz + consts.d * Gz + consts.d * logF
        return {"U": +abs(sU - rhsU), "V": +abs(sV - rhsV)}


# ---------------------------------------------------------------------------
# Limit and growth-model estimation
# ---------------------------------------------------------------------------


def _win_weight(i: int, width: int) -> int:
    # ((i+1)(width-i))^2 is (t(1-t))^2 on the grid t=(i+1)/(width+1), up to a
    # constant factor that cancels in the weighted mean
    return ((i + 1) * (width - i)) ** 2


def _aitken_tail(vals: list) -> Fraction | None:
    xs = list(vals)
    while len(xs) >= 3:
        nxt = []
        for i in range(len(xs) - 2):
            d2 = xs[i + 2] - xs[i + 1]
            d1 = xs[i + 1] - xs[i]
            if d2 == d1:
                continue
            nxt.append(xs[i + 2] - d2 * d2 / (d2 - d1))
        if not nxt:
            break
        xs = nxt
    return xs[-1] if xs else None


def limit_estimate(values: list, prec: int = DEFAULT_PREC) -> LimitEstimate:
    """Limit and empirical decay exponent of a convergent exact sequence.

    The limit is a smooth-window weighted mean of the last three quarters
    (exact rational arithmetic); for sequences whose differences decay
    super-polynomially an iterated Aitken pass on the tail is used instead.
    The rate exponent is the least-squares slope of log|P_n - limit| against
    log n over [N/10, N) (a narrower window is too noisy for sequences whose
    error carries a sqrt(n)-phase oscillation), or None when degenerate.
    """
    vals = [Fraction(v) for v in values]
    N = len(vals)
    if N < 16:
        raise DomainError("limit_estimate needs at least 16 values")
    if all(v == vals[0] for v in vals):
        return LimitEstimate(
            limit=to_mpf(vals[0], prec), rate_exponent=None,
            degenerate=True, method="constant",
        )
    method = "window"
    lo = N // 4
    weights = [_win_weight(i, N - lo) for i in range(N - lo)]
    est = sum(w * v for w, v in zip(weights, vals[lo:])) / sum(weights)
    step = max(1, N // 8)
    d_end = abs(vals[-1] - vals[-1 - step])
    d_mid = abs(vals[N // 2] - vals[N // 2 - step])
    if d_mid != 0 and d_end * (1 << 12) < d_mid:
        fast = _aitken_tail(vals[-min(N, 25):])
        if fast is not None:
            est = fast
            method = "aitken"
    elif d_mid == 0 and d_end == 0 and vals[-1] == vals[N // 2]:
        est = vals[-1]
        method = "tail-constant"
    xs, ys = [], []
    wp = prec + 16
    with workprec(wp):
        for n in range(max(16, N // 10), N):
            d = abs(vals[n] - est)
            if d != 0:
                xs.append(math.log(n))
                ys.append(float(mp.log(to_mpf(d, wp))))
    rate = _ls_slope(xs, ys) if len(xs) >= 4 else None
    return LimitEstimate(
        limit=to_mpf(est, prec), rate_exponent=rate, degenerate=False, method=method,
    )


def _ls_slope(xs: list, ys: list) -> float:
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)


def _logabs(v: Fraction) -> float:
    with workprec(64):
        return float(mp.log(abs(to_mpf(v, 64))))


def _consecutive_log_ratios(vals: list, lo: int) -> list:
    out = []
    for n in range(lo, len(vals) - 1):
        if vals[n] != 0 and vals[n + 1] != 0:
            out.append(_logabs(vals[n + 1]) - _logabs(vals[n]))
    return out


def fit_growth(values: list, prec: int = DEFAULT_PREC) -> GrowthFit:
    """Fit |P_n| to q^n n^(-u-1) (log n)^v by successive ratio analysis.

    q comes from the trend of |P_{n+1}/P_n| (intercept of log-ratios against
    1/n for smooth data; an endpoint geometric mean anchored at local maxima
    when the modulus oscillates), then u from the log-log slope of |P_n|/q^n,
    then v in {0,1,2} by smallest least-squares residual. Sequences with
    ratios tending to zero are flagged sub-geometric and refit against
    n!-normalized values (factorial_order 1).
    """
    vals = [Fraction(v) for v in values]
    N = len(vals)
    if N < 32:
        raise DomainError("fit_growth needs at least 32 values")
    if all(v == 0 for v in vals[N // 2:]):
        raise DomainError("fit_growth needs an eventually nonzero sequence")
    lo = max(4, N // 2)
    idx = [n for n in range(lo, N) if vals[n] != 0]
    la = {n: _logabs(vals[n]) for n in idx}
    ratios = [
        la[idx[i + 1]] - la[idx[i]]
        for i in range(len(idx) - 1)
        if idx[i + 1] == idx[i] + 1
    ]
    if not ratios:
        raise DomainError("too many zeros in the fit window")
    med = sorted(ratios)[len(ratios) // 2]
    if med < math.log(0.05):
        # Ratio heading to zero: try the factorial normalization n!^(1/d),
        # d = 1, and keep it only if it actually stabilizes the ratios.
        normalized = [v * math.factorial(n) for n, v in enumerate(vals)]
        nr = _consecutive_log_ratios(normalized, lo)
        if nr and (max(nr) - min(nr)) < (max(ratios) - min(ratios)):
            inner = fit_growth(normalized, prec)
            return GrowthFit(
                q=inner.q, u=inner.u, v=inner.v,
                sub_geometric=True, factorial_order=1,
                oscillatory=inner.oscillatory,
            )
    spread = max(ratios) - min(ratios)
    oscillatory = spread > math.log(4) or len(idx) < (N - lo)
    if not oscillatory:
        # log r_n = log q - (u+1)/n + O(1/n^2): intercept of LS against 1/n
        xs = [1.0 / idx[i] for i in range(len(idx) - 1) if idx[i + 1] == idx[i] + 1]
        n_ = len(xs)
        sx, sy = sum(xs), sum(ratios)
        sxx = sum(x * x for x in xs)
        sxy = sum(x * y for x, y in zip(xs, ratios))
        denom = n_ * sxx - sx * sx
        if abs(denom) < 1e-30:
            logq = sy / n_
        else:
            slope = (n_ * sxy - sx * sy) / denom
            logq = (sy - slope * sx) / n_
    else:
        quarter = max(1, len(idx) // 4)
        j1 = max(idx[:quarter], key=lambda n: la[n])
        j2 = max(idx[-quarter:], key=lambda n: la[n])
        logq = (la[j2] - la[j1]) / (j2 - j1)
    best = None
    for v in (0, 1, 2):
        xs, ys = [], []
        for n in idx:
            xs.append(math.log(n))
            ys.append(la[n] - n * logq - v * math.log(math.log(n)))
        k = len(xs)
        sx, sy = sum(xs), sum(ys)
        sxx = sum(x * x for x in xs)
        sxy = sum(x * y for x, y in zip(xs, ys))
        slope = (k * sxy - sx * sy) / (k * sxx - sx * sx)
        icpt = (sy - slope * sx) / k
        res = sum((y - slope * x - icpt) ** 2 for x, y in zip(xs, ys))
        if best is None or res < best[0]:
            best = (res, slope, v)
    return GrowthFit(
        q=math.exp(logq), u=-best[1] - 1, v=best[2], oscillatory=oscillatory,
    )
