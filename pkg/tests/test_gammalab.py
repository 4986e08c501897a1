import math
import random
from fractions import Fraction as F

import pytest
from mpmath import mp, mpf, workprec

from eoplab.numcore import DomainError, double_run, to_mpf
from eoplab.gammalab import (
    euler_gamma,
    gamma_deriv,
    gamma_jet,
    gamma_value,
    lambda_log_poly,
    lambda_ts,
    polygamma,
    psi,
    recip_gamma_deriv,
    recip_gamma_jet,
    y_alpha_i,
)

PREC = 256
TOL = mpf(2) ** -(PREC - 20)


def _close(a, b, tol=TOL):
    with workprec(PREC + 64):
        return abs(a - b) <= tol


def test_euler_gamma_value_and_double_run():
    g = euler_gamma(PREC)
    with workprec(PREC + 16):
        assert abs(g - mp.euler) < TOL
    double_run(euler_gamma, 128)


def test_psi_at_one_is_minus_gamma():
    assert _close(psi(F(1), PREC), -euler_gamma(PREC))


def test_psi_half_classical_value():
    with workprec(PREC + 16):
        want = -mp.euler - 2 * mp.log(2)
        assert _close(psi(F(1, 2), PREC), want)


def test_psi_forward_difference_is_exactly_one_over_x():
    rng = random.Random(31)
    for _ in range(6):
        x = F(rng.randint(1, 24), rng.randint(5, 9))
        lhs = psi(x + 1, PREC)
        with workprec(PREC + 16):
            assert abs((lhs - psi(x, PREC)) - to_mpf(1 / x, PREC)) < TOL


def test_psi_matches_defining_series_at_low_precision():
    # sum_{k<K} (1/(k+1) - 1/(k+x)) has tail about (x-1)/K
    x = F(1, 3)
    K = 200000
    partial = mpf(0)
    with workprec(80):
        for k in range(K):
            partial += mpf(1) / (k + 1) - 1 / (k + to_mpf(x, 80))
        approx = -euler_gamma(80) + partial
        assert abs(approx - psi(x, 80)) < mpf(2) / K


def test_polygamma_values():
    with workprec(PREC + 16):
        assert _close(polygamma(1, F(1), PREC), mp.pi**2 / 6)
        assert _close(polygamma(2, F(1), PREC), -2 * mp.zeta(3))
    for x in (F(1, 3), F(1, 2), F(2)):
        assert polygamma(1, x, 64) > 0


def test_polygamma_matches_defining_series_at_low_precision():
    # Psi^(n)(x) = (-1)^(n+1) n! sum 1/(k+x)^(n+1), tail < n!/(n K^n)
    n, x, K = 2, F(1, 4), 4000
    with workprec(80):
        s = mpf(0)
        for k in range(K):
            s += 1 / (k + to_mpf(x, 80)) ** (n + 1)
        approx = (-1) ** (n + 1) * math.factorial(n) * s
        tail = mpf(math.factorial(n)) / (n * K**n)
        assert abs(approx - polygamma(n, x, 80)) < 2 * tail


def test_polygamma_against_mpmath():
    with workprec(PREC + 16):
        for n, x in ((1, F(1, 3)), (3, F(2, 7)), (2, F(-3, 2)), (4, F(5, 3))):
            want = mp.psi(n, to_mpf(x, PREC + 16))
            assert abs(polygamma(n, x, PREC) - want) < TOL * max(1, abs(want))


def test_gamma_values():
    with workprec(PREC + 16):
        assert _close(gamma_value(F(1), PREC), mpf(1))
        assert _close(gamma_value(F(5), PREC), mpf(24))
        assert _close(gamma_value(F(1, 2), PREC), mp.sqrt(mp.pi))
        assert _close(gamma_value(F(-1, 2), PREC), -2 * mp.sqrt(mp.pi))


def test_gamma_poles_rejected():
    for bad in (F(0), F(-3)):
        with pytest.raises(DomainError):
            gamma_value(bad, 64)
        with pytest.raises(DomainError):
            psi(bad, 64)
        with pytest.raises(DomainError):
            polygamma(1, bad, 64)


def test_gamma_reflection_identity():
    with workprec(PREC + 16):
        for x in (F(1, 3), F(1, 4), F(2, 5)):
            prod = (
                gamma_value(x, PREC)
                * gamma_value(1 - x, PREC)
                * mp.sin(mp.pi * to_mpf(x, PREC))
                / mp.pi
            )
            assert abs(prod - 1) < TOL


def test_gamma_double_run():
    for x in (F(1, 2), F(-7, 3), F(9, 4)):
        double_run(lambda p, x=x: gamma_value(x, p), 128)
        double_run(lambda p, x=x: psi(x, p), 128)
        double_run(lambda p, x=x: polygamma(2, x, p), 128)


def test_gamma_derivative_examples():
    d = gamma_deriv(2, F(1), PREC)
    with workprec(PREC + 16):
        assert abs(d.values[1] + mp.euler) < TOL
        assert abs(d.values[2] - (mp.euler**2 + mp.pi**2 / 6)) < TOL
    d2 = gamma_deriv(1, F(1, 2), PREC)
    with workprec(PREC + 16):
        want = -mp.sqrt(mp.pi) * (mp.euler + 2 * mp.log(2))
        assert abs(d2.values[1] - want) < TOL


def test_gamma_derivs_satisfy_leibniz_recursion():
    x = F(2, 5)
    d = gamma_deriv(4, x, PREC)
    psis = [psi(x, PREC)] + [polygamma(i, x, PREC) for i in range(1, 4)]
    with workprec(PREC + 16):
        for j in range(4):
            want = sum(
                math.comb(j, i) * psis[i] * d.values[j - i] for i in range(j + 1)
            )
            assert abs(d.values[j + 1] - want) < TOL * max(1, abs(want))


def test_structure_polynomial_leading_gamma_coefficient():
    # Writing Psi(s) = -X + c_s with X standing for Euler's constant, the
    # n-th derivative quotient Gamma^(n)(s)/Gamma(s) becomes a degree-n
    # polynomial in X with leading coefficient (-1)^n.
    for s in (F(1), F(1, 2), F(2, 5)):
        c_s = None
        with workprec(PREC + 16):
            c_s = psi(s, PREC) + euler_gamma(PREC)
        psi_poly = [c_s, mpf(-1)]  # Psi(s) as polynomial in X
        higher = [polygamma(i, s, PREC) for i in range(1, 3)]
        quotients = [[mpf(1)]]  # Gamma^(0)/Gamma = 1
        with workprec(PREC + 16):
            for j in range(2):
                # G_{j+1}/Gamma = sum_i binom(j,i) Psi^(i) * (G_{j-i}/Gamma)
                acc = [mpf(0)] * (j + 2)
                for i in range(j + 1):
                    term = psi_poly if i == 0 else [higher[i - 1]]
                    prev = quotients[j - i]
                    for ai, av in enumerate(term):
                        for bi, bv in enumerate(prev):
                            acc[ai + bi] += math.comb(j, i) * av * bv
                quotients.append(acc)
            for n in (1, 2):
                lead = quotients[n][n]
                assert abs(lead - (-1) ** n) < TOL


def test_recip_gamma_examples():
    with workprec(PREC + 16):
        assert abs(recip_gamma_deriv(0, F(1, 2), PREC) - 1 / mp.sqrt(mp.pi)) < TOL
        assert abs(recip_gamma_deriv(1, F(1), PREC) - mp.euler) < TOL


def test_recip_gamma_entire_at_nonpositive_integers():
    # 1/Gamma vanishes at 0, -1, -2, ... with derivative (-1)^m m!
    for m in (0, 1, 2, 3):
        with workprec(PREC + 16):
            val = recip_gamma_deriv(0, F(-m), PREC)
            slope = recip_gamma_deriv(1, F(-m), PREC)
            assert abs(val) < TOL
            assert abs(slope - (-1) ** m * math.factorial(m)) < TOL


def test_jet_times_reciprocal_jet_is_identity():
    for x in (F(1), F(1, 2), F(1, 3)):
        g = gamma_jet(x, 6, PREC)
        r = recip_gamma_jet(x, 6, PREC)
        with workprec(PREC + 16):
            for k in range(7):
                conv = sum(g[i] * r[k - i] for i in range(k + 1))
                want = 1 if k == 0 else 0
                assert abs(conv - want) < TOL


def test_y_kernel_vanishes_at_nonnegative_integers():
    for t in (0, 1, 2, 3):
        series = y_alpha_i(F(t), 0, 12)
        assert all(c == 0 for c in series.coeffs)


def test_y_kernel_polynomial_at_negative_integers():
    for t in (-1, -2, -3):
        series = y_alpha_i(F(t), 0, 12)
        degree = max(i for i, c in enumerate(series.coeffs) if c != 0)
        assert degree == -1 - t
        assert all(c == 0 for c in series.coeffs[degree + 1 :])


def test_y_kernel_rational_and_nonzero():
    series = y_alpha_i(F(1, 3), 2, 10)
    assert series.order == 10
    assert any(c != 0 for c in series.coeffs)
    assert all(isinstance(c, F) for c in series.coeffs)


@pytest.mark.parametrize("alpha", [F(1, 3), F(-3, 4)])
def test_y_kernel_against_numerical_differentiation(alpha):
    # Independent check through the Gamma quotient itself: finite differences
    # of Gamma(1-{y})/Gamma(-y-n) at y=alpha reproduce the exact jets.
    wp = 300
    h = mpf(2) ** -56
    fl = math.floor(alpha)

    def kernel(y):
        # y is alpha + (small offset); {y} = y - fl near alpha
        num = _gamma_at(1 - y + fl, wp)
        return num / _gamma_at_neg(-y, wp)

    tol = mpf(10) ** -20
    for n in range(6):
        jets = [y_alpha_i(alpha, i, n + 1).coeffs[n] for i in range(4)]
        a = to_mpf(alpha, wp)
        with workprec(wp):
            fm2, fm1, f0, f1, f2 = (
                _kernel_value(alpha, n, a + k * h, wp) for k in (-2, -1, 0, 1, 2)
            )
            d0 = f0
            d1 = (-f2 + 8 * f1 - 8 * fm1 + fm2) / (12 * h)
            d2 = (-f2 + 16 * f1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h)
            d3 = (f2 - 2 * f1 + 2 * fm1 - fm2) / (2 * h**3)
            for i, d in enumerate((d0, d1, d2, d3)):
                want = to_mpf(jets[i], wp) * math.factorial(i)
                assert abs(d - want) < tol * max(1, abs(want)), (n, i)


def _gamma_at(x, wp):
    with workprec(wp):
        return mp.gamma(x)


def _kernel_value(alpha, n, y, wp):
    fl = math.floor(alpha)
    with workprec(wp):
        return mp.gamma(1 - y + fl) / mp.gamma(-y - n)


def test_lambda_integer_t_log_minus_gamma():
    g = euler_gamma(PREC)
    for t in (F(0), F(1), F(5)):
        for x in (F(2), F(10), F(1, 3)):
            with workprec(PREC + 16):
                want = -mp.log(to_mpf(x, PREC)) - g
                assert abs(lambda_ts(t, 1, x, PREC) - want) < TOL


def test_lambda_s0_is_reciprocal_gamma_constant():
    # independent of x
    for t, point in ((F(1, 2), F(1, 2)), (F(7, 3), F(2, 3)), (F(4), F(1))):
        v1 = lambda_ts(t, 0, F(2), PREC)
        v2 = lambda_ts(t, 0, F(17, 5), PREC)
        with workprec(PREC + 16):
            assert abs(v1 - v2) < TOL
            assert abs(v1 - recip_gamma_deriv(0, point, PREC)) < TOL
    with workprec(PREC + 16):
        assert abs(lambda_ts(F(1, 2), 0, F(7), PREC) - 1 / mp.sqrt(mp.pi)) < TOL


def test_lambda_symbolic_slot_returns_coefficients():
    coeffs = lambda_ts(F(2), 1, None, PREC)
    assert len(coeffs) == 2
    with workprec(PREC + 16):
        assert abs(coeffs[1] - 1) < TOL          # coefficient of log(1/x)
        assert abs(coeffs[0] + euler_gamma(PREC)) < TOL
    assert lambda_log_poly(F(2), 1, PREC) == coeffs
