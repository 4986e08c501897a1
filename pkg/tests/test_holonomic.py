import random
from fractions import Fraction as F

import pytest

from eoplab.constructions import (
    euler_coefficient_recurrence,
    euler_generating_ode,
    gamma_coefficient_recurrence,
    gamma_generating_ode,
    gamma_seed_values,
)
from eoplab.holonomic import (
    DifferentialOperator,
    HolonomicSequence,
    LeadingCoefficientVanishes,
    LinearRecurrence,
    check_series_satisfies,
    ode_to_recurrence,
    unroll,
)
from eoplab.numcore import DomainError, PolyQ
from eoplab.series import (
    TruncatedSeries,
    binomial_series,
    e_alpha_series,
    e_log_series,
    euler_substitution,
    exp_series,
    log_over_one_minus_z,
    partial_sums,
)

SEVEN_ALPHAS = [F(1, 2), F(1, 3), F(2, 3), F(-1, 2), F(3, 5), F(-4, 7), F(5, 11)]


def _gamma_series(alpha, order):
    return binomial_series(alpha + 1, order) * euler_substitution(
        e_alpha_series(alpha, order), order
    )


def _euler_series(order):
    return log_over_one_minus_z(order) - partial_sums(
        euler_substitution(e_log_series(order), order)
    )


def test_exp_operator_gives_first_order_recurrence():
    rec = ode_to_recurrence(DifferentialOperator([PolyQ([-1]), PolyQ([1])]))
    assert rec == LinearRecurrence([PolyQ([-1]), PolyQ([1, 1])])


def test_euler_ode_translates_to_published_recurrence():
    got = ode_to_recurrence(euler_generating_ode())
    assert got == euler_coefficient_recurrence().normalized()


@pytest.mark.parametrize("alpha", SEVEN_ALPHAS)
def test_gamma_ode_translates_to_published_recurrence(alpha):
    got = ode_to_recurrence(gamma_generating_ode(alpha))
    assert got == gamma_coefficient_recurrence(alpha).normalized()


def test_unroll_euler_seed_step():
    seq = HolonomicSequence(euler_coefficient_recurrence(), [0, 0, F(1, 4)])
    vals = unroll(seq, 4)
    assert vals == [0, 0, F(1, 4), F(17, 36)]


def test_unroll_gamma_seeds():
    alpha = F(1, 2)
    seq = HolonomicSequence(
        gamma_coefficient_recurrence(alpha), gamma_seed_values(alpha)
    )
    vals = unroll(seq, 2)
    assert vals == [2, F(7, 3)]


def test_unroll_returns_initial_terms_unchanged():
    seq = HolonomicSequence(euler_coefficient_recurrence(), [1, 2, 3])
    assert unroll(seq, 3) == [1, 2, 3]


def test_unroll_reports_vanishing_leading_coefficient():
    # leading coefficient (n - 2) dies at n = 2
    rec = LinearRecurrence([PolyQ([1]), PolyQ([-2, 1])])
    seq = HolonomicSequence(rec, [F(1)])
    with pytest.raises(LeadingCoefficientVanishes) as err:
        unroll(seq, 10)
    assert err.value.n == 2


def test_check_series_satisfies_exp():
    op = DifferentialOperator([PolyQ([-1]), PolyQ([1])])
    assert check_series_satisfies(op, exp_series(12))
    bad = TruncatedSeries([F(1)] * 12)
    assert not check_series_satisfies(op, bad)


def test_check_series_insufficient_order():
    op = euler_generating_ode()
    with pytest.raises(DomainError):
        check_series_satisfies(op, exp_series(6))


def test_gamma_generating_function_satisfies_its_ode():
    assert check_series_satisfies(
        gamma_generating_ode(F(1, 2)), _gamma_series(F(1, 2), 40)
    )
    assert check_series_satisfies(
        gamma_generating_ode(F(-1, 2)), _gamma_series(F(-1, 2), 40)
    )


def test_euler_generating_function_has_exact_defect_z():
    # The log-regularized generating function does not satisfy the homogeneous
    # equation: applying the operator leaves exactly the polynomial z (the
    # recurrence is untouched since it only encodes coefficients >= z^2).
    op = euler_generating_ode()
    f = _euler_series(40)
    assert not check_series_satisfies(op, f)
    defect = op.apply(f)
    assert defect.coeffs[0] == 0
    assert defect.coeffs[1] == 1
    assert all(c == 0 for c in defect.coeffs[2 : f.order - op.order])


@pytest.mark.parametrize("alpha", [F(1, 2), F(-1, 2)])
def test_round_trip_gamma(alpha):
    series = _gamma_series(alpha, 300)
    rec = ode_to_recurrence(gamma_generating_ode(alpha))
    seq = HolonomicSequence(rec, series.coeffs[: rec.order])
    assert unroll(seq, 300) == list(series.coeffs)


def test_round_trip_euler():
    series = _euler_series(300)
    rec = ode_to_recurrence(euler_generating_ode())
    seq = HolonomicSequence(rec, series.coeffs[: rec.order])
    assert unroll(seq, 300) == list(series.coeffs)


def test_normalization_idempotent():
    for rec in (euler_coefficient_recurrence(), gamma_coefficient_recurrence(F(2, 3))):
        once = rec.normalized()
        assert once.normalized() == once
    messy = LinearRecurrence(
        [PolyQ([F(2, 3), F(2, 3)]) * PolyQ([1, 1]), PolyQ([F(-4, 3)]) * PolyQ([1, 1])]
    )
    norm = messy.normalized()
    assert norm == LinearRecurrence([PolyQ([1, 1]), PolyQ([-2])]).normalized()
    assert norm.normalized() == norm


def _known_solution_cases(rng):
    # families with closed-form annihilators and exactly computable coefficients
    cases = []
    r1 = F(rng.randint(1, 5), rng.randint(1, 3))
    r2 = F(-rng.randint(1, 5), rng.randint(1, 3))
    # exp(r1 z): y' - r1 y
    cases.append(
        (
            DifferentialOperator([PolyQ([-r1]), PolyQ([1])]),
            lambda N, r=r1: [c * r**n for n, c in enumerate(exp_series(N).coeffs)],
        )
    )
    # exp(r1 z) + exp(r2 z): y'' - (r1+r2) y' + r1 r2 y
    cases.append(
        (
            DifferentialOperator([PolyQ([r1 * r2]), PolyQ([-(r1 + r2)]), PolyQ([1])]),
            lambda N, a=r1, b=r2: [
                c * (a**n + b**n) for n, c in enumerate(exp_series(N).coeffs)
            ],
        )
    )
    b1 = F(rng.randint(1, 6), rng.randint(1, 4))
    b2 = b1 + F(rng.randint(1, 3))
    # (1-z)^(-b1) + (1-z)^(-b2): (1-z)^2 y'' - (1+b1+b2)(1-z) y' + b1 b2 y
    cases.append(
        (
            DifferentialOperator(
                [
                    PolyQ([b1 * b2]),
                    PolyQ([1, -1]) * (-(1 + b1 + b2)),
                    PolyQ([1, -2, 1]),
                ]
            ),
            lambda N, x=b1, y=b2: [
                p + q
                for p, q in zip(binomial_series(x, N).coeffs, binomial_series(y, N).coeffs)
            ],
        )
    )
    return cases


def test_ode_to_recurrence_against_known_solutions():
    rng = random.Random(17)
    for _ in range(6):
        for op, coeff_fn in _known_solution_cases(rng):
            expected = coeff_fn(40)
            rec = ode_to_recurrence(op)
            seq = HolonomicSequence(rec, expected[: rec.order])
            try:
                got = unroll(seq, 40)
            except LeadingCoefficientVanishes:
                continue
            assert got == expected


def test_recurrence_relations_annihilate_applied_series():
    # independent read-off: op applied to a truncated series must vanish
    # exactly where the extracted recurrence says the coefficients are tied
    rng = random.Random(23)
    for _ in range(4):
        for op, coeff_fn in _known_solution_cases(rng):
            series = TruncatedSeries(coeff_fn(30))
            assert check_series_satisfies(op, series)
