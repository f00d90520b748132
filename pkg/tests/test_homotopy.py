import json
import random
from fractions import Fraction

import numpy as np
import pytest

from pole_scout.extrapolation import ExtrapolationError
from pole_scout.homotopy import (
    DivergentExpansionError,
    default_window,
    fabry_estimate,
    fit_inverse_n_expansion,
    lemma1_check,
    lemma2_check,
    monomial_path_series,
    two_pole_series,
)
from pole_scout.scalars import Domain, QComplex
from pole_scout.series import (
    PowerSeries,
    RatioSequence,
    SeriesError,
    ZeroCoefficientError,
    binomial_series,
    multiply,
    ratio_sequence,
)

F = Fraction


# -- constructors ---------------------------------------------------------------


def test_monomial_path_motivating():
    r = ratio_sequence(monomial_path_series(7, 18, 4), start=1)
    assert r.values == (F(36, 11), F(54, 29), F(72, 47))


def test_monomial_p_equals_q_is_linear():
    assert monomial_path_series(5, 5, 6).coeffs == (1, -1, 0, 0, 0, 0, 0)


def test_monomial_sqrt_squares_back():
    s = monomial_path_series(1, 2, 12)
    assert multiply(s, s).coeffs == (1, -1) + (0,) * 11


def test_monomial_rejects_p_zero():
    with pytest.raises(SeriesError):
        monomial_path_series(0, 3, 4)


@pytest.mark.parametrize(
    "P", [QComplex(F(-1, 2), 1), QComplex(-4, 16), QComplex(F(3, 2)), -0.5 + 2j, 4 + 0j]
)
def test_two_pole_normalized(P):
    assert two_pole_series(P, 5)[0] == 1


def test_two_pole_first_coefficient_real_pole():
    s = two_pole_series(F(4), 6, Domain.RATIONAL)
    assert s[1] == F(-5, 8)
    assert s[1] == -(1 + F(1, 4)) / 2


@pytest.mark.parametrize("P", [QComplex(F(-1, 2), 1), QComplex(F(-1, 2), 2), QComplex(7, -3)])
def test_two_pole_square_identity(P):
    d = 10
    s = two_pole_series(P, d, Domain.COMPLEX_RATIONAL)
    sq = multiply(s, s)
    expected = [QComplex(1), -(1 + 1 / P), 1 / P] + [QComplex(0)] * (d - 2)
    assert list(sq.coeffs) == expected


def test_two_pole_float_matches_exact():
    P = QComplex(-1, 4)
    exact = two_pole_series(P, 20)
    flt = two_pole_series(complex(P), 20)
    for a, b in zip(exact, flt):
        assert abs(complex(a) - b) <= 1e-14 * max(1, abs(b))


@pytest.mark.parametrize("P", [0, 1, QComplex(1), 0j])
def test_two_pole_rejects_coalescing(P):
    with pytest.raises(SeriesError):
        two_pole_series(P, 4)


# -- fabry_estimate -----------------------------------------------------------------


def test_fabry_geometric():
    s = PowerSeries([F(1, 3**n) for n in range(11)])
    est = fabry_estimate(s)
    assert est.raw == 3 and est.accelerated == 3
    assert est.radius == 3.0


def test_fabry_sqrt_rho():
    s = binomial_series(1, 2, 32, Domain.COMPLEX_FLOAT)
    est = fabry_estimate(s, algorithm="rho")
    # raw ratio at n=31 is 32/30.5
    assert abs(est.raw - 1) == pytest.approx(1.5 / 30.5, rel=1e-12)
    assert abs(est.accelerated - 1) < 1e-4
    assert est.location[0] % 2 == 0


def test_fabry_two_pole_far():
    est = fabry_estimate(two_pole_series(-4 + 16j, 32), algorithm="rho")
    assert abs(est.accelerated - 1) < 1e-8
    assert est.radius == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("p,q", [(1, 2), (1, 3), (2, 5), (7, 18)])
def test_fabry_single_pole_at_noise_floor(p, q):
    raw, acc = [], []
    for d in (8, 16, 32):
        est = fabry_estimate(binomial_series(p, q, d, Domain.COMPLEX_FLOAT))
        raw.append(abs(est.raw - 1))
        acc.append(abs(est.accelerated - 1))
    assert raw[0] > raw[1] > raw[2]
    # rho is exact on these ratios, so only rounding remains
    assert max(acc) < 1e-12


@pytest.mark.parametrize("algorithm", ["rho", "theta", "aitken", "richardson"])
def test_fabry_all_algorithms(algorithm):
    est = fabry_estimate(two_pole_series(-2 + 8j, 32), algorithm=algorithm, limit=1)
    assert est.diagnostics["min_error"]["error"] < abs(est.raw - 1)
    assert est.radius >= 0


def test_fabry_errors_propagate():
    with pytest.raises(ZeroCoefficientError):
        fabry_estimate(PowerSeries([1, 2, 0, 4, 5]))
    with pytest.raises(ExtrapolationError):
        fabry_estimate(PowerSeries([1, 2, 3]))


def test_pole_estimate_json():
    est = fabry_estimate(two_pole_series(-2 + 8j, 16), limit=1)
    data = json.loads(est.to_json())
    assert data["algorithm"] == "rho"
    assert data["accelerated"]["domain"] == "complex-float"
    assert set(data["diagnostics"]) >= {"valid_entries", "invalid_entries", "min_error"}


# -- lemma1_check ---------------------------------------------------------------------


def test_lemma1_all_ones():
    res = lemma1_check([1] * 6, [1] * 6, 2)
    assert res.lhs == res.rhs == F(3, 4)
    assert res.gap == 0


def test_lemma1_random_positive():
    rng = random.Random(4)
    for _ in range(10):
        a = [F(rng.randint(1, 40), rng.randint(1, 40)) for _ in range(8)]
        b = [F(rng.randint(1, 40), rng.randint(1, 40)) for _ in range(8)]
        res = lemma1_check(a, b, 5)
        assert res.gap == 0 and res.intermediate_gap == 0
        assert res.exact_match
        c = multiply(PowerSeries(a), PowerSeries(b))
        assert res.lhs == c[5] / c[6]


def test_lemma1_square_root_factors():
    P = QComplex(10)
    a = binomial_series(1, 2, 8, Domain.COMPLEX_RATIONAL)
    b = [c * (1 / P) ** k for k, c in enumerate(a)]
    res = lemma1_check(list(a), b, 6)
    assert res.gap == 0
    assert isinstance(res.lhs, QComplex)


def test_lemma1_rejects_zero_entry():
    with pytest.raises(ZeroCoefficientError) as err:
        lemma1_check([1, 2, 0, 1], [1, 1, 1, 1], 2)
    assert err.value.index == 2


def test_lemma1_index_bounds():
    with pytest.raises(ValueError):
        lemma1_check([1, 1, 1], [1, 1, 1], 2)


# -- lemma2_check ----------------------------------------------------------------------


def test_lemma2_single_term():
    res = lemma2_check([1], F(7), 0, top=1)
    assert res.exact == F(1, 7) and res.truncated == F(1, 7)
    assert res.error == 0


def test_lemma2_linear_denominator():
    res = lemma2_check([1, 1], F(10), 3)
    assert res.exact == F(1, 11)
    assert res.truncated == F(1, 10) * (1 - F(1, 10) + F(1, 100) - F(1, 1000))
    assert float(res.truncated) == pytest.approx(0.0909)
    assert res.error == pytest.approx(1 / 11 - 0.0909, rel=1e-12)
    assert res.betas == (1, -1, 1, -1)


def test_lemma2_doubling_pole():
    denom = [2, -3, 1, F(1, 2)]  # a_1 P + a_0 + a_{-1}/P + a_{-2}/P^2
    for m in range(6):
        e1 = lemma2_check(denom, F(20), m, top=1).error
        e2 = lemma2_check(denom, F(40), m, top=1).error
        assert e1 / e2 >= 2**m


def test_lemma2_monotone_in_m():
    for P in (10, 16.0, 25 + 5j):
        errs = [lemma2_check([1, 3, -2], P, m).error for m in range(12)]
        for x, y in zip(errs, errs[1:]):
            assert y < x or y < 1e-15 * abs(lemma2_check([1, 3, -2], P, 0).exact)


def test_lemma2_against_direct_series():
    # 1/(P^2 + 3P - 2) = u^2 / (1 + 3u - 2u^2), u = 1/P; the reciprocal
    # series obeys g_n = -3 g_{n-1} + 2 g_{n-2}
    res = lemma2_check([1, 3, -2], F(50), 7)
    g = [1, -3]
    for _ in range(6):
        g.append(-3 * g[-1] + 2 * g[-2])
    assert list(res.betas) == g


def test_lemma2_divergent():
    with pytest.raises(DivergentExpansionError, match="expansion divergent at this P"):
        lemma2_check([1, 1], F(1, 2), 3)


# -- fit_inverse_n_expansion -----------------------------------------------------------


def test_fit_exact_one_over_n():
    r = RatioSequence(tuple(1 + F(3, n) for n in range(1, 40)), start=1)
    fit = fit_inverse_n_expansion(r, 5, 30, 1)
    assert fit.coefficients[0] == pytest.approx(3, abs=1e-12)
    assert fit.residual < 1e-12


def test_fit_binomial_leading_coefficient():
    p, q = 1, 3
    prev_gap, prev_res = np.inf, np.inf
    for N in (20, 50, 200):
        r = ratio_sequence(binomial_series(p, q, 2 * N + 2))
        fit = fit_inverse_n_expansion(r, N, 2 * N, 1)
        gap = abs(fit.coefficients[0] - (1 + p / q))
        assert gap < prev_gap and fit.residual < prev_res
        prev_gap, prev_res = gap, fit.residual
    assert prev_gap < 5e-3


def test_fit_residual_separates_poles():
    far = fit_inverse_n_expansion(ratio_sequence(two_pole_series(-4 + 16j, 64)), 16, 48, 3)
    near = fit_inverse_n_expansion(ratio_sequence(two_pole_series(-0.5 + 1j, 64)), 16, 48, 3)
    assert far.residual <= 1e-4
    assert near.residual >= 1e-2


def test_fit_defaults_and_errors():
    r = ratio_sequence(two_pole_series(-2 + 8j, 64))
    assert default_window(64) == (16, 48, 3)
    fit = fit_inverse_n_expansion(r)
    assert fit.window == (16, 48) and fit.order == 3
    assert json.loads(fit.to_json())["window"] == [16, 48]
    with pytest.raises(ValueError, match="underdetermines"):
        fit_inverse_n_expansion(r, 10, 12, 3)
    with pytest.raises(ValueError):
        fit_inverse_n_expansion(r, 10, 70, 3)
