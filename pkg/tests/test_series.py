import math

import numpy as np
import pytest

import disclab as dl
from disclab import (
    DegreeOverflowError,
    PhiSpec,
    PowerSeries,
    cauchy_product,
    counterexample_symbol,
    evaluate_on_circle,
    geometric,
    lacunary_from_phi,
    log_reciprocal,
    monomial,
    one_minus_z_power,
    parseval_mean_square,
)


def horner(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


class TestPowerSeriesBasics:
    def test_monomial(self):
        assert monomial(0).coeffs.tolist() == [1.0 + 0j]
        assert monomial(3).coeffs.tolist() == [0j, 0j, 0j, 1.0 + 0j]
        assert monomial(2).evaluate(0.5) == pytest.approx(0.25)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            PowerSeries(np.array([1.0, np.nan]))
        with pytest.raises(ValueError):
            PowerSeries(np.array([np.inf, 0.0]))
        with pytest.raises(ValueError):
            PowerSeries(np.array([]))

    def test_immutable(self):
        f = monomial(2)
        with pytest.raises(ValueError):
            f.coeffs[0] = 5.0

    def test_derivative_primitive_inverse_pair(self):
        rng = np.random.default_rng(3)
        c = rng.normal(size=9) + 1j * rng.normal(size=9)
        f = PowerSeries(c)
        back = f.primitive().derivative()
        np.testing.assert_allclose(back.coeffs, f.coeffs, atol=1e-15)

    def test_dilate_single_coefficient(self):
        g = monomial(3).dilate(0.5)
        assert g.coeffs[3] == pytest.approx(0.125)

    def test_dilate_composition_exact(self):
        rng = np.random.default_rng(5)
        f = PowerSeries(rng.normal(size=17) + 1j * rng.normal(size=17))
        a = f.dilate(0.75).dilate(0.5)
        b = f.dilate(0.375)
        np.testing.assert_array_equal(a.coeffs, b.coeffs)

    def test_linearity_of_transforms(self):
        rng = np.random.default_rng(11)
        f = PowerSeries(rng.normal(size=8))
        g = PowerSeries(rng.normal(size=12))
        lhs = (2.0 * f + g).derivative()
        rhs = 2.0 * f.derivative() + g.derivative()
        np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, atol=1e-15)

    def test_cauchy_product_hand_example(self):
        one_plus = PowerSeries([1.0, 1.0])
        one_minus = PowerSeries([1.0, -1.0])
        prod = cauchy_product(one_plus, one_minus)
        np.testing.assert_allclose(prod.coeffs, [1.0, 0.0, -1.0], atol=1e-15)

    def test_cauchy_product_truncates(self):
        f = monomial(6)
        prod = cauchy_product(f, f, max_degree=8)
        assert prod.degree <= 8
        assert np.all(prod.coeffs == 0)


class TestCircleEvaluation:
    def test_constant(self):
        v = evaluate_on_circle(PowerSeries([3.0 - 1j]), 0.7, 8)
        np.testing.assert_allclose(v, np.full(8, 3.0 - 1j), atol=1e-14)

    def test_identity_map_roots_of_unity(self):
        v = evaluate_on_circle(monomial(1), 0.5, 8)
        expect = 0.5 * np.exp(2j * np.pi * np.arange(8) / 8)
        np.testing.assert_allclose(v, expect, atol=1e-14)

    def test_matches_horner_random_degree_64(self):
        rng = np.random.default_rng(7)
        c = rng.normal(size=65) + 1j * rng.normal(size=65)
        f = PowerSeries(c)
        r = 0.9
        vals = evaluate_on_circle(f, r, 256)
        z = r * np.exp(2j * np.pi * np.arange(256) / 256)
        direct = np.array([horner(c, zz) for zz in z])
        np.testing.assert_allclose(vals, direct, rtol=1e-12, atol=1e-12)

    def test_parseval_consistency(self):
        rng = np.random.default_rng(13)
        c = rng.normal(size=33) + 1j * rng.normal(size=33)
        f = PowerSeries(c)
        for r in (0.3, 0.9, 0.999):
            vals = evaluate_on_circle(f, r)  # auto m >= 2(degree+1)
            mean_sq = float(np.mean(np.abs(vals) ** 2))
            assert math.isclose(mean_sq, parseval_mean_square(f, r), rel_tol=1e-10)

    def test_m_validation_and_autodoubling(self):
        f = PowerSeries(np.ones(10))
        with pytest.raises(ValueError):
            evaluate_on_circle(f, 0.5, 12)  # not a power of two
        assert evaluate_on_circle(f, 0.5, 4).size == 32  # doubled to >= 2*(9+1)


class TestConstructors:
    def test_geometric_coefficients(self):
        g = geometric(0.5, 4)
        np.testing.assert_allclose(g.coeffs, [1, 0.5, 0.25, 0.125, 0.0625])

    def test_log_reciprocal(self):
        f = log_reciprocal(4)
        np.testing.assert_allclose(f.coeffs, [0, 1, 0.5, 1 / 3, 0.25])

    def test_one_minus_z_power_integer_case(self):
        f = one_minus_z_power(2.0, 5)
        np.testing.assert_allclose(f.coeffs, [1, -2, 1, 0, 0, 0], atol=1e-15)

    def test_one_minus_z_power_half(self):
        # (1-z)^(1/2) = 1 - z/2 - z^2/8 - z^3/16 - ...
        f = one_minus_z_power(0.5, 3)
        np.testing.assert_allclose(f.coeffs, [1, -0.5, -0.125, -0.0625], atol=1e-15)


class TestBoundaryBump:
    def test_constant_term(self):
        params = dl.TestFnParams(a=0.5, p=2.0, gamma=1.0)  # s = 1
        f = dl.test_function(params, 8)
        assert f.coeffs[0] == pytest.approx(0.75)

    def test_geometric_series_when_s_is_one(self):
        # s = 1 (gamma = p-1): coefficients are (1-|a|^2) conj(a)^k
        a = 0.4 + 0.3j
        params = dl.TestFnParams(a=a, p=2.0, gamma=1.0)
        f = dl.test_function(params, 12)
        k = np.arange(13)
        expect = (1 - abs(a) ** 2) * np.conj(a) ** k
        np.testing.assert_allclose(f.coeffs, expect, rtol=1e-12)

    def test_value_at_base_point_is_one(self):
        # F(a) = 1 exactly; the truncation reproduces it within the tail bound
        for k in (2, 5, 8):
            a = 1.0 - 2.0**-k
            params = dl.TestFnParams(a=a, p=2.0, gamma=3.0)
            f = dl.test_function(params, 4096)
            val = abs(f.evaluate(a))
            assert abs(val - 1.0) <= f.tail_bound + 1e-12
            assert 0.5 < val < 2.0

    def test_tail_bound_dominates_dropped_terms(self):
        a = 0.9
        params = dl.TestFnParams(a=a, p=1.5, gamma=2.2)
        short = dl.test_function(params, 64)
        long = dl.test_function(params, 4096)
        dropped = np.abs(long.coeffs[65:]) * a ** np.arange(65, 4097)
        assert math.fsum(dropped.tolist()) <= short.tail_bound

    def test_validation(self):
        with pytest.raises(ValueError):
            dl.TestFnParams(a=0.0, p=2.0, gamma=1.0)
        with pytest.raises(ValueError):
            dl.TestFnParams(a=1.5, p=2.0, gamma=1.0)
        with pytest.raises(ValueError):
            dl.TestFnParams(a=0.5, p=-1.0, gamma=1.0)


class TestLacunary:
    def test_power_log_coefficients_direct(self):
        # oracle: direct evaluation of ((h(r_k)-h(r_{k-1}))/phi(r_k))^{1/p}
        phi = PhiSpec.power_log(1.0)
        f = lacunary_from_phi(phi, 2.0, 2)
        L = lambda r: 1.0 - math.log1p(-r)
        h = lambda r: math.log(L(r))
        c2 = math.sqrt((h(0.5) - h(0.0)) / L(0.5))
        c4 = math.sqrt((h(0.75) - h(0.5)) / L(0.75))
        nz = np.nonzero(f.coeffs)[0]
        assert nz.tolist() == [2, 4]
        assert f.coeffs[2] == pytest.approx(c2, rel=1e-12)
        assert f.coeffs[4] == pytest.approx(c4, rel=1e-12)

    def test_single_term(self):
        f = lacunary_from_phi(PhiSpec.iterated_log(1, 1.0), 4.0, 1)
        nz = np.nonzero(f.coeffs)[0]
        assert nz.tolist() == [2]

    def test_tail_bound_formula_and_domination(self):
        phi = PhiSpec.power_log(0.5)
        p = 3.0
        f = lacunary_from_phi(phi, p, 6)
        assert f.tail_bound == pytest.approx(1.0 / float(phi.phi(1 - 2.0**-6)), rel=1e-12)
        # the bound dominates the dirichlet-power tail actually dropped
        ext = lacunary_from_phi(phi, p, 16)
        dropped = ext.coeffs[np.nonzero(ext.coeffs)[0]][6:] ** p
        assert math.fsum(np.real(dropped).tolist()) <= f.tail_bound

    def test_degree_overflow(self):
        with pytest.raises(DegreeOverflowError):
            lacunary_from_phi(PhiSpec.power_log(1.0), 2.0, 18)  # 2^18 > default cap
        lacunary_from_phi(PhiSpec.power_log(1.0), 2.0, 18, max_degree=1 << 18)

    def test_rejects_degenerate_weight(self):
        with pytest.raises(ValueError):
            lacunary_from_phi(PhiSpec.power_log(0.0), 2.0, 3)


class TestCounterexampleSymbol:
    def test_indices_and_values(self):
        alpha = 1.5
        g = counterexample_symbol(alpha, 2)
        nz = np.nonzero(g.coeffs)[0]
        assert nz.tolist() == [4, 16]
        assert g.coeffs[4] == pytest.approx(1.0 / (2 * math.log(2) ** alpha), rel=1e-13)
        assert g.coeffs[16] == pytest.approx(1.0 / (3 * math.log(3) ** alpha), rel=1e-13)

    def test_j_zero_is_empty_partial_sum(self):
        # the displayed series starts at j=0 where log(j+1)=0; the sum here
        # starts at j=1, so the J=0 partial sum is empty
        g = counterexample_symbol(2.0, 0)
        assert g.degree == 0 and g.coeffs[0] == 0

    def test_partial_sums_monotone_and_summable(self):
        alpha = 1.2
        totals = []
        for J in (1, 2, 3, 4):
            g = counterexample_symbol(alpha, J)
            totals.append(math.fsum(np.abs(g.coeffs).tolist()))
        assert all(b > a for a, b in zip(totals, totals[1:]))
        assert totals[-1] + counterexample_symbol(alpha, 4).tail_bound < math.inf

    def test_tail_bound_dominates(self):
        alpha = 1.5
        g3 = counterexample_symbol(alpha, 3)
        extra = [1.0 / ((j + 1) * math.log(j + 1) ** alpha) for j in range(4, 200)]
        assert math.fsum(extra) <= g3.tail_bound

    def test_degree_overflow(self):
        with pytest.raises(DegreeOverflowError):
            counterexample_symbol(1.5, 5)  # 2^32 coefficient vector is not desk scale
