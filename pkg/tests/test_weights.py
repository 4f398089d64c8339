import math

import numpy as np
import pytest

from disclab import PhiSpec, u_of_r, r_of_u


def test_u_of_r_roundtrip():
    r = np.array([0.0, 0.5, 0.75, 1.0 - 2.0**-30])
    u = u_of_r(r)
    assert u[0] == 1.0
    np.testing.assert_allclose(r_of_u(u), r, rtol=0, atol=1e-15)


def test_u_of_dyadic_radius_is_affine_in_level():
    # log(e/(1-r_k)) = 1 + k log 2 exactly
    for k in (1, 5, 12, 30):
        assert math.isclose(float(u_of_r(1.0 - 2.0**-k)), 1.0 + k * math.log(2), rel_tol=1e-14)


def test_power_log_values():
    phi = PhiSpec.power_log(0.5)
    r = 0.75
    u = 1.0 + 2.0 * math.log(2)
    assert math.isclose(float(phi.phi(r)), u**0.5, rel_tol=1e-14)
    assert math.isclose(float(phi.h(r)), 0.5 * math.log(u), rel_tol=1e-14)
    # h'(r)(1-r) = c/u and the decay indicator is the constant c
    assert math.isclose(float(phi.h_slope(r)), 0.5 / u, rel_tol=1e-14)
    assert math.isclose(float(phi.decay_indicator_of_u(u)), 0.5, rel_tol=1e-14)


def test_iterated_log_depth_one():
    # Phi_{1,alpha}(r) = (log(e^2/(1-r)))^alpha = (u+1)^alpha
    phi = PhiSpec.iterated_log(1, 1.0)
    for r in (0.0, 0.5, 0.9):
        u = float(u_of_r(r))
        assert math.isclose(float(phi.phi(r)), u + 1.0, rel_tol=1e-14)
        assert math.isclose(float(phi.h_slope(r)), 1.0 / (u + 1.0), rel_tol=1e-14)


def test_iterated_log_depth_two_origin_value():
    # all members of the family equal 2^alpha at the origin by construction
    for n in (1, 2, 3):
        phi = PhiSpec.iterated_log(n, 1.5)
        assert math.isclose(float(phi.phi(0.0)), 2.0**1.5, rel_tol=1e-12)


def test_iterated_log_depth_two_against_direct_formula():
    phi = PhiSpec.iterated_log(2, 1.0)
    r = 0.9375
    val = math.log(math.log(math.exp(math.exp(2.0)) / (1.0 - r)))
    assert math.isclose(float(phi.phi(r)), val, rel_tol=1e-12)


def test_h_slope_matches_finite_differences():
    for phi in (PhiSpec.power_log(0.3), PhiSpec.iterated_log(2, 2.0)):
        r = 0.875
        eps = 1e-7
        fd = (float(phi.h(r + eps)) - float(phi.h(r - eps))) / (2 * eps)
        assert math.isclose(float(phi.h_slope(r)), fd * (1.0 - r), rel_tol=1e-5)


def test_validate_accepts_families_and_rejects_degenerate():
    PhiSpec.power_log(0.2).validate()
    PhiSpec.iterated_log(1, 1.0).validate()
    PhiSpec.iterated_log(2, 0.7).validate()
    with pytest.raises(ValueError):
        PhiSpec.power_log(0.0).validate()  # constant weight is not > 1


def test_constructor_validation():
    with pytest.raises(ValueError):
        PhiSpec.power_log(-1.0)
    with pytest.raises(ValueError):
        PhiSpec.iterated_log(0, 1.0)
    with pytest.raises(ValueError):
        PhiSpec.iterated_log(1, 0.0)


def test_spec_roundtrip():
    for phi in (PhiSpec.power_log(0.4), PhiSpec.iterated_log(2, 1.25)):
        assert PhiSpec.from_spec(phi.to_spec()) == phi
    with pytest.raises(ValueError):
        PhiSpec.from_spec({"family": "nope"})


def test_h_slope_decreasing_on_grid():
    # hypothesis of the lacunary construction, checked on the dyadic grid
    for phi in (PhiSpec.power_log(1.0), PhiSpec.iterated_log(1, 1.0), PhiSpec.iterated_log(2, 3.0)):
        u = 1.0 + np.arange(31) * math.log(2)
        s = phi.h_slope_of_u(u)
        assert np.all(np.diff(s) < 0)
