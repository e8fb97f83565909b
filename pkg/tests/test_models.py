import math

import numpy as np
import pytest

from ahgeo import models as M


def test_unit_sphere_volume_low_dims():
    assert M.unit_sphere_volume(1) == pytest.approx(2 * math.pi, rel=1e-12)
    assert M.unit_sphere_volume(2) == pytest.approx(4 * math.pi, rel=1e-12)
    assert M.unit_sphere_volume(3) == pytest.approx(2 * math.pi**2, rel=1e-12)


def test_unit_sphere_volume_rejects_bad_dim():
    with pytest.raises(ValueError):
        M.unit_sphere_volume(0)


def test_model_validation():
    with pytest.raises(ValueError):
        M.Hyperbolic(1)
    with pytest.raises(ValueError):
        M.FermiQuotient(2, -1.0)
    with pytest.raises(ValueError):
        M.AdSSchwarzschild(0.0)


def test_ads_horizon_unit_mass_exact():
    # V(1) = 1 + 1 - 2 = 0
    assert M.ads_horizon(1.0) == pytest.approx(1.0, abs=1e-13)


def test_ads_horizon_small_mass_expansion():
    # r^3 + r = 2m gives r ~ 2m - (2m)^3 for small m
    rm = M.ads_horizon(0.001)
    assert abs(rm - 0.002) < 1e-5


@pytest.mark.parametrize("m", [0.01, 0.3, 1.0, 7.5])
def test_ads_horizon_is_root_and_unique_crossing(m):
    rm = M.ads_horizon(m)
    assert abs(M._ads_V(rm, m)) <= 1e-12 * max(1.0, rm * rm)
    eps = 1e-6 * max(1.0, rm)
    assert M._ads_V(rm - eps, m) < 0 < M._ads_V(rm + eps, m)


def test_ads_lambda_unit_mass():
    assert M.ads_lambda(1.0) == pytest.approx(0.5, abs=1e-13)


def test_ads_lambda_small_mass_limit():
    # r_m -> 0 so lambda ~ 2 r_m -> 0
    assert M.ads_lambda(1e-5) < 1e-4


@pytest.mark.parametrize("m", [0.05, 1.0, 3.0])
def test_ads_circle_closes_smoothly(m):
    # one-sided difference of the circle warp at the core must equal 1
    h = 1e-4
    prof = M.warp_profile(M.AdSSchwarzschild(m), h)
    circ = dict((f[0], f[1:]) for f in prof.factors)["circle"]
    assert circ[0] / h == pytest.approx(1.0, abs=1e-6)


def test_ads_t_of_r_basics():
    assert M.ads_t_of_r(1.0, 1.0) == 0.0
    with pytest.raises(ValueError):
        M.ads_t_of_r(1.0, 0.5)


def test_ads_t_of_r_matches_bruteforce_grid():
    # independent oracle: composite midpoint rule on the u-substituted integrand
    m, r = 1.0, 2.0
    rm = M.ads_horizon(m)
    u = np.linspace(0.0, math.sqrt(r - rm), 2_000_001)
    um = 0.5 * (u[1:] + u[:-1])
    du = u[1] - u[0]
    oracle = float(np.sum(2 * um / np.sqrt(M._ads_V(rm + um * um, m)) * du))
    assert M.ads_t_of_r(m, r) == pytest.approx(oracle, abs=1e-8)


@pytest.mark.parametrize("t", [0.3, 1.0, 4.0, 12.0, 20.0])
def test_ads_radial_roundtrip(t):
    m = 1.0
    r = M.ads_r_of_t(m, t)
    assert abs(M.ads_t_of_r(m, r) - t) <= 1e-9


def test_ads_r_growth_rate():
    # V ~ r^2 so r(t+1)/r(t) -> e
    m = 1.0
    ratio = M.ads_r_of_t(m, 16.0) / M.ads_r_of_t(m, 15.0)
    assert ratio == pytest.approx(math.e, rel=1e-3)


def test_warp_profile_hyperbolic():
    prof = M.warp_profile(M.Hyperbolic(2), 1.0)
    name, h, h1, h2 = prof.factors[0]
    assert name == "sphere"
    assert h == pytest.approx(math.sinh(1.0), rel=1e-14)
    assert h1 == pytest.approx(math.cosh(1.0), rel=1e-14)


def test_warp_profile_fermi_core():
    prof = M.warp_profile(M.FermiQuotient(2, 1.0), 0.0)
    vals = {f[0]: f[1] for f in prof.factors}
    assert vals["sphere"] == 0.0
    assert vals["circle"] == pytest.approx(1.0, rel=1e-14)


def test_warp_profile_ads_core():
    prof = M.warp_profile(M.AdSSchwarzschild(1.0), 0.0)
    vals = {f[0]: f[1:] for f in prof.factors}
    assert vals["circle"][0] == pytest.approx(0.0, abs=1e-12)
    assert vals["circle"][1] == pytest.approx(1.0, abs=1e-12)
    assert vals["sphere"][0] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("model", [M.Hyperbolic(2), M.FermiQuotient(2, 0.7),
                                   M.AdSSchwarzschild(1.0)])
@pytest.mark.parametrize("t", [0.5, 1.3, 3.0])
def test_warp_derivatives_match_finite_differences(model, t):
    h = 1e-4
    plus = M.warp_profile(model, t + h)
    minus = M.warp_profile(model, t - h)
    mid = M.warp_profile(model, t)
    for fp, fm, f0 in zip(plus.factors, minus.factors, mid.factors):
        d1 = (fp[1] - fm[1]) / (2 * h)
        d2 = (fp[1] - 2 * f0[1] + fm[1]) / (h * h)
        assert d1 == pytest.approx(f0[2], rel=1e-6, abs=1e-8)
        assert d2 == pytest.approx(f0[3], rel=1e-4, abs=1e-4)


def test_ricci_deviation_hyperbolic():
    model = M.Hyperbolic(2)
    for t in (0.5, 1.0, 2.0):
        assert M.ricci_deviation(model, M.point(model, t), 1e-3) < 1e-5


def test_ricci_deviation_fermi():
    model = M.FermiQuotient(2, 1.0)
    assert M.ricci_deviation(model, M.point(model, 1.0), 1e-3) < 1e-5


def test_ricci_deviation_ads():
    model = M.AdSSchwarzschild(1.0)
    q = M.ads_point_from_r(model, 2.0)
    assert M.ricci_deviation(model, q, 1e-3) < 1e-4


def test_ricci_deviation_rejects_boundary_point():
    model = M.Hyperbolic(2)
    with pytest.raises(ValueError):
        M.ricci_deviation(model, M.point(model, 1e-4), 1e-3)


@pytest.mark.parametrize("r", [1.2, 2.0, 4.0])
def test_ads_sectional_curvature_band(r):
    model = M.AdSSchwarzschild(1.0)
    q = M.ads_point_from_r(model, r)
    K = M.sectional_coordinate_curvatures(model, q, 1e-3)
    tol = 1e-4
    assert np.all(K >= -1 - model.m / r**3 - tol)
    assert np.all(K <= -1 + 2 * model.m / r**3 + tol)


def test_point_validation():
    model = M.FermiQuotient(2, 1.0)
    with pytest.raises(ValueError):
        M.point(model, -1.0)
    with pytest.raises(ValueError):
        M.validate_point(model, M.ModelPoint(1.0, np.array([1.0, 1.0]), 0.0))


def test_model_json_roundtrip():
    for model in (M.Hyperbolic(3), M.FermiQuotient(2, 0.25), M.AdSSchwarzschild(0.5)):
        assert M.model_from_json(M.model_to_json(model)) == model
    assert M.model_from_json('{"model":"hyperbolic","n":2}') == M.Hyperbolic(2)
