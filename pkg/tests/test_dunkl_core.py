import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dunkl_bose.dunkl_core import (
    deformed_number,
    density_of_states,
    g_dunkl,
    g_dunkl_at_unit_fugacity,
    g_dunkl_duplication,
    g_dunkl_log,
    g_dunkl_small_z,
    mean_occupation_oracle,
    mode_partition_factor,
    mode_partition_oracle,
    n_theta,
    semiclassical_energy_integral,
    semiclassical_excited_integral,
)
from dunkl_bose.errors import DivergenceError, DomainError, TruncationError
from dunkl_bose.specfun import eta, polylog, zeta

ZETA3 = 1.2020569031595942


def _g_series(d: float, z: float, theta: float, terms: int = 40) -> float:
    p = 1.0 + 2.0 * theta
    return sum(
        (z**k + (-z) ** k - p ** (1.0 - d) * (-(z**p)) ** k) / k**d for k in range(1, terms + 1)
    )


def test_g_dunkl_reduces_to_zeta_at_theta_zero():
    assert g_dunkl(3.0, 1.0, 0.0) == pytest.approx(ZETA3, abs=1e-10)


def test_g_dunkl_unit_fugacity_closed_form():
    theta = 1.0
    expected = ZETA3 * (1.0 + theta + theta**2) / (1.0 + 2.0 * theta) ** 2

    assert g_dunkl(3.0, 1.0, theta) == pytest.approx(expected, abs=1e-10)
    assert expected == pytest.approx(0.4006856344, abs=1e-10)


def test_g_dunkl_against_direct_series():
    assert g_dunkl(2.0, 0.3, 0.25) == pytest.approx(_g_series(2.0, 0.3, 0.25), abs=1e-9)


@pytest.mark.parametrize("d, theta", [(1.5, 0.3), (2.0, -0.2), (3.0, 1.0)])
@pytest.mark.parametrize("z", [0.1, 0.6, 0.97])
def test_g_dunkl_log_matches_fugacity_form(d, theta, z):
    assert g_dunkl_log(d, -math.log(z), theta) == pytest.approx(
        g_dunkl_duplication(d, z, theta), rel=1e-9
    )


def test_g_dunkl_log_resolves_fugacity_next_to_one():
    alpha = 1e-14
    # Li_1(z) + Li_1(-z) - Li_1(-z) at theta = 0.
    assert g_dunkl_log(1.0, alpha, 0.0) == pytest.approx(-math.log(alpha), rel=1e-12)
    assert g_dunkl_log(1.2, alpha, 0.3) < g_dunkl_at_unit_fugacity(1.2, 0.3)


def test_g_dunkl_log_at_zero_is_unit_fugacity():
    assert g_dunkl_log(3.0, 0.0, 0.5) == g_dunkl_at_unit_fugacity(3.0, 0.5)
    with pytest.raises(DivergenceError):
        g_dunkl_log(1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        g_dunkl_log(2.0, -1e-6, 0.0)


@pytest.mark.parametrize(
    "d, theta, expected",
    [(3.0, 0.0, ZETA3), (2.0, 1.0, 2.0 * math.pi**2 / 18.0)],
)
def test_g_at_unit_fugacity(d, theta, expected):
    assert g_dunkl_at_unit_fugacity(d, theta) == pytest.approx(expected, abs=1e-9)


def test_g_at_unit_fugacity_saturates_for_large_theta():
    assert g_dunkl_at_unit_fugacity(3.0, 1e6) == pytest.approx(ZETA3 / 4.0, abs=1e-5)


@pytest.mark.parametrize("d", [1.5, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("theta", [-0.4, 0.0, 0.5, 2.0])
def test_g_at_unit_fugacity_matches_duplication_path(d, theta):
    p = 1.0 + 2.0 * theta
    direct = 2.0 ** (1.0 - d) * zeta(d) + p ** (1.0 - d) * eta(d)

    assert g_dunkl(d, 1.0, theta) == pytest.approx(direct, abs=1e-9)
    assert g_dunkl_duplication(d, 1.0, theta) == pytest.approx(direct, abs=1e-9)


def test_g_dunkl_errors():
    with pytest.raises(DivergenceError):
        g_dunkl(1.0, 1.0, 0.0)
    with pytest.raises(DivergenceError):
        g_dunkl_at_unit_fugacity(1.0, 0.3)
    with pytest.raises(DomainError):
        g_dunkl(3.0, 0.5, -0.5)
    with pytest.raises(DomainError):
        g_dunkl(3.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        g_dunkl(3.0, 1.2, 0.0)


@pytest.mark.parametrize("d", [1.0, 1.5, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("z", [1e-4, 0.2, 0.6, 0.85, 0.99])
def test_theta_zero_reduction(d, z):
    assert g_dunkl(d, z, 0.0) == pytest.approx(polylog(d, z).value, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(
    d=st.floats(min_value=1.0, max_value=4.0),
    z=st.floats(min_value=1e-6, max_value=0.99),
    theta=st.floats(min_value=-0.45, max_value=3.0),
)
def test_duplication_form_agrees(d, z, theta):
    assert g_dunkl(d, z, theta) == pytest.approx(g_dunkl_duplication(d, z, theta), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("theta", [-0.45, -0.2, 0.0, 0.5, 3.0])
@pytest.mark.parametrize("d", [1.0, 2.0, 3.0])
def test_g_dunkl_strictly_increasing(theta, d):
    grid = [1e-3, 0.05, 0.2, 0.5, 0.8, 0.9, 0.99, 0.999]
    values = [g_dunkl(d, z, theta) for z in grid]

    assert all(b > a for a, b in zip(values, values[1:]))


def test_n_theta_example_at_theta_zero():
    assert n_theta(1.0, 1.0, 0.5, 0.0) == pytest.approx(1.0 / (2.0 * math.e - 1.0), rel=1e-12)


def test_n_theta_at_ground_level():
    expected = 2.0 / 3.0 + 1.6 / (2.0**1.6 + 1.0)

    assert n_theta(0.0, 1.0, 0.5, 0.3) == pytest.approx(expected, rel=1e-12)
    assert 1.6 / (2.0**1.6 + 1.0) == pytest.approx(0.39688, abs=1e-5)


def test_n_theta_reduces_to_bose_einstein():
    eps = np.array([0.0, 0.1, 1.0, 3.0, 10.0, 40.0])
    for t in (0.5, 1.0, 7.0):
        for z in (0.01, 0.5, 0.9):
            expected = 1.0 / (np.exp(eps / t) / z - 1.0)

            np.testing.assert_allclose(n_theta(eps, t, z, 0.0), expected, rtol=1e-12)


def test_n_theta_vectorized_and_non_negative():
    eps = np.linspace(0.01, 800.0, 200)
    occupation = n_theta(eps, 2.0, 1.0, -0.3)

    assert isinstance(occupation, np.ndarray)
    assert occupation.shape == eps.shape
    assert np.all(occupation >= 0.0)
    assert isinstance(n_theta(1.0, 2.0, 1.0, -0.3), float)


def test_n_theta_diverges_for_condensate():
    with pytest.raises(DivergenceError):
        n_theta(0.0, 1.0, 1.0, 0.2)


@pytest.mark.parametrize(
    "d, eps, expected",
    [(3.0, 2.0, 2.0), (1.0, 5.0, 1.0), (2.5, 1.0, 0.7522527780636751)],
)
def test_density_of_states(d, eps, expected):
    assert density_of_states(d, eps) == pytest.approx(expected, rel=1e-12)


def test_density_of_states_rejects_zero_energy():
    with pytest.raises(DomainError):
        density_of_states(3.0, 0.0)


@pytest.mark.parametrize(
    "x, beta, theta, expected",
    [(1.0, 1.0, 0.0, 1.5819767068693265), (0.5, 2.0, 0.5, 1.3130352854993315)],
)
def test_mode_partition_factor(x, beta, theta, expected):
    assert mode_partition_factor(x, beta, theta) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("x", [0.05, 0.7, 3.0])
def test_mode_partition_factor_theta_zero_is_geometric(x):
    assert mode_partition_factor(x, 1.3, 0.0) == pytest.approx(1.0 / -math.expm1(-1.3 * x), rel=1e-13)


def test_mode_partition_factor_diverges_at_zero_gap():
    with pytest.raises(DivergenceError):
        mode_partition_factor(0.0, 1.0, 0.0)


def test_deformed_number():
    np.testing.assert_allclose(deformed_number([0, 1, 2, 3, 4], 0.3), [0.0, 1.6, 2.0, 3.6, 4.0])


@pytest.mark.parametrize(
    "x, beta, theta, n_max",
    [(1.0, 1.0, 0.0, 50), (1.0, 1.0, 0.3, 60), (2.0, 1.0, -0.4, 40)],
)
def test_mode_partition_oracle(x, beta, theta, n_max):
    assert mode_partition_oracle(x, beta, theta, n_max) == pytest.approx(
        mode_partition_factor(x, beta, theta), abs=1e-12
    )


def test_mode_partition_oracle_rejects_short_sums():
    with pytest.raises(TruncationError) as excinfo:
        mode_partition_oracle(0.01, 1.0, 0.0, 10)

    assert excinfo.value.suggested_n_max > 10


@pytest.mark.parametrize(
    "eps, t, z, theta, n_max",
    [(1.0, 1.0, 0.5, 0.0, 80), (1.0, 1.0, 0.5, 0.3, 80), (0.5, 2.0, 1.0, 0.5, 120)],
)
def test_mean_occupation_oracle(eps, t, z, theta, n_max):
    assert mean_occupation_oracle(eps, t, z, theta, n_max) == pytest.approx(
        n_theta(eps, t, z, theta), abs=1e-10
    )


def test_mean_occupation_oracle_rejects_short_sums():
    with pytest.raises(TruncationError):
        mean_occupation_oracle(0.5, 2.0, 1.0, 0.5, 20)


@pytest.mark.parametrize(
    "d, t, z, theta",
    [(3.0, 2.0, 0.5, 0.3), (2.0, 1.5, 0.9, -0.2), (3.0, 1.0, 1.0, 0.0), (1.5, 4.0, 0.7, 1.0)],
)
def test_semiclassical_integrals(d, t, z, theta):
    assert semiclassical_excited_integral(d, t, z, theta) == pytest.approx(
        t**d * g_dunkl(d, z, theta), rel=1e-6
    )
    assert semiclassical_energy_integral(d, t, z, theta) == pytest.approx(
        d * t ** (d + 1.0) * g_dunkl(d + 1.0, z, theta), rel=1e-6
    )


@pytest.mark.parametrize(
    "d, z, theta, expected",
    [
        (3.0, 0.01, 0.0, 0.010025),
        (3.0, 0.05, 0.5, 0.00125),
        (2.0, 0.01, 1.0, 0.01**2 / 2.0 + 0.01**3 / 3.0),
    ],
)
def test_small_z_expansion_values(d, z, theta, expected):
    assert g_dunkl_small_z(d, z, theta) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize(
    "theta, z",
    [(-0.45, 1e-30), (-0.2, 1e-4), (0.0, 1e-2), (0.5, 1e-2), (1.0, 1e-2), (3.0, 1e-2)],
)
@pytest.mark.parametrize("d", [2.0, 3.0])
def test_small_z_agreement(theta, z, d):
    exact = g_dunkl(d, z, theta)

    assert abs(exact - g_dunkl_small_z(d, z, theta)) / exact < 1e-2


def test_small_z_next_order_term():
    d, z, theta = 3.0, 1e-3, -0.2
    p = 1.0 + 2.0 * theta
    remainder = g_dunkl(d, z, theta) - g_dunkl_small_z(d, z, theta)

    assert remainder == pytest.approx(-(z ** (2.0 * p)) / (2.0**d * p ** (d - 1.0)), rel=2e-2)


def test_small_z_expansion_domain():
    with pytest.raises(DomainError):
        g_dunkl_small_z(3.0, 0.2, 0.0)
