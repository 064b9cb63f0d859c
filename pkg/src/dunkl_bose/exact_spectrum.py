"""Level sums over the isotropic d-dimensional oscillator spectrum eps_n = n (from the
ground state) with degeneracy C(n+d-1, d-1), compared with the semiclassical
density-of-states results."""

import math

import numpy as np
import pandas as pd
from scipy import special

from dunkl_bose.config import settings
from dunkl_bose.dunkl_core import check_theta, g_dunkl, n_theta
from dunkl_bose.errors import DomainError, TruncationError
from dunkl_bose.logger_utils import get_logger
from dunkl_bose.models import GasSpec, SpectrumSum, SpectrumTruncation
from dunkl_bose.thermo import critical_temperature, solve_fugacity

logger = get_logger(__name__)

COMPARISON_COLUMNS = (
    "t",
    "t_over_tc",
    "z",
    "n_excited_exact",
    "n_excited_semiclassical",
    "n_excited_corrected",
    "u_exact",
    "u_semiclassical",
    "u_corrected",
    "n_deviation",
    "n_deviation_corrected",
    "u_deviation",
    "u_deviation_corrected",
)


def _integer_dimension(d: float) -> int:
    if not float(d).is_integer() or d < 1:
        raise DomainError(f"exact spectrum needs an integer dimension d >= 1 (got d={d})")

    return int(d)


def level_degeneracy(d: int, n):
    """
    Number of states of the d-dimensional isotropic oscillator with n quanta.
    Exact integer for scalar n, float array for array n.
    """

    d = _integer_dimension(d)
    if np.ndim(n) == 0:
        if n < 0:
            raise DomainError(f"level index must be >= 0 (got n={n})")

        return math.comb(int(n) + d - 1, d - 1)

    n = np.asarray(n)
    if np.any(n < 0):
        raise DomainError("level indices must be >= 0")

    return special.comb(n + d - 1, d - 1, exact=False)


def _decay_rate(theta: float) -> float:
    return min(2.0, check_theta(theta))


def default_n_max(d: int, t: float, theta: float) -> int:
    """Cutoff a fixed number of decay lengths t / min(2, p) past the ground state."""

    return max(1, math.ceil(settings.SPECTRUM_DECAY_LENGTHS * t / _decay_rate(theta)) + 4 * d)


def _tail_bound(d: int, theta: float, t: float, n_max: int, power: int) -> float:
    """
    Bound on sum_{n > n_max} deg(d, n) n^power n_theta(n).

    n_theta(n) <= A r^n with r = exp(-min(2, p) / t), deg(d, n) n^power <=
    (n + d)^m / (d-1)! with m = d - 1 + power; the ratio of consecutive majorant
    terms is largest at the first dropped level.
    """

    p = 1.0 + 2.0 * theta
    q = min(2.0, p)
    m = d - 1 + power
    first = n_max + 1
    amplitude = 2.0 / -math.expm1(-2.0 * first / t) + p
    log_r = -q / t

    ratio = ((first + d + 1.0) / (first + d)) ** m * math.exp(log_r)
    if ratio >= 1.0:
        return math.inf

    log_first_term = m * math.log(first + d) + first * log_r

    return amplitude * math.exp(log_first_term) / (math.factorial(d - 1) * (1.0 - ratio))


def _level_sum(
    d: float,
    theta: float,
    t: float,
    z: float,
    trunc: SpectrumTruncation | None,
    power: int,
) -> SpectrumSum:
    d = _integer_dimension(d)
    check_theta(theta)
    if not t > 0.0:
        raise DomainError(f"reduced temperature must be positive (got t={t})")

    n_max = trunc.n_max if trunc is not None else default_n_max(d, t, theta)
    levels = np.arange(1, n_max + 1)
    weights = level_degeneracy(d, levels) * levels.astype(float) ** power
    terms = weights * n_theta(levels, t, z, theta)
    total = math.fsum(terms)

    tail = _tail_bound(d, theta, t, n_max, power)
    tolerance = settings.SPECTRUM_TAIL_TOLERANCE
    if not tail < tolerance * total:
        logger.debug("Level sum truncated too early.", d=d, t=t, n_max=n_max, tail=tail)

        raise TruncationError(
            f"level-sum tail bound {tail:.3e} not below {tolerance:.0e} of the sum "
            f"{total:.6g} at n_max={n_max}",
            suggested_n_max=max(2 * n_max, default_n_max(d, t, theta)),
        )

    return SpectrumSum.build(
        value=total,
        truncation=SpectrumTruncation.build(n_max=n_max, tail_bound=tail),
    )


def exact_excited_sum(
    d: float, theta: float, t: float, z: float, trunc: SpectrumTruncation | None = None
) -> SpectrumSum:
    return _level_sum(d, theta, t, z, trunc, power=0)


def exact_excited_count(
    d: float, theta: float, t: float, z: float, trunc: SpectrumTruncation | None = None
) -> float:
    """sum_{n >= 1} deg(d, n) n_theta(n, t, z, theta) with a certified tail."""

    return exact_excited_sum(d, theta, t, z, trunc).value


def exact_energy_sum(
    d: float, theta: float, t: float, z: float, trunc: SpectrumTruncation | None = None
) -> SpectrumSum:
    return _level_sum(d, theta, t, z, trunc, power=1)


def exact_internal_energy(
    d: float, theta: float, t: float, z: float, trunc: SpectrumTruncation | None = None
) -> float:
    return exact_energy_sum(d, theta, t, z, trunc).value


def _finite_size_terms(d: int, t: float, z: float, theta: float) -> tuple[float, float]:
    """
    Next-order terms from deg(d, n) = n^(d-1)/(d-1)! + (d/2) n^(d-2)/(d-2)! + ...:
    (d/2) t^(d-1) g_(d-1) for N_eps and d(d-1)/2 t^d g_d for U. NaN where g_(d-1)
    diverges.
    """

    if d == 1:
        return 0.0, 0.0

    energy_term = 0.5 * d * (d - 1) * t**d * g_dunkl(d, z, theta)
    if z == 1.0 and d - 1 <= 1:
        return math.nan, energy_term

    return 0.5 * d * t ** (d - 1) * g_dunkl(d - 1, z, theta), energy_term


def _fugacity_for(spec: GasSpec, t: float, t_c: float | None) -> float:
    if t_c is not None and t <= t_c:
        return 1.0

    return solve_fugacity(spec, t)


def semiclassical_comparison(spec: GasSpec, t_grid, z: float | None = None) -> pd.DataFrame:
    """
    Exact level sums against t^d g_d and d t^(d+1) g_(d+1), with relative
    deviations (exact - semiclassical) / semiclassical for the leading and the
    finite-size-corrected semiclassical values.

    Without `z` the fugacity follows the gas: 1 below t_c, solved above.
    """

    d = _integer_dimension(spec.d)
    theta = spec.theta
    t_c = critical_temperature(spec)

    rows = []
    for t in np.asarray(t_grid, dtype=float):
        fugacity = z if z is not None else _fugacity_for(spec, t, t_c)
        n_exact = exact_excited_count(d, theta, t, fugacity)
        u_exact = exact_internal_energy(d, theta, t, fugacity)
        n_semi = t**d * g_dunkl(d, fugacity, theta)
        u_semi = d * t ** (d + 1) * g_dunkl(d + 1, fugacity, theta)
        n_extra, u_extra = _finite_size_terms(d, t, fugacity, theta)
        n_corrected = n_semi + n_extra
        u_corrected = u_semi + u_extra

        rows.append(
            {
                "t": t,
                "t_over_tc": t / t_c if t_c is not None else math.nan,
                "z": fugacity,
                "n_excited_exact": n_exact,
                "n_excited_semiclassical": n_semi,
                "n_excited_corrected": n_corrected,
                "u_exact": u_exact,
                "u_semiclassical": u_semi,
                "u_corrected": u_corrected,
                "n_deviation": (n_exact - n_semi) / n_semi,
                "n_deviation_corrected": (n_exact - n_corrected) / n_corrected,
                "u_deviation": (u_exact - u_semi) / u_semi,
                "u_deviation_corrected": (u_exact - u_corrected) / u_corrected,
            }
        )

    logger.info("Semiclassical comparison done.", d=d, theta=theta, rows=len(rows))

    return pd.DataFrame(rows, columns=list(COMPARISON_COLUMNS))
