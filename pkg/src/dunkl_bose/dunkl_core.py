"""Statistics of the Dunkl-deformed Bose gas in reduced units (hbar*omega = k_B = 1).

The Wigner parameter theta enters everywhere through p = 1 + 2*theta: odd
oscillator quanta carry the deformed energy n + 2*theta instead of n.
"""

import math

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate

from dunkl_bose.config import settings
from dunkl_bose.errors import DivergenceError, DomainError, NumericalError, TruncationError
from dunkl_bose.logger_utils import get_logger
from dunkl_bose.specfun import eta, gamma, polylog, polylog_log, zeta

logger = get_logger(__name__)


def check_theta(theta: float) -> float:
    if not theta > -0.5:
        raise DomainError(f"Wigner parameter must satisfy theta > -1/2 (got theta={theta})")

    return 1.0 + 2.0 * theta


def _check_fugacity(z: float) -> None:
    if not 0.0 < z <= 1.0:
        raise DomainError(f"fugacity must satisfy 0 < z <= 1 (got z={z})")


def g_dunkl(d: float, z: float, theta: float) -> float:
    """
    Generalized Bose function
        g_d(z, theta) = Li_d(z) + Li_d(-z) - p^(1-d) Li_d(-z^p),  p = 1 + 2*theta.
    """

    check_theta(theta)
    _check_fugacity(z)
    if z == 1.0:
        return g_dunkl_at_unit_fugacity(d, theta)

    return g_dunkl_log(d, -math.log(z), theta)


def g_dunkl_log(d: float, alpha: float, theta: float) -> float:
    """g_d(e^-alpha, theta) for alpha = -ln z >= 0; alpha = 0 is z = 1."""

    p = check_theta(theta)
    if not alpha >= 0.0:
        raise DomainError(f"alpha = -ln z must be non-negative (got alpha={alpha})")
    if alpha == 0.0:
        return g_dunkl_at_unit_fugacity(d, theta)

    # Only Li_d(z) is ill-conditioned near z = 1; the alternating terms take z itself.
    even = polylog_log(d, alpha).value + polylog(d, -math.exp(-alpha)).value
    odd = p ** (1.0 - d) * polylog(d, -math.exp(-p * alpha)).value

    return even - odd


def g_dunkl_duplication(d: float, z: float, theta: float) -> float:
    """g_d(z, theta) via the duplication identity Li_d(z) + Li_d(-z) = 2^(1-d) Li_d(z^2)."""

    p = check_theta(theta)
    _check_fugacity(z)
    if z == 1.0 and d <= 1.0:
        raise DivergenceError(f"g_d(1, theta) diverges for d <= 1 (got d={d})")

    return 2.0 ** (1.0 - d) * polylog(d, z * z).value - p ** (1.0 - d) * polylog(
        d, -(z**p)
    ).value


def g_dunkl_at_unit_fugacity(d: float, theta: float) -> float:
    p = check_theta(theta)
    if not d > 1.0:
        raise DivergenceError(
            f"g_d(1, theta) diverges for d <= 1 (got d={d}): no condensation"
        )

    return 2.0 ** (1.0 - d) * zeta(d) + p ** (1.0 - d) * eta(d)


def g_dunkl_small_z(d: float, z: float, theta: float) -> float:
    """Leading small-fugacity terms z^2 / 2^(d-1) + z^p / p^(d-1)."""

    p = check_theta(theta)
    if not 0.0 < z < 0.1:
        raise DomainError(f"small-z expansion is used for 0 < z < 0.1 only (got z={z})")

    return z * z / 2.0 ** (d - 1.0) + z**p / p ** (d - 1.0)


def _occupation(a, p: float):
    """n_theta as a function of a = eps/t - ln z >= 0, written with decaying exponentials."""

    return 2.0 * np.exp(-2.0 * a) / -np.expm1(-2.0 * a) + p * np.exp(-p * a) / (
        1.0 + np.exp(-p * a)
    )


def n_theta(eps: ArrayLike, t: float, z: float, theta: float):
    """
    Deformed mean occupation of a level eps (units hbar*omega, measured from the
    ground state):
        2 / (e^(2 eps/t) z^-2 - 1) + p / (e^(p eps/t) z^-p + 1).

    Accepts scalars or arrays for `eps`; returns the same shape.
    """

    p = check_theta(theta)
    _check_fugacity(z)
    if not t > 0.0:
        raise DomainError(f"reduced temperature must be positive (got t={t})")

    eps_array = np.asarray(eps, dtype=float)
    if np.any(eps_array < 0.0):
        raise DomainError("level energies are measured from the ground state and must be >= 0")

    a = eps_array / t - math.log(z)
    if np.any(a == 0.0):
        raise DivergenceError(
            "occupation of the ground state diverges at z = 1 (macroscopic condensate)"
        )

    with np.errstate(over="ignore", under="ignore"):
        occupation = _occupation(a, p)

    if occupation.ndim == 0:
        return float(occupation)

    return occupation


def density_of_states(d: float, eps: ArrayLike):
    if not d >= 1.0:
        raise DomainError(f"dimension must satisfy d >= 1 (got d={d})")

    eps_array = np.asarray(eps, dtype=float)
    if np.any(eps_array <= 0.0):
        raise DomainError("density of states is evaluated at eps > 0")

    rho = eps_array ** (d - 1.0) / gamma(d)
    if rho.ndim == 0:
        return float(rho)

    return rho


def deformed_number(n: ArrayLike, theta: float):
    """Eigenvalue of the deformed number operator: n for even n, n + 2*theta for odd n."""

    n_array = np.asarray(n)

    return n_array + 2.0 * theta * (n_array % 2)


def mode_partition_factor(eps_minus_mu: float, beta: float, theta: float) -> float:
    """Single-mode factor (1 + e^(-beta p x)) / (1 - e^(-2 beta x)) of the grand partition function."""

    p = check_theta(theta)
    if not beta > 0.0:
        raise DomainError(f"beta must be positive (got beta={beta})")
    if not eps_minus_mu > 0.0:
        raise DivergenceError(
            f"mode sum diverges for eps - mu <= 0 (got eps - mu={eps_minus_mu})"
        )

    x = beta * eps_minus_mu

    return (1.0 + math.exp(-p * x)) / -math.expm1(-2.0 * x)


def _mode_weights(decay: float, theta: float, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1 (got n_max={n_max})")

    quanta = deformed_number(np.arange(n_max + 1), theta)

    return quanta, np.exp(-decay * quanta)


def _suggest_n_max(decay: float, tolerance: float, n_max: int) -> int:
    return max(2 * n_max, math.ceil((-math.log(tolerance) + 10.0) / decay))


def mode_partition_oracle(
    eps_minus_mu: float, beta: float, theta: float, n_max: int
) -> float:
    """Brute-force sum over the deformed ladder sum_n exp(-beta (eps - mu) n~)."""

    check_theta(theta)
    if not beta > 0.0 or not eps_minus_mu > 0.0:
        raise DivergenceError(
            f"mode sum needs beta > 0 and eps - mu > 0 (got beta={beta}, eps - mu={eps_minus_mu})"
        )

    decay = beta * eps_minus_mu
    _, weights = _mode_weights(decay, theta, n_max)
    total = math.fsum(weights)

    r = math.exp(-decay)
    tail = max(1.0, r ** (2.0 * theta)) * r ** (n_max + 1) / -math.expm1(-decay)
    tolerance = settings.PARTITION_ORACLE_TOLERANCE
    if tail > tolerance * total:
        logger.debug("Mode sum truncated too early.", n_max=n_max, tail=tail, total=total)

        raise TruncationError(
            f"mode sum tail {tail:.3e} above {tolerance:.0e} of the sum at n_max={n_max}",
            suggested_n_max=_suggest_n_max(decay, tolerance, n_max),
        )

    return total


def mean_occupation_oracle(
    eps: float, t: float, z: float, theta: float, n_max: int
) -> float:
    """Mean deformed quantum number sum n~ w_n / sum w_n with w_n = z^n~ e^(-(eps/t) n~)."""

    check_theta(theta)
    _check_fugacity(z)
    if not t > 0.0:
        raise DomainError(f"reduced temperature must be positive (got t={t})")

    decay = eps / t - math.log(z)
    if not decay > 0.0:
        raise DivergenceError("mean occupation diverges at eps = 0 with z = 1")

    quanta, weights = _mode_weights(decay, theta, n_max)
    denominator = math.fsum(weights)
    numerator = math.fsum(quanta * weights)
    mean = numerator / denominator

    r = math.exp(-decay)
    one_minus_r = -math.expm1(-decay)
    m = n_max + 1
    envelope = max(1.0, r ** (2.0 * theta)) * r**m
    shift = max(0.0, 2.0 * theta)
    numerator_tail = envelope * ((m + shift) / one_minus_r + r / one_minus_r**2)
    denominator_tail = envelope / one_minus_r
    bound = (numerator_tail + mean * denominator_tail) / denominator

    tolerance = settings.OCCUPATION_ORACLE_TOLERANCE
    if bound > tolerance * mean:
        logger.debug("Occupation sum truncated too early.", n_max=n_max, bound=bound, mean=mean)

        raise TruncationError(
            f"occupation tail {bound:.3e} above {tolerance:.0e} relative at n_max={n_max}",
            suggested_n_max=_suggest_n_max(decay, tolerance, n_max),
        )

    return mean


def _semiclassical_moment(d: float, t: float, z: float, theta: float, power: int) -> float:
    """t^(d+power) / Gamma(d) * int_0^inf x^(d-1+power) n_theta(x t, t, z, theta) dx."""

    p = check_theta(theta)
    _check_fugacity(z)
    if not d >= 1.0:
        raise DomainError(f"dimension must satisfy d >= 1 (got d={d})")
    if not t > 0.0:
        raise DomainError(f"reduced temperature must be positive (got t={t})")
    if z == 1.0 and d - 1.0 + power <= 0.0:
        raise DivergenceError(f"semiclassical integral diverges at z = 1 for d={d}")

    log_z = math.log(z)
    decay_rate = min(2.0, p)
    x_max = (60.0 + 4.0 * (d + power)) / decay_rate
    u_max = math.sqrt(x_max)
    exponent = 2.0 * (d - 1.0 + power) + 1.0

    def integrand(u: float) -> float:
        a = u * u - log_z
        return 2.0 * u**exponent * float(_occupation(a, p))

    points = sorted(
        {q for q in (1.0, math.sqrt(1.0 / decay_rate), math.sqrt((d + power) / decay_rate)) if q < u_max}
    )
    result = integrate.quad(
        integrand,
        0.0,
        u_max,
        points=points,
        limit=settings.QUAD_LIMIT,
        epsabs=0.0,
        epsrel=1e-10,
        full_output=1,
    )
    value, abserr = result[0], result[1]
    if not abserr <= 1e-8 * abs(value):
        logger.error("Semiclassical quadrature failed.", d=d, z=z, theta=theta, error=abserr)

        raise NumericalError(
            f"semiclassical quadrature reached relative error {abserr / abs(value):.3e} only"
        )

    return t ** (d + power) * value / gamma(d)


def semiclassical_excited_integral(d: float, t: float, z: float, theta: float) -> float:
    """int_0^inf rho(eps) n_theta(eps) d eps by quadrature; equals t^d g_d(z, theta)."""

    return _semiclassical_moment(d, t, z, theta, power=0)


def semiclassical_energy_integral(d: float, t: float, z: float, theta: float) -> float:
    """int_0^inf eps rho(eps) n_theta(eps) d eps by quadrature; equals d t^(d+1) g_(d+1)(z, theta)."""

    return _semiclassical_moment(d, t, z, theta, power=1)
