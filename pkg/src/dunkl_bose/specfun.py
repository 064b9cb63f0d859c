"""Special-function kernel: gamma, Riemann zeta, Dirichlet eta and the real-order
polylogarithm Li_s(z) on z in [-1, 1].

Every evaluator carries a conservative absolute error estimate; estimates at or
above ``settings.POLYLOG_TOLERANCE`` are reported as NumericalError instead of
being returned.
"""

import math
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from dunkl_bose.config import settings
from dunkl_bose.errors import DivergenceError, DomainError, NumericalError
from dunkl_bose.logger_utils import get_logger
from dunkl_bose.models import PolylogValue

logger = get_logger(__name__)

_EPS = float(np.finfo(float).eps)
_CVZ_BASE = 3.0 + math.sqrt(8.0)


def gamma(s: float) -> float:
    if not s > 0.0:
        raise DomainError(f"gamma is evaluated for s > 0 only (got s={s})")

    return float(special.gamma(s))


@lru_cache(maxsize=8)
def _bernoulli_over_factorial(n_corrections: int) -> tuple[float, ...]:
    """B_2j / (2j)! for j = 1 .. n_corrections + 1 (the last one sizes the remainder)."""

    numbers = special.bernoulli(2 * (n_corrections + 1))

    return tuple(
        float(numbers[2 * j]) / math.factorial(2 * j)
        for j in range(1, n_corrections + 2)
    )


def _zeta_euler_maclaurin(s: float) -> tuple[float, float]:
    """
    Euler-Maclaurin summation of sum_k k^-s: direct terms below N, the integral
    and half-term at N, then B_2j corrections with the rising factorial
    s (s+1) ... (s+2j-2). Valid for every real s > 0 except s = 1.

    Returns the value and a bound made of the first omitted correction plus
    accumulated rounding.
    """

    n = settings.ZETA_DIRECT_TERMS
    m = settings.ZETA_CORRECTION_TERMS

    k = np.arange(1, n, dtype=float)
    head = math.fsum(np.power(k, -s))
    boundary = n ** (1.0 - s) / (s - 1.0) + 0.5 * n ** (-s)

    corrections = []
    rising = s
    for j, coefficient in enumerate(_bernoulli_over_factorial(m), start=1):
        corrections.append(coefficient * rising * n ** (-s - 2 * j + 1))
        rising *= (s + 2 * j - 1) * (s + 2 * j)

    value = head + boundary + math.fsum(corrections[:m])
    error = abs(corrections[m]) + 8.0 * _EPS * (abs(head) + abs(boundary))

    return value, error


def _certified(value: float, error: float, what: str) -> PolylogValue:
    # Absolute below |value| = 1, relative above (near-divergent orders s <= 1).
    if not math.isfinite(value) or not error < settings.POLYLOG_TOLERANCE * max(1.0, abs(value)):
        logger.error(
            "Error estimate above tolerance.",
            what=what,
            value=value,
            error=error,
            tolerance=settings.POLYLOG_TOLERANCE,
        )

        raise NumericalError(
            f"{what}: error estimate {error:.3e} not below {settings.POLYLOG_TOLERANCE:.0e}"
        )

    return PolylogValue(value=value, abs_error_estimate=error)


def zeta_value(s: float) -> PolylogValue:
    if not s > 1.0:
        raise DivergenceError(f"zeta(s) diverges for s <= 1 (got s={s})")

    value, error = _zeta_euler_maclaurin(s)

    return _certified(value, error, f"zeta({s})")


def zeta(s: float) -> float:
    return zeta_value(s).value


def _eta_alternating(s: float) -> tuple[float, float]:
    """Accelerated alternating series sum_k (-1)^k / (k+1)^s (Cohen, Rodriguez
    Villegas and Zagier), error ~ (3 + sqrt 8)^-n."""

    n = settings.ETA_ACCELERATION_TERMS
    d = _CVZ_BASE**n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    total = 0.0
    for k in range(n):
        c = b - c
        total += c / (k + 1.0) ** s
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))

    value = total / d
    error = 3.0 * _CVZ_BASE ** (-n) + 64.0 * n * _EPS

    return value, error


def eta_value(s: float) -> PolylogValue:
    if not s > 0.0:
        raise DomainError(f"eta is evaluated for s > 0 only (got s={s})")

    if s > 1.0:
        zeta_s, zeta_error = _zeta_euler_maclaurin(s)
        factor = -math.expm1((1.0 - s) * math.log(2.0))
        value, error = factor * zeta_s, abs(factor) * zeta_error
    else:
        value, error = _eta_alternating(s)

    return _certified(value, error, f"eta({s})")


def eta(s: float) -> float:
    return eta_value(s).value


def _check_order(s: float) -> None:
    if not s >= 0.0:
        raise DomainError(f"polylog order must satisfy s >= 0 (got s={s})")


def _polylog_series(s: float, z: float) -> tuple[float, float]:
    a = abs(z)
    # Smallest K with |z|^(K+1) / (1 - |z|) below the tail target; dropping
    # the (K+1)^s factor only makes the bound more conservative.
    n_terms = max(
        1, math.ceil(math.log(settings.POLYLOG_SERIES_TAIL * (1.0 - a)) / math.log(a))
    )
    k = np.arange(1, n_terms + 1)
    terms = np.power(z, k) / np.power(k.astype(float), s)

    value = math.fsum(terms)
    tail = a ** (n_terms + 1) / ((n_terms + 1.0) ** s * (1.0 - a))
    error = tail + n_terms * _EPS * float(np.sum(np.abs(terms)))

    return value, error


def _polylog_log_series(s: float, alpha: float) -> tuple[float, float]:
    """
    Li_s(e^-alpha) = Gamma(1 - s) alpha^(s-1) + sum_k zeta(s - k) (-alpha)^k / k!
    for non-integer s and 0 < alpha < 2 pi.
    """

    k = np.arange(settings.POLYLOG_LOG_SERIES_TERMS)
    # zetac covers s - k < 1 through the reflection formula.
    zetas = 1.0 + special.zetac(s - k)
    terms = zetas * np.power(-alpha, k) / special.factorial(k)
    singular = float(special.gamma(1.0 - s)) * alpha ** (s - 1.0)

    value = singular + math.fsum(terms)
    # Terms shrink at least like alpha / (2 pi) per order.
    tail = float(np.max(np.abs(terms[-2:])))
    error = tail + len(terms) * _EPS * (abs(singular) + float(np.sum(np.abs(terms))))

    return value, error


def _bose_integral_log(s: float, alpha: float) -> tuple[float, float]:
    """
    (1 / Gamma(s)) int_0^inf x^(s-1) / (e^(x + alpha) - 1) dx for alpha = -ln z > 0,
    integrated in u with x = u^2 so that the x^(s-1) endpoint behaviour becomes
    2 u^(2s-1).
    """

    power = 2.0 * s - 1.0

    def integrand(u: float) -> float:
        return 2.0 * u**power / math.expm1(u * u + alpha)

    scale = math.sqrt(alpha)

    return _quad_bose(s, integrand, (scale, 10.0 * scale, 1.0), alpha=alpha)


def _bose_integral(s: float, z: float) -> tuple[float, float]:
    """Bose integral of Li_s(z) for 0 < |z| < 1."""

    if z > 0.0:
        return _bose_integral_log(s, -math.log(z))

    power = 2.0 * s - 1.0

    def integrand(u: float) -> float:
        w = z * math.exp(-u * u)
        return 2.0 * u**power * w / (1.0 - w)

    return _quad_bose(s, integrand, (1.0,), z=z)


def _quad_bose(s: float, integrand, breakpoints, **context) -> tuple[float, float]:
    x_max = 50.0 + 4.0 * s
    u_max = math.sqrt(x_max)
    points = sorted({p for p in breakpoints if 0.0 < p < u_max})

    result = integrate.quad(
        integrand,
        0.0,
        u_max,
        points=points or None,
        limit=settings.QUAD_LIMIT,
        epsabs=settings.QUAD_EPSABS,
        epsrel=settings.QUAD_EPSREL,
        full_output=1,
    )
    value, abserr = result[0], result[1]
    if len(result) > 3:
        logger.debug("Quadrature reported a warning.", s=s, message=result[3], **context)

    gamma_s = gamma(s)
    # |integrand| <= 2 x^(s-1) e^-x beyond x_max for |z| <= 1.
    cutoff_tail = 2.0 * float(special.gammaincc(s, x_max))

    return value / gamma_s, abserr / gamma_s + cutoff_tail


@lru_cache(maxsize=16384)
def _polylog_cached(s: float, z: float) -> PolylogValue:
    if z == 0.0:
        return PolylogValue(value=0.0, abs_error_estimate=0.0)
    if s == 0.0:
        value = z / (1.0 - z)
        return _certified(value, 2.0 * _EPS * abs(value), f"Li_0({z})")
    if s == 1.0:
        value = -math.log1p(-z)
        return _certified(value, 2.0 * _EPS * abs(value), f"Li_1({z})")
    if z == 1.0:
        return zeta_value(s)
    if z == -1.0:
        eta_s = eta_value(s)
        return PolylogValue(value=-eta_s.value, abs_error_estimate=eta_s.abs_error_estimate)

    if abs(z) <= settings.POLYLOG_SERIES_RADIUS:
        value, error = _polylog_series(s, z)
    else:
        value, error = _bose_integral(s, z)

    return _certified(value, error, f"Li_{s}({z})")


def polylog(s: float, z: float) -> PolylogValue:
    """
    Li_s(z) = sum_k z^k / k^s for real s >= 0 and z in [-1, 1].

    Closed forms for s = 0 and s = 1, zeta / eta at z = +-1, a power series
    with an explicit tail bound for |z| <= 0.75 and the Bose integral by
    adaptive quadrature for the remaining |z| > 0.75.
    """

    _check_order(s)
    if not -1.0 <= z <= 1.0:
        raise DomainError(f"polylog argument must satisfy |z| <= 1 (got z={z})")
    if z == 1.0 and s <= 1.0:
        raise DivergenceError(f"Li_s(1) diverges for s <= 1 (got s={s})")

    return _polylog_cached(float(s), float(z))


@lru_cache(maxsize=16384)
def _polylog_log_cached(s: float, alpha: float) -> PolylogValue:
    if s == 0.0:
        value = 1.0 / math.expm1(alpha)
        return _certified(value, 2.0 * _EPS * abs(value), f"Li_0(exp(-{alpha}))")
    if s == 1.0:
        value = -math.log(-math.expm1(-alpha))
        return _certified(value, 2.0 * _EPS * abs(value), f"Li_1(exp(-{alpha}))")

    z = math.exp(-alpha)
    if z == 0.0:
        return PolylogValue(value=0.0, abs_error_estimate=0.0)
    if alpha < settings.POLYLOG_LOG_SERIES_RADIUS and not s.is_integer():
        value, error = _polylog_log_series(s, alpha)
    elif z <= settings.POLYLOG_SERIES_RADIUS:
        value, error = _polylog_series(s, z)
    else:
        value, error = _bose_integral_log(s, alpha)

    return _certified(value, error, f"Li_{s}(exp(-{alpha}))")


def polylog_log(s: float, alpha: float) -> PolylogValue:
    """
    Li_s(e^-alpha) for alpha = -ln z >= 0.

    Near z = 1 the float z keeps only about 16 significant digits of 1 - z,
    whereas alpha carries its own. Closed forms cover s = 0 and s = 1, the
    expansion about z = 1 covers non-integer s for alpha < 0.5, and the
    remaining cases use the power series in z or the Bose integral in alpha.
    """

    _check_order(s)
    if not alpha >= 0.0:
        raise DomainError(f"alpha = -ln z must be non-negative (got alpha={alpha})")
    if alpha == 0.0:
        if s <= 1.0:
            raise DivergenceError(f"Li_s(1) diverges for s <= 1 (got s={s})")
        return zeta_value(s)

    return _polylog_log_cached(float(s), float(alpha))


def polylog_integral_oracle(s: float, z: float) -> float:
    """Independent evaluation of Li_s(z) through its Bose integral only."""

    if not s > 0.0:
        raise DomainError(f"integral representation needs s > 0 (got s={s})")
    if not -1.0 <= z <= 1.0:
        raise DomainError(f"integral representation needs |z| <= 1 (got z={z})")
    if z == 1.0 and s <= 1.0:
        raise DivergenceError(f"Bose integral diverges at z = 1 for s <= 1 (got s={s})")
    if z == 0.0:
        return 0.0

    value, error = _bose_integral(float(s), float(z))
    if not error < settings.POLYLOG_TOLERANCE * max(1.0, abs(value)):
        logger.error("Quadrature did not converge.", s=s, z=z, error=error)

        raise NumericalError(
            f"quadrature of the Bose integral for s={s}, z={z} reached only {error:.3e}"
        )

    return value
