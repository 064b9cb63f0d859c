"""Macroscopic observables of the semiclassical Dunkl Bose gas.

All quantities are per the trapped-gas conventions in reduced units: energies
in hbar*omega, temperatures in hbar*omega / k_B, heat capacities per particle
in k_B. A homogeneous gas is handled by `homogeneous_map`, after which every
function here applies unchanged.
"""

import concurrent.futures
import math

import numpy as np
from scipy import optimize

from dunkl_bose import __version__, lib
from dunkl_bose.config import settings
from dunkl_bose.dunkl_core import check_theta, g_dunkl, g_dunkl_at_unit_fugacity, g_dunkl_log
from dunkl_bose.errors import DomainError, NumericalError, PhaseError
from dunkl_bose.logger_utils import get_logger
from dunkl_bose.models import (
    HOMOGENEOUS_ENERGY_UNIT,
    ClassicalCoefficients,
    CvRatioDiagnostic,
    GasSpec,
    Regime,
    SweepTable,
    TableMetadata,
    ThermoPoint,
    ThetaClass,
    ThetaValidation,
)
from dunkl_bose.specfun import zeta

logger = get_logger(__name__)

_ONE_BELOW = float(np.nextafter(1.0, 0.0))


def _check_temperature(t: float) -> None:
    if not t > 0.0:
        raise DomainError(f"reduced temperature must be positive (got t={t})")


def critical_temperature(spec: GasSpec) -> float | None:
    """t_c = (N / g_d(1, theta))^(1/d); None when d <= 1 (no transition)."""

    if not spec.has_transition:
        return None

    return (spec.n_particles / g_dunkl_at_unit_fugacity(spec.d, spec.theta)) ** (1.0 / spec.d)


def degeneracy_temperature(spec: GasSpec) -> float:
    """Reference temperature of a sweep: t_c, or N^(1/d) when the gas never condenses."""

    t_c = critical_temperature(spec)
    if t_c is None:
        return spec.n_particles ** (1.0 / spec.d)

    return t_c


def tc_saturation_ratio(spec: GasSpec) -> float | None:
    if not spec.has_transition:
        return None

    ratio = g_dunkl_at_unit_fugacity(spec.d, 0.0) / g_dunkl_at_unit_fugacity(spec.d, spec.theta)

    return ratio ** (1.0 / spec.d)


def tc_saturation_limit(d: float) -> float:
    """Large-theta limit of t_c(theta) / t_c(0)."""

    return 2.0 ** (1.0 - 1.0 / d)


def _small_z_log_guess(d: float, theta: float, target: float) -> float:
    """log z from inverting the leading small-z term of g_d(z, theta) = target."""

    p = 1.0 + 2.0 * theta
    if p < 2.0:
        return (math.log(target) + (d - 1.0) * math.log(p)) / p
    if p > 2.0:
        return 0.5 * (math.log(target) + (d - 1.0) * math.log(2.0))

    return 0.5 * (math.log(target) + (d - 2.0) * math.log(2.0))


def solve_log_fugacity(spec: GasSpec, t: float) -> float:
    """
    alpha = -ln z solving g_d(e^-alpha, theta) = N / t^d in the normal phase.
    Returns exactly 0.0 at t = t_c; raises PhaseError below t_c.

    The root is bracketed in ln(alpha), so a fugacity within a few ulps of 1
    still carries a full-precision alpha.
    """

    _check_temperature(t)
    d, theta = spec.d, spec.theta
    target = spec.n_particles / t**d
    slack = settings.UNIT_FUGACITY_SLACK

    if spec.has_transition:
        g_unit = g_dunkl_at_unit_fugacity(d, theta)
        if target > g_unit * (1.0 + slack):
            raise PhaseError(
                f"t={t} lies below t_c={critical_temperature(spec)}: the gas is condensed, "
                "use the condensed branch (z = 1)"
            )
        if target >= g_unit * (1.0 - slack):
            return 0.0

    def residual(log_alpha: float) -> float:
        return g_dunkl_log(d, math.exp(log_alpha), theta) / target - 1.0

    log_alpha_min = math.log(settings.LOG_FUGACITY_FLOOR)
    log_alpha_max = math.log(-math.log(settings.FUGACITY_FLOOR))
    alpha_guess = -_small_z_log_guess(d, theta, target)
    guess = math.log(alpha_guess) if alpha_guess > 0.0 else 0.0
    guess = min(max(guess, log_alpha_min), log_alpha_max)

    # residual decreases with alpha: positive means z is still too large.
    step = 1.0
    hi = min(guess + step, log_alpha_max)
    while residual(hi) > 0.0:
        if hi == log_alpha_max:
            raise NumericalError(
                f"fugacity for t={t} lies below the floor {settings.FUGACITY_FLOOR:.0e}"
            )
        step *= 2.0
        hi = min(hi + step, log_alpha_max)

    step = 1.0
    lo = max(guess - step, log_alpha_min)
    while residual(lo) < 0.0:
        if lo == log_alpha_min:
            raise NumericalError(
                f"fugacity for t={t} lies closer to 1 than -ln z = "
                f"{settings.LOG_FUGACITY_FLOOR:.0e} (d={d}, N/t^d={target:.6g})"
            )
        step *= 2.0
        lo = max(lo - step, log_alpha_min)

    log_alpha, result = optimize.brentq(
        residual,
        lo,
        hi,
        xtol=settings.FUGACITY_XTOL,
        maxiter=500,
        full_output=True,
        disp=False,
    )
    if not result.converged:
        logger.error("Fugacity root-find failed.", t=t, flag=result.flag)

        raise NumericalError(f"fugacity root-find did not converge at t={t}: {result.flag}")

    alpha = math.exp(log_alpha)
    miss = abs(residual(log_alpha))
    if miss > settings.FUGACITY_RESIDUAL:
        logger.error("Fugacity residual above tolerance.", t=t, alpha=alpha, residual=miss)

        raise NumericalError(
            f"fugacity -ln z={alpha:.6g} at t={t} leaves relative residual {miss:.3e}"
        )

    logger.debug("Fugacity solved.", t=t, alpha=alpha, iterations=result.iterations)

    return alpha


def fugacity_from_log(alpha: float) -> float:
    """z = e^-alpha; a normal-phase alpha never rounds to z = 1."""

    if alpha == 0.0:
        return 1.0

    return min(math.exp(-alpha), _ONE_BELOW)


def solve_fugacity(spec: GasSpec, t: float) -> float:
    """
    Invert g_d(z, theta) = N / t^d for the normal phase. Returns exactly 1.0 at
    t = t_c; raises PhaseError below t_c.
    """

    return fugacity_from_log(solve_log_fugacity(spec, t))


def excited_count(spec: GasSpec, t: float, z: float) -> float:
    _check_temperature(t)

    return t**spec.d * g_dunkl(spec.d, z, spec.theta)


def internal_energy(spec: GasSpec, t: float, z: float) -> float:
    _check_temperature(t)

    return spec.d * t ** (spec.d + 1.0) * g_dunkl(spec.d + 1.0, z, spec.theta)


def condensate_fraction(spec: GasSpec, t: float) -> float:
    if not t >= 0.0:
        raise DomainError(f"reduced temperature must be non-negative (got t={t})")

    t_c = critical_temperature(spec)
    if t_c is None or t >= t_c:
        return 0.0

    return min(1.0, max(0.0, 1.0 - (t / t_c) ** spec.d))


def _require_condensed(spec: GasSpec, t: float) -> float:
    _check_temperature(t)
    t_c = critical_temperature(spec)
    if t_c is None:
        raise PhaseError(f"no condensation for d={spec.d} <= 1 (no_transition)")
    if t > t_c * (1.0 + settings.UNIT_FUGACITY_SLACK):
        raise PhaseError(f"t={t} lies above t_c={t_c}: use the normal branch")

    return t_c


def heat_capacity_below(spec: GasSpec, t: float) -> float:
    """C_< / (N k_B) = d (d+1) [g_(d+1)(1) / g_d(1)] (t / t_c)^d."""

    t_c = _require_condensed(spec, t)
    d, theta = spec.d, spec.theta
    ratio = g_dunkl_at_unit_fugacity(d + 1.0, theta) / g_dunkl_at_unit_fugacity(d, theta)

    return d * (d + 1.0) * ratio * (t / t_c) ** d


def heat_capacity_peak(spec: GasSpec) -> float:
    """C_<(t_c), the condensed-branch value at the transition."""

    t_c = critical_temperature(spec)
    if t_c is None:
        raise PhaseError(f"no condensation for d={spec.d} <= 1 (no_transition)")

    return heat_capacity_below(spec, t_c)


def _second_term_limit(d: float, theta: float) -> float:
    """
    lim_{z -> 1-} d^2 g_d(z) / g_(d-1)(z) for d - 1 <= 1, where g_(d-1) diverges.

    Quadratic extrapolation to x = 0 in the variable x = 1 / g_(d-1)(z) over the
    offsets -ln z in settings.RICHARDSON_OFFSETS.
    """

    xs, fs = [], []
    for alpha in settings.RICHARDSON_OFFSETS:
        x = 1.0 / g_dunkl_log(d - 1.0, alpha, theta)
        xs.append(x)
        fs.append(d * d * g_dunkl_log(d, alpha, theta) * x)

    coefficients = np.polynomial.polynomial.polyfit(xs, fs, deg=len(xs) - 1)
    limit = float(coefficients[0])
    logger.debug(
        "Richardson limit of the C_> second term.",
        d=d,
        theta=theta,
        limit=limit,
        nearest=fs[-1],
    )

    return limit


def _heat_capacity_normal(d: float, alpha: float, theta: float) -> float:
    """C_> / (N k_B) at z = e^-alpha; alpha = 0 gives the t -> t_c+ limit."""

    if alpha == 0.0:
        first = d * (d + 1.0) * g_dunkl_at_unit_fugacity(d + 1.0, theta) / g_dunkl_at_unit_fugacity(
            d, theta
        )
        if d - 1.0 > 1.0:
            second = d * d * g_dunkl_at_unit_fugacity(d, theta) / g_dunkl_at_unit_fugacity(
                d - 1.0, theta
            )
        else:
            second = _second_term_limit(d, theta)

        return first - second

    g_d = g_dunkl_log(d, alpha, theta)

    return d * (d + 1.0) * g_dunkl_log(d + 1.0, alpha, theta) / g_d - d * d * g_d / g_dunkl_log(
        d - 1.0, alpha, theta
    )


def heat_capacity_above(spec: GasSpec, t: float) -> float:
    """
    C_> / (N k_B) = d (d+1) g_(d+1)(z) / g_d(z) - d^2 g_d(z) / g_(d-1)(z), with z from
    the fugacity solver. At t = t_c this is the t -> t_c+ limit.
    """

    alpha = solve_log_fugacity(spec, t)

    return _heat_capacity_normal(spec.d, alpha, spec.theta)


def heat_capacity(spec: GasSpec, t: float) -> float:
    t_c = critical_temperature(spec)
    if t_c is not None and t <= t_c:
        return heat_capacity_below(spec, t)

    return heat_capacity_above(spec, t)


def continuity_gap(spec: GasSpec) -> float:
    """|C_<(t_c) - C_>(t_c+)| / (N k_B)."""

    t_c = critical_temperature(spec)
    if t_c is None:
        raise PhaseError(f"no condensation for d={spec.d} <= 1 (no_transition)")

    return abs(heat_capacity_below(spec, t_c) - heat_capacity_above(spec, t_c))


def normalized_jump(theta: float) -> float:
    check_theta(theta)

    return (1.0 + theta + theta * theta) / ((1.0 + theta) * (1.0 + 2.0 * theta))


def heat_capacity_jump_d3(theta: float) -> float:
    """Jump of C / (N k_B) at t_c in three dimensions: 9 zeta(3)/zeta(2) f(theta)."""

    return 9.0 * zeta(3.0) / zeta(2.0) * normalized_jump(theta)


def jump_minimum(
    theta_min: float = 0.0, theta_max: float = 10.0, steps: int = 500
) -> tuple[float, float]:
    """Scan the normalized jump on a grid, then refine the best cell. Returns (theta*, f(theta*))."""

    thetas = np.linspace(theta_min, theta_max, steps)
    values = np.array([normalized_jump(theta) for theta in thetas])
    best = int(np.argmin(values))
    lower = thetas[max(best - 1, 0)]
    upper = thetas[min(best + 1, steps - 1)]

    result = optimize.minimize_scalar(
        normalized_jump, bounds=(lower, upper), method="bounded", options={"xatol": 1e-10}
    )
    if not result.success:
        return float(thetas[best]), float(values[best])

    return float(result.x), float(result.fun)


def heat_capacity_ratio_below(d: float, theta: float) -> float:
    """C_<(theta) / C_<(0) at equal t: (1 + (2^d - 1) / p^d) / 2^d."""

    p = check_theta(theta)
    two_d = 2.0**d

    return (1.0 + (two_d - 1.0) / p**d) / two_d


def cv_ratio_above_diagnostic(spec: GasSpec, t: float) -> CvRatioDiagnostic:
    """
    Direct C_>(theta, t) / C_>(0, t) next to the closed-form ratio evaluated at
    z = 1 and scaled by (t_c(theta) / t_c(0))^(1/d). No agreement is implied.
    """

    reference = spec.with_theta(0.0)
    t_c = critical_temperature(spec)
    t_c_reference = critical_temperature(reference)
    if t_c is None or t_c_reference is None:
        raise PhaseError(f"no condensation for d={spec.d} <= 1 (no_transition)")
    if not t > max(t_c, t_c_reference):
        raise PhaseError(
            f"t={t} must lie above both t_c(theta)={t_c} and t_c(0)={t_c_reference}"
        )

    numeric = heat_capacity_above(spec, t) / heat_capacity_above(reference, t)
    at_unit = _heat_capacity_normal(spec.d, 0.0, spec.theta) / _heat_capacity_normal(
        spec.d, 0.0, 0.0
    )
    formula = at_unit * (t_c / t_c_reference) ** (1.0 / spec.d)

    return CvRatioDiagnostic.build(
        t=t, t_over_tc=t / t_c, numeric_ratio=numeric, formula_value=formula
    )


def measure_classical_coefficient(spec: GasSpec, t_over_tc: float) -> float:
    """U / (N t) from the full pipeline at t = t_over_tc * t_reference."""

    if not t_over_tc >= settings.CLASSICAL_MIN_T_OVER_TC:
        raise DomainError(
            f"classical regime needs t / t_c >= {settings.CLASSICAL_MIN_T_OVER_TC:g} "
            f"(got {t_over_tc})"
        )

    t = t_over_tc * degeneracy_temperature(spec)
    z = solve_fugacity(spec, t)
    coefficient = internal_energy(spec, t, z) / (spec.n_particles * t)
    logger.info(
        "Classical coefficient measured.",
        d=spec.d,
        theta=spec.theta,
        t_over_tc=t_over_tc,
        z=z,
        coefficient=coefficient,
    )

    return coefficient


def classical_coefficients(spec: GasSpec) -> ClassicalCoefficients:
    """
    High-temperature U / (N k_B T) and C / (N k_B): d / (1 + 2 theta) below
    theta = 1/2, d / 2 above. At theta = 1/2 both are measured.
    """

    d, theta = spec.d, spec.theta
    if theta < 0.5:
        coefficient = d / (1.0 + 2.0 * theta)
    elif theta > 0.5:
        coefficient = d / 2.0
    else:
        t_over_tc = settings.CLASSICAL_THETA_HALF_T_OVER_TC
        measured = measure_classical_coefficient(spec, t_over_tc)
        capacity = heat_capacity_above(spec, t_over_tc * degeneracy_temperature(spec))

        return ClassicalCoefficients.build(
            d=d,
            theta=theta,
            u_coeff=measured,
            c_coeff=capacity,
            measured=True,
            reference_value=d,
        )

    return ClassicalCoefficients.build(d=d, theta=theta, u_coeff=coefficient, c_coeff=coefficient)


def validate_theta(theta: float) -> ThetaValidation:
    valid_lower = theta > -0.5
    valid_upper = theta <= 0.5
    if not valid_lower:
        classification = ThetaClass.INVALID_BELOW
        message = (
            f"theta={theta} <= -1/2: the generalized Bose function g_d(1, theta) and the "
            "odd-level occupations diverge, the grand partition function does not converge"
        )
    elif valid_upper:
        classification = ThetaClass.VALID
        message = (
            f"theta={theta} lies in (-1/2, 1/2]: convergent statistics and a classical limit "
            "U = d N k_B T / (1 + 2 theta) that stays trap-like"
        )
    else:
        classification = ThetaClass.CLASSICAL_ANOMALY
        message = (
            f"theta={theta} > 1/2: the z^2 terms dominate the classical limit, giving "
            "U = (d/2) N k_B T independent of theta, the homogeneous-gas result instead "
            "of the trapped one"
        )

    return ThetaValidation.build(
        theta=theta,
        valid_lower=valid_lower,
        valid_upper=valid_upper,
        classification=classification,
        message=message,
    )


def homogeneous_map(spec: GasSpec, hypervolume: float) -> GasSpec:
    """Trapped -> homogeneous substitution d -> d/2 with the energy unit 2 pi hbar^2 / (m V^(2/d))."""

    if spec.homogeneous:
        raise DomainError("spec already describes a homogeneous gas")
    if not spec.d >= 2.0:
        raise DomainError(
            f"homogeneous map needs a trapped dimension d >= 2 so that d/2 >= 1 (got d={spec.d})"
        )

    return GasSpec.build(
        d=spec.d / 2.0,
        theta=spec.theta,
        n_particles=spec.n_particles,
        energy_unit=HOMOGENEOUS_ENERGY_UNIT,
        hypervolume=hypervolume,
    )


def thermo_point(spec: GasSpec, t: float) -> ThermoPoint:
    _check_temperature(t)
    d, n = spec.d, spec.n_particles
    t_c = critical_temperature(spec)

    alpha = 0.0
    if t_c is None or t > t_c:
        alpha = solve_log_fugacity(spec, t)

    if alpha == 0.0:
        n_excited = min(n, t**d * g_dunkl_at_unit_fugacity(d, spec.theta))
        u = d * t ** (d + 1.0) * g_dunkl_at_unit_fugacity(d + 1.0, spec.theta)
        capacity = heat_capacity_below(spec, min(t, t_c))
        regime = Regime.CONDENSED
    else:
        n_excited = t**d * g_dunkl_log(d, alpha, spec.theta)
        u = d * t ** (d + 1.0) * g_dunkl_log(d + 1.0, alpha, spec.theta)
        capacity = _heat_capacity_normal(d, alpha, spec.theta)
        regime = Regime.NORMAL if t_c is not None else Regime.NO_TRANSITION

    return ThermoPoint.build(
        t=t,
        z=fugacity_from_log(alpha),
        n_particles=n,
        n_excited=n_excited,
        n0=max(0.0, n - n_excited),
        u=u,
        c_over_NkB=capacity,
        regime=regime,
    )


def _row(spec: GasSpec, t: float) -> ThermoPoint:
    try:
        return thermo_point(spec, t)
    except NumericalError as e:
        logger.exception("Sweep row failed.", t=t)

        raise NumericalError(f"sweep row at t={t}: {e}") from e


def sweep(spec: GasSpec, t_grid, workers: int | None = None) -> SweepTable:
    """ThermoPoints on an increasing t grid with t_c inserted, rows in grid order."""

    grid = np.asarray(t_grid, dtype=float)
    if grid.size == 0 or np.any(grid <= 0.0):
        raise DomainError("sweep grid must be non-empty with t > 0")
    if not lib.is_strictly_increasing(grid):
        raise DomainError("sweep grid must be strictly increasing")

    t_reference = degeneracy_temperature(spec)
    if spec.has_transition:
        grid = lib.insert_sorted(grid, t_reference)

    workers = workers or settings.SWEEP_WORKERS
    logger.info("Sweep started.", d=spec.d, theta=spec.theta, rows=len(grid), workers=workers)

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        points = list(executor.map(lambda t: _row(spec, float(t)), grid))

    logger.info("Sweep finished.", rows=len(points))

    return SweepTable.build(
        metadata=TableMetadata.build(
            kind="sweep",
            version=__version__,
            spec=spec,
            tolerances=_tolerances(),
        ),
        t_reference=t_reference,
        points=points,
    )


def _tolerances() -> dict[str, float]:
    return {
        "polylog": settings.POLYLOG_TOLERANCE,
        "fugacity_residual": settings.FUGACITY_RESIDUAL,
        "fugacity_xtol": settings.FUGACITY_XTOL,
        "unit_fugacity_slack": settings.UNIT_FUGACITY_SLACK,
    }
