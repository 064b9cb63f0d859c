from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

ROOT_DIR = str(Path(__file__).parent.parent.parent)


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="DUNKL_",
        env_file=str(Path(ROOT_DIR) / ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    LOG_LEVEL: str = "WARNING"

    # Polylogarithm kernel
    POLYLOG_SERIES_RADIUS: float = 0.75  # |z| above this goes to quadrature.
    POLYLOG_SERIES_TAIL: float = 1e-17
    POLYLOG_LOG_SERIES_RADIUS: float = 0.5  # -ln z below this uses the expansion about z = 1.
    POLYLOG_LOG_SERIES_TERMS: int = 30
    POLYLOG_TOLERANCE: float = 1e-9  # Certified error estimates must stay below.
    QUAD_LIMIT: int = 200
    QUAD_EPSABS: float = 1e-14
    QUAD_EPSREL: float = 1e-13

    # Zeta / eta
    ZETA_DIRECT_TERMS: int = 50
    ZETA_CORRECTION_TERMS: int = 10
    ETA_ACCELERATION_TERMS: int = 40

    # Fugacity inversion
    FUGACITY_FLOOR: float = 1e-300
    LOG_FUGACITY_FLOOR: float = 1e-300  # Smallest -ln z resolved above z = 1.
    FUGACITY_XTOL: float = 1e-15  # Absolute tolerance on ln(-ln z).
    FUGACITY_RESIDUAL: float = 1e-10  # Relative residual of g_d(z, theta) = N / t^d.
    UNIT_FUGACITY_SLACK: float = 1e-12  # Relative slack when comparing N / t^d with g_d(1, theta).

    # Brute-force oracles
    PARTITION_ORACLE_TOLERANCE: float = 1e-13
    OCCUPATION_ORACLE_TOLERANCE: float = 1e-10

    # Exact spectrum
    SPECTRUM_TAIL_TOLERANCE: float = 1e-8
    SPECTRUM_DECAY_LENGTHS: float = 45.0

    # Critical region and classical regime
    RICHARDSON_OFFSETS: tuple[float, ...] = (1e-8, 1e-10, 1e-12)
    CLASSICAL_MIN_T_OVER_TC: float = 100.0
    CLASSICAL_THETA_HALF_T_OVER_TC: float = 1000.0

    # Sweeps and output
    SWEEP_WORKERS: int = 1
    FLOAT_SIGNIFICANT_DIGITS: int = 12
    DEFAULT_PARTICLES: float = 1e6
    FIG1_THETA_MIN: float = 0.0
    FIG1_THETA_MAX: float = 10.0
    FIG1_STEPS: int = 500
    FIG2_THETAS: tuple[float, ...] = (0.2, 0.0, -0.2)
    FIG2_T_MIN: float = 0.05
    FIG2_T_MAX: float = 2.5
    FIG2_STEPS: int = 400


settings = Settings()
