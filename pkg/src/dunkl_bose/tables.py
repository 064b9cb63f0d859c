import io
import json
import math
from abc import ABC, abstractmethod
from pathlib import Path

import numpy as np
import pandas as pd

from dunkl_bose import __version__, lib
from dunkl_bose.config import settings
from dunkl_bose.errors import DomainError
from dunkl_bose.logger_utils import get_logger
from dunkl_bose.models import GasSpec, SweepTable, TableMetadata, ThermoPoint
from dunkl_bose.thermo import (
    classical_coefficients,
    critical_temperature,
    heat_capacity,
    heat_capacity_jump_d3,
    heat_capacity_peak,
    jump_minimum,
    measure_classical_coefficient,
    normalized_jump,
    validate_theta,
)

logger = get_logger(__name__)

METADATA_PREFIX = "# "
# Written with the shortest round-trip repr: a normal-phase z may sit a few ulps below 1.
FULL_PRECISION_COLUMNS = ("z",)


class TableWriter(ABC):
    """
    Abstract class for all table writers.
    All writers render a frame plus its metadata into text with fixed float formatting.
    """

    @abstractmethod
    def render(self, frame: pd.DataFrame, metadata: TableMetadata) -> str:
        pass

    def write(self, frame: pd.DataFrame, metadata: TableMetadata, out: Path | None = None) -> str:
        text = self.render(frame, metadata)
        if out is not None:
            Path(out).write_text(text, encoding="utf-8", newline="\n")

            logger.info("Table written.", path=str(out), kind=metadata.kind, rows=len(frame))

        return text


def _metadata_json(metadata: TableMetadata, **dumps_kwargs) -> str:
    return json.dumps(metadata.model_dump(mode="json"), sort_keys=True, **dumps_kwargs)


class CsvTableWriter(TableWriter):
    """CSV with a `#`-prefixed JSON metadata line ahead of the header."""

    def render(self, frame: pd.DataFrame, metadata: TableMetadata) -> str:
        frame = frame.copy()
        for column in FULL_PRECISION_COLUMNS:
            if column in frame.columns:
                frame[column] = [repr(float(value)) for value in frame[column]]

        buffer = io.StringIO()
        buffer.write(METADATA_PREFIX + _metadata_json(metadata) + "\n")
        frame.to_csv(
            buffer,
            index=False,
            float_format=f"%.{settings.FLOAT_SIGNIFICANT_DIGITS}g",
            lineterminator="\n",
        )

        return buffer.getvalue()


class JsonTableWriter(TableWriter):
    def render(self, frame: pd.DataFrame, metadata: TableMetadata) -> str:
        rows = [
            {
                column: _json_value(value, exact=column in FULL_PRECISION_COLUMNS)
                for column, value in row.items()
            }
            for row in frame.to_dict(orient="records")
        ]
        document = {"metadata": metadata.model_dump(mode="json"), "rows": rows}

        return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _json_value(value, exact: bool = False):
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return None
        return float(value) if exact else lib.round_significant(float(value))
    if isinstance(value, np.integer):
        return int(value)

    return value


class TableWriterFactory:
    @staticmethod
    def create_writer(table_format: str) -> TableWriter:
        if table_format == "csv":
            return CsvTableWriter()
        elif table_format == "json":
            return JsonTableWriter()
        else:
            raise DomainError(f"Unsupported table format: {table_format}")


def read_csv_table(text: str) -> tuple[dict, pd.DataFrame]:
    """Split CSV text written by CsvTableWriter back into (metadata, frame)."""

    header, _, body = text.partition("\n")
    if not header.startswith(METADATA_PREFIX):
        raise DomainError("table has no metadata line")

    frame = pd.read_csv(io.StringIO(body), float_precision="round_trip")

    return json.loads(header[len(METADATA_PREFIX) :]), frame


def revalidate_sweep(frame: pd.DataFrame, n_particles: float) -> list[ThermoPoint]:
    """Rebuild ThermoPoints from sweep rows; raises DomainError on any violated invariant."""

    return [
        ThermoPoint.build(
            t=row.t,
            z=row.z,
            n_particles=n_particles,
            n_excited=row.n_excited_frac * n_particles,
            n0=row.n0_frac * n_particles,
            u=row.u,
            c_over_NkB=row.c_over_NkB,
            regime=row.regime,
        )
        for row in frame.itertuples(index=False)
    ]


def _metadata(kind: str, spec: GasSpec | None = None, **notes) -> TableMetadata:
    return TableMetadata.build(
        kind=kind,
        version=__version__,
        spec=spec,
        tolerances={"polylog": settings.POLYLOG_TOLERANCE},
        notes=notes,
    )


def sweep_frame(table: SweepTable) -> tuple[pd.DataFrame, TableMetadata]:
    return table.to_frame(), table.metadata


def fig1_frame(
    theta_min: float | None = None, theta_max: float | None = None, steps: int | None = None
) -> tuple[pd.DataFrame, TableMetadata]:
    """d = 3 jump and its normalized form on a theta grid, followed by reference rows."""

    theta_min = settings.FIG1_THETA_MIN if theta_min is None else theta_min
    theta_max = settings.FIG1_THETA_MAX if theta_max is None else theta_max
    steps = steps or settings.FIG1_STEPS
    if not theta_min > -0.5 or not theta_max > theta_min or steps < 2:
        raise DomainError(
            f"fig1 grid needs -1/2 < theta_min < theta_max and steps >= 2 "
            f"(got {theta_min}, {theta_max}, {steps})"
        )

    rows = [
        {
            "theta": theta,
            "delta_c": heat_capacity_jump_d3(theta),
            "normalized": normalized_jump(theta),
            "kind": "grid",
        }
        for theta in np.linspace(theta_min, theta_max, steps)
    ]

    jump_at_zero = heat_capacity_jump_d3(0.0)
    theta_star, f_star = jump_minimum(theta_min=max(theta_min, 0.0), theta_max=max(theta_max, 10.0))
    references = [
        (0.0, 1.0),
        (1.0 + math.sqrt(3.0), 2.0 * math.sqrt(3.0) - 3.0),
        (math.inf, 0.5),
    ]
    rows.extend(
        {"theta": theta, "delta_c": jump_at_zero * value, "normalized": value, "kind": "reference"}
        for theta, value in references
    )

    metadata = _metadata(
        "fig1", d=3, scan_minimum_theta=theta_star, scan_minimum_value=f_star
    )

    return pd.DataFrame(rows, columns=["theta", "delta_c", "normalized", "kind"]), metadata


def fig2_frame(
    thetas=None,
    t_over_tc=None,
    n_particles: float | None = None,
) -> tuple[pd.DataFrame, TableMetadata]:
    """d = 2 heat capacity against t / t_c, raw and normalized to the theta = 0 peak."""

    thetas = settings.FIG2_THETAS if thetas is None else tuple(thetas)
    if t_over_tc is None:
        t_over_tc = np.linspace(settings.FIG2_T_MIN, settings.FIG2_T_MAX, settings.FIG2_STEPS)
    grid = lib.insert_sorted(np.asarray(t_over_tc, dtype=float), 1.0)
    n_particles = n_particles or settings.DEFAULT_PARTICLES

    reference_peak = heat_capacity_peak(GasSpec.build(d=2.0, theta=0.0, n_particles=n_particles))
    peaks = {}
    rows = []
    for theta in thetas:
        spec = GasSpec.build(d=2.0, theta=float(theta), n_particles=n_particles)
        t_c = critical_temperature(spec)
        peaks[str(theta)] = heat_capacity_peak(spec)
        for ratio in grid:
            capacity = heat_capacity(spec, ratio * t_c)
            rows.append(
                {
                    "t_over_tc": ratio,
                    "theta": theta,
                    "c_over_NkB": capacity,
                    "c_normalized": capacity / reference_peak,
                }
            )

    metadata = _metadata(
        "fig2",
        d=2,
        n_particles=n_particles,
        reference_peak=reference_peak,
        peaks=peaks,
        normalization="C / N k_B divided by the computed theta = 0 peak 6 zeta(3) / zeta(2)",
    )

    return pd.DataFrame(rows, columns=["t_over_tc", "theta", "c_over_NkB", "c_normalized"]), metadata


def classical_frame(
    d: float, thetas, t_over_tc: float, n_particles: float | None = None
) -> tuple[pd.DataFrame, TableMetadata]:
    """Measured U / (N k_B T) at t = t_over_tc * t_c next to the analytic coefficient."""

    n_particles = n_particles or settings.DEFAULT_PARTICLES
    rows = []
    for theta in thetas:
        spec = GasSpec.build(d=d, theta=float(theta), n_particles=n_particles)
        analytic = classical_coefficients(spec)
        measured = measure_classical_coefficient(spec, t_over_tc)
        rows.append(
            {
                "theta": theta,
                "analytic": analytic.u_coeff,
                "measured": measured,
                "relative_difference": (measured - analytic.u_coeff) / analytic.u_coeff,
                "reference_value": (
                    math.nan if analytic.reference_value is None else analytic.reference_value
                ),
                "classification": validate_theta(theta).classification.value,
            }
        )

    columns = [
        "theta",
        "analytic",
        "measured",
        "relative_difference",
        "reference_value",
        "classification",
    ]

    return pd.DataFrame(rows, columns=columns), _metadata(
        "classical", d=d, n_particles=n_particles, t_over_tc=t_over_tc
    )


def comparison_metadata(spec: GasSpec) -> TableMetadata:
    return _metadata("exact-check", spec=spec)
