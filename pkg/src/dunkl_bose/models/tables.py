from typing import Any

import pandas as pd
from pydantic import Field, model_validator

from dunkl_bose.models.base import DataModel
from dunkl_bose.models.gas import GasSpec, ReducedTemperature
from dunkl_bose.models.thermo import ThermoPoint

SWEEP_COLUMNS = (
    "t",
    "t_over_tc",
    "z",
    "n0_frac",
    "n_excited_frac",
    "u",
    "c_over_NkB",
    "regime",
)


class TableMetadata(DataModel):
    kind: str
    version: str
    spec: GasSpec | None = None
    tolerances: dict[str, float] = Field(default_factory=dict)
    notes: dict[str, Any] = Field(default_factory=dict)


class SweepTable(DataModel):
    """
    Ordered grid of ThermoPoints. `t_reference` is t_c when the gas condenses,
    otherwise the degeneracy temperature N^(1/d).
    """

    metadata: TableMetadata
    t_reference: ReducedTemperature
    points: list[ThermoPoint]

    @model_validator(mode="after")
    def _check_ordering(self) -> "SweepTable":
        ts = [point.t for point in self.points]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("sweep rows must be strictly ordered in t")

        return self

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "t": point.t,
                "t_over_tc": point.t / self.t_reference,
                "z": point.z,
                "n0_frac": point.condensate_fraction,
                "n_excited_frac": point.excited_fraction,
                "u": point.u,
                "c_over_NkB": point.c_over_NkB,
                "regime": point.regime.value,
            }
            for point in self.points
        ]

        return pd.DataFrame(rows, columns=list(SWEEP_COLUMNS))
