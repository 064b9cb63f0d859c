from dunkl_bose.models.base import DataModel
from dunkl_bose.models.gas import (
    HOMOGENEOUS_ENERGY_UNIT,
    TRAPPED_ENERGY_UNIT,
    Fugacity,
    GasSpec,
    ReducedTemperature,
)
from dunkl_bose.models.special import PolylogValue, SpectrumSum, SpectrumTruncation
from dunkl_bose.models.tables import SWEEP_COLUMNS, SweepTable, TableMetadata
from dunkl_bose.models.thermo import (
    ClassicalCoefficients,
    CvRatioDiagnostic,
    Regime,
    ThermoPoint,
    ThetaClass,
    ThetaValidation,
)

__all__ = [
    "DataModel",
    "GasSpec",
    "Fugacity",
    "ReducedTemperature",
    "TRAPPED_ENERGY_UNIT",
    "HOMOGENEOUS_ENERGY_UNIT",
    "PolylogValue",
    "SpectrumSum",
    "SpectrumTruncation",
    "SweepTable",
    "TableMetadata",
    "SWEEP_COLUMNS",
    "ClassicalCoefficients",
    "CvRatioDiagnostic",
    "Regime",
    "ThermoPoint",
    "ThetaClass",
    "ThetaValidation",
]
