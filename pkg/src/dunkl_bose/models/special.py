from pydantic import Field

from dunkl_bose.models.base import DataModel


class PolylogValue(DataModel):
    value: float
    abs_error_estimate: float = Field(ge=0.0)


class SpectrumTruncation(DataModel):
    n_max: int = Field(ge=1)
    tail_bound: float = Field(default=0.0, ge=0.0)


class SpectrumSum(DataModel):
    """A certified level sum: the partial sum up to `truncation.n_max` and a
    rigorous bound on everything dropped beyond it."""

    value: float
    truncation: SpectrumTruncation
