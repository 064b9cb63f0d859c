from typing import Annotated

from pydantic import Field, field_validator

from dunkl_bose.models.base import DataModel

# z = exp(mu / t) with energies measured from the ground state.
Fugacity = Annotated[float, Field(gt=0.0, le=1.0)]
# t = k_B T / (hbar omega).
ReducedTemperature = Annotated[float, Field(gt=0.0)]

TRAPPED_ENERGY_UNIT = "hbar*omega"
HOMOGENEOUS_ENERGY_UNIT = "2*pi*hbar^2/(m*V_d^(2/d))"


class GasSpec(DataModel):
    """
    The physical problem in reduced units (hbar*omega = k_B = 1): dimension,
    Wigner parameter and semiclassical particle number.
    """

    d: float
    theta: float
    n_particles: float
    energy_unit: str = TRAPPED_ENERGY_UNIT
    hypervolume: float | None = None

    @field_validator("d")
    @classmethod
    def _check_dimension(cls, value: float) -> float:
        if not value >= 1.0:
            raise ValueError(f"dimension must satisfy d >= 1 (got d={value})")

        return value

    @field_validator("theta")
    @classmethod
    def _check_theta(cls, value: float) -> float:
        if not value > -0.5:
            raise ValueError(
                f"Wigner parameter must satisfy theta > -1/2 (got theta={value})"
            )

        return value

    @field_validator("n_particles")
    @classmethod
    def _check_particles(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError(f"particle number must satisfy N > 0 (got N={value})")

        return value

    @field_validator("hypervolume")
    @classmethod
    def _check_hypervolume(cls, value: float | None) -> float | None:
        if value is not None and not value > 0.0:
            raise ValueError(f"hypervolume must be positive (got {value})")

        return value

    @property
    def homogeneous(self) -> bool:
        return self.energy_unit == HOMOGENEOUS_ENERGY_UNIT

    @property
    def has_transition(self) -> bool:
        return self.d > 1.0

    def with_theta(self, theta: float) -> "GasSpec":
        return GasSpec.build(**{**self.model_dump(), "theta": float(theta)})
