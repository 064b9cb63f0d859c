import pytest
from pydantic import ValidationError

from dunkl_bose.errors import DomainError
from dunkl_bose.models import (
    HOMOGENEOUS_ENERGY_UNIT,
    TRAPPED_ENERGY_UNIT,
    GasSpec,
    Regime,
    SpectrumTruncation,
    SweepTable,
    TableMetadata,
    ThermoPoint,
)


def _point(**overrides) -> ThermoPoint:
    fields = dict(
        t=10.0,
        z=1.0,
        n_particles=100.0,
        n_excited=40.0,
        n0=60.0,
        u=5.0,
        c_over_NkB=2.0,
        regime=Regime.CONDENSED,
    )
    fields.update(overrides)

    return ThermoPoint.build(**fields)


@pytest.mark.parametrize(
    "fields",
    [
        dict(d=0.5, theta=0.0, n_particles=1e3),
        dict(d=3.0, theta=-0.5, n_particles=1e3),
        dict(d=3.0, theta=0.0, n_particles=0.0),
        dict(d=3.0, theta=0.0, n_particles=1e3, hypervolume=-1.0),
    ],
)
def test_gas_spec_rejects_invalid_fields(fields):
    with pytest.raises(DomainError):
        GasSpec.build(**fields)


def test_gas_spec_defaults_and_copies(trapped_3d):
    assert trapped_3d.energy_unit == TRAPPED_ENERGY_UNIT
    assert not trapped_3d.homogeneous
    assert trapped_3d.has_transition

    other = trapped_3d.with_theta(0.7)
    assert other.theta == 0.7
    assert other.d == trapped_3d.d
    assert trapped_3d.theta == 0.0


def test_gas_spec_is_frozen(trapped_3d):
    with pytest.raises(ValidationError):
        trapped_3d.theta = 1.0


def test_homogeneous_flag():
    spec = GasSpec.build(d=1.5, theta=0.0, n_particles=1e3, energy_unit=HOMOGENEOUS_ENERGY_UNIT)

    assert spec.homogeneous


def test_thermo_point_fractions():
    point = _point()

    assert point.condensate_fraction == 0.6
    assert point.excited_fraction == 0.4


@pytest.mark.parametrize(
    "overrides",
    [
        dict(n0=10.0),
        dict(z=0.5),
        dict(regime=Regime.NORMAL, n_excited=100.0, n0=0.0),
        dict(z=1.2),
        dict(n0=-1.0, n_excited=101.0),
    ],
)
def test_thermo_point_invariants(overrides):
    with pytest.raises(DomainError):
        _point(**overrides)


def test_sweep_table_requires_ordered_rows():
    metadata = TableMetadata.build(kind="sweep", version="0.0.0")
    later = _point(t=20.0, n_excited=80.0, n0=20.0)

    table = SweepTable.build(metadata=metadata, t_reference=20.0, points=[_point(), later])
    assert list(table.to_frame()["t_over_tc"]) == [0.5, 1.0]

    with pytest.raises(DomainError):
        SweepTable.build(metadata=metadata, t_reference=20.0, points=[later, _point()])


def test_spectrum_truncation_bounds():
    with pytest.raises(DomainError):
        SpectrumTruncation.build(n_max=0)
    with pytest.raises(DomainError):
        SpectrumTruncation.build(n_max=10, tail_bound=-1.0)
