import pytest

from dunkl_bose.models import GasSpec


@pytest.fixture
def trapped_3d() -> GasSpec:
    return GasSpec.build(d=3.0, theta=0.0, n_particles=1e6)


@pytest.fixture
def trapped_2d() -> GasSpec:
    return GasSpec.build(d=2.0, theta=0.0, n_particles=1e6)


@pytest.fixture
def make_spec():
    def _make(d: float = 3.0, theta: float = 0.0, n_particles: float = 1e6) -> GasSpec:
        return GasSpec.build(d=d, theta=theta, n_particles=n_particles)

    return _make
