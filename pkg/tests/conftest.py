import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bitquant import ChannelSpec, DensityModel


@pytest.fixture(scope="session")
def symmetric_spec():
    """N(-1, 1) vs N(1, 1): single threshold at 0, everything closed form."""
    return ChannelSpec(DensityModel.gaussian(-1.0, 1.0), DensityModel.gaussian(1.0, 1.0))


@pytest.fixture(scope="session")
def overlap_spec():
    """N(-1, 6) vs N(1, 5): the canonical heavily overlapping pair."""
    return ChannelSpec(DensityModel.gaussian(-1.0, 6.0), DensityModel.gaussian(1.0, 5.0))


@pytest.fixture(scope="session")
def identical_spec():
    return ChannelSpec(DensityModel.gaussian(0.0, 1.0), DensityModel.gaussian(0.0, 1.0))


@pytest.fixture(scope="session")
def disjoint_tabulated_spec():
    """Uniform on [0, 1] vs uniform on [2, 3]: perfectly separable."""
    phi0 = DensityModel.tabulated([[0.0, 1.0], [1.0, 1.0]])
    phi1 = DensityModel.tabulated([[2.0, 1.0], [3.0, 1.0]])
    return ChannelSpec(phi0, phi1, support=(0.0, 3.0))


def random_gaussian_pair(rng: np.random.Generator) -> ChannelSpec:
    mu0, mu1 = rng.uniform(-2.0, 2.0, size=2)
    sd0, sd1 = rng.uniform(0.5, 2.5, size=2)
    return ChannelSpec(DensityModel.gaussian(mu0, sd0), DensityModel.gaussian(mu1, sd1))


def gaussian_params(spec: ChannelSpec):
    c0 = spec.phi0.components[0]
    c1 = spec.phi1.components[0]
    return c0.mean, c0.std_dev, c1.mean, c1.std_dev
