from __future__ import annotations

import numpy as np
import pytest

from bouncerate import QuadratureConfig


@pytest.fixture(scope="session")
def cfg() -> QuadratureConfig:
    return QuadratureConfig()


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260811)
