import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `import oracles`

from nhqubit.bath import BathParams
from nhqubit.dynamics import QubitParams, Symmetry
from nhqubit.linalg2 import DensityMatrix

CAPTION_BATH = BathParams(j0=1.0, omega_c=1.0, mu=-0.5, beta=0.5)
CAPTION_PT = QubitParams(alpha=1.0, theta=0.86, xi=0.81, delta=0.56,
                         symmetry=Symmetry.PT)
CAPTION_APT = QubitParams(alpha=1.0, theta=0.86, xi=0.81, delta=0.56,
                          symmetry=Symmetry.ANTI_PT)


@pytest.fixture(scope="session")
def caption_bath():
    return CAPTION_BATH


@pytest.fixture(scope="session")
def caption_pt():
    return CAPTION_PT


@pytest.fixture(scope="session")
def caption_apt():
    return CAPTION_APT


def random_matrix(rng, scale=1.0):
    return scale * (rng.standard_normal((2, 2))
                    + 1j * rng.standard_normal((2, 2)))


def random_state(rng):
    a = random_matrix(rng)
    m = a @ a.conj().T + 1e-12 * np.eye(2)
    m /= np.trace(m).real
    return DensityMatrix.from_matrix(m)
