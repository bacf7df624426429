import json

import numpy as np
import pytest

from src.ingestion import make_rng
from src.measure import Ensemble
from src.numlin import TensorFactorization, maximally_entangled


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture
def zero_one_plus():
    """Equiprobable |0> and |+>."""
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    return Ensemble.from_pure([0.5, 0.5], [np.array([1.0, 0.0]), plus])


@pytest.fixture
def orthogonal_pair():
    return Ensemble.from_pure([0.5, 0.5], [np.array([1.0, 0.0]), np.array([0.0, 1.0])])


@pytest.fixture
def bell_state():
    v = maximally_entangled(2)
    return v @ v.conj().T, TensorFactorization((2, 2))


@pytest.fixture
def write_json(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return write
