import json

import numpy as np
import pytest

from equichord import FourierCurveE2, Harmonic, build_e2_curve


@pytest.fixture(scope="session")
def flower_spec():
    """The k=4 single-harmonic curve used throughout: rho = 1 + 0.1 cos 4t."""
    return FourierCurveE2(c0=1.0, harmonics=(Harmonic(4, 0.1, 0.0),))


@pytest.fixture(scope="session")
def flower_curve(flower_spec):
    return build_e2_curve(flower_spec)


@pytest.fixture(scope="session")
def alpha4():
    """arctan(sqrt 5), the admissible angle for k = 4."""
    return float(np.arctan(np.sqrt(5.0)))


@pytest.fixture
def write_spec(tmp_path):
    def _write(data, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return _write
