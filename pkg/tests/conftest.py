import numpy as np
import pytest

from jordantp import Tolerance, get_model

ALL_MODEL_SPECS = [
    ("classical", 4, None),
    ("spin", 3, None),
    ("sym", 4, None),
    ("herm", 3, None),
    ("lpq", 2, 3.0),
    ("lpq", 2, 2.0),
]

SYMMETRIC_MODEL_SPECS = [
    ("classical", 4, None),
    ("spin", 3, None),
    ("sym", 4, None),
    ("herm", 3, None),
    ("lpq", 2, 2.0),
]


@pytest.fixture
def tol():
    return Tolerance()


@pytest.fixture(params=ALL_MODEL_SPECS, ids=lambda s: f"{s[0]}:{s[1]}" + (f":{s[2]:g}" if s[2] else ""))
def any_model(request):
    kind, n, p = request.param
    return get_model(kind, n, p)


@pytest.fixture(params=SYMMETRIC_MODEL_SPECS, ids=lambda s: f"{s[0]}:{s[1]}" + (f":{s[2]:g}" if s[2] else ""))
def symmetric_model(request):
    kind, n, p = request.param
    return get_model(kind, n, p)


def random_projection(model, rank, rng):
    """Random rank-k projection element of a matrix model."""
    gauss = rng.normal(size=(model.n, model.n))
    if model.kind == "herm":
        gauss = gauss + 1j * rng.normal(size=(model.n, model.n))
    q, _ = np.linalg.qr(gauss)
    basis = q[:, :rank]
    return model.from_matrix(basis @ basis.conj().T)
