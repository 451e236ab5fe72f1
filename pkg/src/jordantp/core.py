"""Model-independent element arithmetic, cone/order queries and norms.

Everything here is defined through the backend's spectral decomposition
(membership and norm through eigenvalues), so there is a single source of
truth per model.  All functions are pure.
"""

from __future__ import annotations

import json

import numpy as np

from .backends.base import Model
from .elements import DEFAULT_TOL, Element, Tolerance


def order_unit(model: Model) -> Element:
    """The distinguished order unit of the model."""
    return model.order_unit()


def cone_contains(model: Model, a: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Positivity test: true iff the least eigenvalue is >= -cone_slack."""
    eigs = model.eigenvalues(model.check_element(a), tol)
    return bool(eigs.min() >= -tol.cone_slack)


def order_norm(model: Model, a: Element, tol: Tolerance = DEFAULT_TOL) -> float:
    """Order unit norm: the largest eigenvalue magnitude."""
    eigs = model.eigenvalues(model.check_element(a), tol)
    return float(np.max(np.abs(eigs)))


def in_unit_interval(model: Model, a: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff all eigenvalues lie in [-cone_slack, 1 + cone_slack]."""
    eigs = model.eigenvalues(model.check_element(a), tol)
    return bool(eigs.min() >= -tol.cone_slack and eigs.max() <= 1.0 + tol.cone_slack)


def leq(model: Model, a: Element, b: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Order relation a <= b, i.e. b - a lies in the positive cone."""
    return cone_contains(model, b - a, tol)


def element_to_json(a: Element) -> str:
    return json.dumps(a.to_json())


def element_from_json(model: Model, text: str) -> Element:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("element JSON must be an array of doubles")
    return model.element(np.asarray(data, dtype=float))
