"""Element, tolerance and spectral-form containers.

Every element of every model is a dense real coordinate vector; the meaning
of the coordinates is fixed by the owning backend (see ``jordantp.backends``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import DimensionMismatchError, ModelMismatchError

if TYPE_CHECKING:
    from .backends.base import Model


@dataclass(frozen=True)
class Tolerance:
    """Numerical tolerances used by every verifier.

    eig_cluster is relative (measured against the spectral diameter),
    cone_slack and check_tol are absolute.
    """

    eig_cluster: float = 1e-8
    cone_slack: float = 1e-9
    check_tol: float = 1e-9

    def __post_init__(self):
        for name in ("eig_cluster", "cone_slack", "check_tol"):
            val = getattr(self, name)
            if not (0.0 < val < 1e-3):
                raise ValueError(f"{name} must lie strictly in (0, 1e-3), got {val}")

    def replace(self, **kwargs) -> "Tolerance":
        merged = {
            "eig_cluster": self.eig_cluster,
            "cone_slack": self.cone_slack,
            "check_tol": self.check_tol,
        }
        merged.update(kwargs)
        return Tolerance(**merged)


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Element:
    """Coordinate vector in a model's ambient real space."""

    coords: np.ndarray
    model: "Model" = field(repr=False)

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        if coords.ndim != 1 or coords.shape[0] != self.model.ambient_dim:
            raise DimensionMismatchError(
                f"expected {self.model.ambient_dim} coordinates, got shape {coords.shape}"
            )
        if not np.all(np.isfinite(coords)):
            raise ValueError("element coordinates must be finite")
        coords = coords.copy()
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def _check_same_model(self, other: "Element") -> None:
        if self.model is not other.model and self.model.descriptor != other.model.descriptor:
            raise ModelMismatchError(
                f"elements belong to different models: {self.model.descriptor} vs {other.model.descriptor}"
            )

    def __add__(self, other: "Element") -> "Element":
        self._check_same_model(other)
        return Element(self.coords + other.coords, self.model)

    def __sub__(self, other: "Element") -> "Element":
        self._check_same_model(other)
        return Element(self.coords - other.coords, self.model)

    def __neg__(self) -> "Element":
        return Element(-self.coords, self.model)

    def __mul__(self, scalar: float) -> "Element":
        return Element(self.coords * float(scalar), self.model)

    __rmul__ = __mul__

    def to_json(self) -> list:
        return [float(x) for x in self.coords]


@dataclass(frozen=True)
class SpectralPair:
    eigenvalue: float
    atom: Element


@dataclass(frozen=True)
class SpectralForm:
    """Complete spectral frame: pairwise-orthogonal atoms summing to the order unit.

    Frames are always padded with zero eigenvalues, so the atoms resolve the
    order unit exactly and the pair count never exceeds the information
    capacity of the model.
    """

    pairs: tuple[SpectralPair, ...]
    complete: bool = True

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([p.eigenvalue for p in self.pairs])

    @property
    def atoms(self) -> list[Element]:
        return [p.atom for p in self.pairs]

    def reconstruct(self) -> Element:
        model = self.pairs[0].atom.model
        coords = np.zeros(model.ambient_dim)
        for p in self.pairs:
            coords += p.eigenvalue * p.atom.coords
        return Element(coords, model)

    def apply(self, func) -> Element:
        """Resum the frame with eigenvalues mapped through ``func``."""
        model = self.pairs[0].atom.model
        coords = np.zeros(model.ambient_dim)
        for p in self.pairs:
            try:
                value = float(func(p.eigenvalue))
            except (ArithmeticError, ValueError) as exc:
                raise ValueError(f"function failed at eigenvalue {p.eigenvalue}: {exc}") from exc
            if not np.isfinite(value):
                raise ValueError(f"function not finite at eigenvalue {p.eigenvalue}")
            coords += value * p.atom.coords
        return Element(coords, model)


def as_coords(values: Sequence[float] | np.ndarray) -> np.ndarray:
    return np.asarray(values, dtype=float)
