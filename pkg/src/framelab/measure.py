"""Finite weighted point sets standing in for a measure space.

A space is a list of pairwise-distinct points with strictly positive
weights; atomic spaces carry atom masses, quadrature spaces carry rule
weights.  All integrals in the package are weighted sums over these points,
so almost-everywhere statements become pointwise statements.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    EmptySpaceError,
    ScheduleError,
    ShapeMismatchError,
    UnsupportedSpaceError,
)


class SpaceKind(enum.Enum):
    ATOMIC = "atomic"
    QUADRATURE = "quadrature"


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.asarray(values, dtype=dtype).copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SampledMeasureSpace:
    """Finite model of a measure space: points, positive weights, metadata.

    ``extent`` records the geometry the points sample: the period of a
    periodic grid, the half-width L of a symmetric interval grid, or the
    point count of an abstract atomic space.  ``periodic`` marks uniform
    grids that wrap around (translation and transform operations need it).
    """

    points: np.ndarray
    weights: np.ndarray
    kind: SpaceKind
    extent: float
    periodic: bool = False

    def __post_init__(self):
        points = _frozen_array(self.points, float)
        weights = _frozen_array(self.weights, float)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        if points.ndim != 1 or weights.ndim != 1:
            raise ShapeMismatchError("points and weights must be 1-d arrays")
        if len(points) != len(weights):
            raise ShapeMismatchError(
                f"{len(points)} points but {len(weights)} weights"
            )
        if len(points) == 0:
            raise EmptySpaceError("a measure space needs at least one point")
        if not np.all(weights > 0.0):
            raise ValueError("all weights must be strictly positive")
        if len(np.unique(points)) != len(points):
            raise ValueError("points must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def total_measure(self) -> float:
        return float(np.sum(self.weights))

    @property
    def spacing(self) -> float:
        """Common gap of a uniform grid; raises for non-uniform spacing."""
        if len(self.points) == 1:
            return self.extent
        gaps = np.diff(np.sort(self.points))
        if not np.allclose(gaps, gaps[0], rtol=1e-12, atol=1e-14):
            raise UnsupportedSpaceError("grid spacing is not uniform")
        return float(gaps[0])

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind.value,
                "points": self.points.tolist(),
                "weights": self.weights.tolist(),
                "extent": self.extent,
                "periodic": self.periodic,
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "SampledMeasureSpace":
        data = json.loads(text)
        return SampledMeasureSpace(
            points=data["points"],
            weights=data["weights"],
            kind=SpaceKind(data["kind"]),
            extent=float(data["extent"]),
            periodic=bool(data.get("periodic", False)),
        )


def same_grid(a: SampledMeasureSpace, b: SampledMeasureSpace) -> bool:
    """True when two spaces share the identical point/weight arrays."""
    return (
        len(a) == len(b)
        and np.array_equal(a.points, b.points)
        and np.array_equal(a.weights, b.weights)
    )


# -- constructors -----------------------------------------------------------

def counting(n_or_points) -> SampledMeasureSpace:
    """Atomic space with unit mass per point (counting measure).

    Accepts a point count (points become 0..n-1) or an explicit point list.
    """
    if np.isscalar(n_or_points):
        points = np.arange(int(n_or_points), dtype=float)
    else:
        points = np.asarray(n_or_points, dtype=float)
    return SampledMeasureSpace(
        points=points,
        weights=np.ones(len(points)),
        kind=SpaceKind.ATOMIC,
        extent=float(len(points)),
    )


def atomic(points: Sequence[float], masses: Sequence[float]) -> SampledMeasureSpace:
    """Atomic space with explicit atom masses."""
    points = np.asarray(points, dtype=float)
    return SampledMeasureSpace(
        points=points,
        weights=np.asarray(masses, dtype=float),
        kind=SpaceKind.ATOMIC,
        extent=float(len(points)),
    )


def periodic_unit_grid(n: int) -> SampledMeasureSpace:
    """Midpoint rule on [0, 1): points j/n, weights 1/n, period 1."""
    n = int(n)
    return SampledMeasureSpace(
        points=np.arange(n) / n,
        weights=np.full(n, 1.0 / n),
        kind=SpaceKind.QUADRATURE,
        extent=1.0,
        periodic=True,
    )


def fourier_grid(n: int) -> SampledMeasureSpace:
    """Self-dual periodic grid: n points spaced 1/sqrt(n), period sqrt(n).

    The weighted forward transform with kernel exp(-2*pi*i*g*x) maps sample
    vectors on this grid unitarily onto the same grid, so transform and
    convolution identities hold to machine precision rather than up to a
    resolution mismatch between position and frequency variables.
    """
    n = int(n)
    step = 1.0 / math.sqrt(n)
    return SampledMeasureSpace(
        points=np.arange(n) * step,
        weights=np.full(n, step),
        kind=SpaceKind.QUADRATURE,
        extent=n * step,
        periodic=True,
    )


def symmetric_grid(n: int, half_width: float) -> SampledMeasureSpace:
    """Uniform grid of n points on [-L, L] including both endpoints."""
    n = int(n)
    if n < 2:
        raise ValueError("symmetric grid needs at least 2 points")
    L = float(half_width)
    return SampledMeasureSpace(
        points=np.linspace(-L, L, n),
        weights=np.full(n, 2.0 * L / (n - 1)),
        kind=SpaceKind.QUADRATURE,
        extent=L,
    )


# -- L2(X, mu) arithmetic ----------------------------------------------------

def _as_values(space: SampledMeasureSpace, xi) -> np.ndarray:
    if callable(xi):
        xi = np.asarray([xi(x) for x in space.points])
    values = np.asarray(xi, dtype=complex)
    if values.shape != (len(space),):
        raise ShapeMismatchError(
            f"expected {len(space)} values on X, got shape {values.shape}"
        )
    return values


def l2_inner(space: SampledMeasureSpace, xi, eta) -> complex:
    """Weighted inner product sum_j w_j xi_j conj(eta_j)."""
    x = _as_values(space, xi)
    y = _as_values(space, eta)
    return complex(np.sum(space.weights * x * np.conj(y)))


def l2_norm(space: SampledMeasureSpace, xi) -> float:
    return math.sqrt(max(l2_inner(space, xi, xi).real, 0.0))


def ess_sup(space: SampledMeasureSpace, xi) -> float:
    """Largest modulus over the (all positive-weight) points."""
    values = _as_values(space, xi)
    if len(values) == 0:
        raise EmptySpaceError("essential supremum of an empty space")
    return float(np.max(np.abs(values)))


def sample(space: SampledMeasureSpace, fn: Callable[[float], complex]) -> np.ndarray:
    """Evaluate a scalar function on the points of the space."""
    return np.asarray([fn(x) for x in space.points], dtype=complex)


# -- refinement families -----------------------------------------------------

@dataclass(frozen=True)
class RefinementFamily:
    """Deterministic generator of spaces along an (n, L) schedule.

    A desk-scale proxy for statements about unbounded point sets: sweep the
    schedule and watch how a quantity grows.
    """

    generator: Callable[[int, float], SampledMeasureSpace]
    schedule: tuple = field(default=())

    def __post_init__(self):
        schedule = tuple((int(n), float(L)) for n, L in self.schedule)
        object.__setattr__(self, "schedule", schedule)
        ns = [n for n, _ in schedule]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ScheduleError("schedule must be strictly increasing in n")

    def __len__(self) -> int:
        return len(self.schedule)


def refine(family: RefinementFamily, step: int) -> SampledMeasureSpace:
    """Generate the space at one schedule step; identical calls agree."""
    if not 0 <= step < len(family.schedule):
        raise ScheduleError(
            f"step {step} outside schedule of length {len(family.schedule)}"
        )
    n, L = family.schedule[step]
    return family.generator(n, L)


def unit_grid_family(ns: Sequence[int]) -> RefinementFamily:
    return RefinementFamily(
        generator=lambda n, L: periodic_unit_grid(n),
        schedule=tuple((n, 1.0) for n in ns),
    )


def counting_family(ns: Sequence[int]) -> RefinementFamily:
    return RefinementFamily(
        generator=lambda n, L: counting(n),
        schedule=tuple((n, float(n)) for n in ns),
    )


def symmetric_grid_family(schedule: Sequence[tuple]) -> RefinementFamily:
    return RefinementFamily(
        generator=lambda n, L: symmetric_grid(n, L),
        schedule=tuple(schedule),
    )
