"""Discretized test-function space inside a sampled Hilbert space.

A model fixes an ambient coordinate space (raw samples on the grid of a
:class:`~framelab.measure.SampledMeasureSpace`), a Hermitian positive
definite Gram matrix defining the H inner product of raw samples, and a
distinguished K-dimensional subspace D spanned by an H-orthonormalized
basis.  Test functions are coefficient vectors over that basis; dual
elements act on test functions through a coefficient pairing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DegenerateBasisError,
    ShapeMismatchError,
    UnsupportedSpaceError,
)
from .measure import SampledMeasureSpace, SpaceKind

RANK_RTOL = 1e-10


# -- basis families ----------------------------------------------------------

@dataclass(frozen=True)
class Trigonometric:
    """Complex exponentials exp(2*pi*i*k*x/P) on a periodic grid of period P.

    Frequencies run over -d..d for max_degree d (K = 2d+1); when 2d equals
    the grid size n the range is -d..d-1 (K = n), because +d and -d alias to
    the same grid samples.  Exactly H-orthonormal on uniform periodic grids.
    """

    max_degree: int


@dataclass(frozen=True)
class GaussianBumps:
    """Gaussian columns exp(-(x-c)^2 / (2 width^2)) at the given centers."""

    centers: tuple
    width: float


@dataclass(frozen=True)
class RawSamples:
    """The standard coordinate basis of the sample space (K = N)."""


BasisFamily = Union[Trigonometric, GaussianBumps, RawSamples]


def _raw_columns(space: SampledMeasureSpace, family: BasisFamily) -> np.ndarray:
    n = len(space)
    if isinstance(family, RawSamples):
        return np.eye(n, dtype=complex)
    if isinstance(family, Trigonometric):
        if not space.periodic:
            raise UnsupportedSpaceError("trigonometric basis needs a periodic grid")
        d = int(family.max_degree)
        if 2 * d + 1 <= n:
            freqs = np.arange(-d, d + 1)
        elif 2 * d == n:
            freqs = np.arange(-d, d)
        else:
            raise DegenerateBasisError(
                f"max_degree {d} gives more than {n} distinct frequencies mod {n}"
            )
        period = n * space.spacing
        return np.exp(2j * np.pi * np.outer(space.points, freqs) / period)
    if isinstance(family, GaussianBumps):
        centers = np.asarray(family.centers, dtype=float)
        cols = np.exp(
            -((space.points[:, None] - centers[None, :]) ** 2)
            / (2.0 * float(family.width) ** 2)
        )
        return cols.astype(complex)
    raise TypeError(f"unknown basis family {family!r}")


# -- orthonormalization ------------------------------------------------------

def orthonormalize(columns: np.ndarray, gram: np.ndarray,
                   rank_rtol: float = RANK_RTOL) -> np.ndarray:
    """H-orthonormalize columns by pivoted modified Gram-Schmidt.

    Pivots on the column of largest residual H-norm and reorthogonalizes
    each selected column once against the accepted set before normalizing.
    A residual below ``rank_rtol`` times the largest original column norm
    means the columns are dependent; the error names the offending column.
    The output preserves the input column order.
    """
    work = np.array(columns, dtype=complex)
    n, k = work.shape
    diag_gram = np.allclose(gram, np.diag(np.diagonal(gram)), atol=0.0)
    weights = np.diagonal(gram).real

    def apply_gram(block):
        if diag_gram:
            return weights[:, None] * block if block.ndim == 2 else weights * block
        return gram @ block

    gwork = apply_gram(work)
    norms0 = np.sqrt(np.abs(np.einsum("ij,ij->j", np.conj(work), gwork).real))
    cutoff = rank_rtol * (norms0.max() if k else 1.0)
    basis = np.zeros_like(work)
    gbasis = np.zeros_like(work)
    remaining = np.ones(k, dtype=bool)
    accepted: list[int] = []
    for _ in range(k):
        res2 = np.einsum("ij,ij->j", np.conj(work), gwork).real
        res2[~remaining] = -1.0
        idx = int(np.argmax(res2))
        res_norm = math.sqrt(max(res2[idx], 0.0))
        if res_norm <= cutoff:
            raise DegenerateBasisError(
                f"basis column {idx} is linearly dependent on the others "
                f"(residual norm {res_norm:.3e})"
            )
        remaining[idx] = False
        q = work[:, idx]
        if accepted:  # one reorthogonalization pass for stability
            cols = np.array(accepted)
            q = q - basis[:, cols] @ (gbasis[:, cols].conj().T @ q)
        gq = apply_gram(q)
        norm = math.sqrt(max(np.real(np.conj(q) @ gq), 1e-300))
        q, gq = q / norm, gq / norm
        basis[:, idx] = q
        gbasis[:, idx] = gq
        accepted.append(idx)
        if np.any(remaining):
            coeffs = np.conj(gq) @ work[:, remaining]
            work[:, remaining] -= np.outer(q, coeffs)
            gwork[:, remaining] -= np.outer(gq, coeffs)
    return basis


# -- the model ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ModelSpace:
    """Sampled triple: coordinates for H plus an orthonormal basis of D."""

    space: SampledMeasureSpace
    h_gram: np.ndarray
    d_basis: np.ndarray
    on_basis: np.ndarray
    family: str = "custom"

    def __post_init__(self):
        gram = np.asarray(self.h_gram, dtype=complex)
        if gram.shape != (len(self.space), len(self.space)):
            raise ShapeMismatchError("h_gram must be N x N for N sample points")
        if not np.allclose(gram, gram.conj().T, atol=1e-12):
            raise ValueError("h_gram must be Hermitian")
        if np.min(np.linalg.eigvalsh(gram)) <= 0.0:
            raise ValueError("h_gram must be positive definite")
        on = np.asarray(self.on_basis, dtype=complex)
        if np.allclose(gram, np.diag(np.diagonal(gram)), atol=0.0):
            gon = np.diagonal(gram).real[:, None] * on
        else:
            gon = gram @ on
        defect = np.max(np.abs(on.conj().T @ gon - np.eye(on.shape[1])))
        if defect > 1e-12:
            raise ValueError(
                f"on_basis is not H-orthonormal (defect {defect:.3e})"
            )
        object.__setattr__(self, "h_gram", gram)
        object.__setattr__(self, "d_basis", np.asarray(self.d_basis, dtype=complex))
        object.__setattr__(self, "on_basis", on)

    @property
    def ambient_dim(self) -> int:
        return self.h_gram.shape[0]

    @property
    def dim(self) -> int:
        """Dimension K of the test-function subspace D."""
        return self.on_basis.shape[1]

    def summary(self) -> dict:
        """Report data: dimensions, family, conditioning of the raw basis."""
        chol = np.linalg.cholesky(self.h_gram)
        sigma = np.linalg.svd(chol.conj().T @ self.d_basis, compute_uv=False)
        condition = float(sigma[0] / sigma[-1]) if sigma[-1] > 0 else float("inf")
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "family": self.family,
            "d_basis_condition": condition,
        }


def make_model(space: SampledMeasureSpace, family: BasisFamily) -> ModelSpace:
    """Build a model with the L2(X, mu) inner product and the given basis."""
    gram = np.diag(space.weights).astype(complex)
    raw = _raw_columns(space, family)
    on = orthonormalize(raw, gram)
    return ModelSpace(
        space=space,
        h_gram=gram,
        d_basis=raw,
        on_basis=on,
        family=type(family).__name__,
    )


# -- elements ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TestFunction:
    """Element of D as coefficients over the orthonormal basis."""

    __test__ = False  # keep pytest from collecting the domain type

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if not np.all(np.isfinite(c)):
            raise ValueError("test-function coefficients must be finite")
        object.__setattr__(self, "coeffs", c)


@dataclass(frozen=True, eq=False)
class DualElement:
    """Conjugate-linear functional on D: <F, g> = sum_k action_k conj(g_k)."""

    action: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.action, dtype=complex)
        if not np.all(np.isfinite(a)):
            raise ValueError("dual-element action must be finite")
        object.__setattr__(self, "action", a)

    def pair(self, g: TestFunction) -> complex:
        return complex(np.sum(self.action * np.conj(g.coeffs)))


def _coeffs(f) -> np.ndarray:
    return f.coeffs if isinstance(f, TestFunction) else np.asarray(f, dtype=complex)


def h_inner(model: ModelSpace, f, g) -> complex:
    """Inner product sum_k f_k conj(g_k); valid because the basis is orthonormal."""
    cf, cg = _coeffs(f), _coeffs(g)
    if cf.shape != (model.dim,) or cg.shape != (model.dim,):
        raise ShapeMismatchError(
            f"coefficient vectors must have length {model.dim}"
        )
    return complex(np.sum(cf * np.conj(cg)))


def h_norm(model: ModelSpace, f) -> float:
    return math.sqrt(max(h_inner(model, f, f).real, 0.0))


def to_samples(model: ModelSpace, f) -> np.ndarray:
    """Raw sample values of a test function on the model grid."""
    return model.on_basis @ _coeffs(f)


def from_samples(model: ModelSpace, values) -> TestFunction:
    """H-orthogonal projection of a sample vector onto D, as coefficients."""
    v = np.asarray(values, dtype=complex)
    if v.shape != (model.ambient_dim,):
        raise ShapeMismatchError(f"expected {model.ambient_dim} sample values")
    return TestFunction(model.on_basis.conj().T @ (model.h_gram @ v))


def random_test_function(model: ModelSpace, rng: np.random.Generator,
                         normalize: bool = True) -> TestFunction:
    c = rng.standard_normal(model.dim) + 1j * rng.standard_normal(model.dim)
    if normalize:
        c = c / np.linalg.norm(c)
    return TestFunction(c)


# -- discrete transform on periodic grids ------------------------------------

def dual_grid(space: SampledMeasureSpace) -> SampledMeasureSpace:
    """Frequency grid of a periodic grid: n points spaced 1/(n*dx)."""
    if not space.periodic:
        raise UnsupportedSpaceError("dual grid is defined for periodic grids only")
    n = len(space)
    step = 1.0 / (n * space.spacing)
    return SampledMeasureSpace(
        points=np.arange(n) * step,
        weights=np.full(n, step),
        kind=SpaceKind.QUADRATURE,
        extent=n * step,
        periodic=True,
    )


def transform_matrix(space: SampledMeasureSpace, inverse: bool = False) -> np.ndarray:
    """Kernel matrix of the weighted transform between a grid and its dual.

    Forward rows: f_hat(g_u) = sum_j w_j f(x_j) exp(-2*pi*i*g_u*x_j); the
    inverse uses the dual grid's weights and the conjugate kernel.  The two
    compose to the identity and both are unitary between the weighted
    sample spaces.
    """
    freqs = dual_grid(space).points
    if inverse:
        dual_w = dual_grid(space).weights
        return np.exp(2j * np.pi * np.outer(space.points, freqs)) * dual_w[None, :]
    return np.exp(-2j * np.pi * np.outer(freqs, space.points)) * space.weights[None, :]


def _require_uniform_periodic(model: ModelSpace):
    if not model.space.periodic:
        raise UnsupportedSpaceError(
            "transform requires a model on a uniform periodic grid"
        )
    _ = model.space.spacing  # rejects non-uniform grids


def dft(model: ModelSpace, values) -> np.ndarray:
    """Weighted forward transform of a sample vector, on the dual grid."""
    _require_uniform_periodic(model)
    v = np.asarray(values, dtype=complex)
    if v.shape != (model.ambient_dim,):
        raise ShapeMismatchError(f"expected {model.ambient_dim} samples")
    return transform_matrix(model.space) @ v


def idft(model: ModelSpace, values) -> np.ndarray:
    """Inverse of :func:`dft`; dft(idft(x)) = x to machine precision."""
    _require_uniform_periodic(model)
    v = np.asarray(values, dtype=complex)
    if v.shape != (model.ambient_dim,):
        raise ShapeMismatchError(f"expected {model.ambient_dim} samples")
    return transform_matrix(model.space, inverse=True) @ v
