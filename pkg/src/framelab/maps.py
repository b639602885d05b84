"""Weakly measurable maps into the dual space, as evaluation tables.

A map assigns to each point x_j of a sampled measure space a functional on
the test-function space D; the whole map is stored as the J x K table
``table[j, k] = <e_k, omega_{x_j}>`` of analysis values of the orthonormal
basis.  Analysis of f with coefficients c is then ``table @ c``.  All frame
diagnostics reduce to spectral data of the weighted table.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    GridMismatchError,
    InconsistencyError,
    NotAFrameError,
    PreconditionError,
    ShapeMismatchError,
    UnsupportedSpaceError,
)
from .measure import SampledMeasureSpace, counting, same_grid
from .model import (
    DualElement,
    ModelSpace,
    TestFunction,
    from_samples,
    transform_matrix,
)

EIG_TOL = 1e-8
RANK_RTOL = 1e-10


class Classification(enum.Enum):
    """Strength classes of a map, weakest to strongest.

    At finite scale every table is a bounded Bessel map, so NOT_BESSEL is
    never produced by :func:`diagnose`; it exists for sweep verdicts and
    report vocabularies.  The degenerate zero map reports as BESSEL.
    """

    NOT_BESSEL = "not_bessel"
    BESSEL = "bessel"
    BOUNDED_BESSEL = "bounded_bessel"
    FRAME = "frame"
    TIGHT = "tight"
    PARSEVAL = "parseval"
    RIESZ_BASIS = "riesz_basis"
    GELFAND_BASIS = "gelfand_basis"


FRAME_CLASSES = frozenset(
    {
        Classification.FRAME,
        Classification.TIGHT,
        Classification.PARSEVAL,
        Classification.RIESZ_BASIS,
        Classification.GELFAND_BASIS,
    }
)


@dataclass(frozen=True, eq=False)
class DistributionMap:
    """Evaluation table of a map from the point set into the dual of D."""

    table: np.ndarray
    space: SampledMeasureSpace
    model: ModelSpace
    note: str = ""

    def __post_init__(self):
        table = np.asarray(self.table, dtype=complex)
        object.__setattr__(self, "table", table)
        if table.shape != (len(self.space), self.model.dim):
            raise ShapeMismatchError(
                f"table shape {table.shape} does not match "
                f"{len(self.space)} points x {self.model.dim} basis elements"
            )
        if not np.all(np.isfinite(table)):
            raise ValueError("evaluation table must have finite entries")

    @property
    def n_points(self) -> int:
        return self.table.shape[0]

    @property
    def dim(self) -> int:
        return self.table.shape[1]

    def analyze(self, f) -> np.ndarray:
        """Analysis values <f, omega_{x_j}> for all j."""
        c = f.coeffs if isinstance(f, TestFunction) else np.asarray(f, dtype=complex)
        return self.table @ c

    def synthesize(self, xi) -> DualElement:
        """Weighted synthesis of a coefficient function on X into the dual."""
        xi = np.asarray(xi, dtype=complex)
        if xi.shape != (self.n_points,):
            raise ShapeMismatchError(f"expected {self.n_points} coefficients on X")
        return DualElement(self.table.conj().T @ (self.space.weights * xi))

    def vectors(self) -> np.ndarray:
        """Rows of H coefficients: row j represents omega_{x_j} as an element of H."""
        return np.conj(self.table)

    def frame_matrix(self) -> np.ndarray:
        """K x K frame operator on D coefficients."""
        return self.table.conj().T @ (self.space.weights[:, None] * self.table)


# -- builtin families ---------------------------------------------------------

def _check_same_grid(model: ModelSpace, space: SampledMeasureSpace):
    if not same_grid(model.space, space):
        raise GridMismatchError("model and space are sampled on different grids")


def delta_frame(model: ModelSpace, space: SampledMeasureSpace) -> DistributionMap:
    """Point evaluations: analysis of f returns its sample values f(x_j)."""
    _check_same_grid(model, space)
    return DistributionMap(table=model.on_basis.copy(), space=space, model=model)


def exponential_frame(model: ModelSpace, space: SampledMeasureSpace) -> DistributionMap:
    """Frequency functionals: analysis of f returns its transform samples.

    Row j acts as f -> f_hat(g_j) where g_j is the j-th dual-grid frequency
    and the transform is the weighted forward kernel exp(-2*pi*i*g*x).  On a
    self-dual grid the frequencies coincide with the grid points themselves.
    """
    _check_same_grid(model, space)
    if not space.periodic:
        raise UnsupportedSpaceError("exponential frame needs a uniform periodic grid")
    return DistributionMap(
        table=transform_matrix(space) @ model.on_basis, space=space, model=model
    )


def weighted_delta_frame(model: ModelSpace, space: SampledMeasureSpace,
                         weight_fn) -> DistributionMap:
    """Point evaluations scaled by a function: analysis of f is wf(x_j) f(x_j)."""
    _check_same_grid(model, space)
    if callable(weight_fn):
        values = np.asarray([weight_fn(x) for x in space.points], dtype=complex)
    else:
        values = np.asarray(weight_fn, dtype=complex)
        if values.shape != (len(space),):
            raise ShapeMismatchError("weight values must match the point count")
    return DistributionMap(
        table=values[:, None] * model.on_basis, space=space, model=model
    )


def translated_window_frame(model: ModelSpace, space: SampledMeasureSpace,
                            window, support_tol: float = 1e-12) -> DistributionMap:
    """Circular translates of a window: row j pairs f against the j-shifted window.

    The grid must be uniformly spaced; translation acts on sample indices
    with wrap-around.  A window whose support spans at least half the grid
    gets a warning note (proper-support checks are then expected to fail).
    """
    _check_same_grid(model, space)
    g = np.asarray(window, dtype=complex)
    n = len(space)
    if g.shape != (n,):
        raise ShapeMismatchError("window must be sampled on the full grid")
    _ = space.spacing  # rejects non-uniform grids
    support = int(np.sum(np.abs(g) > support_tol))
    note = ""
    if support * 2 > n:
        note = (
            f"window support covers {support}/{n} points; "
            "proper-support (pseudo-orthogonality) checks may fail"
        )
    # table[j, k] = sum_l w_l e_k(x_l) conj(g_{(l - j) mod n})
    shifts = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    translates = g[shifts]  # row j = window shifted by j
    table = np.conj(translates) * space.weights[None, :] @ model.on_basis
    return DistributionMap(table=table, space=space, model=model, note=note)


def discrete_sequence_map(model: ModelSpace, vectors: Sequence,
                          space: SampledMeasureSpace | None = None) -> DistributionMap:
    """Bridge from a finite vector family in H to a map on counting measure."""
    vecs = np.asarray(list(vectors), dtype=complex)
    if vecs.ndim != 2 or vecs.shape[1] != model.dim:
        raise ShapeMismatchError(
            f"need vectors of length {model.dim}, got array of shape {vecs.shape}"
        )
    if space is None:
        space = counting(len(vecs))
    if len(space) != len(vecs):
        raise ShapeMismatchError("space size must match the number of vectors")
    if not np.allclose(space.weights, 1.0):
        raise PreconditionError("discrete sequences live on counting measure")
    # <e_k, phi_j> = conj(<phi_j, e_k>) = conj(phi_j[k])
    return DistributionMap(table=np.conj(vecs), space=space, model=model)


# -- diagnostics --------------------------------------------------------------

@dataclass(frozen=True)
class FrameDiagnostics:
    """Two-sided bounds and classification of a map.

    ``lower`` and ``upper`` are the extreme eigenvalues of the frame matrix,
    i.e. the best constants in  A ||f||^2 <= sum_j w_j |<f, omega_j>|^2
    <= B ||f||^2  over D.  Totality and mu-independence are rank decisions
    on the weighted table at relative tolerance ``rank_tol``.
    """

    lower: float
    upper: float
    synthesis_sigma_min: float
    synthesis_sigma_max: float
    mu_independent: bool
    total: bool
    classification: Classification
    tolerance: float
    rank_tol: float
    n_points: int
    dim: int
    note: str = ""

    @property
    def condition_number(self) -> float:
        if self.synthesis_sigma_min <= 0.0:
            return float("inf")
        return self.synthesis_sigma_max / self.synthesis_sigma_min

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "synthesis_sigma_min": self.synthesis_sigma_min,
            "synthesis_sigma_max": self.synthesis_sigma_max,
            "mu_independent": self.mu_independent,
            "total": self.total,
            "classification": self.classification.value,
            "tolerance": self.tolerance,
            "rank_tol": self.rank_tol,
            "n_points": self.n_points,
            "dim": self.dim,
            "note": self.note,
        }


def diagnose(omega: DistributionMap, tol: float = EIG_TOL,
             rank_tol: float = RANK_RTOL) -> FrameDiagnostics:
    """Compute frame bounds, rank properties and the strongest classification.

    The weighted table sqrt(w) * table carries everything: its squared
    extreme singular values over D give the bounds, its column rank decides
    totality, its row rank decides mu-independence (the weighted synthesis
    has trivial kernel iff the table has full row rank, which already fails
    whenever J > K: an overcomplete sampled family is never mu-independent).
    """
    weighted = np.sqrt(omega.space.weights)[:, None] * omega.table
    j, k = weighted.shape
    sigma = np.linalg.svd(weighted, compute_uv=False)
    sigma_max = float(sigma[0]) if len(sigma) else 0.0
    sigma_min = float(sigma[-1]) if len(sigma) else 0.0

    gram = omega.frame_matrix()
    eigs = np.linalg.eigvalsh(gram)
    upper = float(max(eigs[-1], 0.0))
    lower = float(max(eigs[0], 0.0)) if j >= k else 0.0

    total = j >= k and sigma_min > rank_tol * sigma_max
    mu_independent = j <= k and sigma_min > rank_tol * sigma_max
    if sigma_max == 0.0:
        total = False
        mu_independent = False

    if upper <= tol:
        cls = Classification.BESSEL  # degenerate zero map
    elif not total:
        cls = Classification.BOUNDED_BESSEL
    else:
        parseval = max(abs(lower - 1.0), abs(upper - 1.0)) <= tol
        tight = abs(upper - lower) <= tol * upper
        if mu_independent and parseval:
            cls = Classification.GELFAND_BASIS
        elif mu_independent:
            cls = Classification.RIESZ_BASIS
        elif parseval:
            cls = Classification.PARSEVAL
        elif tight:
            cls = Classification.TIGHT
        else:
            cls = Classification.FRAME

    return FrameDiagnostics(
        lower=lower,
        upper=upper,
        synthesis_sigma_min=sigma_min,
        synthesis_sigma_max=sigma_max,
        mu_independent=mu_independent,
        total=total,
        classification=cls,
        tolerance=tol,
        rank_tol=rank_tol,
        n_points=j,
        dim=k,
        note=omega.note,
    )


def canonical_dual(omega: DistributionMap, tol: float = EIG_TOL) -> DistributionMap:
    """Dual map theta with table = table(omega) @ S^{-1}.

    Satisfies the reconstruction pairing <f, g> = sum_j w_j <f, theta_j>
    <omega_j, g> and has frame bounds (1/B, 1/A).  Requires a frame.
    """
    diag = diagnose(omega, tol=tol)
    if diag.classification not in FRAME_CLASSES:
        raise NotAFrameError(
            f"canonical dual needs a frame, got {diag.classification.value} "
            f"with bounds ({diag.lower:.3e}, {diag.upper:.3e})"
        )
    gram = omega.frame_matrix()
    dual_table = np.linalg.solve(gram.T, omega.table.T).T
    return DistributionMap(table=dual_table, space=omega.space, model=omega.model)


@dataclass(frozen=True)
class TransitionReport:
    """Change-of-frame operator from a Gel'fand basis to a target map."""

    matrix: np.ndarray
    sigma_min: float
    sigma_max: float
    invertible: bool
    classification: Classification

    @property
    def condition_number(self) -> float:
        return self.sigma_max / self.sigma_min if self.sigma_min > 0 else float("inf")


def riesz_transition(omega: DistributionMap, zeta: DistributionMap,
                     tol: float = EIG_TOL, rank_tol: float = RANK_RTOL) -> TransitionReport:
    """Operator W sending sum_j w_j xi(j) zeta_j to sum_j w_j xi(j) omega_j.

    On coefficients W = E_omega^H diag(w) E_zeta.  Invertibility of W is
    equivalent to the target being a Riesz basis; the report is checked
    against :func:`diagnose` and an inconsistency raises.
    """
    zeta_diag = diagnose(zeta, tol=tol, rank_tol=rank_tol)
    if zeta_diag.classification is not Classification.GELFAND_BASIS:
        raise PreconditionError(
            f"reference map must be a Gel'fand basis, got "
            f"{zeta_diag.classification.value}"
        )
    if not same_grid(omega.space, zeta.space) or omega.dim != zeta.dim:
        raise GridMismatchError("transition needs maps on a shared space and model")
    w = omega.space.weights
    matrix = omega.table.conj().T @ (w[:, None] * zeta.table)
    sigma = np.linalg.svd(matrix, compute_uv=False)
    sigma_min, sigma_max = float(sigma[-1]), float(sigma[0])
    invertible = sigma_min > rank_tol * sigma_max and sigma_max > 0.0
    omega_cls = diagnose(omega, tol=tol, rank_tol=rank_tol).classification
    is_riesz = omega_cls in (Classification.RIESZ_BASIS, Classification.GELFAND_BASIS)
    if invertible != is_riesz:
        raise InconsistencyError(
            "transition operator invertibility disagrees with diagnose "
            f"(invertible={invertible}, classification={omega_cls.value})"
        )
    return TransitionReport(
        matrix=matrix,
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        invertible=invertible,
        classification=omega_cls,
    )


# -- proper-support orthogonality checks --------------------------------------

@dataclass(frozen=True)
class SupportRecord:
    """Analysis-support facts for one witness function."""

    index: int
    support_size: int
    support_measure: float
    sup_on_support: float
    max_off_support: float
    strict_subset: bool
    bound_violation: tuple | None = None  # (point index, value, allowed)

    @property
    def passed(self) -> bool:
        return self.strict_subset and self.bound_violation is None


@dataclass(frozen=True)
class OrthogonalityReport:
    """Witness-family verdict for pseudo/hyper orthogonality."""

    passed: bool
    total: bool
    records: tuple
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "total": self.total,
            "reason": self.reason,
            "records": [
                {
                    "index": r.index,
                    "support_size": r.support_size,
                    "support_measure": r.support_measure,
                    "sup_on_support": r.sup_on_support,
                    "max_off_support": r.max_off_support,
                    "strict_subset": r.strict_subset,
                    "bound_violation": r.bound_violation,
                    "passed": r.passed,
                }
                for r in self.records
            ],
        }


def _family_total(model: ModelSpace, family: Sequence[TestFunction],
                  rank_tol: float) -> bool:
    if not family:
        return False
    coeffs = np.asarray([f.coeffs for f in family])
    sigma = np.linalg.svd(coeffs, compute_uv=False)
    rank = int(np.sum(sigma > rank_tol * sigma[0])) if sigma[0] > 0 else 0
    return rank == model.dim


def analysis_support(omega: DistributionMap, f: TestFunction,
                     support_tol: float) -> np.ndarray:
    """Indices where the analysis of f exceeds the support tolerance."""
    return np.flatnonzero(np.abs(omega.analyze(f)) > support_tol)


def _support_record(omega: DistributionMap, f: TestFunction, index: int,
                    support_tol: float, alpha: np.ndarray | None,
                    bound_slack: float,
                    max_support_fraction: float | None) -> SupportRecord:
    values = np.abs(omega.analyze(f))
    on = values > support_tol
    support_measure = float(np.sum(omega.space.weights[on]))
    if max_support_fraction is None:
        strict = int(np.sum(on)) < omega.n_points
    else:
        strict = support_measure <= max_support_fraction * omega.space.total_measure
    violation = None
    if alpha is not None and np.any(on):
        excess = values[on] - alpha[on]
        worst = int(np.argmax(excess))
        if excess[worst] > bound_slack:
            j = int(np.flatnonzero(on)[worst])
            violation = (j, float(values[j]), float(alpha[j]))
    return SupportRecord(
        index=index,
        support_size=int(np.sum(on)),
        support_measure=support_measure,
        sup_on_support=float(values[on].max()) if np.any(on) else 0.0,
        max_off_support=float(values[~on].max()) if np.any(~on) else 0.0,
        strict_subset=bool(strict),
        bound_violation=violation,
    )


def check_pseudo_orthogonal(omega: DistributionMap, family: Sequence[TestFunction],
                            support_tol: float = 1e-9,
                            rank_tol: float = RANK_RTOL,
                            max_support_fraction: float | None = None) -> OrthogonalityReport:
    """Certify a witness family for proper-support orthogonality.

    Each witness must have analysis support on a strict subset of the points
    (the finite shadow of a bounded support set), and the family must be
    total in D.  This certifies a supplied witness; it does not search for
    one.
    """
    if not family:
        return OrthogonalityReport(
            passed=False, total=False, records=(), reason="empty witness family"
        )
    records = tuple(
        _support_record(omega, f, i, support_tol, None, 0.0, max_support_fraction)
        for i, f in enumerate(family)
    )
    total = _family_total(omega.model, family, rank_tol)
    passed = total and all(r.passed for r in records)
    reason = "" if passed else (
        "witness family is not total" if not total else "support is not proper"
    )
    return OrthogonalityReport(passed=passed, total=total, records=records,
                               reason=reason)


def check_hyper_orthogonal(omega: DistributionMap, alpha,
                           family_builder: Callable[[np.ndarray], Sequence[TestFunction]],
                           support_tol: float = 1e-9,
                           rank_tol: float = RANK_RTOL,
                           bound_slack: float = 1e-10,
                           max_support_fraction: float | None = None) -> OrthogonalityReport:
    """Certify a dominated witness family built for a positive envelope alpha.

    The builder receives alpha sampled on the points and must return test
    functions whose analysis values stay below alpha on their support and
    vanish (below ``support_tol``) elsewhere, with the family total in D.
    """
    if callable(alpha):
        alpha_values = np.asarray([alpha(x) for x in omega.space.points], dtype=float)
    else:
        alpha_values = np.asarray(alpha, dtype=float)
    if alpha_values.shape != (omega.n_points,):
        raise ShapeMismatchError("alpha must be sampled on the point set")
    if np.any(alpha_values <= 0.0):
        raise PreconditionError("alpha must be strictly positive on all points")
    family = list(family_builder(alpha_values))
    if not family:
        return OrthogonalityReport(
            passed=False, total=False, records=(),
            reason="builder returned an empty witness family",
        )
    records = tuple(
        _support_record(omega, f, i, support_tol, alpha_values, bound_slack,
                        max_support_fraction)
        for i, f in enumerate(family)
    )
    total = _family_total(omega.model, family, rank_tol)
    passed = total and all(r.passed for r in records)
    if passed:
        reason = ""
    elif not total:
        reason = "witness family is not total"
    elif any(r.bound_violation for r in records):
        reason = "envelope bound violated"
    else:
        reason = "support is not proper"
    return OrthogonalityReport(passed=passed, total=total, records=records,
                               reason=reason)


# -- builtin witness families --------------------------------------------------

def bump_family(model: ModelSpace, heights=None,
                half_width: int = 0) -> list[TestFunction]:
    """Indicator bumps around every grid point, optionally scaled per center.

    With ``half_width`` 0 each witness is a single-point spike; wider bumps
    include the neighbouring points (clipped at the grid edges).  Heights
    default to 1.  Exact (analysis supported only on the bump) when D spans
    the whole sample space.
    """
    n = model.ambient_dim
    if heights is None:
        heights = np.ones(n)
    heights = np.asarray(heights, dtype=float)
    family = []
    for c in range(n):
        lo, hi = max(0, c - half_width), min(n, c + half_width + 1)
        values = np.zeros(n, dtype=complex)
        values[lo:hi] = heights[c]
        family.append(from_samples(model, values))
    return family


def scaled_bump_family(model: ModelSpace, alpha_values,
                       half_width: int = 0) -> list[TestFunction]:
    """Bumps dominated by an envelope: height = min of alpha over the bump."""
    alpha_values = np.asarray(alpha_values, dtype=float)
    n = model.ambient_dim
    heights = np.array([
        alpha_values[max(0, c - half_width):min(n, c + half_width + 1)].min()
        for c in range(n)
    ])
    return bump_family(model, heights=heights, half_width=half_width)


def band_limited_family(model: ModelSpace, space: SampledMeasureSpace,
                        alpha_values=None) -> list[TestFunction]:
    """Witnesses whose transform is a single frequency spike, per dual point.

    Suited to the exponential frame: the analysis of each witness is an
    indicator at one frequency.  With an envelope given, spikes are scaled
    to its value at the matching point.
    """
    inverse = transform_matrix(space, inverse=True)
    n = len(space)
    scale = np.ones(n) if alpha_values is None else np.asarray(alpha_values, float)
    return [
        from_samples(model, inverse[:, u] * scale[u]) for u in range(n)
    ]


__all__ = [
    "Classification",
    "FRAME_CLASSES",
    "DistributionMap",
    "FrameDiagnostics",
    "TransitionReport",
    "SupportRecord",
    "OrthogonalityReport",
    "delta_frame",
    "exponential_frame",
    "weighted_delta_frame",
    "translated_window_frame",
    "discrete_sequence_map",
    "diagnose",
    "canonical_dual",
    "riesz_transition",
    "analysis_support",
    "check_pseudo_orthogonal",
    "check_hyper_orthogonal",
    "bump_family",
    "scaled_bump_family",
    "band_limited_family",
]
