"""Independent oracles and stress harnesses.

Every identity asserted elsewhere is re-verified here along a code path
that never reuses the factored representations: pairings by direct weighted
summation, discrete frame bounds from explicitly accumulated outer
products, transforms and circular convolutions from their defining sums.
Oracles deliberately trade speed for independence.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InconsistencyError, ScheduleError, UnsupportedSpaceError
from .maps import (
    DistributionMap,
    delta_frame,
    diagnose,
    discrete_sequence_map,
    exponential_frame,
    weighted_delta_frame,
)
from .measure import (
    RefinementFamily,
    SampledMeasureSpace,
    counting,
    fourier_grid,
    refine,
    symmetric_grid_family,
)
from .model import RawSamples, from_samples, make_model, to_samples
from .multiplier import MultiplierOperator, build, make_symbol, operator_norm

GROWTH_THRESHOLD = 0.25


# -- pairing oracle ------------------------------------------------------------

def brute_force_pairing(op: MultiplierOperator, trials: int = 100,
                        seed: int = 0) -> float:
    """Worst deviation of the dense pairing from the defining weighted sum.

    Draws random coefficient pairs (f, g) and compares <M f, g> computed
    through the dense matrix against  sum_j w_j m_j <f, omega_j>
    conj(<g, theta_j>)  evaluated directly from the tables.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    k = op.dim
    w, m = op.space.weights, op.symbol.values
    worst = 0.0
    for _ in range(trials):
        f = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        g = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        f, g = f / np.linalg.norm(f), g / np.linalg.norm(g)
        dense_side = np.vdot(g, op.dense @ f)
        direct = complex(
            np.sum(w * m * (op.omega.table @ f) * np.conj(op.theta.table @ g))
        )
        worst = max(worst, abs(dense_side - direct))
    return float(worst)


def duality_residual(omega: DistributionMap, theta: DistributionMap,
                     trials: int = 100, seed: int = 0) -> float:
    """Worst deviation of sum_j w_j <f, theta_j> <omega_j, g> from <f, g>."""
    rng = np.random.default_rng(seed)
    k = omega.dim
    w = omega.space.weights
    worst = 0.0
    for _ in range(trials):
        f = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        g = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        f, g = f / np.linalg.norm(f), g / np.linalg.norm(g)
        pairing = complex(
            np.sum(w * (theta.table @ f) * np.conj(omega.table @ g))
        )
        worst = max(worst, abs(pairing - np.vdot(g, f)))
    return float(worst)


# -- discrete reduction oracle ----------------------------------------------------

@dataclass(frozen=True)
class ReductionComparison:
    """Classical discrete frame bounds against the table-path diagnostics."""

    classical_lower: float
    classical_upper: float
    classical_total: bool
    maps_lower: float
    maps_upper: float
    maps_total: bool
    max_deviation: float
    agree: bool

    def to_dict(self) -> dict:
        return {
            "classical_lower": self.classical_lower,
            "classical_upper": self.classical_upper,
            "classical_total": self.classical_total,
            "maps_lower": self.maps_lower,
            "maps_upper": self.maps_upper,
            "maps_total": self.maps_total,
            "max_deviation": self.max_deviation,
            "agree": self.agree,
        }


def discrete_reduction_oracle(vectors: Sequence, tol: float = 1e-14,
                              rank_tol: float = 1e-10) -> ReductionComparison:
    """Compare classical discrete frame bounds with the table-path diagnostics.

    The classical side accumulates sum_j |phi_j><phi_j| explicitly and takes
    its extreme eigenvalues; the table path goes through the counting-measure
    map.  The two are the same arithmetic reached by different code, so they
    must agree to within a few ulps.
    """
    vecs = np.asarray(list(vectors), dtype=complex)
    j, k = vecs.shape
    gram = np.zeros((k, k), dtype=complex)
    for row in vecs:  # explicit accumulation, no matmul shortcut
        gram += np.outer(row, np.conj(row))
    eigs = np.linalg.eigvalsh(gram)
    classical_upper = float(max(eigs[-1], 0.0))
    classical_lower = float(max(eigs[0], 0.0)) if j >= k else 0.0
    classical_total = j >= k and classical_lower > (rank_tol ** 2) * classical_upper

    space = counting(j)
    model = make_model(counting(k), RawSamples())
    diag = diagnose(discrete_sequence_map(model, vecs, space))

    scale = max(1.0, classical_upper)
    deviation = max(
        abs(diag.lower - classical_lower), abs(diag.upper - classical_upper)
    )
    agree = deviation <= tol * scale and diag.total == classical_total
    return ReductionComparison(
        classical_lower=classical_lower,
        classical_upper=classical_upper,
        classical_total=classical_total,
        maps_lower=diag.lower,
        maps_upper=diag.upper,
        maps_total=diag.total,
        max_deviation=float(deviation),
        agree=agree,
    )


# -- transform quartet oracle -------------------------------------------------------

def _direct_transform(space: SampledMeasureSpace, values: np.ndarray,
                      inverse: bool = False) -> np.ndarray:
    """Weighted transform by its defining sum, self-dual grids only."""
    x = space.points
    sign = 2j if inverse else -2j
    kernel = np.exp(sign * np.pi * np.outer(x, x))
    return kernel @ (space.weights * values)


def _direct_convolution(space: SampledMeasureSpace, a: np.ndarray,
                        b: np.ndarray) -> np.ndarray:
    """Weighted circular convolution sum_l w_l a_l b_{j-l} by explicit loops."""
    n = len(space)
    w = space.weights
    out = np.zeros(n, dtype=complex)
    for j in range(n):
        acc = 0.0 + 0.0j
        for l in range(n):
            acc += w[l] * a[l] * b[(j - l) % n]
        out[j] = acc
    return out


@dataclass(frozen=True)
class QuartetReport:
    """Residuals of the four delta/exponential multipliers against oracles.

    Members are keyed by their (analysis, synthesis) pair: ``dd`` is
    pointwise multiplication, ``de`` inverse-transform convolution,
    ``ed`` multiplication after the forward transform, ``ee`` convolution
    with the inverse-transformed symbol.
    """

    n: int
    residuals: dict
    passed: bool
    convention: str
    flipped_passes: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "residuals": dict(self.residuals),
            "passed": self.passed,
            "convention": self.convention,
            "flipped_passes": dict(self.flipped_passes),
        }


def fourier_quartet_check(n: int, symbol_values, trials: int = 5,
                          seed: int = 0, tol: float = 1e-10) -> QuartetReport:
    """Check the four multipliers of the point/frequency pair on one grid.

    Uses the self-dual grid, where analysis with the exponential family is
    exactly the forward weighted transform.  Expected actions on samples:

    * analysis delta, synthesis delta:  f -> m * f
    * analysis delta, synthesis exp:    f -> m_inv ( * ) f_inv  (circular)
    * analysis exp,   synthesis delta:  f -> m * f_fwd
    * analysis exp,   synthesis exp:    f -> m_inv ( * ) f

    where ``_fwd``/``_inv`` are the forward/inverse weighted transforms.
    If a member misses the tolerance, the report says whether it passes with
    the transform direction flipped, which pins down a convention mismatch.
    """
    space = fourier_grid(n)
    model = make_model(space, RawSamples())
    m = np.asarray(symbol_values, dtype=complex)
    if m.shape != (n,):
        raise UnsupportedSpaceError(f"symbol must be sampled on the {n}-point grid")
    sym = make_symbol(space, m)
    dd = build(sym, delta_frame(model, space), delta_frame(model, space))
    de = build(sym, delta_frame(model, space), exponential_frame(model, space))
    ed = build(sym, exponential_frame(model, space), delta_frame(model, space))
    ee = build(sym, exponential_frame(model, space), exponential_frame(model, space))

    def oracles(f, flip: bool) -> dict:
        fwd = _direct_transform(space, f, inverse=flip)
        inv = _direct_transform(space, f, inverse=not flip)
        mi = _direct_transform(space, m, inverse=not flip)
        return {
            "dd": m * f,
            "de": _direct_convolution(space, mi, inv),
            "ed": m * fwd,
            "ee": _direct_convolution(space, mi, f),
        }

    rng = np.random.default_rng(seed)
    ops = {"dd": dd, "de": de, "ed": ed, "ee": ee}
    residuals = {key: 0.0 for key in ops}
    flipped = {key: 0.0 for key in ops}
    for _ in range(trials):
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        f = f / np.linalg.norm(f)
        expected = oracles(f, flip=False)
        alternate = oracles(f, flip=True)
        coeffs = from_samples(model, f)
        for key, op in ops.items():
            got = to_samples(model, op.apply(coeffs))
            residuals[key] = max(residuals[key],
                                 float(np.max(np.abs(got - expected[key]))))
            flipped[key] = max(flipped[key],
                               float(np.max(np.abs(got - alternate[key]))))
    passed = all(r <= tol for r in residuals.values())
    flipped_passes = {key: flipped[key] <= tol for key in ops}
    return QuartetReport(
        n=n,
        residuals=residuals,
        passed=passed,
        convention="analysis of the exponential family is the forward transform",
        flipped_passes=flipped_passes,
    )


# -- growth sweeps --------------------------------------------------------------

class GrowthVerdict(enum.Enum):
    BOUNDED = "bounded"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class SweepResult:
    """Operator norms along a refinement schedule with a growth verdict."""

    schedule: tuple
    norms: tuple
    fitted_growth: float
    verdict: GrowthVerdict
    threshold: float

    def to_dict(self) -> dict:
        return {
            "schedule": [list(s) for s in self.schedule],
            "norms": list(self.norms),
            "fitted_growth": self.fitted_growth,
            "verdict": self.verdict.value,
            "threshold": self.threshold,
        }

    def to_csv(self) -> str:
        lines = ["step,n,L,norm"]
        for step, ((n, L), norm) in enumerate(zip(self.schedule, self.norms)):
            lines.append(f"{step},{n},{L},{norm!r}")
        return "\n".join(lines) + "\n"


def _fit_growth(schedule, norms) -> float:
    ls = [L for _, L in schedule]
    abscissae = ls if len(set(ls)) > 1 else [n for n, _ in schedule]
    xs, ys = [], []
    for x, y in zip(abscissae, norms):
        if y > 1e-300:
            xs.append(math.log(x))
            ys.append(math.log(y))
    if len(xs) < 2:
        return 0.0
    return float(np.polyfit(xs, ys, 1)[0])


def unboundedness_sweep(family: RefinementFamily,
                        builder: Callable[[SampledMeasureSpace], MultiplierOperator],
                        threshold: float = GROWTH_THRESHOLD) -> SweepResult:
    """Operator norm per schedule step, growth fit, bounded/unbounded verdict."""
    if len(family) < 3:
        raise ScheduleError("unboundedness sweep needs at least 3 schedule steps")
    norms = []
    for step in range(len(family)):
        space = refine(family, step)
        norms.append(operator_norm(builder(space)))
    growth = _fit_growth(family.schedule, norms)
    verdict = (GrowthVerdict.UNBOUNDED if growth > threshold
               else GrowthVerdict.BOUNDED)
    return SweepResult(
        schedule=family.schedule,
        norms=tuple(norms),
        fitted_growth=growth,
        verdict=verdict,
        threshold=threshold,
    )


def coordinate_multiplier(space: SampledMeasureSpace) -> MultiplierOperator:
    """Multiplier of the coordinate-weighted point family against the plain one.

    Discretization of the standard unbounded example: analysis against
    x * delta_x with unit symbol; its dense matrix is diag(x), so the norm
    at half-width L is exactly L.
    """
    model = make_model(space, RawSamples())
    omega = weighted_delta_frame(model, space, lambda x: x)
    theta = delta_frame(model, space)
    return build(make_symbol(space, np.ones(len(space))), omega, theta,
                 validate=False)


def weighted_delta_sweep(l_values: Sequence[float] = (2.0, 4.0, 8.0, 16.0),
                         points_per_unit: int = 8,
                         check: bool = True) -> SweepResult:
    """Standard unbounded sweep over symmetric grids of growing half-width.

    With ``check`` the per-step norm must reach 0.9 * L (it equals L exactly
    on grids containing the endpoints) or the sweep raises.
    """
    schedule = tuple(
        (int(points_per_unit * L) + 1, float(L)) for L in l_values
    )
    family = symmetric_grid_family(schedule)
    result = unboundedness_sweep(family, coordinate_multiplier)
    if check:
        for (n, L), norm in zip(result.schedule, result.norms):
            if norm < 0.9 * L:
                raise InconsistencyError(
                    f"weighted-delta norm {norm:.3e} below 0.9*L at L={L}"
                )
    return result


__all__ = [
    "brute_force_pairing",
    "duality_residual",
    "ReductionComparison",
    "discrete_reduction_oracle",
    "QuartetReport",
    "fourier_quartet_check",
    "GrowthVerdict",
    "SweepResult",
    "unboundedness_sweep",
    "coordinate_multiplier",
    "weighted_delta_sweep",
]
