"""Multiplier operators: analysis, pointwise symbol, synthesis.

The operator built from maps omega, theta and a symbol m acts on test
functions through the pairing

    <M f, g> = sum_j w_j m(x_j) <f, omega_j> <theta_j, g>,

so its dense K x K coefficient matrix factors exactly as
``E_theta^H diag(w * m) E_omega``.  Everything else here (norm and inverse
bounds, adjoints, composition calculus, reconstruction pairs, dense-domain
certificates) is derived from that factorization and cross-checked against
it at configurable tolerances.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    GridMismatchError,
    InconsistencyError,
    ScheduleError,
    ShapeMismatchError,
    SingularOperatorError,
)
from .maps import Classification, DistributionMap, _family_total, diagnose
from .measure import (
    RefinementFamily,
    SampledMeasureSpace,
    ess_sup,
    refine,
    same_grid,
)
from .model import TestFunction

RESIDUAL_TOL = 1e-10
BOUND_TOL = 1e-8
NONVANISHING_TOL = 1e-12


# -- symbols -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Symbol:
    """Complex function on the point set with modulus metadata."""

    values: np.ndarray
    ess_sup: float
    min_modulus: float
    nonvanishing: bool

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))

    def __len__(self) -> int:
        return len(self.values)


def make_symbol(space: SampledMeasureSpace, values,
                tol: float = NONVANISHING_TOL) -> Symbol:
    """Sample or wrap symbol values on a space and compute the metadata."""
    if callable(values):
        values = [values(x) for x in space.points]
    values = np.asarray(values, dtype=complex)
    if values.shape != (len(space),):
        raise ShapeMismatchError(f"symbol needs {len(space)} values")
    min_modulus = float(np.min(np.abs(values)))
    return Symbol(
        values=values,
        ess_sup=ess_sup(space, values),
        min_modulus=min_modulus,
        nonvanishing=min_modulus > tol,
    )


def conj_symbol(space: SampledMeasureSpace, m: Symbol) -> Symbol:
    return make_symbol(space, np.conj(m.values))


def reciprocal_symbol(space: SampledMeasureSpace, m: Symbol) -> Symbol:
    if not m.nonvanishing:
        raise SingularOperatorError("cannot invert a vanishing symbol")
    return make_symbol(space, 1.0 / m.values)


def product_symbol(space: SampledMeasureSpace, m1: Symbol, m2: Symbol) -> Symbol:
    return make_symbol(space, m1.values * m2.values)


def split_symbol(m: Symbol) -> tuple[np.ndarray, np.ndarray]:
    """Split m = m1 + m2 with m1 bounded and |m2| >= 1 everywhere.

    Where |m| > 1 take (0, m); elsewhere take (m + 2, -2), so |m1| <= 3.
    """
    big = np.abs(m.values) > 1.0
    m1 = np.where(big, 0.0, m.values + 2.0)
    m2 = np.where(big, m.values, -2.0)
    return m1, m2


# -- the operator --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultiplierOperator:
    """Dense coefficient matrix of a multiplier plus its building blocks."""

    dense: np.ndarray
    omega: DistributionMap
    theta: DistributionMap
    symbol: Symbol

    @property
    def space(self) -> SampledMeasureSpace:
        return self.omega.space

    @property
    def dim(self) -> int:
        return self.dense.shape[0]

    def factored(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(analysis table, diagonal w*m, synthesis adjoint table)."""
        return (
            self.omega.table,
            self.space.weights * self.symbol.values,
            self.theta.table.conj().T,
        )

    def apply(self, f) -> TestFunction:
        c = f.coeffs if isinstance(f, TestFunction) else np.asarray(f, dtype=complex)
        return TestFunction(self.dense @ c)

    def pair(self, f, g) -> complex:
        """<M f, g> through the dense matrix."""
        cf = f.coeffs if isinstance(f, TestFunction) else np.asarray(f, dtype=complex)
        cg = g.coeffs if isinstance(g, TestFunction) else np.asarray(g, dtype=complex)
        return complex(np.vdot(cg, self.dense @ cf))


def build(m: Symbol, omega: DistributionMap, theta: DistributionMap,
          validate: bool = True, tol: float = RESIDUAL_TOL) -> MultiplierOperator:
    """Assemble the dense multiplier matrix for symbol m, analysis omega,
    synthesis theta.

    The two maps must share their space and model.  When ``validate`` is on,
    the defining pairing is checked on a few deterministic random pairs
    against the direct weighted sum; disagreement raises, since the two are
    the same computation in different association orders.
    """
    if not same_grid(omega.space, theta.space):
        raise GridMismatchError("analysis and synthesis maps on different spaces")
    if omega.dim != theta.dim:
        raise GridMismatchError("analysis and synthesis maps on different models")
    if len(m.values) != omega.n_points:
        raise ShapeMismatchError("symbol not sampled on the shared space")
    wm = omega.space.weights * m.values
    dense = theta.table.conj().T @ (wm[:, None] * omega.table)
    op = MultiplierOperator(dense=dense, omega=omega, theta=theta, symbol=m)
    if validate:
        rng = np.random.default_rng(7)
        k = omega.dim
        scale = max(1.0, float(np.max(np.abs(dense))))
        for _ in range(3):
            f = rng.standard_normal(k) + 1j * rng.standard_normal(k)
            g = rng.standard_normal(k) + 1j * rng.standard_normal(k)
            direct = np.sum(wm * (omega.table @ f) * np.conj(theta.table @ g))
            if abs(op.pair(f, g) - direct) > tol * scale * k:
                raise InconsistencyError("dense matrix disagrees with its pairing")
    return op


def operator_norm(op: MultiplierOperator, verify_bound: bool = False,
                  tol: float = RESIDUAL_TOL) -> float:
    """Largest singular value of the dense matrix.

    With ``verify_bound`` the value is checked against the product bound
    sqrt(B_omega * B_theta) * ess_sup(m) computed from fresh diagnostics; a
    violation raises, since the bound is exact linear algebra here.
    """
    norm = float(np.linalg.svd(op.dense, compute_uv=False)[0]) if op.dim else 0.0
    if verify_bound:
        bound = norm_bound(op)
        if norm > bound + tol:
            raise InconsistencyError(
                f"operator norm {norm:.6e} exceeds bound {bound:.6e}"
            )
    return norm


def norm_bound(op: MultiplierOperator) -> float:
    """Bessel-bound estimate sqrt(B_omega * B_theta) * ess_sup(m)."""
    b_omega = diagnose(op.omega).upper
    b_theta = diagnose(op.theta).upper
    return math.sqrt(b_omega * b_theta) * op.symbol.ess_sup


def adjoint(op: MultiplierOperator) -> MultiplierOperator:
    """Multiplier with conjugated symbol and swapped maps; dense is the
    conjugate transpose of the original."""
    m_bar = make_symbol(op.space, np.conj(op.symbol.values))
    return build(m_bar, op.theta, op.omega, validate=False)


# -- composition calculus --------------------------------------------------------

def is_dual_pair(omega: DistributionMap, theta: DistributionMap,
                 tol: float = BOUND_TOL) -> bool:
    """True when the mixed frame matrix of the two maps is the identity.

    That is exactly the reconstruction duality <f, g> = sum_j w_j
    <f, theta_j> <omega_j, g>; for a square table it makes the symbol
    calculus exact.
    """
    if omega.n_points != omega.dim:
        return False
    mixed = theta.table.conj().T @ (omega.space.weights[:, None] * omega.table)
    return bool(
        np.linalg.norm(mixed - np.eye(omega.dim)) <= tol * math.sqrt(omega.dim)
    )


@dataclass(frozen=True)
class CompositionReport:
    """Product of two multipliers against the multiplier of the product symbol."""

    residual: float
    dual_pair: bool
    asserted: bool
    product_dense: np.ndarray
    built_dense: np.ndarray

    def to_dict(self) -> dict:
        return {
            "residual": self.residual,
            "dual_pair": self.dual_pair,
            "asserted": self.asserted,
        }


def compose(op1: MultiplierOperator, op2: MultiplierOperator,
            tol: float = RESIDUAL_TOL) -> CompositionReport:
    """Compare dense(op1) @ dense(op2) with the multiplier of m1 * m2.

    The identity is asserted only when both operators share a dual pair of
    maps with a square table (the symbolic-calculus regime); otherwise the
    difference is measured and reported without judgement.
    """
    if op1.omega is not op2.omega and not np.array_equal(op1.omega.table,
                                                         op2.omega.table):
        raise GridMismatchError("composition requires operators on the same maps")
    if op1.theta is not op2.theta and not np.array_equal(op1.theta.table,
                                                         op2.theta.table):
        raise GridMismatchError("composition requires operators on the same maps")
    product = op1.dense @ op2.dense
    m12 = product_symbol(op1.space, op1.symbol, op2.symbol)
    built = build(m12, op1.omega, op1.theta, validate=False).dense
    residual = float(np.linalg.norm(product - built))
    dual = is_dual_pair(op1.omega, op1.theta)
    if dual and residual > tol * max(1.0, float(np.linalg.norm(built))):
        raise InconsistencyError(
            f"symbol calculus failed on a dual pair: residual {residual:.3e}"
        )
    return CompositionReport(
        residual=residual,
        dual_pair=dual,
        asserted=dual,
        product_dense=product,
        built_dense=built,
    )


# -- invertibility ----------------------------------------------------------------

@dataclass(frozen=True)
class InverseReport:
    """Spectral invertibility facts plus the bounds that apply."""

    sigma_min: float
    sigma_max: float
    injective: bool
    inverse_norm: float
    lower_bound: float | None
    bound_satisfied: bool | None
    reciprocal_residual: float | None
    vanishing_points: tuple

    def to_dict(self) -> dict:
        return {
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "injective": self.injective,
            "inverse_norm": self.inverse_norm,
            "lower_bound": self.lower_bound,
            "bound_satisfied": self.bound_satisfied,
            "reciprocal_residual": self.reciprocal_residual,
            "vanishing_points": list(self.vanishing_points),
        }


def invert(op: MultiplierOperator, tol: float = BOUND_TOL,
           rank_tol: float = 1e-10) -> InverseReport:
    """Report injectivity, the inverse norm, and the applicable lower bounds.

    When the analysis map is mu-independent, the synthesis map total, and
    the symbol nonvanishing, injectivity is guaranteed and its failure
    raises.  When both maps are Riesz bases and |m| >= C > 0, the smallest
    singular value must reach sqrt(A_theta * A_omega) * C; and for a dual
    pair the inverse must agree with the multiplier of 1/m.
    """
    sigma = np.linalg.svd(op.dense, compute_uv=False)
    sigma_min, sigma_max = float(sigma[-1]), float(sigma[0])
    injective = sigma_max > 0 and sigma_min > rank_tol * sigma_max
    inverse_norm = 1.0 / sigma_min if injective else float("inf")
    vanishing = tuple(
        int(j) for j in np.flatnonzero(np.abs(op.symbol.values) <= NONVANISHING_TOL)
    )

    d_omega = diagnose(op.omega)
    d_theta = diagnose(op.theta)
    if d_omega.mu_independent and d_theta.total and op.symbol.nonvanishing:
        if not injective:
            raise InconsistencyError(
                "multiplier of a mu-independent/total pair with nonvanishing "
                "symbol must be injective"
            )

    riesz = (Classification.RIESZ_BASIS, Classification.GELFAND_BASIS)
    lower_bound = None
    bound_satisfied = None
    if (d_omega.classification in riesz and d_theta.classification in riesz
            and op.symbol.min_modulus > 0):
        lower_bound = math.sqrt(d_theta.lower * d_omega.lower) * op.symbol.min_modulus
        bound_satisfied = sigma_min >= lower_bound - tol
        if not bound_satisfied:
            raise InconsistencyError(
                f"sigma_min {sigma_min:.6e} below the Riesz lower bound "
                f"{lower_bound:.6e}"
            )

    reciprocal_residual = None
    if injective and op.symbol.nonvanishing and is_dual_pair(op.omega, op.theta):
        inv_m = make_symbol(op.space, 1.0 / op.symbol.values)
        built = build(inv_m, op.omega, op.theta, validate=False).dense
        reciprocal_residual = float(
            np.linalg.norm(np.linalg.inv(op.dense) - built)
        )
    return InverseReport(
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        injective=injective,
        inverse_norm=inverse_norm,
        lower_bound=lower_bound,
        bound_satisfied=bound_satisfied,
        reciprocal_residual=reciprocal_residual,
        vanishing_points=vanishing,
    )


# -- reconstruction pairs ----------------------------------------------------------

class Side(enum.Enum):
    LEFT = "left"    # left inverse: tau map replaces the synthesis side
    RIGHT = "right"  # right inverse: rho map replaces the analysis side


def reconstruction_pair(op: MultiplierOperator, side: Side,
                        trials: int = 20, seed: int = 0,
                        rank_tol: float = 1e-12) -> tuple[DistributionMap, float]:
    """Build the reconstruction map induced by inverting the multiplier.

    RIGHT: with J = dense^{-1}, the map rho with table diag(m) E_omega J
    satisfies <f, g> = sum_j w_j <f, rho_j> <theta_j, g>.  LEFT: with the
    inverse acting on dual actions, tau with table diag(conj m) E_theta
    J^H satisfies <f, g> = sum_j w_j <f, omega_j> <tau_j, g>.  Returns the
    map and the worst pairing residual over random normalized pairs.
    """
    sigma = np.linalg.svd(op.dense, compute_uv=False)
    if sigma[-1] <= rank_tol * max(sigma[0], 1.0):
        raise SingularOperatorError("multiplier is singular; no reconstruction pair")
    inv = np.linalg.inv(op.dense)
    m = op.symbol.values
    if side is Side.RIGHT:
        table = m[:, None] * (op.omega.table @ inv)
        partner = op.theta
        new = DistributionMap(table=table, space=op.space, model=op.omega.model)
        left_map, right_map = new, partner
    else:
        table = np.conj(m)[:, None] * (op.theta.table @ inv.conj().T)
        partner = op.omega
        new = DistributionMap(table=table, space=op.space, model=op.theta.model)
        left_map, right_map = partner, new

    rng = np.random.default_rng(seed)
    k = op.dim
    worst = 0.0
    w = op.space.weights
    for _ in range(trials):
        f = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        g = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        f, g = f / np.linalg.norm(f), g / np.linalg.norm(g)
        pairing = np.sum(
            w * (left_map.table @ f) * np.conj(right_map.table @ g)
        )
        worst = max(worst, abs(pairing - np.vdot(g, f)))
    return new, float(worst)


# -- density and closability --------------------------------------------------------

@dataclass(frozen=True)
class DensityRecord:
    index: int
    support_size: int
    sup_on_support: float
    symbol_l2_on_support: float
    bound: float
    norm_mf: float
    passed: bool


@dataclass(frozen=True)
class DensityReport:
    passed: bool
    total: bool
    records: tuple
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "total": self.total,
            "reason": self.reason,
            "records": [r.__dict__ for r in self.records],
        }


def density_certificate(omega: DistributionMap, theta: DistributionMap,
                        m: Symbol, family: Sequence[TestFunction],
                        support_tol: float = 1e-9,
                        tol: float = RESIDUAL_TOL) -> DensityReport:
    """Certify the dense-domain bound on a proper-support witness family.

    For each witness f with analysis support X_f the norm of M f must stay
    below  sup_{X_f} |<f, omega_j>| * sqrt(B_theta) * ||m||_{L2(X_f)}; with
    a total family this is the finite shadow of a densely defined
    multiplier for locally square-integrable symbols.
    """
    if not family:
        return DensityReport(passed=False, total=False, records=(),
                             reason="empty witness family")
    b_theta = diagnose(theta).upper
    op = build(m, omega, theta, validate=False)
    w = omega.space.weights
    records = []
    for i, f in enumerate(family):
        values = np.abs(omega.analyze(f))
        on = values > support_tol
        c_f = float(values[on].max()) if np.any(on) else 0.0
        m_l2 = math.sqrt(float(np.sum(w[on] * np.abs(m.values[on]) ** 2)))
        bound = c_f * math.sqrt(b_theta) * m_l2
        norm_mf = float(np.linalg.norm(op.dense @ f.coeffs))
        records.append(DensityRecord(
            index=i,
            support_size=int(np.sum(on)),
            sup_on_support=c_f,
            symbol_l2_on_support=m_l2,
            bound=bound,
            norm_mf=norm_mf,
            passed=norm_mf <= bound + tol,
        ))
    total = _family_total(omega.model, family, rank_tol=1e-10)
    passed = total and all(r.passed for r in records)
    reason = "" if passed else (
        "witness family is not total" if not total else "bound violated"
    )
    return DensityReport(passed=passed, total=total, records=tuple(records),
                         reason=reason)


class DomainVerdict(enum.Enum):
    CONVERGENT = "convergent"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class ClosureProfile:
    """Desk-scale proxy for membership of f in the closure domain.

    Tracks I = sum_j w_j |m_j <f, omega_j>|^2 along a refinement schedule
    and fits its growth exponent; a bounded integral means the function
    stays inside the domain as the point set grows.
    """

    schedule: tuple
    integrals: tuple
    fitted_exponent: float
    verdict: DomainVerdict

    def to_dict(self) -> dict:
        return {
            "schedule": [list(s) for s in self.schedule],
            "integrals": list(self.integrals),
            "fitted_exponent": self.fitted_exponent,
            "verdict": self.verdict.value,
        }


def _growth_exponent(abscissae, values) -> float:
    xs, ys = [], []
    for x, y in zip(abscissae, values):
        if y > 1e-300:
            xs.append(math.log(x))
            ys.append(math.log(y))
    if len(xs) < 2:
        return 0.0
    slope = np.polyfit(xs, ys, 1)[0]
    return float(slope)


def closure_domain_profile(family: RefinementFamily,
                           builder: Callable[[SampledMeasureSpace],
                                             tuple[DistributionMap, Symbol]],
                           f_builder: Callable[[DistributionMap], TestFunction],
                           threshold: float = 0.25) -> ClosureProfile:
    """Sweep the weighted integral of |m * analysis(f)|^2 over a schedule."""
    if len(family) < 3:
        raise ScheduleError("closure profile needs at least 3 schedule steps")
    integrals = []
    for step in range(len(family)):
        space = refine(family, step)
        omega, m = builder(space)
        f = f_builder(omega)
        integrand = m.values * omega.analyze(f)
        integrals.append(float(np.sum(space.weights * np.abs(integrand) ** 2)))
    ls = [L for _, L in family.schedule]
    abscissae = ls if len(set(ls)) > 1 else [n for n, _ in family.schedule]
    exponent = _growth_exponent(abscissae, integrals)
    verdict = (DomainVerdict.DIVERGENT if exponent > threshold
               else DomainVerdict.CONVERGENT)
    return ClosureProfile(
        schedule=family.schedule,
        integrals=tuple(integrals),
        fitted_exponent=exponent,
        verdict=verdict,
    )


@dataclass(frozen=True)
class ClosabilityReport:
    passed: bool
    total: bool
    residual: float
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "total": self.total,
            "residual": self.residual,
            "reason": self.reason,
        }


def closability_check(omega: DistributionMap, theta: DistributionMap, m: Symbol,
                      dual_family: Sequence[TestFunction],
                      trials: int = 20, seed: int = 0,
                      tol: float = RESIDUAL_TOL) -> ClosabilityReport:
    """Verify <M f, g> = <f, M' g> with M' the conjugate-symbol swap.

    A total family of such g certifies a densely defined adjoint, the
    finite shadow of closability.
    """
    if not dual_family:
        return ClosabilityReport(passed=False, total=False, residual=float("inf"),
                                 reason="empty dual witness family")
    op = build(m, omega, theta, validate=False)
    op_adj = build(make_symbol(omega.space, np.conj(m.values)), theta, omega,
                   validate=False)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        f = rng.standard_normal(op.dim) + 1j * rng.standard_normal(op.dim)
        f = f / np.linalg.norm(f)
        for g in dual_family:
            lhs = op.pair(f, g)  # <M f, g>
            rhs = np.vdot(op_adj.dense @ g.coeffs, f)  # <f, M' g>
            worst = max(worst, abs(lhs - rhs))
    total = _family_total(omega.model, dual_family, rank_tol=1e-10)
    passed = total and worst <= tol
    reason = "" if passed else (
        "dual witness family is not total" if not total else "pairing mismatch"
    )
    return ClosabilityReport(passed=passed, total=total, residual=float(worst),
                             reason=reason)


__all__ = [
    "Symbol",
    "make_symbol",
    "conj_symbol",
    "reciprocal_symbol",
    "product_symbol",
    "split_symbol",
    "MultiplierOperator",
    "build",
    "operator_norm",
    "norm_bound",
    "adjoint",
    "is_dual_pair",
    "CompositionReport",
    "compose",
    "InverseReport",
    "invert",
    "Side",
    "reconstruction_pair",
    "DensityReport",
    "density_certificate",
    "DomainVerdict",
    "ClosureProfile",
    "closure_domain_profile",
    "ClosabilityReport",
    "closability_check",
]
