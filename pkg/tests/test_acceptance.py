"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one `ACCEPTANCE <id> PASS|FAIL <summary>` line; run with
``pytest tests/test_acceptance.py -v -s`` to see them inline.
"""

import filecmp
import json

import numpy as np
import pytest

from framelab import (
    Classification,
    DistributionMap,
    GrowthVerdict,
    RawSamples,
    Side,
    Trigonometric,
    build,
    bump_family,
    canonical_dual,
    check_hyper_orthogonal,
    check_pseudo_orthogonal,
    compose,
    counting,
    delta_frame,
    density_certificate,
    diagnose,
    discrete_reduction_oracle,
    discrete_sequence_map,
    duality_residual,
    fourier_grid,
    fourier_quartet_check,
    invert,
    make_model,
    make_symbol,
    norm_bound,
    operator_norm,
    periodic_unit_grid,
    reconstruction_pair,
    scaled_bump_family,
    split_symbol,
    symmetric_grid,
    symmetric_grid_family,
    unboundedness_sweep,
    weighted_delta_frame,
    weighted_delta_sweep,
)
from framelab.cli import EXIT_OK, run
from conftest import random_bounded_symbol, riesz_dual_pair


def _verdict(criterion, summary, checks):
    """Run the checks; print one pass/fail line; re-raise on failure."""
    try:
        checks()
    except AssertionError:
        print(f"ACCEPTANCE {criterion:>2} FAIL {summary}")
        raise
    print(f"ACCEPTANCE {criterion:>2} PASS {summary}")


def random_pair(rng, j, k):
    space = counting(j)
    model = make_model(counting(k), RawSamples())
    omega = DistributionMap(
        table=rng.standard_normal((j, k)) + 1j * rng.standard_normal((j, k)),
        space=space, model=model)
    theta = DistributionMap(
        table=rng.standard_normal((j, k)) + 1j * rng.standard_normal((j, k)),
        space=space, model=model)
    return space, omega, theta


def test_criterion_01_parseval_delta_frame():
    def checks():
        for n in (8, 16, 64):
            space = periodic_unit_grid(n)
            model = make_model(space, Trigonometric(max_degree=n // 2))
            diag = diagnose(delta_frame(model, space))
            assert abs(diag.lower - 1.0) < 1e-10, (n, diag.lower)
            assert abs(diag.upper - 1.0) < 1e-10, (n, diag.upper)
            assert diag.classification is Classification.GELFAND_BASIS, n

    _verdict(1, "delta frame is a Parseval Gel'fand basis at n in {8,16,64}",
             checks)


def test_criterion_02_factorization():
    def checks():
        rng = np.random.default_rng(2001)
        for _ in range(100):
            k = int(rng.integers(2, 8))
            j = int(rng.integers(k, 12))
            space, omega, theta = random_pair(rng, j, k)
            m = random_bounded_symbol(space, rng)
            op = build(m, omega, theta)
            wm = space.weights * m.values
            reference = np.einsum("jl,j,jk->lk",
                                  np.conj(theta.table), wm, omega.table)
            assert np.linalg.norm(op.dense - reference) < 1e-12

    _verdict(2, "dense = synthesis^H diag(w*m) analysis on 100 seeded triples",
             checks)


def test_criterion_03_norm_bound():
    def checks():
        rng = np.random.default_rng(2002)
        for _ in range(100):
            k = int(rng.integers(2, 7))
            j = int(rng.integers(k, 10))
            space, omega, theta = random_pair(rng, j, k)
            op = build(random_bounded_symbol(space, rng), omega, theta,
                       validate=False)
            assert operator_norm(op) <= norm_bound(op) + 1e-10
        # scaled coordinate-basis case saturates the bound
        space = counting(3)
        model = make_model(space, RawSamples())
        omega = weighted_delta_frame(model, space, lambda x: 2.0)
        theta = delta_frame(model, space)
        op = build(make_symbol(space, np.ones(3)), omega, theta)
        assert abs(operator_norm(op) - norm_bound(op)) < 1e-12
        assert operator_norm(op) == pytest.approx(2.0, abs=1e-12)

    _verdict(3, "norm <= sqrt(B B') ||m||_inf on 100 cases, equality saturated",
             checks)


def test_criterion_04_canonical_dual():
    def checks():
        rng = np.random.default_rng(2003)
        model = make_model(counting(4), RawSamples())
        table = rng.standard_normal((9, 4)) + 1j * rng.standard_normal((9, 4))
        omega = DistributionMap(table=table, space=counting(9), model=model)
        dual = canonical_dual(omega)
        assert duality_residual(omega, dual, trials=100, seed=2004) < 1e-10
        diag, dual_diag = diagnose(omega), diagnose(dual)
        assert abs(dual_diag.lower - 1 / diag.upper) < 1e-8
        assert abs(dual_diag.upper - 1 / diag.lower) < 1e-8
        c2 = discrete_sequence_map(make_model(counting(2), RawSamples()),
                                   [(1, 0), (1, 1), (0, 1)])
        expected = np.array([[2 / 3, -1 / 3], [1 / 3, 1 / 3], [-1 / 3, 2 / 3]])
        assert np.max(np.abs(canonical_dual(c2).vectors() - expected)) < 1e-12

    _verdict(4, "canonical dual: pairing, reciprocal bounds, C^2 table", checks)


def test_criterion_05_symbolic_calculus():
    def checks():
        rng = np.random.default_rng(2005)
        omega, theta = riesz_dual_pair(6, rng)
        for _ in range(50):
            m1 = random_bounded_symbol(omega.space, rng)
            m2 = random_bounded_symbol(omega.space, rng)
            report = compose(build(m1, omega, theta, validate=False),
                             build(m2, omega, theta, validate=False))
            assert report.asserted
            assert report.residual < 1e-10
        # non-dual counterexample: theta = omega, a non-Parseval frame
        space = counting(3)
        model = make_model(space, RawSamples())
        scaled = weighted_delta_frame(model, space, lambda x: 2.0)
        ones = make_symbol(space, np.ones(3))
        report = compose(build(ones, scaled, scaled), build(ones, scaled, scaled))
        assert not report.asserted
        assert report.residual > 1e-3

    _verdict(5, "M_{m1} M_{m2} = M_{m1 m2} on dual pairs; fails without duality",
             checks)


def test_criterion_06_inverse_bound():
    def checks():
        rng = np.random.default_rng(2006)
        for _ in range(50):
            omega, theta = riesz_dual_pair(5, rng)
            floor = float(rng.uniform(0.5, 1.5))
            m = make_symbol(omega.space,
                            floor * np.exp(2j * np.pi * rng.random(5)))
            report = invert(build(m, omega, theta, validate=False))
            assert report.lower_bound is not None
            assert report.sigma_min >= report.lower_bound - 1e-8
            assert report.reciprocal_residual is not None
            assert report.reciprocal_residual < 1e-10

    _verdict(6, "sigma_min >= sqrt(A A') C and inverse = reciprocal multiplier",
             checks)


def test_criterion_07_reconstruction():
    def checks():
        rng = np.random.default_rng(2007)
        # generic invertible case
        omega, theta = riesz_dual_pair(6, rng)
        m = random_bounded_symbol(omega.space, rng, lo=0.5, hi=2.0)
        op = build(m, omega, theta, validate=False)
        _, res_right = reconstruction_pair(op, Side.RIGHT, seed=2008)
        _, res_left = reconstruction_pair(op, Side.LEFT, seed=2009)
        assert res_right < 1e-10
        assert res_left < 1e-10
        # delta-frame case returns the delta family on both sides
        space = fourier_grid(8)
        model = make_model(space, RawSamples())
        delta = delta_frame(model, space)
        smooth = make_symbol(space, 1.5 + 0.5 * np.cos(2 * np.pi * space.points))
        op = build(smooth, delta, delta)
        rho, rr = reconstruction_pair(op, Side.RIGHT, seed=2010)
        tau, rl = reconstruction_pair(op, Side.LEFT, seed=2011)
        assert np.max(np.abs(rho.table - delta.table)) < 1e-10
        assert np.max(np.abs(tau.table - delta.table)) < 1e-10
        assert rr < 1e-10 and rl < 1e-10

    _verdict(7, "left/right reconstruction pairings; delta case returns delta",
             checks)


def test_criterion_08_fourier_quartet():
    def checks():
        rng = np.random.default_rng(2012)
        for n in (4, 8, 16, 64):
            for _ in range(5):
                values = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                report = fourier_quartet_check(n, values, trials=3, seed=2013,
                                               tol=1e-10)
                assert report.passed, (n, report.residuals)

    _verdict(8, "all four multiplier/oracle residuals < 1e-10, n in {4,8,16,64}",
             checks)


def test_criterion_09_discrete_reduction():
    def checks():
        rng = np.random.default_rng(2014)
        for _ in range(50):
            k = int(rng.integers(2, 6))
            j = int(rng.integers(k, 10))
            vecs = rng.standard_normal((j, k)) + 1j * rng.standard_normal((j, k))
            comparison = discrete_reduction_oracle(vecs, tol=1e-14)
            assert comparison.agree, comparison.max_deviation

    _verdict(9, "table-path and classical-path frame bounds agree to 1e-14",
             checks)


def test_criterion_10_unboundedness():
    def checks():
        result = weighted_delta_sweep((2.0, 4.0, 8.0, 16.0), check=False)
        for (n, L), norm in zip(result.schedule, result.norms):
            assert norm >= 0.9 * L, (L, norm)
        assert result.verdict is GrowthVerdict.UNBOUNDED
        # bounded-symbol control on the same schedule
        family = symmetric_grid_family(result.schedule)

        def bounded(space):
            model = make_model(space, RawSamples())
            delta = delta_frame(model, space)
            return build(make_symbol(space, np.ones(len(space))), delta, delta,
                         validate=False)

        control = unboundedness_sweep(family, bounded)
        assert control.verdict is GrowthVerdict.BOUNDED

    _verdict(10, "weighted-delta sweep unbounded with norms >= 0.9 L; control bounded",
             checks)


def test_criterion_11_orthogonality_and_density():
    def checks():
        space = symmetric_grid(33, 4.0)
        model = make_model(space, RawSamples())
        delta = delta_frame(model, space)
        pseudo = check_pseudo_orthogonal(delta, bump_family(model),
                                         support_tol=1e-9)
        assert pseudo.passed
        alpha = 1.0 / (1.0 + space.points ** 2)
        hyper = check_hyper_orthogonal(
            delta, alpha, lambda a: scaled_bump_family(model, a),
            support_tol=1e-9,
        )
        assert hyper.passed
        coordinate = make_symbol(space, space.points.astype(complex))
        density = density_certificate(delta, delta, coordinate,
                                      bump_family(model), support_tol=1e-9)
        assert density.passed
        assert all(r.passed for r in density.records)
        rng = np.random.default_rng(2015)
        for _ in range(100):
            values = 4.0 * (rng.standard_normal(33) + 1j * rng.standard_normal(33))
            m = make_symbol(space, values)
            m1, m2 = split_symbol(m)
            assert np.max(np.abs(m1 + m2 - values)) < 1e-14
            assert np.min(np.abs(m2)) >= 1.0
            assert np.max(np.abs(m1)) <= 3.0 + 1e-12

    _verdict(11, "pseudo/hyper witnesses, density bound for m(x)=x, symbol split",
             checks)


def test_criterion_12_determinism(tmp_path):
    def checks():
        config = tmp_path / "config.json"
        config.write_text(json.dumps({
            "space": {"family": "periodic_unit_grid", "n": 16},
            "model": {"family": "trigonometric", "max_degree": 8},
            "omega": {"family": "delta"},
            "theta": {"family": "canonical_dual"},
            "symbol": {"family": "reciprocal_safe", "floor": 1.0, "seed": 6},
            "suites": ["diagnose", "dual", "multiplier", "calculus", "invert",
                       "reconstruct", "orthogonality", "density", "sweep",
                       "quartet", "oracle"],
            "seed": 99,
            "quartet": {"n": [4, 8, 16], "symbols": 3},
            "sweep": {"l_values": [2, 4, 8, 16]},
        }))
        out1, out2 = tmp_path / "run1", tmp_path / "run2"
        assert run(config, out_dir=out1) == EXIT_OK
        assert run(config, out_dir=out2) == EXIT_OK
        names = sorted(p.name for p in out1.iterdir())
        match, mismatch, errors = filecmp.cmpfiles(out1, out2, names,
                                                   shallow=False)
        assert mismatch == [] and errors == []
        assert sorted(match) == names

    _verdict(12, "same config and seed produce byte-identical reports", checks)
