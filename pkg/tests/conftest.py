"""Shared builders for seeded random frames and dual pairs."""

import numpy as np
import pytest

from framelab import (
    DistributionMap,
    RawSamples,
    canonical_dual,
    counting,
    make_model,
    make_symbol,
)


def random_unitary(k, rng):
    q, r = np.linalg.qr(rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_riesz_map(k, rng, smin=0.5, smax=2.0):
    """Square map on counting measure with singular values in [smin, smax].

    On counting measure the weighted table equals the table, so the frame
    bounds are exactly (smin^2, smax^2)-conditioned.
    """
    space = counting(k)
    model = make_model(space, RawSamples())
    s = rng.uniform(smin, smax, k)
    table = random_unitary(k, rng) @ np.diag(s) @ random_unitary(k, rng)
    return DistributionMap(table=table, space=space, model=model)


def riesz_dual_pair(k, rng, smin=0.5, smax=2.0):
    omega = random_riesz_map(k, rng, smin, smax)
    return omega, canonical_dual(omega)


def random_overcomplete_map(j, k, rng):
    """Random J > K map on counting measure (a frame, never mu-independent)."""
    space = counting(j)
    model = make_model(counting(k), RawSamples())
    table = rng.standard_normal((j, k)) + 1j * rng.standard_normal((j, k))
    return DistributionMap(table=table, space=space, model=model)


def random_bounded_symbol(space, rng, lo=0.2, hi=2.0):
    modulus = rng.uniform(lo, hi, len(space))
    phase = np.exp(2j * np.pi * rng.random(len(space)))
    return make_symbol(space, modulus * phase)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
