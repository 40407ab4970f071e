"""Randomised invariant suites over small and medium chains."""

import warnings

import numpy as np
import pytest

from tbrevival import (
    ChainSpec,
    GaussianSpec,
    autocorrelation,
    build_gwp,
    evolve_exact,
    mirror_fidelity,
    reflect,
    to_position,
    to_spectral,
)

from conftest import random_state

SIZES = (2, 3, 17, 128)
CASES_PER_SIZE = 25  # 100 cases per property across the size set


def quiet_gwp(chain, center, alpha):
    # random centers routinely violate containment; that warning is expected here
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_gwp(chain, GaussianSpec(center=center, alpha=alpha))


@pytest.mark.parametrize("n", SIZES)
def test_property_transform_unitarity(n):
    chain = ChainSpec(n_sites=n)
    rng = np.random.default_rng(1000 + n)
    for _ in range(CASES_PER_SIZE):
        state = random_state(rng, n)
        coeff = to_spectral(chain, state)
        assert abs(np.linalg.norm(coeff) - 1.0) < 1e-10
        np.testing.assert_allclose(to_position(chain, coeff), state, atol=1e-10)


@pytest.mark.parametrize("n", SIZES)
def test_property_norm_conservation(n):
    chain = ChainSpec(n_sites=n)
    rng = np.random.default_rng(2000 + n)
    for _ in range(CASES_PER_SIZE):
        state = random_state(rng, n)
        t = rng.uniform(-1e4, 1e4)
        assert abs(np.linalg.norm(evolve_exact(chain, state, t)) - 1.0) < 1e-10


@pytest.mark.parametrize("n", SIZES)
def test_property_reflection_commutes_with_evolution(n):
    chain = ChainSpec(n_sites=n)
    rng = np.random.default_rng(3000 + n)
    for _ in range(CASES_PER_SIZE):
        state = random_state(rng, n)
        t = rng.uniform(0, 5e3)
        a = evolve_exact(chain, reflect(chain, state), t)
        b = reflect(chain, evolve_exact(chain, state, t))
        np.testing.assert_allclose(a, b, atol=1e-9)


@pytest.mark.parametrize("n", SIZES)
def test_property_gwp_reflect_covariance(n):
    chain = ChainSpec(n_sites=n)
    rng = np.random.default_rng(4000 + n)
    for _ in range(CASES_PER_SIZE):
        center = rng.uniform(1.0, n)
        alpha = rng.uniform(0.05, 3.0)
        a = reflect(chain, quiet_gwp(chain, center, alpha))
        b = quiet_gwp(chain, n + 1 - center, alpha)
        np.testing.assert_allclose(a, b, atol=1e-10)


@pytest.mark.parametrize("n", SIZES)
def test_property_fidelity_bounds(n):
    chain = ChainSpec(n_sites=n)
    rng = np.random.default_rng(5000 + n)
    for _ in range(CASES_PER_SIZE):
        state = random_state(rng, n)
        t = rng.uniform(0, 1e4)
        assert abs(autocorrelation(chain, state, t)) <= 1 + 1e-9
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            f = mirror_fidelity(chain, GaussianSpec(center=rng.uniform(1.0, n),
                                                    alpha=rng.uniform(0.2, 3.0)), t)
        assert abs(f) <= 1 + 1e-9
    assert abs(autocorrelation(chain, random_state(rng, n), 0.0)) == pytest.approx(1.0, abs=1e-12)
