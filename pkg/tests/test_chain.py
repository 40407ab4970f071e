import numpy as np
import pytest
import scipy.fft

from tbrevival import (
    ChainSpec,
    eigen_modes,
    hamiltonian_matrix,
    inner_product,
    mode_energies,
    reflect,
    to_position,
    to_spectral,
)

from conftest import random_state


def test_chain_spec_validation():
    with pytest.raises(ValueError):
        ChainSpec(n_sites=1)
    with pytest.raises(ValueError):
        ChainSpec(n_sites=10, hopping=0.0)
    with pytest.raises(ValueError):
        ChainSpec(n_sites=10, hopping=-1.0)


def test_eigen_modes_small_chain():
    modes = eigen_modes(ChainSpec(n_sites=3))
    assert [m.index for m in modes] == [1, 2, 3]
    assert modes[1].wavenumber == pytest.approx(np.pi / 2)
    assert modes[1].energy == pytest.approx(0.0, abs=1e-15)
    assert modes[0].energy == pytest.approx(-np.sqrt(2.0), abs=1e-12)
    assert modes[0].parity == 1
    assert modes[1].parity == -1


def test_energies_strictly_increasing():
    e = mode_energies(ChainSpec(n_sites=57, hopping=1.7))
    assert np.all(np.diff(e) > 0)
    assert np.all(np.abs(e) < 2 * 1.7)


def test_transform_two_site_example():
    chain = ChainSpec(n_sites=2)
    coeff = to_spectral(chain, np.array([1.0, 0.0]))
    np.testing.assert_allclose(coeff, [0.7071067811865476, 0.7071067811865476], atol=1e-12)


def test_eigenvector_maps_to_unit_coefficient():
    chain = ChainSpec(n_sites=17)
    for mode in eigen_modes(chain):
        j = np.arange(1, 18)
        vec = np.sqrt(2 / 18) * np.sin(mode.wavenumber * j)
        coeff = to_spectral(chain, vec)
        expected = np.zeros(17)
        expected[mode.index - 1] = 1.0
        np.testing.assert_allclose(coeff, expected, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 17, 500])
def test_transform_unitarity_and_round_trip(n):
    chain = ChainSpec(n_sites=n)
    rng = np.random.default_rng(n)
    for _ in range(5):
        state = random_state(rng, n)
        coeff = to_spectral(chain, state)
        assert abs(np.linalg.norm(coeff) - 1) < 1e-10
        back = to_position(chain, coeff)
        np.testing.assert_allclose(back, state, atol=1e-10)


def test_transform_matches_dst_oracle():
    # independent route: orthonormal DST-I is the same kernel
    chain = ChainSpec(n_sites=257)
    rng = np.random.default_rng(7)
    state = random_state(rng, 257)
    ours = to_spectral(chain, state)
    reference = scipy.fft.dst(state, type=1, norm="ortho")
    np.testing.assert_allclose(ours, reference, atol=1e-12)


def test_transform_rejects_wrong_length():
    chain = ChainSpec(n_sites=5)
    with pytest.raises(ValueError):
        to_spectral(chain, np.ones(4))
    with pytest.raises(ValueError):
        to_position(chain, np.ones(6))


def test_zero_maps_to_zero():
    chain = ChainSpec(n_sites=9)
    np.testing.assert_array_equal(to_position(chain, np.zeros(9)), np.zeros(9))


@pytest.mark.parametrize("n", [2, 7, 50])
def test_spectral_theorem_against_dense_hamiltonian(n):
    chain = ChainSpec(n_sites=n, hopping=1.3)
    h = hamiltonian_matrix(chain)
    j = np.arange(1, n + 1)
    for mode in eigen_modes(chain):
        vec = np.sqrt(2 / (n + 1)) * np.sin(mode.wavenumber * j)
        np.testing.assert_allclose(h @ vec, mode.energy * vec, atol=1e-9)


def test_reflect_moves_amplitudes():
    chain = ChainSpec(n_sites=3)
    np.testing.assert_array_equal(reflect(chain, np.array([1.0, 0.0, 0.0])),
                                  np.array([0.0, 0.0, 1.0]))


def test_reflect_is_involution():
    chain = ChainSpec(n_sites=23)
    state = random_state(np.random.default_rng(1), 23)
    np.testing.assert_allclose(reflect(chain, reflect(chain, state)), state, atol=0)


def test_reflect_eigenmode_parity():
    chain = ChainSpec(n_sites=17)
    j = np.arange(1, 18)
    for mode in eigen_modes(chain):
        vec = np.sqrt(2 / 18) * np.sin(mode.wavenumber * j).astype(complex)
        np.testing.assert_allclose(reflect(chain, vec), mode.parity * vec, atol=1e-10)


def test_inner_product_properties():
    rng = np.random.default_rng(3)
    a = random_state(rng, 11)
    b = random_state(rng, 11)
    assert inner_product(a, a) == pytest.approx(1.0)
    assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)))
    # conjugate-linear in the first argument
    assert inner_product(2j * a, b) == pytest.approx(-2j * inner_product(a, b))
    with pytest.raises(ValueError):
        inner_product(a, b[:5])


def test_inner_product_orthogonal_modes():
    chain = ChainSpec(n_sites=12)
    j = np.arange(1, 13)
    modes = eigen_modes(chain)
    v1 = np.sqrt(2 / 13) * np.sin(modes[0].wavenumber * j)
    v5 = np.sqrt(2 / 13) * np.sin(modes[4].wavenumber * j)
    assert abs(inner_product(v1, v5)) < 1e-12
