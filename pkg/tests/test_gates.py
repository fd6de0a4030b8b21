import itertools

import numpy as np
import pytest

from homogenizer import gates
from homogenizer.errors import DomainError
from homogenizer.qcore import density_to_bloch, purity


def basis(bits):
    v = np.zeros(2 ** len(bits))
    v[int("".join(map(str, bits)), 2)] = 1
    return v


def test_pswap_endpoints():
    np.testing.assert_allclose(gates.pswap(0.0), np.eye(4))
    np.testing.assert_allclose(gates.pswap(np.pi / 2), 1j * gates.SWAP, atol=1e-15)


def test_pswap_unitary(rng):
    for eta in rng.uniform(0, np.pi / 2, 20):
        u = gates.pswap(eta)
        assert np.abs(u.conj().T @ u - np.eye(4)).max() <= 1e-12
        assert np.abs(u @ gates.SWAP - gates.SWAP @ u).max() <= 1e-15


@pytest.mark.parametrize("eta", [-0.1, 2.0, float("nan")])
def test_coupling_domain(eta):
    with pytest.raises(DomainError):
        gates.pswap(eta)


def test_coupling_identity(rng):
    for eta in rng.uniform(0, np.pi / 2, 20):
        c, s = gates.coupling(eta)
        assert abs(c * c + s * s - 1) <= 1e-15


@pytest.mark.parametrize("a,b", list(itertools.product([0, 1], repeat=2)))
def test_cswap_basis_action(a, b):
    u = gates.cswap()
    np.testing.assert_array_equal(u @ basis([1, a, b]), basis([1, b, a]))
    np.testing.assert_array_equal(u @ basis([0, a, b]), basis([0, a, b]))


def test_cswap_structure():
    u = gates.cswap()
    assert np.all(u.imag == 0)
    np.testing.assert_array_equal(u, u.T)
    np.testing.assert_array_equal(u @ u, np.eye(8))


def test_control_state(rng):
    np.testing.assert_allclose(gates.control_state(0.0), np.diag([1, 0]))
    np.testing.assert_allclose(gates.control_state(np.pi / 4), np.full((2, 2), 0.5), atol=1e-15)
    for eta in rng.uniform(0, np.pi / 2, 20):
        m = gates.control_state(eta)
        assert abs(purity(m) - 1) <= 1e-12
        b = density_to_bloch(m)
        np.testing.assert_allclose(b, gates.control_bloch(eta), atol=1e-15)
        assert b[2] == pytest.approx(2 * np.cos(eta) ** 2 - 1, abs=1e-15)
