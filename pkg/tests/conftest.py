import numpy as np
import pytest
from hypothesis import strategies as st


def random_bloch(rng, pure=False):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v if pure else v * rng.uniform() ** (1 / 3)


def random_state(rng, k):
    """Random full-rank density matrix on ``k`` qubits."""
    d = 2 ** k
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return m / np.trace(m)


def random_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@st.composite
def bloch_vectors(draw, pure=False):
    theta = draw(st.floats(0, np.pi))
    phi = draw(st.floats(0, 2 * np.pi))
    r = 1.0 if pure else draw(st.floats(0, 1))
    return r * np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


etas = st.floats(0, np.pi / 2)
