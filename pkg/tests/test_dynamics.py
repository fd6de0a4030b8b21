import numpy as np
import pytest
from hypothesis import given, settings

from homogenizer import dynamics, gates
from homogenizer.errors import ConfigurationError
from homogenizer.qcore import (
    apply_unitary,
    bloch_distance,
    bloch_to_density,
    density_to_bloch,
    kron_all,
    partial_trace,
)

from conftest import bloch_vectors, etas, random_bloch

ZERO, ONE, PLUS = np.array([0, 0, 1.0]), np.array([0, 0, -1.0]), np.array([1.0, 0, 0])


def brute_cswap(beta, alpha, eta):
    """8x8 conjugation of control (x) system (x) reservoir, then marginals."""
    m = kron_all([gates.control_state(eta), bloch_to_density(beta), bloch_to_density(alpha)])
    u = gates.cswap()
    out = u @ m @ u.conj().T
    return [density_to_bloch(partial_trace(out, [q])) for q in (0, 1, 2)]


def brute_pswap(beta, alpha, eta):
    m = np.kron(bloch_to_density(beta), bloch_to_density(alpha))
    u = gates.pswap(eta)
    out = u @ m @ u.conj().T
    return [density_to_bloch(partial_trace(out, [q])) for q in (0, 1)]


def test_cross_coefficient_from_oracle():
    # a single 4x4 fit; the remaining tests show it reproduces every instance
    assert dynamics.pswap_cross_coefficient() == pytest.approx(1.0, abs=1e-12)


class TestCswapStep:
    def test_full_swap(self, rng):
        b, a = random_bloch(rng), random_bloch(rng)
        res = dynamics.cswap_step(b, a, np.pi / 2)
        np.testing.assert_allclose(res.system, a, atol=1e-15)
        np.testing.assert_allclose(res.reservoir, b, atol=1e-15)

    def test_no_coupling(self, rng):
        b, a = random_bloch(rng), random_bloch(rng)
        res = dynamics.cswap_step(b, a, 0.0)
        np.testing.assert_array_equal(res.system, b)
        np.testing.assert_array_equal(res.reservoir, a)

    def test_against_8x8_oracle(self, rng):
        worst = 0.0
        for _ in range(200):
            b, a = random_bloch(rng), random_bloch(rng)
            eta = rng.uniform(0, np.pi / 2)
            ctrl, sys, res = brute_cswap(b, a, eta)
            step = dynamics.cswap_step(b, a, eta)
            worst = max(worst, np.abs(step.system - sys).max(),
                        np.abs(step.reservoir - res).max(), np.abs(step.control - ctrl).max())
        assert worst <= 1e-12

    @given(bloch_vectors(), bloch_vectors(), etas)
    @settings(max_examples=200)
    def test_sum_conserved_and_non_expansive(self, b, a, eta):
        res = dynamics.cswap_step(b, a, eta)
        np.testing.assert_allclose(res.system + res.reservoir, b + a, atol=1e-12)
        assert bloch_distance(res.system, res.reservoir) <= bloch_distance(b, a) + 1e-12
        assert np.linalg.norm(res.system) <= 1 + 1e-12
        assert np.linalg.norm(res.control) <= 1 + 1e-12


class TestPswapStep:
    def test_against_4x4_oracle_1000(self, rng):
        worst = 0.0
        for _ in range(1000):
            b, a = random_bloch(rng), random_bloch(rng)
            eta = rng.uniform(0, np.pi / 2)
            sys, res = brute_pswap(b, a, eta)
            step = dynamics.pswap_step(b, a, eta)
            worst = max(worst, np.abs(step.system - sys).max(), np.abs(step.reservoir - res).max())
        assert worst <= 1e-12

    def test_reduces_to_cswap_when_parallel(self, rng):
        b = random_bloch(rng)
        a = 0.4 * b
        eta = 0.7
        np.testing.assert_allclose(dynamics.pswap_step(b, a, eta).system,
                                   dynamics.cswap_step(b, a, eta).system, atol=1e-15)
        np.testing.assert_allclose(dynamics.pswap_step(b, PLUS, 0.0).system, b)

    def test_full_swap(self, rng):
        b, a = random_bloch(rng), random_bloch(rng)
        res = dynamics.pswap_step(b, a, np.pi / 2)
        np.testing.assert_allclose(res.system, a, atol=1e-15)

    @given(bloch_vectors(), bloch_vectors(), etas)
    @settings(max_examples=200)
    def test_non_expansive(self, b, a, eta):
        res = dynamics.pswap_step(b, a, eta)
        assert bloch_distance(res.system, res.reservoir) <= bloch_distance(b, a) + 1e-12
        assert np.linalg.norm(res.system) <= 1 + 1e-12


class TestJointStates:
    def test_cswap_joint(self, rng):
        for _ in range(20):
            b, a = random_bloch(rng), random_bloch(rng)
            eta = rng.uniform(0, np.pi / 2)
            m = kron_all([gates.control_state(eta), bloch_to_density(b), bloch_to_density(a)])
            out = apply_unitary(m, gates.cswap(), [0, 1, 2])
            assert np.abs(partial_trace(out, [1, 2])
                          - dynamics.cswap_joint_state(b, a, eta)).max() <= 1e-12

    def test_pswap_joint(self, rng):
        for _ in range(20):
            b, a = random_bloch(rng), random_bloch(rng)
            eta = rng.uniform(0, np.pi / 2)
            m = np.kron(bloch_to_density(b), bloch_to_density(a))
            u = gates.pswap(eta)
            assert np.abs(u @ m @ u.conj().T
                          - dynamics.pswap_joint_state(b, a, eta)).max() <= 1e-12

    def test_printed_form_differs_for_generic_states(self, rng):
        b, a = random_bloch(rng), random_bloch(rng)
        gap = np.abs(dynamics.pswap_joint_state(b, a, 0.6)
                     - dynamics.pswap_joint_state_printed(b, a, 0.6)).max()
        assert gap > 1e-3


class TestSinglePass:
    def test_zero_steps(self):
        tr = dynamics.homogenize_single_pass(ZERO, PLUS, 0, 0.3, "cswap")
        assert tr.steps == 0
        np.testing.assert_array_equal(tr.systems, [ZERO])

    def test_cswap_closed_form(self, rng):
        for _ in range(20):
            b, a = random_bloch(rng), random_bloch(rng)
            eta = rng.uniform(0, np.pi / 2)
            N = int(rng.integers(1, 40))
            tr = dynamics.homogenize_single_pass(b, a, N, eta, "cswap")
            c2n = np.cos(eta) ** (2 * N)
            np.testing.assert_allclose(tr.final_system, c2n * b + (1 - c2n) * a, atol=1e-12)

    def test_cswap_geometric_distance(self):
        eta = np.pi / 8
        tr = dynamics.homogenize_single_pass(ZERO, PLUS, 30, eta, "cswap")
        k = np.arange(31)
        expected = np.sqrt(2) * np.cos(eta) ** (2 * k)
        np.testing.assert_allclose(tr.distance, expected, atol=1e-12)

    @pytest.mark.parametrize("protocol", ["pswap", "cswap"])
    def test_plus_target_convergence(self, protocol):
        tr = dynamics.homogenize_single_pass(ZERO, PLUS, 20, np.pi / 4, protocol)
        assert np.all(np.diff(tr.fidelity) >= -1e-12)
        assert tr.fidelity[-1] >= 0.99

    @pytest.mark.parametrize("protocol", ["pswap", "cswap"])
    def test_fidelity_monotone_random(self, rng, protocol):
        # a drop would be a finding; none observed across these draws
        for _ in range(100):
            b, a = random_bloch(rng), random_bloch(rng)
            tr = dynamics.homogenize_single_pass(b, a, 15, rng.uniform(0, np.pi / 2), protocol)
            assert np.all(np.diff(tr.fidelity) >= -1e-12)

    def test_bad_protocol(self):
        with pytest.raises(ConfigurationError):
            dynamics.homogenize_single_pass(ZERO, PLUS, 3, 0.3, "iswap")


class TestRepeated:
    def test_single_system_matches_single_pass(self, rng):
        b, a = random_bloch(rng), random_bloch(rng)
        for protocol in ("pswap", "cswap"):
            rep = dynamics.homogenize_repeated([b], a, 7, 0.4, protocol)
            one = dynamics.homogenize_single_pass(b, a, 7, 0.4, protocol)
            np.testing.assert_array_equal(rep[0].systems, one.systems)
            np.testing.assert_array_equal(rep[0].reservoirs, one.reservoirs)

    def test_first_reservoir_closed_form(self, rng):
        for _ in range(20):
            b, a = random_bloch(rng), random_bloch(rng)
            eta = rng.uniform(0, np.pi / 2)
            n = int(rng.integers(1, 11))
            traces = dynamics.homogenize_repeated([b] * n, a, n + 2, eta, "cswap")
            c2n = np.cos(eta) ** (2 * n)
            np.testing.assert_allclose(traces[-1].reservoir_final[0],
                                       (1 - c2n) * b + c2n * a, atol=1e-12)

    def test_reuse_needs_distinct_controls(self):
        with pytest.raises(ConfigurationError):
            dynamics.homogenize_repeated([ZERO] * 3, PLUS, 2, 0.3, "cswap")
        dynamics.homogenize_repeated([ZERO] * 3, PLUS, 2, 0.3, "pswap")

    def test_control_assignment_never_repeats(self):
        for N in range(1, 8):
            for n in range(1, N + 1):
                pairs = {(dynamics.control_index(i, j, N), j) for i in range(n) for j in range(N)}
                assert len(pairs) == n * N
                for i in range(n):
                    assert len({dynamics.control_index(i, j, N) for j in range(N)}) == N

    def test_counters(self):
        res = dynamics.ReservoirState.uniform(PLUS, 4)
        dynamics._pass(ZERO, res, 0.3, "cswap", PLUS)
        dynamics._pass(ZERO, res, 0.3, "cswap", PLUS, 1)
        np.testing.assert_array_equal(res.counts, [2, 2, 2, 2])
