"""Tests for the Grover iteration engine and trajectory recording."""

import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from groverian import (
    MarkedSet,
    OptimizerOptions,
    RegisterState,
    diffusion_apply,
    eta,
    ghz,
    grover_step,
    optimal_iterations,
    oracle_apply,
    run,
    success_probability_estimate,
)
from groverian.grover_engine import TrajectoryPoint, write_trajectory_csv

from conftest import permute_qubits, random_register_state


class TestMarkedSet:
    def test_sorted_on_construction(self):
        assert MarkedSet(3, (5, 1, 2)).indices == (1, 2, 5)

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="distinct"):
            MarkedSet(3, (1, 1))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="range"):
            MarkedSet(2, (4,))
        with pytest.raises(ValueError, match="range"):
            MarkedSet(2, (-1,))

    def test_rejects_empty_and_full(self):
        with pytest.raises(ValueError):
            MarkedSet(2, ())
        with pytest.raises(ValueError):
            MarkedSet(1, (0, 1))


class TestOracle:
    def test_flips_single_amplitude(self):
        flipped = oracle_apply(eta(2), MarkedSet(2, (3,)))
        assert_allclose(flipped.amplitudes, [0.5, 0.5, 0.5, -0.5])

    def test_basis_word_gets_global_sign(self):
        state = RegisterState(2, [1, 0, 0, 0])
        assert_allclose(oracle_apply(state, MarkedSet(2, (0,))).amplitudes, [-1, 0, 0, 0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="differ"):
            oracle_apply(eta(2), MarkedSet(3, (0,)))

    @given(st.integers(0, 2**32 - 1), st.integers(1, 5))
    @settings(max_examples=25, deadline=None)
    def test_involution(self, seed, n):
        rng = np.random.default_rng(seed)
        psi = random_register_state(rng, n)
        marked = MarkedSet(n, tuple(rng.choice(1 << n, size=min(3, 1 << (n - 1)), replace=False)))
        twice = oracle_apply(oracle_apply(psi, marked), marked)
        assert_allclose(twice.amplitudes, psi.amplitudes, atol=1e-12)


class TestDiffusion:
    def test_eta_is_fixed_point(self):
        for n in (1, 4):
            assert_allclose(diffusion_apply(eta(n)).amplitudes, eta(n).amplitudes, atol=1e-15)

    def test_basis_word(self):
        # mean is 1/4, so amplitudes become 2/4 - a_i
        state = RegisterState(2, [1, 0, 0, 0])
        assert_allclose(diffusion_apply(state).amplitudes, [-0.5, 0.5, 0.5, 0.5])

    @given(st.integers(0, 2**32 - 1), st.integers(1, 5))
    @settings(max_examples=25, deadline=None)
    def test_involution_and_unitarity(self, seed, n):
        rng = np.random.default_rng(seed)
        psi = random_register_state(rng, n)
        once = diffusion_apply(psi)
        assert abs(np.sum(np.abs(once.amplitudes) ** 2) - 1) < 1e-12
        assert_allclose(diffusion_apply(once).amplitudes, psi.amplitudes, atol=1e-12)


class TestGroverStep:
    def test_four_words_one_step_succeeds(self):
        after = grover_step(eta(2), MarkedSet(2, (0,)))
        assert_allclose(abs(after.amplitudes[0]) ** 2, 1.0, atol=1e-12)

    def test_sixteen_words_three_steps(self):
        state = eta(4)
        marked = MarkedSet(4, (0,))
        for _ in range(3):
            state = grover_step(state, marked)
        expected = math.sin(7 * math.asin(0.25)) ** 2
        assert_allclose(abs(state.amplitudes[0]) ** 2, expected, atol=1e-12)

    def test_zero_mean_unmarked_state_flips_sign(self):
        inv = 1 / math.sqrt(2)
        psi = RegisterState(2, [0.0, inv, -inv, 0.0])
        stepped = grover_step(psi, MarkedSet(2, (0,)))
        assert_allclose(stepped.amplitudes, -psi.amplitudes, atol=1e-15)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=20, deadline=None)
    def test_unitarity(self, seed):
        rng = np.random.default_rng(seed)
        psi = random_register_state(rng, 4)
        marked = MarkedSet(4, (int(rng.integers(16)),))
        stepped = grover_step(psi, marked)
        assert abs(np.sum(np.abs(stepped.amplitudes) ** 2) - 1) < 1e-12


class TestOptimalIterations:
    def test_single_marked_of_4096(self):
        sched = optimal_iterations(12, 1)
        assert sched.tau_approx == 50
        assert sched.tau_exact == 49

    def test_half_marked_degenerates_to_zero(self):
        assert optimal_iterations(2, 2).tau_exact == 0

    def test_sixteen_words_formula_as_written(self):
        # the exact formula evaluates to 2 here while the approximation gives 3
        sched = optimal_iterations(4, 1)
        assert sched.tau_exact == 2
        assert sched.tau_approx == 3

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            optimal_iterations(3, 0)
        with pytest.raises(ValueError):
            optimal_iterations(3, 8)


class TestSuccessEstimate:
    def test_eta_is_one(self):
        assert_allclose(success_probability_estimate(eta(5)), 1.0)

    def test_zero_mean_state(self):
        inv = 1 / math.sqrt(2)
        assert_allclose(success_probability_estimate(RegisterState(1, [inv, -inv])), 0.0)

    def test_ghz_large_register(self):
        assert_allclose(success_probability_estimate(ghz(12)), 2 / 4096, atol=1e-15)


class TestRun:
    def test_zero_steps_single_point(self):
        points = run(ghz(3), MarkedSet(3, (0, 7)), 0)
        assert len(points) == 1
        assert points[0].t == 0
        assert_allclose(points[0].success_prob, 1.0, atol=1e-12)

    def test_rejects_negative_steps(self):
        with pytest.raises(ValueError, match=">= 0"):
            run(eta(2), MarkedSet(2, (0,)), -1)

    def test_two_dimensional_rotation_identity(self):
        # from eta with one marked word the dynamics reduce to a rotation:
        # |a_m(t)| = sin((2t+1) asin(1/sqrt(N)))
        theta = math.asin(1 / math.sqrt(4096))
        points = run(eta(12), MarkedSet(12, (0,)), 50)
        for p in points:
            expected = math.sin((2 * p.t + 1) * theta)
            assert abs(math.sqrt(p.success_prob) - expected) < 1e-10

    def test_near_certain_success_at_optimum(self):
        points = run(eta(12), MarkedSet(12, (0,)), 50)
        assert points[49].success_prob > 0.99
        assert points[50].success_prob > 0.99

    def test_unmarked_amplitudes_stay_equal(self):
        points = run(eta(10), MarkedSet(10, (17,)), 30)
        state = eta(10)
        for _ in range(30):
            state = grover_step(state, MarkedSet(10, (17,)))
        rest = np.delete(state.amplitudes, 17)
        assert np.max(np.abs(rest - rest[0])) < 1e-12
        assert len(points) == 31

    def test_record_groverian(self):
        opts = OptimizerOptions(restarts=8, seed=3)
        points = run(eta(3), MarkedSet(3, (5,)), 2, record_groverian=True, measure_opts=opts)
        assert all(p.groverian is not None for p in points)
        assert all(0.0 <= p.groverian <= 1.0 for p in points)
        # eta is a product state
        assert points[0].groverian < 1e-6

    def test_without_recording_groverian_is_none(self):
        points = run(eta(2), MarkedSet(2, (1,)), 1)
        assert all(p.groverian is None for p in points)


class TestPermutationSymmetry:
    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_success_probability_invariant_under_relabeling(self, seed):
        rng = np.random.default_rng(seed)
        n = 4
        psi = random_register_state(rng, n)
        marked = tuple(int(i) for i in rng.choice(1 << n, size=3, replace=False))
        perm = list(rng.permutation(n))

        def relabel(i: int) -> int:
            bits = [(i >> (n - 1 - j)) & 1 for j in range(n)]
            out = 0
            for j, p in enumerate(perm):
                out = (out << 1) | bits[p]
            return out

        psi_p = RegisterState(n, permute_qubits(psi.amplitudes, n, perm))
        marked_p = tuple(relabel(i) for i in marked)
        base = run(psi, MarkedSet(n, marked), 6)
        moved = run(psi_p, MarkedSet(n, marked_p), 6)
        for p, q in zip(base, moved):
            assert abs(p.success_prob - q.success_prob) < 1e-12


class TestTrajectoryCsv:
    def test_format(self):
        points = [
            TrajectoryPoint(0, 0.25 + 0.0j, 0.0625, None),
            TrajectoryPoint(1, 0.125 + 0.5j, 0.25, 0.123456789012345),
        ]
        buf = io.StringIO()
        write_trajectory_csv(points, buf, comment="cfg")
        lines = buf.getvalue().splitlines()
        assert lines[0] == "# cfg"
        assert lines[1] == "t,mean_re,mean_im,p_success,groverian"
        assert lines[2] == "0,0.25,0,0.0625,"
        assert lines[3].startswith("1,0.125,0.5,0.25,0.123456789012")
