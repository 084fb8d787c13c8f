"""Multi-start alternating maximizer: examples, oracles, and properties."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from groverian import (
    NormalizationError,
    ProductState,
    PureState,
    RealAngles,
    SingleQubitState,
    SolverConfig,
    apply_single_qubit_unitary,
    ascent_history,
    basis_state,
    gghz,
    ghz,
    gradient_real,
    groverian,
    objective_real,
    overlap,
    permute_qubits,
    pmax_alternating,
    pmax_gridsearch,
    random_single_qubit_unitary,
    random_state,
    real_angles_to_product,
    schmidt_pmax_2qubit,
    uniform,
    w,
)


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs,field",
        [
            ({"n_starts": 0}, "n_starts"),
            ({"max_sweeps": 0}, "max_sweeps"),
            ({"tol": 0.0}, "tol"),
            ({"rng_seed": -1}, "rng_seed"),
            ({"restriction": "bloch"}, "restriction"),
        ],
    )
    def test_validation(self, kwargs, field):
        with pytest.raises(ValueError, match=field):
            SolverConfig(**kwargs)

    def test_defaults(self):
        cfg = SolverConfig()
        assert cfg.n_starts == 32
        assert cfg.max_sweeps == 500
        assert cfg.tol == 1e-12


class TestAlternating:
    def test_ghz3(self):
        r = pmax_alternating(ghz(3))
        assert abs(r.pmax - 0.5) < 1e-9
        assert r.converged

    def test_uniform_is_product(self):
        assert abs(pmax_alternating(uniform(3)).pmax - 1.0) < 1e-12

    def test_w4(self):
        assert abs(pmax_alternating(w(4)).pmax - 27.0 / 64.0) < 1e-9

    def test_single_qubit_state_is_product(self):
        rng = np.random.default_rng(0)
        assert abs(pmax_alternating(random_state(1, rng)).pmax - 1.0) < 1e-12

    def test_deterministic_given_seed(self):
        rng = np.random.default_rng(5)
        psi = random_state(3, rng)
        a = pmax_alternating(psi)
        b = pmax_alternating(psi)
        assert a.pmax == b.pmax
        assert a.best_start == b.best_start
        np.testing.assert_array_equal(a.optimizer.factor_matrix(), b.optimizer.factor_matrix())

    def test_seed_independence_of_the_maximum(self):
        psi = w(3)
        values = {round(pmax_alternating(psi, SolverConfig(rng_seed=s)).pmax, 9) for s in range(5)}
        assert values == {round(4.0 / 9.0, 9)}

    def test_basis_start_guarantees_amplitude_bound(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            psi = random_state(3, rng)
            r = pmax_alternating(psi, SolverConfig(n_starts=1))
            assert r.pmax >= float(np.max(np.abs(psi.amplitudes) ** 2)) - 1e-9

    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 4))
    @settings(max_examples=25, deadline=None)
    def test_result_bounds(self, seed, n):
        rng = np.random.default_rng(seed)
        psi = random_state(n, rng)
        r = pmax_alternating(psi, SolverConfig(n_starts=8, rng_seed=seed))
        assert r.pmax <= 1.0 + 1e-12
        assert r.pmax >= float(np.max(np.abs(psi.amplitudes) ** 2)) - 1e-9
        assert abs(abs(overlap(psi, r.optimizer)) ** 2 - r.pmax) < 1e-10

    def test_non_normalized_rejected(self):
        psi = ghz(2)
        bad = object.__new__(PureState)
        object.__setattr__(bad, "amplitudes", psi.amplitudes * 1.01)
        with pytest.raises(NormalizationError):
            pmax_alternating(bad)

    def test_real_plane_restriction_on_ghz(self):
        r = pmax_alternating(ghz(3), SolverConfig(restriction="real_plane"))
        assert abs(r.pmax - 0.5) < 1e-9

    def test_real_plane_rejects_complex_states(self):
        rng = np.random.default_rng(2)
        with pytest.raises(ValueError, match="real"):
            pmax_alternating(random_state(2, rng), SolverConfig(restriction="real_plane"))


class TestMonotoneAscent:
    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_history_is_nondecreasing(self, seed):
        rng = np.random.default_rng(seed)
        psi = random_state(3, rng)
        start = ProductState(
            tuple(SingleQubitState(*(random_state(1, rng).amplitudes)) for _ in range(3))
        )
        history = ascent_history(psi, start)
        assert np.all(np.diff(history) >= -1e-12)

    def test_degenerate_environment_keeps_previous_factor(self):
        # |00> against a start whose second factor is orthogonal to the live
        # branch: the first environment vanishes, later sweeps recover fully.
        psi = basis_state(2, 0)
        start = ProductState((SingleQubitState(1, 0), SingleQubitState(0, 1)))
        history = ascent_history(psi, start)
        assert history[0] == pytest.approx(0.0, abs=1e-15)
        assert history[-1] == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.diff(history) >= -1e-12)


class TestOracleAgreement:
    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_two_qubit_schmidt_value(self, seed):
        rng = np.random.default_rng(seed)
        psi = random_state(2, rng)
        r = pmax_alternating(psi, SolverConfig(rng_seed=seed))
        assert abs(r.pmax - schmidt_pmax_2qubit(psi)) < 1e-7

    def test_real_three_qubit_grid_lower_bound(self):
        rng = np.random.default_rng(99)
        for _ in range(5):
            psi = random_state(3, rng, real=True)
            assert pmax_alternating(psi).pmax >= pmax_gridsearch(psi, 61) - 1e-6

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(31)
        for _ in range(5):
            psi = random_state(3, rng)
            rotated = psi
            for k in range(3):
                rotated = apply_single_qubit_unitary(rotated, k, random_single_qubit_unitary(rng))
            assert abs(pmax_alternating(psi).pmax - pmax_alternating(rotated).pmax) < 1e-7

    def test_qubit_permutation_invariance(self):
        rng = np.random.default_rng(32)
        psi = random_state(4, rng)
        for perm in ([1, 0, 3, 2], [3, 2, 1, 0], [2, 3, 0, 1]):
            assert abs(
                pmax_alternating(psi).pmax - pmax_alternating(permute_qubits(psi, perm)).pmax
            ) < 1e-9


class TestRealObjective:
    def test_ghz_values(self):
        assert objective_real(ghz(3), RealAngles((0, 0, 0))) == pytest.approx(0.5, abs=1e-14)
        assert objective_real(ghz(3), RealAngles((math.pi / 4,) * 3)) == pytest.approx(0.25, abs=1e-14)
        assert objective_real(ghz(3), RealAngles((math.pi / 2,) * 3)) == pytest.approx(0.5, abs=1e-14)

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_matches_squared_overlap(self, seed):
        rng = np.random.default_rng(seed)
        psi = random_state(3, rng, real=True)
        thetas = RealAngles(tuple(rng.uniform(-math.pi / 2, math.pi / 2, 3)))
        direct = objective_real(psi, thetas)
        via_overlap = abs(overlap(psi, real_angles_to_product(thetas))) ** 2
        assert abs(direct - via_overlap) < 1e-14

    def test_rejects_complex_state(self):
        rng = np.random.default_rng(1)
        with pytest.raises(ValueError, match="real"):
            objective_real(random_state(2, rng), RealAngles((0.0, 0.0)))

    def test_rejects_wrong_arity(self):
        with pytest.raises(ValueError, match="angles"):
            objective_real(ghz(3), RealAngles((0.0, 0.0)))


class TestGradient:
    def test_stationary_points(self):
        np.testing.assert_allclose(gradient_real(ghz(3), RealAngles((0, 0, 0))), 0.0, atol=1e-14)
        np.testing.assert_allclose(
            gradient_real(ghz(3), RealAngles((math.pi / 4,) * 3)), 0.0, atol=1e-14
        )

    def test_against_central_differences(self):
        rng = np.random.default_rng(55)
        step = 1e-6
        for _ in range(100):
            psi = random_state(3, rng, real=True)
            thetas = rng.uniform(-math.pi / 2 + step, math.pi / 2 - step, 3)
            grad = gradient_real(psi, RealAngles(tuple(thetas)))
            for i in range(3):
                plus, minus = thetas.copy(), thetas.copy()
                plus[i] += step
                minus[i] -= step
                fd = (
                    objective_real(psi, RealAngles(tuple(plus)))
                    - objective_real(psi, RealAngles(tuple(minus)))
                ) / (2 * step)
                assert abs(grad[i] - fd) < 1e-6


class TestGridSearch:
    def test_ghz3(self):
        assert abs(pmax_gridsearch(ghz(3), 181) - 0.5) < 1e-3

    def test_basis_state_hit_exactly(self):
        assert pmax_gridsearch(basis_state(3, 0), 61) == 1.0

    def test_gghz(self):
        assert abs(pmax_gridsearch(gghz(3, a=0.8), 181) - 0.64) < 1e-3

    def test_is_a_lower_bound(self):
        rng = np.random.default_rng(77)
        for _ in range(3):
            psi = random_state(2, rng, real=True)
            assert pmax_gridsearch(psi, 61) <= schmidt_pmax_2qubit(psi) + 1e-12

    def test_guards(self):
        with pytest.raises(ValueError, match="resolution"):
            pmax_gridsearch(ghz(3), 2)
        with pytest.raises(ValueError, match="budget"):
            pmax_gridsearch(ghz(3), 1000)
        rng = np.random.default_rng(1)
        with pytest.raises(ValueError, match="real"):
            pmax_gridsearch(random_state(2, rng), 21)


class TestGroverianValue:
    def test_ghz3(self):
        assert abs(groverian(ghz(3)) - 0.70710678) < 1e-6

    def test_uniform5(self):
        assert groverian(uniform(5)) < 1e-6

    def test_w4(self):
        assert abs(groverian(w(4)) - math.sqrt(37.0) / 8.0) < 1e-6
