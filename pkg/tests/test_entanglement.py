import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as hst
from scipy.optimize import approx_fprime

from twofermion import entanglement as ent
from twofermion import states as st
from twofermion.errors import DegenerateSector, NotAState, OutOfRange

from .conftest import ssr_states

FAST = ent.OracleConfig(restarts=4, seed=1)


def x_state_concurrence(state: st.SSRState) -> float:
    """Closed-form concurrence of a two-qubit X state (independent of the eigenvalue route)."""
    return 2 * max(0.0, abs(state.b1) - math.sqrt(state.w2 * state.v2), abs(state.b2) - math.sqrt(state.w1 * state.v1))


class TestBinaryEntropy:
    def test_values(self):
        assert ent.binary_entropy(0) == 0 and ent.binary_entropy(1) == 0
        assert ent.binary_entropy(0.5) == 1

    def test_range(self):
        with pytest.raises(OutOfRange):
            ent.binary_entropy(1.5)

    def test_matches_xi_expression(self):
        assert math.isclose(ent.sector_entropy_from_xi(0.5), ent.binary_entropy(0.75), abs_tol=1e-15)
        for x in np.linspace(-1, 1, 101):
            assert math.isclose(ent.sector_entropy_from_xi(x), ent.binary_entropy((1 + x) / 2), abs_tol=1e-14)


class TestXi:
    def test_values(self):
        assert ent.xi(0.25, 0.25, 0.1j) == 0
        assert ent.xi(3 / 8, 1 / 8, 0) == 1
        assert math.isclose(ent.xi(3 / 8, 1 / 8, math.sqrt(3) / 8), 0.5, abs_tol=1e-15)

    def test_degenerate(self):
        with pytest.raises(DegenerateSector):
            ent.xi(0.2, 0.2, 0)

    @given(ssr_states())
    def test_range(self, state):
        for i in (1, 2):
            w, v, b = state.sector(i)
            if not ent.is_degenerate(w, v, b):
                assert -1 <= ent.xi(w, v, b) <= 1


class TestClosedForm:
    @pytest.mark.parametrize("gamma", [-1 / 3, -0.1, 0.1, 1 / 3, 0.5, 0.9, 1])
    def test_werner(self, gamma):
        assert abs(ent.eof_closed_form(st.werner(gamma)).total - (1 + gamma) / 2) <= 1e-12

    def test_werner_zero(self):
        assert ent.eof_closed_form(st.werner(0)).total == 0

    def test_diagonal_is_zero(self):
        assert ent.eof_closed_form(st.diagonal_state([0.4, 0.3, 0.2, 0.1])).total == 0

    def test_balanced_even_sector(self):
        s = st.SSRState(w1=0.25, v1=0.25, b1=0.25, w2=0.25, v2=0.25)
        res = ent.eof_closed_form(s)
        assert math.isclose(res.total, 0.5, abs_tol=1e-15)
        assert res.sectors[0].xi == 0 and res.sectors[1].degenerate

    def test_zero_weight_sector(self):
        res = ent.eof_closed_form(st.werner(1))
        assert res.sectors[1].weight == 0 and res.sectors[1].entropy == 0

    @given(ssr_states())
    def test_range(self, state):
        assert 0 <= ent.eof_closed_form(state).total <= 1 + 1e-15

    @given(ssr_states(), hst.floats(0, 2 * math.pi), hst.floats(0, 2 * math.pi))
    def test_phase_invariance(self, state, p1, p2):
        rotated = st.SSRState(
            w1=state.w1, w2=state.w2, v1=state.v1, v2=state.v2,
            b1=state.b1 * np.exp(1j * p1), b2=state.b2 * np.exp(1j * p2),
        )
        assert abs(ent.eof_closed_form(rotated).total - ent.eof_closed_form(state).total) <= 1e-12

    @given(ssr_states())
    def test_spectral_ensemble_identity(self, state):
        ens = ent.spectral_ensemble(state)
        assert ens.reconstruction_error(state) <= 1e-12
        assert abs(ens.average_entropy() - ent.eof_closed_form(state).total) <= 1e-10

    def test_degenerate_branch_uses_fock_ensemble(self):
        s = st.superseparable(0.3)
        ens = ent.spectral_ensemble(s)
        assert ens.average_entropy() == 0
        assert ens.reconstruction_error(s) <= 1e-15

    def test_zero_iff_separable(self):
        for k in range(300):
            s = st.random_state(k)
            assert (ent.eof_closed_form(s).total == 0) == st.is_separable(s)


class TestConcurrence:
    def test_werner_values(self):
        assert ent.wootters_concurrence(st.werner(1 / 3).to_matrix()) <= 1e-10
        assert abs(ent.wootters_concurrence(st.werner(1).to_matrix()) - 1) <= 1e-10
        assert abs(ent.wootters_concurrence(st.werner(0.5).to_matrix()) - 0.25) <= 1e-10

    @given(ssr_states())
    def test_matches_x_state_formula(self, state):
        assert abs(ent.wootters_concurrence(state.to_matrix()) - x_state_concurrence(state)) <= 1e-7

    def test_disagreement_window(self):
        for g in np.linspace(1e-3, 1 / 3, 20):
            w = st.werner(g)
            assert ent.wootters_concurrence(w.to_matrix()) <= 1e-10
            assert abs(ent.eof_closed_form(w).total - (1 + g) / 2) <= 1e-12

    def test_rejects_non_states(self):
        with pytest.raises(NotAState):
            ent.wootters_concurrence(np.eye(4))
        with pytest.raises(NotAState):
            ent.wootters_concurrence(np.diag([1.5, -0.5, 0, 0]))


class TestOracle:
    def test_gradient_matches_finite_differences(self):
        state = st.SSRState(w1=0.3, v1=0.2, b1=0.1 + 0.05j, w2=0.25, v2=0.25, b2=0.1j)
        for i in (1, 2):
            _, s = ent._sector_factor(state.block(i))
            for k in (2, 3, 4):
                x = np.random.default_rng(k).standard_normal(4 * k)
                num = approx_fprime(x, lambda y: ent.sector_objective(y, s, k)[0], 1e-7)
                assert np.max(np.abs(num - ent.sector_objective(x, s, k)[1])) <= 1e-6

    def test_diagonal_state(self):
        s = st.diagonal_state([0.4, 0.3, 0.2, 0.1])
        res = ent.eof_oracle(s, FAST)
        assert res.minimum == 0
        assert all(np.count_nonzero(np.abs(m.amplitudes) > 1e-15) == 1 for m in res.ensemble.members)

    def test_pure_even_state(self):
        amps = np.array([0.6, 0.8j])
        s = st.pure_sector_state(amps, "even")
        res = ent.eof_oracle(s, FAST)
        assert len(res.ensemble.members) == 1
        assert abs(res.minimum - ent.binary_entropy(0.36)) <= 1e-8

    def test_werner_half_upper_bound(self):
        res = ent.eof_oracle(st.werner(0.5), FAST)
        assert res.minimum <= 0.75 + 1e-8
        assert res.disagrees and res.gap > 0.3
        assert res.ensemble.reconstruction_error(st.werner(0.5)) <= 1e-8

    @settings(max_examples=30)
    @given(ssr_states())
    def test_dominance_and_reconstruction(self, state):
        res = ent.eof_oracle(state, FAST)
        assert res.minimum <= ent.eof_closed_form(state).total + 1e-8
        assert res.ensemble.reconstruction_error(state) <= 1e-8
        assert abs(res.ensemble.average_entropy() - res.minimum) <= 1e-8
        for m in res.ensemble.members:
            assert abs(np.linalg.norm(m.amplitudes) - 1) <= 1e-12

    def test_matches_sector_convex_roof(self):
        # sector-restricted problem = two-qubit EoF on a 2-dim subspace, solved by Wootters' formula
        for k in range(40):
            s = st.random_state(k)
            assert abs(ent.eof_oracle(s, FAST).minimum - ent.sector_convex_roof(s)) <= 1e-7

    def test_deterministic(self):
        s = st.random_state(5)
        a, b = ent.eof_oracle(s, FAST), ent.eof_oracle(s, FAST)
        assert a.minimum == b.minimum
        assert [m.amplitudes.tolist() for m in a.ensemble.members] == [m.amplitudes.tolist() for m in b.ensemble.members]

    def test_restart_prefix_never_hurts(self):
        s = st.random_state(9)
        few = ent.eof_oracle(s, ent.OracleConfig(restarts=2, seed=3))
        many = ent.eof_oracle(s, ent.OracleConfig(restarts=6, seed=3))
        assert many.minimum <= few.minimum

    def test_config_validation(self):
        with pytest.raises(OutOfRange):
            ent.OracleConfig(ensemble_size_per_sector=5)
        with pytest.raises(OutOfRange):
            ent.OracleConfig(restarts=0)
