import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as hst

from twofermion import algebra as alg
from twofermion import entanglement as ent
from twofermion import frames as fr
from twofermion import states as st
from twofermion import thirring as th

from .conftest import frame_params, ssr_states

reals = hst.floats(-5, 5, allow_nan=False)


def test_hamiltonian_examples():
    assert np.array_equal(th.hamiltonian(th.ThirringParams(1, 0)), np.diag([0, 1, 1, 2]))
    assert np.allclose(th.hamiltonian(th.ThirringParams(2, -1)), np.diag([0, 1, 1, 0]))
    assert not th.hamiltonian(th.ThirringParams(0, 0)).any()


@given(reals, reals)
def test_hamiltonian_operator_form(m, lam):
    o = alg.two_mode_ops()
    h = (m + lam) * (o.N1 + o.N2) + 2 * lam * o.N1 @ o.N2
    assert np.allclose(th.hamiltonian(th.ThirringParams(m, lam)), h, atol=1e-12)
    assert alg.allclose(alg.commutator(h, alg.fermion_parity()), 0)


@given(ssr_states(), reals, reals, reals)
def test_evolve_matches_expm(state, m, lam, t):
    p = th.ThirringParams(m, lam)
    u = scipy.linalg.expm(-1j * th.hamiltonian(p) * t)
    want = u @ state.to_matrix() @ u.conj().T
    got = th.evolve_state(state, p, t)
    assert np.allclose(got.to_matrix(), want, atol=1e-12)
    assert (got.w1, got.w2, got.v1, got.v2) == (state.w1, state.w2, state.v1, state.v2)


def test_evolve_phase_convention():
    w = st.werner(0.5)
    p = th.ThirringParams(1, 0)
    assert th.evolve_state(w, p, 0) == w
    half = th.evolve_state(w, p, math.pi / 2)
    assert abs(half.b1 + w.b1) <= 1e-15
    # rho_03(t) = rho_03 exp(+i (E_11 - E_00) t) with E_11 - E_00 = 2
    t = 0.3
    assert abs(th.evolve_state(w, p, t).b1 - w.b1 * np.exp(2j * t)) <= 1e-15


def test_diagonal_states_are_stationary():
    d = st.diagonal_state([0.4, 0.3, 0.2, 0.1])
    for t in np.linspace(0, 10, 7):
        assert th.evolve_state(d, th.ThirringParams(1.2, 0.7), t) == d


@given(reals, reals, reals)
def test_heisenberg_solution(m, lam, t):
    p = th.ThirringParams(m, lam)
    u = scipy.linalg.expm(1j * th.hamiltonian(p) * t)
    for i, a in ((1, alg.two_mode_ops().a1), (2, alg.two_mode_ops().a2)):
        brute = u @ a @ u.conj().T
        assert alg.allclose(th.heisenberg_annihilator(i, p, t), brute, 1e-11)
        assert alg.allclose(th.heisenberg_annihilator(i, p, t), th.thirring_solution(i, p, t))


def test_heisenberg_special_cases():
    o = alg.two_mode_ops()
    p = th.ThirringParams(1.3, 0)
    assert alg.allclose(th.heisenberg_annihilator(1, p, 0), o.a1)
    assert alg.allclose(th.heisenberg_annihilator(2, p, 0.7), o.a2 * np.exp(-1.3j * 0.7))


@given(ssr_states(), reals, reals, reals)
def test_heisenberg_schroedinger_consistency(state, m, lam, t):
    p = th.ThirringParams(m, lam)
    for i in (1, 2):
        a = th.heisenberg_annihilator(i, p, 0)
        schroedinger = np.trace(th.evolve_state(state, p, t).to_matrix() @ a)
        heisenberg = np.trace(state.to_matrix() @ th.heisenberg_annihilator(i, p, t))
        assert abs(schroedinger - heisenberg) <= 1e-10


@given(frame_params(), hst.floats(-5, 5))
def test_symmetry_at_critical_coupling(params, m):
    assert th.check_symmetry(th.ThirringParams(m, -m / 2), params) <= 1e-12


def test_symmetry_broken_away_from_critical_coupling():
    r2 = 2**-0.5
    assert th.check_symmetry(th.ThirringParams(1, 0), fr.BogoliubovParams(zeta=r2, omega=r2)) > 0.1
    assert th.check_symmetry(th.ThirringParams(1, 0.3), fr.BogoliubovParams()) == 0


def test_number_conserving_frames_are_always_symmetries():
    # only the even-sector rotation can break the symmetry
    p = fr.BogoliubovParams(alpha=0.6, beta=0.8, chi=1.1)
    assert th.check_symmetry(th.ThirringParams(1, 0.4), p) <= 1e-12


def test_trajectory_examples():
    traj = th.entanglement_trajectory(st.werner(0.5), th.ThirringParams(1, 0.2), [0, 1, 2, 3])
    assert [t for t, _ in traj] == [0, 1, 2, 3]
    assert all(abs(e - 0.75) <= 1e-12 for _, e in traj)
    d = st.diagonal_state([0.4, 0.3, 0.2, 0.1])
    assert all(e == 0 for _, e in th.entanglement_trajectory(d, th.ThirringParams(1, 1), range(5)))


@given(ssr_states(), reals, reals)
def test_trajectory_is_constant(state, m, lam):
    values = [e for _, e in th.entanglement_trajectory(state, th.ThirringParams(m, lam), np.linspace(0, 20, 11))]
    assert max(values) - min(values) <= 1e-12
    assert abs(values[0] - ent.eof_closed_form(state).total) <= 1e-12


def test_invalid_params():
    with pytest.raises(ValueError):
        th.ThirringParams(float("inf"), 0)
    with pytest.raises(ValueError):
        th.heisenberg_annihilator(3, th.ThirringParams(1, 0), 0)
