"""Regenerate every published number and check it.

Each check returns ``(ok, detail)``. Findings are observations reported
alongside the checks that never make the run fail; the oracle-below-closed-form
gap lives there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra as alg
from . import entanglement as ent
from . import frames as fr
from . import states as st
from . import thirring as th


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], tuple[bool, str]]


def _close(x, y, atol=1e-12) -> tuple[bool, str]:
    err = float(np.max(np.abs(np.asarray(x) - np.asarray(y))))
    return err <= atol, f"max error {err:.3g} (tol {atol:g})"


def _is(flag: bool, detail: str = "") -> tuple[bool, str]:
    return bool(flag), detail


def _fock(m, n):
    return alg.basis_vector(m, n)


def _checks() -> list[Check]:
    s = alg.single_mode_ops()
    o = alg.two_mode_ops()
    T = alg.time_reversal()
    parity = alg.fermion_parity()
    e0, e1 = np.array([1, 0]), np.array([0, 1])
    rng_params = [fr.random_group_element(seed) for seed in range(200)]
    klein_wigner = fr.BogoliubovParams(chi=np.pi)

    def werner_validate():
        got = st.validate(st.werner(0.5).to_matrix())
        want = (3 / 8, 1 / 8, 3 / 8, 1 / 8, 1 / 4, 0)
        return _close([got.w1, got.w2, got.v1, got.v2, got.b1, got.b2], want)

    def concurrence_window():
        grid = np.linspace(-1 / 3, 1 / 3, 21)
        worst = max(ent.wootters_concurrence(st.werner(g).to_matrix()) for g in grid)
        return _is(worst <= 1e-10, f"max concurrence on window {worst:.3g}")

    def car_preserved():
        worst = 0.0
        for p in rng_params:
            u = fr.build_unitary(p)
            rep = alg.check_car({"a1": fr.transform_operator(u, o.a1), "a2": fr.transform_operator(u, o.a2)})
            worst = max(worst, rep.max_violation)
        return _is(worst <= 1e-12, f"max CAR residual {worst:.3g}")

    def parity_commutes():
        worst = max(float(np.abs(alg.commutator(fr.build_unitary(p), parity)).max()) for p in rng_params)
        return _is(worst <= 1e-12, f"max |[U, P]| {worst:.3g}")

    def superseparable_fixed():
        rho = st.superseparable(0.3)
        worst = max(np.abs(fr.transform_state(p, rho).to_matrix() - rho.to_matrix()).max() for p in rng_params)
        return _is(worst <= 1e-12, f"max change {worst:.3g}")

    def frames_diagonalise():
        worst = 0.0
        for seed in range(100):
            f = fr.find_separable_frame(st.random_state(seed))
            worst = max(worst, ent.eof_closed_form(f.diagonal).total)
        return _is(worst == 0.0, f"max EoF in separable frame {worst:.3g}")

    def heisenberg():
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(100):
            p = th.ThirringParams(*rng.uniform(-3, 3, size=2))
            t = rng.uniform(-5, 5)
            for i in (1, 2):
                worst = max(worst, np.abs(th.heisenberg_annihilator(i, p, t) - th.thirring_solution(i, p, t)).max())
        return _is(worst <= 1e-12, f"max deviation {worst:.3g}")

    def symmetry():
        worst = max(th.check_symmetry(th.ThirringParams(1.7, -0.85), p) for p in rng_params)
        return _is(worst <= 1e-12, f"max residual at lambda = -m/2: {worst:.3g}")

    def h_commutes():
        h = th.hamiltonian(th.ThirringParams(1.3, 0.4))
        return _close(alg.commutator(h, parity), 0)

    return [
        Check("a|0> = 0", lambda: _close(s.a.matrix @ e0, 0)),
        Check("a_dag|1> = 0", lambda: _close(s.a_dag.matrix @ e1, 0)),
        Check("{a, a_dag} = id", lambda: _close(alg.anticommutator(s.a.matrix, s.a_dag.matrix), np.eye(2))),
        Check("a (x) id = |00><10| - |01><11|", lambda: _close(alg.graded_tensor(s.a, s.id), alg.intertwiner_a1(), 0)),
        Check("id (x) a = |00><01| + |10><11|", lambda: _close(alg.graded_tensor(s.id, s.a), alg.intertwiner_a2(), 0)),
        Check("a2_dag a1_dag |00> = |11>", lambda: _close(o.a2_dag @ o.a1_dag @ _fock(0, 0), _fock(1, 1))),
        Check("a1_dag|00> = |10>, a2_dag|00> = |01>", lambda: _close([o.a1_dag @ _fock(0, 0), o.a2_dag @ _fock(0, 0)], [_fock(1, 0), _fock(0, 1)])),
        Check("a_i |00> = 0", lambda: _close([o.a1 @ _fock(0, 0), o.a2 @ _fock(0, 0)], 0)),
        Check("CAR hold", lambda: _is(alg.check_car(o).ok(), f"max violation {alg.check_car(o).max_violation:.3g}")),
        Check("{a1, a2_dag} = 0", lambda: _close(alg.anticommutator(o.a1, o.a2_dag), 0)),
        Check("(-1)^F = diag(1,-1,-1,1)", lambda: _close(parity, np.diag([1, -1, -1, 1]))),
        Check("T a1 T^-1 = a2", lambda: _close(T.conjugate(o.a1), o.a2)),
        Check("T a2 T^-1 = -a1", lambda: _close(T.conjugate(o.a2), -o.a1)),
        Check("T^2 = (-1)^F", lambda: _close(T.square(), parity)),
        Check("Werner(1/2) parameters", werner_validate),
        Check("Werner(1) parameters", lambda: _close(
            [st.werner(1).w1, st.werner(1).v1, st.werner(1).b1, st.werner(1).w2], [0.5, 0.5, 0.5, 0])),
        Check("partial traces diag(w1+v2, w2+v1), diag(w1+w2, v1+v2)", lambda: _close(
            [st.partial_trace(st.werner(1), 1).p0, st.partial_trace(st.werner(1), 2).p0], [0.5, 0.5])),
        Check("diagonal states are separable", lambda: _is(st.is_separable(st.diagonal_state([0.4, 0.3, 0.2, 0.1])))),
        Check("Werner(0.1) not separable", lambda: _is(not st.is_separable(st.werner(0.1)))),
        Check("Werner(0) separable", lambda: _is(st.is_separable(st.werner(0)))),
        Check("rho_ss(0.3) superseparable", lambda: _is(st.is_superseparable(st.superseparable(0.3)))),
        Check("I/4 superseparable", lambda: _is(st.is_superseparable(st.validate(np.eye(4) / 4)))),
        Check("Wootters concurrence zero on [-1/3, 1/3]", concurrence_window),
        Check("Werner(1/3) concurrence = 0", lambda: _close(ent.wootters_concurrence(st.werner(1 / 3).to_matrix()), 0, 1e-10)),
        Check("E(Werner(1/2)) = 3/4", lambda: _close(ent.eof_closed_form(st.werner(0.5)).total, 0.75)),
        Check("E(Werner(gamma)) = (1+gamma)/2", lambda: _close(
            [ent.eof_closed_form(st.werner(g)).total for g in (-1 / 3, -0.1, 0.1, 1 / 3, 0.9)],
            [(1 + g) / 2 for g in (-1 / 3, -0.1, 0.1, 1 / 3, 0.9)])),
        Check("E(Werner(0)) = 0", lambda: _close(ent.eof_closed_form(st.werner(0)).total, 0)),
        Check("E(Werner(1)) = 1 (maximal)", lambda: _close(ent.eof_closed_form(st.werner(1)).total, 1)),
        Check("U commutes with (-1)^F", parity_commutes),
        Check("frame changes preserve CAR", car_preserved),
        Check("Klein-Wigner: a1 -> a1 (1 - 2 N2)", lambda: _close(
            fr.transform_operator(fr.build_unitary(klein_wigner), o.a1), o.a1 @ (np.eye(4) - 2 * o.N2))),
        Check("pure phase frame is not distinguishable", lambda: _is(
            not fr.is_physically_distinguishable(fr.BogoliubovParams(chi=1.3)))),
        Check("alpha = beta = 1/sqrt2 is distinguishable", lambda: _is(
            fr.is_physically_distinguishable(fr.BogoliubovParams(alpha=2**-0.5, beta=2**-0.5)))),
        Check("superseparable states are frame invariant", superseparable_fixed),
        Check("every state is diagonal in some frame", frames_diagonalise),
        Check("[H, (-1)^F] = 0", h_commutes),
        Check("Heisenberg solutions a_i exp(-it(m+lam+2lam N_j))", heisenberg),
        Check("lambda = -m/2 frames are symmetries of H", symmetry),
    ]


def findings(seed: int = 0, n_random: int = 8) -> list[str]:
    """States on which the numerical search beats the closed form."""
    out = []
    config = ent.OracleConfig(restarts=8, seed=seed)
    cases = [("Werner(1/2)", st.werner(0.5)), ("Werner(1/3)", st.werner(1 / 3))]
    cases += [(f"random_state({k})", st.random_state(k)) for k in range(n_random)]
    for label, state in cases:
        res = ent.eof_oracle(state, config)
        if res.disagrees:
            out.append(
                f"{label}: oracle {res.minimum:.6f} < closed form {res.closed_form:.6f} (gap {res.gap:.6f})"
            )
    return out


def run(seed: int = 0, write=print) -> bool:
    ok_all = True
    for check in _checks():
        try:
            ok, detail = check.run()
        except Exception as exc:  # noqa: BLE001 - a crashing check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        ok_all &= ok
        write(f"{'PASS' if ok else 'FAIL'}  {check.name}" + (f"  [{detail}]" if detail else ""))
    for line in findings(seed):
        write(f"FINDING  {line}")
    write("all checks passed" if ok_all else "some checks FAILED")
    return ok_all
