"""Two-mode Thirring model: ``H = (m + lam)(N1 + N2) + 2 lam N1 N2``.

H is diagonal in the Fock basis, so every exponential here is a vector of
phases. Conventions (hbar = 1): states evolve as ``e^{-iHt} rho e^{iHt}`` and
operators as ``e^{iHt} X e^{-iHt}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .algebra import two_mode_ops
from .errors import InputError
from .entanglement import eof_closed_form
from .frames import BogoliubovParams, build_unitary
from .states import SSRState


@dataclass(frozen=True)
class ThirringParams:
    m: float
    lam: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and math.isfinite(self.lam)):
            raise InputError("m and lambda must be finite")

    @property
    def symmetric(self) -> bool:
        return self.lam == -0.5 * self.m


def energies(p: ThirringParams) -> np.ndarray:
    """Diagonal of H in the Fock ordering: ``0, m+lam, m+lam, 2m+4lam``."""
    ops = two_mode_ops()
    n1, n2 = ops.N1.diagonal().real, ops.N2.diagonal().real
    return (p.m + p.lam) * (n1 + n2) + 2 * p.lam * n1 * n2


def hamiltonian(p: ThirringParams) -> np.ndarray:
    return np.diag(energies(p)).astype(complex)


def _phases(p: ThirringParams, t: float) -> np.ndarray:
    return np.exp(-1j * energies(p) * t)


def propagator(p: ThirringParams, t: float) -> np.ndarray:
    """``e^{-iHt}``."""
    return np.diag(_phases(p, t))


def evolve_state(state: SSRState, p: ThirringParams, t: float) -> SSRState:
    # only the coherences rotate: rho_jk -> rho_jk exp(-i (E_j - E_k) t)
    u = _phases(p, t)
    return replace(state, b1=state.b1 * u[0] * u[3].conjugate(), b2=state.b2 * u[1] * u[2].conjugate())


def heisenberg_annihilator(i: int, p: ThirringParams, t: float) -> np.ndarray:
    """``e^{iHt} a_i e^{-iHt}``."""
    ops = two_mode_ops()
    a = {1: ops.a1, 2: ops.a2}.get(i)
    if a is None:
        raise InputError(f"mode index must be 1 or 2, got {i!r}")
    u = _phases(p, t)
    return u.conj()[:, None] * a * u[None, :]


def thirring_solution(i: int, p: ThirringParams, t: float) -> np.ndarray:
    """``a_i exp(-it(m + lam + 2 lam N_j))``, j != i."""
    ops = two_mode_ops()
    a, n_other = {1: (ops.a1, ops.N2), 2: (ops.a2, ops.N1)}[i]
    return a @ np.diag(np.exp(-1j * t * (p.m + p.lam + 2 * p.lam * n_other.diagonal().real)))


def check_symmetry(p: ThirringParams, params: BogoliubovParams) -> float:
    """Largest entry of ``|U H U^dag - H|``."""
    u = build_unitary(params)
    h = hamiltonian(p)
    return float(np.max(np.abs(u @ h @ u.conj().T - h)))


def entanglement_trajectory(state: SSRState, p: ThirringParams, times: Iterable[float]) -> list[tuple[float, float]]:
    return [(float(t), eof_closed_form(evolve_state(state, p, t)).total) for t in times]
