"""Entanglement of formation under the superselection rule.

Three routes are provided:

* ``eof_closed_form`` - the sector-wise formula ``E = sum_i (w_i + v_i) S_i``
  with ``S_i = h((1 + xi_i) / 2)`` and a zero branch for blocks proportional
  to the identity.
* ``wootters_concurrence`` - the ordinary two-qubit spin-flip concurrence,
  kept for comparison only.
* ``eof_oracle`` - a direct numerical minimisation of the ensemble-averaged
  reduced entropy over ensembles whose members each live in one parity sector.

The closed form equals the average over the eigen-ensemble of each sector
block. The oracle searches a strictly larger set, so it can (and generally
does) go below it. Callers get both numbers. A disagreement is reported, not
raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.optimize import minimize

from .algebra import EVEN_SECTOR, ODD_SECTOR
from .errors import DegenerateSector, NotAState, OutOfRange, ReconstructionFailed
from .states import SSRState, generic_partial_trace

DEGENERATE_TOL = 1e-12
DISAGREEMENT_TOL = 1e-6
RECONSTRUCTION_TOL = 1e-8
RANK_TOL = 1e-14

_SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)

SectorName = Literal["even", "odd"]
_SECTOR_INDICES = {"even": EVEN_SECTOR, "odd": ODD_SECTOR}


def binary_entropy(x: float) -> float:
    """``-x log2 x - (1-x) log2 (1-x)`` with ``0 log 0 = 0``."""
    if not -1e-12 <= x <= 1 + 1e-12:
        raise OutOfRange(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(float(x), 0.0), 1.0)
    return -sum(p * math.log2(p) for p in (x, 1.0 - x) if p > 0.0)


def von_neumann_entropy(rho) -> float:
    ev = np.linalg.eigvalsh(np.asarray(rho))
    ev = ev[ev > 1e-15]
    return float(-np.sum(ev * np.log2(ev)))


def sector_entropy_from_xi(xi_value: float) -> float:
    """The explicit two-term logarithmic expression in ``xi``."""
    total = 0.0
    for s in (1.0 - xi_value, 1.0 + xi_value):
        if s > 0:
            total += s * math.log2(s / 2)
    return -0.5 * total


def is_degenerate(w: float, v: float, b: complex, tol: float = DEGENERATE_TOL) -> bool:
    return abs(w - v) <= tol and abs(b) <= tol


def xi(w: float, v: float, b: complex) -> float:
    if is_degenerate(w, v, b):
        raise DegenerateSector("w = v and b = 0: xi is undefined")
    value = (w - v) / math.hypot(w - v, 2 * abs(b))
    return min(1.0, max(-1.0, value))


@dataclass(frozen=True)
class SectorAnalysis:
    weight: float
    xi: float | None  # None on the degenerate or empty branch
    entropy: float
    degenerate: bool = False


@dataclass(frozen=True)
class EoFResult:
    total: float
    sectors: tuple[SectorAnalysis, SectorAnalysis]


def analyse_sector(w: float, v: float, b: complex) -> SectorAnalysis:
    weight = w + v
    if weight <= 0.0:
        return SectorAnalysis(weight=0.0, xi=None, entropy=0.0, degenerate=is_degenerate(w, v, b))
    if is_degenerate(w, v, b):
        return SectorAnalysis(weight=weight, xi=None, entropy=0.0, degenerate=True)
    x = xi(w, v, b)
    return SectorAnalysis(weight=weight, xi=x, entropy=binary_entropy((1 + x) / 2))


def eof_closed_form(state: SSRState) -> EoFResult:
    """Sector-weighted entropy ``sum_i (w_i + v_i) S_i``.

    The formula is discontinuous at ``w_i = v_i, b_i = 0``: the limit along
    ``b -> 0`` with ``w = v`` is ``S = 1`` while the branch value is 0. The
    branch fires only within ``DEGENERATE_TOL``.
    """
    sectors = tuple(analyse_sector(*state.sector(i)) for i in (1, 2))
    total = sum(s.weight * s.entropy for s in sectors)
    return EoFResult(total=float(total), sectors=sectors)


def wootters_concurrence(rho, tol: float = 1e-9) -> float:
    """Two-qubit concurrence with the ordinary ``sigma_y (x) sigma_y`` spin flip."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise NotAState(f"expected a 4x4 matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol or abs(np.trace(rho) - 1) > tol:
        raise NotAState("matrix is not a Hermitian unit-trace operator")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise NotAState("matrix is not positive semidefinite")
    rho_tilde = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    ev = np.linalg.eigvals(rho @ rho_tilde)
    lam = np.sort(np.sqrt(np.abs(ev.real)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


# --------------------------------------------------------------------------
# ensembles
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EnsembleMember:
    weight: float
    amplitudes: np.ndarray  # normalised, on the two basis states of ``sector``
    sector: SectorName

    def ket(self) -> np.ndarray:
        psi = np.zeros(4, dtype=complex)
        psi[list(_SECTOR_INDICES[self.sector])] = self.amplitudes
        return psi

    def reduced_entropy(self) -> float:
        psi = self.ket()
        return von_neumann_entropy(generic_partial_trace(np.outer(psi, psi.conj()), keep=1))


@dataclass(frozen=True)
class Ensemble:
    members: tuple[EnsembleMember, ...]

    def to_matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        for m in self.members:
            psi = m.ket()
            rho += m.weight * np.outer(psi, psi.conj())
        return rho

    def average_entropy(self) -> float:
        return float(sum(m.weight * m.reduced_entropy() for m in self.members))

    def reconstruction_error(self, state: SSRState) -> float:
        return float(np.max(np.abs(self.to_matrix() - state.to_matrix())))


def _members_from_rows(psi_rows: np.ndarray, sector: SectorName) -> list[EnsembleMember]:
    out = []
    for row in psi_rows:
        p = float(np.vdot(row, row).real)
        if p > 0.0:
            out.append(EnsembleMember(weight=p, amplitudes=row / math.sqrt(p), sector=sector))
    return out


def _sector_factor(block: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and ``S = sqrt(Lambda) E^dag`` with ``S^dag S = block^T``.

    Rows of ``V @ S`` for any isometry ``V`` are unnormalised ensemble vectors
    ``psi_j`` with ``sum_j psi_j psi_j^dag = block``.
    """
    lam, vecs = np.linalg.eigh(block)
    lam, vecs = lam[::-1], vecs[:, ::-1]
    lam = np.where(lam > RANK_TOL * abs(np.trace(block)), lam, 0.0)
    s = np.sqrt(lam)[:, None] * vecs.T
    return lam, s


def spectral_ensemble(state: SSRState) -> Ensemble:
    """Eigenvectors of each sector block weighted by their eigenvalues.

    Degenerate blocks (proportional to the identity) use the Fock basis,
    which is the realisation matching the zero branch of the closed form.
    """
    members: list[EnsembleMember] = []
    for i, name in ((1, "even"), (2, "odd")):
        w, v, b = state.sector(i)
        block = state.block(i)
        if is_degenerate(w, v, b):
            members += _members_from_rows(np.diag(np.sqrt([w, v])).astype(complex), name)
        else:
            _, s = _sector_factor(block)
            members += _members_from_rows(s, name)
    return Ensemble(tuple(members))


def _xlog2x(x: np.ndarray) -> np.ndarray:
    safe = np.where(x > 0.0, x, 1.0)
    return np.where(x > 0.0, x * np.log2(safe), 0.0)


def _ensemble_entropy(psi: np.ndarray) -> float:
    """``sum_j p_j h(|psi_j0|^2 / p_j)`` for unnormalised rows ``psi_j``."""
    pops = np.abs(psi) ** 2
    return float(np.sum(_xlog2x(pops.sum(axis=1))) - np.sum(_xlog2x(pops)))


def _unpack(x: np.ndarray, k: int) -> np.ndarray:
    return (x[: 2 * k] + 1j * x[2 * k :]).reshape(k, 2)


def _isometry(a: np.ndarray):
    """Polar factor ``A (A^dag A)^{-1/2}`` plus the pieces needed for its derivative."""
    g, q = np.linalg.eigh(a.conj().T @ a)
    g = np.clip(g, 1e-300, None)
    t = (q * g**-0.5) @ q.conj().T
    return a @ t, t, g, q


def sector_objective(x: np.ndarray, s: np.ndarray, k: int) -> tuple[float, np.ndarray]:
    """Average reduced entropy of the ensemble ``polar(A) @ s`` and its gradient.

    ``x`` packs the real and imaginary parts of the ``k x 2`` matrix ``A``.
    """
    a = _unpack(x, k)
    v, t, g, q = _isometry(a)
    psi = v @ s
    pops = np.abs(psi) ** 2
    p = pops.sum(axis=1)
    value = float(np.sum(_xlog2x(p)) - np.sum(_xlog2x(pops)))

    # dF/dP_jc = log2 p_j - log2 P_jc; R is the Wirtinger gradient wrt psi
    ratio = np.where(pops > 0.0, p[:, None] / np.where(pops > 0.0, pops, 1.0), 1.0)
    r = np.log2(ratio) * psi
    # derivative of G^{-1/2} via the divided-difference (Daleckii-Krein) matrix
    gi = g**-0.5
    dg = g[:, None] - g[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        d = np.where(np.abs(dg) > 1e-14 * g.max(), (gi[:, None] - gi[None, :]) / dg, 0.0)
    d[np.diag_indices(2)] = -0.5 * g**-1.5
    if abs(g[0] - g[1]) <= 1e-14 * g.max():
        d[0, 1] = d[1, 0] = -0.5 * g.mean() ** -1.5
    y = s @ r.conj().T @ a
    w = q @ (d * (q.conj().T @ y @ q)) @ q.conj().T
    m = t @ s @ r.conj().T + (w + w.conj().T) @ a.conj().T
    grad = m.conj().T
    return value, np.concatenate([2 * grad.real.ravel(), 2 * grad.imag.ravel()])


@dataclass(frozen=True)
class OracleConfig:
    restarts: int = 32
    ensemble_size_per_sector: int = 4
    seed: int = 0
    max_iters: int = 500
    step_tolerance: float = 1e-13

    def __post_init__(self):
        if self.restarts < 1:
            raise OutOfRange("restarts must be at least 1")
        if not 2 <= self.ensemble_size_per_sector <= 4:
            raise OutOfRange("ensemble_size_per_sector must lie in [2, 4]")
        if self.max_iters < 1:
            raise OutOfRange("max_iters must be at least 1")


@dataclass(frozen=True)
class SectorSearch:
    minimum: float
    members: tuple[EnsembleMember, ...]
    best_restart: int  # -1: seed ensemble (spectral / Fock), no local search needed
    converged: bool


@dataclass(frozen=True)
class OracleResult:
    minimum: float
    ensemble: Ensemble
    converged: bool
    sectors: tuple[SectorSearch, SectorSearch]
    closed_form: float = field(default=float("nan"))

    @property
    def gap(self) -> float:
        """``closed_form - minimum``; positive when the oracle found a cheaper ensemble."""
        return self.closed_form - self.minimum

    @property
    def disagrees(self) -> bool:
        return self.minimum < self.closed_form - DISAGREEMENT_TOL


def _restart_rng(seed: int, sector: int, restart: int) -> np.random.Generator:
    return np.random.default_rng([seed, sector, restart])


def _search_sector(state: SSRState, i: int, config: OracleConfig) -> SectorSearch:
    name: SectorName = "even" if i == 1 else "odd"
    w, v, b = state.sector(i)
    if w + v <= 0.0:
        return SectorSearch(0.0, (), -1, True)
    block = state.block(i)
    lam, s = _sector_factor(block)

    seeds: list[np.ndarray] = []
    if abs(b) == 0.0:
        seeds.append(np.diag(np.sqrt([w, v])).astype(complex))
    seeds.append(s)
    best_value, best_rows = min(((_ensemble_entropy(r), r) for r in seeds), key=lambda t: t[0])
    best_index, converged = -1, True

    # a rank-one block is a pure state: its realisation is unique
    if lam[1] > 0.0 and best_value > 0.0:
        k = config.ensemble_size_per_sector
        for restart in range(config.restarts):
            rng = _restart_rng(config.seed, i, restart)
            x0 = rng.standard_normal(4 * k)
            res = minimize(
                sector_objective,
                x0,
                args=(s, k),
                jac=True,
                method="L-BFGS-B",
                options={"maxiter": config.max_iters, "ftol": config.step_tolerance, "gtol": 1e-10},
            )
            rows = _isometry(_unpack(res.x, k))[0] @ s
            value = _ensemble_entropy(rows)
            if value < best_value:
                best_value, best_rows, best_index = value, rows, restart
                converged = bool(res.success)
    return SectorSearch(best_value, tuple(_members_from_rows(best_rows, name)), best_index, converged)


def eof_oracle(state: SSRState, config: OracleConfig | None = None) -> OracleResult:
    """Numerical upper bound on the SSR-restricted entanglement of formation.

    Each sector is searched independently: ensembles are parametrised as
    ``V S`` with ``S`` the square-root factor of the sector block and ``V`` a
    ``k x 2`` isometry (every ``k``-member realisation has this form). Restart
    ``r`` of sector ``i`` draws its start from ``seed, i, r``; the best value
    wins, earliest restart on ties, so the result does not depend on the
    evaluation order.
    """
    config = config or OracleConfig()
    sectors = (_search_sector(state, 1, config), _search_sector(state, 2, config))
    ensemble = Ensemble(sectors[0].members + sectors[1].members)
    err = ensemble.reconstruction_error(state)
    if err > RECONSTRUCTION_TOL:
        raise ReconstructionFailed(f"oracle ensemble misses the state by {err:.3g}")
    return OracleResult(
        minimum=float(sectors[0].minimum + sectors[1].minimum),
        ensemble=ensemble,
        converged=all(s.converged for s in sectors),
        sectors=sectors,
        closed_form=eof_closed_form(state).total,
    )


def sector_convex_roof(state: SSRState) -> float:
    """Analytic minimum of the sector-restricted search.

    Within one sector the problem is the two-qubit one restricted to a
    two-dimensional subspace, so Wootters' formula applies with the sector
    concurrence ``C_i = 2 |b_i| / (w_i + v_i)``.
    """
    total = 0.0
    for i in (1, 2):
        w, v, b = state.sector(i)
        if w + v <= 0.0:
            continue
        c = min(1.0, 2 * abs(b) / (w + v))
        total += (w + v) * binary_entropy((1 + math.sqrt(1 - c * c)) / 2)
    return total
