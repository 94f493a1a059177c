"""Density matrices admitted by the boson/fermion superselection rule.

A state commuting with ``(-1)^F`` is block diagonal in the even sector
``{|0,0>, |1,1>}`` and the odd sector ``{|1,0>, |0,1>}``:

    [[w1, 0,   0,   b1],
     [0,  w2,  b2,  0 ],
     [0,  b2*, v2,  0 ],
     [b1*, 0,  0,   v1]]

so six numbers (four real weights, two complex coherences) describe it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .algebra import EVEN_SECTOR, ODD_SECTOR
from .errors import InputError, NotHermitian, NotNormalized, NotPositive, OutOfRange, SSRViolated

STATE_TOL = 1e-9
WERNER_RANGE = (-1.0 / 3.0, 1.0)


@dataclass(frozen=True)
class SubsystemState:
    """Diagonal single-mode state: ``p0`` empty, ``p1`` occupied."""

    p0: float
    p1: float

    def to_matrix(self) -> np.ndarray:
        return np.diag([self.p0, self.p1]).astype(complex)


@dataclass(frozen=True)
class SSRState:
    w1: float
    w2: float
    v1: float
    v2: float
    b1: complex = 0.0
    b2: complex = 0.0

    def __post_init__(self):
        for name in ("w1", "w2", "v1", "v2"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ("b1", "b2"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        check_invariants(self)

    @property
    def weights(self) -> tuple[float, float]:
        """Total probability of the even and odd sector."""
        return self.w1 + self.v1, self.w2 + self.v2

    def sector(self, i: int) -> tuple[float, float, complex]:
        """``(w_i, v_i, b_i)`` for sector 1 (even) or 2 (odd)."""
        if i == 1:
            return self.w1, self.v1, self.b1
        if i == 2:
            return self.w2, self.v2, self.b2
        raise InputError(f"sector index must be 1 or 2, got {i!r}")

    def block(self, i: int) -> np.ndarray:
        w, v, b = self.sector(i)
        return np.array([[w, b], [np.conj(b), v]], dtype=complex)

    def to_matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        rho[np.ix_(EVEN_SECTOR, EVEN_SECTOR)] = self.block(1)
        rho[np.ix_(ODD_SECTOR, ODD_SECTOR)] = self.block(2)
        return rho

    def to_dict(self) -> dict:
        return {
            "w": [self.w1, self.w2],
            "v": [self.v1, self.v2],
            "b": [[self.b1.real, self.b1.imag], [self.b2.real, self.b2.imag]],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> SSRState:
        try:
            (w1, w2), (v1, v2) = doc["w"], doc["v"]
            (r1, i1), (r2, i2) = doc["b"]
            values = [float(x) for x in (w1, w2, v1, v2, r1, i1, r2, i2)]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed state document: {exc!r}") from exc
        w1, w2, v1, v2, r1, i1, r2, i2 = values
        return cls(w1=w1, w2=w2, v1=v1, v2=v2, b1=complex(r1, i1), b2=complex(r2, i2))


def check_invariants(s: SSRState, tol: float = STATE_TOL) -> None:
    values = (s.w1, s.w2, s.v1, s.v2, s.b1.real, s.b1.imag, s.b2.real, s.b2.imag)
    if not all(math.isfinite(x) for x in values):
        raise InputError("state parameters must be finite")
    if min(s.w1, s.w2, s.v1, s.v2) < -tol:
        raise NotPositive("negative population")
    if abs(s.w1 + s.w2 + s.v1 + s.v2 - 1.0) > tol:
        raise NotNormalized(f"populations sum to {s.w1 + s.w2 + s.v1 + s.v2!r}")
    for i in (1, 2):
        w, v, b = s.sector(i)
        if abs(b) ** 2 > w * v + tol:
            raise NotPositive(f"|b{i}|^2 = {abs(b) ** 2:.3g} exceeds w{i} v{i} = {w * v:.3g}")


def to_matrix(state: SSRState) -> np.ndarray:
    return state.to_matrix()


def validate(candidate, tol: float = STATE_TOL) -> SSRState:
    """Read the six parameters off a 4x4 density matrix.

    Raises NotHermitian, NotNormalized, SSRViolated (coherence between sectors)
    or NotPositive, checked in that order.
    """
    rho = np.asarray(candidate, dtype=complex)
    if rho.shape != (4, 4):
        raise InputError(f"density matrix must be 4x4, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InputError("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise NotHermitian("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise NotNormalized(f"trace is {np.trace(rho).real!r}")
    mask = np.ones((4, 4), dtype=bool)
    mask[np.ix_(EVEN_SECTOR, EVEN_SECTOR)] = False
    mask[np.ix_(ODD_SECTOR, ODD_SECTOR)] = False
    off = np.abs(rho[mask])
    if off.max() > tol:
        raise SSRViolated(f"even/odd coherence of magnitude {off.max():.3g}")
    w1, w2, v2, v1 = rho.diagonal().real
    return SSRState(w1=w1, w2=w2, v1=v1, v2=v2, b1=rho[0, 3], b2=rho[1, 2])


def generic_partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Plain partial trace of a 4x4 matrix in the Fock ordering.

    The flat index is ``m + 2 n``, so ``reshape(2, 2, 2, 2)`` gives axes
    ``(n, m, n', m')``.
    """
    t = np.asarray(rho).reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("nmnk->mk", t)
    if keep == 2:
        return np.einsum("nmkm->nk", t)
    raise InputError(f"subsystem must be 1 or 2, got {keep!r}")


def partial_trace(state: SSRState, subsystem: Literal[1, 2]) -> SubsystemState:
    if subsystem == 1:
        return SubsystemState(p0=state.w1 + state.v2, p1=state.w2 + state.v1)
    if subsystem == 2:
        return SubsystemState(p0=state.w1 + state.w2, p1=state.v1 + state.v2)
    raise InputError(f"subsystem must be 1 or 2, got {subsystem!r}")


def is_separable(state: SSRState, tol: float = STATE_TOL) -> bool:
    # a product of SSR-admissible subsystem states is diagonal, and so is any mixture
    return abs(state.b1) <= tol and abs(state.b2) <= tol


def is_superseparable(state: SSRState, tol: float = STATE_TOL) -> bool:
    return (
        is_separable(state, tol)
        and abs(state.w1 - state.v1) <= tol
        and abs(state.w2 - state.v2) <= tol
    )


def product_decomposition(state: SSRState, tol: float = STATE_TOL) -> list[tuple[float, SubsystemState, SubsystemState]]:
    """Write a diagonal state as ``sum_k p_k rho1_k (x) rho2_k``.

    Only defined for separable states; each term is a Fock product state.
    """
    if not is_separable(state, tol):
        raise InputError("state has coherences and is not separable")
    rho = state.to_matrix().diagonal().real
    terms = []
    for m in (0, 1):
        for n in (0, 1):
            terms.append((float(rho[m + 2 * n]), SubsystemState(1.0 - m, float(m)), SubsystemState(1.0 - n, float(n))))
    return terms


def werner(gamma: float) -> SSRState:
    lo, hi = WERNER_RANGE
    if not (lo - 1e-15 <= gamma <= hi + 1e-15) or not math.isfinite(gamma):
        raise OutOfRange(f"Werner parameter {gamma!r} outside [-1/3, 1]")
    return SSRState(
        w1=(1 + gamma) / 4,
        v1=(1 + gamma) / 4,
        b1=gamma / 2,
        w2=(1 - gamma) / 4,
        v2=(1 - gamma) / 4,
        b2=0.0,
    )


def superseparable(s: float) -> SSRState:
    """``diag(s, 1-s, 1-s, s) / 2``."""
    if not 0.0 <= s <= 1.0:
        raise OutOfRange(f"s = {s!r} outside [0, 1]")
    return SSRState(w1=s / 2, v1=s / 2, w2=(1 - s) / 2, v2=(1 - s) / 2)


def diagonal_state(p) -> SSRState:
    """State with Fock populations ``p`` in flat-index order."""
    p00, p10, p01, p11 = (float(x) for x in p)
    return SSRState(w1=p00, w2=p10, v2=p01, v1=p11)


def pure_sector_state(amplitudes, sector: Literal["even", "odd"]) -> SSRState:
    """``|psi><psi|`` for ``psi`` confined to one sector.

    Even amplitudes are on ``(|0,0>, |1,1>)``, odd ones on ``(|1,0>, |0,1>)``.
    """
    x, y = np.asarray(amplitudes, dtype=complex) / np.linalg.norm(amplitudes)
    w, v, b = abs(x) ** 2, abs(y) ** 2, x * np.conj(y)
    if sector == "even":
        return SSRState(w1=w, v1=v, b1=b, w2=0.0, v2=0.0)
    if sector == "odd":
        return SSRState(w1=0.0, v1=0.0, w2=w, v2=v, b2=b)
    raise InputError(f"unknown sector {sector!r}")


BOUNDARY_PROBABILITY = 0.125


def random_state(seed: int) -> SSRState:
    """Sample an admissible state.

    Populations are uniform on the 3-simplex; each ``|b_i|`` is uniform on
    ``[0, sqrt(w_i v_i)]`` with a uniform phase, except that with probability
    1/8 per sector it is placed exactly on the positivity boundary.
    """
    rng = np.random.default_rng(seed)
    w1, w2, v1, v2 = rng.dirichlet(np.ones(4))
    bs = []
    for w, v in ((w1, v1), (w2, v2)):
        bound = math.sqrt(w * v)
        radius = bound if rng.random() < BOUNDARY_PROBABILITY else bound * rng.random()
        bs.append(radius * np.exp(2j * np.pi * rng.random()))
    return SSRState(w1=w1, w2=w2, v1=v1, v2=v2, b1=bs[0], b2=bs[1])


def dumps(state: SSRState) -> str:
    return json.dumps(state.to_dict(), indent=2) + "\n"


def matrix_from_doc(rows) -> np.ndarray:
    """Parse a nested list whose entries are reals or ``[re, im]`` pairs."""
    try:
        out = np.array(
            [[complex(*x) if isinstance(x, (list, tuple)) else complex(x) for x in row] for row in rows],
            dtype=complex,
        )
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix: {exc!r}") from exc
    if out.ndim != 2:
        raise InputError("matrix must be a list of rows")
    return out


def loads(text: str, tol: float = STATE_TOL) -> SSRState:
    """Parse a state document.

    Besides the six-parameter form, ``{"matrix": [[...], ...]}`` is accepted
    and passed through :func:`validate`, so superselection violations in raw
    matrices surface as SSRViolated rather than as schema errors.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("state document must be a JSON object")
    if "matrix" in doc:
        return validate(matrix_from_doc(doc["matrix"]), tol)
    return SSRState.from_dict(doc)
