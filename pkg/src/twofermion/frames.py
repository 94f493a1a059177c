"""Bogoliubov frame changes compatible with the parity superselection rule.

An admissible frame change is a unitary commuting with ``(-1)^F``, written as
the product (left to right) of

* an SU(2) rotation of the odd sector ``[[alpha*, -beta], [beta*, alpha]]``,
* an SU(2) rotation of the even sector ``[[zeta, -omega*], [omega, zeta*]]``,
* the phase ``diag(1, 1, 1, exp(-i chi))``.

At the level of operators these act as a number-conserving rotation of
``(a1, a2)``, a rotation mixing ``a1`` with ``a2^dag``, and the nonlinear
phase ``a_i -> a_i exp(i chi N_j)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .algebra import ATOL, EVEN_SECTOR, ODD_SECTOR, dagger, fermion_parity, two_mode_ops
from .errors import ConsistencyError, InputError, InvalidParams, NotUnitary, SSRViolated
from .states import SSRState, validate

DIAGONAL_TOL = 1e-10


@dataclass(frozen=True)
class BogoliubovParams:
    alpha: complex = 1.0
    beta: complex = 0.0
    zeta: complex = 1.0
    omega: complex = 0.0
    chi: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "zeta", "omega"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "chi", float(self.chi))
        values = (self.alpha, self.beta, self.zeta, self.omega, self.chi)
        if not all(np.isfinite(v) for v in values):
            raise InvalidParams("parameters must be finite")
        if abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1) > ATOL:
            raise InvalidParams("|alpha|^2 + |beta|^2 must equal 1")
        if abs(abs(self.zeta) ** 2 + abs(self.omega) ** 2 - 1) > ATOL:
            raise InvalidParams("|zeta|^2 + |omega|^2 must equal 1")

    def to_dict(self) -> dict:
        pair = lambda z: [z.real, z.imag]  # noqa: E731
        return {
            "alpha": pair(self.alpha),
            "beta": pair(self.beta),
            "zeta": pair(self.zeta),
            "omega": pair(self.omega),
            "chi": self.chi,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> BogoliubovParams:
        try:
            kw = {k: complex(*map(float, doc[k])) for k in ("alpha", "beta", "zeta", "omega")}
            kw["chi"] = float(doc["chi"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed params document: {exc!r}") from exc
        return cls(**kw)


def odd_rotation(alpha: complex, beta: complex) -> np.ndarray:
    u = np.eye(4, dtype=complex)
    u[np.ix_(ODD_SECTOR, ODD_SECTOR)] = [[np.conj(alpha), -beta], [np.conj(beta), alpha]]
    return u


def even_rotation(zeta: complex, omega: complex) -> np.ndarray:
    u = np.eye(4, dtype=complex)
    u[np.ix_(EVEN_SECTOR, EVEN_SECTOR)] = [[zeta, -np.conj(omega)], [omega, np.conj(zeta)]]
    return u


def phase_factor(chi: float) -> np.ndarray:
    return np.diag([1, 1, 1, np.exp(-1j * chi)])


def build_unitary(params: BogoliubovParams) -> np.ndarray:
    if not isinstance(params, BogoliubovParams):
        raise InvalidParams("expected BogoliubovParams")
    return odd_rotation(params.alpha, params.beta) @ even_rotation(params.zeta, params.omega) @ phase_factor(params.chi)


def is_unitary(u, atol: float = ATOL) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and np.allclose(dagger(u) @ u, np.eye(u.shape[0]), rtol=0, atol=atol)


def transform_operator(u, x) -> np.ndarray:
    """``U X U^dag``."""
    u = np.asarray(u)
    if not is_unitary(u):
        raise NotUnitary("frame change must be unitary")
    return u @ np.asarray(x) @ dagger(u)


def expected_family_action(params: BogoliubovParams) -> tuple[np.ndarray, np.ndarray]:
    """Images of ``a1, a2`` built from the three operator-level formulas.

    Each stage is written in terms of the operators produced by the previous
    one, in the same order as the factors of :func:`build_unitary`.
    """
    ops = two_mode_ops()
    al, be, ze, om = params.alpha, params.beta, params.zeta, params.omega
    # number-conserving rotation
    a1 = al * ops.a1 + be * ops.a2
    a2 = -np.conj(be) * ops.a1 + np.conj(al) * ops.a2
    # rotation mixing a1 with a2^dag
    a1, a2 = (
        ze * a1 + om * dagger(a2),
        dagger(-np.conj(om) * a1 + np.conj(ze) * dagger(a2)),
    )
    # nonlinear phase a_i -> a_i [1 + (e^{i chi} - 1) N_j]
    n1, n2 = dagger(a1) @ a1, dagger(a2) @ a2
    eye = np.eye(4)
    phase = np.exp(1j * params.chi) - 1
    return a1 @ (eye + phase * n2), a2 @ (eye + phase * n1)


def transform_state(params: BogoliubovParams, state: SSRState) -> SSRState:
    """The same physical state seen from the frame ``params``: ``U rho U^dag``."""
    u = build_unitary(params)
    rho = u @ state.to_matrix() @ dagger(u)
    try:
        return validate(rho)
    except SSRViolated as exc:  # pragma: no cover - U is block diagonal by construction
        raise ConsistencyError("frame change left the superselection family") from exc


def is_diagonal(state: SSRState, tol: float = DIAGONAL_TOL) -> bool:
    return abs(state.b1) <= tol and abs(state.b2) <= tol


def _leading_eigenvector(block: np.ndarray) -> np.ndarray:
    lam, vecs = np.linalg.eigh(block)
    e = vecs[:, np.argmax(lam)]
    if abs(e[0]) > 0:
        e = e * (abs(e[0]) / e[0])
    return e


@dataclass(frozen=True)
class SeparableFrame:
    params: BogoliubovParams
    diagonal: SSRState


def find_separable_frame(state: SSRState, tol: float = 1e-15) -> SeparableFrame:
    """Frame in which ``state`` has no coherences.

    Each sector rotation has first row ``e^dag`` where ``e`` is the
    eigenvector of the sector block with the largest eigenvalue, phased so
    that its first component is real and nonnegative. Blocks whose
    coherence is already below ``tol`` keep the identity rotation.
    """
    alpha, beta, zeta, omega = 1.0, 0.0, 1.0, 0.0
    if abs(state.b2) > tol:
        e = _leading_eigenvector(state.block(2))
        alpha, beta = e[0], -np.conj(e[1])
    if abs(state.b1) > tol:
        e = _leading_eigenvector(state.block(1))
        zeta, omega = np.conj(e[0]), -e[1]
    n_odd = math.hypot(abs(alpha), abs(beta))
    n_even = math.hypot(abs(zeta), abs(omega))
    params = BogoliubovParams(alpha / n_odd, beta / n_odd, zeta / n_even, omega / n_even, 0.0)
    diagonal = transform_state(params, state)
    # strip round-off coherences so the result is exactly diagonal
    diagonal = SSRState(w1=diagonal.w1, w2=diagonal.w2, v1=diagonal.v1, v2=diagonal.v2)
    return SeparableFrame(params=params, diagonal=diagonal)


def is_physically_distinguishable(params: BogoliubovParams, tol: float = ATOL) -> bool:
    """True when the frame moves the local number operators."""
    rotates_odd = abs(params.alpha) > tol and abs(params.beta) > tol
    rotates_even = abs(params.zeta) > tol and abs(params.omega) > tol
    return rotates_odd or rotates_even


def compose(p: BogoliubovParams | np.ndarray, q: BogoliubovParams | np.ndarray) -> np.ndarray:
    return _as_unitary(p) @ _as_unitary(q)


def inverse(p: BogoliubovParams | np.ndarray) -> np.ndarray:
    return dagger(_as_unitary(p))


def _as_unitary(p) -> np.ndarray:
    return build_unitary(p) if isinstance(p, BogoliubovParams) else np.asarray(p)


def inverse_params(p: BogoliubovParams) -> BogoliubovParams:
    """Parameters with ``build_unitary(inverse_params(p)) == build_unitary(p)^dag`` exactly.

    The odd rotation commutes with the even-sector factors, so the inverse is
    again a product in canonical order.
    """
    return BogoliubovParams(
        alpha=np.conj(p.alpha),
        beta=-p.beta,
        zeta=np.conj(p.zeta),
        omega=-p.omega * np.exp(1j * p.chi),
        chi=(-p.chi) % (2 * np.pi),
    )


def equal_up_to_phase(u, v, atol: float = ATOL) -> bool:
    u, v = np.asarray(u), np.asarray(v)
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(u[k]) < atol:
        return False
    phase = v[k] / u[k]
    phase /= abs(phase)
    return bool(np.allclose(u * phase, v, rtol=0, atol=atol))


def random_group_element(seed: int) -> BogoliubovParams:
    """Uniform draw: each SU(2) pair on the unit 3-sphere, ``chi`` on ``[0, 2 pi)``."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(4)
    y = rng.standard_normal(4)
    x /= np.linalg.norm(x)
    y /= np.linalg.norm(y)
    return BogoliubovParams(
        alpha=complex(x[0], x[1]),
        beta=complex(x[2], x[3]),
        zeta=complex(y[0], y[1]),
        omega=complex(y[2], y[3]),
        chi=float(rng.uniform(0.0, 2 * np.pi)),
    )


def commutes_with_parity(u, atol: float = ATOL) -> bool:
    p = fermion_parity()
    return bool(np.allclose(u @ p, p @ u, rtol=0, atol=atol))


def dumps(params: BogoliubovParams) -> str:
    return json.dumps(params.to_dict(), indent=2) + "\n"


def loads(text: str) -> BogoliubovParams:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("params document must be a JSON object")
    return BogoliubovParams.from_dict(doc)
