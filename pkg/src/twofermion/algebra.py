"""Graded operator algebra for two fermionic modes.

Basis convention (used everywhere in the package): the two-mode Fock state
``|m, n>`` sits at flat index ``m + 2 n``, i.e. the ordering is
``|0,0>, |1,0>, |0,1>, |1,1>``.  With that ordering the second-mode occupation
``n`` is the outer (slow) Kronecker factor, so the ungraded product
``X (x) Y`` of a first-mode ``X`` with a second-mode ``Y`` is ``np.kron(Y, X)``.

The graded product inserts the single-mode parity ``diag(1, -1)`` on the
second factor whenever the first-mode operand is odd, which reproduces the
sign rule ``(a (x) id)|m>|n> = (-1)^n a|m> (x) |n>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

import numpy as np
import scipy.linalg

from .errors import InputError, ParityError

ATOL = 1e-12

#: Fock labels ``(m, n)`` in flat-index order.
FOCK_LABELS = ((0, 0), (1, 0), (0, 1), (1, 1))

EVEN_SECTOR = (0, 3)  # |0,0>, |1,1>
ODD_SECTOR = (1, 2)  # |1,0>, |0,1>

_P1 = np.diag([1.0, -1.0]).astype(complex)


def fock_index(m: int, n: int) -> int:
    return m + 2 * n


def basis_vector(m: int, n: int) -> np.ndarray:
    e = np.zeros(4, dtype=complex)
    e[fock_index(m, n)] = 1.0
    return e


def ket_bra(left: tuple[int, int], right: tuple[int, int]) -> np.ndarray:
    """Matrix of ``|left><right|`` in the Fock ordering."""
    return np.outer(basis_vector(*left), basis_vector(*right).conj())


def allclose(x, y, atol: float = ATOL) -> bool:
    return bool(np.allclose(x, y, rtol=0.0, atol=atol))


def anticommutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y + y @ x


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def dagger(x: np.ndarray) -> np.ndarray:
    return np.asarray(x).conj().T


@dataclass(frozen=True)
class GradedOperator:
    """A 2x2 single-mode operator with a definite fermion parity.

    Odd operators (parity 1) have vanishing diagonal in ``{|0>, |1>}``; even
    operators are diagonal.  Anything else is rejected.
    """

    matrix: np.ndarray
    parity: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise InputError(f"single-mode operator must be 2x2, got {m.shape}")
        if self.parity not in (0, 1):
            raise ParityError(f"parity must be 0 or 1, got {self.parity!r}")
        forbidden = np.diag(m) if self.parity else np.array([m[0, 1], m[1, 0]])
        if np.max(np.abs(forbidden)) > ATOL:
            raise ParityError(f"matrix is not homogeneous of parity {self.parity}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def infer(cls, matrix) -> GradedOperator:
        """Tag ``matrix`` with its parity; mixed-parity input raises."""
        m = np.asarray(matrix, dtype=complex)
        odd_part = np.abs(np.array([m[0, 1], m[1, 0]])).max()
        even_part = np.abs(np.diag(m)).max()
        if odd_part > ATOL and even_part > ATOL:
            raise ParityError("mixed-parity operator; split it into even and odd parts")
        return cls(m, 1 if odd_part > ATOL else 0)

    @property
    def dag(self) -> GradedOperator:
        return GradedOperator(dagger(self.matrix), self.parity)

    def __matmul__(self, other: GradedOperator) -> GradedOperator:
        return GradedOperator(self.matrix @ other.matrix, (self.parity + other.parity) % 2)


class SingleMode(NamedTuple):
    a: GradedOperator
    a_dag: GradedOperator
    id: GradedOperator
    N: GradedOperator


class TwoMode(NamedTuple):
    a1: np.ndarray
    a1_dag: np.ndarray
    a2: np.ndarray
    a2_dag: np.ndarray
    N1: np.ndarray
    N2: np.ndarray


def single_mode_ops() -> SingleMode:
    a = GradedOperator(np.array([[0, 1], [0, 0]]), 1)  # a|1> = |0>
    a_dag = a.dag
    return SingleMode(a=a, a_dag=a_dag, id=GradedOperator(np.eye(2), 0), N=a_dag @ a)


def monomials() -> dict[str, GradedOperator]:
    """The five single-mode monomials on which the sign rules are stated."""
    s = single_mode_ops()
    return {
        "id": s.id,
        "a": s.a,
        "a_dag": s.a_dag,
        "a a_dag": s.a @ s.a_dag,
        "a_dag a": s.a_dag @ s.a,
    }


def graded_tensor(left: GradedOperator, right: GradedOperator) -> np.ndarray:
    """Graded tensor product ``left (x) right`` as a 4x4 matrix.

    Defined as ``(left (x) id)(id (x) right)``; the first factor picks up the
    second-mode parity when ``left`` is odd.
    """
    if not isinstance(left, GradedOperator) or not isinstance(right, GradedOperator):
        raise ParityError("graded_tensor needs GradedOperator operands with a declared parity")
    outer = right.matrix
    if left.parity:
        outer = _P1 @ outer
    return np.kron(outer, left.matrix)


def two_mode_ops() -> TwoMode:
    s = single_mode_ops()
    a1 = graded_tensor(s.a, s.id)
    a2 = graded_tensor(s.id, s.a)
    # (x (x) y)^dag = (-1)^{F(x)F(y)} x^dag (x) y^dag; the sign is +1 here
    a1_dag = graded_tensor(s.a_dag, s.id)
    a2_dag = graded_tensor(s.id, s.a_dag)
    return TwoMode(a1=a1, a1_dag=a1_dag, a2=a2, a2_dag=a2_dag, N1=a1_dag @ a1, N2=a2_dag @ a2)


def intertwiner_a1() -> np.ndarray:
    return ket_bra((0, 0), (1, 0)) - ket_bra((0, 1), (1, 1))


def intertwiner_a2() -> np.ndarray:
    return ket_bra((0, 0), (0, 1)) + ket_bra((1, 0), (1, 1))


@dataclass(frozen=True)
class CARReport:
    max_violation: float
    residuals: dict

    def ok(self, atol: float = ATOL) -> bool:
        return self.max_violation <= atol


def check_car(ops: TwoMode | Mapping[str, np.ndarray]) -> CARReport:
    """Largest entrywise residual over every canonical anticommutator."""
    if not isinstance(ops, Mapping):
        ops = ops._asdict()
    a = [np.asarray(ops["a1"]), np.asarray(ops["a2"])]
    ad = [np.asarray(ops.get("a1_dag", dagger(a[0]))), np.asarray(ops.get("a2_dag", dagger(a[1])))]
    eye = np.eye(a[0].shape[0])
    residuals = {}
    for i in range(2):
        for j in range(2):
            residuals[f"{{a{i+1},a{j+1}_dag}}"] = anticommutator(a[i], ad[j]) - (i == j) * eye
            if i <= j:
                residuals[f"{{a{i+1},a{j+1}}}"] = anticommutator(a[i], a[j])
                residuals[f"{{a{i+1}_dag,a{j+1}_dag}}"] = anticommutator(ad[i], ad[j])
    worst = max(float(np.max(np.abs(r))) for r in residuals.values())
    return CARReport(max_violation=worst, residuals=residuals)


def fermion_parity() -> np.ndarray:
    """``(-1)^F`` in the Fock ordering: +1 on even sectors, -1 on odd."""
    return np.diag([1.0, -1.0, -1.0, 1.0]).astype(complex)


def number_operator() -> np.ndarray:
    ops = two_mode_ops()
    return ops.N1 + ops.N2


@dataclass(frozen=True)
class AntiunitaryOperator:
    """Antiunitary map ``psi -> V conj(psi)``."""

    unitary: np.ndarray

    def __call__(self, psi) -> np.ndarray:
        return self.unitary @ np.conj(psi)

    def conjugate(self, x) -> np.ndarray:
        """``T X T^-1``."""
        return self.unitary @ np.conj(x) @ dagger(self.unitary)

    def square(self) -> np.ndarray:
        return self.unitary @ np.conj(self.unitary)

    @property
    def inverse(self) -> AntiunitaryOperator:
        # T^-1 psi = conj(V^dag psi) = V^T conj(psi)
        return AntiunitaryOperator(self.unitary.T.copy())


def time_reversal() -> AntiunitaryOperator:
    """Time inversion fixed by ``T a1 T^-1 = a2``, ``T a2 T^-1 = -a1``, ``T|0,0> = |0,0>``.

    The unitary part is obtained by solving the linear intertwining equations
    ``V conj(a1) = a2 V`` and ``V conj(a2) = -a1 V`` together with their
    adjoints; the joint null space is one-dimensional (the CAR representation
    is irreducible) and the vacuum condition fixes the scale.
    """
    ops = two_mode_ops()
    eye = np.eye(4)
    # column-major vec: vec(A V B) = (B^T kron A) vec(V)
    images = [(ops.a1, ops.a2), (ops.a2, -ops.a1), (ops.a1_dag, ops.a2_dag), (ops.a2_dag, -ops.a1_dag)]
    rows = [np.kron(np.conj(x).T, eye) - np.kron(eye, y) for x, y in images]
    ns = scipy.linalg.null_space(np.vstack(rows))
    if ns.shape[1] != 1:
        raise ArithmeticError(f"time reversal not unique: null space dimension {ns.shape[1]}")
    v = ns[:, 0].reshape(4, 4, order="F")
    v = v / v[0, 0]
    v = np.where(np.abs(v) < ATOL, 0.0, v)
    return AntiunitaryOperator(v)
