"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line can map failures to
its fixed taxonomy (2 = bad input, 3 = superselection violation, 4 = numerical
failure) without a lookup table.
"""


class TwoFermionError(Exception):
    exit_code = 2


class InputError(TwoFermionError, ValueError):
    """Malformed document, wrong shape, or missing field."""

    exit_code = 2


class OutOfRange(InputError):
    pass


class ParityError(InputError):
    """Operand has no well-defined fermion parity."""


class InvalidParams(InputError):
    pass


class NotUnitary(InputError):
    pass


class NotAState(InputError):
    """Parses, but is not a density matrix (a physics violation, not a schema error)."""

    exit_code = 3


class NotHermitian(NotAState):
    pass


class NotNormalized(NotAState):
    pass


class NotPositive(NotAState):
    pass


class DegenerateSector(TwoFermionError, ArithmeticError):
    """xi is 0/0: the sector block is proportional to the identity."""

    exit_code = 2


class SSRViolated(TwoFermionError):
    """Coherence between the even and odd fermion-number sectors."""

    exit_code = 3


class NumericalError(TwoFermionError, ArithmeticError):
    exit_code = 4


class ReconstructionFailed(NumericalError):
    pass


class NonConvergence(NumericalError):
    pass


class ConsistencyError(NumericalError):
    """An internal invariant failed; indicates a bug, not bad input."""
