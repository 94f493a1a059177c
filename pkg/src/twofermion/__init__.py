"""Two fermionic modes under the boson/fermion superselection rule."""

from .algebra import fermion_parity, graded_tensor, single_mode_ops, time_reversal, two_mode_ops
from .entanglement import OracleConfig, eof_closed_form, eof_oracle, wootters_concurrence
from .frames import BogoliubovParams, build_unitary, find_separable_frame, transform_state
from .states import SSRState, random_state, validate, werner
from .thirring import ThirringParams, evolve_state, hamiltonian

__version__ = "0.1.0"
