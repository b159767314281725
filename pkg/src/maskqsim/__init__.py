"""Bit-mask state-vector quantum circuit simulation."""
from .circuit import (
    QuantumCircuit, apply_gate, build_qft, build_tfxy_trotter, inverse, random_circuit,
    seeded_angles, simulate,
)
from .gates import (
    CCX, CNOT, CP, CU2, CZ, Gate, H, P, RX, RY, RZ, SWAP, U2, U4, X, Y, Z, dagger, matrix_of,
)
from .kernels import ControlSpec
from .oracle import full_matrix, reference_apply
from .state import StateVector, basis_state, max_abs_diff, norm, random_state

__version__ = "0.1.0"
