"""Gate vocabulary and matrix conventions.

A :class:`Gate` is an immutable descriptor: its kind, the qubits it acts on
(controls first, target(s) last), real angles, per-control states and, for
the generic kinds, an explicit unitary. Matrices are given in big-endian
order of the gate's own qubit list.

Rotation conventions follow openQASM 2.0::

    RZ(t) = diag(exp(-i t/2), exp(i t/2))
    RX(t) = [[cos(t/2), -i sin(t/2)], [-i sin(t/2), cos(t/2)]]
    RY(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]
    P(t)  = diag(1, exp(i t))
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

UNITARY_TOL = 1e-12

# kind -> (number of controls, number of targets, number of angles)
ARITY = {
    "H": (0, 1, 0),
    "X": (0, 1, 0),
    "Y": (0, 1, 0),
    "Z": (0, 1, 0),
    "P": (0, 1, 1),
    "RX": (0, 1, 1),
    "RY": (0, 1, 1),
    "RZ": (0, 1, 1),
    "U2": (0, 1, 0),
    "CNOT": (1, 1, 0),
    "CZ": (1, 1, 0),
    "CP": (1, 1, 1),
    "CU2": (1, 1, 0),
    "SWAP": (0, 2, 0),
    "U4": (0, 2, 0),
    "CCX": (2, 1, 0),
}

MATRIX_KINDS = {"U2", "U4", "CU2"}
SELF_INVERSE = {"H", "X", "Y", "Z", "CNOT", "CZ", "SWAP", "CCX"}
ANGLE_NEGATED = {"P", "RX", "RY", "RZ", "CP"}

_SQ2 = 1 / math.sqrt(2)
_FIXED = {
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}
_FIXED["CNOT"] = _FIXED["X"]
_FIXED["CCX"] = _FIXED["X"]
_FIXED["CZ"] = _FIXED["Z"]
for _m in _FIXED.values():
    _m.setflags(write=False)


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    params: tuple = ()
    control_states: tuple = ()
    matrix: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        nc, nt, na = ARITY[self.kind]
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != nc + nt:
            raise ValueError(f"{self.kind} acts on {nc + nt} qubit(s), got {len(qubits)}")
        if any(q < 0 for q in qubits):
            raise ValueError(f"negative qubit index in {qubits}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"{self.kind} qubits must be distinct, got {qubits}")
        params = tuple(float(p) for p in self.params)
        if len(params) != na:
            raise ValueError(f"{self.kind} takes {na} angle(s), got {len(params)}")
        states = tuple(int(s) for s in self.control_states) or (1,) * nc
        if len(states) != nc or any(s not in (0, 1) for s in states):
            raise ValueError(f"{self.kind} needs {nc} control state(s) in {{0, 1}}, got {states}")
        object.__setattr__(self, "qubits", qubits)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "control_states", states)

        if self.kind in MATRIX_KINDS:
            if self.matrix is None:
                raise ValueError(f"{self.kind} requires a matrix")
            dim = 2 ** nt
            m = np.array(self.matrix, dtype=complex)
            if m.shape != (dim, dim):
                raise ValueError(f"{self.kind} matrix must be {dim}x{dim}, got {m.shape}")
            err = np.max(np.abs(m @ m.conj().T - np.eye(dim)))
            if err > UNITARY_TOL:
                raise ValueError(f"{self.kind} matrix is not unitary (deviation {err:.3g})")
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
        elif self.matrix is not None:
            raise ValueError(f"{self.kind} does not take a matrix")

    @property
    def controls(self):
        nc = ARITY[self.kind][0]
        return self.qubits[:nc]

    @property
    def targets(self):
        nc = ARITY[self.kind][0]
        return self.qubits[nc:]

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        if (self.kind, self.qubits, self.params, self.control_states) != (
            other.kind, other.qubits, other.params, other.control_states
        ):
            return False
        if self.matrix is None or other.matrix is None:
            return self.matrix is other.matrix
        return bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((self.kind, self.qubits, self.params, self.control_states))


# constructors, named after the kinds


def H(q):
    return Gate("H", (q,))


def X(q):
    return Gate("X", (q,))


def Y(q):
    return Gate("Y", (q,))


def Z(q):
    return Gate("Z", (q,))


def P(q, theta):
    return Gate("P", (q,), (theta,))


def RX(q, theta):
    return Gate("RX", (q,), (theta,))


def RY(q, theta):
    return Gate("RY", (q,), (theta,))


def RZ(q, theta):
    return Gate("RZ", (q,), (theta,))


def U2(q, matrix):
    return Gate("U2", (q,), matrix=matrix)


def CNOT(control, target, control_state=1):
    return Gate("CNOT", (control, target), control_states=(control_state,))


def CZ(control, target, control_state=1):
    return Gate("CZ", (control, target), control_states=(control_state,))


def CP(control, target, theta, control_state=1):
    return Gate("CP", (control, target), (theta,), (control_state,))


def CU2(control, target, matrix, control_state=1):
    return Gate("CU2", (control, target), control_states=(control_state,), matrix=matrix)


def SWAP(qa, qb):
    return Gate("SWAP", (qa, qb))


def U4(qa, qb, matrix):
    return Gate("U4", (qa, qb), matrix=matrix)


def CCX(c0, c1, target, control_states=(1, 1)):
    return Gate("CCX", (c0, c1, target), control_states=control_states)


# matrices


def target_matrix(g):
    """Unitary acting on the target qubit(s) once all controls are satisfied."""
    k = g.kind
    if k in _FIXED:
        return _FIXED[k]
    if k in MATRIX_KINDS:
        return g.matrix
    t = g.params[0]
    if k in ("P", "CP"):
        return np.array([[1, 0], [0, cmath.exp(1j * t)]])
    c, s = math.cos(t / 2), math.sin(t / 2)
    if k == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if k == "RY":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if k == "RZ":
        return np.diag([cmath.exp(-0.5j * t), cmath.exp(0.5j * t)])
    raise AssertionError(k)


def matrix_of(g):
    """Full unitary of ``g`` over its qubit list (controls included), big-endian."""
    u = np.array(target_matrix(g), dtype=complex)
    nc = len(g.controls)
    if nc == 0:
        return u
    dt = u.shape[0]
    dim = dt << nc
    m = np.eye(dim, dtype=complex)
    # the active block sits at the control-bit pattern given by control_states
    active = 0
    for s in g.control_states:
        active = (active << 1) | s
    lo = active * dt
    m[lo:lo + dt, lo:lo + dt] = u
    return m


def dagger(g):
    if g.kind in SELF_INVERSE:
        return g
    if g.kind in ANGLE_NEGATED:
        return Gate(g.kind, g.qubits, tuple(-p for p in g.params), g.control_states)
    return Gate(g.kind, g.qubits, g.params, g.control_states, matrix=g.matrix.conj().T)


def is_unitary(m, tol=UNITARY_TOL):
    m = np.asarray(m)
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))) <= tol)
