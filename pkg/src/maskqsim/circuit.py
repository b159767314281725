"""Circuit container, simulation loop and the benchmark circuit builders."""
from __future__ import annotations

import itertools
import math

import numpy as np

from . import kernels
from .gates import (
    CCX, CNOT, CP, CU2, CZ, Gate, H, P, RX, RY, RZ, SWAP, U2, U4, X, Y, Z,
    dagger, target_matrix,
)
from .state import StateVector


class QuantumCircuit:
    """Ordered list of gates on ``nbQubits`` qubits, applied left to right."""

    def __init__(self, nbQubits, gates=()):
        if nbQubits < 1:
            raise ValueError(f"qubit count must be >= 1, got {nbQubits}")
        self.nbQubits = int(nbQubits)
        self.gates = []
        for g in gates:
            self.push_back(g)

    def push_back(self, g):
        if not isinstance(g, Gate):
            raise TypeError(f"expected a Gate, got {type(g).__name__}")
        bad = [q for q in g.qubits if q >= self.nbQubits]
        if bad:
            raise ValueError(
                f"{g.kind} on qubits {g.qubits} out of range for a {self.nbQubits}-qubit circuit"
            )
        self.gates.append(g)
        return self

    def simulate(self, state):
        simulate(self, state)
        return state

    def inverse(self):
        return inverse(self)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __getitem__(self, i):
        return self.gates[i]

    def __eq__(self, other):
        if not isinstance(other, QuantumCircuit):
            return NotImplemented
        return self.nbQubits == other.nbQubits and self.gates == other.gates

    def __repr__(self):
        return f"QuantumCircuit(nbQubits={self.nbQubits}, gates={len(self.gates)})"


def apply_gate(state, g):
    """Apply one gate through the most specialized kernel for its kind."""
    k = g.kind
    if k == "X":
        kernels.apply_x(state, g.qubits[0])
    elif k == "Y":
        kernels.apply_y(state, g.qubits[0])
    elif k == "Z":
        kernels.apply_z(state, g.qubits[0])
    elif k in ("H", "P", "RX", "RY", "RZ", "U2"):
        kernels.apply_1q(state, target_matrix(g), g.qubits[0])
    elif k == "CNOT":
        kernels.apply_ctrl_x(state, (g.qubits[0], g.control_states[0]), g.qubits[1])
    elif k in ("CZ", "CP", "CU2"):
        kernels.apply_ctrl_1q(
            state, target_matrix(g), (g.qubits[0], g.control_states[0]), g.qubits[1]
        )
    elif k == "SWAP":
        kernels.apply_swap(state, *g.qubits)
    elif k == "U4":
        kernels.apply_2q(state, g.matrix, *g.qubits)
    elif k == "CCX":
        kernels.apply_multi_ctrl_x(state, list(zip(g.controls, g.control_states)), g.qubits[2])
    else:
        raise ValueError(f"no kernel for gate kind {k!r}")


def simulate(c, s):
    if not isinstance(s, StateVector):
        raise TypeError(f"expected a StateVector, got {type(s).__name__}")
    if c.nbQubits != s.nbQubits:
        raise ValueError(f"circuit has {c.nbQubits} qubits but state has {s.nbQubits}")
    for g in c.gates:
        apply_gate(s, g)
    return s


def inverse(c):
    return QuantumCircuit(c.nbQubits, [dagger(g) for g in reversed(c.gates)])


def build_qft(n):
    """QFT with Hadamards, controlled phases ``-2*pi/2**j`` and a final SWAP layer."""
    if n < 1:
        raise ValueError(f"QFT needs at least 1 qubit, got {n}")
    circ = QuantumCircuit(n)
    for i in range(n):
        circ.push_back(H(i))
        for j in range(2, n - i + 1):
            circ.push_back(CP(j + i - 1, i, -2 * math.pi / (1 << j)))
    for i in range(n // 2):
        circ.push_back(SWAP(i, n - i - 1))
    return circ


def qft_gate_count(n):
    return n + n * (n - 1) // 2 + n // 2


def seeded_angles(seed=None, low=-math.pi, high=math.pi):
    """Endless stream of uniform angles from a seeded generator."""
    rng = np.random.default_rng(seed)
    while True:
        yield float(rng.uniform(low, high))


def build_tfxy_trotter(n, steps, angles=None):
    """Trotterized nearest-neighbour TFXY chain.

    Each step applies the two-qubit block to the even pairs ``(0,1), (2,3), ...``
    then to the odd pairs ``(1,2), (3,4), ...``. A block on ``(q, q+1)`` is
    ``RZ RZ . CNOT . RX(q) RZ(q+1) . CNOT . RZ RZ``, 8 gates, 6 of them
    rotations drawing one angle each from ``angles`` (an iterable of floats;
    defaults to :func:`seeded_angles` with seed 0).
    """
    if n < 2:
        raise ValueError(f"TFXY chain needs at least 2 qubits, got {n}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    it = iter(seeded_angles(0) if angles is None else angles)
    circ = QuantumCircuit(n)
    pairs = list(range(0, n - 1, 2)) + list(range(1, n - 1, 2))
    for _ in range(steps):
        for q in pairs:
            r = q + 1
            circ.push_back(RZ(q, next(it)))
            circ.push_back(RZ(r, next(it)))
            circ.push_back(CNOT(q, r))
            circ.push_back(RX(q, next(it)))
            circ.push_back(RZ(r, next(it)))
            circ.push_back(CNOT(q, r))
            circ.push_back(RZ(q, next(it)))
            circ.push_back(RZ(r, next(it)))
    return circ


def tfxy_gate_count(n, steps):
    return 8 * (n - 1) * steps


def zero_angles():
    return itertools.repeat(0.0)


# random circuits for verification

_ONE = ("H", "X", "Y", "Z", "P", "RX", "RY", "RZ", "U2")
_TWO = ("CNOT", "CZ", "CP", "CU2", "SWAP", "U4")
QASM_KINDS = ("H", "X", "Y", "Z", "P", "RX", "RY", "RZ", "CNOT", "CZ", "CP", "SWAP", "CCX")


def random_unitary(dim, rng):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_gate(n, rng, kinds=None, zero_controls=True):
    """Random gate on ``n`` qubits; qubit choices include noncontiguous pairs."""
    pool = [k for k in (kinds or _ONE + _TWO + ("CCX",))
            if {1: True, 2: n >= 2, 3: n >= 3}[_nq(k)]]
    kind = pool[rng.integers(len(pool))]
    qs = [int(q) for q in rng.permutation(n)[:_nq(kind)]]
    theta = float(rng.uniform(-2 * math.pi, 2 * math.pi))

    def cs():
        return int(rng.integers(2)) if zero_controls else 1

    if kind in ("H", "X", "Y", "Z"):
        return {"H": H, "X": X, "Y": Y, "Z": Z}[kind](qs[0])
    if kind in ("P", "RX", "RY", "RZ"):
        return {"P": P, "RX": RX, "RY": RY, "RZ": RZ}[kind](qs[0], theta)
    if kind == "U2":
        return U2(qs[0], random_unitary(2, rng))
    if kind == "CNOT":
        return CNOT(qs[0], qs[1], cs())
    if kind == "CZ":
        return CZ(qs[0], qs[1], cs())
    if kind == "CP":
        return CP(qs[0], qs[1], theta, cs())
    if kind == "CU2":
        return CU2(qs[0], qs[1], random_unitary(2, rng), cs())
    if kind == "SWAP":
        return SWAP(qs[0], qs[1])
    if kind == "U4":
        return U4(qs[0], qs[1], random_unitary(4, rng))
    return CCX(qs[0], qs[1], qs[2], (cs(), cs()))


def _nq(kind):
    if kind == "CCX":
        return 3
    return 2 if kind in _TWO else 1


def random_circuit(n, n_gates, rng=None, kinds=None, zero_controls=True):
    rng = np.random.default_rng(rng)
    return QuantumCircuit(n, [random_gate(n, rng, kinds, zero_controls) for _ in range(n_gates)])
