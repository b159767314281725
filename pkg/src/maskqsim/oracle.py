"""Naive reference simulator used as ground truth.

Nothing here touches the bit-mask machinery in :mod:`maskqsim.kernels`.
``reference_apply`` works amplitude by amplitude: for every output index it
reads the bits at the gate's qubit positions, picks the matrix row, and sums
over all input settings of those bits. ``full_matrix`` builds embedded
unitaries from explicit Kronecker products and a qubit permutation.
Everything is computed in double precision.
"""
from __future__ import annotations

import numpy as np

from .gates import matrix_of
from .state import StateVector

MAX_FULL_MATRIX_QUBITS = 12


def _bit(idx, q, n):
    return (idx >> (n - 1 - q)) & 1


def reference_apply(state, g):
    """Out-of-place ``g |state>``, always returned in double precision."""
    phi = np.asarray(state).astype(np.complex128)
    n = phi.shape[0].bit_length() - 1
    qs = g.qubits
    if any(q >= n for q in qs):
        raise ValueError(f"gate qubits {qs} out of range for {n} qubits")
    u = matrix_of(g)
    k = len(qs)
    idx = np.arange(phi.shape[0], dtype=np.int64)

    row = np.zeros_like(idx)
    for q in qs:
        row = (row << 1) | _bit(idx, q, n)
    # indices with every gate qubit cleared
    base = idx.copy()
    for q in qs:
        base &= ~(np.int64(1) << (n - 1 - q))

    psi = np.zeros_like(phi)
    for col in range(1 << k):
        src = base.copy()
        for t, q in enumerate(qs):
            if (col >> (k - 1 - t)) & 1:
                src |= np.int64(1) << (n - 1 - q)
        psi += u[row, col] * phi[src]
    return StateVector(psi)


def _permutation(order, n):
    """Matrix ``P`` with ``P |b_0 ... b_{n-1}> = |b_order[0] ... b_order[n-1]>``."""
    dim = 1 << n
    p = np.zeros((dim, dim))
    for j in range(dim):
        bits = [(j >> (n - 1 - i)) & 1 for i in range(n)]
        i = 0
        for q in order:
            i = (i << 1) | bits[q]
        p[i, j] = 1
    return p


def embed(u, qubits, n):
    """``2**n`` matrix of ``u`` acting on ``qubits`` (big-endian order of the list)."""
    rest = [q for q in range(n) if q not in qubits]
    order = list(qubits) + rest
    # in the permuted ordering the gate qubits lead: U (x) I
    core = np.kron(u, np.eye(1 << len(rest)))
    p = _permutation(order, n)
    return p.T @ core @ p


def full_matrix(c):
    n = c.nbQubits
    if n > MAX_FULL_MATRIX_QUBITS:
        raise ValueError(
            f"full_matrix is limited to {MAX_FULL_MATRIX_QUBITS} qubits, circuit has {n}"
        )
    m = np.eye(1 << n, dtype=complex)
    for g in c.gates:
        m = embed(matrix_of(g), g.qubits, n) @ m
    return m


def reference_simulate(c, state):
    out = StateVector(np.asarray(state).astype(np.complex128))
    for g in c.gates:
        out = reference_apply(out, g)
    return out
