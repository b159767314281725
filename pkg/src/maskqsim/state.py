"""Dense state vectors with big-endian qubit ordering.

Qubit 0 is the most significant bit of an amplitude index, so for ``n``
qubits the index ``j = [j0 j1 ... j(n-1)]`` equals
``j0 * 2**(n-1) + ... + j(n-1) * 2**0``.
"""
from __future__ import annotations

import numpy as np

PRECISIONS = {"single": np.complex64, "double": np.complex128}


def dtype_for(precision):
    try:
        return np.dtype(PRECISIONS[precision])
    except KeyError:
        raise ValueError(
            f"unknown precision {precision!r}; expected one of {sorted(PRECISIONS)}"
        ) from None


def precision_of(dtype):
    dtype = np.dtype(dtype)
    for name, t in PRECISIONS.items():
        if np.dtype(t) == dtype:
            return name
    raise ValueError(f"unsupported amplitude dtype {dtype}")


def index_to_bits(j, n):
    """Bits of ``j`` with qubit 0 first (most significant)."""
    if not 0 <= j < (1 << n):
        raise ValueError(f"index {j} out of range [0, {1 << n})")
    return [(j >> (n - 1 - i)) & 1 for i in range(n)]


def bits_to_index(bits):
    j = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bit values must be 0 or 1, got {b!r}")
        j = (j << 1) | b
    return j


class StateVector:
    """``2**n`` complex amplitudes stored in one contiguous numpy array.

    Gate kernels mutate ``data`` in place. The precision is fixed by the
    array dtype: ``complex64`` ("single") or ``complex128`` ("double").
    """

    __slots__ = ("nbQubits", "data")

    def __init__(self, data, copy=False):
        data = np.array(data, copy=copy) if copy else np.asarray(data)
        if data.ndim != 1:
            raise ValueError("amplitudes must be a 1-D array")
        size = data.shape[0]
        if size < 2 or size & (size - 1):
            raise ValueError(f"amplitude count {size} is not a power of two >= 2")
        if data.dtype not in (np.complex64, np.complex128):
            data = data.astype(np.complex128)
        self.data = np.ascontiguousarray(data)
        self.nbQubits = size.bit_length() - 1

    @classmethod
    def zeros(cls, n, precision="double"):
        if n < 1:
            raise ValueError(f"qubit count must be >= 1, got {n}")
        return cls(np.zeros(1 << n, dtype=dtype_for(precision)))

    @property
    def dtype(self):
        return self.data.dtype

    @property
    def precision(self):
        return precision_of(self.data.dtype)

    def copy(self):
        return StateVector(self.data.copy())

    def astype(self, precision):
        return StateVector(self.data.astype(dtype_for(precision)))

    def __len__(self):
        return self.data.shape[0]

    def __getitem__(self, j):
        return self.data[j]

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self):
        return f"StateVector(nbQubits={self.nbQubits}, precision={self.precision!r})"


def basis_state(n, k, precision="double"):
    """Computational basis state ``|k>`` on ``n`` qubits."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    if not 0 <= k < (1 << n):
        raise ValueError(f"basis index {k} out of range: valid range is [0, {(1 << n) - 1}]")
    state = StateVector.zeros(n, precision)
    state.data[k] = 1
    return state


def random_state(n, rng=None, precision="double"):
    """Normalized state with i.i.d. Gaussian amplitudes."""
    rng = np.random.default_rng(rng)
    v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    v /= np.linalg.norm(v)
    return StateVector(v.astype(dtype_for(precision)))


def norm(state):
    # accumulate in double regardless of storage precision
    v = np.asarray(state).astype(np.complex128, copy=False)
    return float(np.sqrt(np.vdot(v, v).real))


def max_abs_diff(a, b):
    na, nb = _nqubits(a), _nqubits(b)
    if na != nb:
        raise ValueError(f"qubit count mismatch: {na} vs {nb}")
    va = np.asarray(a).astype(np.complex128, copy=False)
    vb = np.asarray(b).astype(np.complex128, copy=False)
    return float(np.max(np.abs(va - vb)))


def _nqubits(x):
    if isinstance(x, StateVector):
        return x.nbQubits
    return int(np.asarray(x).shape[0]).bit_length() - 1
