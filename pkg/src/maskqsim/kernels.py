"""Bit-mask gate kernels.

Every kernel is a single loop over a compressed counter ``j`` whose bits are
spliced apart by bit masks to produce the amplitude indices a gate couples.
Loop bodies touch disjoint amplitudes, so the ``j`` range is split across a
thread pool (see :func:`parallel_for`); each chunk runs in a numba-compiled
function that releases the GIL.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from .state import StateVector

__all__ = [
    "ControlSpec",
    "IndexMasks1Q",
    "IndexMasks2Q",
    "masks_1q",
    "masks_2q",
    "masks_multi",
    "index_pair_1q",
    "index_quad_2q",
    "apply_1q",
    "apply_x",
    "apply_y",
    "apply_z",
    "apply_ctrl_1q",
    "apply_ctrl_x",
    "apply_2q",
    "apply_swap",
    "apply_multi_ctrl_1q",
    "apply_multi_ctrl_x",
    "touched_pairs_1q",
    "touched_pairs_ctrl",
    "touched_quads_2q",
    "parallel_for",
    "set_num_threads",
    "get_num_threads",
    "set_parallel_cutoff",
    "get_parallel_cutoff",
]


# --------------------------------------------------------------------------
# masks and index arithmetic


class ControlSpec(NamedTuple):
    control: int
    state: int = 1


@dataclass(frozen=True)
class IndexMasks1Q:
    nbQubits: int
    target: int
    mL: int
    mR: int

    @property
    def step(self):
        return 1 << (self.nbQubits - self.target - 1)


@dataclass(frozen=True)
class IndexMasks2Q:
    nbQubits: int
    q0: int
    q1: int
    mL: int
    mC: int
    mR: int

    @property
    def step0(self):
        return 1 << (self.nbQubits - self.q0 - 1)

    @property
    def step1(self):
        return 1 << (self.nbQubits - self.q1 - 1)


def _check_qubit(n, q, what="qubit"):
    if not 0 <= q < n:
        raise ValueError(f"{what} index {q} out of range for {n} qubits")


def masks_1q(n, q):
    _check_qubit(n, q, "target")
    m_r = (1 << (n - q - 1)) - 1
    m_l = (1 << (n - 1)) - 1 - m_r
    return IndexMasks1Q(n, q, m_l, m_r)


def masks_2q(n, qa, qb):
    _check_qubit(n, qa)
    _check_qubit(n, qb)
    if qa == qb:
        raise ValueError(f"2-qubit operation needs distinct qubits, got {qa} twice")
    q0, q1 = min(qa, qb), max(qa, qb)
    m_r = (1 << (n - q1 - 1)) - 1
    m_c = (1 << (n - q0 - 2)) - 1 - m_r
    m_l = (1 << (n - 2)) - 1 - m_c - m_r
    return IndexMasks2Q(n, q0, q1, m_l, m_c, m_r)


def masks_multi(n, qubits):
    """Masks for a counter that skips the bits of all ``qubits``.

    Returns ``len(qubits) + 1`` masks ordered right to left: mask ``i`` selects
    the counter bits that must be shifted left by ``i``. For two qubits this
    is ``(mR, mC, mL)``.
    """
    qs = sorted(qubits)
    if len(set(qs)) != len(qs):
        raise ValueError(f"qubits must be distinct, got {list(qubits)}")
    for q in qs:
        _check_qubit(n, q)
    k = len(qs)
    masks = []
    below = 0
    for i in range(k):
        bound = (1 << (n - qs[k - 1 - i] - 1 - i)) - 1
        masks.append(bound - below)
        below = bound
    masks.append((1 << (n - k)) - 1 - below)
    return tuple(masks)


@njit(cache=True, inline="always")
def _spread2(j, m_l, m_r):
    return (j & m_r) + ((j & m_l) << 1)


@njit(cache=True, inline="always")
def _spread3(j, m_l, m_c, m_r):
    return (j & m_r) + ((j & m_c) << 1) + ((j & m_l) << 2)


@njit(cache=True, inline="always")
def _spread_multi(j, masks):
    a = 0
    for i in range(masks.shape[0]):
        a += (j & masks[i]) << i
    return a


def index_pair_1q(j, masks):
    a = int(_spread2(j, masks.mL, masks.mR))
    return a, a + masks.step


def index_quad_2q(j, masks):
    a = int(_spread3(j, masks.mL, masks.mC, masks.mR))
    return a, a + masks.step0, a + masks.step1, a + masks.step0 + masks.step1


# --------------------------------------------------------------------------
# parallel-for driver

_num_threads = os.cpu_count() or 1
_parallel_cutoff = 1 << 12
_pool = None
_pool_size = 0


def set_num_threads(k):
    global _num_threads
    if k < 1:
        raise ValueError(f"thread count must be >= 1, got {k}")
    _num_threads = int(k)


def get_num_threads():
    return _num_threads


def set_parallel_cutoff(iterations):
    global _parallel_cutoff
    if iterations < 0:
        raise ValueError("cutoff must be non-negative")
    _parallel_cutoff = int(iterations)


def get_parallel_cutoff():
    return _parallel_cutoff


def _executor():
    global _pool, _pool_size
    if _pool is None or _pool_size != _num_threads:
        if _pool is not None:
            _pool.shutdown(wait=True)
        _pool = ThreadPoolExecutor(max_workers=_num_threads, thread_name_prefix="maskqsim")
        _pool_size = _num_threads
    return _pool


def parallel_for(body, jmax, *args):
    """Run ``body(j0, j1, *args)`` over ``[0, jmax)``.

    Iterations must be independent. Ranges above the parallel cutoff are split
    into one contiguous chunk per thread (static schedule).
    """
    if jmax <= 0:
        return
    workers = min(_num_threads, jmax)
    if workers == 1 or jmax <= _parallel_cutoff:
        body(0, jmax, *args)
        return
    bounds = [jmax * t // workers for t in range(workers + 1)]
    futures = [
        _executor().submit(body, bounds[t], bounds[t + 1], *args) for t in range(workers)
    ]
    for f in futures:
        f.result()


# --------------------------------------------------------------------------
# compiled loop bodies; each handles counters j0 <= j < j1


@njit(cache=True, nogil=True)
def _k_1q(j0, j1, x, m_l, m_r, step, u00, u01, u10, u11):
    for j in range(j0, j1):
        a = _spread2(j, m_l, m_r)
        b = a + step
        xa = x[a]
        xb = x[b]
        x[a] = u00 * xa + u01 * xb
        x[b] = u10 * xa + u11 * xb


@njit(cache=True, nogil=True)
def _k_x(j0, j1, x, m_l, m_r, step):
    for j in range(j0, j1):
        a = _spread2(j, m_l, m_r)
        b = a + step
        xa = x[a]
        x[a] = x[b]
        x[b] = xa


@njit(cache=True, nogil=True)
def _k_y(j0, j1, x, m_l, m_r, step):
    for j in range(j0, j1):
        a = _spread2(j, m_l, m_r)
        b = a + step
        xa = x[a]
        xb = x[b]
        # -i*z and i*z without complex multiplication
        x[a] = xb.imag - 1j * xb.real
        x[b] = -xa.imag + 1j * xa.real


@njit(cache=True, nogil=True)
def _k_z(j0, j1, x, m_l, m_r, step):
    for j in range(j0, j1):
        b = _spread2(j, m_l, m_r) + step
        x[b] = -x[b]


@njit(cache=True, nogil=True)
def _k_c1q(j0, j1, x, m_l, m_c, m_r, step_t, offset, u00, u01, u10, u11):
    for j in range(j0, j1):
        a = _spread3(j, m_l, m_c, m_r) + offset
        b = a + step_t
        xa = x[a]
        xb = x[b]
        x[a] = u00 * xa + u01 * xb
        x[b] = u10 * xa + u11 * xb


@njit(cache=True, nogil=True)
def _k_cx(j0, j1, x, m_l, m_c, m_r, step_t, offset):
    for j in range(j0, j1):
        a = _spread3(j, m_l, m_c, m_r) + offset
        b = a + step_t
        xa = x[a]
        x[a] = x[b]
        x[b] = xa


@njit(cache=True, nogil=True)
def _k_2q(j0, j1, x, m_l, m_c, m_r, s0, s1, u):
    # u is indexed big-endian in (q0, q1): rows/cols 00, 01, 10, 11
    for j in range(j0, j1):
        a = _spread3(j, m_l, m_c, m_r)
        b = a + s0
        c = a + s1
        d = b + s1
        xa = x[a]
        xc = x[c]
        xb = x[b]
        xd = x[d]
        x[a] = u[0, 0] * xa + u[0, 1] * xc + u[0, 2] * xb + u[0, 3] * xd
        x[c] = u[1, 0] * xa + u[1, 1] * xc + u[1, 2] * xb + u[1, 3] * xd
        x[b] = u[2, 0] * xa + u[2, 1] * xc + u[2, 2] * xb + u[2, 3] * xd
        x[d] = u[3, 0] * xa + u[3, 1] * xc + u[3, 2] * xb + u[3, 3] * xd


@njit(cache=True, nogil=True)
def _k_swap(j0, j1, x, m_l, m_c, m_r, s0, s1):
    for j in range(j0, j1):
        a = _spread3(j, m_l, m_c, m_r)
        b = a + s0
        c = a + s1
        xb = x[b]
        x[b] = x[c]
        x[c] = xb


@njit(cache=True, nogil=True)
def _k_mc1q(j0, j1, x, masks, step_t, offset, u00, u01, u10, u11):
    for j in range(j0, j1):
        a = _spread_multi(j, masks) + offset
        b = a + step_t
        xa = x[a]
        xb = x[b]
        x[a] = u00 * xa + u01 * xb
        x[b] = u10 * xa + u11 * xb


@njit(cache=True, nogil=True)
def _k_mcx(j0, j1, x, masks, step_t, offset):
    for j in range(j0, j1):
        a = _spread_multi(j, masks) + offset
        b = a + step_t
        xa = x[a]
        x[a] = x[b]
        x[b] = xa


# index recorders: same index arithmetic as the kernels, writing indices
# instead of amplitudes


@njit(cache=True, nogil=True)
def _r_pairs(j0, j1, out_a, out_b, masks, step_t, offset):
    for j in range(j0, j1):
        a = _spread_multi(j, masks) + offset
        out_a[j] = a
        out_b[j] = a + step_t


@njit(cache=True, nogil=True)
def _r_quads(j0, j1, out, m_l, m_c, m_r, s0, s1):
    for j in range(j0, j1):
        a = _spread3(j, m_l, m_c, m_r)
        out[j, 0] = a
        out[j, 1] = a + s0
        out[j, 2] = a + s1
        out[j, 3] = a + s0 + s1


# --------------------------------------------------------------------------
# public apply operations


def _vec(state):
    if isinstance(state, StateVector):
        return state.data, state.nbQubits
    raise TypeError(f"expected a StateVector, got {type(state).__name__}")


def _mat(u, dim, dtype):
    u = np.asarray(u)
    if u.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {u.shape}")
    return np.ascontiguousarray(u, dtype=dtype)


def _entries(u, dtype):
    u = _mat(u, 2, dtype)
    return u[0, 0], u[0, 1], u[1, 0], u[1, 1]


def _as_control(c):
    if isinstance(c, ControlSpec):
        spec = c
    elif isinstance(c, (tuple, list)):
        spec = ControlSpec(int(c[0]), int(c[1]))
    else:
        spec = ControlSpec(int(c), 1)
    if spec.state not in (0, 1):
        raise ValueError(f"control state must be 0 or 1, got {spec.state}")
    return spec


def apply_1q(state, u, q):
    x, n = _vec(state)
    m = masks_1q(n, q)
    parallel_for(_k_1q, 1 << (n - 1), x, m.mL, m.mR, m.step, *_entries(u, x.dtype))


def apply_x(state, q):
    x, n = _vec(state)
    m = masks_1q(n, q)
    parallel_for(_k_x, 1 << (n - 1), x, m.mL, m.mR, m.step)


def apply_y(state, q):
    x, n = _vec(state)
    m = masks_1q(n, q)
    parallel_for(_k_y, 1 << (n - 1), x, m.mL, m.mR, m.step)


def apply_z(state, q):
    x, n = _vec(state)
    m = masks_1q(n, q)
    parallel_for(_k_z, 1 << (n - 1), x, m.mL, m.mR, m.step)


def _ctrl_setup(n, ctrl, qt):
    ctrl = _as_control(ctrl)
    _check_qubit(n, qt, "target")
    _check_qubit(n, ctrl.control, "control")
    if ctrl.control == qt:
        raise ValueError(f"control and target must differ, both are {qt}")
    m = masks_2q(n, ctrl.control, qt)
    offset = ctrl.state << (n - ctrl.control - 1)
    return m, 1 << (n - qt - 1), offset


def apply_ctrl_1q(state, u, ctrl, qt):
    """Apply ``u`` to ``qt`` on the subspace where ``ctrl.control`` equals ``ctrl.state``."""
    x, n = _vec(state)
    m, step_t, offset = _ctrl_setup(n, ctrl, qt)
    parallel_for(_k_c1q, 1 << (n - 2), x, m.mL, m.mC, m.mR, step_t, offset,
                 *_entries(u, x.dtype))


def apply_ctrl_x(state, ctrl, qt):
    x, n = _vec(state)
    m, step_t, offset = _ctrl_setup(n, ctrl, qt)
    parallel_for(_k_cx, 1 << (n - 2), x, m.mL, m.mC, m.mR, step_t, offset)


_SWAP_PERM = np.array([0, 2, 1, 3])


def apply_2q(state, u, qa, qb):
    """Apply a 4x4 ``u`` given in big-endian ``|qa qb>`` ordering."""
    x, n = _vec(state)
    m = masks_2q(n, qa, qb)
    u = _mat(u, 4, x.dtype)
    if qa > qb:
        u = np.ascontiguousarray(u[np.ix_(_SWAP_PERM, _SWAP_PERM)])
    parallel_for(_k_2q, 1 << (n - 2), x, m.mL, m.mC, m.mR, m.step0, m.step1, u)


def apply_swap(state, qa, qb):
    x, n = _vec(state)
    m = masks_2q(n, qa, qb)
    parallel_for(_k_swap, 1 << (n - 2), x, m.mL, m.mC, m.mR, m.step0, m.step1)


def _multi_setup(n, ctrls, qt):
    ctrls = [_as_control(c) for c in ctrls]
    if not ctrls:
        raise ValueError("at least one control is required")
    _check_qubit(n, qt, "target")
    qubits = [c.control for c in ctrls] + [qt]
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"control and target qubits must be distinct, got {qubits}")
    masks = np.array(masks_multi(n, qubits), dtype=np.int64)
    offset = sum(c.state << (n - c.control - 1) for c in ctrls)
    return masks, 1 << (n - qt - 1), offset, 1 << (n - len(qubits))


def apply_multi_ctrl_1q(state, u, ctrls, qt):
    x, n = _vec(state)
    masks, step_t, offset, jmax = _multi_setup(n, ctrls, qt)
    parallel_for(_k_mc1q, jmax, x, masks, step_t, offset, *_entries(u, x.dtype))


def apply_multi_ctrl_x(state, ctrls, qt):
    """Multi-controlled NOT (Toffoli for two controls) as a pure swap."""
    x, n = _vec(state)
    masks, step_t, offset, jmax = _multi_setup(n, ctrls, qt)
    parallel_for(_k_mcx, jmax, x, masks, step_t, offset)


# --------------------------------------------------------------------------
# instrumentation


def touched_pairs_1q(n, q):
    """Index arrays ``(a, b)`` visited by a 1-qubit kernel, in loop order."""
    m = masks_1q(n, q)
    masks = np.array([m.mR, m.mL], dtype=np.int64)
    return _record_pairs(1 << (n - 1), masks, m.step, 0)


def touched_pairs_ctrl(n, ctrls, qt):
    """Index arrays ``(a, b)`` visited by a (multi-)controlled 1-qubit kernel."""
    if isinstance(ctrls, (ControlSpec, int)):
        ctrls = [ctrls]
    masks, step_t, offset, jmax = _multi_setup(n, ctrls, qt)
    return _record_pairs(jmax, masks, step_t, offset)


def _record_pairs(jmax, masks, step_t, offset):
    a = np.empty(jmax, dtype=np.int64)
    b = np.empty(jmax, dtype=np.int64)
    parallel_for(_r_pairs, jmax, a, b, masks, step_t, offset)
    return a, b


def touched_quads_2q(n, qa, qb):
    """``(2**(n-2), 4)`` array of ``(a, b, c, d)`` quads visited by a 2-qubit kernel."""
    m = masks_2q(n, qa, qb)
    jmax = 1 << (n - 2)
    out = np.empty((jmax, 4), dtype=np.int64)
    parallel_for(_r_quads, jmax, out, m.mL, m.mC, m.mR, m.step0, m.step1)
    return out
