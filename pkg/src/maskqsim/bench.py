"""Benchmark harness and oracle regression runs."""
from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass

import numpy as np

from .circuit import build_qft, build_tfxy_trotter, random_circuit, seeded_angles, simulate
from .oracle import reference_simulate
from .state import basis_state, dtype_for, max_abs_diff, random_state

CSV_HEADER = ("family", "n", "precision", "reps", "gate_count", "wall_seconds")
FAMILIES = ("qft", "tfxy")
DEFAULT_STEPS = 10
VERIFY_MAX_QUBITS = 10
VERIFY_TOL = {"double": 1e-12, "single": 1e-5}


class ResourceRefusal(RuntimeError):
    pass


@dataclass(frozen=True)
class TimingRecord:
    family: str
    nbQubits: int
    precision: str
    repetitions: int
    wallSeconds: float
    gateCount: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if not self.wallSeconds > 0:
            raise ValueError("wallSeconds must be positive")

    def row(self):
        return (self.family, self.nbQubits, self.precision, self.repetitions,
                self.gateCount, repr(self.wallSeconds))


def state_bytes(n, precision):
    return dtype_for(precision).itemsize << n


def free_memory_bytes():
    try:
        return os.sysconf("SC_AVPHYS_PAGES") * os.sysconf("SC_PAGE_SIZE")
    except (ValueError, OSError, AttributeError):
        with open("/proc/meminfo") as f:
            for line in f:
                if line.startswith("MemAvailable:"):
                    return int(line.split()[1]) * 1024
        raise


def default_budget():
    return int(0.75 * free_memory_bytes())


def check_memory(n, precision, budget=None):
    budget = default_budget() if budget is None else budget
    need = state_bytes(n, precision)
    if need > budget:
        raise ResourceRefusal(
            f"{n} qubits in {precision} precision need an estimated {need} bytes, "
            f"over the memory budget of {budget} bytes"
        )
    return need


def build_family(family, n, seed=0, steps=DEFAULT_STEPS):
    if family == "qft":
        return build_qft(n)
    if family == "tfxy":
        return build_tfxy_trotter(n, steps, seeded_angles(seed))
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def time_circuit(circ, precision="double", reps=3):
    """Best wall time of ``reps`` simulations from ``|0...0>``.

    Circuit construction and state allocation are outside the timed region.
    """
    best = float("inf")
    for _ in range(reps):
        s = basis_state(circ.nbQubits, 0, precision)
        t0 = time.perf_counter()
        simulate(circ, s)
        best = min(best, time.perf_counter() - t0)
    return best


def _warm_up(family, precision, seed, steps):
    # trigger kernel compilation outside the timed runs
    time_circuit(build_family(family, 3, seed, steps), precision, reps=1)


def run_bench(family, n_min, n_max, precision="double", reps=3, seed=0,
              steps=DEFAULT_STEPS, budget=None, on_record=None):
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= nMin <= nMax, got {n_min}..{n_max}")
    if reps < 1:
        raise ValueError("repetitions must be >= 1")
    if family == "tfxy" and n_min < 2:
        raise ValueError("tfxy family needs at least 2 qubits")
    check_memory(n_max, precision, budget)
    _warm_up(family, precision, seed, steps)
    records = []
    for n in range(n_min, n_max + 1):
        circ = build_family(family, n, seed, steps)
        rec = TimingRecord(family, n, precision, reps, time_circuit(circ, precision, reps), len(circ))
        records.append(rec)
        if on_record is not None:
            on_record(rec)
    return records


class CsvSink:
    """Appends rows to a CSV file (or stream), writing the header once."""

    def __init__(self, path=None, stream=None):
        if path is not None:
            fresh = not os.path.exists(path) or os.path.getsize(path) == 0
            self._fh = open(path, "a", newline="", encoding="utf-8")
            self._own = True
        else:
            fresh = True
            self._fh = stream
            self._own = False
        self._w = csv.writer(self._fh, lineterminator="\n")
        if fresh:
            self._w.writerow(CSV_HEADER)

    def __call__(self, rec):
        self._w.writerow(rec.row())
        self._fh.flush()

    def close(self):
        if self._own:
            self._fh.close()


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return [
            TimingRecord(r["family"], int(r["n"]), r["precision"], int(r["reps"]),
                         float(r["wall_seconds"]), int(r["gate_count"]))
            for r in csv.DictReader(f)
        ]


def verify_random(n, n_gates, trials, seed=0, precision="double"):
    """Largest kernel-vs-oracle deviation over random circuits and states."""
    if n > VERIFY_MAX_QUBITS:
        raise ResourceRefusal(
            f"oracle verification is limited to {VERIFY_MAX_QUBITS} qubits "
            f"(the reference simulator costs O(2^n) per gate per input setting), got {n}"
        )
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        circ = random_circuit(n, n_gates, rng)
        s0 = random_state(n, rng, precision)
        got = simulate(circ, s0.copy())
        want = reference_simulate(circ, s0)
        worst = max(worst, max_abs_diff(got, want))
    return worst
