"""Command-line front end: ``maskqsim {run,bench,verify,qasm}``.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 resource refusal.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import kernels, qasm
from .bench import (
    DEFAULT_STEPS, FAMILIES, VERIFY_TOL, CsvSink, ResourceRefusal, run_bench,
    verify_random,
)
from .circuit import build_qft, build_tfxy_trotter, seeded_angles, simulate
from .state import basis_state, norm

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3
FULL_PRINT_MAX_QUBITS = 10
TOP_K = 8


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threads(text):
    if text == "max":
        return os.cpu_count() or 1
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("thread count must be >= 1")
    return k


def _common(p):
    p.add_argument("--precision", choices=("single", "double"), default="double")
    p.add_argument("--threads", type=_threads, default=None,
                   help="worker threads for gate kernels, an integer or 'max' (default: all cores)")


def build_parser():
    ap = _Parser(prog="maskqsim", description="State-vector circuit simulator")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="simulate an openQASM 2.0 file")
    p.add_argument("qasm_path")
    p.add_argument("--index", type=int, default=0, help="initial basis state index")
    p.add_argument("--mode", choices=("auto", "full", "summary"), default="auto",
                   help="print all amplitudes (n <= 10) or norm plus the largest amplitudes")
    _common(p)

    p = sub.add_parser("bench", help="time a circuit family over a qubit range")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--nmin", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="tfxy Trotter steps")
    p.add_argument("--out", default=None, help="CSV file to append to (default: stdout)")
    p.add_argument("--mem-budget", type=int, default=None,
                   help="state memory budget in bytes (default: 75%% of free memory)")
    _common(p)

    p = sub.add_parser("verify", help="random-circuit comparison against the dense oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gates", type=int, default=200)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    _common(p)

    p = sub.add_parser("qasm", help="write a benchmark circuit as openQASM 2.0")
    qs = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    e = qs.add_parser("emit-qft")
    e.add_argument("n", type=int)
    e.add_argument("--out", default=None)
    e = qs.add_parser("emit-tfxy")
    e.add_argument("n", type=int)
    e.add_argument("steps", type=int)
    e.add_argument("seed", type=int, nargs="?", default=0)
    e.add_argument("--seed", dest="seed_flag", type=int, default=None)
    e.add_argument("--out", default=None)
    return ap


def cmd_run(args, out):
    try:
        circ = qasm.load(args.qasm_path)
    except OSError as exc:
        print(f"cannot open {args.qasm_path}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except qasm.QasmError as exc:
        print(f"{args.qasm_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    n = circ.nbQubits
    mode = args.mode
    if mode == "auto":
        mode = "full" if n <= FULL_PRINT_MAX_QUBITS else "summary"
    if mode == "full" and n > FULL_PRINT_MAX_QUBITS:
        print(f"refusing to print 2^{n} amplitudes: full output is limited to "
              f"n <= {FULL_PRINT_MAX_QUBITS}; use --mode summary", file=sys.stderr)
        return EXIT_RESOURCE
    try:
        s = basis_state(n, args.index, args.precision)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    simulate(circ, s)
    amps = s.data
    if mode == "full":
        for j, a in enumerate(amps):
            print(f"{j} {a.real:+.17g} {a.imag:+.17g}", file=out)
    else:
        print(f"norm {norm(s):.17g}", file=out)
        top = np.argsort(-np.abs(amps), kind="stable")[:TOP_K]
        for j in top:
            a = amps[j]
            print(f"{j} {a.real:+.17g} {a.imag:+.17g} |a|={abs(a):.17g}", file=out)
    return EXIT_OK


def cmd_bench(args, out):
    sink = CsvSink(args.out) if args.out else CsvSink(stream=out)
    try:
        run_bench(args.family, args.nmin, args.nmax, args.precision, args.reps, args.seed,
                  args.steps, args.mem_budget, on_record=sink)
    except ResourceRefusal as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    finally:
        sink.close()
    return EXIT_OK


def cmd_verify(args, out):
    try:
        worst = verify_random(args.n, args.gates, args.trials, args.seed, args.precision)
    except ResourceRefusal as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    tol = VERIFY_TOL[args.precision]
    ok = worst <= tol
    print(f"max deviation {worst:.3e} (tolerance {tol:g}) {'PASS' if ok else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_qasm(args, out):
    try:
        if args.what == "emit-qft":
            circ = build_qft(args.n)
        else:
            seed = args.seed if args.seed_flag is None else args.seed_flag
            circ = build_tfxy_trotter(args.n, args.steps, seeded_angles(seed))
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    text = qasm.emit(circ)
    if args.out is None:
        out.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


_COMMANDS = {"run": cmd_run, "bench": cmd_bench, "verify": cmd_verify, "qasm": cmd_qasm}


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    threads = getattr(args, "threads", None)
    if threads is not None:
        kernels.set_num_threads(threads)
    return _COMMANDS[args.command](args, out)


if __name__ == "__main__":
    sys.exit(main())
