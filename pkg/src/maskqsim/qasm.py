"""openQASM 2.0 import/export for the supported gate subset.

Only one quantum register is allowed. Angles may be constant expressions
built from numbers, ``pi``, ``+ - * /`` and parentheses. Classical registers,
measurement, custom gate definitions and other includes are rejected.
"""
from __future__ import annotations

import math
import re

from .circuit import QuantumCircuit
from .gates import CCX, CNOT, CP, CZ, SWAP, H, P, RX, RY, RZ, X, Y, Z


class QasmError(ValueError):
    """Base error; carries a 1-based ``line`` and ``column`` when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class QasmSyntaxError(QasmError):
    pass


class UnsupportedGateError(QasmError):
    pass


class UnsupportedFeatureError(QasmError):
    pass


class QasmSemanticError(QasmError):
    pass


class QasmSerializationError(ValueError):
    pass


# --------------------------------------------------------------------------
# emit

_EMIT_NAMES = {
    "H": "h", "X": "x", "Y": "y", "Z": "z", "P": "u1", "RX": "rx", "RY": "ry",
    "RZ": "rz", "CNOT": "cx", "CZ": "cz", "CP": "cu1", "SWAP": "swap", "CCX": "ccx",
}


def _fmt_angle(x):
    return format(x, ".17g")


def emit(c, register="q"):
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg {register}[{c.nbQubits}];"]
    for i, g in enumerate(c.gates):
        name = _EMIT_NAMES.get(g.kind)
        if name is None:
            raise QasmSerializationError(
                f"gate {i} ({g.kind}) has no openQASM 2.0 equivalent"
            )
        if any(s != 1 for s in g.control_states):
            raise QasmSerializationError(
                f"gate {i} ({g.kind}) has a zero-control, which qelib1 cannot express"
            )
        args = f"({','.join(_fmt_angle(p) for p in g.params)})" if g.params else ""
        operands = ",".join(f"{register}[{q}]" for q in g.qubits)
        lines.append(f"{name}{args} {operands};")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<real>(?:\d+\.\d*|\.\d+)(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<op>->|==|[;,\[\]\(\)\{\}+\-*/^])
    """,
    re.VERBOSE,
)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.kind}:{self.text!r}@{self.line}:{self.col}"


def _tokenize(text):
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QasmSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        nl = m.group().count("\n")
        if nl:
            line += nl
            line_start = m.start() + m.group().rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# --------------------------------------------------------------------------
# parser

# name -> (constructor, number of angles, number of qubits)
_GATES = {
    "h": (H, 0, 1), "x": (X, 0, 1), "y": (Y, 0, 1), "z": (Z, 0, 1),
    "p": (P, 1, 1), "u1": (P, 1, 1), "rx": (RX, 1, 1), "ry": (RY, 1, 1), "rz": (RZ, 1, 1),
    "cx": (CNOT, 0, 2), "CX": (CNOT, 0, 2), "cz": (CZ, 0, 2),
    "cp": (CP, 1, 2), "cu1": (CP, 1, 2), "swap": (SWAP, 0, 2), "ccx": (CCX, 0, 3),
}
_UNSUPPORTED_STATEMENTS = {
    "creg", "measure", "barrier", "reset", "if", "gate", "opaque", "U",
}


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.reg = None
        self.size = None
        self.circuit = None

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, cls, msg, tok=None):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col)

    def expect(self, kind, text=None):
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text is not None else kind
            got = "end of input" if t.kind == "eof" else repr(t.text)
            raise self.error(QasmSyntaxError, f"expected {want}, found {got}")
        return self.advance()

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def parse(self):
        self.header()
        while not self.at("eof"):
            self.statement()
        if self.circuit is None:
            raise self.error(QasmSemanticError, "program declares no qreg")
        return self.circuit

    def header(self):
        self.expect("id", "OPENQASM")
        v = self.tok
        if v.kind != "real":
            raise self.error(QasmSyntaxError, "expected version number after OPENQASM")
        self.advance()
        if v.text != "2.0":
            raise UnsupportedFeatureError(f"openQASM version {v.text} (only 2.0)", v.line, v.col)
        self.expect("op", ";")

    def statement(self):
        t = self.tok
        if t.kind != "id":
            raise self.error(QasmSyntaxError, f"expected a statement, found {t.text!r}")
        name = t.text
        if name == "include":
            self.advance()
            s = self.expect("string")
            if s.text != '"qelib1.inc"':
                raise UnsupportedFeatureError(f"include {s.text}", s.line, s.col)
            self.expect("op", ";")
        elif name == "qreg":
            self.qreg()
        elif name in _UNSUPPORTED_STATEMENTS:
            raise self.error(UnsupportedFeatureError, f"'{name}' statements are not supported")
        elif name in _GATES:
            self.gate()
        else:
            raise self.error(UnsupportedGateError, f"unsupported gate '{name}'")

    def qreg(self):
        kw = self.advance()
        if self.reg is not None:
            raise UnsupportedFeatureError("only one qreg is supported", kw.line, kw.col)
        name = self.expect("id")
        self.expect("op", "[")
        size = self.expect("int")
        self.expect("op", "]")
        self.expect("op", ";")
        n = int(size.text)
        if n < 1:
            raise QasmSemanticError("qreg size must be >= 1", size.line, size.col)
        self.reg, self.size = name.text, n
        self.circuit = QuantumCircuit(n)

    def gate(self):
        t = self.advance()
        ctor, n_angles, n_qubits = _GATES[t.text]
        angles = []
        if self.at("op", "("):
            self.advance()
            if not self.at("op", ")"):
                angles.append(self.expr())
                while self.at("op", ","):
                    self.advance()
                    angles.append(self.expr())
            self.expect("op", ")")
        if len(angles) != n_angles:
            raise QasmSemanticError(
                f"'{t.text}' takes {n_angles} parameter(s), got {len(angles)}", t.line, t.col
            )
        qubits = [self.operand()]
        while self.at("op", ","):
            self.advance()
            qubits.append(self.operand())
        self.expect("op", ";")
        if len(qubits) != n_qubits:
            raise QasmSemanticError(
                f"'{t.text}' takes {n_qubits} qubit(s), got {len(qubits)}", t.line, t.col
            )
        if len(set(qubits)) != len(qubits):
            raise QasmSemanticError(f"repeated qubit operand in '{t.text}'", t.line, t.col)
        if self.circuit is None:
            raise QasmSemanticError("gate used before qreg declaration", t.line, t.col)
        self.circuit.push_back(ctor(*qubits, *angles))

    def operand(self):
        name = self.expect("id")
        if not self.at("op", "["):
            raise self.error(
                UnsupportedFeatureError, "whole-register operands are not supported"
            )
        if self.reg is None:
            raise QasmSemanticError("gate used before qreg declaration", name.line, name.col)
        if name.text != self.reg:
            raise QasmSemanticError(f"unknown register '{name.text}'", name.line, name.col)
        self.advance()
        idx = self.expect("int")
        self.expect("op", "]")
        q = int(idx.text)
        if q >= self.size:
            raise QasmSemanticError(
                f"qubit {self.reg}[{q}] out of bounds for qreg of size {self.size}",
                idx.line, idx.col,
            )
        return q

    # expr := term (('+'|'-') term)*
    def expr(self):
        v = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.advance().text
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    # term := unary (('*'|'/') unary)*
    def term(self):
        v = self.unary()
        while self.at("op", "*") or self.at("op", "/"):
            op = self.advance()
            rhs = self.unary()
            if op.text == "*":
                v *= rhs
            elif rhs == 0:
                raise QasmSemanticError("division by zero in angle expression", op.line, op.col)
            else:
                v /= rhs
        return v

    def unary(self):
        if self.at("op", "-"):
            self.advance()
            return -self.unary()
        if self.at("op", "+"):
            self.advance()
            return self.unary()
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind in ("int", "real"):
            self.advance()
            return float(t.text)
        if t.kind == "id" and t.text == "pi":
            self.advance()
            return math.pi
        if self.at("op", "("):
            self.advance()
            v = self.expr()
            self.expect("op", ")")
            return v
        got = "end of input" if t.kind == "eof" else repr(t.text)
        raise self.error(QasmSyntaxError, f"expected a number, 'pi' or '(', found {got}")


def parse(text):
    """Parse openQASM 2.0 source into a :class:`QuantumCircuit`."""
    return _Parser(text).parse()


def load(path):
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


def dump(c, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(emit(c))
