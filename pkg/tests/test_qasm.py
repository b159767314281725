import math

import numpy as np
import pytest

from maskqsim import gates as G
from maskqsim import qasm
from maskqsim.circuit import (
    QASM_KINDS, QuantumCircuit, build_qft, build_tfxy_trotter, random_circuit, simulate,
)
from maskqsim.state import basis_state, max_abs_diff, random_state

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def test_emit_minimal():
    text = qasm.emit(QuantumCircuit(1, [G.X(0)]))
    assert text == 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nx q[0];\n'


def test_emit_qft2():
    lines = qasm.emit(build_qft(2)).splitlines()[3:]
    assert lines == ["h q[0];", "cu1(-1.5707963267948966) q[1],q[0];", "h q[1];",
                     "swap q[0],q[1];"]


def test_emit_rejects_generic_matrix(rng):
    c = QuantumCircuit(2, [G.H(0), G.U2(1, np.eye(2))])
    with pytest.raises(qasm.QasmSerializationError, match="gate 1"):
        qasm.emit(c)
    with pytest.raises(qasm.QasmSerializationError, match="gate 0"):
        qasm.emit(QuantumCircuit(2, [G.CNOT(0, 1, control_state=0)]))


def test_parse_cx():
    c = qasm.parse(HEADER + "qreg q[2]; cx q[0],q[1];")
    assert c.nbQubits == 2
    assert c.gates == [G.CNOT(0, 1)]


def test_parse_angle_expression():
    c = qasm.parse(HEADER + "qreg q[2];\ncu1(pi/2) q[0],q[1];")
    assert c.gates == [G.CP(0, 1, math.pi / 2)]
    c = qasm.parse(HEADER + "qreg q[1]; rz(-(pi - 1) * 2 / 4 + .5e1) q[0];")
    assert c[0].params[0] == pytest.approx(-(math.pi - 1) * 2 / 4 + 5, abs=1e-15)


def test_parse_comments_crlf_whitespace():
    text = "// leading\r\nOPENQASM 2.0;\r\ninclude \"qelib1.inc\";\r\n" \
           "qreg  r [ 3 ] ;// trailing\r\n  h r[2] ;\r\n p( pi ) r[0];\r\nccx r[0],r[1],r[2];"
    c = qasm.parse(text)
    assert c.gates == [G.H(2), G.P(0, math.pi), G.CCX(0, 1, 2)]


def test_qft_round_trip_simulation():
    c = build_qft(4)
    back = qasm.parse(qasm.emit(c))
    a, b = basis_state(4, 3), basis_state(4, 3)
    simulate(c, a)
    simulate(back, b)
    assert max_abs_diff(a, b) <= 1e-12


def test_random_round_trip_structural(rng):
    for _ in range(100):
        n = int(rng.integers(1, 9))
        c = random_circuit(n, int(rng.integers(0, 101)), rng, kinds=QASM_KINDS,
                           zero_controls=False)
        back = qasm.parse(qasm.emit(c))
        assert back.nbQubits == c.nbQubits
        assert [(g.kind, g.qubits) for g in back] == [(g.kind, g.qubits) for g in c]
        for g, h in zip(c, back):
            assert np.allclose(g.params, h.params, rtol=0, atol=1e-15)


def test_tfxy_emit_names():
    body = qasm.emit(build_tfxy_trotter(2, 1)).splitlines()[3:]
    assert len(body) == 8
    assert {line.split("(")[0].split()[0] for line in body} == {"rz", "cx", "rx"}


@pytest.mark.parametrize(
    "text, err, line, col",
    [
        (HEADER + "qreg q[2];\nh q[0]\nx q[1];", qasm.QasmSyntaxError, 5, 1),
        (HEADER + "qreg q[2];\nfoo q[0];", qasm.UnsupportedGateError, 4, 1),
        (HEADER + "qreg q[2];\nh r[0];", qasm.QasmSemanticError, 4, 3),
        (HEADER + "qreg q[2];\nh q[2];", qasm.QasmSemanticError, 4, 5),
        (HEADER + "qreg q[2];\nqreg r[2];", qasm.UnsupportedFeatureError, 4, 1),
        (HEADER + "qreg q[2];\ncreg c[2];", qasm.UnsupportedFeatureError, 4, 1),
        (HEADER + "qreg q[2];\nmeasure q[0] -> c[0];", qasm.UnsupportedFeatureError, 4, 1),
        (HEADER + "qreg q[2];\nrz() q[0];", qasm.QasmSemanticError, 4, 1),
        (HEADER + "qreg q[2];\nrz(pi/) q[0];", qasm.QasmSyntaxError, 4, 7),
        (HEADER + "qreg q[2];\nrz(1/0) q[0];", qasm.QasmSemanticError, 4, 5),
        (HEADER + "qreg q[2];\ncx q[0],q[0];", qasm.QasmSemanticError, 4, 1),
        (HEADER + "qreg q[2];\ncx q[0];", qasm.QasmSemanticError, 4, 1),
        (HEADER + "qreg q[2];\nh q;", qasm.UnsupportedFeatureError, 4, 4),
        (HEADER + "qreg q[2];\nh q[0] $", qasm.QasmSyntaxError, 4, 8),
        (HEADER + "h q[0];", qasm.QasmSemanticError, 3, 3),
        ('OPENQASM 3.0;\nqreg q[1];', qasm.UnsupportedFeatureError, 1, 10),
        ('qreg q[1];', qasm.QasmSyntaxError, 1, 1),
        ('OPENQASM 2.0;\ninclude "other.inc";', qasm.UnsupportedFeatureError, 2, 9),
        (HEADER, qasm.QasmSemanticError, 3, 1),
    ],
)
def test_malformed_inputs(text, err, line, col):
    with pytest.raises(err) as info:
        qasm.parse(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


def test_file_round_trip(tmp_path, rng):
    c = build_tfxy_trotter(5, 2)
    p = tmp_path / "t.qasm"
    qasm.dump(c, p)
    assert b"\r" not in p.read_bytes()
    back = qasm.load(p)
    s = random_state(5, rng)
    a, b = s.copy(), s.copy()
    simulate(c, a)
    simulate(back, b)
    assert max_abs_diff(a, b) <= 1e-12
