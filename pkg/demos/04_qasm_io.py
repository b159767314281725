"""
openQASM 2.0 import and export
==============================
"""

from maskqsim import basis_state, build_qft, max_abs_diff, simulate
from maskqsim import qasm

text = qasm.emit(build_qft(3))
print(text)

# %%
back = qasm.parse(text)
a, b = basis_state(3, 5), basis_state(3, 5)
simulate(build_qft(3), a)
simulate(back, b)
print("round trip deviation:", max_abs_diff(a, b))

# %%
# Hand-written input: comments and constant angle expressions are allowed
src = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
h q[0];            // superposition
cu1(pi/2) q[0],q[1];
rz(-pi/4 + 0.1) q[1];
"""
print(qasm.parse(src).gates)

# %%
# Errors carry a line and column
try:
    qasm.parse(src.replace("h q[0];", "h q[7];"))
except qasm.QasmError as exc:
    print(type(exc).__name__, "-", exc)
