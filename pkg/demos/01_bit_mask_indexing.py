"""
Bit-mask index arithmetic
=========================

A 1-qubit gate on qubit ``q`` of an ``n``-qubit state couples amplitudes
whose indices differ only in bit ``q`` (qubit 0 is the most significant bit).
Instead of looping over the whole vector, the kernels loop over a counter
``j`` with ``n - 1`` bits and splice a zero into it with two masks.
"""

import numpy as np

from maskqsim import kernels as K

# masks for every target qubit of a 3-qubit register
for q in range(3):
    m = K.masks_1q(3, q)
    a, b = K.touched_pairs_1q(3, q)
    print(f"q={q}: mL={m.mL} mR={m.mR}  a={a.tolist()}  b={b.tolist()}")

# %%
# Controlled gates skip two bits, so the counter has n - 2 bits and three
# masks. A one-control adds the control's place value to both indices.
for qc, qt, state in [(0, 1, 1), (0, 1, 0), (2, 1, 1), (2, 1, 0)]:
    a, b = K.touched_pairs_ctrl(3, K.ControlSpec(qc, state), qt)
    print(f"control q{qc}={state}, target q{qt}: a={a.tolist()} b={b.tolist()}")

# %%
# Each extra control halves the amplitudes a gate has to visit.
n = 8
for k in range(1, 4):
    ctrls = [K.ControlSpec(q, 1) for q in range(k)]
    a, _ = K.touched_pairs_ctrl(n, ctrls, n - 1)
    print(f"{k} control(s): {2 * len(a)} of {2 ** n} amplitudes touched")

# %%
# Two-qubit gates visit quads (a, b, c, d); the qubits need not be adjacent.
print(K.touched_quads_2q(4, 0, 3))
