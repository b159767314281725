"""
Trotterized TFXY spin chain
===========================

Each Trotter step applies a fixed eight-gate block to the even
nearest-neighbour pairs, then to the odd pairs. The rotation angles come from
an iterable; here a seeded stream.
"""

import itertools

import numpy as np

from maskqsim import basis_state, build_tfxy_trotter, max_abs_diff, norm, random_state, simulate
from maskqsim.circuit import seeded_angles, zero_angles

circ = build_tfxy_trotter(4, 1, itertools.count(1))
for g in circ[:8]:
    print(g.kind, g.qubits, g.params)

# %%
# A 10-step circuit on 12 qubits, single vs double precision
circ = build_tfxy_trotter(12, 10, seeded_angles(1))
print(len(circ), "gates")
s64 = basis_state(12, 0, "double")
s32 = basis_state(12, 0, "single")
simulate(circ, s64)
simulate(circ, s32)
print("norm", norm(s64), "single vs double:", max_abs_diff(s32, s64))

# %%
# With all angles zero the rotations vanish and the CNOT pairs cancel.
r = random_state(8, np.random.default_rng(0))
t = r.copy()
simulate(build_tfxy_trotter(8, 5, zero_angles()), t)
print("zero-angle circuit deviation from identity:", max_abs_diff(r, t))
