"""
Quantum Fourier transform
=========================

Build the QFT with ``push_back``, simulate it, and compare against the
discrete Fourier transform and the dense reference simulator.
"""

import math

import numpy as np

from maskqsim import CP, H, SWAP, QuantumCircuit, basis_state, build_qft, full_matrix, simulate

n = 5
circ = QuantumCircuit(n)
for i in range(n):
    circ.push_back(H(i))
    for j in range(2, n - i + 1):
        circ.push_back(CP(j + i - 1, i, -2 * math.pi / 2 ** j))
for i in range(n // 2):
    circ.push_back(SWAP(i, n - i - 1))

assert circ == build_qft(n)
print(circ, "->", [g.kind for g in circ][:6], "...")

# %%
# |0...0> goes to the uniform superposition
s = basis_state(n, 0)
simulate(circ, s)
print("amplitudes:", np.round(s.data[:4], 6), "... all equal", 2 ** (-n / 2))

# %%
# With negative phase angles the circuit maps |k> to
# sum_m exp(-2 pi i k m / N) |m> / sqrt(N), i.e. numpy's forward FFT, normalized.
N = 2 ** n
k = 11
s = basis_state(n, k)
simulate(circ, s)
fft = np.fft.fft(np.eye(N)[k]) / math.sqrt(N)
print("max |QFT - FFT| =", np.max(np.abs(s.data - fft)))

# %%
# The same unitary assembled from Kronecker products
u = full_matrix(circ)
print("max |U - DFT matrix| =", np.max(np.abs(u - np.fft.fft(np.eye(N)) / math.sqrt(N))))
