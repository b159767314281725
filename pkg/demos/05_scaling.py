"""
Run time versus qubit count
===========================

Times the QFT family from |0...0> and prints the ratio between consecutive
qubit counts. Once the state no longer fits in cache, each additional qubit
roughly doubles the run time (slightly more for the QFT, whose gate count
also grows). Raise ``N_MAX`` for the large-n regime; 26 qubits need 1 GiB in
double precision.
"""

from maskqsim.bench import run_bench

N_MIN, N_MAX = 14, 21

records = run_bench("qft", N_MIN, N_MAX, precision="double", reps=3)
prev = None
for r in records:
    ratio = "" if prev is None else f"  x{r.wallSeconds / prev:.2f}"
    print(f"n={r.nbQubits:2d} gates={r.gateCount:4d} t={r.wallSeconds:.4f}s{ratio}")
    prev = r.wallSeconds

# %%
# The same data through the command line, as CSV:
#   maskqsim bench qft --nmin 14 --nmax 21 --out qft.csv
#   maskqsim bench tfxy --nmin 14 --nmax 21 --steps 10 --precision single --out tfxy.csv
