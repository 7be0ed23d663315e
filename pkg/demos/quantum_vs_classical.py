"""Put the quantum and classical walks side by side at n=100.

The classical walk piles up near the origin with sigma = sqrt(n); the
quantum walk races outward with sigma proportional to n and most of its
weight near the +-n/sqrt(2) fronts.
"""

import numpy as np

from photonwalk import (
    InitialSpec,
    classical_walk,
    compare_report,
    distribution,
    evolve,
    hadamard_coin,
    make_initial,
)

N = 100
spec = InitialSpec(np.pi / 4, np.pi / 2)
quantum = distribution(evolve(make_initial(spec, N), hadamard_coin(), N))
classical = classical_walk(N)
report = compare_report(quantum, classical)

print(f"n = {N}")
print(f"  sigma quantum   = {report.sigma_quantum:.4f}")
print(f"  sigma classical = {report.sigma_classical:.4f}")
print(f"  ratio           = {report.sigma_ratio:.4f}")
print(f"  total variation = {report.tv:.4f}\n")

peak = max(max(q for _x, q, _c in report.table),
           max(c for _x, _q, c in report.table))
print("      x   quantum   classical")
for x, q, c in report.table[::4]:
    qbar = "#" * round(q / peak * 30)
    cbar = "o" * round(c / peak * 30)
    print(f"  {x:+5d}  {q:8.5f}  {c:9.5f}  |{qbar:<30s}|{cbar}")
print("\n('#' quantum, 'o' classical; every 4th site shown)")
