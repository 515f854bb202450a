# Predicted vs measured visibility over (N, m), kd = pi, zero-augmented grids.

import math
import sys

from multiphoton import EmitterChain, estimate_visibility, sweep, visibility_closed_form
from multiphoton.analysis import augmented_grid

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 8

print("n,m,predicted,measured,abs_error")
for n in range(2, n_max + 1):
    grid = augmented_grid(2001, n, math.pi)
    chain = EmitterChain(n, math.pi)
    for m in range(1, n + 1):
        v = estimate_visibility(sweep(chain, m, 0.0, grid))
        p = visibility_closed_form(n, m)
        print(f"{n},{m},{p:.6f},{v:.6f},{abs(v - p):.2e}")

print("\n# m = 2 approaching 1/3")
for n in (3, 5, 10, 50, 200):
    print(f"N={n:4d}  V={visibility_closed_form(n, 2):.6f}")
