"""
Level crossings along the resonant line
=======================================

As the cavity frequency xi = omega/J drops, neighbouring lower-branch
levels cross.  For weak coupling all crossings pile up near xi0 = (g/J)^2.
"""
import numpy as np

from dressed_cqed import analytic
from dressed_cqed.model import ModelParams

for g_over_j in (0.7, 0.5, 0.16):
    xs = np.array([analytic.crossing_point(g_over_j, n).xi_star for n in range(19)])
    print(f"g/J={g_over_j:<5}  xi0={g_over_j**2:.4f}  crossings span [{xs.min():.4f}, {xs.max():.4f}]")

# %%
# Three regions for g = 0.05 J.
p = ModelParams(1.0, 1.0, 1.0, 0.05)
print("xi0 =", analytic.xi0(p), " xi1 =", analytic.xi1(p))
for xi in (0.001, 1.0, 3.5):
    info = analytic.classify_region(xi, p)
    ground = "none (unbounded below)" if info.ground is None else info.ground.label
    print(f"xi={xi:<6} region {info.region:<4s} ground: {ground}")

# %%
# Second-order shift of the lower branch versus the exact value.
for n in range(4):
    exact = analytic.N(n, 1.0, 0.05) - 1.0
    print(f"n={n}  exact {exact:.3e}  shift {analytic.level_shift(1.0, 0.05, n):.3e}")
