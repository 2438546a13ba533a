# %% [markdown]
# # Gevrey remainder bounds and optimal truncation
#
# For an expansion with |P(z) - S_n(z)| <= M n! / (a^n |z|^(n+1)) the bound
# is smallest near n ~ a|z|, where it is about e^(-a|z|).

# %%
from gevreykit import (GevreyExpansion, Sector, binet_P, counterexample, optimal_truncation,
                       remainder_bound, stirling_coeffs, superasymptotic_bound, verify_gevrey)
import math
import numpy as np

e = GevreyExpansion(stirling_coeffs(80), M=1 / 12, a=2 * math.pi)
for r in (1, 2, 4, 8):
    t = optimal_truncation(e, r)
    print(f"|z|={r}:  n_opt={t.n_opt:3d}  bound={t.bound:.3e}  "
          f"superasymptotic={superasymptotic_bound(e, r):.3e}")

# %% [markdown]
# The bounds against the Binet function itself, for a few truncation
# orders at z = 3.

# %%
z = 3.0
P = binet_P(z)
for n in range(0, 12, 2):
    S = sum(float(c) / z ** (k + 1) for k, c in enumerate(e.coeffs.values[:n]))
    print(f"n={n:2d}  |P - S_n| = {abs(P - S):.3e}   bound = {remainder_bound(e, z, n):.3e}")

# %% [markdown]
# ## Non-uniqueness in a narrow sector
#
# phi(z) e^(-z) / z has the zero expansion in S(-pi/2 + delta, pi/2 - delta)
# with a = sin(delta): in a sector of opening below pi the expansion does
# not determine the function.

# %%
for delta in (math.pi / 6, math.pi / 4, math.pi / 3):
    cx = counterexample(1.0, delta, 1.0)
    edge = 0.999 * (math.pi / 2 - delta)
    grid = [r * np.exp(1j * t) for r in (1.5, 4, 12, 40) for t in np.linspace(-edge, edge, 5)]
    rep = verify_gevrey(cx.sampler, cx.expansion, cx.sector, grid, 40)
    print(f"delta={delta:.4f}  a={cx.expansion.a:.4f}  rows={len(rep.rows)}  "
          f"max ratio={rep.max_ratio:.3f}  passed={rep.passed}")
