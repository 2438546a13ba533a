# %% [markdown]
# # Which Gevrey classes determine their functions?
#
# In a sector of opening pi/k the answer depends on how the constants
# M(delta) grow as the sector is shrunk by delta: a finite
# int log log M(delta) d delta gives uniqueness.

# %%
import math

import numpy as np

from gevreykit import ADeltaProfile, MDeltaProfile, Sector, carleman_loglog
from gevreykit.cli import uniqueness_verdict

half = Sector(-math.pi / 2, math.pi / 2)
for M, b, g in [(1, 1, 1), (3, 2, 2), (10, 5, 6)]:
    v = uniqueness_verdict(half, 1, MDeltaProfile.exponential(M, b, g))
    print(f"M exp({b}/delta^{g}):  class={v['class']}  loglog finite={v['loglog']['finite']}  unique={v['unique']}")

# %% [markdown]
# exp(exp(1/delta)) is tabulated through log log M = 1/delta; the integral
# diverges and the criterion is silent.

# %%
d = np.geomspace(1e-3, math.pi / 2, 400)
tab = MDeltaProfile.tabulated(d, loglog_M=1 / d)
print(carleman_loglog(tab))
print(uniqueness_verdict(half, 1, tab)["unique"])

# %% [markdown]
# Narrow sectors and a rate a(delta) proportional to delta both admit
# counterexamples.

# %%
m = MDeltaProfile.constant(10)
print(uniqueness_verdict(Sector(0, math.pi / 4), 1, m)["reason"])
print(uniqueness_verdict(half, 1, m, ADeltaProfile.power(1, 1))["reason"])
print(uniqueness_verdict(Sector(-2, 2), 1, m)["reason"])
