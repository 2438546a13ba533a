# %% [markdown]
# # Exact coefficients
#
# Bernoulli numbers, the Taylor coefficients of the Binet function
# F(t) = (1/t)(1/2 - 1/t + 1/(e^t - 1)) and the Stirling coefficients
# p_n = n! f_n, all as exact fractions.

# %%
import math

from gevreykit import (bernoulli_asymptotic, bernoulli_numbers, binet_taylor_coeffs,
                       gevrey_order_estimate, stirling_coeffs)

B = bernoulli_numbers(10).values
for j in range(0, 21, 2):
    print(f"B_{j:<2d} = {B[j]}")

# %% [markdown]
# The Stirling coefficients vanish at odd index, and the even ones are
# B_{2k} / (2k(2k-1)).

# %%
p = stirling_coeffs(12)
f = binet_taylor_coeffs(12)
for n, (pn, fn) in enumerate(zip(p.values, f.values)):
    print(f"{n:2d}  p_n = {str(pn):>22s}   f_n = {str(fn):>30s}   n! f_n == p_n: {pn == fn * math.factorial(n)}")

# %% [markdown]
# B_{2n+2} ~ (-1)^n 2 (2n+2)! / (2 pi)^(2n+2), so the Stirling series is
# Gevrey of order 1: the fitted order comes out close to 1.

# %%
for n in (4, 9, 19, 39):
    exact = float(bernoulli_numbers(n + 1).values[2 * n + 2])
    print(f"B_{2 * n + 2:<2d} = {exact: .6e}   leading term = {bernoulli_asymptotic(n): .6e}")
print("Gevrey order estimate:", gevrey_order_estimate(stirling_coeffs(60)))
