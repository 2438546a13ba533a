# %% [markdown]
# # Borel-Laplace summation
#
# Divide by n!, continue the resulting power series past its disc of
# convergence with a Pade approximant, and Laplace-transform back.

# %%
import math

from scipy.integrate import quad

from gevreykit import (binet_P, borel_sum, borel_transform, pade_continue, radius_estimate,
                       stirling_coeffs)

f = borel_transform(stirling_coeffs(39))
print("radius of the Borel transform:", radius_estimate(f), " 2 pi =", 2 * math.pi)
approx = pade_continue(f, 8, 8)
print("[8/8] poles nearest the origin:", sorted(approx.poles, key=abs)[:2])

# %% [markdown]
# The Stirling series at z = 5 and 10 against the Binet integral.

# %%
for z in (2, 5, 10):
    s = borel_sum(stirling_coeffs(39), z)
    print(f"z={z:2d}  orders={s.orders}  sum={s.value.real:.16f}  "
          f"P(z)={binet_P(z).real:.16f}  estimate={s.error:.1e}")

# %% [markdown]
# The Euler series sum (-1)^n n! / z^(n+1) sums to the Stieltjes integral
# int_0^inf e^(-z t) / (1 + t) dt.

# %%
euler = [(-1) ** n * math.factorial(n) for n in range(21)]
for z in (1, 5):
    s = borel_sum(euler, z)
    ref, _ = quad(lambda t: math.exp(-z * t) / (1 + t), 0, math.inf)
    print(f"z={z}  Borel sum={s.value.real:.15f}  integral={ref:.15f}")
