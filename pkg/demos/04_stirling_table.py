# %% [markdown]
# # Optimal truncation of the Stirling series
#
# Truncating after n_opt = floor(pi|z| - 1) nonzero terms leaves an error
# below K(z) 2 sqrt(2 pi |z|) / (2 pi |z| - 1) e^(-2 pi |z|), which for real
# |z| > 1 is below 0.94891 e^(-2 pi |z|).

# %%
from gevreykit import log_gamma, optimal_error_stirling, stirling_bound_scan
from gevreykit.cli import stirling_table
import math

print(f"{'|z|':>5} {'n_opt':>5} {'bound':>12} {'actual':>12} {'claim':>12}")
for r, n, bound, actual, claim in stirling_table([2, 5, 10, 20]):
    print(f"{r:5.1f} {n:5d} {bound:12.4e} {actual:12.4e} {claim:12.4e}")

# %% [markdown]
# The closed form against a brute-force minimisation of the per-term
# bounds.

# %%
for r in (5, 10, 20):
    n_scan, b_scan = stirling_bound_scan(r)
    opt = optimal_error_stirling(r)
    print(f"|z|={r:2d}  floor rule {opt.n_opt:2d}  scan {n_scan:2d}  bound ratio {opt.bound / b_scan:.2f}")

# %% [markdown]
# log Gamma from the Binet integral.

# %%
for z in (0.5, 1, 10, 3 + 4j):
    print(z, log_gamma(z))
print("ln 9! =", math.log(math.factorial(9)))
