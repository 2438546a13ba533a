# %% [markdown]
# # Beyond the imaginary axis
#
# Rotating the Binet integral to arg t = -eps continues P(z) to
# arg z < pi/2 + eps, and the Gevrey estimates survive there with the
# smaller rate a(eps) = 2 pi cos(eps).  No constant M is known, so it is
# fitted on a smaller shell first.

# %%
import cmath
import math

from gevreykit import BinetConfig, binet_P, verify_widened_sector, widened_sector_rate

for eps in (0.1, 0.3):
    z = 8 * cmath.exp(1j * (math.pi / 2 + eps / 2))
    a = binet_P(z, BinetConfig(phi=-eps))
    b = binet_P(z)
    print(f"eps={eps}: rotated ray vs default ray differ by {abs(a - b):.1e}")

# %%
for eps in (0.1, 0.3):
    chk = verify_widened_sector(eps)
    print(f"eps={eps}  a={chk.a:.4f} (2 pi cos eps = {widened_sector_rate(eps):.4f})  "
          f"M_fit={chk.M_fit:.4f}  max ratio={chk.report.max_ratio:.4f}  passed={chk.passed}")
