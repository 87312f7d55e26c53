"""
Prime-count bias and Robin's B function
=======================================

``delta`` counts primes in non-square classes minus square classes.  The
regularized bias replaces each count by B(x; q, a) = li(phi psi) - phi pi,
which is expected to stay positive for every x.
"""

import math

import numpy as np
import matplotlib.pyplot as plt

from chebbias import BiasScanner, bias_point, robin_B, tally_to

t = tally_to(10**5, 4)
bp = bias_point(10**5, 4, t)
print(bp.delta, round(bp.delta_reg, 3), {a: round(v, 3) for a, v in bp.B_by_class.items()})
print(robin_B(10**5, 4, 3, t) - robin_B(10**5, 4, 1, t))

# %%
# Along every prime up to 10^6 the raw bias dips below zero near 26861,
# the regularized one does not.
xs, d, dr = [], [], []
for chunk in BiasScanner(4, 10**6).chunks(dense=True):
    xs.append(chunk.x)
    d.append(chunk.delta)
    dr.append(chunk.delta_reg)
xs, d, dr = map(np.concatenate, (xs, d, dr))
print("min delta", d.min(), "at", xs[d.argmin()])
print("min delta_reg", dr[xs > 3].min())

fig, ax = plt.subplots(2, 1, sharex=True)
ax[0].plot(xs, d, lw=0.5)
ax[0].axhline(0, color="k", lw=0.5)
ax[0].set_ylabel("delta(x, 4)")
ax[1].plot(xs, dr / np.sqrt(xs), lw=0.5)
ax[1].plot(xs, 2 / np.log(xs), "k--", lw=0.8)
ax[1].set_ylabel("delta_reg / sqrt(x)")
ax[1].set_xscale("log")
plt.show()

# %%
# For a prime modulus the classes are weighted by the Legendre symbol.
for q in (11, 13, 163):
    bp = bias_point(10**6, q, tally_to(10**6, q))
    print(q, bp.delta, round(bp.normalized * math.log(10**6), 3))
