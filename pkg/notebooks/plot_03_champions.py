"""
Champions
=========

A champion is the first prime at which the bias reaches a new record level
in a given direction.  Near champions the normalized regularized bias sits
close to 2/log x.
"""

import numpy as np
import matplotlib.pyplot as plt

from chebbias import bias_sum, champions

for q, limit in ((4, 4 * 10**5), (11, 2 * 10**6), (13, 10**6), (163, 2 * 10**5)):
    up = champions(q, limit, 1)
    down = champions(q, limit, -1)
    print(q, "top", (up[-1].n, up[-1].x_n), "bottom", (-down[-1].n, down[-1].x_n) if down else None)

# %%
recs = champions(11, 10**7, 1) + champions(11, 10**7, -1)
x = np.array([r.x_n for r in recs], dtype=float)
y = np.array([r.normalized for r in recs])
order = np.argsort(x)
plt.semilogx(x[order], y[order], ".", ms=3, label="champions, q = 11")
grid = np.geomspace(x.min(), x.max(), 200)
plt.semilogx(grid, 2 / np.log(grid), "k-", label="2 / log x")
plt.xlabel("x_n")
plt.ylabel("delta_reg(x_n) / sqrt(x_n)")
plt.legend()
plt.show()

# %%
# b(q) sums eps * n / x_n over all champions, scaled by 1/floor(q/2) for prime q.
for q in (4, 11, 13, 163):
    print(q, round(bias_sum(q, 10**6), 4))
