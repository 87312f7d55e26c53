"""
Explicit formula and variance from zeros
========================================

li(x) - pi(x) is modelled by sqrt(x)/log x (1 + 2 sum sin(gamma log x + a_gamma)
/ sqrt(1/4 + gamma^2)).  The bundled tables hold the first 100 zeros of
zeta and of L(s, chi_-4).
"""

import numpy as np
import matplotlib.pyplot as plt

from chebbias import logint, pi
from chebbias.explicit import CHI4_TABLE, bundled, explicit_delta, variance

z = bundled()
print(z.label, len(z), z.gammas[:3])

# %%
xs = np.geomspace(1e3, 1e7, 200)
predicted = explicit_delta(xs, z)
actual = np.array([logint(float(x)) - pi(int(x)) for x in xs])
print("min predicted", predicted.min(), "corr", np.corrcoef(predicted, actual)[0, 1])

plt.loglog(xs, actual, label="li(x) - pi(x)")
plt.loglog(xs, predicted, label="100 zeros")
plt.loglog(xs, explicit_delta(xs, z, terms=0), "k--", label="main term")
plt.xlabel("x")
plt.legend()
plt.show()

# %%
# Partial sums of 2/(1/4 + gamma^2) creep up towards the full value.
for table in (z, bundled(CHI4_TABLE)):
    partial = [variance(table.prefix(n)) for n in (1, 10, 50, 100)]
    print(table.label, [round(v, 5) for v in partial])
