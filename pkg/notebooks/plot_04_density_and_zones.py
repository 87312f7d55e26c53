"""
Sign zones and logarithmic density
==================================

Zones are maximal runs of integers where delta(t, q) keeps one sign; the
logarithmic density weights each integer t by 1/t.
"""

import matplotlib.pyplot as plt

from chebbias import log_density, zones

zs = zones(4, 10**6)
neg = [z for z in zs if z.sign < 0]
for z in neg[:5]:
    print(z.start, z.end, z.length, z.primes)

# %%
# Ties (delta = 0) get their own bucket, so d_plus + d_minus + d_zero is
# H(X)/log X, a little above 1.
d = log_density(4, 10**6)
print(d.d_plus, d.d_minus, d.d_zero, d.d_plus + d.d_minus + d.d_zero)

# %%
# q = 13 goes negative early, at 2083.
zs13 = zones(13, 12_000)
fig, ax = plt.subplots()
for z in zs13:
    ax.axvspan(z.start, z.end, color={1: "tab:blue", -1: "tab:red", 0: "0.8"}[z.sign], lw=0)
ax.set_xlim(2, 12_000)
ax.set_yticks([])
ax.set_xlabel("t (blue: delta > 0, red: delta < 0, grey: tie)")
plt.show()

# share of the positive bucket among all integers, for the prime moduli
for q in (11, 13, 163):
    dq = log_density(q, 10**6)
    print(q, round(dq.d_plus, 4), round(dq.d_minus, 4), round(dq.d_plus / (dq.d_plus + dq.d_minus + dq.d_zero), 4))
