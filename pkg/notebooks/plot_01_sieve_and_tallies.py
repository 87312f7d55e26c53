"""
Segmented sieve and residue-class tallies
=========================================

The sieve walks ``[lo, hi)`` one segment at a time, and a tally keeps prime
counts and psi sums for each reduced class mod q.  Tallies over adjacent
ranges merge, which is how long scans are split up.
"""

import numpy as np
import matplotlib.pyplot as plt

from chebbias import pi, sieve_segment, tally_range, tally_to

# %%
# A single segment, and the prime count up to a million.
seg = sieve_segment(90, 130)
print(seg.primes())
print(pi(10**6))

# %%
# Counts mod 4 up to 100: eleven primes are 1 mod 4, thirteen are 3 mod 4.
t = tally_to(100, 4)
print(t.counts, {a: round(v, 6) for a, v in t.psi.items()})

# %%
# Splitting the range does not change the answer.
left = tally_range(2, 500_000, 13)
right = tally_range(500_001, 10**6, 13)
whole = tally_to(10**6, 13)
merged = left.merge(right)
print(merged.counts == whole.counts)
print(max(abs(merged.psi[a] - whole.psi[a]) for a in whole.psi))

# %%
# psi(x; 4, a) - x/2 for both classes.  The 3 mod 4 class usually runs ahead.
xs = np.geomspace(100, 10**6, 60).astype(int)
gap = np.array([[tally_to(int(x), 4).psi[a] - x / 2 for a in (1, 3)] for x in xs])
plt.semilogx(xs, gap[:, 0], label="a = 1")
plt.semilogx(xs, gap[:, 1], label="a = 3")
plt.xlabel("x")
plt.ylabel("psi(x; 4, a) - x/2")
plt.legend()
plt.show()
