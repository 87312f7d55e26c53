"""
Counting primes from psi
========================

Three terms of li(psi(x)^(1/n)) weighted by mu(n)/n already beat li(x) as a
prime count.  With unit weights the same sum falls short by roughly
2 sqrt(x)/log x.
"""

from chebbias import logint, pi, pi_approx

print(f"{'x':>9} {'pi':>7} {'li err':>9} {'approx err':>11} {'unit err':>9}")
for x in (10**4, 10**5, 10**6, 10**7):
    p = pi(x)
    print(
        f"{x:>9} {p:>7} {logint(float(x)) - p:9.2f} "
        f"{pi_approx(x) - p:11.3f} {pi_approx(x, weighting='unit') - p:9.2f}"
    )
