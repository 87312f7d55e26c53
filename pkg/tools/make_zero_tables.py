"""Regenerate the bundled zero tables in src/chebbias/data/.

Zeta zeros come from mpmath.zetazero.  Zeros of L(s, chi_-4) are located as
sign changes of the real function Lambda(1/2 + it) / |gamma factor| on a
0.02 grid and polished with mpmath.findroot; the count is checked against
the Riemann-von Mangoldt estimate for N(T, chi).

Run from the repository root:  python3 tools/make_zero_tables.py
"""

import pathlib

import mpmath as mp

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "chebbias" / "data"
COUNT = 100
mp.mp.dps = 30


def write(name, label, source, gammas):
    lines = [
        f"# {source}",
        f"# {len(gammas)} positive imaginary parts, increasing, 15 significant digits",
        f"label: {label}",
    ]
    lines += [mp.nstr(g, 15) for g in gammas]
    (OUT / name).write_text("\n".join(lines) + "\n")


def zeta_zeros():
    return [mp.zetazero(n).imag for n in range(1, COUNT + 1)]


CHI4 = [0, 1, 0, -1]


def hardy_chi4(t):
    s = mp.mpf(0.5) + 1j * t
    factor = (4 / mp.pi) ** ((s + 1) / 2) * mp.gamma((s + 1) / 2)
    return mp.re(factor * mp.dirichlet(s, CHI4)) / abs(factor)


def chi4_zeros():
    found = []
    t, step = mp.mpf("0.5"), mp.mpf("0.02")
    prev = hardy_chi4(t)
    while len(found) < COUNT:
        t2 = t + step
        cur = hardy_chi4(t2)
        if prev * cur < 0:
            found.append(mp.findroot(hardy_chi4, (t, t2), solver="anderson"))
        t, prev = t2, cur
    T = found[-1] + mp.mpf("0.01")
    estimate = T / (2 * mp.pi) * mp.log(4 * T / (2 * mp.pi * mp.e))
    assert abs(estimate - COUNT) < 3, (estimate, COUNT)
    return found


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write(
        "zeta_zeros_100.txt",
        "zeta",
        "first zeros of the Riemann zeta function, computed with mpmath.zetazero",
        zeta_zeros(),
    )
    write(
        "l_chi4_zeros_100.txt",
        "L(s, chi_-4)",
        "first zeros of L(s, chi_-4) (the real character mod 4), sign changes of Lambda on the critical line via mpmath",
        chi4_zeros(),
    )
