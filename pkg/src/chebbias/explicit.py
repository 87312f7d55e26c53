"""Zero tables, the truncated explicit formula for li(x) - pi(x), and the variance."""

from __future__ import annotations

import math
import os
import pathlib
from dataclasses import dataclass

import numpy as np

DATA_ENV = "CHEB_BIAS_DATA"
ZETA_TABLE = "zeta_zeros_100.txt"
CHI4_TABLE = "l_chi4_zeros_100.txt"


class ZeroTableError(ValueError):
    """A zero file that does not parse; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class ZeroTable:
    label: str
    gammas: tuple[float, ...]

    def __post_init__(self):
        g = self.gammas
        if any(v <= 0 for v in g):
            raise ZeroTableError("zero ordinates must be positive")
        if any(b <= a for a, b in zip(g, g[1:])):
            raise ZeroTableError("zero ordinates must be strictly increasing")

    def __len__(self) -> int:
        return len(self.gammas)

    def prefix(self, n: int) -> "ZeroTable":
        return ZeroTable(self.label, self.gammas[:n])

    @classmethod
    def parse(cls, text: str, default_label: str = "unlabelled") -> "ZeroTable":
        """One positive decimal per line; ``#`` comments; optional leading ``label: ...``."""
        label = default_label
        gammas: list[float] = []
        first = True
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if first and line.lower().startswith("label:"):
                label = line.split(":", 1)[1].strip()
                first = False
                continue
            first = False
            try:
                v = float(line)
            except ValueError:
                raise ZeroTableError(f"not a number: {line!r}", lineno) from None
            if not math.isfinite(v) or v <= 0:
                raise ZeroTableError(f"zero ordinate must be positive, got {line}", lineno)
            if gammas and v <= gammas[-1]:
                raise ZeroTableError(f"not strictly increasing ({v} after {gammas[-1]})", lineno)
            gammas.append(v)
        return cls(label, tuple(gammas))

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ZeroTable":
        p = pathlib.Path(path)
        return cls.parse(p.read_text(encoding="utf-8"), default_label=p.stem)


def data_dir() -> pathlib.Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return pathlib.Path(override)
    return pathlib.Path(__file__).parent / "data"


def bundled(name: str = ZETA_TABLE) -> ZeroTable:
    """Load a bundled zero table (``zeta_zeros_100.txt`` or ``l_chi4_zeros_100.txt``)."""
    return ZeroTable.load(data_dir() / name)


def explicit_delta(x, zeros: ZeroTable, terms: int | None = None):
    """Truncated oscillatory approximation of li(x) - pi(x).

    sqrt(x)/log x * (1 + 2 sum_gamma sin(gamma log x + arccot(2 gamma)) / sqrt(1/4 + gamma^2))

    ``x`` may be a scalar or an array.  ``terms`` keeps only the first zeros
    of the table (``terms=0`` leaves the main term).  With an L-function
    table the same expression models the corresponding prime race.
    """
    if len(zeros) == 0:
        raise ValueError("explicit_delta: zero table is empty")
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 2):
        raise ValueError("explicit_delta: x must be >= 2")
    g = np.asarray(zeros.gammas[:terms] if terms is not None else zeros.gammas)
    if g.size == 0:
        return main_term(x)
    alpha = np.arctan2(1.0, 2.0 * g)  # arccot(2 gamma) for gamma > 0
    logx = np.log(xs)[..., None]
    osc = np.sum(np.sin(g * logx + alpha) / np.sqrt(0.25 + g * g), axis=-1)
    out = np.sqrt(xs) / np.log(xs) * (1.0 + 2.0 * osc)
    return float(out) if out.ndim == 0 else out


def main_term(x):
    """sqrt(x)/log x, the zero-free part of :func:`explicit_delta`."""
    xs = np.asarray(x, dtype=float)
    out = np.sqrt(xs) / np.log(xs)
    return float(out) if out.ndim == 0 else out


def variance(zeros: ZeroTable) -> float:
    """sum over the table of 2 / (1/4 + gamma^2)."""
    if len(zeros) == 0:
        raise ValueError("variance: zero table is empty")
    return math.fsum(2.0 / (0.25 + g * g) for g in zeros.gammas)
