"""Command-line front end.  Every subcommand writes CSV (UTF-8, LF) to --out or stdout.

Exit codes: 0 success, 1 verified-property violation, 2 usage or parse
error, 3 I/O error.  Each run is a single pass; nothing is resumable.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import analysis
from .analysis import BiasScanner, verify_positivity
from .bias_core import pi_approx
from .explicit import CHI4_TABLE, ZETA_TABLE, ZeroTable, ZeroTableError, bundled, explicit_delta, variance
from .numerics import UnsupportedModulusError, check_modulus, logint
from .primes import DEFAULT_SEGMENT_SIZE, iter_segments, pi, tally_to

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

BIAS_TABLE_MODULI = (4, 11, 13, 163)
# published b(q) and d+ values, reported next to the computed ones
PUBLISHED_BIAS_B = {4: 0.7926, 11: 0.1841, 13: 0.2803, 163: 0.0809}
PUBLISHED_DENSITY_PLUS = {4: 0.9959, 11: 0.9167, 13: 0.9443, 163: 0.55}
# (q, signed delta) -> published x of champions and first crossings
PUBLISHED_CHAMPIONS = {
    (4, 105): 359327,
    (4, -48): 951867937,
    (4, -1): 26861,
    (163, 74): 68491,
    (163, -86): 174637,
    (163, -1): 15073,
    (13, 123): 263881,
    (13, -40): 905761,
    (13, -1): 2083,
    (11, 158): 638567,
    (11, -32): 1867321,
}
# published locations inside negative regions of delta(x, q)
PUBLISHED_NEGATIVE_SITES = {
    4: (26861, 623681, 12366589, 951867937, 6345026833, 18699356321),
    13: (2083, 2089, 10531),
    163: (15073, 15077, 15083),
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    modulus: int
    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    output_path: str = "-"
    zeros_path: str | None = None
    policy: str = "champions"
    precision: int = 12
    threads: int = 1

    def __post_init__(self):
        if self.limit < 3:
            raise UsageError(f"--limit must be >= 3, got {self.limit}")
        if not 6 <= self.precision <= 17:
            raise UsageError(f"--precision must be in [6, 17], got {self.precision}")
        if self.segment_size < 16:
            raise UsageError("--segment-size must be >= 16")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        check_modulus(self.modulus)


def _int(text: str) -> int:
    """Accept 1000000, 1_000_000 and 1e6 (when integral)."""
    text = text.replace("_", "")
    try:
        return int(text)
    except ValueError:
        v = float(text)
        if not v.is_integer():
            raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
        return int(v)


def _fmt(value: float, precision: int) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), f".{precision}g")


class _Table:
    def __init__(self, header: list[str], precision: int):
        self.buf = io.StringIO()
        self.writer = csv.writer(self.buf, lineterminator="\n")
        self.writer.writerow(header)
        self.precision = precision

    def row(self, *values) -> None:
        self.writer.writerow(
            ["" if v is None else v if isinstance(v, str) else _fmt(v, self.precision) for v in values]
        )

    def text(self) -> str:
        return self.buf.getvalue()


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _config(args) -> RunConfig:
    return RunConfig(
        modulus=args.modulus,
        limit=args.limit,
        segment_size=args.segment_size,
        output_path=args.out,
        zeros_path=args.zeros,
        policy=getattr(args, "policy", "champions"),
        precision=args.precision,
        threads=args.threads,
    )


def _zeros(path: str | None, default: str = ZETA_TABLE) -> ZeroTable:
    if path is None:
        return bundled(default)
    return ZeroTable.load(path)


def cmd_scan(args) -> int:
    cfg = _config(args)
    t = _Table(["x", "delta", "delta_reg", "normalized", "fit_2_over_logx"], cfg.precision)
    for p in analysis.scan(cfg.modulus, cfg.limit, cfg.policy, cfg.segment_size, cfg.threads):
        t.row(p.x, p.delta, p.delta_reg, p.normalized, 2.0 / math.log(p.x))
    _emit(t.text(), cfg.output_path)
    return EXIT_OK


def cmd_champions(args) -> int:
    cfg = _config(args)
    signs = (1, -1) if args.epsilon == 0 else (args.epsilon,)
    t = _Table(["n", "epsilon", "x", "delta_reg", "normalized", "published_x"], cfg.precision)
    for eps in signs:
        for r in analysis.champions(cfg.modulus, cfg.limit, eps, cfg.segment_size, cfg.threads):
            anchor = PUBLISHED_CHAMPIONS.get((cfg.modulus, eps * r.n))
            t.row(r.n, r.epsilon, r.x_n, r.delta_reg_at, r.normalized, anchor)
    _emit(t.text(), cfg.output_path)
    return EXIT_OK


def cmd_zones(args) -> int:
    cfg = _config(args)
    sites = PUBLISHED_NEGATIVE_SITES.get(cfg.modulus, ())
    t = _Table(["start", "end", "sign", "length", "primes", "published_site"], cfg.precision)
    for z in analysis.zones(cfg.modulus, cfg.limit, cfg.segment_size, cfg.threads):
        inside = [s for s in sites if z.start <= s < z.end]
        t.row(z.start, z.end, z.sign, z.length, z.primes, " ".join(map(str, inside)) or None)
    _emit(t.text(), cfg.output_path)
    return EXIT_OK


def cmd_density(args) -> int:
    cfg = _config(args)
    d = analysis.log_density(cfg.modulus, cfg.limit, cfg.segment_size, cfg.threads)
    t = _Table(["modulus", "limit", "d_plus", "d_minus", "d_zero", "published_d_plus"], cfg.precision)
    t.row(cfg.modulus, cfg.limit, d.d_plus, d.d_minus, d.d_zero, PUBLISHED_DENSITY_PLUS.get(cfg.modulus))
    _emit(t.text(), cfg.output_path)
    return EXIT_OK


def cmd_bias_sum(args) -> int:
    cfg = _config(args)
    b = analysis.bias_sum(cfg.modulus, cfg.limit, cfg.segment_size, cfg.threads, normalize=not args.raw)
    t = _Table(["modulus", "limit", "bias_b", "published_bias_b"], cfg.precision)
    t.row(cfg.modulus, cfg.limit, b, PUBLISHED_BIAS_B.get(cfg.modulus))
    _emit(t.text(), cfg.output_path)
    return EXIT_OK


def _parse_limits(text: str | None, default: int) -> dict[int, int]:
    limits = dict.fromkeys(BIAS_TABLE_MODULI, default)
    if text:
        for item in text.split(","):
            try:
                q, lim = item.split("=")
                limits[int(q)] = _int(lim)
            except (ValueError, argparse.ArgumentTypeError):
                raise UsageError(f"bad --limits entry {item!r}; expected q=limit") from None
    return limits


def cmd_table1(args) -> int:
    limits = _parse_limits(args.limits, args.limit)
    t = _Table(["modulus", "bias_b", "log_density_plus", "limit"], args.precision)
    for q, lim in limits.items():
        cfg = RunConfig(q, lim, args.segment_size, args.out, precision=args.precision, threads=args.threads)
        b = analysis.bias_sum(q, lim, cfg.segment_size, cfg.threads)
        d = analysis.log_density(q, lim, cfg.segment_size, cfg.threads)
        t.row(q, b, d.d_plus, lim)
    _emit(t.text(), args.out)
    return EXIT_OK


def _prime_counts(xs: np.ndarray, segment_size: int, threads: int) -> np.ndarray:
    """pi(floor(x)) for an increasing array of reals, in one sieve pass."""
    ints = np.floor(xs).astype(np.int64)
    out = np.zeros(ints.size, dtype=np.int64)
    if ints[-1] < 2:
        return out
    running = 0
    for seg in iter_segments(int(ints[-1]), segment_size, threads):
        ps = seg.primes()
        sel = (ints >= seg.lo) & (ints < seg.hi)
        out[sel] = running + np.searchsorted(ps, ints[sel], side="right")
        out[ints >= seg.hi] = running + ps.size
        running += ps.size
    return out


def cmd_explicit(args) -> int:
    zeros = _zeros(args.zeros)
    lo, hi, n = args.x_from, args.x_to, args.samples
    if n < 1 or lo < 2 or hi < lo or (n > 1 and hi == lo):
        raise UsageError(f"empty or invalid x-range [{lo}, {hi}] with {n} samples")
    xs = np.geomspace(lo, hi, n)
    pred = explicit_delta(xs, zeros, args.terms)
    actual = logint(xs) - _prime_counts(xs, args.segment_size, args.threads)
    t = _Table(["x", "predicted", "actual_delta"], args.precision)
    for x, p, a in zip(xs.tolist(), np.atleast_1d(pred).tolist(), actual.tolist()):
        t.row(x, p, a)
    _emit(t.text(), args.out)
    return EXIT_OK


def cmd_variance(args) -> int:
    zeros = _zeros(args.zeros, CHI4_TABLE if args.table == "chi4" else ZETA_TABLE)
    t = _Table(["label", "terms", "variance"], args.precision)
    for n in range(1, len(zeros) + 1):
        t.row(zeros.label, n, variance(zeros.prefix(n)))
    _emit(t.text(), args.out)
    return EXIT_OK


def cmd_pi_approx(args) -> int:
    xs = args.x or [10**4, 10**5, 10**6]
    if any(x < 2 for x in xs):
        raise UsageError("pi-approx: every x must be >= 2")
    t = _Table(["x", "pi", "li", "pi_approx", "err_li", "err_approx"], args.precision)
    for x in xs:
        count = pi(x)
        li = logint(float(x))
        approx = pi_approx(x, tally_to(x, 3).total_psi, weighting=args.weighting)
        t.row(x, count, li, approx, li - count, approx - count)
    _emit(t.text(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    scanner = BiasScanner(cfg.modulus, cfg.limit, cfg.segment_size, cfg.threads)
    res = verify_positivity(cfg.modulus, cfg.limit, scanner=scanner)
    if res.ok:
        msg = (
            f"OK modulus={cfg.modulus} limit={cfg.limit} checked={res.checked} "
            f"from={res.first_checked} min_normalized={_fmt(res.min_normalized, cfg.precision)}\n"
        )
        _emit(msg, cfg.output_path)
        return EXIT_OK
    sys.stderr.write(
        f"VIOLATION modulus={cfg.modulus} x={res.witness} "
        f"delta_reg={_fmt(res.witness_value, cfg.precision)}\n"
    )
    return EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modulus", "-q", type=_int, default=4)
    common.add_argument("--limit", type=_int, default=10**6)
    common.add_argument("--out", default="-", help="output file, '-' for stdout")
    common.add_argument("--zeros", default=None, help="zero-table file (default: bundled zeta zeros)")
    common.add_argument("--threads", type=_int, default=1)
    common.add_argument("--segment-size", type=_int, default=DEFAULT_SEGMENT_SIZE)
    common.add_argument("--precision", type=_int, default=12, help="significant digits for reals")

    parser = argparse.ArgumentParser(prog="cheb-bias", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", parents=[common], help="bias and regularized bias along the primes")
    p.add_argument("--policy", choices=("champions", "all-primes"), default="champions")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("champions", parents=[common], help="record primes of the bias")
    p.add_argument("--epsilon", type=int, choices=(1, -1, 0), default=0, help="0 for both signs")
    p.set_defaults(func=cmd_champions)

    p = sub.add_parser("zones", parents=[common], help="constant-sign intervals of the bias")
    p.set_defaults(func=cmd_zones)

    p = sub.add_parser("density", parents=[common], help="logarithmic densities of the sign classes")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("bias-sum", parents=[common], help="the champion sum b(q)")
    p.add_argument("--raw", action="store_true", help="skip the floor(p/2) normalisation")
    p.set_defaults(func=cmd_bias_sum)

    p = sub.add_parser("table1", parents=[common], help="b(q) and d+ for q in 4, 11, 13, 163")
    p.add_argument("--limits", default=None, help="per-modulus limits, e.g. 4=1e7,163=1e6")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("explicit", parents=[common], help="truncated explicit formula vs li(x) - pi(x)")
    p.add_argument("--from", dest="x_from", type=float, default=1e3)
    p.add_argument("--to", dest="x_to", type=float, default=1e7)
    p.add_argument("--samples", type=_int, default=200)
    p.add_argument("--terms", type=_int, default=None, help="use only the first N zeros")
    p.set_defaults(func=cmd_explicit)

    p = sub.add_parser("variance", parents=[common], help="partial sums of 2/(1/4 + gamma^2)")
    p.add_argument("--table", choices=("zeta", "chi4"), default=None, help="bundled table to use")
    p.set_defaults(func=cmd_variance)

    p = sub.add_parser("pi-approx", parents=[common], help="three-term prime count from psi")
    p.add_argument("--x", type=_int, action="append", help="evaluation point (repeatable)")
    p.add_argument("--weighting", choices=("riemann", "unit"), default="riemann")
    p.set_defaults(func=cmd_pi_approx)

    p = sub.add_parser("verify", parents=[common], help="check delta_reg > 0 at every prime")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, UnsupportedModulusError, ZeroTableError) as exc:
        sys.stderr.write(f"cheb-bias: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"cheb-bias: I/O error: {exc}\n")
        return EXIT_IO
    except ValueError as exc:
        sys.stderr.write(f"cheb-bias: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
