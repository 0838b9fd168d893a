"""Command-line front end.

Each invocation writes a stream of records with the fields ``command``,
``params``, ``result`` and ``provenance``. JSON output is one sorted-key
object per line. Exit codes: 0 success, 2 usage error, 3 refused computation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from decimal import Decimal, InvalidOperation
from typing import Iterator

from . import crt, density, families, greedy, intervals, numtheory
from .config import threads

log = logging.getLogger("proglab")

EXIT_USAGE = 2
EXIT_REFUSED = 3


class Refused(Exception):
    """A well-formed request the library declines to compute."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument types -----------------------------------------------------------


def natural(text: str) -> int:
    """Nonnegative integer; accepts ``1e8`` and ``10**8`` when exact."""
    try:
        if "**" in text:
            base, exp = text.split("**", 1)
            value = int(base) ** int(exp)
        else:
            d = Decimal(text)
            if d != d.to_integral_value():
                raise ValueError
            value = int(d)
    except (ValueError, InvalidOperation):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return value


def positive_real(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def int_range(text: str) -> list[int]:
    """``N`` or an inclusive range ``A:B``."""
    if ":" in text:
        lo, hi = (natural(part) for part in text.split(":", 1))
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [natural(text)]


SET_HELP = "a3 | g3 | e3 | s:<level> | kfree:<k> | bm:<m> | squareful | e3-excluded"


def parse_set(text: str):
    """Map a set name to ``(label, predicate)``."""
    name, _, arg = text.partition(":")
    if name in ("a3", "g3", "e3") and not arg:
        return text, {"a3": families.A3, "g3": families.G3, "e3": families.E3}[name]
    if name == "squareful" and not arg:
        return text, _RowPredicate("squareful", numtheory.is_squareful, lambda r: ((r == 0) | (r >= 2)).all(axis=0))
    if name == "e3-excluded" and not arg:
        return text, _Complement(families.E3)
    if name in ("s", "kfree", "bm"):
        try:
            k = int(arg)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name}: needs an integer parameter, got {text!r}") from None
        if name == "s":
            if k < 1:
                raise argparse.ArgumentTypeError(f"s: level must be >= 1, got {k}")
            return text, families.S(k)
        if k < 2:
            raise argparse.ArgumentTypeError(f"{name}: parameter must be >= 2, got {k}")
        if name == "kfree":
            return text, _RowPredicate(text, lambda n: numtheory.is_k_free(n, k), lambda r: (r < k).all(axis=0))
        return text, _RowPredicate(text, lambda n: numtheory.in_b_m(n, k), lambda r: r.max(axis=0) == k)
    raise argparse.ArgumentTypeError(f"unknown set {text!r} (expected {SET_HELP})")


class _RowPredicate:
    """Predicate over prime exponents with a vectorized form over exponent rows."""

    def __init__(self, name, scalar, rows_fn):
        self.name, self._scalar, self._rows_fn = name, scalar, rows_fn

    def __call__(self, n: int) -> bool:
        return n >= 1 and self._scalar(n)

    def mask(self, N: int):
        out = self._rows_fn(numtheory.exponent_rows(N))
        out[0] = False
        return out


class _Complement:
    def __init__(self, inner):
        self.inner = inner

    def __call__(self, n: int) -> bool:
        return n >= 1 and not self.inner(n)

    def mask(self, N: int):
        out = ~self.inner.mask(N)
        out[0] = False
        return out


# -- commands -----------------------------------------------------------------


def record(command: str, params: dict, result, provenance: dict | None = None) -> dict:
    return {"command": command, "params": params, "result": result, "provenance": provenance or {}}


def cmd_generate(args) -> Iterator[dict]:
    fam = greedy.FAMILIES[args.family]
    log.info("greedy scan of %s up to %d", args.family, args.limit)
    gs = greedy.greedy_set(fam, args.limit)
    yield record(
        "generate",
        {"family": args.family, "limit": args.limit},
        {"count": len(gs), "members": gs.members},
        {"start": fam.start},
    )


def cmd_member(args) -> Iterator[dict]:
    label, pred = args.set
    for n in args.n:
        yield record("member", {"set": label, "n": n}, bool(pred(n)))


def cmd_density_empirical(args) -> Iterator[dict]:
    label, pred = args.set
    N = args.max
    if N < 1:
        raise argparse.ArgumentTypeError("--max: must be >= 1")
    if N > numtheory.SIEVE_BOUND:
        raise numtheory.RangeError(f"--max {N} exceeds the scan bound {numtheory.SIEVE_BOUND}")
    log.info("scanning %s up to %d", label, N)
    mask = density.membership_mask(pred, N)
    count = int(mask[1:].sum())
    rep = density.DensityReport(label, N, count)
    result = {
        "count": count,
        "asymptotic_ratio": f"{rep.asymptotic_estimate.numerator}/{rep.asymptotic_estimate.denominator}",
        "asymptotic_estimate": count / N,
        "exponential_estimate": rep.exponential_estimate,
    }
    prov = {"range": [1, N]}
    if args.window is not None:
        if not 1 <= args.window <= N:
            raise argparse.ArgumentTypeError("--window: must satisfy 1 <= s <= --max")
        scan = density.uniform_scan(_Precomputed(mask), args.window, N)
        result["window"] = {
            "min_count": scan.min_count,
            "max_count": scan.max_count,
            "argmin_start": scan.argmin_start,
            "argmax_start": scan.argmax_start,
            "lower_ratio": scan.lower_ratio,
            "upper_ratio": scan.upper_ratio,
        }
        prov["window"] = args.window
        prov["window_starts"] = [0, N - args.window]
    yield record("density empirical", {"set": label, "max": N, "window": args.window}, result, prov)


class _Precomputed:
    def __init__(self, mask):
        self._mask = mask

    def mask(self, N):
        return self._mask[: N + 1].copy()


def cmd_density_analytic(args) -> Iterator[dict]:
    label, _ = args.set
    name, _, arg = label.partition(":")
    eps = args.eps
    if name == "g3":
        res = density.analytic_density_g3(eps)
        yield record("density analytic", {"set": label, "eps": eps}, res.value,
                     {**res.provenance, "error_bound": res.error_bound, "method": "zeta ratio product"})
    elif name == "s" and 2 <= int(arg) <= density.MAX_ANALYTIC_LEVEL:
        res = density.analytic_density_s(int(arg), eps)
        yield record("density analytic", {"set": label, "eps": eps}, res.value,
                     {**res.provenance, "error_bound": res.error_bound, "method": "euler product"})
    elif name == "kfree":
        yield record("density analytic", {"set": label, "eps": eps}, density.kfree_density(int(arg), eps),
                     {"eps": eps, "method": "1/zeta(k)"})
    elif name == "bm":
        yield record("density analytic", {"set": label, "eps": eps}, density.b_m_density(int(arg), eps),
                     {"eps": eps, "method": "1/zeta(m+1) - 1/zeta(m)"})
    else:
        raise Refused(f"--set: no analytic density for {label!r} (supported: g3, s:2..4, kfree:k, bm:m)")


def cmd_density_exponential(args) -> Iterator[dict]:
    label, pred = args.set
    N = args.max
    if N < 2:
        raise argparse.ArgumentTypeError("--max: must be >= 2")
    if label == "e3-excluded":
        if N > numtheory.MAX_WORKING:
            raise numtheory.RangeError(f"--max {N} exceeds the 64-bit working range")
        count = density.excluded_e3_count(N)
        method = "perfect-power enumeration"
    else:
        if N > numtheory.SIEVE_BOUND:
            raise numtheory.RangeError(f"--max {N} exceeds the scan bound {numtheory.SIEVE_BOUND}")
        count = density.count_members(pred, N)
        method = "full scan"
    est = density.exponential_estimate(count, N) if count else None
    yield record("density exponential", {"set": label, "max": N},
                 {"count": count, "exponential_estimate": est}, {"method": method, "log_base": "e"})


def cmd_density_products(args) -> Iterator[dict]:
    fn = density.t_i_density if args.kind == "t" else density.r_i_density
    for i in args.i:
        if i < 1:
            raise argparse.ArgumentTypeError("--i: must be >= 1")
        yield record("density products", {"kind": args.kind, "i": i}, fn(i), {"primes": i})


def cmd_gap(args) -> Iterator[dict]:
    if args.length < 1:
        raise argparse.ArgumentTypeError("--length: must be >= 1")
    if not 2 <= args.level <= crt.MAX_GAP_LEVEL:
        raise Refused(f"--level: witnesses are built for levels 2..{crt.MAX_GAP_LEVEL}, got {args.level}")
    w = crt.s_level_gap_witness(args.level, args.length)
    out = w.to_json()
    out["verified"] = crt.verify_witness(w)
    yield record("gap", {"level": args.level, "length": args.length}, out,
                 {"prime_indexing": "p_1 = 2", "residues": "p^m mod p^(m+1)"})


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def cmd_block(args) -> Iterator[dict]:
    N = args.anchor
    if N < intervals.MIN_ANCHOR:
        raise argparse.ArgumentTypeError(f"--anchor: must be >= {intervals.MIN_ANCHOR}")
    blk = intervals.s_block(N)
    result = {
        "intervals": [[_frac(lo), _frac(hi)] for lo, hi in blk.intervals],
        "integer_count": blk.integer_count(),
        "measure_fraction": _frac(blk.density()),
        "density": float(blk.density()),
        "next_anchor": str(intervals.next_anchor(N, N)),
    }
    prov = {}
    if args.verify:
        if N > intervals.VERIFY_BOUND:
            raise Refused(f"--anchor: brute-force verification is limited to N <= {intervals.VERIFY_BOUND}")
        trip = intervals.verify_block_free(N)
        result["progression"] = list(trip) if trip else None
        prov = {"search": "all a >= 1, r >= 2 with a*r^2 <= N"}
    yield record("block", {"anchor": N, "verify": bool(args.verify)}, result, prov)


def cmd_zeta(args) -> Iterator[dict]:
    if args.s < 2:
        raise Refused(f"--s: zeta is evaluated for s >= 2 only, got {args.s}")
    z = numtheory.zeta(args.s, args.eps)
    yield record("zeta", {"s": args.s, "eps": args.eps},
                 {"value": z.value, "error_bound": z.error_bound},
                 {"eps": args.eps, "terms": z.terms, "method": "partial sum + integral tail bracket"})


# -- output -------------------------------------------------------------------


def _flatten(prefix: str, value, out: list) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list):
        out.append((prefix, " ".join(_cell(v) for v in value)))
    else:
        out.append((prefix, _cell(value)))


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, list):
        return "(" + ",".join(_cell(v) for v in value) + ")"
    return json.dumps(value)


def render(records, fmt: str, stream) -> None:
    if fmt == "json":
        for rec in records:
            stream.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["command", "field", "value"])
        for rec in records:
            rows: list = []
            for part in ("params", "result", "provenance"):
                _flatten(part, rec[part], rows)
            for field, value in rows:
                writer.writerow([rec["command"], field, value])
    else:
        for rec in records:
            params = " ".join(f"{k}={v}" for k, v in sorted(rec["params"].items()))
            stream.write(f"{rec['command']} [{params}]\n")
            rows = []
            _flatten("", rec["result"], rows)
            for field, value in rows:
                stream.write(f"  {field or 'result'}: {value}\n")
            for k, v in sorted(rec["provenance"].items()):
                stream.write(f"  ({k}: {v})\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    p = _Parser(prog="proglab", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="greedy progression-free set")
    g.add_argument("--family", choices=sorted(greedy.FAMILIES), required=True)
    g.add_argument("--limit", type=natural, required=True)
    g.set_defaults(func=cmd_generate)

    m = sub.add_parser("member", parents=[common], help="closed-form membership")
    m.add_argument("--set", type=parse_set, required=True, help=SET_HELP)
    m.add_argument("--n", type=int_range, required=True, help="N or A:B")
    m.set_defaults(func=cmd_member)

    d = sub.add_parser("density", parents=[common], help="densities")
    dsub = d.add_subparsers(dest="mode", required=True)
    de = dsub.add_parser("empirical", parents=[common])
    de.add_argument("--set", type=parse_set, required=True, help=SET_HELP)
    de.add_argument("--max", type=natural, required=True)
    de.add_argument("--window", type=natural)
    de.set_defaults(func=cmd_density_empirical)
    da = dsub.add_parser("analytic", parents=[common])
    da.add_argument("--set", type=parse_set, required=True, help=SET_HELP)
    da.add_argument("--eps", type=positive_real, default=1e-6)
    da.set_defaults(func=cmd_density_analytic)
    dx = dsub.add_parser("exponential", parents=[common])
    dx.add_argument("--set", type=parse_set, required=True, help=SET_HELP)
    dx.add_argument("--max", type=natural, required=True)
    dx.set_defaults(func=cmd_density_exponential)
    dp = dsub.add_parser("products", parents=[common], help="T_i / R_i finite products")
    dp.add_argument("--kind", choices=("t", "r"), required=True)
    dp.add_argument("--i", type=int_range, required=True)
    dp.set_defaults(func=cmd_density_products)

    gp = sub.add_parser("gap", parents=[common], help="CRT run of excluded integers")
    gp.add_argument("--level", type=natural, required=True)
    gp.add_argument("--length", type=natural, required=True)
    gp.set_defaults(func=cmd_gap)

    b = sub.add_parser("block", parents=[common], help="interval block construction")
    b.add_argument("--anchor", type=natural, required=True)
    b.add_argument("--verify", action="store_true")
    b.set_defaults(func=cmd_block)

    z = sub.add_parser("zeta", parents=[common], help="certified zeta value")
    z.add_argument("--s", type=natural, required=True)
    z.add_argument("--eps", type=positive_real, default=1e-12)
    z.set_defaults(func=cmd_zeta)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"proglab: usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=stderr, format="proglab: %(message)s")
    try:
        threads()
    except ValueError as exc:
        stderr.write(f"proglab: usage error: {exc}\n")
        return EXIT_USAGE
    try:
        buf = io.StringIO()
        render(list(args.func(args)), args.format, buf)
    except argparse.ArgumentTypeError as exc:
        stderr.write(f"proglab: usage error: {exc}\n")
        return EXIT_USAGE
    except (Refused, ValueError, ArithmeticError) as exc:
        stderr.write(f"proglab: refused: {exc}\n")
        return EXIT_REFUSED
    stdout.write(buf.getvalue())
    return 0


def main() -> None:
    sys.exit(run())


def output_schema() -> dict:
    from importlib.resources import files

    return json.loads(files("proglab").joinpath("data/output_schema.json").read_text())
