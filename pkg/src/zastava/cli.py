"""Command-line front end.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 degenerate parameters.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from fractions import Fraction

from . import checks
from .partition import SIGN_RULE, z_series
from .patterns import Composition
from .scalar import make_spec_env, scalar_str, to_scalar
from .virasoro import (
    DegenerateParameters,
    VirParams,
    agt_params,
    chic_map,
    dictionary_check,
    ff_params,
    nekrasov_series,
)
from .yangian import Normalization

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_pi(text: str) -> Composition:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad composition {text!r}") from None
    try:
        return Composition(parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_scalar(text: str) -> Fraction:
    try:
        return to_scalar(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def threads() -> int:
    try:
        return max(1, int(os.environ.get("ZASTAVA_THREADS", "1")))
    except ValueError:
        return 1


def emit(payload: dict, rows: list[list[str]], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerows(rows)
    else:
        out.write(json.dumps(payload) + "\n")


# -- commands ----------------------------------------------------------------


def run_compute(args) -> int:
    pi = parse_pi(args.pi)
    env = make_spec_env(pi.N, args.cap + pi.N + 2, args.seed)
    series = z_series(pi, args.cap, env, args.sign_rule)
    emit(series.to_json(), series.csv_rows(), args.format)
    return EXIT_OK


def run_verify(args) -> int:
    pi = parse_pi(args.pi)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in names if c not in checks.CHECKS]
    if unknown or not names:
        raise UsageError(f"unknown check(s): {','.join(unknown) or '(none)'}; choose from {','.join(checks.CHECKS)}")
    norm = Normalization(args.normalization)
    mut = args.mutate

    def hit(name):
        return mut == name or (name == "relations" and mut in checks.RELATIONS)

    results = []
    for name in names:
        m = hit(name)
        if name == "relations":
            r = checks.check_relations(pi, args.cap, args.trials, args.seed, norm, mut if m else None, threads())
        elif name == "highest-weight":
            r = checks.check_highest_weight(pi, args.cap, args.seed, mutate=m)
        elif name == "interpolation":
            r = checks.check_interpolation(pi, args.cap, args.seed, norm, mutate=m)
        elif name == "shapovalov":
            r = checks.check_shapovalov(pi, args.cap, args.seed, mutate=m)
        elif name == "whittaker":
            r = checks.check_whittaker(pi, args.cap, args.seed, mutate=m)
        elif name == "sl2":
            r = checks.check_sl2(args.cap, args.seed, mutate=m)
        elif name == "wl":
            r = checks.check_wl(pi, args.cap, args.seed, mutate=m)
        elif name == "virasoro":
            params = VirParams(Fraction(7, 3) + args.seed, Fraction(11, 5))
            r = checks.check_virasoro(params, max(args.cap, 1), mutate=m)
        else:
            r = checks.check_agt(20, args.seed, mutate=m)
        results.append(r)
    ok = all(r.ok for r in results)
    payload = {
        "pi": list(pi.parts),
        "cap": args.cap,
        "seed": args.seed,
        "ok": ok,
        "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail, "witness": r.witness} for r in results],
    }
    rows = [["check", "ok", "witness"]] + [
        [r.name, "pass" if r.ok else "fail", json.dumps(r.witness) if r.witness else ""] for r in results
    ]
    emit(payload, rows, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def run_virasoro(args) -> int:
    direct = args.delta is not None or args.c is not None
    agt = any(v is not None for v in (args.a, args.eps1, args.eps2))
    if direct == agt:
        raise UsageError("give either --delta and --c, or --a, --eps1 and --eps2")
    payload: dict = {}
    if direct:
        if args.delta is None or args.c is None:
            raise UsageError("--delta and --c go together")
        params = VirParams(args.delta, args.c)
    else:
        if None in (args.a, args.eps1, args.eps2):
            raise UsageError("--a, --eps1 and --eps2 go together")
        try:
            params = agt_params(args.a, args.eps1, args.eps2)
            chi, k = chic_map(args.a, args.eps1, args.eps2)
            ff = ff_params(chi, k)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DEGENERATE
        payload["dictionary"] = {
            "chi": scalar_str(chi),
            "k": scalar_str(k),
            "ff": ff.to_json(),
            "check": ff == params and dictionary_check(20, args.seed),
        }
    try:
        norms = nekrasov_series(params, args.cap)
    except DegenerateParameters as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    out = {**params.to_json(), "series": "conjectural instanton series"}
    # Q and -Q dressings of the series variable
    out["levels"] = [
        {"d": d, "norm": scalar_str(v), "norm_signed": scalar_str((-1) ** d * v)} for d, v in enumerate(norms)
    ]
    out.update(payload)
    rows = [["d", "norm", "norm_signed"]] + [[str(l["d"]), l["norm"], l["norm_signed"]] for l in out["levels"]]
    emit(out, rows, args.format)
    if "dictionary" in payload and not payload["dictionary"]["check"]:
        return EXIT_FAIL
    return EXIT_OK


def run_agt_dict(args) -> int:
    ok = dictionary_check(args.trials, args.seed)
    payload: dict = {"trials": args.trials, "seed": args.seed, "ok": ok}
    rows = [["trials", "seed", "ok"], [str(args.trials), str(args.seed), "pass" if ok else "fail"]]
    if args.a is not None:
        try:
            chi, k = chic_map(args.a, args.eps1, args.eps2)
            payload["agt"] = agt_params(args.a, args.eps1, args.eps2).to_json()
            payload["ff"] = ff_params(chi, k).to_json()
        except (TypeError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        payload["chi"], payload["k"] = scalar_str(chi), scalar_str(k)
    emit(payload, rows, args.format)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zastava", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cap=3):
        p.add_argument("--cap", type=int, default=cap, help="total degree cap (default %(default)s)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("compute", help="the partition series Z up to a degree cap")
    p.add_argument("--pi", required=True, help="weakly increasing composition, e.g. 1,2")
    p.add_argument("--sign-rule", choices=("sum", "none"), default=SIGN_RULE)
    common(p)
    p.set_defaults(func=run_compute)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--pi", default="1,1")
    p.add_argument("--checks", default="relations,shapovalov,whittaker,sl2")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--normalization", choices=[n.value for n in Normalization], default="geometric")
    p.add_argument("--mutate", default=None, help=argparse.SUPPRESS)
    common(p)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("virasoro", help="Virasoro Whittaker norms")
    for name in ("delta", "c", "a", "eps1", "eps2"):
        p.add_argument(f"--{name}", type=parse_scalar, default=None)
    common(p)
    p.set_defaults(func=run_virasoro)

    p = sub.add_parser("agt-dict", help="check the AGT parameter dictionary")
    p.add_argument("--trials", type=int, default=20)
    for name in ("a", "eps1", "eps2"):
        p.add_argument(f"--{name}", type=parse_scalar, default=None)
    common(p)
    p.set_defaults(func=run_agt_dict)
    return parser


_NEG_RATIONAL = re.compile(r"^-\d+/\d+$")


def _glue_negative_rationals(argv: list[str]) -> list[str]:
    """argparse does not read "-4/3" as a value; pass it as --opt=-4/3."""
    out: list[str] = []
    for tok in argv:
        if _NEG_RATIONAL.match(tok) and out and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_rationals(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "cap", 0) < 0 or getattr(args, "trials", 1) < 0:
        print("error: cap and trials must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
