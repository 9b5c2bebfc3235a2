"""Command-line front end.

Exit codes: 0 success, 1 negative verdict or violation, 2 usage error,
3 representation limit (depth exhausted or undetermined verdict).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .axioms import AxiomTag, GeneratorConfig, audit_swf, audit_swr
from .constructions import EXAMPLES, example_streams, verify_example, verify_thm1, verify_thm2, verify_thm3
from .constructions import thm1_family, thm1_swap, thm2_family, thm3_family
from .domains import classify, domain_from_json
from .errors import (
    DepthMismatch,
    DepthTooSmall,
    EquistreamError,
    NotPeriodic,
    OutOfDepth,
    UnboundedDomain,
)
from .pairing import find_witness, pairing_from_json, validate
from .streams import format_rational, rational, stream_from_json, stream_to_json
from .swf import SWF_NAMES, make_swf
from .swr import Relation, filter_compare

OK, NO, USAGE, LIMIT = 0, 1, 2, 3
SCHEMA = 1


class UsageError(Exception):
    pass


def _load(path: str) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    try:
        if p.suffix == ".toml":
            return tomllib.loads(text)
        return json.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_stream(path: str):
    try:
        return stream_from_json(_load(path))
    except EquistreamError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_domain(path: str):
    try:
        return domain_from_json(_load(path))
    except EquistreamError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _approx(q: Fraction) -> float:
    return round(float(q), 4)


def _emit(args: argparse.Namespace, payload: dict) -> None:
    payload = {"schema": SCHEMA, **payload}
    if getattr(args, "format", "json") == "table":
        for key, val in payload.items():
            if isinstance(val, (dict, list)):
                val = json.dumps(val)
            print(f"{key:>14}  {val}")
    else:
        print(json.dumps(payload, indent=None if args.compact else 2))


# -- commands -------------------------------------------------------------------

def cmd_eval(args: argparse.Namespace) -> int:
    x = _load_stream(args.stream)
    domain: Any = None
    if args.swf in ("prop1", "prop2", "rhoinf"):
        if not args.domain:
            raise UsageError(f"--domain is required for {args.swf}")
        domain = _load_domain(args.domain)
        if args.swf != "rhoinf":
            if not domain.is_finite:
                raise UsageError("prop1/prop2 need a finite domain")
            domain = sorted(domain.finite_part)
    W = make_swf(args.swf, domain, rational(args.rho))
    value = W(x)
    _emit(args, {"swf": args.swf, "value": format_rational(value), "approx": _approx(value)})
    return OK


def cmd_compare(args: argparse.Namespace) -> int:
    if args.swr != "leximin":
        raise UsageError("only --swr leximin is available")
    x, y = _load_stream(args.x), _load_stream(args.y)
    verdict = filter_compare(x, y, args.depth, args.window)
    _emit(args, {"swr": "leximin", **verdict.to_json()})
    return LIMIT if verdict.relation is Relation.UNDETERMINED else OK


def cmd_witness(args: argparse.Namespace) -> int:
    x, y = _load_stream(args.x), _load_stream(args.y)
    if args.pairing:
        try:
            alpha = pairing_from_json(_load(args.pairing))
        except EquistreamError as exc:
            raise UsageError(f"{args.pairing}: {exc}") from exc
        report = validate(alpha, x, y, args.axiom)
    else:
        report = find_witness(x, y, args.axiom, args.depth)
    _emit(args, report.to_json())
    return OK if report.verified else NO


def cmd_classify(args: argparse.Namespace) -> int:
    Y = _load_domain(args.domain)
    _emit(args, classify(Y).to_json())
    return OK


def _write(out: Path, name: str, obj: Any) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(json.dumps(obj, indent=2) + "\n")


def cmd_construct(args: argparse.Namespace) -> int:
    name = args.name
    values = [rational(v) for v in args.values.split(",")] if args.values else None
    out = Path(args.out) if args.out else None
    if name in EXAMPLES:
        tr = verify_example(name, args.depth)
        if out:
            fx = example_streams(name, args.depth)
            for key, s in fx.streams.items():
                _write(out, f"{key}.json", stream_to_json(s))
            for key, p in fx.pairings.items():
                _write(out, f"{key}.pairing.json", p.to_json())
    elif name in ("thm1", "thm2", "thm3"):
        if args.r is None or args.s is None:
            raise UsageError(f"{name} needs --r and --s")
        kw = {"values": values} if values else {}
        r, s = rational(args.r), rational(args.s)
        verify = {"thm1": verify_thm1, "thm2": verify_thm2, "thm3": verify_thm3}[name]
        tr = verify(r, s, args.depth, **kw)
        if out:
            if name == "thm1":
                fr, fs = thm1_family(r, args.depth, **kw), thm1_family(s, args.depth, **kw)
                _write(out, "y_prime.json", stream_to_json(thm1_swap(fr, s).y_prime))
            else:
                fam = thm2_family if name == "thm2" else thm3_family
                fr, fs = fam(r, args.depth, **kw), fam(s, args.depth, **kw)
            _write(out, "x_r.json", stream_to_json(fr.x))
            _write(out, "y_r.json", stream_to_json(fr.y))
            _write(out, "x_s.json", stream_to_json(fs.x))
    else:
        raise UsageError(f"unknown construction {name!r}")
    if out:
        _write(out, "transcript.json", tr.to_json())
    _emit(args, tr.to_json())
    return OK if tr.verified else NO


def cmd_audit(args: argparse.Namespace) -> int:
    seed = int(os.environ.get("EQUISTREAM_SEED", args.seed))
    Y = _load_domain(args.domain)
    cfg = GeneratorConfig.for_domain(Y, max_period=args.max_period, depth=args.depth)
    tag = AxiomTag.parse(args.axiom)
    if args.swr:
        if args.swr != "leximin":
            raise UsageError("only --swr leximin is available")
        report = audit_swr(lambda a, b: filter_compare(a, b, args.depth, max(1, args.depth // 4)),
                           tag, cfg, args.trials, seed)
        subject = "leximin"
    else:
        domain: Any = Y if args.swf == "rhoinf" else sorted(Y.finite_part)
        W = make_swf(args.swf, domain, rational(args.rho))
        report = audit_swf(W, tag, cfg, args.trials, seed)
        subject = args.swf
    body = report.to_json()
    body["violations"] = body["violations"][: args.show]
    _emit(args, {"subject": subject, "violation_count": len(report.violations), **body})
    return OK if report.passed else NO


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equistream", description="Equity relations on infinite utility streams.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML or JSON file whose keys provide flag defaults")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a welfare function exactly")
    e.add_argument("--swf", choices=SWF_NAMES, required=True)
    e.add_argument("--rho", default="1/2")
    e.add_argument("--domain")
    e.add_argument("--stream", required=True)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("compare", parents=[common], help="filter-leximin verdict for x against y")
    c.add_argument("--swr", default="leximin")
    c.add_argument("--depth", type=int, default=400)
    c.add_argument("--window", type=int, default=100)
    c.add_argument("x")
    c.add_argument("y")
    c.set_defaults(func=cmd_compare)

    w = sub.add_parser("witness", parents=[common], help="search for (or check) an equity witness")
    w.add_argument("--axiom", choices=("GE", "IE", "WE", "GPD", "SE", "PD"), default="GE")
    w.add_argument("--x", required=True)
    w.add_argument("--y", required=True)
    w.add_argument("--depth", type=int, default=200)
    w.add_argument("--pairing", help="validate this pairing instead of searching")
    w.set_defaults(func=cmd_witness)

    k = sub.add_parser("classify", parents=[common], help="order type of a utility domain")
    k.add_argument("--domain", required=True)
    k.set_defaults(func=cmd_classify)

    b = sub.add_parser("construct", parents=[common], help="build a named construction and verify its witness chain")
    b.add_argument("--name", required=True, choices=sorted(EXAMPLES) + ["thm1", "thm2", "thm3"])
    b.add_argument("--r")
    b.add_argument("--s")
    b.add_argument("--depth", type=int, default=400)
    b.add_argument("--values", help="comma-separated increasing values")
    b.add_argument("--out", help="directory for stream JSON and the transcript")
    b.set_defaults(func=cmd_construct)

    a = sub.add_parser("audit", parents=[common], help="randomised axiom audit of a welfare function or relation")
    a.add_argument("--axiom", required=True, choices=[t.value for t in AxiomTag])
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--swf", choices=SWF_NAMES)
    g.add_argument("--swr", choices=("leximin",))
    a.add_argument("--domain", required=True)
    a.add_argument("--rho", default="1/2")
    a.add_argument("--trials", type=int, default=1000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--depth", type=int, default=200)
    a.add_argument("--max-period", type=int, default=12)
    a.add_argument("--show", type=int, default=5, help="violations to print")
    a.set_defaults(func=cmd_audit)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    conf = _load(args.config)
    if not isinstance(conf, dict):
        raise UsageError(f"{args.config}: expected a table of flag values")
    section = conf.get(args.command, conf)
    explicit = {a.split("=")[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
    for key, val in section.items():
        key = key.replace("-", "_")
        if isinstance(val, dict):
            continue
        if not hasattr(args, key):
            raise UsageError(f"{args.config}: unknown option {key!r} for {args.command}")
        if key not in explicit:
            setattr(args, key, val)
    return args


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except SystemExit as exc:  # argparse reports usage errors this way
        return exc.code if isinstance(exc.code, int) else USAGE
    except UsageError as exc:
        print(f"equistream: {exc}", file=sys.stderr)
        return USAGE
    except (OutOfDepth, DepthTooSmall, NotPeriodic, UnboundedDomain, DepthMismatch) as exc:
        print(f"equistream: representation limit: {exc}", file=sys.stderr)
        return LIMIT
    except (EquistreamError, ValueError) as exc:
        print(f"equistream: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
