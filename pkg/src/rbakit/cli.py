"""Command-line interface.

Subcommands: analyze, validate, quaternion, hilbert, check-integrality,
example, from-group, from-scheme. Exit codes: 0 all checks pass, 1 a
mathematical verdict is negative, 2 input or contract error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import DEFAULT_TOL, RBA, RBAError, StructuralError, ToleranceConfig, validate
from .fixtures import fixture_text
from .ingest import from_group, from_scheme, parse_cayley, parse_scheme
from .quaternion import hilbert_places, symbol
from .report import analyze, encode_value, write_atomic
from .integrality import integral_check
from . import __version__


def _tolerances(args) -> ToleranceConfig:
    eps = args.tol
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("RBA_SEED", "0"))
    if eps is None:
        return ToleranceConfig(rng_seed=seed)
    return ToleranceConfig(
        eps_zero=min(DEFAULT_TOL.eps_zero, eps),
        eps_cluster=max(DEFAULT_TOL.eps_cluster, eps),
        eps_residual=eps,
        rng_seed=seed,
    )


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_rba(path: str, args) -> RBA:
    rba = RBA.from_text(_read_source(path))
    if args.exact and not rba.exact:
        raise StructuralError(
            "--exact requested but the input has decimal entries (float mode)"
        )
    if args.float and rba.exact:
        rba = RBA(rba.lam_float, rba.star, rba.labels)
    return rba


def _emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _json_dump(obj) -> str:
    return json.dumps(encode_value(obj), sort_keys=True, indent=2) + "\n"


def _cmd_analyze(args) -> int:
    tol = _tolerances(args)
    paths = [args.path]
    if args.path not in ("-",) and os.path.isdir(args.path):
        paths = sorted(
            os.path.join(args.path, f)
            for f in os.listdir(args.path)
            if f.endswith(".rba")
        )
        if not paths:
            raise StructuralError(f"no .rba files in {args.path}")
    worst = 0
    chunks = []
    for p in paths:
        rba = _load_rba(p, args)
        rep = analyze(rba, tol)
        rep.data["meta"]["source"] = os.path.basename(p) if p != "-" else "<stdin>"
        worst = max(worst, rep.exit_code)
        chunks.append(rep.to_json() if args.json else rep.render_text())
    _emit(args, "".join(chunks))
    return worst


def _cmd_validate(args) -> int:
    tol = _tolerances(args)
    rba = _load_rba(args.path, args)
    rep = validate(rba, tol)
    if args.json:
        payload = {
            "passed": rep.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "residual": c.residual, "detail": c.detail}
                for c in rep.checks
            ],
        }
        _emit(args, _json_dump(payload))
    else:
        _emit(args, rep.summary() + "\n")
    return 0 if rep.passed else 1


def _cmd_quaternion(args) -> int:
    tol = _tolerances(args)
    rba = _load_rba(args.path, args)
    try:
        sym = symbol(rba, tol)
    except ValueError as exc:
        raise StructuralError(str(exc)) from exc
    payload = {
        "a": sym.a_exact if sym.a_exact is not None else sym.a,
        "beta": sym.beta_exact if sym.beta_exact is not None else sym.beta,
        "field_mode": sym.field_mode,
        "local_symbols": sym.local_symbols,
        "verdict": sym.verdict,
        "pair": list(sym.pair),
        "y_label": sym.y_label,
        "anticommute_residual": sym.anticommute_residual,
    }
    if args.json:
        _emit(args, _json_dump(payload))
    else:
        _emit(
            args,
            f"(a, beta) = ({payload['a']}, {payload['beta']})  verdict: {sym.verdict}\n"
            + (f"local symbols: {sym.local_symbols}\n" if sym.local_symbols else ""),
        )
    return 0 if sym.verdict in ("split", "real-split-only") else 1


def _cmd_hilbert(args) -> int:
    from fractions import Fraction

    try:
        a = Fraction(args.a)
        b = Fraction(args.b)
    except (ValueError, ZeroDivisionError) as exc:
        raise StructuralError(f"bad rational: {exc}") from exc
    places = hilbert_places(a, b)
    product = 1
    for v in places.values():
        product *= v
    verdict = "split" if all(v == 1 for v in places.values()) else "division"
    payload = {
        "a": a,
        "b": b,
        "places": {str(k): v for k, v in places.items()},
        "product": product,
        "verdict": verdict,
    }
    if args.json:
        _emit(args, _json_dump(payload))
    else:
        _emit(args, f"places: {payload['places']}\nproduct: {product}\nverdict: {verdict}\n")
    return 0 if verdict == "split" else 1


def _cmd_check_integrality(args) -> int:
    tol = _tolerances(args)
    rba = _load_rba(args.path, args)
    result = integral_check(rba, tol.eps_zero)
    payload = {
        "integral": result.integral,
        "offenders": [
            {"i": i, "j": j, "k": k, "value": v} for i, j, k, v in result.offenders[:8]
        ],
        "offender_count": len(result.offenders),
    }
    rep = analyze(rba, tol)
    two = rep.data.get("integrality", {}).get("two_adic")
    if two:
        payload["two_adic"] = two
    if args.json:
        _emit(args, _json_dump(payload))
    else:
        text = "integral\n" if result.integral else (
            f"non-integral ({len(result.offenders)} offending entries, first "
            f"{result.offenders[0][:3] if result.offenders else ''})\n"
        )
        if two:
            text += f"2-adic obstruction: {two['verdict']}\n"
        _emit(args, text)
    return 0 if result.integral else 1


def _cmd_example(args) -> int:
    if args.name != "rank7":
        raise StructuralError(f"unknown example {args.name!r} (available: rank7)")
    _emit(args, fixture_text("rank7_h"))
    return 0


def _cmd_from_group(args) -> int:
    rba = from_group(parse_cayley(_read_source(args.path)))
    _emit(args, rba.to_text())
    return 0


def _cmd_from_scheme(args) -> int:
    rba = from_scheme(parse_scheme(_read_source(args.path)))
    _emit(args, rba.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbakit",
        description="Analyze reality-based algebras with positive degree map.",
    )
    parser.add_argument("--version", action="version", version=f"rbakit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, path=True):
        if path:
            p.add_argument("path", help=".rba file, '-' for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--tol", type=float, default=None, metavar="EPS",
                       help="residual tolerance (default 1e-8)")
        p.add_argument("--seed", type=int, default=None,
                       help="RNG seed (default: $RBA_SEED or 0)")
        p.add_argument("--exact", action="store_true",
                       help="require exact rational mode")
        p.add_argument("--float", action="store_true",
                       help="force float mode")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="write output to PATH (atomic)")

    p = sub.add_parser("analyze", help="full pipeline report (file, '-' or directory)")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("validate", help="check the defining axioms")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("quaternion", help="quaternion symbol of the degree-2 component")
    common(p)
    p.set_defaults(func=_cmd_quaternion)

    p = sub.add_parser("hilbert", help="local Hilbert symbols of a rational pair")
    p.add_argument("a", help="nonzero rational, e.g. -1 or 3/4")
    p.add_argument("b", help="nonzero rational")
    common(p, path=False)
    p.set_defaults(func=_cmd_hilbert)

    p = sub.add_parser("check-integrality", help="integrality of the structure constants")
    common(p)
    p.set_defaults(func=_cmd_check_integrality)

    p = sub.add_parser("example", help="emit a bundled example as .rba text")
    p.add_argument("name", help="example name (rank7)")
    common(p, path=False)
    p.set_defaults(func=_cmd_example)

    p = sub.add_parser("from-group", help="RBA of a group Cayley table")
    common(p)
    p.set_defaults(func=_cmd_from_group)

    p = sub.add_parser("from-scheme", help="RBA of an association scheme")
    common(p)
    p.set_defaults(func=_cmd_from_scheme)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StructuralError, ValueError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RBAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
