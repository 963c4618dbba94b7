"""Command-line interface: ``crsym {analyze,prolong,scan,verify,conjugate}``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .exactnum import parse_scalar
from .golden import BUILTINS, get_builtin
from .linalg import Subspace
from .prolong import GradedSpan, HeisenbergAlg, default_max_degree, tanaka_prolong
from .reduced import (
    ModifiedSymbolCandidate,
    check_definition,
    conjugate_by_block_dilation,
    involution_invariant,
    normal_form_generators,
)
from .scan import ScanConfig, emit_exceptions, run_genericity_scan
from .symbol import (
    CRSymbolData,
    analyze,
    compute_g00,
    g02_generators,
    g0m2_generators,
    validate,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NONTERMINATION = 4
EXIT_MISMATCH = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def load_source(source: str) -> tuple:
    """Return ``(symbol, candidate or None, builtin or None)``."""
    if source in BUILTINS:
        ex = get_builtin(source)
        return ex.symbol, ex.reduced_candidate, ex
    try:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {source!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"{source}: invalid JSON ({exc})") from exc
    try:
        sym = CRSymbolData.from_json(data)
        cand = ModifiedSymbolCandidate.from_json(data) if isinstance(data, dict) and "g0" in data else None
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliError(EXIT_PARSE, f"{source}: {exc}") from exc
    return sym, cand, None


def _require_valid(sym: CRSymbolData) -> None:
    problems = validate(sym)
    if problems:
        raise CliError(EXIT_VALIDATION, "invalid symbol:\n  " + "\n  ".join(problems))


def full_candidate(sym: CRSymbolData) -> ModifiedSymbolCandidate:
    n = 2 * sym.m
    g0 = compute_g00(sym) + Subspace.of_matrices(g02_generators(sym) + g0m2_generators(sym), n, n)
    return ModifiedSymbolCandidate(sym, g0, None, "reduced")


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------

def cmd_analyze(args) -> int:
    sym, _, _ = load_source(args.source)
    _require_valid(sym)
    rep = analyze(sym)
    p, q = rep.signature
    text = "\n".join([
        f"m = {sym.m}, r = {sym.r}",
        f"signature: ({p}, {q})",
        f"regular: {'yes' if rep.regular else 'no'}",
        f"recoverable: {'yes' if rep.recoverable else 'no'}",
        f"dim A: {rep.dimA}",
        f"dim g00: {rep.dimG00}",
    ])
    _emit(args, rep.to_json(), text)
    return EXIT_OK


def _prolong_report(sym, cand, mode: str, max_degree: int):
    if mode == "reduced":
        if cand is None:
            raise CliError(EXIT_VALIDATION, "--reduced needs a candidate (a builtin or a file with 'g0')")
        g0 = cand.g0
    else:
        g0 = full_candidate(sym).g0
    return tanaka_prolong(GradedSpan(g0, HeisenbergAlg.from_H(sym.H)), max_degree)


def cmd_prolong(args) -> int:
    sym, cand, ex = load_source(args.source)
    _require_valid(sym)
    if args.mode is None:
        mode = ex.prolong_mode if ex is not None else ("reduced" if cand is not None else "full")
    else:
        mode = args.mode
    try:
        max_degree = args.max_degree if args.max_degree is not None else default_max_degree()
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    if max_degree < 1:
        raise CliError(EXIT_PARSE, "--max-degree must be at least 1")
    rep = _prolong_report(sym, cand, mode, max_degree)
    lines = [f"prolongation ({mode} degree-zero part)"]
    lines += [f"  g_{k}: {d}" for k, d in rep.dims]
    lines.append(f"  total: {rep.total}")
    if not rep.terminated:
        lines.append(f"  not terminated by degree {max_degree}")
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.terminated else EXIT_NONTERMINATION


def _parse_signature(text: str) -> tuple:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise CliError(EXIT_PARSE, f"signature must look like 'p,q', got {text!r}") from None
    return p, q


def cmd_scan(args) -> int:
    p, q = _parse_signature(args.signature) if args.signature else (args.m, 0)
    cfg = ScanConfig(m=args.m, r=args.r, signature=(p, q), trials=args.trials, seed=args.seed,
                     numerator_bound=args.numerator_bound, mode=args.mode)
    bad = cfg.problems()
    if bad:
        raise CliError(EXIT_PARSE, "; ".join(bad))
    rep = run_genericity_scan(cfg, workers=args.workers)
    if args.emit_exceptions:
        emit_exceptions(rep, args.emit_exceptions)
    print(rep.dumps())
    return EXIT_OK


def verify_builtin(name: str) -> list:
    """Differences between recomputed and stored values (empty on success)."""
    ex = get_builtin(name)
    rep = analyze(ex.symbol)
    got = rep.to_json()
    diffs = []
    for key in ("signature", "regular", "recoverable", "dimA", "dimG00"):
        if key in ex.expected and got[key] != ex.expected[key]:
            diffs.append(f"{key}: expected {ex.expected[key]}, got {got[key]}")
    problems = check_definition(ex.reduced_candidate)
    if problems:
        diffs.append("candidate fails its definition: " + "; ".join(problems))
    if "g0_dim" in ex.expected and ex.reduced_candidate.g0.dim != ex.expected["g0_dim"]:
        diffs.append(f"g0_dim: expected {ex.expected['g0_dim']}, got {ex.reduced_candidate.g0.dim}")
    pr = _prolong_report(ex.symbol, ex.reduced_candidate, ex.prolong_mode, default_max_degree())
    if pr.total != ex.expected["prolong_total"]:
        diffs.append(f"prolong_total: expected {ex.expected['prolong_total']}, got {pr.total}")
    if pr.positive_dim() != ex.expected["prolong_positive"]:
        diffs.append(f"prolong_positive: expected {ex.expected['prolong_positive']}, got {pr.positive_dim()}")
    if "g1" in ex.expected and pr.dim_of(1) != ex.expected["g1"]:
        diffs.append(f"g1: expected {ex.expected['g1']}, got {pr.dim_of(1)}")
    if not pr.terminated:
        diffs.append("prolongation did not terminate")
    return diffs


def cmd_verify(args) -> int:
    if args.builtin not in BUILTINS:
        raise CliError(EXIT_PARSE, f"unknown builtin {args.builtin!r}; choose from {sorted(BUILTINS)}")
    diffs = verify_builtin(args.builtin)
    payload = {"builtin": args.builtin, "pass": not diffs, "differences": diffs}
    text = f"{args.builtin}: pass" if not diffs else f"{args.builtin}: FAIL\n  " + "\n  ".join(diffs)
    _emit(args, payload, text)
    return EXIT_OK if not diffs else EXIT_MISMATCH


def cmd_conjugate(args) -> int:
    sym, cand, _ = load_source(args.source)
    _require_valid(sym)
    if cand is None:
        raise CliError(EXIT_VALIDATION, "conjugate needs a candidate (a builtin or a file with 'g0')")
    try:
        s = parse_scalar(args.dilation)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad dilation value: {exc}") from exc
    if s.is_zero():
        raise CliError(EXIT_PARSE, "dilation value must be nonzero")
    out = conjugate_by_block_dilation(cand, s)
    ups, downs = normal_form_generators(out)
    inv = involution_invariant(out)
    payload = out.to_json()
    payload["involution_invariant"] = inv
    payload["normal_form"] = {"up": [u.to_json() if u is not None else None for u in ups],
                              "down": [d.to_json() if d is not None else None for d in downs]}
    lines = [f"dilation s = {s}", f"involution invariant: {'yes' if inv else 'no'}"]
    for k, (u, d) in enumerate(zip(ups, downs), 1):
        lines.append(f"(0,2) generator {k}:")
        lines.extend("  " + " ".join(f"{str(x):>12}" for x in row) for row in (u.e if u else []))
        lines.append(f"(0,-2) generator {k}:")
        lines.extend("  " + " ".join(f"{str(x):>12}" for x in row) for row in (d.e if d else []))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crsym", description="Exact invariants of 2-nondegenerate CR symbols.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="signature, regularity, recoverability, dim A, dim g00")
    p.add_argument("source", help="builtin id (eg1, eg2, eg3) or symbol JSON file")
    add_json(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("prolong", help="dimensions of the universal prolongation")
    p.add_argument("source")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--reduced", dest="mode", action="store_const", const="reduced",
                   help="prolong the candidate's degree-zero space")
    g.add_argument("--full", dest="mode", action="store_const", const="full",
                   help="prolong the full degree-zero part of the symbol")
    p.add_argument("--max-degree", type=int, default=None,
                   help="cap on the degree (default 10, or CRSYM_MAX_DEGREE)")
    add_json(p)
    p.set_defaults(func=cmd_prolong, mode=None)

    p = sub.add_parser("scan", help="seeded genericity experiment (JSON report)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--signature", default=None, help="p,q (default m,0)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--numerator-bound", type=int, default=20)
    p.add_argument("--mode", choices=["dense", "diagonal"], default="dense")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--emit-exceptions", metavar="DIR", default=None)
    add_json(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="recompute a builtin example and compare with stored values")
    p.add_argument("builtin")
    add_json(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjugate", help="apply a block dilation to a candidate")
    p.add_argument("source")
    p.add_argument("--dilation", required=True, help="nonzero scalar s, e.g. 2, i, 1/sqrt2")
    add_json(p)
    p.set_defaults(func=cmd_conjugate)
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"crsym: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
