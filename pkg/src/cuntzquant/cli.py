"""Command line driver.

Every mode emits one canonical JSON report on stdout (and to --out when
given) and exits with

    0   the requested checks all passed (or the mode only computes)
    1   malformed input: flags, observable text, config file
    2   a truncation was too small: empty product window, order overflow
    3   checks ran to completion and at least one failed

so scripted callers can tell "wrong invocation" from "true negative".
Flags override values loaded from a --config TOML file.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from random import Random

import tomli

from . import mmio
from .basis import BasisSpec, GaussWeight, TruncationOverflow
from .ccr import (build_ccr, evaluate_expression, expression_text,
                  quantize_via_ccr, verify_adjoint_relation, verify_ccr,
                  verify_ccr_starred)
from .cuntz import CuntzRep, LiftOverflow, bound_check, verify_cuntz
from .matrices import CoeffMatrix, EmptyWindowError
from .poly import DimensionMismatch, PolyParseError, parse_polynomial
from .quantizer import (build_Q, build_Qhat, build_R, verify_lemma,
                        verify_theorem)
from .reports import canonical_json, suite_passed, suite_report, write_json
from .whitenoise import (ChaosParseError, OrderOverflow, WhiteNoiseConfig,
                         parse_chaos, wn_bracket, wn_quantize)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_TRUNCATION = 2
EXIT_CHECKS_FAILED = 3

MODES = ("quantize", "verify-lemma", "verify-theorem", "ccr", "cuntz-check",
         "bound-check", "wn-bracket", "wn-quantize", "export")

WEIGHTS = {"squared": GaussWeight.SQUARED, "standard": GaussWeight.STANDARD}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> _Parser:
    parser = _Parser(prog="cuntzquant", description=__doc__.splitlines()[0],
                     add_help=True)
    # required-ness is checked after config defaults are merged, so a TOML
    # file may supply the mode
    parser.add_argument("--mode", choices=MODES)
    parser.add_argument("--config", help="TOML file with flag defaults")
    parser.add_argument("--n", type=int, help="conjugate coordinate pairs")
    parser.add_argument("--N", type=int, help="basis truncation size")
    parser.add_argument("--M", type=int, default=10_000,
                        help="coordinate truncation for cuntz-check")
    parser.add_argument("--d", type=int, default=64,
                        help="alphabet size for cuntz-check")
    parser.add_argument("--K", type=int, help="field modes for wn-* modes")
    parser.add_argument("--C", type=int, help="chaos order cap for wn-* modes")
    parser.add_argument("--f", help="observable text")
    parser.add_argument("--g", help="second observable text")
    parser.add_argument("--h", dest="h_obs", help="observable for bound-check")
    parser.add_argument("--k", type=int, default=1,
                        help="basis index for bound-check")
    parser.add_argument("--m", dest="power", type=int, default=2,
                        help="power for the multiplicativity rule")
    parser.add_argument("--phi-degree", type=int, default=2)
    parser.add_argument("--lambda", dest="lam",
                        help="comma separated rational bracket weights")
    parser.add_argument("--weight", choices=sorted(WEIGHTS),
                        help="Gaussian weight (default: squared; ccr: standard)")
    parser.add_argument("--kind", choices=("Q", "R", "Qhat"), default="Qhat",
                        help="operator selected by --mode export")
    parser.add_argument("--tol", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--out", help="write the JSON report (or .mtx) here")
    return parser


def _apply_config(parser: _Parser, argv: list[str]) -> argparse.Namespace:
    probe = _Parser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if known.config:
        try:
            with open(known.config, "rb") as fh:
                table = tomli.load(fh)
        except OSError as exc:
            raise _UsageError(f"cannot read config: {exc}")
        except tomli.TOMLDecodeError as exc:
            raise _UsageError(f"malformed config: {exc}")
        valid = {a.dest for a in parser._actions}
        defaults = {}
        for key, value in table.items():
            dest = key.replace("-", "_")
            if dest not in valid:
                raise _UsageError(f"unknown config key {key!r}")
            defaults[dest] = value
        parser.set_defaults(**defaults)
    return parser.parse_args(argv)


_DEST_OF = {"h": "h_obs", "lambda": "lam"}


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        dest = _DEST_OF.get(name, name.replace("-", "_"))
        if getattr(args, dest, None) in (None, ""):
            raise _UsageError(f"--{name} is required for --mode {args.mode}")


def _parse_lambda(text: str | None, modes: int) -> tuple[Fraction, ...]:
    if not text:
        return ()
    try:
        parts = tuple(Fraction(p.strip()) for p in str(text).split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"malformed --lambda: {exc}")
    if len(parts) != modes:
        raise _UsageError(f"--lambda needs {modes} entries, got {len(parts)}")
    return parts


def _weight(args: argparse.Namespace, default: GaussWeight) -> GaussWeight:
    return WEIGHTS[args.weight] if args.weight else default


def _spec(args: argparse.Namespace, default_weight=GaussWeight.SQUARED) -> BasisSpec:
    _require(args, "n", "N")
    return BasisSpec(args.n, args.N, weight=_weight(args, default_weight))


def _wn_config(args: argparse.Namespace) -> WhiteNoiseConfig:
    _require(args, "K", "C")
    return WhiteNoiseConfig(args.K, args.C, lam=_parse_lambda(args.lam, args.K))


def _operator_summary(name: str, mat: CoeffMatrix) -> dict:
    return {"operator": name, "band": mat.band, "window": mat.window,
            "nonzeros": mat.nnz()}


def _finish(report: dict, args: argparse.Namespace, failed: bool) -> int:
    text = canonical_json(report)
    print(text)
    if args.out:
        write_json(args.out, report)
    return EXIT_CHECKS_FAILED if failed else EXIT_OK


def _run_quantize(args: argparse.Namespace) -> int:
    _require(args, "f")
    spec = _spec(args)
    f = parse_polynomial(args.f, spec.dim_n)
    ops = {"Q": build_Q(f, spec), "R": build_R(f, spec),
           "Qhat": build_Qhat(f, spec)}
    report = suite_report("quantize", {
        "n": spec.dim_n, "N": spec.size, "weight": spec.weight.value,
        "f": str(f)}, [],
        extra={"operators": [_operator_summary(k, v) for k, v in ops.items()]})
    return _finish(report, args, failed=False)


def _run_export(args: argparse.Namespace) -> int:
    _require(args, "f", "out")
    spec = _spec(args)
    f = parse_polynomial(args.f, spec.dim_n)
    builder = {"Q": build_Q, "R": build_R, "Qhat": build_Qhat}[args.kind]
    mat = builder(f, spec)
    mmio.write_matrix_market(mat, args.out,
                             comment=f"{args.kind}({f}) n={spec.dim_n} N={spec.size}")
    report = suite_report("export", {
        "n": spec.dim_n, "N": spec.size, "weight": spec.weight.value,
        "f": str(f), "kind": args.kind, "out": args.out}, [],
        extra={"operators": [_operator_summary(args.kind, mat)]})
    print(canonical_json(report))
    return EXIT_OK


def _run_verify_lemma(args: argparse.Namespace) -> int:
    _require(args, "f", "g")
    spec = _spec(args)
    f = parse_polynomial(args.f, spec.dim_n)
    g = parse_polynomial(args.g, spec.dim_n)
    checks = verify_lemma(f, g, spec, tol=args.tol)
    report = suite_report("verify-lemma", {
        "n": spec.dim_n, "N": spec.size, "weight": spec.weight.value,
        "f": str(f), "g": str(g), "tol": args.tol}, checks)
    return _finish(report, args, failed=not suite_passed(checks))


def _run_verify_theorem(args: argparse.Namespace) -> int:
    _require(args, "f", "g")
    spec = _spec(args)
    f = parse_polynomial(args.f, spec.dim_n)
    g = parse_polynomial(args.g, spec.dim_n)
    checks = verify_theorem(f, g, spec, phi_degree=args.phi_degree, tol=args.tol)
    report = suite_report("verify-theorem", {
        "n": spec.dim_n, "N": spec.size, "weight": spec.weight.value,
        "f": str(f), "g": str(g), "phi_degree": args.phi_degree,
        "tol": args.tol}, checks)
    return _finish(report, args, failed=not suite_passed(checks))


def _run_ccr(args: argparse.Namespace) -> int:
    spec = _spec(args, default_weight=GaussWeight.STANDARD)
    fam = build_ccr(spec.dim_n, spec)
    checks = (verify_ccr(fam, tol=args.tol)
              + verify_adjoint_relation(fam, tol=args.tol)
              + verify_ccr_starred(fam, tol=args.tol))
    extra = {}
    if args.f:
        f = parse_polynomial(args.f, spec.dim_n)
        q_expr, r_expr = quantize_via_ccr(f, fam)
        checks.append(_expr_check("word-expression-Q", q_expr, build_Q(f, spec), fam))
        checks.append(_expr_check("word-expression-R", r_expr, build_R(f, spec), fam))
        extra["words"] = {"f": str(f), "Q": expression_text(q_expr),
                          "R": expression_text(r_expr)}
    report = suite_report("ccr", {
        "n": spec.dim_n, "N": spec.size, "weight": spec.weight.value,
        "tol": args.tol}, checks, extra=extra or None)
    return _finish(report, args, failed=not suite_passed(checks))


def _expr_check(name, expr, direct, fam):
    from .quantizer import compare
    return compare(name, evaluate_expression(expr, fam), direct)


def _run_cuntz_check(args: argparse.Namespace) -> int:
    rep = CuntzRep(alphabet=args.d, dim=args.M)
    result = verify_cuntz(rep)
    report = suite_report("cuntz-check", {"M": args.M, "d": args.d}, [],
                          extra={"cuntz": result.to_dict()})
    return _finish(report, args, failed=not result.passed)


def _run_bound_check(args: argparse.Namespace) -> int:
    _require(args, "h")
    spec = _spec(args)
    h = parse_polynomial(args.h_obs, spec.dim_n)
    rep = CuntzRep(alphabet=args.d, dim=args.M)
    result = bound_check(h, args.k, spec, rep, Random(args.seed),
                         trials=args.trials)
    report = suite_report("bound-check", {
        "n": spec.dim_n, "N": spec.size, "h": str(h), "k": args.k,
        "seed": args.seed, "trials": args.trials}, [],
        extra={"bound": result.to_dict()})
    return _finish(report, args, failed=not result.passed)


def _run_wn_bracket(args: argparse.Namespace) -> int:
    _require(args, "f", "g")
    cfg = _wn_config(args)
    f = parse_chaos(args.f, cfg)
    g = parse_chaos(args.g, cfg)
    br = wn_bracket(f, g)
    report = suite_report("wn-bracket", {
        "K": cfg.modes, "C": cfg.order_cap,
        "lambda": [str(x) for x in cfg.lam],
        "f": str(f), "g": str(g)}, [],
        extra={"bracket": str(br), "order": br.degree()})
    return _finish(report, args, failed=False)


def _run_wn_quantize(args: argparse.Namespace) -> int:
    _require(args, "f", "N")
    cfg = _wn_config(args)
    f = parse_chaos(args.f, cfg)
    q, r, qhat, backend = wn_quantize(f, args.N)
    report = suite_report("wn-quantize", {
        "K": cfg.modes, "C": cfg.order_cap, "N": args.N,
        "lambda": [str(x) for x in cfg.lam], "f": str(f)}, [],
        extra={"operators": [
            _operator_summary("Q", q), _operator_summary("R", r),
            _operator_summary("Qhat", qhat)]})
    return _finish(report, args, failed=False)


_RUNNERS = {
    "quantize": _run_quantize,
    "export": _run_export,
    "verify-lemma": _run_verify_lemma,
    "verify-theorem": _run_verify_theorem,
    "ccr": _run_ccr,
    "cuntz-check": _run_cuntz_check,
    "bound-check": _run_bound_check,
    "wn-bracket": _run_wn_bracket,
    "wn-quantize": _run_wn_quantize,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    if args.mode not in _RUNNERS:
        # config defaults bypass the argparse choices check
        what = "--mode is required" if not args.mode else f"unknown mode {args.mode!r}"
        print(f"error: {what}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return _RUNNERS[args.mode](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (EmptyWindowError, TruncationOverflow, OrderOverflow,
            LiftOverflow) as exc:
        print(f"error: truncation too small: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (PolyParseError, ChaosParseError, DimensionMismatch,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
