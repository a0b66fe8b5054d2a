"""Command-line frontend: list/verify identities, expand series, evaluate
numerically, run span analyses, and run the whole suite with JSON reports.

Exit codes: 0 = pass, 1 = verification failure (or rank instability),
2 = usage error / unknown identity / inadmissible parameters.
Rational flags accept "a/b" strings; complex flags accept Python literals
like "0.8j" or "0.3+0.1j".  MOCKFORMS_DEFAULT_QMAX overrides the default
truncation order when --qmax is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import registry
from .errors import MockformsError, PoleAtQZero, RankUnstable
from .mock import PhiParams, numerator, phi_numeric, phi_symbolic
from .numeric import NumericPoint, eta_c, theta_c, vartheta11_c
from .registry import CATALOGUE, IdentityCase, run_case, run_suite
from .ring import SignVariant, frac
from .series import dumps as series_dumps
from .series import pretty, to_json_dict
from .special import AffineArg, ThetaSpec, eta, euler_product, theta, vartheta
from .spans import (build_CHnum, build_Theta, build_U, build_V, span_dim,
                    span_equal)


def _default_qmax(value, fallback: int):
    if value is not None:
        return frac(value)
    env = os.environ.get("MOCKFORMS_DEFAULT_QMAX")
    if env:
        return frac(env)
    return Fraction(fallback)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise SystemExit(f"error: cannot parse complex number {text!r}") from exc


def _write_json(path: str | None, payload: dict) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)


def cmd_list(args) -> int:
    for cid, spec in CATALOGUE.items():
        flags = []
        if spec.disabled:
            flags.append("disabled")
        if spec.mutation_of:
            flags.append(f"mutation of {spec.mutation_of}")
        suffix = f"  [{', '.join(flags)}]" if flags else ""
        domain = ", ".join(f"{k} in {sorted(map(str, v), key=str)}"
                           for k, v in spec.param_domain.items())
        print(f"{cid:22s} {spec.mode:8s} {spec.doc}{suffix}")
        if domain and args.verbose:
            print(f"{'':22s} params: {domain}")
    return 0


def cmd_verify(args) -> int:
    if args.id not in CATALOGUE:
        print(f"error: unknown identity {args.id!r}; see `mockforms list`",
              file=sys.stderr)
        return 2
    params = {k: v for k, v in
              (("m", args.m), ("s", args.s), ("p", args.p), ("a", args.a),
               ("n", args.n)) if v is not None}
    case = IdentityCase(id=args.id, params=params,
                        trunc=frac(args.qmax) if args.qmax else None,
                        points=args.points, tol=args.tol, seed=args.seed,
                        guard=args.guard)
    try:
        report = run_case(case)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{report.id} {report.params}: {report.status.upper()}"
          + (f"  (max residual {report.residual:.3e})"
             if report.residual is not None else ""))
    if report.witness:
        print(f"  witness: {json.dumps(report.witness, default=str)}")
    _write_json(args.json, report.as_dict())
    return 0 if report.status == "pass" else 1


def _expand_series(args, qmax: Fraction):
    if args.fn == "theta":
        spec = ThetaSpec.of(frac(args.j), frac(args.level),
                            SignVariant.MINUS if args.minus else SignVariant.NONE,
                            args.k, AffineArg.of(frac(args.alpha),
                                                 frac(args.beta), frac(args.gamma)))
        return theta(spec, qmax)
    if args.fn == "eta":
        return eta(args.k, qmax)
    if args.fn == "vartheta":
        return vartheta(args.kind, args.k,
                        AffineArg.of(frac(args.alpha), frac(args.beta),
                                     frac(args.gamma)), qmax)
    if args.fn == "euler":
        return euler_product(args.kind2, qmax)
    if args.fn == "phi":
        params = PhiParams.of(frac(args.m), frac(args.s), args.variant, args.part)
        return phi_symbolic(
            params, args.k,
            AffineArg.of(frac(args.alpha1), frac(args.beta1), frac(args.gamma1)),
            AffineArg.of(frac(args.alpha2), frac(args.beta2), frac(args.gamma2)),
            "tau_over_8" if args.t == "tau/8" else "zero", qmax)
    if args.fn == "numerator":
        return numerator(int(args.m), frac(args.s), qmax, p=args.p or 0)
    raise SystemExit(f"error: unknown function {args.fn!r}")


def cmd_expand(args) -> int:
    qmax = _default_qmax(args.qmax, 8)
    try:
        series = _expand_series(args, qmax)
    except PoleAtQZero as exc:
        print(f"error: PoleAtQZero: {exc} (use `eval` for numeric values)",
              file=sys.stderr)
        return 2
    except (MockformsError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(pretty(series))
    if args.raw:
        print(series_dumps(series))
    _write_json(args.json, to_json_dict(series))
    return 0


def cmd_eval(args) -> int:
    tau = _parse_complex(args.tau)
    if tau.imag <= 0:
        print("error: tau must have positive imaginary part", file=sys.stderr)
        return 2
    try:
        if args.fn == "theta":
            value = theta_c(frac(args.j), frac(args.level),
                            SignVariant.MINUS if args.minus else SignVariant.NONE,
                            args.k * tau, _parse_complex(args.z))
        elif args.fn == "eta":
            value = eta_c(args.k * tau)
        elif args.fn == "vartheta":
            if args.kind != "11":
                print("error: numeric evaluation implemented for kind 11 only",
                      file=sys.stderr)
                return 2
            value = vartheta11_c(args.k * tau, _parse_complex(args.z))
        elif args.fn == "phi":
            params = PhiParams.of(frac(args.m), frac(args.s), args.variant,
                                  args.part)
            point = NumericPoint(tau=args.k * tau,
                                 z1=_parse_complex(args.z1),
                                 z2=_parse_complex(args.z2),
                                 t=_parse_complex(args.t))
            value = phi_numeric(params, point, args.tol)
        else:
            print(f"error: unknown function {args.fn!r}", file=sys.stderr)
            return 2
    except MockformsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(f"{value.real:+.15e} {value.imag:+.15e}j")
    return 0


def _build_space(name: str, m: int, s, parity: str, trunc) -> list:
    if name == "Theta":
        return build_Theta(m, parity or "all", trunc)
    if name == "V":
        return build_V(m, frac(s if s is not None else 0), trunc)
    if name == "U":
        return build_U(m, frac(s if s is not None else 0), trunc)
    if name == "CHnum":
        return build_CHnum(m, trunc)
    raise SystemExit(f"error: unknown space {name!r}")


def cmd_spans(args) -> int:
    qmax = _default_qmax(args.qmax, 12)
    names = args.space.split(",")
    try:
        if args.op == "dim":
            gens = _build_space(names[0], args.m, args.s, args.parity, qmax)
            d = span_dim(gens, qmax, args.guard)
            print(f"dim {names[0]}[m={args.m}"
                  + (f", s={args.s}" if args.s is not None else "") + f"] = {d}")
            return 0
        if args.op == "equal":
            if len(names) != 2:
                print("error: --op equal needs --space A,B", file=sys.stderr)
                return 2
            a = _build_space(names[0], args.m, args.s, args.parity, qmax)
            b = _build_space(names[1], args.m, args.s, args.parity, qmax)
            verdict = span_equal(a, b, qmax, args.guard)
            print("EQUAL" if verdict.ok else "NOT EQUAL")
            for d in verdict.details:
                if not d["ok"]:
                    print(f"  {d['direction']} generator {d['index']}: "
                          f"{json.dumps(d['witness'], default=str)}")
            return 0 if verdict.ok else 1
        if args.op == "tower":
            cid = {"Theta": "THETA-TOWER", "V": "V-TOWER",
                   "CHnum": "CH-TOWER"}.get(names[0])
            if cid is None:
                print("error: --op tower supports Theta, V, CHnum",
                      file=sys.stderr)
                return 2
            report = run_case(IdentityCase(cid, {"m": args.m}, trunc=qmax,
                                           guard=args.guard))
            print(f"{cid} m={args.m}: {report.status.upper()}")
            if report.witness:
                print(f"  witness: {json.dumps(report.witness, default=str)}")
            return 0 if report.status == "pass" else 1
        print(f"error: unknown op {args.op!r}", file=sys.stderr)
        return 2
    except RankUnstable as exc:
        print(f"error: RankUnstable: {exc}; raise --qmax", file=sys.stderr)
        return 1
    except (ValueError, MockformsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cmd_suite(args) -> int:
    qmax = frac(args.qmax) if args.qmax else (
        frac(os.environ["MOCKFORMS_DEFAULT_QMAX"])
        if os.environ.get("MOCKFORMS_DEFAULT_QMAX") else None)
    summary = run_suite(filter_glob=args.filter, seed=args.seed,
                        qmax=qmax, jobs=args.jobs)
    for case in summary["cases"]:
        mark = {"pass": "ok  ", "fail": "FAIL", "error": "ERR "}[case["status"]]
        print(f"[{mark}] {case['id']:22s} {json.dumps(case['params'])}")
    print(f"total={summary['total']} pass={summary['pass']} "
          f"fail={summary['fail']} error={summary['error']}")
    _write_json(args.json, summary)
    return 0 if summary["fail"] == 0 and summary["error"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mockforms",
        description="Exact q-series engine and identity verifier")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list catalogue identities")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn_main=cmd_list)

    p = sub.add_parser("verify", help="verify one identity case")
    p.add_argument("--id", required=True)
    p.add_argument("--m")
    p.add_argument("--s")
    p.add_argument("--p", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--qmax")
    p.add_argument("--points", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard", type=int, default=4)
    p.add_argument("--json")
    p.set_defaults(fn_main=cmd_verify)

    p = sub.add_parser("expand", help="expand a function as an exact series")
    p.add_argument("--fn", required=True,
                   choices=["theta", "eta", "vartheta", "euler", "phi",
                            "numerator"])
    p.add_argument("--j", default="0")
    p.add_argument("--level", default="1")
    p.add_argument("--minus", action="store_true")
    p.add_argument("--k", type=int, default=1, help="tau scale")
    p.add_argument("--kind", choices=["11", "10", "01"], default="11")
    p.add_argument("--kind2", choices=["one_minus", "one_plus"],
                   default="one_minus")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="0")
    p.add_argument("--gamma", default="0")
    p.add_argument("--m", default="1")
    p.add_argument("--s", default="0")
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--variant", choices=["none", "plus", "minus"],
                   default="none")
    p.add_argument("--part", choices=["full", "first", "second"],
                   default="full")
    p.add_argument("--alpha1", default="1")
    p.add_argument("--beta1", default="1/2")
    p.add_argument("--gamma1", default="-1/2")
    p.add_argument("--alpha2", default="1")
    p.add_argument("--beta2", default="-1/2")
    p.add_argument("--gamma2", default="1/2")
    p.add_argument("--t", choices=["0", "tau/8"], default="0")
    p.add_argument("--qmax")
    p.add_argument("--raw", action="store_true",
                   help="also print the canonical JSON line")
    p.add_argument("--json")
    p.set_defaults(fn_main=cmd_expand)

    p = sub.add_parser("eval", help="evaluate a function numerically")
    p.add_argument("--fn", required=True,
                   choices=["theta", "eta", "vartheta", "phi"])
    p.add_argument("--tau", required=True)
    p.add_argument("--z", default="0")
    p.add_argument("--z1", default="0")
    p.add_argument("--z2", default="0")
    p.add_argument("--t", default="0")
    p.add_argument("--j", default="0")
    p.add_argument("--level", default="1")
    p.add_argument("--minus", action="store_true")
    p.add_argument("--kind", choices=["11", "10", "01"], default="11")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", default="1/2")
    p.add_argument("--s", default="1/2")
    p.add_argument("--variant", choices=["none", "plus", "minus"],
                   default="none")
    p.add_argument("--part", choices=["full", "first", "second"],
                   default="full")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(fn_main=cmd_eval)

    p = sub.add_parser("spans", help="span dimensions, equalities, towers")
    p.add_argument("--space", required=True,
                   help="Theta | V | U | CHnum (comma pair for --op equal)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s")
    p.add_argument("--parity", choices=["all", "even", "odd"])
    p.add_argument("--op", choices=["dim", "equal", "tower"], required=True)
    p.add_argument("--qmax")
    p.add_argument("--guard", type=int, default=4)
    p.set_defaults(fn_main=cmd_spans)

    p = sub.add_parser("suite", help="run the verification suite")
    p.add_argument("--filter", default="*")
    p.add_argument("--qmax")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(fn_main=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn_main(args)


if __name__ == "__main__":
    sys.exit(main())
