"""Command-line front end.

Every command writes one JSON document (or CSV table) to stdout or ``--out``
and exits with 0 (all checks hold), 1 (counterexample, violated link or
failed criterion), 2 (invalid input) or 3 (numerical failure or an
unsupported family).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

from .bounds import (HolderPair, bound_corollary, bound_some2, bound_some6,
                     bound_some9, hh_classical, hh_generalized, hh_s_classical, hh_s_generalized,
                     lemma_report, reports_to_csv, reverse_hh_premise)
from .convexity import CLASSES, Certificate, ConvexityQuery, run_query
from .epigraph import check_E_alpha_convex_set, lifted_from_json
from .errors import (DomainError, InputError, NumericalError, UnsupportedExponentError,
                     UnsupportedFamilyError, WitnessError)
from .fpoly import FractalPoly, parse_fpoly
from .functions import (EvaluableFn, PolyFn, Simplex, emap_from_json, fn_from_json, interval,
                        region_from_json, region_with_closure)
from .means import MeanKind, mean, prop_mean_bound_1, prop_mean_bound_2, wave_residual, wave_solution_eval
from .sampling import Budget
from .suite import DEFAULT_SEED, run_suite

SCHEMA = "1"
EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
BOUND_KINDS = ("lemma", "some3", "some7", "corollary", "some9", "reverse")
CLASSIFY_KINDS = CLASSES + ("E-alpha-convex-set",)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# argument parsing


def _budget_flags(p):
    p.add_argument("--grid", type=int, default=32)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)


def _output_flags(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fractalconvex", description="Convexity checks and Hermite-Hadamard bounds on fractal sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="search for a counterexample to a convexity class")
    p.add_argument("--kind", required=True, choices=CLASSIFY_KINDS)
    p.add_argument("--fn")
    p.add_argument("--emap")
    p.add_argument("--domain", nargs=2, type=float, metavar=("LO", "HI"))
    p.add_argument("--region")
    p.add_argument("--alpha", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--open-simplex", action="store_true")
    p.add_argument("--even-power", action="store_true")
    _budget_flags(p)
    _output_flags(p)

    p = sub.add_parser("hh", help="evaluate a Hermite-Hadamard chain")
    p.add_argument("--eq", required=True, type=int, choices=(8, 9, 10, 11))
    p.add_argument("--fn", required=True)
    p.add_argument("--interval", nargs=2, type=float, required=True, metavar=("A", "B"))
    p.add_argument("--s", type=float)
    p.add_argument("--even-power", action="store_true")
    _output_flags(p)

    p = sub.add_parser("bound", help="evaluate a midpoint-gap bound")
    p.add_argument("--kind", required=True, choices=BOUND_KINDS)
    p.add_argument("--fn", required=True)
    p.add_argument("--interval", nargs=2, type=float, required=True, metavar=("A", "B"))
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--p1", type=float)
    p.add_argument("--p2", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--even-power", action="store_true")
    _output_flags(p)

    p = sub.add_parser("means", help="special means and the mean propositions")
    p.add_argument("--kind", required=True, choices=[k.value for k in MeanKind] + ["prop1", "prop2"])
    p.add_argument("--y1", type=float, required=True)
    p.add_argument("--y2", type=float, required=True)
    p.add_argument("--n", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--p1", type=float)
    p.add_argument("--p2", type=float)
    p.add_argument("--alpha", type=float, default=1.0)
    _output_flags(p)

    p = sub.add_parser("wave", help="both sides of the wave equation at the stated solution")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    _output_flags(p)

    p = sub.add_parser("suite", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--only", nargs="+")
    _output_flags(p)
    return parser


# ---------------------------------------------------------------------------
# input decoding


def _load_json_arg(text: str, flag: str):
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"{flag}: cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{flag}: invalid JSON ({exc.msg} at position {exc.pos})") from None


def parse_fn(text: str, even_power: bool = False) -> EvaluableFn:
    if text.lstrip().startswith("fpoly"):
        return PolyFn(parse_fpoly(text), even_power=even_power)
    fn = fn_from_json(_load_json_arg(text, "--fn"), "$fn")
    if even_power and isinstance(fn, PolyFn):
        fn = PolyFn(fn.poly, fn.var, True)
    return fn


def parse_poly(text: str) -> FractalPoly:
    fn = parse_fn(text)
    if not isinstance(fn, PolyFn) or fn.var != 0:
        raise InputError("--fn must be a one-variable fractal polynomial for this command")
    return fn.poly


def _interval(values):
    a, b = values
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise InputError(f"--interval needs finite a < b, got ({a}, {b})")
    return (a, b)


def _holder(args) -> HolderPair:
    if args.p1 is None and args.p2 is None:
        raise InputError("this command needs --p1 and/or --p2")
    if args.p1 is None:
        return HolderPair.from_p2(args.p2)
    if args.p2 is None:
        hp = HolderPair.from_p2(args.p1)
        return HolderPair(hp.p2, hp.p1)
    return HolderPair(args.p1, args.p2)


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(config: dict) -> str:
    return hashlib.sha256(_canonical(config).encode()).hexdigest()


# ---------------------------------------------------------------------------
# commands: each returns (config, payload, exit code)


def _certificate_exit(c: Certificate) -> int:
    return EXIT_VIOLATION if c.is_counterexample else EXIT_OK


def cmd_classify(args):
    budget = Budget(args.grid, args.samples, args.seed)
    if args.kind == "E-alpha-convex-set":
        if args.region is None:
            raise InputError("E-alpha-convex-set needs --region with a lifted region")
        S = lifted_from_json(_load_json_arg(args.region, "--region"), "$region")
        E = emap_from_json(_load_json_arg(args.emap, "--emap"), "$emap") if args.emap else None
        alpha = 1.0 if args.alpha is None else args.alpha
        cert = check_E_alpha_convex_set(S, E, alpha, budget, args.tol)
        config = {"command": "classify", "kind": args.kind, "region": S.to_json(),
                  "emap": None if E is None else E.to_json(), "alpha": alpha, "tol": args.tol}
        return config, {"certificate": cert.to_json()}, _certificate_exit(cert)

    if (args.domain is None) == (args.region is None):
        raise InputError("give exactly one of --domain or --region")
    if args.domain is not None:
        region = interval(*args.domain)
    else:
        region = region_from_json(_load_json_arg(args.region, "--region"), "$region")
    if args.open_simplex:
        if not isinstance(region, Simplex):
            raise InputError("--open-simplex applies only to simplex regions")
        region = region_with_closure(region, False)
    fn = parse_fn(args.fn, args.even_power) if args.fn else None
    E = emap_from_json(_load_json_arg(args.emap, "--emap"), "$emap") if args.emap else None
    alpha = args.alpha
    if alpha is None:
        alpha = fn.poly.alpha if isinstance(fn, PolyFn) else 1.0
    q = ConvexityQuery(args.kind, region, alpha, fn, E, args.s, budget, args.tol, args.strict)
    cert = run_query(q)
    config = {"command": "classify", "kind": args.kind, "region": region.to_json(),
              "fn": None if fn is None else fn.to_json(), "emap": None if q.E is None else q.E.to_json(),
              "alpha": alpha, "s": args.s, "strict": args.strict, "tol": args.tol,
              "budget": budget.to_json()}
    return config, {"certificate": cert.to_json()}, _certificate_exit(cert)


def _report_exit(reports) -> int:
    if any(r.status == "unsupported-family" for r in reports):
        return EXIT_NUMERIC
    return EXIT_OK if all(r.satisfied for r in reports) else EXIT_VIOLATION


def cmd_hh(args):
    iv = _interval(args.interval)
    fn = parse_fn(args.fn, args.even_power)
    if args.eq in (10, 11) and args.s is None:
        raise InputError(f"equation {args.eq} needs --s")
    if args.eq in (8, 11):
        poly = parse_poly(args.fn)
        rep = hh_generalized(poly, iv) if args.eq == 8 else hh_s_generalized(poly, iv, args.s)
    else:
        rep = hh_classical(fn, iv) if args.eq == 9 else hh_s_classical(fn, iv, args.s)
    config = {"command": "hh", "eq": args.eq, "fn": fn.to_json(), "interval": list(iv), "s": args.s}
    return config, {"reports": [rep]}, _report_exit([rep])


def cmd_bound(args):
    iv = _interval(args.interval)
    config = {"command": "bound", "kind": args.kind, "interval": list(iv), "s": args.s,
              "p1": args.p1, "p2": args.p2}
    if args.kind == "reverse":
        if args.p2 is None:
            raise InputError("reverse needs --p2")
        fn = parse_fn(args.fn, args.even_power)
        alpha = args.alpha if args.alpha is not None else (fn.poly.alpha if isinstance(fn, PolyFn) else 1.0)
        g = fn.poly if isinstance(fn, PolyFn) and fn.var == 0 and not fn.even_power else fn
        rep = reverse_hh_premise(g, iv, args.s, args.p2, alpha)
        config.update(fn=fn.to_json(), alpha=alpha)
        return config, {"reports": [rep]}, _report_exit([rep])
    poly = parse_poly(args.fn)
    config["fn"] = poly.to_json()
    if args.kind == "lemma":
        rep = lemma_report(poly, iv)
    elif args.kind == "some3":
        rep = bound_some2(poly, iv, args.s)
    else:
        hp = _holder(args)
        fn = {"some7": bound_some6, "corollary": bound_corollary, "some9": bound_some9}[args.kind]
        rep = fn(poly, iv, args.s, hp)
    return config, {"reports": [rep]}, _report_exit([rep])


def cmd_means(args):
    config = {"command": "means", "kind": args.kind, "y1": args.y1, "y2": args.y2, "n": args.n,
              "s": args.s, "p1": args.p1, "p2": args.p2, "alpha": args.alpha}
    if args.kind in ("prop1", "prop2"):
        if args.s is None:
            raise InputError(f"{args.kind} needs --s")
        if args.kind == "prop1":
            rep = prop_mean_bound_1(args.y1, args.y2, args.s, args.alpha)
        else:
            rep = prop_mean_bound_2(args.y1, args.y2, args.s, _holder(args), args.alpha)
        return config, {"reports": [rep]}, _report_exit([rep])
    value = mean(args.kind, args.y1, args.y2, args.n, args.alpha)
    return config, {"mean": {"kind": args.kind, "value": value}}, EXIT_OK


def cmd_wave(args):
    lhs, rhs = wave_residual(args.x, args.t, args.alpha)
    value = wave_solution_eval(args.x, args.t, args.alpha)
    config = {"command": "wave", "alpha": args.alpha, "x": args.x, "t": args.t}
    return config, {"wave": {"lhs": lhs, "rhs": rhs}, "solution": value}, EXIT_OK


def cmd_suite(args):
    summary = run_suite(args.seed, args.tol, args.only)
    config = {"command": "suite", "seed": args.seed, "tol": args.tol, "only": args.only}
    payload = {"seed": summary["seed"], "criteria": summary["criteria"], "passed": summary["passed"]}
    return config, payload, EXIT_OK if summary["passed"] else EXIT_VIOLATION


COMMANDS = {"classify": cmd_classify, "hh": cmd_hh, "bound": cmd_bound, "means": cmd_means,
            "wave": cmd_wave, "suite": cmd_suite}


# ---------------------------------------------------------------------------
# rendering


def _jsonable(payload: dict) -> dict:
    out = {}
    for k, v in payload.items():
        if k == "reports":
            v = [r.to_json() for r in v]
        out[k] = v
    return out


def _csv(payload: dict) -> str:
    if "reports" in payload:
        return reports_to_csv(payload["reports"])
    if "certificate" in payload:
        c = payload["certificate"]
        return "status,violation,checked,seed\n" + ",".join(
            "" if v is None else str(v) for v in (c["status"], c["violation"], c["checked"], c["seed"])) + "\n"
    if "criteria" in payload:
        return "id,title,passed\n" + "".join(f"{r['id']},{r['title']},{r['passed']}\n" for r in payload["criteria"])
    if "wave" in payload:
        return f"lhs,rhs,solution\n{payload['wave']['lhs']},{payload['wave']['rhs']},{payload['solution']}\n"
    if "mean" in payload:
        return f"kind,value\n{payload['mean']['kind']},{payload['mean']['value']}\n"
    if "error" in payload:
        e = payload["error"]
        return "type,message\n" + f"{e['type']},\"{e['message']}\"\n"
    raise InputError("no CSV layout for this payload")


def render(payload: dict, fmt: str) -> str:
    if fmt == "csv":
        return _csv(payload)
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _error_payload(exc: Exception, kind: str) -> dict:
    err = {"type": kind, "message": str(exc)}
    point = getattr(exc, "point", None)
    if point is not None:
        err["point"] = point if isinstance(point, (int, float)) else list(point)
    return {"schema": SCHEMA, "error": err}


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    fmt, out = "json", None
    try:
        args = parser.parse_args(argv)
        fmt, out = args.format, args.out
        config, payload, code = COMMANDS[args.command](args)
        doc = {"schema": SCHEMA, "command": args.command, "config_hash": config_hash(config)}
        doc.update(_jsonable(payload))
        if fmt == "csv" and "reports" in payload:
            text = render(payload, fmt)
        else:
            text = render(doc, fmt)
    except UsageError as exc:
        code, text = EXIT_INPUT, render(_error_payload(exc, "usage"), fmt)
    except (InputError, DomainError, WitnessError) as exc:
        code, text = EXIT_INPUT, render(_error_payload(exc, type(exc).__name__), fmt)
    except (NumericalError, UnsupportedExponentError, UnsupportedFamilyError, OverflowError) as exc:
        code, text = EXIT_NUMERIC, render(_error_payload(exc, type(exc).__name__), fmt)
    except ValueError as exc:
        # allow_nan=False rejects NaN or infinity in a payload
        code, text = EXIT_NUMERIC, render(_error_payload(exc, "NumericalError"), fmt)
    _emit(text, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
