"""Command-line interface: ``oscquad {integrate,error,curve,complexity,verify}``."""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict

from .algorithms import (algo_per, algo_tay_per, auto_dispatch, damped_qmc, modified_qmc, qmc)
from .errors import (asymptotic_qmc_constant, complexity, complexity_infty, damped_error,
                     initial_error, minimal_error_bounds, modified_qmc_bound,
                     modified_qmc_error, optimal_damping, per_error_bound,
                     qmc_uniform_bound, qmc_worst_case_error, tay_per_error_bound,
                     taylor_error_bound)
from .exceptions import (DivergentNormError, InvalidBudgetError, PreconditionError,
                         QuadratureError, SpecParseError)
from .functions import default_tol, parse_function_spec, reference_integral
from .sobolev import norm_hs
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_QUADRATURE = 0, 1, 2, 3, 4

CURVE_COLUMNS = ["n", "k", "s", "exact_qmc", "star_exact", "per_bound", "tayper_bound",
                 "lower_bound", "upper_bound"]


def parse_smoothness(text):
    """Integer ``>= 1`` or ``inf``."""
    if str(text).strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"smoothness must be an integer or 'inf', got {text!r}")
    if s < 1:
        raise argparse.ArgumentTypeError("smoothness must be >= 1")
    return s


def _s_out(s):
    return "inf" if s == math.inf else s


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + ("" if text.endswith("\n") else "\n"))
    else:
        print(text)


def _emit_json(obj, args):
    _emit(json.dumps(obj, indent=2), args.out)


# ---------------------------------------------------------------------------
# integrate

def _run_algorithm(args, f):
    n, k, s = args.n, args.k, args.s
    algo = args.algo
    unit_bound = None
    if algo in ("qmc", "damped"):
        if algo == "qmc":
            run = qmc(f, n, k)
            if f.periodic and s != math.inf:
                unit_bound = qmc_worst_case_error(n, k, s).value
        else:
            a = args.a
            if a is None:
                if s == math.inf:
                    raise PreconditionError("damped QMC with s=inf needs an explicit --a")
                a, _ = optimal_damping(n, k, s)
            run = damped_qmc(f, n, k, a)
            if f.periodic and s != math.inf:
                unit_bound = damped_error(n, k, s, a)
    elif algo == "star":
        if s == math.inf:
            raise PreconditionError("the modified QMC rule needs finite s")
        run = modified_qmc(f, n, k)
        if f.periodic:
            unit_bound = modified_qmc_error(n, k, s).value
    elif algo == "per":
        run = algo_per(f, n, k, s)
        unit_bound = run.bound
    elif algo == "tayper":
        run = algo_tay_per(f, n, k, s)
        unit_bound = run.bound
    else:
        run = auto_dispatch(f, n, k, s)
        unit_bound = run.bound
        if run.algorithm == "auto:star" and not f.periodic:
            unit_bound = None
    return run, unit_bound


def cmd_integrate(args):
    f = parse_function_spec(args.f)
    run, unit_bound = _run_algorithm(args, f)
    certified = None
    norm = None
    if unit_bound is not None:
        try:
            norm = norm_hs(f, args.s)
            certified = unit_bound * norm
        except DivergentNormError:
            certified = None
    ref = reference_integral(f, args.k, default_tol()).value
    value = complex(run.value)
    out = {
        "value_re": value.real,
        "value_im": value.imag,
        "algorithm": run.algorithm,
        "n_used": run.evaluations,
        "n_budget": args.n,
        "evaluations": [{"order": o, "x": x} for o, x, _ in run.log.entries],
        "certified_bound": certified,
        "unit_ball_bound": unit_bound,
        "norm_hs": norm,
        "reference_value_re": ref.real,
        "reference_value_im": ref.imag,
        "reference_gap": abs(ref - value),
        "function": f.label,
        "k": args.k,
        "s": _s_out(args.s),
    }
    _emit_json(out, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# error

def _error_report(args):
    n, k, s = args.n, args.k, args.s
    periodic = args.setting == "periodic"
    kind = args.kind
    if kind == "initial":
        ie = initial_error(k, s, periodic)
        return {"value": ie.value, "kind": "exact", "beta": ie.beta,
                "provenance": "initial error"}
    if kind == "qmc":
        return asdict(qmc_worst_case_error(n, k, s))
    if kind == "qmc-bound":
        return asdict(qmc_uniform_bound(n, k, s))
    if kind == "damped":
        if args.a is None:
            a, rep = optimal_damping(n, k, s)
            return {**asdict(rep), "a": a}
        return {"value": damped_error(n, k, s, args.a), "kind": "exact", "a": args.a,
                "provenance": "damped qmc"}
    if kind == "star":
        return asdict(modified_qmc_error(n, k, s))
    if kind == "star-bound":
        return asdict(modified_qmc_bound(n, k, s))
    if kind == "per":
        return {"value": per_error_bound(n, k, s), "kind": "upper_bound",
                "provenance": "periodizing rule"}
    if kind == "tayper":
        return {"value": tay_per_error_bound(n, k, s), "kind": "upper_bound",
                "provenance": "taylor / periodizing rule"}
    if kind == "taylor":
        return {"value": taylor_error_bound(n), "kind": "upper_bound",
                "provenance": "taylor rule"}
    if kind in ("lower", "upper"):
        lo, up = minimal_error_bounds(n, k, s, periodic)
        return asdict(lo if kind == "lower" else up)
    if kind == "asymptotic":
        return {"value": asymptotic_qmc_constant(s), "kind": "exact",
                "provenance": "limit of n^s times the qmc error"}
    raise PreconditionError(f"unknown error kind {kind!r}")


def cmd_error(args):
    rep = _error_report(args)
    rep.update({"n": args.n, "k": args.k, "s": _s_out(args.s), "setting": args.setting,
                "error_kind": args.kind})
    _emit_json(rep, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# curve

def _running_best(bound_fn, n, best):
    try:
        b = bound_fn(n)
    except InvalidBudgetError:
        return best
    return b if best is None else min(best, b)


def curve_rows(k, s, n_max, periodic=True):
    """Rows of the error curve for ``n = 1..n_max``.

    ``per_bound`` and ``tayper_bound`` are the best certified bounds using at
    most ``n`` values; budgets where a rule is undefined fall back to the
    zero algorithm, whose error is the non-periodic initial error.
    """
    if s == math.inf:
        raise PreconditionError("curve needs finite s")
    e0_np = initial_error(k, s, False).value
    rows = []
    best_per, best_tp = None, None
    for n in range(1, n_max + 1):
        if k != 0:
            best_per = _running_best(lambda m: per_error_bound(m, k, s), n, best_per)
        best_tp = _running_best(lambda m: tay_per_error_bound(m, k, s), n, best_tp)
        lo, up = minimal_error_bounds(n, k, s, periodic)
        rows.append({
            "n": n, "k": k, "s": s,
            "exact_qmc": qmc_worst_case_error(n, k, s).value,
            "star_exact": modified_qmc_error(n, k, s).value,
            "per_bound": e0_np if best_per is None else min(best_per, e0_np),
            "tayper_bound": e0_np if best_tp is None else min(best_tp, e0_np),
            "lower_bound": lo.value,
            "upper_bound": up.value,
        })
    return rows


def cmd_curve(args):
    if args.n_max < 1:
        raise PreconditionError("--n-max must be >= 1")
    rows = curve_rows(args.k, args.s, args.n_max, args.setting == "periodic")
    if args.format == "json":
        _emit_json(rows, args)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CURVE_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: (repr(v) if isinstance(v, float) else v) for c, v in r.items()})
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# complexity and verify

def cmd_complexity(args):
    if args.s == math.inf:
        c = complexity_infty(args.eps, args.k, args.criterion)
    else:
        c = complexity(args.eps, args.k, args.s, args.criterion, args.setting == "periodic")
    out = {"lower": c.lower, "upper": c.upper, "achieved": c.achieved,
           "zero_case": c.zero_case, "target": c.target, "eps": args.eps, "k": args.k,
           "s": _s_out(args.s), "criterion": args.criterion, "setting": args.setting}
    _emit_json(out, args)
    return EXIT_OK


def cmd_verify(args):
    checks, seconds = run_suite(args.suite, seed=args.seed)
    lines = []
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status}  {c.suite:<11} {c.name:<{width}}  {c.detail}")
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed in {seconds:.1f} s")
    _emit("\n".join(lines), args.out)
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def build_parser():
    p = _Parser(prog="oscquad", description="Oscillatory integrals with certified errors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, n=True):
        sp.add_argument("--k", type=int, default=0, help="wave number")
        sp.add_argument("--s", type=parse_smoothness, default=1, help="smoothness (int or inf)")
        if n:
            sp.add_argument("--n", type=int, default=1, help="number of function values")
        sp.add_argument("--setting", choices=("periodic", "nonperiodic"), default="periodic")
        sp.add_argument("--out", default=None, help="write output to this file")
        sp.add_argument("--format", choices=("csv", "json"), default="json")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("integrate", help="run a rule on a function")
    common(sp)
    sp.add_argument("--algo", choices=("qmc", "damped", "star", "per", "tayper", "auto"),
                    default="auto")
    sp.add_argument("--f", required=True, help="function spec, e.g. exp:h=3 or poly:0,0,1")
    sp.add_argument("--a", type=float, default=None, help="damping factor")
    sp.set_defaults(func=cmd_integrate)

    sp = sub.add_parser("error", help="worst-case error or bound")
    common(sp)
    sp.add_argument("--kind", default="qmc",
                    choices=("qmc", "qmc-bound", "initial", "damped", "star", "star-bound",
                             "per", "tayper", "taylor", "lower", "upper", "asymptotic"))
    sp.add_argument("--a", type=float, default=None, help="damping factor")
    sp.set_defaults(func=cmd_error)

    sp = sub.add_parser("curve", help="error curves for n = 1..n_max")
    common(sp, n=False)
    sp.add_argument("--n-max", type=int, default=50)
    sp.set_defaults(func=cmd_curve, format="csv")

    sp = sub.add_parser("complexity", help="information complexity")
    common(sp, n=False)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--criterion", choices=("abs", "nor"), default="abs")
    sp.set_defaults(func=cmd_complexity)

    sp = sub.add_parser("verify", help="run property suites")
    sp.add_argument("suite", nargs="?", default="all", choices=list(SUITES) + ["all"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"oscquad: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"oscquad: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except QuadratureError as exc:
        print(f"oscquad: quadrature failed: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE


if __name__ == "__main__":
    sys.exit(main())
