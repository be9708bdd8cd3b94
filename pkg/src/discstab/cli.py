"""disc-stab: run stabilization tasks from the command line.

Tasks mirror the library one-to-one: corona, bezout, sign-linked, stabilize,
total-reduce, counterexample.  Inputs come either from flags (--pair1 F G
[--pair2 F G]) or from a JSON problem file; results are JSON documents that
are byte-identical across runs for identical inputs and seed (timing goes to
stderr).  Exit codes: 0 verdict produced, 2 precondition violation,
3 search budget exhausted, 4 parse/schema error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from .cert import CoronaCertificate, NotUnit, UnitCertificate, is_invertible_pair
from .config import DEFAULT_BOUNDARY_GRID, DELTA_GRID_RADII
from .counterexample import falsify, make_triple
from .bezout import solve_bezout
from .element import DiscElement
from .errors import (
    BudgetExhausted,
    DiscStabError,
    NonUnitDenominator,
    ParseError,
    SchemaError,
)
from .parsing import parse_element, print_element
from .poly import format_poly
from .reduce import SearchOptions
from .signs import SignReport, is_sign_linked
from .stabilize import simultaneous_stabilize, total_reduce

TASKS = ("corona", "bezout", "sign-linked", "stabilize", "total-reduce", "counterexample")

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_PARSE = 4


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # argparse must not sys.exit on its own
        raise SchemaError(f"invalid command line: {message}")


def _build_parser() -> _ArgumentParser:
    p = _ArgumentParser(prog="disc-stab", description=__doc__, add_help=True)
    p.add_argument("task", choices=TASKS)
    p.add_argument("--file", help="JSON problem file (see docs/problem-file.md)")
    p.add_argument("--pair1", nargs=2, metavar=("F", "G"))
    p.add_argument("--pair2", nargs=2, metavar=("F", "G"))
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=DEFAULT_BOUNDARY_GRID)
    p.add_argument("--x-candidates", help="comma-separated exact rationals")
    p.add_argument("--n", type=int, default=2, help="triple index for the counterexample task")
    p.add_argument("--out", help="write the result document here instead of stdout")
    return p


def main(argv=None) -> int:
    started = time.perf_counter()
    out_path = None
    task = None
    try:
        args = _build_parser().parse_args(argv)
        out_path = args.out
        problem = _load_problem(args)
        task = problem["task"]
        doc = run_problem(problem)
        code = EXIT_OK
    except BudgetExhausted as exc:
        doc, code = _error_doc(task, exc), EXIT_BUDGET
    except (ParseError, SchemaError, NonUnitDenominator) as exc:
        doc, code = _error_doc(task, exc), EXIT_PARSE
    except DiscStabError as exc:
        doc, code = _error_doc(task, exc), EXIT_PRECONDITION
    _emit(doc, out_path)
    print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return code


def _emit(doc: dict, out_path: str | None):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error_doc(task, exc: Exception) -> dict:
    return {
        "task": task,
        "status": "error",
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }


# -- problem construction and validation ------------------------------------------------


_OPTION_KEYS = {"max_degree", "budget", "seed", "grid", "x_candidates", "n"}
_PAIR_COUNT = {"corona": 1, "bezout": 1, "sign-linked": 2, "stabilize": 2, "total-reduce": 1, "counterexample": 0}


def _load_problem(args) -> dict:
    if args.file:
        if args.pair1 or args.pair2:
            raise SchemaError("--file excludes --pair1/--pair2")
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise SchemaError(f"cannot read problem file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SchemaError(f"problem file is not valid JSON: {exc}") from exc
        return validate_problem(raw)
    pairs = []
    if args.pair1:
        pairs.append(list(args.pair1))
    if args.pair2:
        pairs.append(list(args.pair2))
    options = {
        "max_degree": args.max_degree,
        "budget": args.budget,
        "seed": args.seed,
        "grid": args.grid,
        "n": args.n,
    }
    if args.x_candidates:
        options["x_candidates"] = [s.strip() for s in args.x_candidates.split(",") if s.strip()]
    return validate_problem({"task": args.task, "pairs": pairs, "options": options})


def validate_problem(raw) -> dict:
    """Schema check for a problem document; raises SchemaError with the reason."""
    if not isinstance(raw, dict):
        raise SchemaError("problem must be a JSON object")
    unknown = set(raw) - {"task", "pairs", "options"}
    if unknown:
        raise SchemaError(f"unknown problem keys: {sorted(unknown)}")
    task = raw.get("task")
    if task not in TASKS:
        raise SchemaError(f"task must be one of {TASKS}")
    pairs = raw.get("pairs", [])
    if not isinstance(pairs, list) or any(
        not (isinstance(p, list) and len(p) == 2 and all(isinstance(s, str) for s in p))
        for p in pairs
    ):
        raise SchemaError("pairs must be a list of [F, G] expression-string pairs")
    need = _PAIR_COUNT[task]
    if len(pairs) != need:
        raise SchemaError(f"task {task!r} needs exactly {need} pair(s), got {len(pairs)}")
    options = raw.get("options", {})
    if not isinstance(options, dict):
        raise SchemaError("options must be an object")
    unknown = set(options) - _OPTION_KEYS
    if unknown:
        raise SchemaError(f"unknown option keys: {sorted(unknown)}")
    out = {
        "max_degree": 6,
        "budget": 20000,
        "seed": 0,
        "grid": DEFAULT_BOUNDARY_GRID,
        "n": 2,
        "x_candidates": None,
    }
    for key in ("max_degree", "budget", "seed", "grid", "n"):
        if key in options:
            v = options[key]
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"option {key} must be an integer")
            out[key] = v
    if out["max_degree"] < 0 or out["budget"] <= 0 or out["grid"] < 16 or out["n"] < 1:
        raise SchemaError("option out of range")
    if "x_candidates" in options:
        xs = options["x_candidates"]
        if not isinstance(xs, list) or not all(isinstance(s, str) for s in xs):
            raise SchemaError("x_candidates must be a list of exact rational strings")
        try:
            [Fraction(s) for s in xs]
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational in x_candidates: {exc}") from exc
        out["x_candidates"] = list(xs)
    return {"task": task, "pairs": pairs, "options": out}


# -- task dispatch --------------------------------------------------------------------


def run_problem(problem: dict) -> dict:
    """Execute a validated problem and build its result document."""
    task = problem["task"]
    opts = problem["options"]
    pairs = [[parse_element(s) for s in pr] for pr in problem["pairs"]]
    doc = {
        "task": task,
        "status": "ok",
        "inputs": {"pairs": problem["pairs"], "options": _echo_options(opts)},
    }
    search = SearchOptions(
        max_degree=opts["max_degree"], budget=opts["budget"], seed=opts["seed"]
    )
    if task == "corona":
        doc.update(_run_corona(pairs[0], opts))
    elif task == "bezout":
        doc.update(_run_bezout(pairs[0]))
    elif task == "sign-linked":
        doc.update(_run_sign_linked(pairs[0], pairs[1]))
    elif task == "stabilize":
        doc.update(_run_stabilize(pairs[0], pairs[1], search))
    elif task == "total-reduce":
        xs = opts["x_candidates"]
        doc.update(_run_total_reduce(pairs[0], xs, search))
    else:
        doc.update(_run_counterexample(opts, search))
    return doc


def _echo_options(opts: dict) -> dict:
    return {k: opts[k] for k in sorted(opts)}


def _run_corona(pair, opts) -> dict:
    verdict = is_invertible_pair(pair[0], pair[1], radii=DELTA_GRID_RADII, angles=max(opts["grid"] // 8, 64))
    if isinstance(verdict, CoronaCertificate):
        return {
            "verdict": "invertible",
            "delta_lower": _ffmt(verdict.delta_lower),
            "witness_kind": verdict.witness_kind.value,
        }
    return {
        "verdict": "not-invertible",
        "reason": verdict.reason,
        "common_root": _cfmt(verdict.common_root),
    }


def _run_bezout(pair) -> dict:
    sol = solve_bezout(pair[0], pair[1])
    return {
        "alpha": print_element(sol.alpha),
        "beta": print_element(sol.beta),
        "identity_exact": sol.exact,
    }


def _sign_report_doc(report: SignReport) -> dict:
    out = {
        "verdict": report.verdict.value,
        "determinant": print_element(report.determinant),
        "points": [
            {
                "x": _ffmt(pt.x),
                "interval": [str(pt.lo), str(pt.hi)],
                "multiplier": _ffmt(pt.multiplier),
                "multiplier_error": _ffmt(pt.multiplier_error),
                "sign": pt.sign,
                "multiplicity": pt.multiplicity,
                "source": pt.source.value,
            }
            for pt in report.points
        ],
    }
    if report.proportional_multiplier is not None:
        out["proportional_multiplier"] = print_element(report.proportional_multiplier)
    return out


def _run_sign_linked(pair1, pair2) -> dict:
    return _sign_report_doc(is_sign_linked(pair1, pair2))


def _run_stabilize(pair1, pair2, search: SearchOptions) -> dict:
    r = simultaneous_stabilize(pair1, pair2, search)
    return {
        "alpha": print_element(r.alpha),
        "beta": print_element(r.beta),
        "gain": print_element(r.gain),
        "unit_certificates": [_cert_doc(c) for c in r.unit_certs],
    }


def _run_total_reduce(pair, xs, search: SearchOptions) -> dict:
    candidates = [Fraction(s) for s in xs] if xs else None
    r = total_reduce(pair[0], pair[1], candidates, search)
    return {
        "coeff_f": print_element(r.coeff_f),
        "coeff_g": print_element(r.coeff_g),
        "norm_bound": str(r.norm_bound),
        "avoided_value": str(r.avoided_value),
        "ratio": str(r.ratio),
        "base_coeff_f": print_element(r.base_coeff_f),
        "base_coeff_g": print_element(r.base_coeff_g),
        "unit_certificates": [_cert_doc(c) for c in r.unit_certs],
    }


def _run_counterexample(opts, search: SearchOptions) -> dict:
    t = make_triple(opts["n"])
    rep = falsify(t, search)
    return {
        "n": t.n,
        "pairwise": [
            {"pairs": label, **_sign_report_doc(r)}
            for label, r in zip(["1-2", "1-3", "2-3"], t.sign_reports)
        ],
        "falsify": {
            "verdict": rep.verdict.value,
            "best_margin": _ffmt(rep.best_margin),
            "best_gain": format_poly(rep.best_gain),
            "budget_used": rep.budget_used,
        },
    }


def _cert_doc(c: UnitCertificate | NotUnit) -> dict:
    if isinstance(c, NotUnit):
        return {
            "verdict": "not-unit",
            "reason": c.reason,
            "witness_root": _cfmt(c.witness_root),
            "interior_zero_count": c.interior_zero_count,
        }
    return {
        "verdict": "unit",
        "method": c.method.value,
        "min_root_modulus": _ffmt(c.min_root_modulus),
        "interior_zero_count": c.interior_zero_count,
        "boundary_min_modulus_lower": _ffmt(c.boundary_min_modulus_lower),
        "margin": _ffmt(c.margin),
    }


def _ffmt(x: float) -> str:
    if x is None:
        return "none"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def _cfmt(z: complex | None):
    if z is None:
        return None
    return [_ffmt(z.real), _ffmt(z.imag)]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
