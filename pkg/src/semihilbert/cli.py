"""Command line interface.

Subcommands:
  check           run inequality checks on an instance file
  paper-examples  recompute the worked reference examples against stored values
  fuzz            run a randomized campaign over all checks
  tightness       per-trial slack table for one check, as CSV

Exit codes: 0 everything requested holds, 2 at least one violation or
reference mismatch, 1 input or usage error (including operators with no
A-adjoint and unmet preconditions of explicitly requested checks).

Instance files are JSON: {"a": M, "t": M, "s": M (optional)} where a matrix
M is a list of rows and each entry is either a number or an [re, im] pair.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import fuzz as fuzz_mod
from . import inequalities as ineq
from .errors import NoAdjoint, ParseError, PreconditionNotMet, SemiHilbertError
from .radius import a_crawford, a_numerical_radius
from .semispace import make_space

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)

# closed form of the averaged-path integral in the triangle-refinement
# example: int_0^1 sqrt(3 t^2 - 4 t + 2) dt
_TRIANGLE_INTEGRAL = (1.0 / 6.0 + _SQRT2 / 3.0
                      + (math.asinh(1.0 / _SQRT2) + math.asinh(_SQRT2)) / (3.0 * _SQRT3))

GOLDEN_CASES = (
    {
        "id": "radius-bounds-upper-triangular",
        "a": [[1, 0], [0, 2]],
        "t": [[1, 2], [0, 1]],
        "tol": 1e-9,
        "expected": {
            "a_operator_norm": math.sqrt(2.0 + _SQRT3),
            "a_numerical_radius": (2.0 + _SQRT2) / 2.0,
            "a_numerical_radius_of_square": 1.0 + _SQRT2,
            "power_chain_holds": True,
        },
    },
    {
        "id": "fourth-power-bounds",
        "a": [[1, -1], [-1, 2]],
        "t": [[1, 0], [1, 1]],
        "tol": 1e-8,
        "expected": {
            "a_operator_norm": 1.0 + _SQRT2,
            "a_numerical_radius": 2.0,
            "a_numerical_radius_of_square": 3.0,
            "anti_commutator_norm": 10.0,
            "crawford_square_sum": 4.0,
            "fourth_power_chain": [6.5, 16.0, 17.0],
            "fourth_power_chain_holds": True,
        },
    },
    {
        "id": "triangle-refinement",
        "a": [[1, 0], [0, 2]],
        "t": [[1, 0], [0, 0]],
        "s": [[0, 0], [1, 0]],
        "tol": 1e-7,
        "expected": {
            "a_operator_norm": 1.0,
            "norm_of_s": _SQRT2,
            "norm_of_sum": _SQRT3,
            "hh_middle": 2.0 * _TRIANGLE_INTEGRAL,
            "hh_chain_holds": True,
        },
    },
    {
        "id": "radius-noncontinuity",
        "a": [[1, 0], [0, 0]],
        "a_alt": [[2, 0], [0, 1]],
        "t": [[1, 0], [0, 2]],
        "tol": 1e-9,
        "expected": {
            "a_numerical_radius": 1.0,
            "alt_numerical_radius": 2.0,
        },
    },
    {
        "id": "unbounded-shift",
        "a": [[1, 0], [0, 0]],
        "t": [[0, 1], [1, 0]],
        "tol": 1e-9,
        "expected": {
            "a_bounded": False,
            "admits_adjoint": False,
            "a_operator_norm": "inf",
        },
    },
    {
        "id": "rank-one-selfadjoint",
        "a": [[1, 1], [1, 1]],
        "t": [[2, 2], [0, 0]],
        "tol": 1e-9,
        "expected": {
            "sharp_matrix": [[1, 1], [1, 1]],
            "t_tsharp": [[4, 4], [0, 0]],
            "tsharp_t": [[2, 2], [2, 2]],
            "is_a_selfadjoint": True,
            "is_a_normal": False,
            "compression": [[2]],
            "a_numerical_radius": 2.0,
            "a_operator_norm": 2.0,
        },
    },
)

CHAIN_CHECKS = {
    "halfnorm_bounds": (ineq.check_halfnorm_bounds, 1),
    "hh_triangle": (ineq.check_hh_triangle, 2),
    "integral_radius_bound": (ineq.check_integral_radius_bound, 1),
    "adjoint_sum_bound": (ineq.check_adjoint_sum_bound, 2),
    "real_part_bounds": (ineq.check_real_part_bounds, 1),
    "square_bounds": (ineq.check_square_bounds, 1),
    "fourth_power_bounds": (ineq.check_fourth_power_bounds, 1),
    "power_inequality": (ineq.check_power_inequality, 1),
    "reverse_power": (ineq.check_reverse_power, 1),
}

DIAG_CHECKS = {
    "triangle_equality": ineq.triangle_equality_diagnostic,
    "positive_product_equality": ineq.check_positive_product_equality,
    "max_equality": ineq.max_equality_diagnostic,
    "pythagoras": ineq.pythagoras_diagnostic,
    "radius_additivity": ineq.radius_additivity_diagnostic,
    "squares_radius_equality": ineq.squares_radius_equality,
}


# -- instance files ------------------------------------------------------------

def decode_matrix(obj, what: str = "matrix") -> np.ndarray:
    """Decode a JSON matrix: rows of numbers or [re, im] pairs."""
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{what}: expected a non-empty list of rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise ParseError(f"{what}: row {i} is not a non-empty list")
        out = []
        for entry in row:
            if isinstance(entry, bool):
                raise ParseError(f"{what}: boolean entry {entry!r}")
            if isinstance(entry, (int, float)):
                out.append(complex(entry))
            elif (isinstance(entry, list) and len(entry) == 2
                  and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                          for v in entry)):
                out.append(complex(entry[0], entry[1]))
            else:
                raise ParseError(f"{what}: entry {entry!r} is neither a number nor [re, im]")
        rows.append(out)
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"{what}: rows have different lengths")
    return np.array(rows, dtype=np.complex128)


def load_instance(path: str):
    """Read an instance file; returns (space, t, s_or_None)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    for key in ("a", "t"):
        if key not in data:
            raise ParseError(f"{path}: missing required key {key!r}")
    a = decode_matrix(data["a"], "a")
    t = decode_matrix(data["t"], "t")
    s = decode_matrix(data["s"], "s") if "s" in data else None
    space = make_space(a)
    return space, t, s


# -- check subcommand ----------------------------------------------------------

def _fmt(v: float) -> str:
    return f"{v:.10g}"


def _quantities(space, m: np.ndarray) -> dict:
    op = space.bind(m)
    out = dict(op.membership)
    out["a_operator_norm"] = op.a_operator_norm()
    w = a_numerical_radius(op)
    c = a_crawford(op)
    out["a_numerical_radius"] = w.value
    out["a_crawford"] = c.value
    return out


def _diag_inconsistent(d: ineq.EqualityDiagnostic) -> bool:
    flags = ("consistent", "agrees_with_triangle", "forward_consistent",
             "intermediate_identity_holds", "ascent_within_bound")
    return any(not d.extras[f] for f in flags if f in d.extras)


def _render_report(r: ineq.InequalityReport) -> str:
    chain = " <= ".join(f"{label}={_fmt(v)}" for label, v in r.chain)
    slack = min(r.slacks) if r.slacks else 0.0
    verdict = "HOLDS" if r.holds else "VIOLATED"
    return f"{r.name}: {verdict}  {chain}  (min slack {slack:.3e})"


def _render_diag(d: ineq.EqualityDiagnostic) -> str:
    bits = [f"lhs={_fmt(d.lhs)}", f"rhs={_fmt(d.rhs)}", f"gap={d.gap:.3e}",
            f"equal={'yes' if d.equal else 'no'}"]
    for key, val in d.extras.items():
        if isinstance(val, bool):
            bits.append(f"{key}={'yes' if val else 'no'}")
    tag = "INCONSISTENT" if _diag_inconsistent(d) else "OK"
    return f"{d.name}: {tag}  " + ", ".join(bits)


def _cmd_check(args) -> int:
    space, t, s = load_instance(args.instance)
    explicit = args.check is not None
    if explicit:
        if args.check not in CHAIN_CHECKS and args.check not in DIAG_CHECKS:
            print(f"unknown check {args.check!r}", file=sys.stderr)
            return 1
        names = [args.check]
    else:
        names = [n for n, (_, arity) in CHAIN_CHECKS.items()
                 if arity == 1 or s is not None]
        if s is not None:
            names += list(DIAG_CHECKS)

    quantities = {"t": _quantities(space, t)}
    if s is not None:
        quantities["s"] = _quantities(space, s)

    lines, results = [], []
    violated = errored = False
    for name in names:
        try:
            if name in CHAIN_CHECKS:
                fn, arity = CHAIN_CHECKS[name]
                if arity == 2 and s is None:
                    raise PreconditionNotMet("needs a second operator s")
                rep = (fn(space, t, s, check_tol=args.check_tol) if arity == 2
                       else fn(space, t, check_tol=args.check_tol))
                violated |= not rep.holds
                lines.append(_render_report(rep))
                results.append(rep.to_dict())
            else:
                fn = DIAG_CHECKS[name]
                if s is None:
                    raise PreconditionNotMet("needs a second operator s")
                d = fn(space, t, s, eq_tol=args.eq_tol)
                violated |= _diag_inconsistent(d)
                lines.append(_render_diag(d))
                results.append(d.to_dict())
        except (PreconditionNotMet, NoAdjoint) as exc:
            if explicit or isinstance(exc, NoAdjoint):
                errored = True
                lines.append(f"{name}: ERROR  {exc}")
                results.append({"name": name, "error": str(exc)})
            else:
                lines.append(f"{name}: SKIPPED  {exc}")
                results.append({"name": name, "skipped": str(exc)})

    status = 2 if violated else (1 if errored else 0)
    if args.json:
        print(json.dumps({"instance": args.instance, "quantities": quantities,
                          "checks": results, "status": status},
                         sort_keys=True, default=str))
    else:
        for part, q in quantities.items():
            flags = ", ".join(f"{k}={v}" for k, v in q.items() if isinstance(v, bool))
            print(f"{part}: norm_A={_fmt(q['a_operator_norm'])} "
                  f"w_A={_fmt(q['a_numerical_radius'])} c_A={_fmt(q['a_crawford'])} "
                  f"({flags})")
        for line in lines:
            print(line)
    return status


# -- paper-examples subcommand ---------------------------------------------------

def _golden_quantity(case, key, space, op):
    t = op.t
    if key == "a_operator_norm":
        return op.a_operator_norm()
    if key == "a_numerical_radius":
        return a_numerical_radius(op).value
    if key == "a_numerical_radius_of_square":
        return a_numerical_radius(space.bind(t @ t)).value
    if key == "anti_commutator_norm":
        sh = op.sharp()
        return space.bind(t @ sh + sh @ t).a_operator_norm()
    if key == "crawford_square_sum":
        sh = op.sharp()
        m = t @ t + sh @ sh
        return a_crawford(space.bind(m @ m)).value
    if key == "fourth_power_chain":
        return [v for _, v in ineq.check_fourth_power_bounds(space, t).chain]
    if key == "fourth_power_chain_holds":
        return ineq.check_fourth_power_bounds(space, t).holds
    if key == "power_chain_holds":
        return ineq.check_power_inequality(space, t).holds
    if key == "norm_of_s":
        return space.bind(decode_matrix(case["s"], "s")).a_operator_norm()
    if key == "norm_of_sum":
        return space.bind(t + decode_matrix(case["s"], "s")).a_operator_norm()
    if key == "hh_middle":
        rep = ineq.check_hh_triangle(space, t, decode_matrix(case["s"], "s"))
        return rep.chain[1][1]
    if key == "hh_chain_holds":
        return ineq.check_hh_triangle(space, t, decode_matrix(case["s"], "s")).holds
    if key == "alt_numerical_radius":
        alt = make_space(decode_matrix(case["a_alt"], "a_alt"))
        return a_numerical_radius(alt.bind(t)).value
    if key == "a_bounded":
        return op.a_bounded
    if key == "admits_adjoint":
        return op.admits_adjoint
    if key == "sharp_matrix":
        return op.sharp()
    if key == "t_tsharp":
        return t @ op.sharp()
    if key == "tsharp_t":
        return op.sharp() @ t
    if key == "is_a_selfadjoint":
        return op.is_a_selfadjoint()
    if key == "is_a_normal":
        return op.is_a_normal()
    if key == "compression":
        return op.compress()
    raise KeyError(f"unknown golden quantity {key!r}")


def _golden_match(want, got, tol) -> bool:
    if isinstance(want, bool):
        return isinstance(got, (bool, np.bool_)) and bool(got) == want
    if want == "inf":
        return isinstance(got, float) and math.isinf(got)
    if isinstance(want, (int, float)):
        return abs(float(got) - float(want)) <= tol * max(1.0, abs(float(want)))
    return np.allclose(np.asarray(got, dtype=np.complex128),
                       np.asarray(want, dtype=np.complex128), rtol=tol, atol=tol)


def evaluate_golden_case(case) -> list[str]:
    """Recompute every stored quantity; returns mismatch descriptions."""
    space = make_space(decode_matrix(case["a"], "a"))
    op = space.bind(decode_matrix(case["t"], "t"))
    failures = []
    for key, want in case["expected"].items():
        try:
            got = _golden_quantity(case, key, space, op)
        except SemiHilbertError as exc:
            failures.append(f"{key}: raised {type(exc).__name__}: {exc}")
            continue
        if not _golden_match(want, got, case["tol"]):
            failures.append(f"{key}: expected {want!r}, got {got!r}")
    return failures


def _cmd_paper_examples(args) -> int:
    any_fail = False
    out = []
    for case in GOLDEN_CASES:
        if args.only and args.only not in case["id"]:
            continue
        failures = evaluate_golden_case(case)
        out.append({"id": case["id"], "failures": failures})
        if failures:
            any_fail = True
            print(f"FAIL {case['id']}")
            for f in failures:
                print(f"  {f}")
        else:
            print(f"PASS {case['id']} ({len(case['expected'])} quantities)")
    if not out:
        print(f"no example id contains {args.only!r}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(out, sort_keys=True))
    return 2 if any_fail else 0


# -- fuzz subcommand --------------------------------------------------------------

def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise ParseError(f"bad dims {text!r}: {exc}") from exc
    if not dims or any(d < 1 for d in dims):
        raise ParseError(f"bad dims {text!r}: need positive integers")
    return dims


def _cmd_fuzz(args) -> int:
    checks = tuple(args.checks.split(",")) if args.checks else fuzz_mod.CHECK_ORDER
    for name in checks:
        if name not in fuzz_mod.CHECKS:
            print(f"unknown check {name!r}", file=sys.stderr)
            return 1
    config = fuzz_mod.CampaignConfig(seed=args.seed, dims=_parse_dims(args.dims),
                                     trials=args.trials, checks=checks)
    report = fuzz_mod.run_campaign(config)
    for name in checks:
        r = report.results[name]
        print(f"{name}: trials={r['trials']} violations={len(r['violations'])}"
              f" min_slack={r.get('min_slack', 0.0):.3e}")
    print(f"total violations: {report.total_violations}"
          f"  elapsed: {report.elapsed_seconds:.1f}s")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json(include_timing=not args.no_timing))
            fh.write("\n")
    return 2 if report.total_violations else 0


# -- tightness subcommand ----------------------------------------------------------

def _cmd_tightness(args) -> int:
    if args.check not in fuzz_mod.CHECKS:
        print(f"unknown check {args.check!r}", file=sys.stderr)
        return 1
    dims = _parse_dims(args.dims)
    is_chain = fuzz_mod.CHECKS[args.check].kind == "chain"
    rows, header = [], None
    any_violation = False
    for trial in range(args.trials):
        ok, slack, payload, meta = fuzz_mod.run_single_trial(
            args.check, args.seed, trial, dims)
        any_violation |= not ok
        if is_chain:
            if header is None:
                header = ["trial", "dim", "rank", "ok", "min_slack"]
                header += [label for label, _ in payload["chain"]]
            rows.append([trial, meta["dim"], meta["rank"], int(ok), slack]
                        + [v for _, v in payload["chain"]])
        else:
            if header is None:
                header = ["trial", "dim", "rank", "ok", "eq_slack", "lhs", "rhs", "gap"]
            rows.append([trial, meta["dim"], meta["rank"], int(ok), slack,
                         payload["lhs"], payload["rhs"], payload["gap"]])

    fh = sys.stdout if args.csv == "-" else open(args.csv, "w", newline="")
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 2 if any_violation else 0


# -- entry ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semihilbert",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run checks on an instance file")
    p_check.add_argument("instance", help="JSON instance file")
    p_check.add_argument("--check", help="run only this check")
    p_check.add_argument("--check-tol", type=float, default=ineq.CHECK_TOL)
    p_check.add_argument("--eq-tol", type=float, default=ineq.EQ_TOL)
    p_check.add_argument("--json", action="store_true", help="JSON output")
    p_check.set_defaults(fn=_cmd_check)

    p_ex = sub.add_parser("paper-examples",
                          help="recompute the worked reference examples")
    p_ex.add_argument("--only", help="run only ids containing this substring")
    p_ex.add_argument("--json", action="store_true")
    p_ex.set_defaults(fn=_cmd_paper_examples)

    p_fuzz = sub.add_parser("fuzz", help="randomized campaign over all checks")
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--dims", default="2,3,4,5,8")
    p_fuzz.add_argument("--trials", type=int, default=200)
    p_fuzz.add_argument("--checks", help="comma-separated subset of checks")
    p_fuzz.add_argument("--out", help="write the JSON report here")
    p_fuzz.add_argument("--no-timing", action="store_true",
                        help="omit timing from the JSON report")
    p_fuzz.set_defaults(fn=_cmd_fuzz)

    p_t = sub.add_parser("tightness", help="per-trial slack table for one check")
    p_t.add_argument("--check", required=True)
    p_t.add_argument("--seed", type=int, default=0)
    p_t.add_argument("--dims", default="2,3,4,5,8")
    p_t.add_argument("--trials", type=int, default=200)
    p_t.add_argument("--csv", default="-", help="output file, - for stdout")
    p_t.set_defaults(fn=_cmd_tightness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SemiHilbertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
