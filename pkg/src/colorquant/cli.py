"""Command line front end: validate, quantize, cartan, associator.

Every command prints one JSON report ``{pipeline, status, checks, timings}``
and exits 0 on pass, 1 on a failed check and 2 on an input or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from typing import Any

from .cartan import (
    MAX_DEGREE_BOUND,
    CartanError,
    apply_bicharacter_twist_to_presentation,
    build_classical_presentation,
    build_dj_presentation,
    check_delta_respects_relations,
    check_presentation,
    check_printed_variants,
    compare_with_classical,
    dj_coproduct_on_generators,
    lie_algebra_from_presentation,
    primitive_coproduct,
)
from .colorlie import ColorLieBialgebra, check_color_bialgebra, check_color_lie, check_manin, classify_r, natural_pairing
from .grading import validate_commutation_factor
from .quantize import (
    associator_ansatz,
    check_classical_limit,
    check_quasitriangular,
    check_triangular,
    quantize,
    quantize_coboundary,
    solve_associator_order2,
    tn_substitute,
    twisted_associator,
)
from .report import Violation
from .scalars import TruncSeries
from .specfile import AlgebraSpec, SpecError, load_spec
from .tensoralg import DeformedTensor

__all__ = ["main", "build_parser"]

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
MAX_ORDER = 3


class _Run:
    """Accumulates checks and stage timings for one report."""

    def __init__(self, pipeline: str):
        self.pipeline = pipeline
        self.checks: list[dict] = []
        self.timings: dict[str, float] = {}
        self.extra: dict[str, Any] = {}
        self.failed = False

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - t0, 6)

    def record(self, name: str, violations: list[Violation], info: dict | None = None) -> None:
        """One "pass" entry, or one "fail" entry per violation."""
        if not violations:
            entry = {"name": name, "status": "pass", "location": []}
            if info:
                entry.update(info)
            self.checks.append(entry)
            return
        self.failed = True
        for v in violations:
            payload = v.to_json()
            entry = {"name": f"{name}.{payload.pop('check')}", "status": "fail"}
            entry.update(payload)
            self.checks.append(entry)

    def note(self, name: str, info: dict) -> None:
        """Informational entry that never fails the run."""
        self.checks.append({"name": name, "status": "info", "location": [], **info})

    def report(self) -> dict:
        out = {
            "pipeline": self.pipeline,
            "status": "fail" if self.failed else "pass",
            "checks": self.checks,
            "timings": self.timings,
        }
        out.update(self.extra)
        return out


def _error_report(pipeline: str, err: SpecError) -> dict:
    return {"pipeline": pipeline, "status": "error", "error": err.to_json(), "checks": [], "timings": {}}


# -- validate -------------------------------------------------------------------------------


def _validate_structures(spec: AlgebraSpec, run: _Run) -> None:
    if spec.eps is not None:
        with run.stage("commutation_factor"):
            run.record("commutation_factor", validate_commutation_factor(spec.eps))
    if spec.algebra is not None:
        with run.stage("color_lie"):
            run.record("color_lie", check_color_lie(spec.algebra))
    b = spec.bialgebra
    if b is not None:
        with run.stage("color_bialgebra"):
            run.record("color_bialgebra", check_color_bialgebra(b))
        if b.rmatrix is not None:
            with run.stage("classify_r"):
                cls = classify_r(b)
                bad = list(cls.violations)
                if cls.kind == "not_qt" and not bad:
                    bad.append(Violation("not_quasitriangular", ()))
                run.record("classify_r", bad, {"kind": cls.kind})
                run.extra["r_kind"] = cls.kind
    if spec.cartan is not None:
        with run.stage("cartan"):
            try:
                p = build_classical_presentation(spec.cartan, spec.reading)
            except CartanError as exc:
                raise SpecError("/cartan", str(exc)) from None
            run.record("cartan_presentation", check_presentation(p, 3))


def cmd_validate(spec: AlgebraSpec, args) -> dict:
    run = _Run("validate")
    _validate_structures(spec, run)
    return run.report()


# -- quantize -------------------------------------------------------------------------------


def _order(spec: AlgebraSpec, args) -> int:
    if args.order is not None:
        N, ptr = args.order, "--order"
    else:
        N, ptr = spec.option("lambda_order", 2), "/options/lambda_order"
    if not 1 <= N <= MAX_ORDER:
        raise SpecError(ptr, f"truncation order {N} is not supported (1..{MAX_ORDER})")
    return N


def _word_bound(spec: AlgebraSpec, args) -> int:
    return args.word_bound if args.word_bound is not None else spec.option("word_bound", 2)


def _hopf_artifacts(q, names) -> dict:
    return {
        "J": q.J.to_json(),
        "R": q.R.to_json(),
        "delta": {names[i]: q.delta_word((i,)).to_json() for i in range(len(names))},
    }


def cmd_quantize(spec: AlgebraSpec, args) -> dict:
    run = _Run("quantize")
    if spec.algebra is None:
        raise SpecError("/basis", "quantize needs an algebra")
    N = _order(spec, args)
    L = _word_bound(spec, args)
    _validate_structures(spec, run)
    if run.failed:
        out = run.report()
        out["aborted"] = "upstream validation failed"
        return out
    b = spec.bialgebra or ColorLieBialgebra(spec.algebra)
    assoc = None
    if N == 3:
        with run.stage("associator"):
            assoc = solve_associator_order2()
    with run.stage("double_twist"):
        qd = quantize(b, N, assoc)
    d = qd.double
    with run.stage("double_checks"):
        run.record("manin", check_manin(d.algebra, natural_pairing(d), (d.double_data.g_indices, d.double_data.dual_indices)))
        if N >= 2:
            half_lam = TruncSeries.lam(2, 1, Fraction(1, 2))
            expect = DeformedTensor.unit(d.basis, 2, 2) + d.double_data.r.at_order(2).scale(half_lam)
            res = qd.J.at_order(2) - expect
            run.record("J_limit", [Violation("J_limit", (), res)] if res else [])
        else:
            res = qd.J - DeformedTensor.unit(d.basis, 2, 1)
            run.record("J_limit", [Violation("J_limit", (), res)] if res else [])
        run.record("quasitriangular", check_quasitriangular(qd.hopf, L))
        if N >= 2:
            run.record("classical_limit", check_classical_limit(qd.hopf, d))
        if N == 3:
            phi = tn_substitute(associator_ansatz(assoc.c), d.double_data.omega, qd.hopf.uea, 3)
            res = twisted_associator(qd.hopf, phi) - DeformedTensor.unit(d.basis, 3, 3)
            run.record("associator_trivialized", [Violation("twisted_associator", (), res)] if res else [])
    artifacts = {"double": _hopf_artifacts(qd.hopf, d.basis.names)}
    kind = run.extra.get("r_kind")
    if kind in ("quasitriangular", "triangular"):
        with run.stage("coboundary_twist"):
            qc = quantize_coboundary(b, N, assoc)
        with run.stage("coboundary_checks"):
            run.record("pushforward", qc.push.violations)
            run.record("coboundary_quasitriangular", check_quasitriangular(qc.hopf, L))
            if N >= 2:
                run.record("coboundary_classical_limit", check_classical_limit(qc.hopf, b))
            if kind == "triangular":
                run.record("triangular", check_triangular(qc.hopf))
        artifacts["coboundary"] = _hopf_artifacts(qc.hopf, b.basis.names)
    run.extra["order"] = N
    run.extra["artifacts"] = artifacts
    return run.report()


# -- cartan ---------------------------------------------------------------------------------


def _cartan_checks(spec: AlgebraSpec, args, reading: str, run: _Run, prefix: str) -> dict:
    cd = spec.cartan
    flavor = args.flavor
    N = _order(spec, args) if flavor == "dj" else 1
    D = args.degree_bound if args.degree_bound is not None else spec.option("degree_bound")
    try:
        classical = build_classical_presentation(cd, reading)
        p = classical if flavor == "classical" else build_dj_presentation(cd, N, reading)
    except CartanError as exc:
        raise SpecError("/cartan", str(exc)) from None
    longest = max((len(w) for r in p.relations for (w,), _ in r.element.items()), default=1)
    if D is None:
        D = min(longest + 1, MAX_DEGREE_BOUND)
    if D > MAX_DEGREE_BOUND:
        raise SpecError("--degree-bound" if args.degree_bound is not None else "/options/degree_bound",
                        f"degree bound {D} exceeds the cap {MAX_DEGREE_BOUND}")
    with run.stage(prefix + "presentation"):
        run.record(prefix + "presentation", check_presentation(p, min(D, 3)))
    if flavor == "dj":
        with run.stage(prefix + "classical_limit"):
            statuses, bad = compare_with_classical(p, classical, D)
            run.record(prefix + "classical_limit", bad, {"relations": statuses})
    if p.printed:
        run.note(prefix + "printed_variants", {"relations": check_printed_variants(p, classical, D)})
    if args.check_delta:
        if D <= longest:
            raise SpecError("--degree-bound", f"degree bound must exceed the longest relation ({longest})")
        delta = primitive_coproduct(p) if flavor == "classical" else dj_coproduct_on_generators(cd, N)
        with run.stage(prefix + "delta"):
            res = check_delta_respects_relations(p, delta, D, N)
            run.record(prefix + "delta", res.violations, {"relations": res.statuses})
        if flavor == "dj":
            alt = check_delta_respects_relations(p, dj_coproduct_on_generators(cd, N, "printed"), D, N)
            run.note(prefix + "delta_printed_f", {"relations": alt.statuses})
    out = {"presentation": p.to_json()}
    if spec.eps_consts is not None:
        tw = apply_bicharacter_twist_to_presentation(p, spec.eps_consts)
        out["twisted_presentation"] = tw.to_json()
        if flavor == "classical" and cd.rank == 1:
            with run.stage(prefix + "twisted_color_lie"):
                run.record(prefix + "twisted_color_lie", check_color_lie(lie_algebra_from_presentation(tw)))
        back = apply_bicharacter_twist_to_presentation(tw, [[1 / x for x in row] for row in spec.eps_consts])
        same = all(a.element == b.element for a, b in zip(back.relations, p.relations)) and back.basis.eps == p.basis.eps
        run.record(prefix + "twist_roundtrip", [] if same else [Violation("twist_roundtrip", ())])
    return out


def cmd_cartan(spec: AlgebraSpec, args) -> dict:
    run = _Run("cartan")
    if spec.cartan is None:
        raise SpecError("/cartan", "missing required section 'cartan'")
    readings = ["standard", "literal"] if args.reading == "both" else [args.reading or spec.reading]
    artifacts = {}
    summary = {}
    for reading in readings:
        prefix = "" if len(readings) == 1 else reading + "."
        before = len(run.checks)
        artifacts[reading] = _cartan_checks(spec, args, reading, run, prefix)
        summary[reading] = all(c["status"] != "fail" for c in run.checks[before:])
    if len(readings) > 1:
        run.extra["readings"] = {k: "pass" if v else "fail" for k, v in summary.items()}
        run.failed = not summary["standard"]
    run.extra["flavor"] = args.flavor
    run.extra["artifacts"] = artifacts
    return run.report()


# -- associator -----------------------------------------------------------------------------


def cmd_associator(spec: AlgebraSpec | None, args) -> dict:
    run = _Run("associator")
    with run.stage("solve"):
        sol = solve_associator_order2()
    data = sol.to_json()
    run.record("unique", [] if sol.unique else [Violation("not_unique", ())])
    run.record("pentagon", [Violation("pentagon", (), str(data["pentagon_residual"]))] if sol.pentagon_residual else [])
    for name, res in sol.hexagon_residuals.items():
        run.record(name, [Violation(name, (), str(data["hexagon_residuals"][name]))] if res else [])
    trivial_fails = any(bool(v) for v in sol.trivial_hexagon_residuals.values())
    run.record("nontrivial", [] if trivial_fails else [Violation("c0_satisfies_hexagons", ())])
    run.extra["artifacts"] = data
    return run.report()


# -- entry point ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colorquant", description="Color Lie bialgebras and their truncated quantizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_file=True):
        if needs_file:
            p.add_argument("file", help="JSON algebra specification")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON output (default)")
        fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON output")
        p.set_defaults(pretty=False)

    p = sub.add_parser("validate", help="check the declared structures")
    common(p)
    p = sub.add_parser("quantize", help="run the twist pipeline to a given lam order")
    common(p)
    p.add_argument("--order", type=int, help=f"truncation order N (1..{MAX_ORDER})")
    p.add_argument("--word-bound", type=int, help="maximal PBW word length for pointwise axiom checks")
    p = sub.add_parser("cartan", help="Cartan-type presentations")
    common(p)
    p.add_argument("--flavor", choices=["classical", "dj"], default="classical")
    p.add_argument("--order", type=int, help="truncation order for the dj flavor")
    p.add_argument("--degree-bound", type=int, help=f"word length bound for ideal membership (<= {MAX_DEGREE_BOUND})")
    p.add_argument("--check-delta", action="store_true", help="verify the coproduct respects the relations")
    p.add_argument("--reading", choices=["standard", "literal", "both"], help="e-f relation reading")
    p = sub.add_parser("associator", help="solve for the order-2 associator")
    common(p, needs_file=False)
    p.add_argument("file", nargs="?", help="ignored; accepted for symmetry")
    return parser


COMMANDS = {"validate": cmd_validate, "quantize": cmd_quantize, "cartan": cmd_cartan, "associator": cmd_associator}


def run_command(argv: list[str] | None = None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    try:
        spec = None
        if args.command != "associator":
            spec = load_spec(args.file)
        report = COMMANDS[args.command](spec, args)
    except SpecError as err:
        return EXIT_INPUT, _error_report(args.command, err)
    return (EXIT_FAIL if report["status"] == "fail" else EXIT_PASS), report


def main(argv: list[str] | None = None) -> int:
    code, report = run_command(argv)
    args_pretty = "--pretty" in (argv if argv is not None else sys.argv[1:])
    text = json.dumps(report, indent=2 if args_pretty else None, sort_keys=True, ensure_ascii=False)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
