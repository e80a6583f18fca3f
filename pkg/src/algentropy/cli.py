"""Batch command-line surface.

Subcommands: entropy, mahler, polygon, trajectory, classify, verify.
Documents are UTF-8 JSON: exact integers (counts, valuations, clearing
integers, coefficients) are serialized as decimal strings since they
overflow doubles quickly; floats are serialized at full double precision;
polynomial coefficients are ascending by degree everywhere.

Exit codes: 0 success, 2 input error, 3 certification failure (partial
report emitted), 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .entropy import algebraic_entropy
from .linalg import RationalMatrix
from .mahler import is_cyclotomic_product, mahler_measure
from .padic import newton_polygon, place_contribution, relevant_primes, verify_place_identity
from .ratpoly import IntPoly, parse_rational
from .roots import CertificationError
from .trajectory import (
    DEFAULT_BUDGET,
    admissible_m,
    classify_growth,
    trajectory_counts,
)
from .verify import SUITES, run_suite


class InputError(ValueError):
    """Bad input document or flags (exit code 2)."""


@dataclass
class InputSpec:
    matrix: RationalMatrix | None = None
    poly: IntPoly | None = None
    m: int = 1
    n_max: int = 10
    budget: int = DEFAULT_BUDGET
    precision: int = 128
    tolerance: float = 1e-12
    seed: int = 0
    partitions: int = 1


def _parse_entry(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"floating-point entry {value!r}: use exact strings like \"a/b\"")
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational entry {value!r}: {exc}") from exc


def _parse_int_coeff(value) -> int:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"polynomial coefficients must be integers, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError as exc:
            raise InputError(f"bad integer coefficient {value!r}") from exc
    raise InputError(f"bad integer coefficient {value!r}")


def parse_spec(doc: dict) -> InputSpec:
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    has_matrix = "matrix" in doc
    has_poly = "poly" in doc
    if has_matrix == has_poly:
        raise InputError("exactly one of 'matrix' or 'poly' must be present")
    spec = InputSpec()
    if has_matrix:
        rows = doc["matrix"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InputError("'matrix' must be an array of rows")
        try:
            spec.matrix = RationalMatrix([[_parse_entry(e) for e in row] for row in rows])
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        coeffs = doc["poly"]
        if not isinstance(coeffs, list) or not coeffs:
            raise InputError("'poly' must be a non-empty coefficient array")
        parsed = [_parse_int_coeff(c) for c in coeffs]
        if parsed[-1] == 0:
            raise InputError("leading (last) polynomial coefficient must be nonzero")
        spec.poly = IntPoly(parsed)
    for field, caster in (
        ("m", int),
        ("n_max", int),
        ("budget", int),
        ("precision", int),
        ("tolerance", float),
        ("seed", int),
        ("partitions", int),
    ):
        if field in doc:
            try:
                setattr(spec, field, caster(doc[field]))
            except (TypeError, ValueError) as exc:
                raise InputError(f"bad option {field!r}: {doc[field]!r}") from exc
    return spec


def serialize_spec(spec: InputSpec) -> dict:
    doc: dict = {}
    if spec.matrix is not None:
        doc["matrix"] = [[str(e) for e in row] for row in spec.matrix.rows]
    if spec.poly is not None:
        doc["poly"] = [str(c) for c in spec.poly.coeffs]
    doc.update(
        m=spec.m,
        n_max=spec.n_max,
        budget=spec.budget,
        precision=spec.precision,
        tolerance=spec.tolerance,
        seed=spec.seed,
        partitions=spec.partitions,
    )
    return doc


def _spec_from_args(args, need: str) -> InputSpec:
    doc: dict = {}
    if args.input:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read input file: {exc}") from exc
        if not isinstance(doc, dict):
            raise InputError("input document must be a JSON object")
    if args.matrix is not None:
        doc.pop("poly", None)
        try:
            doc["matrix"] = json.loads(args.matrix)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad --matrix JSON: {exc}") from exc
    if args.poly is not None:
        doc.pop("matrix", None)
        try:
            doc["poly"] = json.loads(args.poly)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad --poly JSON: {exc}") from exc
    for field, flag in (
        ("m", args.m),
        ("n_max", args.max_n),
        ("budget", args.budget),
        ("precision", args.precision),
        ("tolerance", args.tolerance),
        ("seed", args.seed),
        ("partitions", args.partitions),
    ):
        if flag is not None:
            doc[field] = flag
    spec = parse_spec(doc)
    if need == "matrix" and spec.matrix is None:
        raise InputError("this subcommand needs a matrix input")
    if need == "poly" and spec.poly is None:
        raise InputError("this subcommand needs a polynomial input")
    return spec


def _emit(doc: dict, pretty: bool) -> None:
    print(json.dumps(doc, indent=2 if pretty else None))


def _entropy_doc_from_matrix(spec: InputSpec) -> dict:
    report = algebraic_entropy(
        spec.matrix, tolerance=spec.tolerance, precision=spec.precision
    )
    return {
        "entropy": report.total,
        "log_s": report.log_s,
        "archimedean": report.archimedean,
        "finite_places": [
            {"p": p, "v_s": v, "contribution": c} for p, v, c in report.finite_places
        ],
        "s": str(report.s),
        "char_poly_primitive": [str(c) for c in report.char_poly_primitive.coeffs],
        "zero_entropy_exact": report.zero_entropy_exact,
        "certified": report.certified,
    }


def _entropy_doc_from_poly(spec: InputSpec) -> dict:
    poly = spec.poly.primitive_part()
    s = abs(poly.lead)
    finite = []
    for p in relevant_primes(poly):
        mass = newton_polygon(poly, p).positive_mass()
        finite.append({"p": p, "v_s": int(mass), "contribution": float(mass) * math.log(p)})
    measured = mahler_measure(poly, tolerance=spec.tolerance, precision=spec.precision)
    return {
        "entropy": measured.archimedean + sum(f["contribution"] for f in finite),
        "log_s": math.log(s),
        "archimedean": measured.archimedean,
        "finite_places": finite,
        "s": str(s),
        "char_poly_primitive": [str(c) for c in poly.coeffs],
        "zero_entropy_exact": s == 1 and is_cyclotomic_product(poly),
        "certified": measured.certified,
    }


def _cmd_entropy(args) -> int:
    spec = _spec_from_args(args, need="any")
    if spec.matrix is not None:
        doc = _entropy_doc_from_matrix(spec)
    else:
        doc = _entropy_doc_from_poly(spec)
    _emit(doc, args.pretty)
    return 0


def _cmd_mahler(args) -> int:
    spec = _spec_from_args(args, need="poly")
    measured = mahler_measure(
        spec.poly, tolerance=spec.tolerance, precision=spec.precision
    )
    doc = {
        "value": measured.value,
        "certified": measured.certified,
        "archimedean": measured.archimedean,
        "log_lead": measured.log_lead,
        "assumed_roots": measured.assumed_roots,
        "roots": [
            {
                "re": r.re,
                "im": r.im,
                "mod_lo": r.mod_lo,
                "mod_hi": r.mod_hi,
                "multiplicity": r.multiplicity,
                "on_circle_assumed": r.on_circle_assumed,
            }
            for r in measured.roots.roots
        ],
    }
    _emit(doc, args.pretty)
    return 0


def _cmd_polygon(args) -> int:
    spec = _spec_from_args(args, need="poly")
    poly = spec.poly
    content = poly.content()
    primitive = poly.primitive_part()
    identity = verify_place_identity(primitive)
    primes = []
    for p in relevant_primes(primitive):
        polygon = newton_polygon(primitive, p)
        contrib = place_contribution(polygon)
        primes.append(
            {
                "p": p,
                "points": [[i, v] for i, v in polygon.points],
                "segments": [
                    {"slope": str(s.slope), "length": s.length} for s in polygon.segments
                ],
                "contribution_exact": str(contrib.exact),
                "contribution": contrib.value,
                "v_s": [v for q, v, *_ in identity.per_prime if q == p][0],
            }
        )
    doc = {
        "poly": [str(c) for c in poly.coeffs],
        "content": str(content),
        "primitive": [str(c) for c in primitive.coeffs],
        "s": str(identity.s),
        "primes": primes,
        "identity": {"pass": identity.all_ok, "log_gap": identity.log_gap},
    }
    _emit(doc, args.pretty)
    return 0 if identity.all_ok else 4


def _trajectory_payload(spec: InputSpec) -> dict:
    m = spec.m if spec.m > 0 else admissible_m(spec.matrix)
    run = trajectory_counts(
        spec.matrix,
        m,
        spec.n_max,
        budget=spec.budget,
        partitions=spec.partitions,
    )
    formula = algebraic_entropy(
        spec.matrix, tolerance=spec.tolerance, precision=spec.precision
    ).total
    assessment = (
        classify_growth(run, formula_entropy=formula) if run.levels >= 6 else None
    )
    return {
        "m": m,
        "n_max": spec.n_max,
        "budget": spec.budget,
        "counts": [str(t) for t in run.counts],
        "h_cum": list(run.h_cum),
        "h_inc": list(run.h_inc),
        "budget_exhausted_at": run.budget_exhausted_at,
        "classification": assessment.classification if assessment else run.classification,
        "formula_entropy": formula,
        "gap": abs(run.h_inc[-1] - formula),
        "discrepancy": assessment.discrepancy if assessment else False,
        "support_primes": list(run.support_primes),
    }


def _cmd_trajectory(args) -> int:
    spec = _spec_from_args(args, need="matrix")
    _emit(_trajectory_payload(spec), args.pretty)
    return 0


def _cmd_classify(args) -> int:
    spec = _spec_from_args(args, need="matrix")
    payload = _trajectory_payload(spec)
    doc = {
        "classification": payload["classification"],
        "formula_entropy": payload["formula_entropy"],
        "discrepancy": payload["discrepancy"],
        "levels": len(payload["counts"]),
        "h_inc_final": payload["h_inc"][-1],
        "gap": payload["gap"],
    }
    _emit(doc, args.pretty)
    return 0


def _cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        print(
            f"unknown suite {args.suite!r}; known: all, {', '.join(sorted(SUITES))}",
            file=sys.stderr,
        )
        return 2
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    failures = 0
    for name in names:
        result = run_suite(name, seed=args.seed or 0, count=args.count)
        for check in result.checks:
            mark = "ok " if check.passed else "FAIL"
            print(f"{mark} {check.name} {check.detail}")
        failures += len(result.checks) - result.passed
        print(f"SUITE {name}: {result.passed}/{len(result.checks)} passed")
    return 0 if failures == 0 else 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algentropy",
        description="Exact algebraic entropy of rational matrices: "
        "Mahler measure, per-place decomposition, and a brute-force "
        "trajectory oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True):
        if with_input:
            p.add_argument("--input", help="JSON input document")
            p.add_argument("--matrix", help="inline matrix JSON, e.g. '[[\"3/2\"]]'")
            p.add_argument("--poly", help="inline ascending integer coefficients, e.g. '[1,-5,6]'")
            p.add_argument("--m", type=int, default=None, help="grid density (0 = admissible)")
            p.add_argument("--max-n", type=int, default=None, help="trajectory levels")
            p.add_argument("--budget", type=int, default=None, help="stored-point budget")
            p.add_argument("--partitions", type=int, default=None, help="parallel partitions")
            p.add_argument("--precision", type=int, default=None, help="root precision bits")
            p.add_argument("--tolerance", type=float, default=None, help="measure tolerance")
        p.add_argument("--seed", type=int, default=None, help="RNG seed")
        p.add_argument("--pretty", action="store_true", help="indent the JSON output")

    for name, fn in (
        ("entropy", _cmd_entropy),
        ("mahler", _cmd_mahler),
        ("polygon", _cmd_polygon),
        ("trajectory", _cmd_trajectory),
        ("classify", _cmd_classify),
    ):
        p = sub.add_parser(name)
        add_common(p)
        p.set_defaults(func=fn)

    v = sub.add_parser("verify")
    v.add_argument("--suite", required=True, help="suite name or 'all'")
    v.add_argument("--count", type=int, default=None, help="number of random checks")
    add_common(v, with_input=False)
    v.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CertificationError as exc:
        partial = {"error": str(exc), "certified": False}
        print(json.dumps(partial, indent=2 if getattr(args, "pretty", False) else None))
        return 3
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
