"""Batch driver: load a Satake config, build modules, run checks, emit JSON.

Exit codes: 0 all enabled checks pass, 1 a check failed, 2 bad input,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from .characters import (akin_character, dual_spherical_vector,
                         find_dual_spherical, find_spherical_lines,
                         hermitian_scan)
from .modules import DimensionCapExceeded, build_simple, check_contravariance, \
    check_defining_relations
from .qsp import Parameter, chi_shift_coideal, coideal_generators, \
    distinguished_parameter
from .quasik import quasi_k, wz_character_check
from .rootdata import (RootDatumError, SatakeDatum, root_datum,
                       satake_from_config, table1_constants)
from .scalars import Field, ScalarParseError, UnrepresentableScalar, parse_scalar
from .spherical import MatrixCoefficient, is_weyl_invariant, restrict_torus

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_CAP = 3

TABLE1_ROWS = [("AI1", None), ("AII3", None), ("AIII11", None),
               ("AIV", 2), ("AIV", 3), ("BII", 2), ("BII", 3),
               ("CII", 3), ("CII", 4), ("DII", 4), ("DII", 5), ("FII", None)]

TABLE1_EXPECTED = {
    ("AI1", None): (2, 0, 0, 2),
    ("AII3", None): (2, -2, 2, 4),
    ("AIII11", None): (2, 0, 0, 2),
    ("AIV", 2): (2, 0, 0, 2),
    ("AIV", 3): (2, -1, 1, 3),
    ("BII", 2): (4, -2, 2, 6),
    ("BII", 3): (4, -4, 6, 10),
    ("CII", 3): (2, -2, 3, 5),
    ("CII", 4): (2, -4, 5, 7),
    ("DII", 4): (2, -4, 4, 6),
    ("DII", 5): (2, -6, 6, 8),
    ("FII", None): (2, -6, 9, 11),
}


@dataclasses.dataclass
class JobSpec:
    config: str | None = None
    parameters: dict | None = None       # node (1-based str) -> literal
    s_parameters: dict | None = None
    weights: list | None = None          # list of 1-based coordinate lists
    checks: tuple = ()
    out: str | None = None
    root_order: int = 2
    weight_box: int = 4
    dim_cap: int = 2000
    example: str | None = None


class InputError(Exception):
    pass


def _load_satake(job: JobSpec) -> SatakeDatum:
    if not job.config:
        raise InputError("a Satake config is required for this check")
    try:
        with open(job.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
        return satake_from_config(cfg)
    except (OSError, json.JSONDecodeError, RootDatumError) as exc:
        raise InputError(f"config error: {exc}") from exc


def _load_parameter(job: JobSpec, satake: SatakeDatum, field: Field) -> Parameter:
    if job.parameters is None:
        return distinguished_parameter(satake, field)
    c, s = {}, {}
    try:
        for key, literal in job.parameters.items():
            c[int(key) - 1] = parse_scalar(literal, field)
        for key, literal in (job.s_parameters or {}).items():
            s[int(key) - 1] = parse_scalar(literal, field)
    except (ScalarParseError, UnrepresentableScalar, ValueError) as exc:
        raise InputError(f"parameter error: {exc}") from exc
    try:
        return Parameter(satake, c, s)
    except Exception as exc:
        raise InputError(f"parameter error: {exc}") from exc


def _weights(job: JobSpec, satake: SatakeDatum) -> list:
    if job.weights:
        return [tuple(int(x) for x in w) for w in job.weights]
    n = satake.datum.n
    return [tuple(1 if k == 0 else 0 for k in range(n))]


def run_validate(job: JobSpec) -> dict:
    satake = _load_satake(job)
    problems = satake.validate()
    return {
        "check": "validate",
        "admissible": not problems,
        "violations": [{"condition": c, "detail": d} for c, d in problems],
        "passed": not problems,
    }


def run_module(job: JobSpec) -> dict:
    satake = _load_satake(job)
    field = Field(job.root_order)
    out = []
    for lam in _weights(job, satake):
        module = build_simple(satake.datum, lam, field, dim_cap=job.dim_cap)
        rel = check_defining_relations(module) + check_contravariance(module)
        dump = {
            "lambda": list(lam),
            "dim": module.dim,
            "weights": [list(w) for w in module.weights],
            "raising": {str(i + 1): [[x.serialize() for x in row] for row in mat]
                        for i, mat in module.e_mats.items()},
            "lowering": {str(i + 1): [[x.serialize() for x in row] for row in mat]
                         for i, mat in module.f_mats.items()},
            "relations_ok": not rel,
            "violations": rel,
        }
        out.append(dump)
    return {"check": "module", "modules": out,
            "passed": all(m["relations_ok"] for m in out)}


def run_characters(job: JobSpec) -> dict:
    satake = _load_satake(job)
    field = Field(job.root_order)
    param = _load_parameter(job, satake, field)
    weights = job.weights and [tuple(int(x) for x in w) for w in job.weights]
    report = hermitian_scan(satake, param, field, weights=weights,
                            bound=None if weights else job.weight_box,
                            dim_cap=job.dim_cap)
    body = report.describe()
    body["check"] = "characters"
    body["passed"] = True
    return body


def run_quasik(job: JobSpec) -> dict:
    satake = _load_satake(job)
    field = Field(job.root_order)
    param = _load_parameter(job, satake, field)
    results = []
    ok_all = True
    for lam in _weights(job, satake):
        module = build_simple(satake.datum, lam, field, dim_cap=job.dim_cap)
        for i in satake.relative_orbit_representatives():
            qk = quasi_k(i, param, module)
            entry = {
                "lambda": list(lam),
                "node": i + 1,
                "mode": qk.mode,
                "constant_block_identity": qk.zero_block_is_identity(),
                "residual_zero": qk.residual_ok,
            }
            entry["passed"] = (entry["constant_block_identity"]
                               and entry["residual_zero"])
            ok_all = ok_all and entry["passed"]
            results.append(entry)
    return {"check": "quasik", "results": results, "passed": ok_all}


def run_spherical(job: JobSpec) -> dict:
    satake = _load_satake(job)
    field = Field(job.root_order)
    param = _load_parameter(job, satake, field)
    results = []
    ok_all = True
    for lam in _weights(job, satake):
        module = build_simple(satake.datum, lam, field, dim_cap=job.dim_cap)
        gens = coideal_generators(param, module)
        for line in find_spherical_lines(module, gens, param):
            entry = {"lambda": list(lam),
                     "labels": {str(i + 1): l for i, l in line.character.labels.items()}}
            wz_ok = all(wz_character_check(line, i, param, gens)[0]
                        for i in satake.relative_orbit_representatives())
            shifted = chi_shift_coideal(param, line.character)
            akin = akin_character(line.character, param)
            dual = dual_spherical_vector(module, coideal_generators(shifted, module),
                                         akin.b_values, module.lam)
            table = restrict_torus(MatrixCoefficient(module, dual, line.vector),
                                   satake)
            inv, cert = is_weyl_invariant(table, satake)
            entry["braid_invariant"] = wz_ok
            entry["restriction"] = table.describe() | {"invariant": inv}
            entry["invariant"] = inv
            if cert:
                entry["certificate"] = cert
            entry["passed"] = wz_ok and inv
            ok_all = ok_all and entry["passed"]
            results.append(entry)
    return {"check": "spherical", "results": results, "passed": ok_all}


def run_table1(job: JobSpec) -> dict:
    rows = []
    ok_all = True
    for label, n in TABLE1_ROWS:
        got = table1_constants(label, n)
        want = TABLE1_EXPECTED[(label, n)]
        ok = got == want
        ok_all = ok_all and ok
        rows.append({"type": label, "n": n, "computed": list(got),
                     "expected": list(want), "passed": ok})
    return {"check": "table1", "rows": rows, "passed": ok_all}


def run_examples(job: JobSpec) -> dict:
    which = job.example or "aiii-sl3"
    field = Field(job.root_order)
    if which == "aiii-sl3":
        return _example_sl3(field)
    if which == "aiii3-sl4":
        return _example_sl4(field)
    raise InputError(f"unknown example {which!r}; use aiii-sl3 or aiii3-sl4")


def _example_sl3(field: Field) -> dict:
    datum = root_datum("A", 2)
    satake = SatakeDatum(datum, (), (1, 0))
    q = field.q
    c1, c2 = field.one, q
    param = Parameter(satake, {0: c1, 1: c2})
    module = build_simple(datum, (1, 0), field)
    gens = coideal_generators(param, module)
    line = find_spherical_lines(module, gens, param)[0]
    dual = find_dual_spherical(line, gens).normalized_at(module.highest_index)
    table = restrict_torus(MatrixCoefficient(module, dual, line.vector), satake)
    rows = []
    ok_all = True
    for n in range(-4, 5):
        value = table.evaluate_coords([n])
        expected = q.inverse() * c1.inverse() * c2 * q ** (-n) + q ** n
        ok = value == expected
        ok_all = ok_all and ok
        rows.append({"n": n, "value": str(value), "matches": ok})
    return {"check": "examples", "example": "aiii-sl3",
            "table": rows, "passed": ok_all}


def _example_sl4(field: Field) -> dict:
    datum = root_datum("A", 3)
    satake = SatakeDatum(datum, (), (2, 1, 0))
    q = field.q
    param = Parameter(satake, {0: field.one, 1: q.inverse(), 2: field.one})
    module = build_simple(datum, (0, 1, 0), field)
    gens = coideal_generators(param, module)
    lines = find_spherical_lines(module, gens, param)
    results = []
    ok_all = bool(lines)
    basis = satake.y_theta_basis()
    from .rootdata import _solve_rational
    for line in lines:
        table = restrict_torus(
            MatrixCoefficient(module, line.vector.bar(), line.vector), satake)
        ok = True
        for n in range(-3, 4):
            for m in range(-3, 4):
                h = (m, n, m)
                coords = _solve_rational(
                    [[Fraction(b[r]) for b in basis] for r in range(3)],
                    [Fraction(x) for x in h])
                expected = q ** n + q ** (2 * m - n) + q ** (n - 2 * m) + q ** (-n)
                ok = ok and table.evaluate_coords(coords) == expected
        inv, _ = is_weyl_invariant(table, satake)
        ok_all = ok_all and ok and inv
        results.append({"labels": {str(i + 1): l
                                   for i, l in line.character.labels.items()},
                        "restriction_matches": ok, "invariant": inv})
    return {"check": "examples", "example": "aiii3-sl4",
            "lines": results, "passed": ok_all}


RUNNERS = {
    "validate": run_validate,
    "module": run_module,
    "characters": run_characters,
    "quasik": run_quasik,
    "spherical": run_spherical,
    "table1": run_table1,
    "examples": run_examples,
}


def run(job: JobSpec):
    """Run the enabled checks; returns (exit status, report dict)."""
    report = {"checks": []}
    status = EXIT_PASS
    for check in job.checks:
        if check not in RUNNERS:
            raise InputError(f"unknown check {check!r}; known: {sorted(RUNNERS)}")
    try:
        for check in job.checks:
            body = RUNNERS[check](job)
            report["checks"].append(body)
            if not body.get("passed", False):
                status = max(status, EXIT_CHECK_FAILED)
    except InputError as exc:
        report["error"] = {"code": "input", "detail": str(exc)}
        return EXIT_INPUT_ERROR, report
    except (ScalarParseError, RootDatumError) as exc:
        report["error"] = {"code": "input", "detail": str(exc)}
        return EXIT_INPUT_ERROR, report
    except UnrepresentableScalar as exc:
        report["error"] = {"code": "unrepresentable-scalar", "detail": str(exc)}
        return EXIT_INPUT_ERROR, report
    except DimensionCapExceeded as exc:
        report["error"] = {"code": "dimension-cap", "detail": str(exc)}
        return EXIT_RESOURCE_CAP, report
    report["passed"] = status == EXIT_PASS
    return status, report


def _emit(report: dict, out: str | None):
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_kv(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"expected node=value, got {item!r}")
        key, val = item.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qspherical",
        description="Exact checks for quantum symmetric pairs, their characters "
                    "and spherical functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        if config_required:
            p.add_argument("--config", required=True, help="Satake config JSON")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--root-order", type=int, default=2, choices=(1, 2, 4))
        p.add_argument("--dim-cap", type=int, default=2000)
        p.add_argument("--weight-box", type=int, default=4)
        p.add_argument("--c", action="append", metavar="NODE=LITERAL",
                       help="c parameter, e.g. --c 1=-q^-2 (1-based node)")
        p.add_argument("--s", action="append", metavar="NODE=LITERAL")
        p.add_argument("--weight", action="append", metavar="COORDS",
                       help="dominant weight, e.g. --weight 1,0,1")

    for name in ("validate", "module", "characters", "invariance"):
        p = sub.add_parser(name)
        common(p)
    p = sub.add_parser("table1")
    common(p, config_required=False)
    p = sub.add_parser("examples")
    common(p, config_required=False)
    p.add_argument("which", nargs="?", default="aiii-sl3",
                   choices=("aiii-sl3", "aiii3-sl4"))
    args = parser.parse_args(argv)

    checks = {
        "validate": ("validate",),
        "module": ("module",),
        "characters": ("characters",),
        "invariance": ("quasik", "spherical"),
        "table1": ("table1",),
        "examples": ("examples",),
    }[args.command]
    try:
        weights = None
        if getattr(args, "weight", None):
            weights = [[int(x) for x in w.split(",")] for w in args.weight]
        job = JobSpec(
            config=getattr(args, "config", None),
            parameters=_parse_kv(getattr(args, "c", None)) or None,
            s_parameters=_parse_kv(getattr(args, "s", None)) or None,
            weights=weights,
            checks=checks,
            out=args.out,
            root_order=args.root_order,
            weight_box=args.weight_box,
            dim_cap=args.dim_cap,
            example=getattr(args, "which", None),
        )
    except InputError as exc:
        print(json.dumps({"error": {"code": "input", "detail": str(exc)}}))
        return EXIT_INPUT_ERROR
    status, report = run(job)
    _emit(report, job.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
