"""Command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 refused because the request exceeds a resource guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
import time
from typing import Dict, List, Optional

from . import oracle
from .family import FamilyStats, Scenario, catalog_lookup, example_catalog, table1_triples
from .poly import FieldSpec, PolySyntaxError, parse_poly
from .quotient import (
    ArtinQuotient,
    IdealSpec,
    build_quotient,
    check_socle_condition,
    general_socle_elements,
    socle,
    socle_dim_of_quotient,
)
from .tangent import GENERIC, STRUCTURED, T2_DEFAULT_SCOPE, _parallel_map, t2_nonneg, tangent_report

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

log = logging.getLogger("elemcomp")


class UsageError(Exception):
    pass


class Refused(Exception):
    pass


# --------------------------------------------------------------------------
# argument handling


def parse_field(text: str) -> FieldSpec:
    if text.lower() == "q":
        return FieldSpec.rationals()
    if text.startswith("p:"):
        try:
            return FieldSpec.prime(int(text[2:]))
        except ValueError as exc:
            raise UsageError(f"bad prime field {text!r}: {exc}") from exc
    raise UsageError(f"--field must be 'q' or 'p:<prime>', got {text!r}")


def _poly_list(text: str, field: FieldSpec):
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(parse_poly(part, field))
        except PolySyntaxError as exc:
            raise UsageError(f"cannot parse {part!r}: {exc}") from exc
    return out


def spec_from_args(args, field: FieldSpec) -> IdealSpec:
    has_family = args.n1 is not None or args.n2 is not None
    if has_family == (args.raw is not None):
        raise UsageError("give exactly one of --n1/--n2 or --raw")
    if args.n3 is not None and not has_family:
        raise UsageError("--n3 needs --n1 and --n2")
    extra = _poly_list(args.socle, field) if args.socle else []
    try:
        if has_family:
            if args.n1 is None or args.n2 is None:
                raise UsageError("--n1 and --n2 go together")
            return IdealSpec.family(args.n1, args.n2, args.n3, extra)
        return IdealSpec(raw=tuple(_poly_list(args.raw, field)), extra=tuple(extra))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _add_spec_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("ideal")
    g.add_argument("--n1", type=int)
    g.add_argument("--n2", type=int)
    g.add_argument("--n3", type=int, help="add the generator (xz)^n3")
    g.add_argument("--socle", help="extra generators, ';'-separated, added one at a time")
    g.add_argument("--raw", help="raw generators, ';'-separated")


def _add_common_args(p: argparse.ArgumentParser):
    p.add_argument("--field", default="p:2147483647", help="'q' or 'p:<prime>' (default p:2147483647)")
    p.add_argument("--engine", choices=[STRUCTURED, GENERIC, "both"], default=STRUCTURED)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="fmt", action="store_const", const="json")
    out.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    out.add_argument("--pretty", dest="fmt", action="store_const", const="pretty")
    p.set_defaults(fmt="json")
    p.add_argument("--seed", type=int, default=0, help="seed for general socle elements")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle and compare")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="elemcomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quotient", help="dimension, Hilbert function and socle of S/J")
    _add_spec_args(p)
    _add_common_args(p)
    p.add_argument("--general-socle", type=int, default=0, metavar="N",
                   help="also divide by N random combinations of a socle basis")

    for name, text in (("tangent", "graded pieces of Hom(J, S/J)"),
                       ("tnt", "trivial negative tangents verdict")):
        p = sub.add_parser(name, help=text)
        _add_spec_args(p)
        _add_common_args(p)

    p = sub.add_parser("t2", help="T^2 in nonnegative degrees")
    _add_spec_args(p)
    _add_common_args(p)
    p.add_argument("--t2-cutoff", type=int, help="degree cutoff; also lifts the size guard")

    p = sub.add_parser("formula", help="closed formulas for the family")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    _add_common_args(p)

    p = sub.add_parser("reproduce", help="run catalog scenarios against their expected values")
    p.add_argument("names", nargs="*", help="scenario or group names")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true", help="list scenarios and exit")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock times (byte-stable output)")
    p.add_argument("--catalog", metavar="FILE", help="scenario file to use instead of the bundled catalog")
    _add_common_args(p)

    p = sub.add_parser("table1", help="sweep the variant triples")
    p.add_argument("--t2", action="store_true", help="also compute T^2 (slow for large triples)")
    p.add_argument("--max-n1", type=int, default=9)
    _add_common_args(p)
    return parser


# --------------------------------------------------------------------------
# output


def emit(obj, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "csv":
        rows = obj if isinstance(obj, list) else [obj]
        flat = [_flatten(r) for r in rows]
        cols = sorted({k for r in flat for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in flat:
            w.writerow(r)
        out.write(buf.getvalue())
    elif fmt == "pretty":
        out.write(_pretty(obj) + "\n")
    else:
        out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _flatten(obj, prefix="") -> Dict[str, object]:
    out = {}
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = ";".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, list):
        return "\n".join(_pretty(o, indent) + ("\n" if isinstance(o, dict) else "") for o in obj).rstrip()
    lines = []
    for k in sorted(obj, key=_degree_sort):
        v = obj[k]
        if isinstance(v, dict) and v and all(_is_int_str(x) for x in v):
            lines.append(f"{pad}{k}:")
            lines.append(pad + "  " + "  ".join(f"{j:>5}" for j in sorted(v, key=int)))
            lines.append(pad + "  " + "  ".join(f"{v[j]!s:>5}" for j in sorted(v, key=int)))
        elif isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_pretty(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def _is_int_str(s) -> bool:
    try:
        int(s)
        return True
    except (TypeError, ValueError):
        return False


def _degree_sort(k):
    return (0, int(k), "") if _is_int_str(k) else (1, 0, str(k))


# --------------------------------------------------------------------------
# commands


def _base(Q: ArtinQuotient, field: FieldSpec) -> dict:
    return {"spec": Q.spec.to_json(), "field": field.to_json(), "dim": Q.dim}


def quotient_summary(Q: ArtinQuotient) -> dict:
    per_bideg: Dict[str, int] = {}
    for m in Q.basis:
        k = f"{m[0] + m[1]},{m[2] + m[3]}"
        per_bideg[k] = per_bideg.get(k, 0) + 1
    out = {
        "hilbert_function": {str(d): n for d, n in enumerate(Q.hilbert_function())},
        "per_bidegree": per_bideg,
        "socle_dim": len(socle(Q)),
        "grading": Q.grading.name,
    }
    if Q.spec.n1 is not None:
        out["socle_condition"] = check_socle_condition(Q)
    if Q.warnings:
        out["warnings"] = list(Q.warnings)
    return out


def cmd_quotient(args, field) -> int:
    Q = build_quotient(spec_from_args(args, field), field)
    out = _base(Q, field)
    out.update(quotient_summary(Q))
    if args.general_socle:
        elems = general_socle_elements(Q, args.general_socle, random.Random(args.seed))
        out["general_socle"] = {
            "count": args.general_socle,
            "seed": args.seed,
            "elements": [str(Q.vector_to_poly(v)) for v in elems],
            "socle_dim_of_quotient": socle_dim_of_quotient(Q, elems),
        }
    status = EXIT_OK
    if args.oracle:
        out["oracle_dim"] = _oracle(lambda: oracle.oracle_quotient_dim(Q.generators))
        status = EXIT_OK if out["oracle_dim"] == Q.dim else EXIT_MISMATCH
    emit(out, args.fmt)
    return status


def _oracle(fn):
    try:
        return fn()
    except oracle.OracleRefusal as exc:
        raise Refused(f"oracle refused: {exc}") from exc


def _tangent(Q, engine):
    if engine == "both":
        a = tangent_report(Q, STRUCTURED)
        b = tangent_report(Q, GENERIC)
        return a, a.per_degree == b.per_degree, b
    return tangent_report(Q, engine), True, None


def cmd_tangent(args, field) -> int:
    Q = build_quotient(spec_from_args(args, field), field)
    rep, agree, other = _tangent(Q, args.engine)
    out = _base(Q, field)
    out.update(rep.to_json())
    status = EXIT_OK if agree else EXIT_MISMATCH
    if other is not None:
        out["engines_agree"] = agree
        out["generic_per_degree"] = other.to_json()["per_degree"]
    if args.oracle:
        dims = _oracle(lambda: oracle.oracle_hom_dims(Q.generators))
        ok = all(dims.get(j, 0) == d for j, d in rep.per_degree.items()) and \
            all(rep.per_degree.get(j, 0) == d for j, d in dims.items())
        out["oracle_agrees"] = ok
        status = status if ok else EXIT_MISMATCH
    emit(out, args.fmt)
    return status


def cmd_tnt(args, field) -> int:
    Q = build_quotient(spec_from_args(args, field), field)
    rep, agree, _ = _tangent(Q, args.engine)
    out = _base(Q, field)
    out.update({
        "tnt": rep.tnt_verdict,
        "negative_degrees": {str(j): d for j, d in rep.per_degree.items() if j < 0},
        "trivial_rank_at_minus1": rep.trivial_rank_at_minus1,
        "engine": rep.engine,
    })
    emit(out, args.fmt)
    return EXIT_OK if agree else EXIT_MISMATCH


def _t2_in_scope(spec: IdealSpec) -> bool:
    if spec.n1 is None:
        return True
    return spec.n1 + spec.n2 <= T2_DEFAULT_SCOPE or (spec.n1, spec.n2, spec.n3) == (4, 4, 2)


def cmd_t2(args, field) -> int:
    spec = spec_from_args(args, field)
    if args.t2_cutoff is None and not _t2_in_scope(spec):
        raise Refused(f"T^2 for n1 + n2 > {T2_DEFAULT_SCOPE} is outside the default scope; pass --t2-cutoff")
    Q = build_quotient(spec, field)
    rep = t2_nonneg(Q, cutoff=args.t2_cutoff)
    out = _base(Q, field)
    out.update(rep.to_json())
    status = EXIT_OK
    if args.oracle:
        dims = _oracle(lambda: oracle.oracle_t2_dims(Q.generators))
        ok = dims == rep.per_degree
        out["oracle_agrees"] = ok
        status = EXIT_OK if ok else EXIT_MISMATCH
    emit(out, args.fmt)
    return status


def cmd_formula(args, field) -> int:
    try:
        stats = FamilyStats.of(args.n1, args.n2)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    emit(stats.to_json(), args.fmt)
    return EXIT_OK


def run_scenario(sc: Scenario, field: FieldSpec, engine: str = STRUCTURED, seed: int = 0) -> dict:
    """Compute every expected field of a scenario; returns computed values and per-field verdicts."""
    exp = sc.expected
    spec = IdealSpec.from_json(sc.spec, field)
    Q = build_quotient(spec, field)
    got: Dict[str, object] = {"colength": Q.dim}
    if any(exp[k] is not None for k in ("tangent_total", "tnt", "hom_lt_4d", "hom_lt_3dm1")):
        rep, agree, _ = _tangent(Q, engine)
        got["tangent_total"] = rep.total
        got["tnt"] = rep.tnt_verdict
        got["hom_lt_4d"] = rep.total < 4 * Q.dim
        got["hom_lt_3dm1"] = rep.total < 3 * (Q.dim - 1)
        if not agree:
            got["engines_agree"] = False
    if exp["t2_zero"] is not None:
        got["t2_zero"] = t2_nonneg(Q).vanishes_nonneg
    if exp["socle_dim"] is not None:
        got["socle_dim"] = len(socle(Q))
    if sc.general_socle:
        elems = general_socle_elements(Q, sc.general_socle, random.Random(seed))
        got["general_socle_dim"] = socle_dim_of_quotient(Q, elems)
    checks = {k: got.get(k) == v for k, v in exp.items() if v is not None}
    if got.get("engines_agree") is False:
        checks["engines_agree"] = False
    return {
        "name": sc.name,
        "expected": {k: v for k, v in exp.items() if v is not None},
        "computed": got,
        "checks": checks,
        "pass": all(checks.values()),
    }


def cmd_reproduce(args, field) -> int:
    try:
        catalog = example_catalog(args.catalog)
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read catalog {args.catalog!r}: {exc}") from exc
    if args.list:
        emit([{"name": s.name, "groups": list(s.groups)} for s in catalog], args.fmt)
        return EXIT_OK
    if args.all:
        scenarios = catalog
    elif args.names:
        try:
            scenarios = catalog_lookup(args.names, args.catalog)
        except KeyError as exc:
            raise UsageError(f"unknown scenario {exc.args[0]!r} (see --list)") from exc
    else:
        raise UsageError("name scenarios or pass --all")

    def one(sc):
        t = time.perf_counter()
        res = run_scenario(sc, field, args.engine, args.seed)
        if not args.no_timing:
            res["seconds"] = round(time.perf_counter() - t, 3)
        return res

    results = sorted(_parallel_map(one, scenarios), key=lambda r: r["name"])
    emit(results, args.fmt)
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_MISMATCH


def cmd_table1(args, field) -> int:
    rows = []
    ok = True
    for n1, n2, n3 in table1_triples():
        if n1 > args.max_n1:
            continue
        Q = build_quotient(IdealSpec.family(n1, n2, n3), field)
        rep, agree, _ = _tangent(Q, args.engine)
        row = {"n1": n1, "n2": n2, "n3": n3, "d_B": Q.dim, "hom_total": rep.total, "tnt": rep.tnt_verdict,
               "hom_lt_4d": rep.total < 4 * Q.dim, "hom_lt_3dm1": rep.total < 3 * (Q.dim - 1)}
        if args.t2:
            row["t2_zero"] = t2_nonneg(Q).vanishes_nonneg
        ok = ok and agree and rep.tnt_verdict and row["hom_lt_4d"] and (
            row["hom_lt_3dm1"] or (n1, n2, n3) == (4, 4, 2))
        rows.append(row)
    emit(rows, args.fmt)
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "quotient": cmd_quotient,
    "tangent": cmd_tangent,
    "tnt": cmd_tnt,
    "t2": cmd_t2,
    "formula": cmd_formula,
    "reproduce": cmd_reproduce,
    "table1": cmd_table1,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        field = parse_field(args.field)
        return COMMANDS[args.command](args, field)
    except UsageError as exc:
        print(f"elemcomp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Refused as exc:
        print(f"elemcomp: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ValueError as exc:
        print(f"elemcomp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
