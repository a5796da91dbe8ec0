"""Command-line interface.

Subcommands: field, extend, graded, tame, kahler, stable-value.  Every
command supports --json; JSON output is deterministic (sorted keys,
exact rationals as "num/den" strings, infinity as "inf") so repeated
runs with the same inputs and seed are byte-identical.

Exit codes: 0 success, 2 parse error, 3 engine/analyzer error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import graded
from .analyzer import NOT_STABILIZED, classify_kahler, stable_value, tame_report
from .engine import (LIMIT_SUSPECTED, Branch, ExtensionReport, NoSequence,
                     finite_complete_sequence, mac_lane_chains)
from .errors import MlvError, ParseError
from .fields import ValuedField
from .parsing import (parse_choice_overrides, parse_element, parse_expression,
                      parse_field, parse_graded, parse_poly)
from .values import value_from_str, value_str

SCHEMA_VERSION = 1


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Report serialization
# ---------------------------------------------------------------------------


def branch_to_dict(K: ValuedField, b: Branch) -> dict:
    chain = []
    for st in b.chain.stages():
        chain.append({
            "phi": st.phi.to_str(),
            "gamma": value_str(st.gamma),
            "m": st.degree,
            "e": st.e_rel,
            "f": st.fdeg,
        })
    out = {
        "status": b.status,
        "chain": chain,
        "e": b.e,
        "f": b.f,
        "keyPolys": [p.to_str() for p in b.key_polys],
    }
    if b.d is not None:
        out["d"] = b.d
    else:
        out["d"] = {"lowerBound": b.d_lower}
    if b.status == LIMIT_SUSPECTED:
        out["trajectory"] = [
            {"key": e["key"].to_str(), "gamma": value_str(e["gamma"]),
             "gValue": value_str(e["g_value"])}
            for e in b.trajectory]
    return out


def report_to_dict(report: ExtensionReport) -> dict:
    d = {
        "schemaVersion": SCHEMA_VERSION,
        "field": report.K.descriptor_str(),
        "poly": report.g.to_str(),
        "n": report.n,
        "unibranched": report.unibranched,
        "branches": [branch_to_dict(report.K, b) for b in report.branches],
        "sumCheck": {
            "sumEF": report.sum_ef,
            "sumEFD": report.sum_efd,
            "equalsN": report.sum_efd == report.n,
        },
        "bounds": report.bounds,
    }
    if report.warnings:
        d["warnings"] = report.warnings
    return d


def report_from_json(text: str) -> dict:
    """Inverse of the JSON emission at the dict level."""
    d = json.loads(text)
    if d.get("schemaVersion") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schemaVersion {d.get('schemaVersion')}")
    return d


def report_text(report: ExtensionReport) -> str:
    lines = [f"extensions of v to {report.K.descriptor_str()}[x]/({report.g.to_str()})"]
    lines.append(f"  n = {report.n}, branches = {len(report.branches)}, "
                 f"unibranched = {report.unibranched}")
    for i, b in enumerate(report.branches):
        dstr = str(b.d) if b.d is not None else f">= {b.d_lower}"
        lines.append(f"  branch {i}: {b.status}  e = {b.e}  f = {b.f}  d = {dstr}")
        lines.append(f"    chain: {b.chain.chain_str()}")
        if b.status == LIMIT_SUSPECTED and b.trajectory:
            vals = ", ".join(value_str(e["gamma"]) for e in b.trajectory[1:7])
            lines.append(f"    value trajectory: {vals}, ...")
    sumefd = report.sum_efd
    lines.append(f"  sum e*f = {report.sum_ef}"
                 + (f", sum e*f*d = {sumefd}" if sumefd is not None else "")
                 + f" (n = {report.n})")
    for w in report.warnings:
        lines.append(f"  warning: {w}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_field(args) -> int:
    K = parse_field(args.field)
    out = {"schemaVersion": SCHEMA_VERSION, "field": K.descriptor_str(),
           "residueChar": K.p, "valueGroup": str(K.value_group),
           "residuePerfect": K.residue_perfect()[0]}
    if args.valuate is not None:
        a = parse_element(args.valuate, K)
        out["valuate"] = {"element": K.elem_str(a),
                          "value": value_str(K.valuate(a))}
    if args.residue is not None:
        a = parse_element(args.residue, K)
        out["residue"] = {"element": K.elem_str(a),
                          "residue": K.residue_field.elem_str(K.residue(a))}
    if args.choice is not None:
        gamma = value_from_str(args.choice)
        out["choice"] = {"gamma": value_str(gamma),
                         "element": K.elem_str(K.choice(gamma))}
    if args.json:
        print(_dump(out))
    else:
        print(f"{out['field']}: residue char {out['residueChar']}, "
              f"value group {out['valueGroup']}, residue {out['residuePerfect']}")
        for key in ("valuate", "residue", "choice"):
            if key in out:
                print(f"  {key}: {out[key]}")
    return 0


def cmd_extend(args) -> int:
    K = parse_field(args.field)
    g = parse_poly(args.poly, K)
    report = mac_lane_chains(K, g, max_depth=args.max_depth,
                             max_limit_probes=args.limit_probes)
    if args.json:
        print(_dump(report_to_dict(report)))
    else:
        print(report_text(report))
        seq = finite_complete_sequence(report)
        if isinstance(seq, NoSequence):
            print(f"  finite complete sequence: NONE ({seq.reason})")
        else:
            print("  finite complete sequence: "
                  + ", ".join(q.to_str() for q in seq))
    return 0


def cmd_graded(args) -> int:
    K = parse_field(args.field)
    if args.choice:
        K = K.with_choice_overrides(parse_choice_overrides(args.choice, K))
    table = graded.TwistTable(K)
    out = {"schemaVersion": SCHEMA_VERSION, "field": K.descriptor_str()}
    if args.mul:
        x = parse_graded(args.mul[0], K, table)
        y = parse_graded(args.mul[1], K, table)
        prod = graded.twisted_mul(K, x, y, table)
        out["mul"] = {"lhs": graded.element_str(K, x),
                      "rhs": graded.element_str(K, y),
                      "result": graded.element_str(K, prod)}
    if args.frobenius is not None:
        x = parse_graded(args.frobenius, K, table)
        out["frobenius"] = {"arg": graded.element_str(K, x),
                            "result": graded.element_str(K, graded.frobenius(K, x, table))}
    if args.initial_form is not None:
        a = parse_element(args.initial_form, K)
        t = graded.initial_form(K, a)
        out["initialForm"] = {"element": K.elem_str(a),
                              "result": graded.element_str(K, graded.from_term(K, t))}
    if args.surjective:
        verdict, witness = graded.frobenius_surjective(K)
        w = None
        if witness is not None:
            kind, val = witness
            w = {"kind": kind,
                 "value": value_str(val) if kind == "VALUE_WITNESS"
                 else K.residue_field.elem_str(val)}
        out["frobeniusSurjective"] = {"verdict": verdict, "witness": w}
    if args.json:
        print(_dump(out))
    else:
        for key, val in out.items():
            if key in ("schemaVersion", "field"):
                continue
            if key == "mul":
                print(val["result"])
            else:
                print(f"{key}: {val}")
    return 0


def cmd_tame(args) -> int:
    K = parse_field(args.field)
    suite = [parse_poly(s, K) for s in args.suite.split(";") if s.strip()]
    tr = tame_report(K, suite)
    out = {
        "schemaVersion": SCHEMA_VERSION,
        "field": K.descriptor_str(),
        "grPerfect": tr.gr_perfect,
        "overall": tr.overall,
        "perExtension": [
            {"g": e["g"].to_str(), "fcs": e["fcs"], "fcsReason": e["fcs_reason"],
             "te1": e["te1"], "te2": e["te2"], "te3": e["te3"],
             "suspected": e["suspected"]}
            for e in tr.per_extension],
    }
    if tr.witness is not None:
        w = dict(tr.witness)
        if "g" in w:
            w["g"] = w["g"].to_str()
        if "witness" in w and w["witness"] is not None:
            kind, val = w["witness"]
            w["witness"] = {"kind": kind,
                            "value": value_str(val) if kind == "VALUE_WITNESS"
                            else K.residue_field.elem_str(val)}
        out["witness"] = w
    if args.json:
        print(_dump(out))
    else:
        print(f"{out['field']}: {out['overall']} (gr perfect: {out['grPerfect']})")
        for e in out["perExtension"]:
            print(f"  {e['g']}: FCS={e['fcs']} TE1={e['te1']} TE2={e['te2']} TE3={e['te3']}")
        if "witness" in out:
            print(f"  witness: {out['witness']}")
    return 0


def cmd_kahler(args) -> int:
    K = parse_field(args.field)
    g = parse_poly(args.poly, K)
    report = mac_lane_chains(K, g)
    kr = classify_kahler(K, report)
    out = {
        "schemaVersion": SCHEMA_VERSION,
        "field": K.descriptor_str(),
        "poly": g.to_str(),
        "kind": kr.kind,
        "omegaTrivial": kr.omega_trivial,
        "annihilatorValue": None if kr.annihilator_value is None
        else value_str(kr.annihilator_value),
        "trace": list(kr.trace),
    }
    if args.json:
        print(_dump(out))
    else:
        print(f"{out['poly']} over {out['field']}: {out['kind']}, "
              f"Omega trivial: {out['omegaTrivial']}")
        for line in out["trace"]:
            print(f"  {line}")
    return 0


def cmd_stable_value(args) -> int:
    ast = parse_expression(args.expr)
    res = stable_value(args.p, ast, q=args.q, l_start=args.l_start,
                       l_max=args.l_max, seed=args.seed)
    if res == NOT_STABILIZED:
        out = {"schemaVersion": SCHEMA_VERSION, "outcome": "NOT_STABILIZED",
               "expr": args.expr, "seed": args.seed}
    else:
        out = {"schemaVersion": SCHEMA_VERSION, "outcome": "STABILIZED",
               "expr": args.expr, "stableValue": res.stable_value,
               "stableInitialCoeff": res.coeff_str, "l0": res.l0,
               "seed": res.seed,
               "failureBound": value_str(res.failure_bound)}
    if args.json:
        print(_dump(out))
    else:
        if out["outcome"] == "NOT_STABILIZED":
            print("NOT_STABILIZED")
        else:
            print(f"stable value {out['stableValue']} from l0 = {out['l0']}, "
                  f"initial coefficient {out['stableInitialCoeff']} "
                  f"(failure bound {out['failureBound']})")
    return 0


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mlvkit",
        description="Exact workbench for inductive valuations, key polynomial "
                    "chains, graded rings and tameness criteria.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="field descriptor queries")
    p.add_argument("--field", required=True)
    p.add_argument("--valuate")
    p.add_argument("--residue")
    p.add_argument("--choice")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("extend", help="extensions of v to K[x]/(g)")
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--max-depth", type=int, default=32)
    p.add_argument("--limit-probes", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("graded", help="twisted semigroup ring arithmetic")
    p.add_argument("--field", required=True)
    p.add_argument("--choice", help="epsilon overrides, e.g. '1=3,2=18'")
    p.add_argument("--mul", nargs=2, metavar=("A", "B"))
    p.add_argument("--frobenius")
    p.add_argument("--initial-form")
    p.add_argument("--surjective", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_graded)

    p = sub.add_parser("tame", help="tameness evidence over a suite")
    p.add_argument("--field", required=True)
    p.add_argument("--suite", required=True, help="semicolon-separated polynomials")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tame)

    p = sub.add_parser("kahler", help="Kaehler differential criteria")
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kahler)

    p = sub.add_parser("stable-value", help="appendix stable-value algorithm")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--l-start", type=int, default=1)
    p.add_argument("--l-max", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stable_value)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except MlvError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
