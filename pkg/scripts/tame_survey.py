#!/usr/bin/env python3
"""Survey tameness evidence and graded-ring perfectness across the four
base field families, including the defect witness that separates the
perfect closure from actual tameness certificates.

Usage: python scripts/tame_survey.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from mlvkit.analyzer import (NOT_APPLICABLE, drvg_check, stable_value,
                             tame_report, te1_witness)
from mlvkit.graded import frobenius_surjective
from mlvkit.parsing import parse_expression, parse_field, parse_poly
from mlvkit.values import value_str


def survey_field(desc, suite_strs):
    K = parse_field(desc)
    print(f"== {K.descriptor_str()}  (vK = {K.value_group}, "
          f"residue {K.residue_perfect()[0]})")
    verdict, witness = frobenius_surjective(K)
    print(f"   Frobenius surjective on gr(O_K): {verdict}"
          + (f"  witness: {witness}" if witness else ""))
    w = te1_witness(K)
    if w == NOT_APPLICABLE:
        print("   TE1 witness: none (value group p-divisible)")
    else:
        print(f"   TE1 witness: {w.g.to_str()} with e = {w.verified_index} ({w.method})")
    print(f"   (DRvg): {drvg_check(K.value_group, K.p).verdict}")
    suite = [parse_poly(s, K) for s in suite_strs]
    tr = tame_report(K, suite)
    print(f"   tame verdict over suite {suite_strs}: {tr.overall}")
    if tr.witness:
        wd = {k: (v.to_str() if hasattr(v, "to_str") else v)
              for k, v in tr.witness.items()}
        print(f"     witness: {wd}")
    print()


def main():
    survey_field("Qp(2)", ["x^2-2", "x^2+x+1"])
    survey_field("Qp(5)", ["x^2-5", "x^3+x+1"])
    survey_field("Fq(2,t)", ["x^3+t", "x^2+x+1"])
    survey_field("FpPerf(3,t)", ["x^2-t", "x^4+t", "x^2+1"])
    survey_field("FpPerf(2,t)", ["x^3+t", "x^5+t", "x^2+x+1/t"])

    print("== appendix stable values over GF(2^16)")
    for expr in ("S", "S - (c1*T + c2*T^2)", "1/T"):
        r = stable_value(2, parse_expression(expr), seed=0)
        print(f"   {expr:>22}: value {r.stable_value}, stable from l0 = {r.l0}, "
              f"failure bound {value_str(r.failure_bound)}")


if __name__ == "__main__":
    main()
