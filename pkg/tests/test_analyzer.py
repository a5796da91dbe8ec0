from fractions import Fraction as Q

import pytest

from mlvkit.analyzer import (NOT_APPLICABLE, NOT_STABILIZED, MaxAttained,
                             NoMaxEvidence, TE1Witness, alg_max_evidence,
                             classify_kahler, drvg_check, kahler_purely_inertial,
                             kahler_purely_ramified, stable_value, tame_report,
                             te1_witness, te_conditions)
from mlvkit.engine import mac_lane_chains
from mlvkit.errors import (GammaNotPositive, NotPurelyInertial,
                           NotPurelyRamified)
from mlvkit.fields import FpPerfField, FpctField, FqtField, QpField
from mlvkit.parsing import parse_expression, parse_poly
from mlvkit.values import ValueGroup, value_str


def test_te_conditions_examples():
    K = QpField(2)
    te = te_conditions(K, mac_lane_chains(K, parse_poly("x^2-2", K)))
    assert (te.te1, te.te2, te.te3) == (False, True, True)
    assert not te.suspected
    te = te_conditions(K, mac_lane_chains(K, parse_poly("x^2+x+1", K)))
    assert (te.te1, te.te2, te.te3) == (True, True, True)
    F = FqtField(2)
    te = te_conditions(F, mac_lane_chains(F, parse_poly("x^3+t", F)))
    assert (te.te1, te.te2, te.te3) == (True, True, True)
    # suspected qualifier on a stalled report
    P = FpPerfField(2)
    te = te_conditions(P, mac_lane_chains(P, parse_poly("x^2+x+1/t", P)))
    assert te.suspected and not te.te3


def test_te3_matches_engine_defect():
    from corpus import corpus
    for K, polys in corpus():
        if K.residue_field.order is None:
            continue
        for g in polys[:8]:
            rep = mac_lane_chains(K, g)
            te = te_conditions(K, rep)
            assert te.te3 == (rep.branches[0].d == 1)


def test_te1_witness():
    w = te1_witness(QpField(2))
    assert isinstance(w, TE1Witness)
    assert w.g == parse_poly("x^2-2", QpField(2)) and w.verified_index == 2
    assert te1_witness(FpPerfField(3)) == NOT_APPLICABLE
    F = FqtField(2)
    w2 = te1_witness(F)
    assert w2.verified_index == 2 and w2.g == parse_poly("x^2-t", F)
    w3 = te1_witness(FpctField(2))
    assert w3.verified_index == 2 and w3.method == "newton_polygon"


def test_tame_report_examples():
    K = QpField(2)
    tr = tame_report(K, [parse_poly("x^2-2", K)])
    assert tr.overall == "NOT_TAME"
    assert tr.witness["kind"] == "GR_IMPERFECT"
    assert tr.per_extension[0]["fcs"]  # the FCS itself exists for x^2-2

    P = FpPerfField(2)
    tr2 = tame_report(P, [parse_poly("x^3+t", P)])
    assert tr2.overall == "TAME_EVIDENCE" and tr2.gr_perfect

    tr3 = tame_report(P, [parse_poly("x^3+t", P), parse_poly("x^2+x+1/t", P)])
    assert tr3.overall == "NOT_TAME"
    assert tr3.witness["kind"] == "FCS_FAILURE"
    assert tr3.witness["reason"] == "DEFECT_SUSPECTED"


def test_tame_report_fp_perf_suite():
    # p does not divide any suite ramification: evidence of tameness;
    # injecting the Artin-Schreier polynomial flips the verdict
    P = FpPerfField(3)
    suite = [parse_poly(s, P) for s in ("x^2-t", "x^4+t", "x^2+1")]
    assert tame_report(P, suite).overall == "TAME_EVIDENCE"
    P2 = FpPerfField(2)
    suite2 = [parse_poly(s, P2) for s in ("x^3+t", "x^5+t", "x^2+x+1")]
    assert tame_report(P2, suite2).overall == "TAME_EVIDENCE"
    suite2.append(parse_poly("x^2+x+1/t", P2))
    assert tame_report(P2, suite2).overall == "NOT_TAME"


def test_alg_max_evidence():
    K = QpField(2)
    m = alg_max_evidence(K, parse_poly("x^2-2", K))
    assert isinstance(m, MaxAttained)
    assert m.center == 0 and m.value == Q(1, 2)
    K5 = QpField(5)
    m2 = alg_max_evidence(K5, parse_poly("x^2+1", K5), budget=6)
    assert isinstance(m2, NoMaxEvidence)
    assert list(m2.trajectory) == [Q(k) for k in range(1, 7)]
    P = FpPerfField(2)
    m3 = alg_max_evidence(P, parse_poly("x^2+x+1/t", P), budget=5)
    assert isinstance(m3, NoMaxEvidence)
    assert list(m3.trajectory) == [Q(-1, 2 ** (l + 1)) for l in range(1, 6)]


def test_kahler_purely_inertial():
    K = QpField(2)
    rep = mac_lane_chains(K, parse_poly("x^2+x+1", K))
    kr = kahler_purely_inertial(K, rep)
    assert kr.kind == "PURELY_INERTIAL"
    assert kr.omega_trivial and kr.annihilator_value == 0
    # degree-3 inertial example
    rep3 = mac_lane_chains(K, parse_poly("x^3+x+1", K))
    kr3 = kahler_purely_inertial(K, rep3)
    assert kr3.omega_trivial
    with pytest.raises(NotPurelyInertial):
        kahler_purely_inertial(K, mac_lane_chains(K, parse_poly("x^2-2", K)))


def test_kahler_purely_ramified():
    K = QpField(2)
    rep = mac_lane_chains(K, parse_poly("x^2-2", K))
    kr = kahler_purely_ramified(K, rep)
    assert kr.kind == "PURELY_RAMIFIED"
    assert kr.omega_trivial is False
    assert kr.annihilator_value == Q(3, 2)  # v(2 sqrt 2)
    P3 = FpPerfField(3)
    rep2 = mac_lane_chains(P3, parse_poly("x^2-t", P3))
    kr2 = kahler_purely_ramified(P3, rep2)
    assert kr2.omega_trivial is True  # l = n = 2: v(2) + v(1) - 0 = 0
    with pytest.raises(NotPurelyRamified):
        kahler_purely_ramified(K, mac_lane_chains(K, parse_poly("x^2+x+1", K)))


def test_kahler_p_divisible_value_group_always_trivial():
    # whenever vK is p-divisible, purely ramified extensions have Omega = 0
    P3 = FpPerfField(3)
    for s in ("x^2-t", "x^2+2*t", "x^4+t", "x^4+2*t", "x^2+t^(1/3)"):
        rep = mac_lane_chains(P3, parse_poly(s, P3))
        b = rep.branches[0]
        if not (rep.unibranched and b.e == rep.n and b.status == "TERMINATED"):
            continue
        assert kahler_purely_ramified(P3, rep).omega_trivial is True
    P2 = FpPerfField(2)
    for s in ("x^3+t", "x^3+t^(1/2)", "x^5+t"):
        rep = mac_lane_chains(P2, parse_poly(s, P2))
        assert kahler_purely_ramified(P2, rep).omega_trivial is True


def test_classify_kahler():
    K = QpField(2)
    assert classify_kahler(K, mac_lane_chains(K, parse_poly("x^2+x+1", K))).kind \
        == "PURELY_INERTIAL"
    assert classify_kahler(K, mac_lane_chains(K, parse_poly("x^2-2", K))).kind \
        == "PURELY_RAMIFIED"
    K5 = QpField(5)
    assert classify_kahler(K5, mac_lane_chains(K5, parse_poly("x^2+1", K5))).kind \
        == "NEITHER"


def test_gamma_not_positive_guard():
    P = FpPerfField(3)
    # x^2 + 1/t is purely ramified over F_3(t^(1/3^oo)) with v(eta) = -1/2 < 0
    rep = mac_lane_chains(P, parse_poly("x^2+1/t", P))
    b = rep.branches[0]
    assert rep.unibranched and b.status == "TERMINATED" and b.e == rep.n == 2
    with pytest.raises(GammaNotPositive):
        kahler_purely_ramified(P, rep)


def test_drvg():
    r = drvg_check(ValueGroup(Q(1), None), 2)
    assert r.verdict == "FAILS" and r.witness == ("{0}", "(1)Z")
    assert drvg_check(ValueGroup(Q(1), 2), 2).verdict == "HOLDS_BY_P_DIVISIBILITY"
    assert drvg_check(ValueGroup(Q(1, 2), None), 2).verdict == "FAILS"
    assert drvg_check(ValueGroup(Q(1), 3), 2).verdict == "HOLDS"


def test_stable_value_examples():
    for seed in range(4):
        r = stable_value(2, parse_expression("S"), seed=seed)
        assert r.stable_value == 1 and r.l0 == 1
        r2 = stable_value(2, parse_expression("S - (c1*T + c2*T^2)"), seed=seed)
        assert r2.stable_value == 3 and r2.l0 == 3
        r3 = stable_value(2, parse_expression("1/T"), seed=seed)
        assert r3.stable_value == -1 and r3.l0 == 1
    # odd characteristic
    r = stable_value(3, parse_expression("S - c1*T"), seed=0)
    assert r.stable_value == 2 and r.l0 == 2


def test_stable_value_coefficient_is_c():
    # f = S: the initial coefficient is c_1 itself
    r = stable_value(2, parse_expression("S"), seed=5)
    assert r.stable_value == 1
    assert r.failure_bound > 0


def test_stable_value_rational_and_taylor_consistency():
    # f with a denominator; stabilization persists to l_max
    r = stable_value(2, parse_expression("(S - c1*T)/T"), seed=1, l_max=12)
    assert r.stable_value == 1 and r.l0 == 2
    r2 = stable_value(2, parse_expression("S*S - T"), seed=2)
    assert r2.stable_value == 1  # v(s^2 - t) = min(2, 1) = 1


def test_stable_value_denominator_vanishes():
    from mlvkit.errors import DenominatorVanishes
    # the denominator S - c1*T vanishes identically at l = 1 for every draw
    with pytest.raises(DenominatorVanishes):
        stable_value(2, parse_expression("T/(S - c1*T)"), l_start=1, l_max=3,
                     seed=0, retries=2)


STABLE_CORPUS = [
    "S", "1/T", "S - (c1*T + c2*T^2)", "S - c1*T", "S*S", "S*S - T",
    "T*S + T^2", "S/T", "(S - c1*T)/T", "S^3", "S + T", "S - T",
    "1/(S + T^2)", "(T + S)/(T - S)", "S*S*S - T*S", "c1*S + c2*T",
    "(S - c1*T)^2", "S/(1 + T)", "T^2/S", "S - (c1*T + c2*T^2 + c3*T^3)",
]


def test_stable_value_persistence_on_corpus():
    # once stable for three consecutive l the value stays stable to l_max;
    # realized by requiring the constant suffix of the l-scan to reach l_max
    for i, expr in enumerate(STABLE_CORPUS):
        ast = parse_expression(expr)
        res = stable_value(2, ast, seed=100 + i, l_max=12)
        assert res != NOT_STABILIZED, expr
        assert res.l0 + 2 <= 12
        assert res.failure_bound < Q(1, 1000)
