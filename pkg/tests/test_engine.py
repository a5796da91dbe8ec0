import itertools
import random
from fractions import Fraction as Q

import pytest

from corpus import corpus
from mlvkit.engine import (LIMIT_SUSPECTED, TERMINATED, UNSTABLE, NoSequence,
                           defect, finite_complete_sequence, induced_value,
                           mac_lane_chains, psi_m_scan, tangent_direction)
from mlvkit.errors import IndexOutOfRange, NotMonic, ResidueUnsupported
from mlvkit.fields import FpPerfField, FpctField, FqtField, QpField
from mlvkit.indval import truncation_eval
from mlvkit.parsing import parse_poly
from mlvkit.poly import Poly
from mlvkit.values import INFINITY, is_inf


def test_guards():
    K = QpField(2)
    with pytest.raises(NotMonic):
        mac_lane_chains(K, Poly.from_ints(K, [1, 2]))
    with pytest.raises(ResidueUnsupported):
        C = FpctField(2)
        mac_lane_chains(C, Poly.from_ints(C, [1, 1, 1]))


def test_sqrt2():
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^2-2", K))
    assert len(r.branches) == 1 and r.unibranched
    b = r.branches[0]
    assert b.status == TERMINATED
    assert (b.e, b.f, b.d) == (2, 1, 1)
    assert [p.to_str() for p in b.key_polys] == ["x", "x^2 - 2"]
    gammas = [st.gamma for st in b.chain.stages()]
    assert gammas == [Q(1, 2), INFINITY]


def test_inert_quadratic():
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^2+x+1", K))
    b = r.branches[0]
    assert (b.e, b.f, b.d) == (1, 2, 1) and b.status == TERMINATED


def test_split_quadratic_over_q5():
    K = QpField(5)
    r = mac_lane_chains(K, parse_poly("x^2+1", K))
    assert len(r.branches) == 2 and not r.unibranched
    for b in r.branches:
        assert (b.e, b.f, b.d) == (1, 1, 1)
        assert b.status == LIMIT_SUSPECTED
    assert r.sum_ef == 2 == r.n


def test_function_field_ramified_cubic():
    F = FqtField(2)
    r = mac_lane_chains(F, parse_poly("x^3+t", F))
    b = r.branches[0]
    assert (b.e, b.f, b.d) == (3, 1, 1) and b.status == TERMINATED


def test_artin_schreier_defect():
    P = FpPerfField(2)
    g = parse_poly("x^2+x+1/t", P)
    r = mac_lane_chains(P, g)
    assert r.unibranched
    b = r.branches[0]
    assert b.status == LIMIT_SUSPECTED
    assert (b.e, b.f) == (1, 1)
    assert b.d is None and b.d_lower == 2
    # eta_l = sum t^(-1/2^i): the chain records nu(x - eta_l) = -2^-(l+1)
    # and v(g(eta_l)) = -2^-l
    for l, entry in enumerate(b.trajectory):
        assert entry["gamma"] == Q(-1, 2 ** (l + 1))
        assert entry["g_value"] == Q(-1, 2 ** l)
    # direct perfect-closure evaluation agrees
    for l in range(1, 7):
        eta = P.zero()
        for i in range(1, l + 1):
            eta = P.add(eta, P.canonical_unit(Q(-1, 2 ** i)))
        assert P.valuate(g.evaluate(eta)) == Q(-1, 2 ** l)


def test_induced_value():
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^2-2", K))
    assert induced_value(r, 0, Poly.x(K)) == Q(1, 2)
    assert induced_value(r, 0, Poly.from_ints(K, [1])) == 0
    P = FpPerfField(2)
    rAS = mac_lane_chains(P, parse_poly("x^2+x+1/t", P))
    assert induced_value(rAS, 0, Poly.x(P)) == Q(-1, 2)
    # the minimal polynomial itself is still climbing: unstable
    assert induced_value(rAS, 0, parse_poly("x^2+x+1/t", P)) is UNSTABLE


def test_tangent_direction():
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^2-2", K))
    b = r.branches[0]
    rep, deg = tangent_direction(b, 0)
    assert rep == Poly.x(K) and deg == 1
    rep, deg = tangent_direction(b, 1)
    assert rep == parse_poly("x^2-2", K) and deg == 2
    with pytest.raises(IndexOutOfRange):
        tangent_direction(b, 2)
    # limit-suspected branch: the last stage is the latest approximant
    P = FpPerfField(2)
    rAS = mac_lane_chains(P, parse_poly("x^2+x+1/t", P))
    bAS = rAS.branches[0]
    rep, deg = tangent_direction(bAS, len(bAS.chain.stages()) - 1)
    assert deg == 1 and rep == bAS.chain.phi


def test_psi_scans():
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^2-2", K))
    s1 = psi_m_scan(r, 0, 1)
    assert s1.outcome == "MAX_ATTAINED"
    assert s1.max_poly == Poly.x(K) and s1.max_value == Q(1, 2)
    s2 = psi_m_scan(r, 0, 2)
    assert s2.outcome == "MAX_ATTAINED" and is_inf(s2.max_value)
    # degree without keys
    F = FqtField(2)
    r3 = mac_lane_chains(F, parse_poly("x^3+t", F))
    assert psi_m_scan(r3, 0, 2).outcome == "EMPTY"
    # Hensel trajectory over Q5
    K5 = QpField(5)
    r5 = mac_lane_chains(K5, parse_poly("x^2+1", K5))
    s = psi_m_scan(r5, 0, 1, probe_budget=6)
    assert s.outcome == "UNBOUNDED_EVIDENCE"
    assert [v for _, v in s.evidence] == [Q(k) for k in range(1, 7)]
    vals = [v for _, v in s.evidence]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_psi_scan_max_value_matches_induced_value():
    for K, polys in corpus():
        for g in polys[:6]:
            r = mac_lane_chains(K, g)
            for m in {st.degree for st in r.branches[0].chain.stages()}:
                s = psi_m_scan(r, 0, m)
                if s.outcome == "MAX_ATTAINED":
                    assert induced_value(r, 0, s.max_poly) == s.max_value


def test_finite_complete_sequence():
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^2-2", K))
    seq = finite_complete_sequence(r)
    assert [q.to_str() for q in seq] == ["x", "x^2 - 2"]
    K5 = QpField(5)
    assert finite_complete_sequence(mac_lane_chains(K5, parse_poly("x^2+1", K5))) \
        == NoSequence("BRANCHED")
    P = FpPerfField(2)
    assert finite_complete_sequence(mac_lane_chains(P, parse_poly("x^2+x+1/t", P))) \
        == NoSequence("DEFECT_SUSPECTED")


def test_defect_op():
    K = QpField(2)
    d1 = defect(mac_lane_chains(K, parse_poly("x^2-2", K)))
    assert d1[0]["d"] == 1
    d2 = defect(mac_lane_chains(K, parse_poly("x^2+x+1", K)))
    assert d2[0]["d"] == 1
    P = FpPerfField(2)
    d3 = defect(mac_lane_chains(P, parse_poly("x^2+x+1/t", P)))
    assert d3[0]["d_lower_bound"] == 2
    assert len(d3[0]["limit_steps"]) >= 3


def test_chain_shape_invariant():
    # strictly increasing degrees and gammas along every branch chain
    for K, polys in corpus():
        for g in polys:
            r = mac_lane_chains(K, g)
            assert r.sum_ef <= r.n
            if r.sum_efd is not None:
                assert r.sum_efd == r.n
            for b in r.branches:
                stages = b.chain.stages()
                degs = [st.degree for st in stages]
                assert degs == sorted(set(degs))
                gammas = [st.gamma for st in stages]
                for g1, g2 in zip(gammas, gammas[1:]):
                    assert g1 < g2


def test_pointwise_monotonicity_along_chains():
    rng = random.Random(4)
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^3-2", K))
    stages = r.branches[0].chain.stages()
    for st1, st2 in zip(stages, stages[1:]):
        for _ in range(60):
            f = Poly.from_ints(K, [rng.randrange(-9, 10)
                                   for _ in range(rng.randrange(1, 8))])
            if f.is_zero():
                continue
            assert st1.evaluate(f) <= st2.evaluate(f)


def test_fcs_complete_set_contract_on_corpus():
    rng = random.Random(71)
    for K, polys in corpus():
        for g in polys:
            r = mac_lane_chains(K, g)
            seq = finite_complete_sequence(r, check_samples=25)
            b = r.branches[0]
            expect = r.unibranched and b.status == TERMINATED and b.d == 1
            assert (not isinstance(seq, NoSequence)) == expect, \
                (K.descriptor_str(), g.to_str())
            if isinstance(seq, NoSequence):
                continue
            nu = b.chain.evaluate
            for _ in range(20):
                f = Poly.from_ints(
                    K, [rng.randrange(-9, 10) for _ in range(rng.randrange(2, r.n + 3))])
                if f.is_zero():
                    continue
                assert any(q.degree <= max(f.degree, 1)
                           and truncation_eval(nu, q, f) == nu(f)
                           for q in seq)


def test_linear_polynomial():
    K = QpField(3)
    r = mac_lane_chains(K, parse_poly("x-6", K))
    b = r.branches[0]
    assert b.status == TERMINATED and (b.e, b.f, b.d) == (1, 1, 1)
    assert induced_value(r, 0, Poly.x(K)) == Q(1)  # v(6) at the root


def test_reducible_input_warns():
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^2-1", K))
    assert any("reducible" in w for w in r.warnings)


def test_oracle_agreement_spot_checks():
    from padic_oracle import padic_extensions
    cases = {
        (2, (-2, 0, 1)), (2, (1, 1, 1)), (5, (1, 0, 1)), (2, (-17, 0, 1)),
        (2, (-2, 0, 0, 1)), (2, (1, 1, 0, 1)), (3, (3, 0, 0, 1)),
        (3, (-1, -1, 0, 1)), (2, (2, 1, 1)), (3, (1, 0, 1)),
    }
    for p, cc in sorted(cases):
        K = QpField(p)
        g = Poly.from_ints(K, list(cc))
        r = mac_lane_chains(K, g)
        assert sorted((b.e, b.f) for b in r.branches) == \
            padic_extensions(p, list(cc))


def test_depth_exceeded():
    from mlvkit.errors import DepthExceeded
    K = QpField(2)
    # (x^2+x+1)^2 + 2 needs a depth-1 stage before terminating at depth 2
    g = parse_poly("x^4+2*x^3+3*x^2+2*x+3", K)
    rep = mac_lane_chains(K, g)
    assert rep.branches[0].status == TERMINATED
    assert len(rep.branches[0].chain.stages()) == 3
    with pytest.raises(DepthExceeded):
        mac_lane_chains(K, g, max_depth=0)


def test_artin_schreier_is_defectless_over_the_imperfect_base():
    # over Fq(2,t) the value 1/2 is outside the group, so x^2+x+1/t is an
    # honest ramified extension; the defect only appears over the perfect
    # closure, where e collapses to 1
    F = FqtField(2)
    g = parse_poly("x^2+x+1/t", F)
    r = mac_lane_chains(F, g)
    b = r.branches[0]
    assert b.status == TERMINATED and (b.e, b.f, b.d) == (2, 1, 1)


def test_engine_over_prime_power_residue_fields():
    F4 = FqtField(4)
    gen = F4.coeff_field.gen()
    one = F4.coeff_field.one()
    # x^2 + x + g is inert: Tr(g) != 0 in F4
    g1 = Poly(F4, [F4.lift(gen), F4.one(), F4.one()])
    r1 = mac_lane_chains(F4, g1)
    b1 = r1.branches[0]
    assert (b1.e, b1.f, b1.d) == (1, 2, 1) and b1.status == TERMINATED
    assert b1.chain.residual_field()[0].order == 16
    # x^3 + t is totally ramified regardless of the residue field
    g2 = Poly(F4, [F4.t(), F4.zero(), F4.zero(), F4.one()])
    r2 = mac_lane_chains(F4, g2)
    assert (r2.branches[0].e, r2.branches[0].f) == (3, 1)
    # x^2 + g*x + t: two polygon slopes, one root per slope
    g3 = Poly(F4, [F4.t(), F4.lift(gen), F4.one()])
    r3 = mac_lane_chains(F4, g3)
    assert r3.sum_ef == 2 and len(r3.branches) == 2
    F9 = FqtField(9)
    g4 = Poly(F9, [F9.t(), F9.zero(), F9.one()])  # x^2 + t
    r4 = mac_lane_chains(F9, g4)
    assert (r4.branches[0].e, r4.branches[0].f, r4.branches[0].d) == (2, 1, 1)


def test_augment_terminal_guard():
    from mlvkit.errors import NotAKeyPolynomial
    K = QpField(2)
    r = mac_lane_chains(K, parse_poly("x^2-2", K))
    term = r.branches[0].chain
    with pytest.raises(NotAKeyPolynomial):
        term.augment(Poly.x(K), Q(10))


def test_deep_tower_sextics():
    # (x^2+x+1)^3 + 2 over Q2: the unramified quadratic (residual y^2+y+1)
    # composed with a cube root of a uniformizer: e = 3, f = 2, n = 6
    K = QpField(2)
    base = parse_poly("x^2+x+1", K)
    g = base ** 3 + Poly.from_ints(K, [2])
    r = mac_lane_chains(K, g)
    b = r.branches[0]
    assert b.status == TERMINATED and (b.e, b.f, b.d) == (3, 2, 1)
    assert [st.degree for st in b.chain.stages()] == [1, 2, 6]
    kappa, deg = b.chain.residual_field()
    assert deg == 2
    # same shape over a prime-power residue field: kappa tower F4 -> F16
    F4 = FqtField(4)
    gen = F4.coeff_field.gen()
    base4 = Poly(F4, [F4.lift(gen), F4.one(), F4.one()])
    g4 = base4 ** 3 + Poly(F4, [F4.t()])
    r4 = mac_lane_chains(F4, g4)
    b4 = r4.branches[0]
    assert b4.status == TERMINATED and (b4.e, b4.f, b4.d) == (3, 2, 1)
    assert b4.chain.residual_field()[0].order == 16


def test_engine_fuzz_no_crashes():
    # arbitrary monic inputs (reducible and non-squarefree included) must
    # produce a coherent, serializable report or raise a typed error
    import json
    from mlvkit.cli import report_to_dict
    from corpus import field
    rng = random.Random(0xF022)
    descs = ["Qp(2)", "Qp(3)", "Qp(5)", "Fq(2,t)", "Fq(3,t)",
             "FpPerf(2,t)", "FpPerf(3,t)"]
    for desc in descs:
        K = field(desc)
        for _ in range(25):
            deg = rng.randrange(1, 5)
            cc = []
            for _ in range(deg):
                a = K.from_int(rng.randrange(-6, 7))
                if K.kind != "Qp" and rng.random() < 0.4:
                    a = K.add(a, K.mul(K.from_int(rng.randrange(1, K.p)),
                                       K.t()))
                cc.append(a)
            g = Poly(K, cc + [K.one()])
            rep = mac_lane_chains(K, g, max_limit_probes=4)
            assert rep.branches
            for b in rep.branches:
                assert b.status in (TERMINATED, LIMIT_SUSPECTED)
                assert b.e >= 1 and b.f >= 1
                stages = b.chain.stages()
                assert [st.degree for st in stages] == sorted({st.degree for st in stages})
            json.dumps(report_to_dict(rep), sort_keys=True)


def test_quartics_with_known_ramification_over_q2():
    K = QpField(2)
    # x^4+2x^2+4 is the minimal polynomial of sqrt(2)*omega (omega a cube
    # root of unity): the compositum of the unramified quadratic and a
    # ramified quadratic, so e = 2, f = 2
    g = parse_poly("x^4+2*x^2+4", K)
    r = mac_lane_chains(K, g)
    b = r.branches[0]
    assert b.status == TERMINATED and (b.e, b.f, b.d) == (2, 2, 1)
    # x^4+1: the 2-power cyclotomic extension by an 8th root of unity is
    # totally ramified of degree 4
    g2 = parse_poly("x^4+1", K)
    r2 = mac_lane_chains(K, g2)
    b2 = r2.branches[0]
    assert b2.status == TERMINATED and (b2.e, b2.f, b2.d) == (4, 1, 1)
