"""Tameness evidence, Kaehler-differential criteria, and stable values.

Everything here is per-extension evidence, never a certified global
property: tameness quantifies over all simple extensions, which no
finite computation can exhaust.  Reports carry explicit witnesses for
every negative verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import fpoly
from .engine import (TERMINATED, ExtensionReport, NoSequence,
                     finite_complete_sequence, induced_value,
                     mac_lane_chains, psi_m_scan)
from .errors import (DenominatorVanishes, GammaNotPositive, NotPurelyInertial,
                     NotPurelyRamified)
from .ffield import ExtField, GFp, find_irreducible
from .fields import ValuedField
from .graded import frobenius_surjective
from .poly import Poly
from .values import Q, Value, ValueGroup, is_inf, value_str


# ---------------------------------------------------------------------------
# Tame-extension conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TEVerdict:
    te1: bool
    te2: bool
    te3: bool
    suspected: bool  # qualifies the verdicts when the report is not settled

    def all_hold(self) -> bool:
        return self.te1 and self.te2 and self.te3


def te_conditions(K: ValuedField, report: ExtensionReport) -> TEVerdict:
    """TE1: p does not divide e; TE2: separable residue extension;
    TE3: defectless.  Verdicts carry a SUSPECTED qualifier unless the
    report is unibranched and terminated."""
    b = report.branches[0]
    suspected = not (report.unibranched and b.status == TERMINATED)
    te1 = b.e % K.p != 0
    # residue fields of the four families are finite or simple transcendental;
    # all residual extensions computed by the engine are towers of finite
    # fields, hence separable
    te2 = True
    te3 = b.d == 1
    return TEVerdict(te1, te2, te3, suspected)


@dataclass(frozen=True)
class TE1Witness:
    g: Poly
    verified_index: int
    method: str


NOT_APPLICABLE = "NOT_APPLICABLE"


def te1_witness(K: ValuedField):
    """An extension x^p - a with ramification index exactly p, whenever the
    value group is not p-divisible; NOT_APPLICABLE otherwise."""
    ok, _ = K.value_group.p_divisible(K.p)
    if ok:
        return NOT_APPLICABLE
    a = K.canonical_unit(K.value_group.gen)
    coeffs = [K.neg(a)] + [K.zero()] * (K.p - 1) + [K.one()]
    g = Poly(K, coeffs)
    if K.residue_field.order is not None:
        report = mac_lane_chains(K, g)
        e = report.branches[0].e
        return TE1Witness(g, e, "mac_lane_chains")
    # imperfect residue field: the engine does not branch there, but the
    # ramification index is already visible on the polygon slope gen/p
    e = K.value_group.join([K.value_group.gen / K.p]).index_over(K.value_group)
    return TE1Witness(g, e, "newton_polygon")


# ---------------------------------------------------------------------------
# Tame report
# ---------------------------------------------------------------------------


@dataclass
class TameReport:
    gr_perfect: bool
    gr_witness: Optional[Tuple[str, object]]
    per_extension: List[dict]
    overall: str  # "TAME_EVIDENCE" | "NOT_TAME"
    witness: Optional[dict]


def tame_report(K: ValuedField, suite: Sequence[Poly]) -> TameReport:
    """Suite-relative tameness evidence: gr(K) perfect plus a finite
    complete sequence for every suite polynomial."""
    verdict, gw = frobenius_surjective(K)
    gr_ok = verdict == "YES"
    per = []
    witness: Optional[dict] = None
    if not gr_ok:
        witness = {"kind": "GR_IMPERFECT", "witness": gw}
    for g in suite:
        report = mac_lane_chains(K, g)
        seq = finite_complete_sequence(report)
        te = te_conditions(K, report)
        has_fcs = not isinstance(seq, NoSequence)
        entry = {
            "g": g,
            "fcs": has_fcs,
            "fcs_reason": None if has_fcs else seq.reason,
            "te1": te.te1, "te2": te.te2, "te3": te.te3,
            "suspected": te.suspected,
        }
        per.append(entry)
        if not has_fcs and witness is None:
            witness = {"kind": "FCS_FAILURE", "g": g, "reason": seq.reason}
    overall = "TAME_EVIDENCE" if (gr_ok and witness is None) else "NOT_TAME"
    return TameReport(gr_ok, gw, per, overall, witness)


# ---------------------------------------------------------------------------
# Algebraic maximality evidence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaxAttained:
    center: object  # the a in x - a
    value: Value


@dataclass(frozen=True)
class NoMaxEvidence:
    trajectory: Tuple[Value, ...]


def alg_max_evidence(K: ValuedField, g: Poly, budget: int = 8):
    """Evidence for max v(eta - K): the degree-one key scan of a branch."""
    report = mac_lane_chains(K, g, max_limit_probes=budget)
    scan = psi_m_scan(report, 0, 1, probe_budget=budget)
    if scan.outcome == "MAX_ATTAINED":
        a = K.neg(scan.max_poly[0])
        return MaxAttained(a, scan.max_value)
    return NoMaxEvidence(tuple(v for _, v in scan.evidence))


# ---------------------------------------------------------------------------
# Kaehler differentials for purely inertial / purely ramified extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KahlerReport:
    kind: str  # "PURELY_INERTIAL" | "PURELY_RAMIFIED" | "NEITHER"
    omega_trivial: Optional[bool]
    annihilator_value: Optional[Value]
    trace: Tuple[str, ...]


def kahler_purely_inertial(K: ValuedField, report: ExtensionReport) -> KahlerReport:
    """Omega = O_L/(g'(eta)); trivial iff the residue extension is separable."""
    b = report.branches[0]
    if not (report.unibranched and b.status == TERMINATED and b.f == report.n):
        raise NotPurelyInertial(f"f = {b.f} != n = {report.n}")
    gprime = report.g.derivative()
    val = induced_value(report, 0, gprime)
    trivial = val == 0
    # cross-check: residual extensions computed here are towers of finite
    # fields, hence separable, which forces v(g'(eta)) = 0
    trace = (f"v(g'(eta)) = {value_str(val)}",
             "residue extension is a finite-field tower: separable")
    return KahlerReport("PURELY_INERTIAL", trivial, val, trace)


def kahler_purely_ramified(K: ValuedField, report: ExtensionReport) -> KahlerReport:
    """Rank-1 criterion with Delta = {0}.

    Discrete vL: the positive part of vL/Delta has a minimal element, so
    Omega is nonzero with annihilator v(g'(eta)).  Non-discrete vL (a
    p-divisible hull): Omega vanishes iff some coefficient index l of g
    satisfies v(l) + v(a_l) - (n-l) gamma = 0.
    """
    b = report.branches[0]
    n = report.n
    if not (report.unibranched and b.status == TERMINATED and b.e == n):
        raise NotPurelyRamified(f"e = {b.e} != n = {report.n}")
    # vL/vK is automatically cyclic for these rank-1 groups
    gamma = induced_value(report, 0, Poly.x(K))
    if is_inf(gamma) or gamma <= 0:
        raise GammaNotPositive(f"v(eta) = {value_str(gamma)} must be positive")
    vL = b.chain.value_group()
    trace = [f"vL = {vL}", f"gamma = v(eta) = {value_str(gamma)}"]
    if vL.hull is None:
        gprime = report.g.derivative()
        val = induced_value(report, 0, gprime)
        trace.append("vL is discrete: (vL/Delta)_{>0} has a minimal element")
        return KahlerReport("PURELY_RAMIFIED", False, val, tuple(trace))
    g = report.g
    for ell in range(1, n + 1):
        a_l = g[ell]
        if K.is_zero(a_l):
            continue
        v_ell = K.valuate(K.from_int(ell))
        if is_inf(v_ell):
            continue  # l = 0 in K
        test = v_ell + K.valuate(a_l) - (n - ell) * gamma
        if test == 0:
            trace.append(f"l = {ell}: v(l) + v(a_l) - (n-l)gamma = 0 in Delta")
            return KahlerReport("PURELY_RAMIFIED", True, None, tuple(trace))
    trace.append("no index l with v(l) + v(a_l) - (n-l)gamma in Delta")
    return KahlerReport("PURELY_RAMIFIED", False, None, tuple(trace))


def classify_kahler(K: ValuedField, report: ExtensionReport) -> KahlerReport:
    b = report.branches[0]
    if report.unibranched and b.status == TERMINATED:
        if b.f == report.n:
            return kahler_purely_inertial(K, report)
        if b.e == report.n:
            return kahler_purely_ramified(K, report)
    return KahlerReport("NEITHER", None, None, ())


# ---------------------------------------------------------------------------
# (DRvg)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DrvgResult:
    verdict: str  # "HOLDS" | "HOLDS_BY_P_DIVISIBILITY" | "FAILS"
    witness: Optional[Tuple[str, str]] = None


def drvg_check(G: ValueGroup, p: int) -> DrvgResult:
    """In rank 1 the convex subgroups are {0} and G, so (DRvg) holds iff
    G is not isomorphic to Z, i.e. not finitely generated."""
    if G.hull is None:
        return DrvgResult("FAILS", ("{0}", str(G)))
    if G.hull == p:
        return DrvgResult("HOLDS_BY_P_DIVISIBILITY")
    return DrvgResult("HOLDS")


# ---------------------------------------------------------------------------
# Appendix stable-value algorithm
# ---------------------------------------------------------------------------
#
# The appendix works with a power series s = sum c_i t^i whose coefficients
# are algebraically independent; finite truncations s_(0l) stabilize the
# value and initial form of any rational expression f(t, s).  Independence
# is modeled by uniform sampling from a large finite field; the failure
# probability is Schwartz-Zippel bounded by (total degree)/q.


class BivariatePoly:
    """Polynomial in T and S with GF(q) coefficients, stored as a list
    (indexed by S-degree) of T-coefficient tuples."""

    def __init__(self, F, s_coeffs: List[tuple]):
        self.F = F
        cc = list(s_coeffs)
        while cc and fpoly.is_zero(cc[-1]):
            cc.pop()
        self.s_coeffs = cc

    def is_zero(self) -> bool:
        return not self.s_coeffs

    def substitute_s(self, s_poly: tuple) -> tuple:
        """Univariate polynomial in T after S -> s_poly(T)."""
        F = self.F
        acc: tuple = ()
        for ct in reversed(self.s_coeffs):
            acc = fpoly.add(F, fpoly.mul(F, acc, s_poly), ct)
        return acc

    def total_degree(self) -> int:
        best = -1
        for j, ct in enumerate(self.s_coeffs):
            if not fpoly.is_zero(ct):
                best = max(best, j + fpoly.deg(ct))
        return best


@dataclass(frozen=True)
class StableValueResult:
    stable_value: int
    stable_initial_coeff: object
    coeff_str: str
    l0: int
    seed: int
    failure_bound: Fraction  # Schwartz-Zippel style bound


NOT_STABILIZED = "NOT_STABILIZED"


def stable_value(p: int, expr, q: Optional[int] = None, l_start: int = 1,
                 l_max: int = 12, seed: int = 0, retries: int = 5):
    """t-adic value and initial coefficient of f(t, s_(0l)) for growing l.

    ``expr`` is a pair (num, den) of BivariatePoly, or an AST evaluator
    produced by parsing; the c_i are sampled uniformly from the nonzero
    elements of GF(q), q >= p^16 by default.  Returns the first l0 from
    which value and coefficient stay constant for three consecutive l.
    """
    if q is None:
        q = p ** 16
    F = _sample_field(p, q)
    for attempt in range(retries + 1):
        rng = random.Random((seed, attempt).__hash__() & 0x7FFFFFFF)
        cs = [_random_nonzero(F, rng) for _ in range(l_max + 1)]
        num, den = _materialize(expr, F, cs)
        if num.is_zero():
            raise ZeroDivisionError("expression is identically zero")
        try:
            rows = []
            for ell in range(l_start, l_max + 1):
                s_poly = fpoly.norm(F, [F.zero()] + cs[1:ell + 1])
                nt = num.substitute_s(s_poly)
                dt = den.substitute_s(s_poly)
                if fpoly.is_zero(dt):
                    raise DenominatorVanishes(f"denominator vanishes at l = {ell}")
                if fpoly.is_zero(nt):
                    rows.append((ell, None, None))
                    continue
                val = _low_ord(F, nt) - _low_ord(F, dt)
                coeff = F.div(nt[_low_ord(F, nt)], dt[_low_ord(F, dt)])
                rows.append((ell, val, coeff))
        except DenominatorVanishes:
            if attempt < retries:
                continue
            raise
        bound = Q(max(num.total_degree(), den.total_degree(), 1), q)
        # the stable point is the start of the constant suffix, which must
        # hold for at least three consecutive l
        last = rows[-1]
        if last[1] is None:
            return NOT_STABILIZED
        i = len(rows) - 1
        while i > 0 and rows[i - 1][1] == last[1] and rows[i - 1][2] is not None \
                and F.eq(rows[i - 1][2], last[2]):
            i -= 1
        if len(rows) - i >= 3:
            return StableValueResult(last[1], last[2], F.elem_str(last[2]),
                                     rows[i][0], seed, bound)
        return NOT_STABILIZED
    return NOT_STABILIZED  # pragma: no cover


def _sample_field(p: int, q: int):
    if q == p:
        return GFp(p)
    # q = p^m with a deterministic modulus
    m = 0
    qq = q
    while qq > 1:
        if qq % p:
            raise ValueError("q must be a power of p")
        qq //= p
        m += 1
    return ExtField(GFp(p), find_irreducible(p, m), varname="w")


def _random_nonzero(F, rng: random.Random):
    while True:
        if isinstance(F, GFp):
            x = rng.randrange(F.p)
        else:
            x = fpoly.norm(F.base, [rng.randrange(F.base.p)
                                    for _ in range(F.degree)])
        if not F.is_zero(x):
            return x


def _low_ord(F, cc) -> int:
    for i, c in enumerate(cc):
        if not F.is_zero(c):
            return i
    raise ValueError("zero polynomial")


def _materialize(expr, F, cs) -> Tuple[BivariatePoly, BivariatePoly]:
    """Turn the parsed expression into (num, den) BivariatePoly over F,
    with c_i symbols bound to the sampled values."""
    if isinstance(expr, tuple) and len(expr) == 2 and \
            isinstance(expr[0], BivariatePoly):
        return expr
    # expr is an AST from parsing.parse_expression
    from .parsing import eval_bivariate
    return eval_bivariate(expr, F, cs)
