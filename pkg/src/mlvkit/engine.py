"""Extension computation: all extensions of v to K[x]/(g) as chain branches.

The exploration is the effective MacLane construction: start from the
depth-zero valuations given by the Newton polygon of g in x, then
repeatedly factor the residual polynomial of g, lift each irreducible
factor (other than y) to a new key polynomial, and augment along every
principal slope of the polygon of g with respect to that key.  A branch
terminates when g itself becomes a key polynomial and can be assigned
the value infinity.  A branch that keeps refining at a stagnant degree
past the probe bound is flagged LIMIT_SUSPECTED; it is either a genuine
limit (defect or branch separation over the henselization) and its
invariants are reported honestly as bounds.

Defects are resolved as follows: terminated branches have
d = deg(factor)/(e*f); when the sum of e*f over all branches reaches
deg(g) the fundamental equality forces d = 1 everywhere; a single
stalled branch gets the lower bound deg(g)/(e*f); anything else keeps
the trivial lower bound 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import fpoly
from .errors import (DepthExceeded, IndexOutOfRange, NotMonic,
                     ResidueUnsupported, ZeroInput)
from .ffield import factor_monic
from .fields import ValuedField
from .indval import InductiveValuation, truncation_eval
from .poly import Poly, phi_expansion
from .values import INFINITY, Q, Value, is_inf, value_str

TERMINATED = "TERMINATED"
LIMIT_SUSPECTED = "LIMIT_SUSPECTED"


class _Unstable:
    def __repr__(self):
        return "UNSTABLE"


UNSTABLE = _Unstable()


@dataclass
class Branch:
    chain: InductiveValuation
    status: str
    e: int
    f: int
    d: Optional[int]
    d_lower: Optional[int]
    key_polys: List[Poly]
    trajectory: List[dict]  # probes at the stagnant degree (incl. entry node)
    stagnation: int
    prev_chain: Optional[InductiveValuation] = None

    @property
    def local_degree(self) -> Optional[int]:
        return self.chain.degree if self.status == TERMINATED else None


@dataclass
class ExtensionReport:
    K: ValuedField
    g: Poly
    n: int
    branches: List[Branch]
    unibranched: bool
    warnings: List[str]
    bounds: Dict[str, int]

    @property
    def sum_ef(self) -> int:
        return sum(b.e * b.f for b in self.branches)

    @property
    def sum_efd(self) -> Optional[int]:
        total = 0
        for b in self.branches:
            if b.d is None:
                return None
            total += b.e * b.f * b.d
        return total


@dataclass(frozen=True)
class ScanResult:
    degree: int
    outcome: str  # "EMPTY" | "MAX_ATTAINED" | "UNBOUNDED_EVIDENCE"
    max_poly: Optional[Poly] = None
    max_value: Optional[Value] = None
    evidence: Tuple[Tuple[Poly, Value], ...] = ()


# ---------------------------------------------------------------------------
# Newton polygon helpers
# ---------------------------------------------------------------------------


def lower_hull(points: List[Tuple[int, Q]]) -> List[Tuple[int, Q]]:
    pts = sorted(points)
    hull: List[Tuple[int, Q]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def polygon_gammas(points: Dict[int, Value]) -> List[Q]:
    """Candidate key values: gamma = -(slope) for each lower-hull edge."""
    finite = [(k, v) for k, v in points.items() if not is_inf(v)]
    hull = lower_hull(finite)
    out = []
    for (k1, v1), (k2, v2) in zip(hull, hull[1:]):
        out.append((v1 - v2) / (k2 - k1))
    return out


# ---------------------------------------------------------------------------
# Exploration
# ---------------------------------------------------------------------------


def _new_values(node: InductiveValuation, g: Poly, key: Poly
                ) -> Tuple[List[Value], List[Poly]]:
    """Admissible new values for ``key``: polygon slopes exceeding mu(key).

    Also returns the key-expansion of g so children can reuse it.
    """
    exp = phi_expansion(g, key)
    pts: Dict[int, Value] = {}
    c0_zero = True
    for k, c in enumerate(exp.coeffs):
        if c.is_zero():
            continue
        if k == 0:
            c0_zero = False
        pts[k] = node.evaluate(c)
    cur = node.evaluate(key)
    out: List[Value] = [INFINITY] if c0_zero else []
    for gamma in polygon_gammas(pts):
        if gamma > cur:
            out.append(gamma)
    return out, list(exp.coeffs)


def _traj_entry(node: InductiveValuation, g: Poly) -> dict:
    return {"key": node.phi, "gamma": node.gamma, "g_value": node.evaluate(g)}


def _y_poly(kappa) -> tuple:
    return (kappa.zero(), kappa.one())


def _children(node: InductiveValuation, g: Poly) -> Tuple[List[InductiveValuation], bool]:
    """One exploration step below ``node`` for the target polynomial g.

    Returns (children, separated): ``separated`` marks a single
    multiplicity-one residual factor with g not yet a key, i.e. a branch
    whose ramification and inertia data are final and whose continuation
    is pure approximation refinement.
    """
    gr = node.graded_reduction(g)
    if is_inf(gr.value):
        # the current key divides g exactly; only reachable for reducible g
        if node.is_terminal():
            return [], False
        return [node.augment(node.phi, INFINITY)], False
    kappa = node.kappa
    factors = factor_monic(kappa, gr.H)
    proper = [(u, m) for u, m in factors
              if not fpoly.eq(kappa, u, _y_poly(kappa))]
    separated = len(factors) == 1 and factors[0][1] == 1
    if separated and node.is_key(g):
        return [node.augment(g, INFINITY)], False
    children = []
    for rbar, _mult in proper:
        key = node.key_from_residual(rbar)
        gammas, exp_coeffs = _new_values(node, g, key)
        for gamma in gammas:
            child = node.augment(key, gamma, _rbar=rbar)
            if child.phi == key:
                child._exp_cache[g.coeffs] = exp_coeffs
            children.append(child)
    return children, separated


def _irreducibility_warnings(K: ValuedField, g: Poly) -> List[str]:
    """Cheap reducibility evidence; irreducibility itself is caller-asserted."""
    warnings = []
    if g.degree >= 2 and K.is_zero(g[0]):
        warnings.append("constant term is zero: x divides g")
    if K.kind == "Qp" and 2 <= g.degree <= 3:
        # rational root test over Q: candidates divide the constant term
        c0 = g[0]
        if c0 != 0 and c0.denominator == 1 and all(g[k].denominator == 1 for k in range(g.degree + 1)):
            n0 = abs(c0.numerator)
            for r in range(1, n0 + 1):
                if n0 % r:
                    continue
                for s in (r, -r):
                    if K.is_zero(g.evaluate(Q(s))):
                        warnings.append(f"rational root {s}: g is reducible over Q")
                        return warnings
    return warnings


def mac_lane_chains(K: ValuedField, g: Poly, max_depth: int = 32,
                    max_limit_probes: int = 8) -> ExtensionReport:
    """All extensions of v to K[x]/(g), as branches of augmentation chains."""
    if not g.is_monic():
        raise NotMonic("g must be monic")
    if K.residue_field.order is None:
        raise ResidueUnsupported(
            "branch exploration needs a finite residue field (Qp, Fq(t), FpPerf)")
    n = g.degree
    if n < 1:
        raise NotMonic("g must be nonconstant")
    warnings = _irreducibility_warnings(K, g)
    bounds = {"max_depth": max_depth, "max_limit_probes": max_limit_probes}

    branches: List[Branch] = []

    if n == 1:
        chain = InductiveValuation.depth_zero(K, K.neg(g[0]), INFINITY)
        branches.append(Branch(chain, TERMINATED, 1, 1, 1, None,
                               [chain.phi], [], 0))
        return _assemble(K, g, n, branches, warnings, bounds)

    pts = {k: K.valuate(c) for k, c in enumerate(g.coeffs) if not K.is_zero(c)}
    work: List[Tuple[InductiveValuation, int, int, List[dict], Optional[InductiveValuation]]] = []
    if 0 not in pts:
        work.append((InductiveValuation.depth_zero(K, K.zero(), INFINITY), 0, 0, [], None))
    for gamma in polygon_gammas(pts):
        node = InductiveValuation.depth_zero(K, K.zero(), gamma)
        work.append((node, 0, 0, [_traj_entry(node, g)], None))

    while work:
        node, stag, sep, traj, prev_node = work.pop(0)
        if node.is_terminal():
            branches.append(_finish_terminated(node))
            continue
        if stag >= max_limit_probes or sep >= 2:
            branches.append(_finish_limit(node, stag, traj, prev_node))
            continue
        if node.depth > max_depth:
            raise DepthExceeded(f"chain depth exceeded {max_depth}")
        children, separated = _children(node, g)
        for child in children:
            if child.is_terminal():
                work.append((child, 0, 0, [], node))
            elif child.degree == node.degree:
                sep2 = sep + 1 if separated else 0
                work.append((child, stag + 1, sep2,
                             traj + [_traj_entry(child, g)], node))
            else:
                work.append((child, 0, 0, [_traj_entry(child, g)], node))

    return _assemble(K, g, n, branches, warnings, bounds)


def _finish_terminated(node: InductiveValuation) -> Branch:
    e = node.ramification_index()
    f = node.inertia_degree()
    nb = node.degree
    assert nb % (e * f) == 0
    return Branch(node, TERMINATED, e, f, nb // (e * f), None,
                  [st.phi for st in node.stages()], [], 0)


def _finish_limit(node: InductiveValuation, stag: int, traj: List[dict],
                  prev_node: Optional[InductiveValuation]) -> Branch:
    e = node.ramification_index()
    f = node.inertia_degree()
    return Branch(node, LIMIT_SUSPECTED, e, f, None, None,
                  [st.phi for st in node.stages()], traj, stag, prev_node)


def _assemble(K, g, n, branches: List[Branch], warnings, bounds) -> ExtensionReport:
    # branches arrive in breadth-first exploration order, which is
    # deterministic for fixed (g, bounds)
    total_ef = sum(b.e * b.f for b in branches)
    stalled = [b for b in branches if b.status == LIMIT_SUSPECTED]
    if stalled:
        if total_ef == n:
            for b in stalled:
                b.d = 1
        elif len(branches) == 1:
            b = branches[0]
            ratio = n // (b.e * b.f) if n % (b.e * b.f) == 0 else 2
            b.d_lower = max(2, ratio)
        else:
            for b in stalled:
                b.d_lower = 1
    report = ExtensionReport(K, g, n, branches, len(branches) == 1, warnings, bounds)
    return report


# ---------------------------------------------------------------------------
# Branch refinement (used by scans and stability queries)
# ---------------------------------------------------------------------------


def _extend_trajectory(report: ExtensionReport, branch: Branch,
                       want: int) -> List[dict]:
    """Refinement probes at the stagnant degree, extended to ``want`` entries
    past the entry node.  Stops early if the branch splits or terminates."""
    traj = list(branch.trajectory)
    node = branch.chain
    g = report.g
    while len(traj) - 1 < want:
        children, _sep = _children(node, g)
        if len(children) != 1:
            break
        child = children[0]
        if child.is_terminal() or child.degree != node.degree:
            break
        traj.append(_traj_entry(child, g))
        node = child
    return traj


def induced_value(report: ExtensionReport, branch_index: int, f: Poly):
    """nu(f) = v(f(eta)) along a branch; UNSTABLE when the stalled prefix
    has not yet pinned the value down."""
    b = _branch(report, branch_index)
    if b.status == TERMINATED:
        return b.chain.evaluate(f)
    if b.prev_chain is not None:
        v1 = b.prev_chain.evaluate(f)
        v2 = b.chain.evaluate(f)
        if v1 == v2:
            return v2
    return UNSTABLE


def _branch(report: ExtensionReport, i: int) -> Branch:
    if not 0 <= i < len(report.branches):
        raise IndexOutOfRange(f"branch {i} of {len(report.branches)}")
    return report.branches[i]


def tangent_direction(branch: Branch, t: int) -> Tuple[Poly, int]:
    """(representative, degree) of the tangent direction entering stage t."""
    stages = branch.chain.stages()
    if not 0 <= t < len(stages):
        raise IndexOutOfRange(f"step {t} of {len(stages)}")
    return stages[t].phi, stages[t].phi.degree


def psi_m_scan(report: ExtensionReport, branch_index: int, m: int,
               probe_budget: int = 8) -> ScanResult:
    """Scan the key polynomials of degree m along a branch.

    Returns the chain's maximal-value degree-m key when the chain moved
    past degree m (or terminated there), the strictly increasing
    approximant values when the branch stalls at degree m, and EMPTY when
    no degree-m key arises.
    """
    if m < 1:
        raise ZeroInput("degree must be >= 1")
    b = _branch(report, branch_index)
    stages = b.chain.stages()
    match = [st for st in stages if st.degree == m]
    if not match:
        return ScanResult(m, "EMPTY")
    st = match[-1]
    stalled_here = (b.status == LIMIT_SUSPECTED and st is stages[-1])
    if stalled_here:
        traj = _extend_trajectory(report, b, probe_budget)
        evidence = tuple((entry["key"], entry["gamma"])
                         for entry in traj[1:probe_budget + 1])
        return ScanResult(m, "UNBOUNDED_EVIDENCE", evidence=evidence)
    val = induced_value(report, branch_index, st.phi)
    if val is UNSTABLE:  # pragma: no cover - stable for completed stages
        val = b.chain.evaluate(st.phi)
    return ScanResult(m, "MAX_ATTAINED", max_poly=st.phi, max_value=val)


@dataclass(frozen=True)
class NoSequence:
    reason: str  # "BRANCHED" | "DEFECT_SUSPECTED"


def finite_complete_sequence(report: ExtensionReport, branch_index: int = 0,
                             check_samples: int = 100, seed: int = 20240801):
    """The finite complete sequence of key polynomials, when one exists.

    Exists iff the report is unibranched with a terminated, defect-one
    branch; the sequence is then the chain key of each occurring degree
    (ending in g itself).  The complete-set contract is spot-checked on a
    random family before returning.
    """
    if not report.unibranched:
        return NoSequence("BRANCHED")
    b = _branch(report, branch_index)
    if b.status != TERMINATED or b.d != 1:
        return NoSequence("DEFECT_SUSPECTED")
    seq = [st.phi for st in b.chain.stages()]
    nu = b.chain.evaluate
    K = report.K
    rng = random.Random(seed)
    for _ in range(check_samples):
        degf = rng.randrange(1, report.n + 3)
        f = Poly(K, [K.from_int(rng.randrange(-9, 10)) for _ in range(degf + 1)])
        if f.is_zero():
            continue
        ok = False
        for q in reversed(seq):
            if q.degree <= max(f.degree, 1):
                if truncation_eval(nu, q, f) == nu(f):
                    ok = True
                    break
        assert ok, f"complete-set contract failed on {f}"
    return seq


def defect(report: ExtensionReport) -> List[dict]:
    """Per-branch defect data: exact value or lower bound, plus the
    stagnation probes backing a limit suspicion."""
    out = []
    for i, b in enumerate(report.branches):
        entry: Dict[str, object] = {"branch": i, "status": b.status}
        if b.d is not None:
            entry["d"] = b.d
        else:
            entry["d_lower_bound"] = b.d_lower
            entry["limit_steps"] = [
                {"key": str(e["key"]), "gamma": value_str(e["gamma"])}
                for e in b.trajectory]
        out.append(entry)
    return out
