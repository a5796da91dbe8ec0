"""Inductive valuations on K[x]: depth-zero valuations and augmentations.

A valuation is an immutable chain of stages.  Stage 0 is a depth-zero
valuation w_(a,gamma) acting through (x-a)-expansions; each later stage
[mu; phi, gamma] acts through phi-expansions of the previous stage.  The
chain keeps MacLane-Vaquie shape: key degrees strictly increase, so
augmenting by a key of the same degree collapses onto the previous stage.

Each stage carries exact graded-ring data:

* its relative ramification index e (of gamma over the previous group),
* its residue field kappa, a tower of finite extensions of Kv built from
  the irreducible residual polynomial chosen at each augmentation,
* a reduction map sending f to its residual polynomial H together with a
  monomial normalization (i0, w0), so that the initial form of f is
  s^i0 * U(w0) * H(y), where s is the initial form of the key, U is the
  canonical family of graded units built from the base field's
  multiplicative section and lower keys, and y = s^e * U(-e*gamma).

Because the canonical unit family is only multiplicative at the base,
products of units at higher stages pick up explicit correction scalars
("twists", powers of the residual generators); these are computed
recursively and are what keeps reduction multiplicative, hence residual
factorizations meaningful.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import fpoly
from .errors import (ImperfectResidueUnsupported, InfiniteGammaInInterior,
                     NotAKeyPolynomial, ValueNotIncreased, ZeroInput)
from .ffield import ExtField, Field, is_irreducible
from .fields import ValuedField
from .poly import Poly, phi_expansion
from .values import INFINITY, Q, Value, ValueGroup, is_inf, value_str, vadd, vmul


@dataclass(frozen=True)
class GradedForm:
    """Normalized initial form: s^i0 * U(w0) * H(y), of grade ``value``."""

    H: Optional[tuple]  # residual polynomial over kappa; None when value = oo
    i0: int
    w0: Optional[Q]
    value: Value


class InductiveValuation:
    __slots__ = ("K", "prev", "phi", "gamma", "center", "m", "e_rel",
                 "prev_group", "group", "kappa", "rbar", "fdeg", "zgen",
                 "depth", "_twist_cache", "_red_cache", "_eval_cache",
                 "_exp_cache")

    # -- construction ---------------------------------------------------------

    def __init__(self):
        raise TypeError("use depth_zero() or augment()")

    @staticmethod
    def _new() -> "InductiveValuation":
        node = object.__new__(InductiveValuation)
        node._twist_cache = {}
        node._red_cache = {}
        node._eval_cache = {}
        node._exp_cache = {}
        return node

    @staticmethod
    def depth_zero(K: ValuedField, center, gamma: Value) -> "InductiveValuation":
        """The valuation min_k { v(a_k) + k*gamma } on (x-center)-expansions.

        gamma = INFINITY is allowed only as the terminal valuation of a
        degree-one extension (the chain then has support x - center).
        """
        node = InductiveValuation._new()
        node.K = K
        node.prev = None
        node.center = center
        node.phi = Poly(K, (K.neg(center), K.one()))
        node.gamma = gamma
        node.m = 1
        node.depth = 0
        node.prev_group = K.value_group
        if is_inf(gamma):
            node.e_rel = 1
            node.group = K.value_group
        else:
            node.e_rel = K.value_group.ram_index(gamma)
            node.group = K.value_group.join([gamma])
        node.kappa = K.residue_field
        node.rbar = None
        node.fdeg = 1
        node.zgen = None
        return node

    def augment(self, phi: Poly, gamma: Value, *, _rbar=None) -> "InductiveValuation":
        """The ordinary augmentation [self; phi, gamma].

        phi must be a MacLane-Vaquie key polynomial for self (monic, with
        minimal-degree expansion behavior and irreducible residual), and
        gamma must strictly exceed self(phi).  Augmenting by a key of the
        same degree collapses onto the previous stage, which keeps the
        chain in MLV shape.
        """
        K = self.K
        if self.is_terminal():
            raise NotAKeyPolynomial("cannot augment past an infinite value")
        if not phi.is_monic() or phi.degree < 1:
            raise NotAKeyPolynomial("key polynomials are monic of degree >= 1")
        if phi.degree % self.m != 0:
            raise NotAKeyPolynomial(
                f"deg {phi.degree} is not a multiple of deg(mu) = {self.m}")
        cur = self.evaluate(phi)
        if is_inf(cur) or (not is_inf(gamma) and gamma <= cur):
            raise ValueNotIncreased(
                f"gamma = {value_str(gamma)} must exceed mu(phi) = {value_str(cur)}")
        if phi.degree == self.m:
            base = self.prev
            if base is None:
                center = K.neg(phi[0])
                return InductiveValuation.depth_zero(K, center, gamma)
            # same-degree refinement: the residual with respect to the
            # collapse base is unchanged in class but must be recomputed
            # over the base's residue field
            rbar = base._certify_key(phi)
        else:
            base = self
            rbar = _rbar if _rbar is not None else self._certify_key(phi)
        return base._make_child(phi, gamma, rbar)

    def _make_child(self, phi: Poly, gamma: Value, rbar: tuple) -> "InductiveValuation":
        node = InductiveValuation._new()
        node.K = self.K
        node.prev = self
        node.center = None
        node.phi = phi
        node.gamma = gamma
        node.m = phi.degree
        node.depth = self.depth + 1
        node.prev_group = self.group
        if is_inf(gamma):
            node.e_rel = 1
            node.group = self.group
        else:
            node.e_rel = self.group.ram_index(gamma)
            node.group = self.group.join([gamma])
        node.rbar = tuple(rbar)
        node.fdeg = fpoly.deg(node.rbar)
        if node.fdeg > 1:
            node.kappa = ExtField(self.kappa, node.rbar, varname=f"z{node.depth}")
            node.zgen = node.kappa.gen()
        else:
            node.kappa = self.kappa
            node.zgen = self.kappa.neg(node.rbar[0])
        assert not node.kappa.is_zero(node.zgen), "residual generator must be a unit"
        return node

    def _certify_key(self, phi: Poly) -> tuple:
        """Residual polynomial of a key candidate over self, after checks."""
        gr = self.graded_reduction(phi)
        if is_inf(gr.value):
            raise NotAKeyPolynomial("candidate lies in the support")
        ntop = phi.degree // self.m
        H = gr.H
        if gr.i0 != 0 or fpoly.deg(H) * self.e_rel != ntop or \
                self.kappa.is_zero(H[0]):
            # min not attained at both ends of the expansion: either
            # equivalence-divisible by the current key or not minimal
            raise NotAKeyPolynomial("candidate is not nu-minimal for this valuation")
        rbar = fpoly.monic(self.kappa, H)
        if fpoly.deg(rbar) == 1:
            return rbar
        if self.kappa.order is None:
            raise ImperfectResidueUnsupported(
                "residual factorization over an imperfect residue field")
        if not is_irreducible(self.kappa, rbar):
            raise NotAKeyPolynomial("residual polynomial is reducible")
        return rbar

    # -- chain structure -------------------------------------------------------

    def stages(self) -> List["InductiveValuation"]:
        out = []
        node = self
        while node is not None:
            out.append(node)
            node = node.prev
        out.reverse()
        return out

    @property
    def degree(self) -> int:
        """deg(mu): the degree of its key polynomial."""
        return self.m

    def is_terminal(self) -> bool:
        return is_inf(self.gamma)

    def chain_str(self) -> str:
        parts = []
        for i, st in enumerate(self.stages()):
            base = "v" if i == 0 else f"mu{i-1}"
            parts.append(f"mu{i}=[{base}; {st.phi.to_str()}, {value_str(st.gamma)}]")
        return " -> ".join(parts)

    # -- evaluation -------------------------------------------------------------

    def expansion(self, f: Poly) -> List[Poly]:
        """Coefficients of the phi-expansion of f (constants at depth zero)."""
        hit = self._exp_cache.get(f.coeffs)
        if hit is not None:
            return hit
        if self.prev is None:
            out = [Poly.const(self.K, c) for c in f.taylor_coeffs(self.center)]
        else:
            out = list(phi_expansion(f, self.phi).coeffs)
        if len(self._exp_cache) < 512:
            self._exp_cache[f.coeffs] = out
        return out

    def _coeff_value(self, c: Poly) -> Value:
        if self.prev is None:
            return self.K.valuate(c[0]) if not c.is_zero() else INFINITY
        return self.prev.evaluate(c)

    def evaluate(self, f: Poly) -> Value:
        if f.is_zero():
            return INFINITY
        key = f.coeffs
        hit = self._eval_cache.get(key)
        if hit is not None:
            return hit
        best: Optional[Value] = None
        for k, c in enumerate(self.expansion(f)):
            if c.is_zero():
                continue
            v = vadd(self._coeff_value(c), vmul(k, self.gamma))
            if best is None or v < best:
                best = v
        out = INFINITY if best is None else best
        if len(self._eval_cache) < 4096:
            self._eval_cache[key] = out
        return out

    __call__ = evaluate

    # -- graded units and twists -------------------------------------------------
    #
    # U_self(w), w in prev_group, is the canonical graded unit: at depth
    # zero it is the initial form of the base field's multiplicative
    # section; above, U_self(w) = s_prev^i * U_prev(w') for the unique
    # split w = i*gamma_prev + w' with 0 <= i < e_prev.  _twist(w, v)
    # returns the kappa-scalar U(w)U(v)/U(w+v).

    def _split(self, w: Q) -> Tuple[int, Q]:
        """w = i*gamma + w' with i in [0, e_rel) and w' in prev_group."""
        if is_inf(self.gamma):
            return 0, w
        for i in range(self.e_rel):
            wp = w - i * self.gamma
            if wp == 0 or self.prev_group.contains(wp):
                return i, wp
        raise ArithmeticError(f"{w} not in the value group of the stage")

    def _embed(self, x):
        """kappa_prev -> kappa."""
        if self.fdeg > 1:
            return self.kappa.embed(x)
        return x

    def _twist(self, w: Q, v: Q):
        if self.prev is None:
            return self.kappa.one()
        key = (w, v) if w <= v else (v, w)
        hit = self._twist_cache.get(key)
        if hit is not None:
            return hit
        rho = self.prev
        iw, wp = rho._split(w)
        iv, vp = rho._split(v)
        is_, sp = rho._split(w + v)
        delta, rem = divmod(iw + iv - is_, rho.e_rel)
        assert rem == 0 and delta in (0, 1)
        tau = self._embed(rho._twist(wp, vp))
        if delta == 1:
            e_gamma = rho.e_rel * rho.gamma
            kap = self.kappa
            tau = kap.mul(tau, self.zgen)
            tau = kap.mul(tau, kap.inv(self._embed(rho._twist(-e_gamma, e_gamma))))
            tau = kap.mul(tau, self._embed(rho._twist(e_gamma, wp + vp)))
        self._twist_cache[key] = tau
        return tau

    def _ymul(self, mpow: int):
        """Scalar relating s^(e*m) to y^m * U(m*e*gamma) in the reduction."""
        kap = self.kappa
        if mpow == 0:
            return kap.one()
        e_gamma = self.e_rel * self.gamma
        tau = kap.one()
        for j in range(1, mpow):
            tau = kap.mul(tau, self._twist(-j * e_gamma, -e_gamma))
        return kap.mul(tau, self._twist(-mpow * e_gamma, mpow * e_gamma))

    # -- reduction and lifting ------------------------------------------------------

    def _coef(self, c: Poly):
        """(b, w) with in(c) = b * U(w), for 0 != deg c < m."""
        K = self.K
        if self.prev is None:
            a = c[0]
            w = K.valuate(a)
            b = K.residue(K.div(a, K.canonical_unit(w)))
            return b, w
        gr = self.prev.graded_reduction(c)
        kap = self.kappa
        b = kap.zero()
        for h in reversed(gr.H):
            b = kap.add(kap.mul(b, self.zgen), self._embed(h))
        return b, gr.value

    def _uncoef(self, b, w: Q) -> Poly:
        """A polynomial of degree < m whose _coef is (b, w)."""
        K = self.K
        if self.prev is None:
            return Poly.const(K, K.mul(K.lift(b), K.canonical_unit(w)))
        if self.fdeg > 1:
            coeffs = list(b)
        else:
            coeffs = [b]
        i1, w1 = self.prev._split(w)
        return self.prev._lift_homog(coeffs, i1, w1)

    def graded_reduction(self, f: Poly) -> GradedForm:
        """Normalized initial form of f at this stage."""
        key = f.coeffs
        hit = self._red_cache.get(key)
        if hit is not None:
            return hit
        out = self._graded_reduction_impl(f)
        if len(self._red_cache) < 1024:
            self._red_cache[key] = out
        return out

    def _graded_reduction_impl(self, f: Poly) -> GradedForm:
        kap = self.kappa
        if f.is_zero():
            return GradedForm(None, 0, None, INFINITY)
        if is_inf(self.gamma):
            c = f.mod(self.phi)
            if c.is_zero():
                return GradedForm(None, 0, None, INFINITY)
            b, w = self._coef(c)
            return GradedForm((b,) if not kap.is_zero(b) else (), 0, w, w)
        cc = self.expansion(f)
        data = {}
        best: Optional[Value] = None
        for k, c in enumerate(cc):
            if c.is_zero():
                continue
            b, w = self._coef(c)
            grade = vadd(w, vmul(k, self.gamma))
            data[k] = (b, w)
            if best is None or grade < best:
                best = grade
        effective = [k for k, (b, w) in sorted(data.items())
                     if vadd(w, vmul(k, self.gamma)) == best]
        k0 = effective[0]
        i0 = k0 % self.e_rel
        w0 = best - i0 * self.gamma
        H: Dict[int, object] = {}
        for k in effective:
            b, w = data[k]
            assert (k - i0) % self.e_rel == 0
            mpow = (k - i0) // self.e_rel
            num = kap.mul(b, self._twist(w, mpow * self.e_rel * self.gamma))
            H[mpow] = kap.div(num, self._ymul(mpow))
        coeffs = [kap.zero()] * (max(H) + 1)
        for mpow, b in H.items():
            coeffs[mpow] = b
        return GradedForm(fpoly.norm(kap, coeffs), i0, w0, best)

    def _lift_homog(self, H: Sequence, i0: int, w0: Q) -> Poly:
        """Inverse of graded_reduction on homogeneous data."""
        kap = self.kappa
        out = Poly(self.K, ())
        for mpow, h in enumerate(H):
            if kap.is_zero(h):
                continue
            w_m = w0 - mpow * self.e_rel * self.gamma
            b = kap.div(kap.mul(h, self._ymul(mpow)),
                        self._twist(w_m, mpow * self.e_rel * self.gamma))
            out = out + self._uncoef(b, w_m) * (self.phi ** (i0 + mpow * self.e_rel))
        return out

    def key_from_residual(self, rbar: tuple) -> Poly:
        """Monic key polynomial of degree e*deg(rbar)*m lifting the monic
        irreducible residual polynomial rbar."""
        if is_inf(self.gamma):
            raise NotAKeyPolynomial("no new keys above an infinite value")
        kap = self.kappa
        fR = fpoly.deg(rbar)
        w0 = fR * self.e_rel * self.gamma
        lam = kap.inv(self._ymul(fR))
        H = [kap.mul(lam, c) for c in rbar]
        Q_ = self._lift_homog(H, 0, w0)
        assert Q_.degree == fR * self.e_rel * self.m and Q_.is_monic()
        return Q_

    # -- residual data, public invariants ------------------------------------------

    def residual_polynomial(self, f: Poly) -> Tuple[Field, tuple]:
        """(kappa, residual polynomial of f over kappa)."""
        gr = self.graded_reduction(f)
        if is_inf(gr.value):
            raise ZeroInput("element lies in the support")
        return self.kappa, gr.H

    def residual_field(self) -> Tuple[Field, int]:
        """(kappa, [kappa : Kv])."""
        d = 1
        for st in self.stages():
            d *= st.fdeg
        return self.kappa, d

    def value_group(self) -> ValueGroup:
        for st in self.stages():
            if is_inf(st.gamma) and st is not self:
                raise InfiniteGammaInInterior("interior stage with infinite value")
        if is_inf(self.gamma):
            return self.prev_group
        return self.group

    def ram_indices(self) -> List[int]:
        return [st.e_rel for st in self.stages() if not is_inf(st.gamma)]

    def inertia_indices(self) -> List[int]:
        return [st.fdeg for st in self.stages() if st.depth > 0]

    def ramification_index(self) -> int:
        out = 1
        for e in self.ram_indices():
            out *= e
        return out

    def inertia_degree(self) -> int:
        out = 1
        for f in self.inertia_indices():
            out *= f
        return out

    # -- key polynomial tests ----------------------------------------------------

    def is_key(self, f: Poly) -> bool:
        """MacLane's effective key test for this valuation."""
        if not f.is_monic() or f.degree < 1 or f.degree % self.m:
            return False
        if is_inf(self.gamma):
            return False
        cc = self.expansion(f)
        ntop = len(cc) - 1
        top = cc[ntop]
        if not (top.degree == 0 and self.K.eq(top[0], self.K.one())):
            return False
        vf = self.evaluate(f)
        if is_inf(vf) or vf != vmul(ntop, self.gamma):
            return False  # not nu-minimal
        v0 = self._coeff_value(cc[0]) if cc and not cc[0].is_zero() else INFINITY
        if v0 > vf:
            # equivalence-divisible by the current key
            return ntop == 1
        try:
            self._certify_key(f)
        except NotAKeyPolynomial:
            return False
        return True

    def equiv(self, f: Poly, g: Poly) -> bool:
        """nu-equivalence: in(f) = in(g), i.e. nu(f-g) > nu(f) = nu(g)."""
        if f.is_zero() or g.is_zero():
            raise ZeroInput("equivalence is defined for nonzero polynomials")
        if f == g:
            return True
        vf, vg = self.evaluate(f), self.evaluate(g)
        if vf != vg:
            return False
        return self.evaluate(f - g) > vf

    def equiv_divides(self, h: Poly, f: Poly) -> bool:
        """Whether the monic h equivalence-divides f at this valuation."""
        r = f.mod(h)
        if r.is_zero():
            return True
        return self.evaluate(r) > self.evaluate(f)

    def is_minimal(self, f: Poly, trials: int = 24, seed: int = 7) -> bool:
        """Probe-certified strong minimality of a monic f.

        Checks (a) the expansion-min identity nu(h) = min_k nu(h_k f^k)
        over a probe family, and (b) that no lower-degree monic probe
        equivalence-divides f.  A failure is a definitive no; a pass is
        certification over the family only.
        """
        if not f.is_monic() or f.degree < 1:
            raise NotAKeyPolynomial("minimality applies to monic nonconstant f")
        K = self.K
        rng = random.Random(seed)
        probes: List[Poly] = []
        xpol = Poly.x(K)
        for j in range(0, 2 * f.degree + 1):
            for k in range(0, 2):
                probe = Poly.monomial(K, K.one(), j) * (f ** k)
                if probe.degree <= 2 * f.degree and not probe.is_zero():
                    probes.append(probe)
        for _ in range(trials):
            cc = [K.from_int(rng.randrange(-9, 10)) for _ in range(2 * f.degree + 1)]
            probes.append(Poly(K, cc))
        for h in probes:
            if h.is_zero():
                continue
            exp = phi_expansion(h, f)
            vals = []
            for k, c in enumerate(exp.coeffs):
                if c.is_zero():
                    continue
                vals.append(vadd(self.evaluate(c), vmul(k, self.evaluate(f))))
            if vals and self.evaluate(h) != min(vals):
                return False
        # lower-degree divisor probes
        divisors: List[Poly] = [st.phi for st in self.stages() if st.phi.degree < f.degree]
        divisors.append(xpol)
        for n in (-2, -1, 0, 1, 2):
            divisors.append(xpol - Poly.const(K, K.from_int(n)))
        for h in divisors:
            if 1 <= h.degree < f.degree and h.is_monic():
                if self.equiv_divides(h, f):
                    return False
        return True


def truncation_eval(nu: Callable[[Poly], Value], q: Poly, f: Poly) -> Value:
    """nu_q(f) = min_k nu(f_k q^k) over the q-expansion of f.

    ``nu`` is any valuation oracle on polynomials (an InductiveValuation,
    an induced-valuation closure from the engine, ...).
    """
    if q.degree < 1:
        raise ZeroInput("truncation base must be nonconstant")
    exp = phi_expansion(f, q)
    if not exp.coeffs:
        return INFINITY
    vq = nu(q)
    best: Optional[Value] = None
    for k, c in enumerate(exp.coeffs):
        if c.is_zero():
            continue
        v = vadd(nu(c), vmul(k, vq))
        if best is None or v < best:
            best = v
    return INFINITY if best is None else best
