"""Rational function fields Frac(F[var]) over an arbitrary coefficient field.

Elements are frozen (num, den) pairs of fpoly tuples, gcd-reduced with a
monic denominator.  RatFuncField implements the same Field protocol as
the finite fields, so it can serve as a coefficient field itself (this is
how F_p(c)(t) is built).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from . import fpoly
from .ffield import Field


@dataclass(frozen=True)
class RF:
    num: tuple
    den: tuple


class RatFuncField(Field):
    def __init__(self, base: Field, varname: str):
        self.base = base
        self.varname = varname
        self.char = base.char
        self.order = None

    def make(self, num, den) -> RF:
        B = self.base
        if fpoly.is_zero(den):
            raise ZeroDivisionError("zero denominator in rational function")
        if fpoly.is_zero(num):
            return RF((), (B.one(),))
        if fpoly.deg(num) > 0 and fpoly.deg(den) > 0:
            g = fpoly.gcd_(B, num, den)
            if fpoly.deg(g) > 0:
                num = fpoly.divmod_(B, num, g)[0]
                den = fpoly.divmod_(B, den, g)[0]
        if B.is_one(den[-1]):
            return RF(tuple(num), tuple(den))
        c = B.inv(den[-1])
        return RF(fpoly.smul(B, c, num), fpoly.smul(B, c, den))

    def from_poly(self, num) -> RF:
        return self.make(num, (self.base.one(),))

    def var(self) -> RF:
        return self.from_poly(fpoly.x(self.base))

    def zero(self):
        return RF((), (self.base.one(),))

    def one(self):
        return RF((self.base.one(),), (self.base.one(),))

    def add(self, a: RF, b: RF):
        B = self.base
        num = fpoly.add(B, fpoly.mul(B, a.num, b.den), fpoly.mul(B, b.num, a.den))
        return self.make(num, fpoly.mul(B, a.den, b.den))

    def neg(self, a: RF):
        return RF(fpoly.neg(self.base, a.num), a.den)

    def mul(self, a: RF, b: RF):
        B = self.base
        return self.make(fpoly.mul(B, a.num, b.num), fpoly.mul(B, a.den, b.den))

    def inv(self, a: RF):
        if fpoly.is_zero(a.num):
            raise ZeroDivisionError("inverse of zero rational function")
        return self.make(a.den, a.num)

    def eq(self, a: RF, b: RF):
        return fpoly.eq(self.base, a.num, b.num) and fpoly.eq(self.base, a.den, b.den)

    def is_zero(self, a: RF):
        return fpoly.is_zero(a.num)

    def from_int(self, n: int):
        return RF(fpoly.const(self.base, self.base.from_int(n)), (self.base.one(),))

    def ord_var(self, a: RF) -> Optional[int]:
        """Order of vanishing at var = 0 (None for the zero element)."""
        if fpoly.is_zero(a.num):
            return None
        return _low_deg(self.base, a.num) - _low_deg(self.base, a.den)

    def split_order(self, a: RF) -> Tuple[int, RF]:
        """(k, u) with a = var^k * u and u a unit at var = 0."""
        B = self.base
        kn = _low_deg(B, a.num)
        kd = _low_deg(B, a.den)
        return kn - kd, RF(a.num[kn:], a.den[kd:])

    def residue_at_zero(self, a: RF):
        """Value at var = 0 of an element regular there (base field element)."""
        B = self.base
        k, u = self.split_order(a)
        if k > 0:
            return B.zero()
        if k < 0:
            raise ValueError("pole at the origin")
        return B.div(u.num[0], u.den[0])

    def pth_root(self, a: RF):
        """p-th root when it exists in the field, else None.

        Over a perfect coefficient base, f(v) is a p-th power iff both
        numerator and denominator only involve exponents divisible by p.
        """
        p = self.char
        if p == 0:
            raise ArithmeticError("pth_root in characteristic zero")
        if fpoly.is_zero(a.num):
            return self.zero()

        def root_of(cc):
            if any(not self.base.is_zero(c) for i, c in enumerate(cc) if i % p):
                return None
            return fpoly.norm(self.base, [self.base.pth_root(cc[i]) for i in range(0, len(cc), p)])

        rn = root_of(a.num)
        rd = root_of(a.den)
        if rn is None or rd is None:
            return None
        return self.make(rn, rd)

    def elem_str(self, a: RF) -> str:
        B = self.base
        ns = fpoly.to_str(B, a.num, self.varname)
        if fpoly.eq(B, a.den, (B.one(),)):
            return ns
        ds = fpoly.to_str(B, a.den, self.varname)
        if any(op in ns[1:] for op in "+-") or " " in ns:
            ns = f"({ns})"
        if any(op in ds[1:] for op in "+-") or " " in ds or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    @property
    def key(self):
        return ("RatFunc", self.base.key, self.varname)

    def __repr__(self):
        return f"Frac({self.base!r}[{self.varname}])"


def _low_deg(B, cc) -> int:
    for i, c in enumerate(cc):
        if not B.is_zero(c):
            return i
    raise ValueError("zero polynomial has no valuation")
