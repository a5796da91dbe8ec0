"""Exact valuation values (rationals plus infinity) and rank-1 value groups.

Values are plain ``fractions.Fraction`` objects, with a single shared
``INFINITY`` sentinel adjoined.  Infinity absorbs addition and dominates
every rational in comparisons, so ``min()`` / ``sorted()`` work directly
on mixed lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Union

Q = Fraction


class _Infinity:
    """Top element adjoined to the rational value group (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("mlvkit-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("cannot negate infinity")


INFINITY = _Infinity()

Value = Union[Fraction, _Infinity]


def is_inf(v: Value) -> bool:
    return isinstance(v, _Infinity)


def vadd(a: Value, b: Value) -> Value:
    if is_inf(a) or is_inf(b):
        return INFINITY
    return a + b


def vmul(n: int, g: Value) -> Value:
    """n*g for an integer n >= 0; 0 * INFINITY is 0 by convention."""
    if n == 0:
        return Q(0)
    if is_inf(g):
        return INFINITY
    return n * g


def vmin(values: Iterable[Value]) -> Value:
    best: Optional[Value] = None
    for v in values:
        if best is None or v < best:
            best = v
    if best is None:
        raise ValueError("vmin of empty iterable")
    return best


def value_str(v: Value) -> str:
    if is_inf(v):
        return "inf"
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def value_from_str(s: str) -> Value:
    s = s.strip()
    if s in ("inf", "+inf", "oo", "infinity"):
        return INFINITY
    return Q(s)


def frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """gcd of two rationals: generator of aZ + bZ (nonnegative)."""
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    num = gcd(a.numerator, b.numerator)
    den = (a.denominator * b.denominator) // gcd(a.denominator, b.denominator)
    return Q(num, den)


def _strip_p(n: int, p: int) -> int:
    n = abs(n)
    while n % p == 0:
        n //= p
    return n


@dataclass(frozen=True)
class ValueGroup:
    """A rank-1 value group: either gen*Z or gen*Z[1/p].

    Hull generators are normalized to be p-free in numerator and
    denominator, since gen*Z[1/p] only depends on the p-free part.
    """

    gen: Fraction
    hull: Optional[int] = None  # prime p for gen*Z[1/p], None for gen*Z

    def __post_init__(self):
        if self.gen <= 0:
            raise ValueError("value group generator must be positive")
        if self.hull is not None:
            g = Q(_strip_p(self.gen.numerator, self.hull),
                  _strip_p(self.gen.denominator, self.hull))
            object.__setattr__(self, "gen", g)

    def contains(self, v: Value) -> bool:
        if is_inf(v):
            return False
        r = v / self.gen
        if self.hull is None:
            return r.denominator == 1
        return _strip_p(r.denominator, self.hull) == 1

    def ram_index(self, gamma: Value) -> int:
        """Smallest e >= 1 with e*gamma in the group."""
        if is_inf(gamma):
            return 1
        r = gamma / self.gen
        if self.hull is None:
            return r.denominator
        return _strip_p(r.denominator, self.hull)

    def join(self, gammas: Iterable[Value]) -> "ValueGroup":
        """Group generated by self and finitely many rational values."""
        g = self.gen
        if self.hull is None:
            for x in gammas:
                if is_inf(x):
                    raise ValueError("cannot join infinity into a value group")
                if x != 0:
                    g = frac_gcd(g, x)
            return ValueGroup(g, None)
        p = self.hull
        m = 1
        for x in gammas:
            if is_inf(x):
                raise ValueError("cannot join infinity into a value group")
            if x == 0:
                continue
            den = _strip_p((x / self.gen).denominator, p)
            m = m * den // gcd(m, den)
        return ValueGroup(self.gen / m, p)

    def index_over(self, sub: "ValueGroup") -> int:
        """(self : sub) for a finite-index subgroup of the same kind."""
        if self.hull != sub.hull:
            raise ValueError("groups of different kinds have no finite index")
        r = sub.gen / self.gen
        if r.denominator != 1:
            raise ValueError(f"{sub} is not a subgroup of {self}")
        return r.numerator

    def p_divisible(self, p: int):
        """(True, None) if the group is p-divisible, else (False, witness)."""
        if self.hull is not None and self.hull == p:
            return True, None
        return False, self.gen

    def __str__(self):
        base = value_str(self.gen)
        if self.hull is None:
            return f"({base})Z"
        return f"({base})Z[1/{self.hull}]"
