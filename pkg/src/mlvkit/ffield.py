"""Finite fields GF(p) and extensions GF(p)[z]/(m), with factorization.

Field objects implement a small uniform protocol (zero/one/add/sub/mul/
neg/inv/div/eq/is_zero/from_int/elem_str plus char and order) over plain
element data: integers for prime fields, coefficient tuples for
extensions.  Extensions over extensions give the residue-field towers
that inductive valuations build.

Extension moduli searched here are deterministic: the monic irreducible
of the requested degree whose coefficient vector is smallest in the
base-p integer encoding (constant coefficient least significant).
"""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from . import fpoly


class Field:
    """Abstract coefficient field over hashable element data."""

    char: int = 0
    order: Optional[int] = None  # None for infinite fields

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b) -> bool:
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero())

    def is_one(self, a) -> bool:
        return self.eq(a, self.one())

    def from_int(self, n: int):
        raise NotImplementedError

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one()
        base = a
        while n > 0:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def pth_root(self, a):
        """Inverse of Frobenius where available; None if no root exists."""
        raise NotImplementedError

    def elem_str(self, a) -> str:
        raise NotImplementedError

    @property
    def key(self):
        raise NotImplementedError


class GFp(Field):
    """Prime field; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, -1, self.p)

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def is_zero(self, a):
        # elements are canonical representatives in [0, p)
        return a == 0 or a % self.p == 0

    def is_one(self, a):
        return a == 1

    def from_int(self, n):
        return n % self.p

    def pth_root(self, a):
        return a % self.p  # Frobenius is the identity on GF(p)

    def elem_str(self, a):
        return str(a % self.p)

    @property
    def key(self):
        return ("GFp", self.p)

    def __repr__(self):
        return f"GF({self.p})"


class ExtField(Field):
    """base[z]/(modulus); elements are coefficient tuples over base.

    The modulus is a monic irreducible tuple over ``base``.  Works for
    towers: base may itself be an ExtField.
    """

    def __init__(self, base: Field, modulus: tuple, varname: str = "z"):
        if not fpoly.is_monic(base, modulus) or fpoly.deg(modulus) < 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = tuple(modulus)
        self.degree = fpoly.deg(modulus)
        self.varname = varname
        self.char = base.char
        self.order = None if base.order is None else base.order ** self.degree

    def _red(self, cc) -> tuple:
        return fpoly.mod(self.base, cc, self.modulus)

    def zero(self):
        return ()

    def one(self):
        return (self.base.one(),)

    def gen(self):
        return self._red(fpoly.x(self.base))

    def embed(self, a):
        """Embed a base-field element as a constant."""
        return fpoly.const(self.base, a)

    def add(self, a, b):
        return fpoly.add(self.base, a, b)

    def neg(self, a):
        return fpoly.neg(self.base, a)

    def mul(self, a, b):
        return self._red(fpoly.mul(self.base, a, b))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in extension field")
        d, s, _ = fpoly.xgcd(self.base, a, self.modulus)
        if fpoly.deg(d) != 0:
            raise ArithmeticError("modulus not irreducible")
        return self._red(fpoly.smul(self.base, self.base.inv(d[0]), s))

    def eq(self, a, b):
        return fpoly.eq(self.base, a, b)

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return fpoly.const(self.base, self.base.from_int(n))

    def pth_root(self, a):
        # |F| = p^s, so the inverse of Frobenius is x -> x^(p^(s-1)).
        s = _p_power_exponent(self.order, self.char)
        return self.pow(a, self.char ** (s - 1))

    def elem_str(self, a):
        return fpoly.to_str(self.base, a, self.varname)

    @property
    def key(self):
        return ("Ext", self.base.key, self.modulus, self.varname)

    def __repr__(self):
        if self.order is not None:
            return f"GF({self.order})[{self.varname}]"
        return f"{self.base!r}[{self.varname}]/(...)"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % d == 0:
            return n == d
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _p_power_exponent(q: int, p: int) -> int:
    s = 0
    while q > 1:
        if q % p:
            raise ValueError("field order is not a power of the characteristic")
        q //= p
        s += 1
    return s


def is_irreducible(F: Field, f: tuple) -> bool:
    """Rabin test over a finite field F."""
    n = fpoly.deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    q = F.order
    xp = fpoly.x(F)
    h = fpoly.powmod(F, xp, q ** n, f)
    if not fpoly.eq(F, h, fpoly.mod(F, xp, f)):
        return False
    for ell in _prime_divisors(n):
        h = fpoly.powmod(F, xp, q ** (n // ell), f)
        g = fpoly.gcd_(F, fpoly.sub(F, h, xp), f)
        if fpoly.deg(g) != 0:
            return False
    return True


def _prime_divisors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_irreducible(p: int, degree: int) -> tuple:
    """Deterministic monic irreducible of given degree over GF(p).

    Scans coefficient vectors in increasing base-p integer encoding.
    """
    F = GFp(p)
    if degree == 1:
        return (0, 1)
    for code in range(p ** degree):
        cc = []
        c = code
        for _ in range(degree):
            cc.append(c % p)
            c //= p
        f = tuple(cc) + (1,)
        if is_irreducible(F, f):
            return f
    raise RuntimeError("no irreducible polynomial found")  # pragma: no cover


def GFq(q: int, varname: str = "g") -> Field:
    """The field with q = p^m elements under the deterministic modulus."""
    p, m = _split_prime_power(q)
    if m == 1:
        return GFp(p)
    return ExtField(GFp(p), find_irreducible(p, m), varname)


def _split_prime_power(q: int) -> Tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1:
                raise ValueError("not a prime power")
            return p, m
    raise ValueError(f"{q} is not a prime power")


# ---------------------------------------------------------------------------
# Factorization over finite fields (squarefree / distinct-degree / Cantor-
# Zassenhaus), deterministic via a seed derived from the input.
# ---------------------------------------------------------------------------


def _encode(F: Field, f: tuple) -> int:
    """Stable integer encoding of a polynomial for RNG seeding."""
    parts = []

    def enc(field, a):
        if isinstance(a, int):
            parts.append(a)
        else:
            parts.append(-1)
            for c in a:
                enc(field, c)
            parts.append(-2)

    for c in f:
        enc(F, c)
    h = 0
    for v in parts:
        h = (h * 1000003 + (v + 7)) % (2 ** 61 - 1)
    return h


def poly_pth_root(F: Field, f: tuple) -> tuple:
    """p-th root of f = g(x)^p (valid when f is a polynomial in x^p)."""
    p = F.char
    out = []
    for k in range(0, len(f), p):
        out.append(F.pth_root(f[k]))
    return fpoly.norm(F, out)


def squarefree_decomposition(F: Field, f: tuple) -> List[Tuple[tuple, int]]:
    """[(g_i, m_i)] with f = prod g_i^m_i, each g_i squarefree, over finite F."""
    p = F.char
    out: List[Tuple[tuple, int]] = []

    def rec(g: tuple, mult: int):
        if fpoly.deg(g) <= 0:
            return
        d = fpoly.deriv(F, g)
        if fpoly.is_zero(d):
            rec(poly_pth_root(F, g), mult * p)
            return
        c = fpoly.gcd_(F, g, d)
        w = fpoly.divmod_(F, g, c)[0]
        # w is the squarefree part through multiplicity counting
        i = 1
        while fpoly.deg(w) > 0:
            y = fpoly.gcd_(F, w, c)
            z = fpoly.divmod_(F, w, y)[0]
            if fpoly.deg(z) > 0:
                out.append((z, mult * i))
            w = y
            c = fpoly.divmod_(F, c, y)[0]
            i += 1
        # what is left of c is the part whose factor multiplicities are
        # divisible by p; its own recursion extracts the p-th root
        if fpoly.deg(c) > 0:
            rec(c, mult)

    rec(fpoly.monic(F, f), 1)
    return out


def _equal_degree_split(F: Field, f: tuple, d: int, rng: random.Random) -> tuple:
    """One nontrivial monic factor of squarefree f whose factors all have degree d."""
    q = F.order
    n = fpoly.deg(f)
    p = F.char
    s = _p_power_exponent(q, p)
    while True:
        r = fpoly.norm(F, [_random_elem(F, rng) for _ in range(n)])
        if fpoly.deg(r) < 1:
            continue
        g = fpoly.gcd_(F, r, f)
        if 0 < fpoly.deg(g) < n:
            return g
        if p == 2:
            # trace map into GF(2)
            t = fpoly.mod(F, r, f)
            acc = t
            for _ in range(s * d - 1):
                t = fpoly.powmod(F, t, 2, f)
                acc = fpoly.add(F, acc, t)
            g = fpoly.gcd_(F, acc, f)
        else:
            h = fpoly.powmod(F, r, (q ** d - 1) // 2, f)
            g = fpoly.gcd_(F, fpoly.sub(F, h, fpoly.const(F, F.one())), f)
        if 0 < fpoly.deg(g) < n:
            return g


def _random_elem(F: Field, rng: random.Random):
    if isinstance(F, GFp):
        return rng.randrange(F.p)
    cc = [_random_elem(F.base, rng) for _ in range(F.degree)]
    return fpoly.norm(F.base, cc)


def factor_monic(F: Field, f: tuple) -> List[Tuple[tuple, int]]:
    """Irreducible factorization over a finite field, sorted deterministically.

    Returns [(g, multiplicity)] with monic irreducible g.
    """
    if F.order is None:
        raise ValueError("factorization requires a finite coefficient field")
    f = fpoly.monic(F, f)
    rng = random.Random(_encode(F, f) ^ 0x5EED)
    result: List[Tuple[tuple, int]] = []
    for sf, mult in squarefree_decomposition(F, f):
        # distinct-degree decomposition of the squarefree part
        q = F.order
        h = fpoly.mod(F, fpoly.x(F), sf)
        v = sf
        d = 0
        while fpoly.deg(v) > 0:
            d += 1
            if 2 * d > fpoly.deg(v):
                result.append((v, mult))
                break
            h = fpoly.powmod(F, h, q, v)
            g = fpoly.gcd_(F, fpoly.sub(F, h, fpoly.mod(F, fpoly.x(F), v)), v)
            if fpoly.deg(g) == 0:
                continue
            # split the degree-d part completely
            stack = [g]
            while stack:
                cur = stack.pop()
                if fpoly.deg(cur) == d:
                    result.append((cur, mult))
                    continue
                piece = _equal_degree_split(F, cur, d, rng)
                stack.append(piece)
                stack.append(fpoly.divmod_(F, cur, piece)[0])
            v = fpoly.divmod_(F, v, g)[0]
            h = fpoly.mod(F, h, v)
    result.sort(key=lambda t: _encode(F, t[0]))
    # merge duplicates (can arise when squarefree parts repeat a factor)
    merged: List[Tuple[tuple, int]] = []
    for g, m in result:
        if merged and fpoly.eq(F, merged[-1][0], g):
            merged[-1] = (g, merged[-1][1] + m)
        else:
            merged.append((g, m))
    return merged
