"""Dense univariate polynomial helpers over an arbitrary coefficient field.

Polynomials are tuples of field elements with no trailing zeros; () is the
zero polynomial.  Every function takes the coefficient field object ``F``
first; ``F`` must provide zero/one/add/sub/mul/neg/inv/eq/is_zero/from_int
(see ffield.Field).  The same toolbox serves finite fields, rational
function fields and the valued base fields.
"""

from __future__ import annotations

from typing import Sequence, Tuple

Coeffs = Tuple  # tuple of field elements


def norm(F, cc) -> Coeffs:
    cc = list(cc)
    while cc and F.is_zero(cc[-1]):
        cc.pop()
    return tuple(cc)


def zero(F) -> Coeffs:
    return ()


def const(F, a) -> Coeffs:
    return () if F.is_zero(a) else (a,)


def from_ints(F, ints: Sequence[int]) -> Coeffs:
    return norm(F, [F.from_int(n) for n in ints])


def x(F) -> Coeffs:
    return (F.zero(), F.one())


def deg(f: Coeffs) -> int:
    """Degree, with the zero polynomial mapped to -1."""
    return len(f) - 1


def is_zero(f: Coeffs) -> bool:
    return not f


def lc(F, f):
    if not f:
        return F.zero()
    return f[-1]


def eq(F, f, g) -> bool:
    return len(f) == len(g) and all(F.eq(a, b) for a, b in zip(f, g))


def is_monic(F, f) -> bool:
    return bool(f) and F.eq(f[-1], F.one())


def add(F, f, g) -> Coeffs:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, b in enumerate(g):
        out[i] = F.add(out[i], b)
    return norm(F, out)


def neg(F, f) -> Coeffs:
    return tuple(F.neg(a) for a in f)


def sub(F, f, g) -> Coeffs:
    return add(F, f, neg(F, g))


def smul(F, a, f) -> Coeffs:
    if F.is_zero(a):
        return ()
    return norm(F, [F.mul(a, b) for b in f])


def mul(F, f, g) -> Coeffs:
    if not f or not g:
        return ()
    out = [F.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return norm(F, out)


def mul_xk(F, f, k: int) -> Coeffs:
    if not f:
        return ()
    return (F.zero(),) * k + tuple(f)


def divmod_(F, f, g) -> Tuple[Coeffs, Coeffs]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    gl_inv = F.inv(g[-1])
    r = list(f)
    q = [F.zero()] * max(0, len(f) - len(g) + 1)
    dg = len(g) - 1
    while len(r) >= len(g) and r:
        while r and F.is_zero(r[-1]):
            r.pop()
        if len(r) < len(g):
            break
        c = F.mul(r[-1], gl_inv)
        k = len(r) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = F.sub(r[k + i], F.mul(c, b))
        r.pop()
    return norm(F, q), norm(F, r)


def mod(F, f, g) -> Coeffs:
    return divmod_(F, f, g)[1]


def monic(F, f) -> Coeffs:
    if not f:
        return ()
    return smul(F, F.inv(f[-1]), f)


def gcd_(F, f, g) -> Coeffs:
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def xgcd(F, f, g):
    """(d, s, t) with s*f + t*g = d, d monic gcd."""
    r0, r1 = f, g
    s0, s1 = const(F, F.one()), ()
    t0, t1 = (), const(F, F.one())
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return (), s0, t0
    c = F.inv(r0[-1])
    return smul(F, c, r0), smul(F, c, s0), smul(F, c, t0)


def pow_(F, f, n: int) -> Coeffs:
    out = const(F, F.one())
    base = f
    while n > 0:
        if n & 1:
            out = mul(F, out, base)
        base = mul(F, base, base)
        n >>= 1
    return out


def powmod(F, f, n: int, m) -> Coeffs:
    out = mod(F, const(F, F.one()), m)
    base = mod(F, f, m)
    while n > 0:
        if n & 1:
            out = mod(F, mul(F, out, base), m)
        base = mod(F, mul(F, base, base), m)
        n >>= 1
    return out


def deriv(F, f) -> Coeffs:
    return norm(F, [F.mul(F.from_int(k), f[k]) for k in range(1, len(f))])


def hasse(F, f, i: int) -> Coeffs:
    """i-th Hasse derivative: x^k maps to binom(k, i) x^(k-i)."""
    from math import comb

    if i == 0:
        return tuple(f)
    out = []
    for k in range(i, len(f)):
        out.append(F.mul(F.from_int(comb(k, i)), f[k]))
    return norm(F, out)


def evaluate(F, f, a):
    acc = F.zero()
    for c in reversed(f):
        acc = F.add(F.mul(acc, a), c)
    return acc


def taylor_shift(F, f, a) -> Coeffs:
    """Coefficients of f in powers of (x - a), by repeated synthetic division."""
    cc = list(f)
    out = []
    while cc:
        q = []
        acc = F.zero()
        for c in reversed(cc):
            acc = F.add(F.mul(acc, a), c)
            q.append(acc)
        out.append(q.pop())
        cc = list(reversed(q))
    return norm(F, out)


def to_str(F, f, var: str = "x") -> str:
    if not f:
        return "0"
    parts = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if F.is_zero(c):
            continue
        cs = F.elem_str(c)
        if k == 0:
            parts.append(cs)
        else:
            xk = var if k == 1 else f"{var}^{k}"
            if cs == "1":
                parts.append(xk)
            elif cs == "-1":
                parts.append(f"-{xk}")
            else:
                if any(op in cs[1:] for op in "+-") or "/" in cs or " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{xk}")
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out
