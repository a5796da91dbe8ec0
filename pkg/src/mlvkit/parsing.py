"""Parsers for the CLI surface: field descriptors, elements, polynomials,
graded-ring elements and bivariate rational expressions.

One tokenizer and expression grammar feeds four small evaluators.  The
grammar is the usual one: + - * / with parentheses, and ^ taking an
integer or a parenthesized rational exponent.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional

from . import fpoly, graded
from .errors import ParseError
from .fields import ValuedField, make_field
from .poly import Poly
from .values import Q, value_from_str

_TOKEN_RE = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[-+*/^()])")


def tokenize(s: str) -> List[str]:
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if not m:
            raise ParseError(f"unexpected character {s[pos]!r} at position {pos}")
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: List[str]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, found {got!r}")

    def parse_expr(self):
        node = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.parse_term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.parse_factor()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def parse_factor(self):
        if self.peek() == "-":
            self.next()
            return ("neg", self.parse_factor())
        if self.peek() == "+":
            self.next()
            return self.parse_factor()
        node = self.parse_atom()
        if self.peek() == "^":
            self.next()
            exp = self.parse_exponent()
            node = ("pow", node, exp)
        return node

    def parse_atom(self):
        tok = self.next()
        if tok == "(":
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.isdigit():
            return ("int", int(tok))
        if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
            return ("name", tok)
        raise ParseError(f"unexpected token {tok!r}")

    def parse_exponent(self) -> Fraction:
        neg = False
        if self.peek() == "-":
            self.next()
            neg = True
        tok = self.next()
        if tok == "(":
            num_neg = False
            if self.peek() == "-":
                self.next()
                num_neg = True
            num = self.next()
            if not num.isdigit():
                raise ParseError(f"expected integer exponent, found {num!r}")
            n = -int(num) if num_neg else int(num)
            d = 1
            if self.peek() == "/":
                self.next()
                den = self.next()
                if not den.isdigit():
                    raise ParseError(f"expected integer denominator, found {den!r}")
                d = int(den)
            self.expect(")")
            e = Q(n, d)
        elif tok.isdigit():
            e = Q(int(tok))
        else:
            raise ParseError(f"expected exponent, found {tok!r}")
        return -e if neg else e


def parse_expression(s: str):
    p = _Parser(tokenize(s))
    node = p.parse_expr()
    if p.peek() is not None:
        raise ParseError(f"trailing token {p.peek()!r}")
    return node


# ---------------------------------------------------------------------------
# Field descriptors
# ---------------------------------------------------------------------------

_DESC_RE = re.compile(r"([A-Za-z]+)\(([^)]*)\)")


def parse_field(s: str) -> ValuedField:
    """Qp(2) | Fq(9,t) | FpPerf(3,t) | FpC(2,c,t)."""
    m = _DESC_RE.fullmatch(s.strip())
    if not m:
        raise ParseError(f"bad field descriptor {s!r}")
    name, args = m.group(1), [a.strip() for a in m.group(2).split(",")]
    try:
        if name == "Qp":
            return make_field("Qp", int(args[0]))
        if name == "Fq":
            return make_field("Fqt", int(args[0]))
        if name == "FpPerf":
            return make_field("FpPerf", int(args[0]))
        if name == "FpC":
            return make_field("Fpct", int(args[0]))
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad field descriptor {s!r}: {exc}") from exc
    raise ParseError(f"unknown field kind {name!r}")


# ---------------------------------------------------------------------------
# Elements and polynomials
# ---------------------------------------------------------------------------


def _elem_pow(K: ValuedField, val, exp: Fraction):
    if exp.denominator == 1:
        return K.pow(val, exp.numerator)
    v = K.valuate(val)
    if not K.eq(val, K.canonical_unit(v)):
        raise ParseError("fractional exponents apply to powers of t only")
    return K.canonical_unit(v * exp)


def eval_element(node, K: ValuedField):
    kind = node[0]
    if kind == "int":
        return K.from_int(node[1])
    if kind == "name":
        name = node[1]
        if name == "t" and hasattr(K, "t"):
            return K.t()
        if name == "c" and K.kind == "Fpct":
            return K.c()
        raise ParseError(f"unknown symbol {name!r} in {K.descriptor_str()}")
    if kind == "neg":
        return K.neg(eval_element(node[1], K))
    if kind == "add":
        return K.add(eval_element(node[1], K), eval_element(node[2], K))
    if kind == "sub":
        return K.sub(eval_element(node[1], K), eval_element(node[2], K))
    if kind == "mul":
        return K.mul(eval_element(node[1], K), eval_element(node[2], K))
    if kind == "div":
        return K.div(eval_element(node[1], K), eval_element(node[2], K))
    if kind == "pow":
        return _elem_pow(K, eval_element(node[1], K), node[2])
    raise ParseError(f"bad node {kind!r}")


def parse_element(s: str, K: ValuedField):
    return eval_element(parse_expression(s), K)


def eval_poly(node, K: ValuedField) -> Poly:
    kind = node[0]
    if kind == "name" and node[1] == "x":
        return Poly.x(K)
    if kind in ("int", "name"):
        return Poly.const(K, eval_element(node, K))
    if kind == "neg":
        return -eval_poly(node[1], K)
    if kind == "add":
        return eval_poly(node[1], K) + eval_poly(node[2], K)
    if kind == "sub":
        return eval_poly(node[1], K) - eval_poly(node[2], K)
    if kind == "mul":
        return eval_poly(node[1], K) * eval_poly(node[2], K)
    if kind == "div":
        num = eval_poly(node[1], K)
        den = eval_poly(node[2], K)
        if den.degree != 0:
            raise ParseError("cannot divide by a polynomial in x")
        return num.scale(K.inv(den[0]))
    if kind == "pow":
        base = eval_poly(node[1], K)
        exp = node[2]
        if base.degree == 0:
            return Poly.const(K, _elem_pow(K, base[0], exp))
        if exp.denominator != 1 or exp < 0:
            raise ParseError("polynomial exponents must be nonnegative integers")
        return base ** exp.numerator
    raise ParseError(f"bad node {kind!r}")


def parse_poly(s: str, K: ValuedField) -> Poly:
    return eval_poly(parse_expression(s), K)


# ---------------------------------------------------------------------------
# Graded-ring elements: capital T marks the graded variable
# ---------------------------------------------------------------------------


def eval_graded(node, K: ValuedField, table) -> graded.SemigroupRingElement:
    R = K.residue_field
    kind = node[0]
    if kind == "int":
        return graded.element(K, [(Q(0), R.from_int(node[1]))])
    if kind == "name":
        if node[1] == "T":
            return graded.element(K, [(Q(1), R.one())])
        raise ParseError(f"unknown symbol {node[1]!r} in a graded element")
    if kind == "neg":
        x = eval_graded(node[1], K, table)
        return graded.element(K, [(e, R.neg(c)) for e, c in x.terms])
    if kind == "add":
        return graded.add(K, eval_graded(node[1], K, table),
                          eval_graded(node[2], K, table))
    if kind == "sub":
        rhs = eval_graded(node[2], K, table)
        rhs = graded.element(K, [(e, R.neg(c)) for e, c in rhs.terms])
        return graded.add(K, eval_graded(node[1], K, table), rhs)
    if kind == "mul":
        return graded.twisted_mul(K, eval_graded(node[1], K, table),
                                  eval_graded(node[2], K, table), table)
    if kind == "pow":
        base_node, exp = node[1], node[2]
        if base_node == ("name", "T"):
            if exp < 0:
                raise ParseError("graded exponents must be nonnegative")
            return graded.element(K, [(exp, R.one())])
        if exp.denominator != 1 or exp < 0:
            raise ParseError("only T may carry fractional exponents")
        out = graded.element(K, [(Q(0), R.one())])
        base = eval_graded(base_node, K, table)
        for _ in range(exp.numerator):
            out = graded.twisted_mul(K, out, base, table)
        return out
    raise ParseError(f"bad node {kind!r} in a graded element")


def parse_graded(s: str, K: ValuedField, table=None) -> graded.SemigroupRingElement:
    table = table or graded.TwistTable(K)
    return eval_graded(parse_expression(s), K, table)


def parse_choice_overrides(s: str, K: ValuedField) -> dict:
    """Override table syntax: "1=3,2=18" (gamma=element)."""
    out = {}
    for part in s.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"bad override {part!r}")
        gamma_s, elem_s = part.split("=", 1)
        out[Q(value_from_str(gamma_s))] = parse_element(elem_s, K)
    return out


# ---------------------------------------------------------------------------
# Bivariate rational expressions in T, S with c_i symbols
# ---------------------------------------------------------------------------


def eval_bivariate(node, F, cs):
    """Evaluate to (num, den) BivariatePoly over F, with c_i bound to cs[i]."""
    from .analyzer import BivariatePoly

    one = BivariatePoly(F, [(F.one(),)])

    def bconst(c):
        return BivariatePoly(F, [(c,)])

    def badd(a, b):
        out = []
        for j in range(max(len(a.s_coeffs), len(b.s_coeffs))):
            ca = a.s_coeffs[j] if j < len(a.s_coeffs) else ()
            cb = b.s_coeffs[j] if j < len(b.s_coeffs) else ()
            out.append(fpoly.add(F, ca, cb))
        return BivariatePoly(F, out)

    def bneg(a):
        return BivariatePoly(F, [fpoly.neg(F, c) for c in a.s_coeffs])

    def bmul(a, b):
        if a.is_zero() or b.is_zero():
            return BivariatePoly(F, [])
        out = [() for _ in range(len(a.s_coeffs) + len(b.s_coeffs) - 1)]
        for i, ca in enumerate(a.s_coeffs):
            if fpoly.is_zero(ca):
                continue
            for j, cb in enumerate(b.s_coeffs):
                out[i + j] = fpoly.add(F, out[i + j], fpoly.mul(F, ca, cb))
        return BivariatePoly(F, out)

    def rec(n):
        kind = n[0]
        if kind == "int":
            return bconst(F.from_int(n[1])), one
        if kind == "name":
            name = n[1]
            if name == "T":
                return BivariatePoly(F, [(F.zero(), F.one())]), one
            if name == "S":
                return BivariatePoly(F, [(), (F.one(),)]), one
            m = re.fullmatch(r"c(\d+)", name)
            if m:
                idx = int(m.group(1))
                if not 1 <= idx < len(cs):
                    raise ParseError(f"coefficient {name} beyond l_max")
                return bconst(cs[idx]), one
            raise ParseError(f"unknown symbol {name!r} in a bivariate expression")
        if kind == "neg":
            nn, dd = rec(n[1])
            return bneg(nn), dd
        if kind in ("add", "sub"):
            n1, d1 = rec(n[1])
            n2, d2 = rec(n[2])
            if kind == "sub":
                n2 = bneg(n2)
            return badd(bmul(n1, d2), bmul(n2, d1)), bmul(d1, d2)
        if kind == "mul":
            n1, d1 = rec(n[1])
            n2, d2 = rec(n[2])
            return bmul(n1, n2), bmul(d1, d2)
        if kind == "div":
            n1, d1 = rec(n[1])
            n2, d2 = rec(n[2])
            if n2.is_zero():
                raise ParseError("division by the zero expression")
            return bmul(n1, d2), bmul(d1, n2)
        if kind == "pow":
            nn, dd = rec(n[1])
            exp = n[2]
            if exp.denominator != 1:
                raise ParseError("bivariate exponents must be integers")
            e = exp.numerator
            if e < 0:
                nn, dd = dd, nn
                e = -e
            rn, rd = one, one
            for _ in range(e):
                rn = bmul(rn, nn)
                rd = bmul(rd, dd)
            return rn, rd
        raise ParseError(f"bad node {kind!r}")

    return rec(node)
