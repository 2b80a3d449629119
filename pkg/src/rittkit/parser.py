"""Expression grammar shared by the library and the command line.

    expr   := sum ('@' expr)?                     composition, right-assoc
    sum    := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | 'z' | 'zeta' INT | 'T(' INT ')' | 'D(' INT ')'
            | 'pow(' INT ')' | '(' expr ')'

``zeta8^3`` is zeta_8 cubed.  Every number prints exactly; ``to_text`` is
the inverse of ``parse`` up to value equality.
"""

import re
from fractions import Fraction

from .errors import RittError
from .exact import CycloNum, NumberFieldElem, root_of_unity, scalar_str, as_scalar
from .poly import (Poly, LaurentPoly, RatFunc, chebyshev, laurent_D, compose,
                   simplify, as_ratfunc)

_SCALAR = (int, Fraction, CycloNum, NumberFieldElem)

_TOKEN = re.compile(r"\s*(?:(\d+)|(zeta)(\d+)|(pow|T|D)\s*\(|([z])|(@|\+|-|\*|/|\^|\(|\)))")


class ParseError(RittError, ValueError):
    def __init__(self, msg, src="", pos=0):
        line = src.count("\n", 0, pos) + 1
        col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        super().__init__("%s at line %d, column %d" % (msg, line, col))
        self.line, self.column = line, col


def _tokenize(src):
    toks = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character %r" % src[pos], src, pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("zeta", int(m.group(3)), start))
        elif m.group(4):
            toks.append(("call", m.group(4), start))
        elif m.group(5):
            toks.append(("z", None, start))
        else:
            toks.append((m.group(6), None, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


def _add(a, b):
    if isinstance(a, _SCALAR) and isinstance(b, _SCALAR):
        return as_scalar(a) + as_scalar(b)
    if isinstance(a, RatFunc) or isinstance(b, RatFunc):
        return as_ratfunc(a) + as_ratfunc(b)
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        a = a if isinstance(a, LaurentPoly) else LaurentPoly({0: a}) if isinstance(a, _SCALAR) else LaurentPoly.from_poly(a)
        return a + b
    return (a if isinstance(a, Poly) else Poly([a])) + b


def _mul(a, b):
    if isinstance(a, _SCALAR) and isinstance(b, _SCALAR):
        return as_scalar(a) * as_scalar(b)
    if isinstance(a, _SCALAR):
        a, b = b, a
    if isinstance(b, _SCALAR):
        return a * b
    if isinstance(a, RatFunc) or isinstance(b, RatFunc):
        return as_ratfunc(a) * as_ratfunc(b)
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        a = a if isinstance(a, LaurentPoly) else LaurentPoly.from_poly(a)
        return a * b
    return a * b


def _div(a, b):
    if isinstance(b, _SCALAR):
        if not b:
            raise ZeroDivisionError("division by zero")
        if isinstance(a, _SCALAR):
            return as_scalar(a) / as_scalar(b)
        return a / as_scalar(b)
    b = simplify(b)
    if isinstance(b, Poly) and b.degree == 0:
        return _div(a, b.c[0])
    if isinstance(b, Poly) and b.is_zero():
        raise ZeroDivisionError("division by zero")
    lb = b if isinstance(b, LaurentPoly) else (LaurentPoly.from_poly(b) if isinstance(b, Poly) else None)
    if lb is not None and len(lb.t) == 1 and not isinstance(a, RatFunc):
        return _mul(a, lb ** -1)
    return as_ratfunc(a) / as_ratfunc(b)


def _pow(a, e):
    if isinstance(a, _SCALAR):
        a = as_scalar(a)
        if not a and e < 0:
            raise ZeroDivisionError("zero to a negative power")
        return a ** e
    a = simplify(a)
    if e >= 0:
        return a ** e
    la = a if isinstance(a, LaurentPoly) else (LaurentPoly.from_poly(a) if isinstance(a, Poly) else None)
    if la is not None and len(la.t) == 1:
        return la ** e
    return as_ratfunc(a) ** e


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            raise ParseError("expected %r, found %r" % (kind, t[0]), self.src, t[2])
        self.i += 1
        return t

    def expr(self):
        left = self.sum()
        if self.peek() == "@":
            self.take()
            right = self.expr()
            return compose(left, right)
        return left

    def sum(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            w = self.term()
            v = _add(v, w if op == "+" else _mul(w, -1))
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op, _, pos = self.take()
            w = self.unary()
            if op == "*":
                v = _mul(v, w)
            else:
                try:
                    v = _div(v, w)
                except ZeroDivisionError:
                    raise ParseError("zero denominator", self.src, pos)
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return _mul(self.unary(), -1)
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            if self.peek() == "(":
                self.take()
                if self.peek() == "-":
                    self.take()
                    sign = -sign
                e = self._int()
                self.take(")")
            else:
                e = self._int()
            try:
                return _pow(base, sign * e)
            except ZeroDivisionError:
                raise ParseError("zero denominator", self.src, self.toks[self.i - 1][2])
        return base

    def _int(self):
        t = self.toks[self.i]
        if t[0] != "int":
            raise ParseError("exponent must be an integer", self.src, t[2])
        self.i += 1
        return t[1]

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return Fraction(val)
        if kind == "z":
            return Poly([0, 1])
        if kind == "zeta":
            if val < 1:
                raise ParseError("zeta conductor must be positive", self.src, pos)
            return root_of_unity(val, 1)
        if kind == "call":
            n = self._int()
            self.take(")")
            if n < 1:
                raise ParseError("builder argument must be positive", self.src, pos)
            if val == "T":
                return chebyshev(n)
            if val == "D":
                return laurent_D(n)
            return Poly.monomial(n)
        if kind == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ParseError("unexpected %r" % kind, self.src, pos)


def parse(src):
    """Parse text into Poly, LaurentPoly or RatFunc (constants become Poly)."""
    p = _Parser(src)
    v = p.expr()
    t = p.toks[p.i]
    if t[0] != "end":
        raise ParseError("trailing input", src, t[2])
    return simplify(v)


def _coef_text(c):
    c = as_scalar(c)
    if isinstance(c, Fraction):
        return str(c)
    return "(%s)" % scalar_str(c)


def _terms_text(pairs):
    """pairs: (exponent, coefficient) in display order."""
    out = ""
    for e, c in pairs:
        c = as_scalar(c)
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        if e == 0:
            body = _coef_text(mag)
        else:
            var = "z" if e == 1 else "z^%d" % e
            body = var if mag == 1 else "%s*%s" % (_coef_text(mag), var)
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


def to_text(x):
    if isinstance(x, _SCALAR):
        return scalar_str(x)
    if isinstance(x, Poly):
        return _terms_text([(i, c) for i, c in reversed(list(enumerate(x.c))) if c])
    if isinstance(x, LaurentPoly):
        return _terms_text(sorted(x.t.items(), reverse=True))
    if isinstance(x, RatFunc):
        return "(%s)/(%s)" % (to_text(x.num), to_text(x.den))
    raise TypeError("cannot print %r" % (x,))
