"""Univariate polynomials, Laurent polynomials and rational functions.

Three concrete types share one value semantics: ``Poly`` (dense tuple,
lowest degree first), ``LaurentPoly`` (exponent -> coefficient map) and
``RatFunc`` (coprime numerator/denominator, monic denominator).  Equality
and hashing go through the common rational-function normal form, so a
Laurent polynomial with no negative exponents equals the matching Poly.

``compose(f, g)`` is f(g(z)) and returns the simplest type able to hold
the result.
"""

from fractions import Fraction
from math import gcd as igcd

from .exact import as_scalar, CycloNum, NumberFieldElem, conductor_of
from . import linalg

_SCALARS = (int, Fraction, CycloNum, NumberFieldElem)

ZERO_DEGREE = -1  # degree reported for the zero polynomial


def _is_scalar(x):
    return isinstance(x, _SCALARS)


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [as_scalar(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c):
        obj = object.__new__(cls)
        obj.c = c
        return obj

    @staticmethod
    def z():
        return Poly([0, 1])

    @staticmethod
    def const(a):
        return Poly([a])

    @staticmethod
    def monomial(e, a=1):
        return Poly([0] * e + [a])

    # -- basic data ---------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1] if self.c else Fraction(0)

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def is_constant(self):
        return len(self.c) <= 1

    def monic(self):
        if not self.c:
            return self
        lc = self.c[-1]
        if lc == 1:
            return self
        return Poly([x / lc for x in self.c])

    def conductor(self):
        k = 1
        for x in self.c:
            k2 = conductor_of(x)
            k = k * k2 // igcd(k, k2)
        return k

    # -- arithmetic ---------------------------------------------------
    def __add__(self, o):
        if _is_scalar(o):
            o = Poly([o])
        if not isinstance(o, Poly):
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-x for x in self.c))

    def __sub__(self, o):
        if _is_scalar(o):
            o = Poly([o])
        if not isinstance(o, Poly):
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if _is_scalar(o):
            if not o:
                return Poly()
            return Poly([x * o for x in self.c])
        if not isinstance(o, Poly):
            return NotImplemented
        if not self.c or not o.c:
            return Poly()
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        r = Poly([1])
        base = self
        while e:
            if e & 1:
                r = r * base
            e >>= 1
            if e:
                base = base * base
        return r

    def __truediv__(self, o):
        if _is_scalar(o):
            return Poly([x / o for x in self.c])
        if isinstance(o, Poly):
            return RatFunc(self, o)
        return NotImplemented

    def __divmod__(self, o):
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.c)
        n = len(o.c)
        q = [0] * max(len(a) - n + 1, 0)
        lead = o.c[-1]
        inv = 1 / lead
        for i in range(len(a) - n, -1, -1):
            x = a[i + n - 1]
            if x:
                x = x * inv
                q[i] = x
                for j, y in enumerate(o.c):
                    if y:
                        a[i + j] -= x * y
        return Poly(q), Poly(a[:n - 1])

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def derivative(self):
        return Poly([i * x for i, x in enumerate(self.c)][1:])

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar or any function type."""
        if isinstance(x, (LaurentPoly, RatFunc)) or isinstance(x, Poly):
            acc = type(x).const(0) if not isinstance(x, RatFunc) else RatFunc.const(0)
        else:
            acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    # -- comparison ---------------------------------------------------
    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.c == o.c
        if _is_scalar(o):
            return self.c == Poly([o]).c
        if isinstance(o, (LaurentPoly, RatFunc)):
            return o == self
        return NotImplemented

    def __ne__(self, o):
        r = self.__eq__(o)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.c, (Fraction(1),)))

    def __repr__(self):
        return "Poly(%s)" % self

    def __str__(self):
        from .parser import to_text
        return to_text(self)


class LaurentPoly:
    """Finite sum of c_e z^e with integer e (possibly negative)."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, x in dict(terms).items():
                x = as_scalar(x)
                if x:
                    t[int(e)] = x
        self.t = t

    @staticmethod
    def const(a):
        return LaurentPoly({0: a})

    @staticmethod
    def monomial(e, a=1):
        return LaurentPoly({e: a})

    @classmethod
    def from_poly(cls, p, shift=0):
        return cls({i + shift: x for i, x in enumerate(p.c) if x})

    @property
    def a(self):
        """Pole order at infinity."""
        return max(0, max(self.t)) if self.t else 0

    @property
    def b(self):
        """Pole order at zero."""
        return max(0, -min(self.t)) if self.t else 0

    @property
    def degree(self):
        return self.a + self.b

    def coeff(self, e):
        return self.t.get(e, Fraction(0))

    def is_zero(self):
        return not self.t

    def support(self):
        return sorted(self.t)

    def is_poly(self):
        return not self.t or min(self.t) >= 0

    def to_poly(self):
        if not self.is_poly():
            raise ValueError("Laurent polynomial has a pole at 0")
        if not self.t:
            return Poly()
        return Poly([self.t.get(i, 0) for i in range(max(self.t) + 1)])

    def to_ratfunc(self):
        lo = min(min(self.t), 0) if self.t else 0
        num = Poly([self.t.get(i + lo, 0) for i in range((max(self.t) - lo + 1) if self.t else 0)])
        return RatFunc(num, Poly.monomial(-lo))

    def conductor(self):
        k = 1
        for x in self.t.values():
            k2 = conductor_of(x)
            k = k * k2 // igcd(k, k2)
        return k

    def _coerce(self, o):
        if isinstance(o, LaurentPoly):
            return o
        if isinstance(o, Poly):
            return LaurentPoly.from_poly(o)
        if _is_scalar(o):
            return LaurentPoly({0: o})
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        t = dict(self.t)
        for e, x in o.t.items():
            t[e] = t.get(e, 0) + x
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -x for e, x in self.t.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if _is_scalar(o):
            return LaurentPoly({e: x * o for e, x in self.t.items()})
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        t = {}
        for e1, x in self.t.items():
            for e2, y in o.t.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + x * y
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            if len(self.t) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, x), = self.t.items()
            return LaurentPoly({k * e: as_scalar(x) ** e})
        r = LaurentPoly({0: 1})
        base = self
        while e:
            if e & 1:
                r = r * base
            e >>= 1
            if e:
                base = base * base
        return r

    def __truediv__(self, o):
        if _is_scalar(o):
            return LaurentPoly({e: x / o for e, x in self.t.items()})
        if isinstance(o, LaurentPoly) and len(o.t) == 1:
            return self * o ** -1
        if isinstance(o, (Poly, LaurentPoly)):
            return self.to_ratfunc() / as_ratfunc(o)
        return NotImplemented

    def derivative(self):
        return LaurentPoly({e - 1: e * x for e, x in self.t.items() if e})

    def subs_power(self, d, c=1):
        """self(c*z^d) for integer d (d may be negative)."""
        c = as_scalar(c)
        if c == 1:
            return LaurentPoly({e * d: x for e, x in self.t.items()})
        return LaurentPoly({e * d: x * c ** e for e, x in self.t.items()})

    def __call__(self, x):
        if _is_scalar(x):
            x = as_scalar(x)
            return sum((v * x ** e for e, v in self.t.items()), Fraction(0))
        g = as_function(x)
        if isinstance(g, LaurentPoly) and len(g.t) == 1:
            (k, c), = g.t.items()
            return self.subs_power(k, c)
        if self.is_poly():
            return self.to_poly()(g)
        return self.to_ratfunc()(g)

    def __eq__(self, o):
        if isinstance(o, LaurentPoly):
            return self.t == o.t
        if isinstance(o, Poly) or _is_scalar(o):
            return self.t == self._coerce(o).t
        if isinstance(o, RatFunc):
            return o == self
        return NotImplemented

    def __ne__(self, o):
        r = self.__eq__(o)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(self.to_ratfunc())

    def __repr__(self):
        return "LaurentPoly(%s)" % self

    def __str__(self):
        from .parser import to_text
        return to_text(self)


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        if den.degree > 0:
            g = gcd_poly(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
        lc = den.lead()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den = num, den

    @staticmethod
    def const(a):
        return RatFunc(Poly([a]))

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree, 0)

    def is_poly(self):
        return self.den.degree == 0

    def is_laurent(self):
        return self.den.degree == 0 or all(not x for x in self.den.c[:-1])

    def conductor(self):
        a, b = self.num.conductor(), self.den.conductor()
        return a * b // igcd(a, b)

    def _coerce(self, o):
        return as_ratfunc(o) if (_is_scalar(o) or isinstance(o, (Poly, LaurentPoly, RatFunc))) else None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return as_ratfunc(o) / self

    def __pow__(self, e):
        if e < 0:
            return RatFunc(self.den ** (-e), self.num ** (-e))
        return RatFunc(self.num ** e, self.den ** e)

    def derivative(self):
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den ** 2)

    def __call__(self, x):
        if _is_scalar(x):
            d = self.den(x)
            if not d:
                raise ZeroDivisionError("pole")
            return self.num(x) / d
        g = as_ratfunc(x)
        n = self.degree
        # homogenize: N(P/Q) / D(P/Q) = N_h(P, Q) / D_h(P, Q)
        P, Q = g.num, g.den
        ppow = [Poly([1])]
        qpow = [Poly([1])]
        for _ in range(n):
            ppow.append(ppow[-1] * P)
            qpow.append(qpow[-1] * Q)
        num = Poly()
        for i, a in enumerate(self.num.c):
            if a:
                num = num + ppow[i] * qpow[n - i] * a
        den = Poly()
        for i, a in enumerate(self.den.c):
            if a:
                den = den + ppow[i] * qpow[n - i] * a
        return RatFunc(num, den)

    def __eq__(self, o):
        if isinstance(o, (Poly, LaurentPoly, RatFunc)) or _is_scalar(o):
            o = as_ratfunc(o)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __ne__(self, o):
        r = self.__eq__(o)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.den.degree == 0:
            return hash(self.num)
        return hash((self.num.c, self.den.c))

    def __repr__(self):
        return "RatFunc(%s)" % self

    def __str__(self):
        from .parser import to_text
        return to_text(self)


# -- conversions ------------------------------------------------------

def as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    if isinstance(x, LaurentPoly):
        return x.to_ratfunc()
    if _is_scalar(x):
        return RatFunc(Poly([x]))
    raise TypeError("cannot convert %r to a rational function" % (x,))


def as_laurent(x):
    """LaurentPoly view of x, or None when x has a pole off {0, inf}."""
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, Poly):
        return LaurentPoly.from_poly(x)
    if _is_scalar(x):
        return LaurentPoly.const(x)
    r = as_ratfunc(x)
    if not r.is_laurent():
        return None
    return LaurentPoly.from_poly(r.num, -r.den.degree)


def simplify(x):
    """Smallest of Poly / LaurentPoly / RatFunc that holds x."""
    if _is_scalar(x):
        return Poly([x])
    if isinstance(x, Poly):
        return x
    if isinstance(x, LaurentPoly):
        return x.to_poly() if x.is_poly() else x
    if x.is_poly():
        return x.num / x.den.lead()
    if x.is_laurent():
        return LaurentPoly.from_poly(x.num, -x.den.degree)
    return x


def as_function(x):
    if _is_scalar(x):
        return Poly([x])
    return x


def func_degree(f):
    if isinstance(f, Poly):
        return max(f.degree, 0)
    return f.degree


def compose(f, g):
    """f(g(z)) as the simplest possible type."""
    f = as_function(f)
    g = as_function(g)
    if isinstance(f, Poly) and isinstance(g, Poly):
        return f(g)
    if isinstance(f, Poly) and isinstance(g, LaurentPoly):
        return simplify(f(g))
    if isinstance(f, LaurentPoly):
        return simplify(f(g))
    return simplify(as_ratfunc(f)(g))


def compose_all(factors):
    """F_r o ... o F_1 for factors listed outermost first."""
    out = factors[-1]
    for f in reversed(factors[:-1]):
        out = compose(f, out)
    return simplify(as_function(out))


# -- Chebyshev and friends --------------------------------------------

def chebyshev(n):
    """T_n by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    t0, t1 = Poly([1]), Poly([0, 1])
    if n == 0:
        return t0
    z2 = Poly([0, 2])
    for _ in range(n - 1):
        t0, t1 = t1, z2 * t1 - t0
    return t1


def laurent_D(n):
    """D_n = (z^n + z^-n) / 2."""
    if n < 1:
        raise ValueError("n must be positive")
    return LaurentPoly({n: Fraction(1, 2), -n: Fraction(1, 2)})


def power(n, c=1):
    return Poly.monomial(n, c)


# -- gcd, resultant, squarefree ---------------------------------------

def gcd_poly(a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def resultant(f, g):
    """Res(f, g) by the Euclidean recursion."""
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    m, n = f.degree, g.degree
    if n == 0:
        return g.lead() ** m
    if m == 0:
        return f.lead() ** n
    r = f % g
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (m * n) % 2 else 1
    return sign * g.lead() ** (m - r.degree) * resultant(g, r)


def interpolate(xs, ys):
    """Lagrange interpolation through (xs[i], ys[i])."""
    out = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = Poly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly([-xj, 1])
                denom = denom * (xi - xj)
        out = out + basis * (yi / denom)
    return out


def discriminant_in_t(P):
    """Res_z(P(z) - t, P'(z)) as a polynomial in t."""
    n = P.degree
    if n < 1:
        raise ValueError("degree must be positive")
    dP = P.derivative()
    xs = [Fraction(i) for i in range(n + 1)]
    ys = [resultant(P - x, dP) if dP.degree >= 0 else Fraction(1) for x in xs]
    return interpolate(xs, ys)


def squarefree_part(f):
    if f.degree <= 0:
        return f.monic()
    g = gcd_poly(f, f.derivative())
    return (f // g).monic()


def yun(f):
    """Squarefree decomposition: list of (a_i, i) with f = lc * prod a_i^i."""
    f = f.monic()
    out = []
    if f.degree <= 0:
        return out
    d = f.derivative()
    a0 = gcd_poly(f, d)
    b = f // a0
    c = d // a0
    dd = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd_poly(b, dd)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = dd // a
        dd = c - b.derivative()
        i += 1
    return out


# -- bivariate polynomials --------------------------------------------

class BiPoly:
    """Sparse polynomial in x, y: {(i, j): coefficient of x^i y^j}."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for k, v in dict(terms).items():
                v = as_scalar(v)
                if v:
                    t[(int(k[0]), int(k[1]))] = v
        self.t = t

    @classmethod
    def from_x(cls, p):
        return cls({(i, 0): v for i, v in enumerate(p.c)})

    @classmethod
    def from_y(cls, p):
        return cls({(0, j): v for j, v in enumerate(p.c)})

    @classmethod
    def from_y_coeffs(cls, coeffs):
        """From a list of Polys in x indexed by the y-exponent."""
        t = {}
        for j, p in enumerate(coeffs):
            for i, v in enumerate(p.c):
                if v:
                    t[(i, j)] = v
        return cls(t)

    def y_coeffs(self):
        if not self.t:
            return []
        dy = max(j for _, j in self.t)
        rows = [[] for _ in range(dy + 1)]
        for (i, j), v in self.t.items():
            row = rows[j]
            if len(row) <= i:
                row.extend([0] * (i + 1 - len(row)))
            row[i] = v
        return [Poly(r) for r in rows]

    def swap(self):
        return BiPoly({(j, i): v for (i, j), v in self.t.items()})

    def degree_y(self):
        return max((j for _, j in self.t), default=-1)

    def degree_x(self):
        return max((i for i, _ in self.t), default=-1)

    def __add__(self, o):
        t = dict(self.t)
        for k, v in o.t.items():
            t[k] = t.get(k, 0) + v
        return BiPoly(t)

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.t.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if _is_scalar(o):
            return BiPoly({k: v * o for k, v in self.t.items()})
        t = {}
        for (i1, j1), v in self.t.items():
            for (i2, j2), w in o.t.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, 0) + v * w
        return BiPoly(t)

    __rmul__ = __mul__

    def __call__(self, x, y):
        return sum((v * x ** i * y ** j for (i, j), v in self.t.items()), Fraction(0))

    def __eq__(self, o):
        return isinstance(o, BiPoly) and self.t == o.t

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    def is_zero(self):
        return not self.t

    def __repr__(self):
        terms = sorted(self.t.items(), reverse=True)
        return "BiPoly(%s)" % " + ".join("%s*x^%d*y^%d" % (v, i, j) for (i, j), v in terms)


def _content(coeffs):
    g = Poly()
    for p in coeffs:
        g = gcd_poly(g, p)
        if g.degree == 0:
            break
    return g


def _prem(A, B):
    """Pseudo-remainder of y-polynomials given as lists of Polys in x."""
    A = list(A)
    lb = B[-1]
    db = len(B) - 1
    while len(A) - 1 >= db and A:
        la = A[-1]
        shift = len(A) - 1 - db
        A = [a * lb for a in A]
        for j, b in enumerate(B):
            A[j + shift] = A[j + shift] - la * b
        while A and A[-1].is_zero():
            A.pop()
    return A


def _prim(A):
    c = _content(A)
    if c.degree > 0:
        A = [a // c for a in A]
    return A


def bivariate_gcd(F, G):
    """gcd of F, G in K(x)[y], cleared of denominators and primitive in y.

    Primitive polynomial remainder sequence.  The result is scaled so that
    the leading x-coefficient of its leading y-coefficient is 1.
    """
    if F.is_zero() or G.is_zero():
        raise ValueError("bivariate gcd needs nonzero inputs")
    A = _prim(F.y_coeffs())
    B = _prim(G.y_coeffs())
    if len(A) < len(B):
        A, B = B, A
    while len(B) > 1:
        R = _prem(A, B)
        A, B = B, (_prim(R) if R else [])
        if not B:
            break
    if len(B) == 1:
        return BiPoly({(0, 0): 1})
    A = _prim(A)
    lc = A[-1].lead()
    return BiPoly.from_y_coeffs([a / lc for a in A])


def separated(f, g=None):
    """Numerator of f(x) - g(y) as a BiPoly (g defaults to f)."""
    f = as_ratfunc(f)
    g = f if g is None else as_ratfunc(g)
    # (Nf(x) Dg(y) - Ng(y) Df(x))
    out = BiPoly()
    for i, a in enumerate(f.num.c):
        for j, b in enumerate(g.den.c):
            if a and b:
                out = out + BiPoly({(i, j): a * b})
    for i, a in enumerate(f.den.c):
        for j, b in enumerate(g.num.c):
            if a and b:
                out = out - BiPoly({(i, j): a * b})
    return out


def solve_left_factor(F, W):
    """Return G with G o W == F, or None.

    Linear algebra on the unknown coefficients of G = N/D of degree
    deg F / deg W, using the homogenized identity N_f * D_h(P,Q) = D_f * N_h(P,Q).
    """
    F = as_ratfunc(F)
    Wr = as_ratfunc(W)
    n, d = F.degree, Wr.degree
    if d == 0 or n % d:
        return None
    k = n // d
    if isinstance(simplify(F), Poly) and isinstance(simplify(Wr), Poly):
        return _poly_left_factor(simplify(F), simplify(Wr))
    P, Q = Wr.num, Wr.den
    ppow = [Poly([1])]
    qpow = [Poly([1])]
    for _ in range(k):
        ppow.append(ppow[-1] * P)
        qpow.append(qpow[-1] * Q)
    basis = [ppow[i] * qpow[k - i] for i in range(k + 1)]
    # unknowns: N_0..N_k, D_0..D_k ; equation: Nf * sum D_i B_i - Df * sum N_i B_i = 0
    cols = [F.den * b * -1 for b in basis] + [F.num * b for b in basis]
    length = max(c.degree for c in cols) + 1
    rows = [[c.coeff(r) for c in cols] for r in range(length)]
    ns = linalg.nullspace(rows, len(cols))
    for v in ns:
        N = Poly(v[:k + 1])
        D = Poly(v[k + 1:])
        if D.is_zero():
            continue
        try:
            G = RatFunc(N, D)
        except ZeroDivisionError:
            continue
        if G.degree == k and compose(G, W) == F:
            return simplify(G)
    return None


def _poly_left_factor(F, H):
    """H-adic expansion of F; None unless every digit is constant."""
    digits = []
    R = F
    while not R.is_zero():
        R, r = divmod(R, H)
        if r.degree > 0:
            return None
        digits.append(r.coeff(0))
    return Poly(digits)
