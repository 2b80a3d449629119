"""Exact scalars: rationals and elements of cyclotomic fields Q(zeta_k).

Rationals are plain ``fractions.Fraction``.  A ``CycloNum`` is a dense
vector of Fractions in the power basis 1, z, ..., z^(phi(k)-1) of
Q[z]/(Phi_k).  Mixed arithmetic with int and Fraction works in both
directions.  Values whose conductors differ are embedded into the lcm
conductor before any operation.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import linalg

__all__ = [
    "Fraction", "CycloNum", "NumberFieldElem", "root_of_unity", "cyclotomic_poly",
    "euler_phi", "as_scalar", "is_rational", "conductor_of", "kth_roots",
    "scalar_str", "descend", "roots_in_field",
]


def _lcm(a, b):
    return a * b // gcd(a, b)


def divisors(n):
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def euler_phi(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# dense polynomial helpers on lists (low degree first)

def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivmod(a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            c = Fraction(c) / lead
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a[:len(b) - 1])


@lru_cache(maxsize=None)
def cyclotomic_poly(k):
    """Integer coefficients of Phi_k, lowest degree first."""
    p = [-1] + [0] * (k - 1) + [1]
    for d in divisors(k):
        if d < k:
            p, r = _pdivmod(p, list(cyclotomic_poly(d)))
            assert not r
    return tuple(int(c) for c in p)


def _reduce(c, k):
    """Reduce a coefficient list modulo Phi_k; returns a tuple of length phi(k)."""
    phi = cyclotomic_poly(k)
    n = len(phi) - 1
    c = list(c)
    for i in range(len(c) - 1, n - 1, -1):
        a = c[i]
        if a:
            for j in range(n):
                if phi[j]:
                    c[i - n + j] -= a * phi[j]
    c = c[:n] + [0] * (n - len(c))
    return tuple(Fraction(x) for x in c)


class CycloNum:
    """Element of Q(zeta_k) stored as a reduced residue modulo Phi_k."""

    __slots__ = ("k", "c")

    def __init__(self, k, coeffs):
        self.k = k
        self.c = _reduce(coeffs, k)

    @classmethod
    def _raw(cls, k, c):
        obj = object.__new__(cls)
        obj.k = k
        obj.c = c
        return obj

    # -- conversions --------------------------------------------------
    def is_rational(self):
        return not any(self.c[1:])

    def rational(self):
        return self.c[0]

    def embed(self, big):
        """Same value expressed with conductor ``big`` (a multiple of k)."""
        if big == self.k:
            return self
        step = big // self.k
        if big % self.k:
            raise ValueError("conductor %d does not divide %d" % (self.k, big))
        lst = [0] * ((len(self.c) - 1) * step + 1)
        for j, x in enumerate(self.c):
            lst[j * step] = x
        return CycloNum(big, lst)

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.k == self.k:
                return self, other
            big = _lcm(self.k, other.k)
            return self.embed(big), other.embed(big)
        if isinstance(other, (int, Fraction)):
            n = len(self.c)
            return self, CycloNum._raw(self.k, (Fraction(other),) + (Fraction(0),) * (n - 1))
        return None, None

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycloNum._raw(a.k, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.k, tuple(-x for x in self.c))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycloNum._raw(a.k, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum._raw(self.k, tuple(x * other for x in self.c))
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycloNum(a.k, _pmul(list(a.c), list(b.c)))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.k)
        if self.is_rational():
            return CycloNum._raw(self.k, (1 / self.c[0],) + self.c[1:])
        n = len(self.c)
        cols = [(self * root_of_unity(self.k, j)).c for j in range(n)]
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        sol = linalg.solve(rows, [Fraction(1)] + [Fraction(0)] * (n - 1))
        return CycloNum._raw(self.k, tuple(Fraction(x) for x in sol))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return CycloNum._raw(self.k, tuple(x / other for x in self.c))
        if isinstance(other, CycloNum):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNum._raw(self.k, (Fraction(1),) + (Fraction(0),) * (len(self.c) - 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if isinstance(other, CycloNum):
            a, b = self._coerce(other)
            return a.c == b.c
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        d = descend(self)
        return hash((d.k, d.c))

    def conjugate_power(self, a):
        """Galois image zeta -> zeta^a (gcd(a, k) = 1)."""
        lst = [0] * ((len(self.c) - 1) * a + 1)
        for j, x in enumerate(self.c):
            lst[j * a] += x
        return CycloNum(self.k, lst)

    def __repr__(self):
        return "CycloNum(%s)" % scalar_str(self)

    def __str__(self):
        return scalar_str(self)


def root_of_unity(k, j=1):
    """zeta_k^j with conductor k."""
    if k < 1:
        raise ValueError("conductor must be positive")
    j %= k
    lst = [0] * j + [1]
    return CycloNum(k, lst)


def descend(x):
    """Express ``x`` with the smallest conductor possible.

    Rational values come back as Fraction.
    """
    if not isinstance(x, CycloNum):
        return Fraction(x)
    if x.is_rational():
        return x.c[0]
    for d in divisors(x.k):
        if d < 3 or d == x.k:
            continue
        if d % 4 == 2:
            continue  # Q(zeta_d) = Q(zeta_{d/2})
        n = euler_phi(d)
        cols = [root_of_unity(d, j).embed(x.k).c for j in range(n)]
        rows = [[cols[j][i] for j in range(n)] for i in range(len(x.c))]
        sol = linalg.solve(rows, list(x.c))
        if sol is not None:
            return CycloNum._raw(d, tuple(Fraction(s) for s in sol))
    return x


def is_rational(x):
    if isinstance(x, CycloNum):
        return x.is_rational()
    return isinstance(x, (int, Fraction))


def as_scalar(x):
    """Canonical scalar: ints become Fractions, rational CycloNums become Fractions."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, CycloNum) and x.is_rational():
        return x.c[0]
    return x


def conductor_of(x):
    if isinstance(x, CycloNum):
        return x.k
    return 1


def scalar_str(x):
    """Exact text form, ``p/q`` or a sum of ``c*zeta<k>^<j>`` terms."""
    if isinstance(x, CycloNum):
        x = descend(x)
    if not isinstance(x, CycloNum):
        return str(Fraction(x))
    parts = []
    for j, c in enumerate(x.c):
        if not c:
            continue
        if j == 0:
            parts.append(str(c))
            continue
        base = "zeta%d" % x.k if j == 1 else "zeta%d^%d" % (x.k, j)
        if c == 1:
            parts.append(base)
        elif c == -1:
            parts.append("-" + base)
        else:
            parts.append("%s*%s" % (c, base))
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class NumberFieldElem:
    """Element of Q[t]/(m(t)) for a monic irreducible m over Q.

    Used for the generic branch value when computing passports.
    """

    __slots__ = ("mod", "c")

    def __init__(self, mod, coeffs):
        self.mod = tuple(Fraction(x) for x in mod)
        self.c = self._red(list(coeffs))

    def _red(self, c):
        m = self.mod
        n = len(m) - 1
        c = [Fraction(x) for x in c]
        for i in range(len(c) - 1, n - 1, -1):
            a = c[i]
            if a:
                for j in range(n):
                    c[i - n + j] -= a * m[j]
        c = c[:n] + [Fraction(0)] * (n - len(c))
        return tuple(c)

    def _new(self, c):
        return NumberFieldElem(self.mod, c)

    def _other(self, o):
        if isinstance(o, NumberFieldElem):
            return o.c
        if isinstance(o, (int, Fraction)):
            return (Fraction(o),) + (Fraction(0),) * (len(self.c) - 1)
        return None

    def __add__(self, o):
        b = self._other(o)
        if b is None:
            return NotImplemented
        return self._new([x + y for x, y in zip(self.c, b)])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-x for x in self.c])

    def __sub__(self, o):
        b = self._other(o)
        if b is None:
            return NotImplemented
        return self._new([x - y for x, y in zip(self.c, b)])

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        b = self._other(o)
        if b is None:
            return NotImplemented
        return self._new(_pmul(list(self.c), list(b)))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        n = len(self.c)
        # solve self * x = 1 as a linear system
        cols = [(self * self._new([0] * j + [1])).c for j in range(n)]
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        sol = linalg.solve(rows, [Fraction(1)] + [Fraction(0)] * (n - 1))
        return self._new(sol)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return self._new([x / o for x in self.c])
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, e):
        r = self._new([1])
        for _ in range(e):
            r = r * self
        return r

    def __bool__(self):
        return any(self.c)

    def __eq__(self, o):
        b = self._other(o)
        if b is None:
            return NotImplemented
        return self.c == tuple(b)

    def __hash__(self):
        return hash((self.mod, self.c))

    def __repr__(self):
        return "NumberFieldElem(%r mod %r)" % (self.c, self.mod)


def _sympy_field(N):
    import sympy as sp
    z = sp.exp(2 * sp.pi * sp.I / N)
    return sp, z, sp.QQ.algebraic_field(z)


def kth_roots(c, k, conductor=1):
    """All x in Q(zeta_N) with x^k = c, N = lcm(conductor, conductor of c).

    Rational inputs in a rational field use integer root extraction; anything
    cyclotomic is handed to sympy's factorization over the algebraic field.
    """
    c = as_scalar(c)
    N = _lcm(conductor, conductor_of(c))
    if not c:
        return [Fraction(0)]
    if N <= 2:
        return _rational_kth_roots(c, k)
    sp, z, K = _sympy_field(N)
    x = sp.Symbol("x")
    if isinstance(c, CycloNum):
        cexpr = sum(sp.Rational(v.numerator, v.denominator) * z ** j
                    for j, v in enumerate(c.embed(N).c))
    else:
        cexpr = sp.Rational(c.numerator, c.denominator)
    P = sp.Poly(x ** k - cexpr, x, domain=K)
    out = []
    for f, _ in P.factor_list()[1]:
        if f.degree() != 1:
            continue
        a, b = [K.from_sympy(t) for t in f.all_coeffs()]
        r = -b / a
        rep = [Fraction(int(q.numerator), int(q.denominator)) for q in reversed(_anp_list(r))]
        out.append(as_scalar(CycloNum(N, rep)))
    for r in out:
        assert r ** k == c
    return out


def _anp_list(a):
    rep = a.rep
    return rep if isinstance(rep, list) else rep.to_list()


def _iroot(n, k):
    from sympy import integer_nthroot
    r, exact = integer_nthroot(n, k)
    return int(r) if exact else None


def _rational_kth_roots(c, k):
    c = Fraction(c)
    neg = c < 0
    if neg and k % 2 == 0:
        return []
    p = _iroot(abs(c.numerator), k)
    q = _iroot(c.denominator, k)
    if p is None or q is None:
        return []
    r = Fraction(p, q)
    if neg:
        return [-r]
    if k % 2 == 0:
        return [r, -r]
    return [r]


def roots_in_field(coeffs, conductor=1):
    """Distinct roots lying in Q(zeta_N) of the polynomial with the given
    coefficients (constant term first)."""
    coeffs = [as_scalar(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) < 2:
        return []
    N = conductor
    for c in coeffs:
        N = _lcm(N, conductor_of(c))
    import sympy as sp
    x = sp.Symbol("x")
    if N <= 2:
        expr = sum(sp.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(coeffs))
        out = []
        for f, _ in sp.factor_list(expr, x)[1]:
            fp = sp.Poly(f, x)
            if fp.degree() == 1:
                a, b = fp.all_coeffs()
                r = -sp.Rational(b) / sp.Rational(a)
                out.append(Fraction(int(r.p), int(r.q)))
        return out
    _, z, K = _sympy_field(N)

    def conv(c):
        if isinstance(c, CycloNum):
            return sum(sp.Rational(v.numerator, v.denominator) * z ** j
                       for j, v in enumerate(c.embed(N).c))
        return sp.Rational(c.numerator, c.denominator)

    P = sp.Poly(sum(conv(c) * x ** i for i, c in enumerate(coeffs)), x, domain=K)
    out = []
    for f, _ in P.factor_list()[1]:
        if f.degree() != 1:
            continue
        a, b = [K.from_sympy(t) for t in f.all_coeffs()]
        r = -b / a
        rep = [Fraction(int(q.numerator), int(q.denominator)) for q in reversed(_anp_list(r))]
        out.append(as_scalar(CycloNum(N, rep)))
    return out
