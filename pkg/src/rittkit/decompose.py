"""Functional decomposition of polynomials and Laurent polynomials.

Chains are stored outermost factor first, so ``[F2, F1]`` means F2(F1(z)).
Two chains are equivalent when they differ by degree-one conjugators placed
between consecutive factors.  ``canonical_chain`` picks one representative
per class: moving from the innermost factor outwards, each factor is
replaced by its left-Moebius normal form and the inverse conjugator is
pushed into the next factor.
"""

from fractions import Fraction
from math import gcd
from functools import reduce

from .errors import ConstraintError
from .exact import root_of_unity, kth_roots, divisors, as_scalar, CycloNum
from .poly import (Poly, LaurentPoly, RatFunc, compose, compose_all, simplify, as_ratfunc,
                   as_laurent, chebyshev, laurent_D, func_degree, solve_left_factor,
                   separated, bivariate_gcd)
from . import linalg


# -- Moebius normal forms ---------------------------------------------

def mobius(a, b, c, d):
    """(a z + b) / (c z + d) in its simplest type."""
    return simplify(RatFunc(Poly([b, a]), Poly([d, c])))


def mobius_inverse(m):
    r = as_ratfunc(m)
    a, b = r.num.coeff(1), r.num.coeff(0)
    c, d = r.den.coeff(1), r.den.coeff(0)
    return mobius(d, -b, -c, a)


def left_normal_form(F):
    """Return (F*, mu) with F* = mu o F the canonical left-Moebius representative.

    The pencil spanned by numerator and denominator is put in reduced echelon
    form with respect to the highest degree; F* is the quotient of its two
    basis vectors.  Polynomials come out monic with zero constant term and
    Laurent polynomials monic at infinity with zero constant term.
    """
    r = as_ratfunc(F)
    n = r.degree
    if n < 1:
        raise ValueError("constant functions have no normal form")
    rows = [
        [r.num.coeff(n - i) for i in range(n + 1)] + [Fraction(1), Fraction(0)],
        [r.den.coeff(n - i) for i in range(n + 1)] + [Fraction(0), Fraction(1)],
    ]
    red, piv = linalg.rref(rows)
    P1 = Poly(list(reversed(red[0][:n + 1])))
    P2 = Poly(list(reversed(red[1][:n + 1])))
    a, b = red[0][n + 1], red[0][n + 2]
    c, d = red[1][n + 1], red[1][n + 2]
    mu = mobius(a, b, c, d)
    return simplify(RatFunc(P1, P2)), mu


def func_key(F):
    F = simplify(F)
    if isinstance(F, Poly):
        return ("P", F.c)
    if isinstance(F, LaurentPoly):
        return ("L", tuple(sorted(F.t.items())))
    return ("R", F.num.c, F.den.c)


# -- chains -------------------------------------------------------------

class DecompChain:
    """F_r o ... o F_1, stored as (F_r, ..., F_1)."""

    __slots__ = ("factors", "_key")

    def __init__(self, factors):
        fs = tuple(simplify(f) for f in factors)
        if not fs:
            raise ValueError("empty chain")
        self.factors = fs
        self._key = None

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def composite(self):
        return compose_all(list(self.factors))

    def degrees(self):
        return tuple(func_degree(f) for f in self.factors)

    def canonical(self):
        return canonical_chain(self)

    def key(self):
        if self._key is None:
            self._key = tuple(func_key(f) for f in canonical_chain(self).factors)
        return self._key

    def to_json(self):
        return {"factors": [str(f) for f in self.factors]}

    @classmethod
    def from_json(cls, obj):
        from .parser import parse
        return cls([parse(s) for s in obj["factors"]])

    def __eq__(self, o):
        return isinstance(o, DecompChain) and self.factors == o.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "DecompChain(%s)" % " o ".join("(%s)" % f for f in self.factors)


def canonical_chain(chain, with_conjugators=False):
    fs = list(chain.factors if isinstance(chain, DecompChain) else chain)
    mus = []
    for i in range(len(fs) - 1, 0, -1):
        nf, mu = left_normal_form(fs[i])
        fs[i] = nf
        fs[i - 1] = compose(fs[i - 1], mobius_inverse(mu))
        mus.append(mu)
    out = DecompChain(fs)
    if with_conjugators:
        return out, mus  # mus[j] sits right after the (j+1)-th innermost factor
    return out


def equivalence(c1, c2):
    """Conjugators mu_1..mu_{r-1} with F'_i = mu_i o F_i o mu_{i-1}^-1, or None."""
    if len(c1) != len(c2):
        return None
    n1, m1 = canonical_chain(c1, True)
    n2, m2 = canonical_chain(c2, True)
    if tuple(map(func_key, n1)) != tuple(map(func_key, n2)):
        return None
    return [compose(mobius_inverse(b), a) for a, b in zip(m1, m2)]


def sort_chains(chains):
    return sorted(chains, key=lambda c: (c.degrees(), [str(f) for f in c.factors]))


# -- polynomials --------------------------------------------------------

def right_factor(P, d):
    """(G, H) with P = G o H, deg H = d, H monic, H(0) = 0; or None."""
    n = P.degree
    if d <= 0 or n % d:
        raise ValueError("d must divide deg P")
    if d == 1:
        return P, Poly([0, 1])
    if d == n:
        c0, lc = P.coeff(0), P.lead()
        return Poly([c0, lc]), (P - c0) / lc
    s = n // d
    lc = P.lead()
    Pm = P.monic()
    h = [Fraction(0)] * d + [Fraction(1)]
    for i in range(1, d):
        Hs = Poly(h) ** s
        h[d - i] = (Pm.coeff(n - i) - Hs.coeff(n - i)) / s
    H = Poly(h)
    digits = []
    R = Pm
    while not R.is_zero():
        R, r = divmod(R, H)
        if r.degree > 0:
            return None
        digits.append(r.coeff(0))
    G = Poly(digits) * lc
    return G, H


def decompose_poly(P, _memo=None):
    """All maximal decompositions of P up to equivalence, sorted."""
    P = simplify(P)
    if not isinstance(P, Poly):
        raise TypeError("decompose_poly expects a polynomial")
    memo = {} if _memo is None else _memo
    return sort_chains(_poly_chains(P, memo).values())


def _poly_chains(P, memo):
    key = ("P", P.c)
    if key in memo:
        return memo[key]
    n = P.degree
    out = {}
    if n > 1:
        for d in divisors(n):
            if 1 < d < n:
                rf = right_factor(P, d)
                if rf is None:
                    continue
                G, H = rf
                for cg in _poly_chains(G, memo).values():
                    for ch in _poly_chains(H, memo).values():
                        c = DecompChain(cg.factors + ch.factors)
                        out.setdefault(c.key(), canonical_chain(c))
    if not out:
        c = DecompChain([P])
        out[c.key()] = c
    memo[key] = out
    return out


# -- Laurent polynomials ------------------------------------------------

def inner_power(L):
    """(M, d) with L = M o z^d and d the gcd of the exponents of L."""
    L = as_laurent(L)
    if L is None or L.degree == 0:
        raise ValueError("inner_power needs a nonconstant Laurent polynomial")
    d = reduce(gcd, (abs(e) for e in L.t if e), 0)
    M = LaurentPoly({e // d: x for e, x in L.t.items()})
    return simplify(M), d


def _laurent_right_factor(L, k, conductor):
    """Candidates (A, L1) with L = A o L1, deg A = k, L1 genuinely Laurent."""
    a, b = L.a, L.b
    ap, bp = a // k, b // k
    alpha = L.coeff(a)
    # positive part, triangular from the top
    pos = [Fraction(0)] * ap + [Fraction(1)]
    for i in range(1, ap):
        cur = (Poly(pos) ** k).coeff(a - i) * alpha
        pos[ap - i] = (L.coeff(a - i) - cur) / (alpha * k)
    out = []
    for r in kth_roots(L.coeff(-b) / alpha, k, conductor):
        neg = [Fraction(0)] * bp + [r]
        for i in range(1, bp):
            cur = (Poly(neg) ** k).coeff(b - i) * alpha
            neg[bp - i] = (L.coeff(-b + i) - cur) / (alpha * k * r ** (k - 1))
        terms = {e: x for e, x in enumerate(pos) if x}
        terms.update({-e: x for e, x in enumerate(neg) if x})
        L1 = LaurentPoly(terms)
        A = _peel(L, L1, k, ap)
        if A is not None:
            out.append((A, L1))
    return out


def _peel(L, L1, k, ap):
    R = L
    coeffs = [Fraction(0)] * (k + 1)
    powers = [LaurentPoly({0: 1})]
    for _ in range(k):
        powers.append(powers[-1] * L1)
    for j in range(k, -1, -1):
        c = R.coeff(ap * j)
        coeffs[j] = c
        if c:
            R = R - powers[j] * c
    if not R.is_zero():
        return None
    return Poly(coeffs)


def laurent_right_factors(L, conductor=1):
    """All (G, H) with L = G o H, 1 < deg H < deg L, H normalized.

    H is either z^d or a Laurent polynomial monic at infinity with zero
    constant term; G is then a Laurent polynomial or a polynomial.
    """
    L = as_laurent(L)
    k_field = conductor * L.conductor() // gcd(conductor, L.conductor())
    n = L.degree
    out = []
    _, g = inner_power(L)
    for d in divisors(g):
        if 1 < d < n:
            M = LaurentPoly({e // d: x for e, x in L.t.items()})
            out.append((simplify(M), Poly.monomial(d)))
    if L.a > 0 and L.b > 0:
        for k in divisors(gcd(L.a, L.b)):
            if 1 < k < n:
                for A, L1 in _laurent_right_factor(L, k, k_field):
                    out.append((A, L1))
    return out


def decompose_laurent(L, conductor=1, _memo=None):
    """All maximal decompositions of a Laurent polynomial up to equivalence.

    Roots needed for the inner factors are taken in Q(zeta_N), N the lcm of
    ``conductor`` and the conductor of L's coefficients.
    """
    L0 = as_laurent(L)
    if L0 is None:
        raise ValueError("input has a pole outside {0, infinity}")
    memo = {} if _memo is None else _memo
    return sort_chains(_any_chains(simplify(L0), memo, conductor).values())


def _any_chains(F, memo, conductor):
    F = simplify(F)
    if isinstance(F, Poly):
        return _poly_chains(F, memo)
    if isinstance(F, LaurentPoly):
        if F.a == 0:
            # a polynomial in 1/z
            P = F.subs_power(-1).to_poly()
            inv = LaurentPoly({-1: 1})
            out = {}
            for c in _poly_chains(P, memo).values():
                fs = list(c.factors)
                fs[-1] = compose(fs[-1], inv)
                c2 = DecompChain(fs)
                out.setdefault(c2.key(), canonical_chain(c2))
            return out
        return _laurent_chains(F, memo, conductor)
    raise TypeError("only polynomials and Laurent polynomials are decomposed here")


def _laurent_chains(L, memo, conductor):
    key = ("L", tuple(sorted(L.t.items())), conductor)
    if key in memo:
        return memo[key]
    out = {}
    for G, H in laurent_right_factors(L, conductor):
        for cg in _any_chains(G, memo, conductor).values():
            for ch in _any_chains(H, memo, conductor).values():
                c = DecompChain(cg.factors + ch.factors)
                out.setdefault(c.key(), canonical_chain(c))
    if not out:
        c = DecompChain([L])
        out[c.key()] = c
    memo[key] = out
    return out


def decompose(F, conductor=1):
    """Dispatch on the type of F (polynomial or Laurent polynomial)."""
    F = simplify(F)
    if isinstance(F, Poly):
        return decompose_poly(F)
    return decompose_laurent(F, conductor)


def is_indecomposable(F, conductor=1):
    return all(len(c) == 1 for c in decompose(F, conductor))


# -- solvers for identities through powers of z ---------------------------

def solve_zc(L1, d1, L2, d2):
    """R with L1 = R o z^(D/d1), L2 = R o z^(D/d2), D = lcm(d1, d2); or None."""
    L1, L2 = as_laurent(L1), as_laurent(L2)
    if L1.subs_power(d1) != L2.subs_power(d2):
        return None
    D = d1 * d2 // gcd(d1, d2)
    e1 = D // d1
    if any(e % e1 for e in L1.t):
        return None
    R = LaurentPoly({e // e1: x for e, x in L1.t.items()})
    if R.subs_power(D // d2) != L2:
        return None
    return simplify(R)


def symmetry_extract(F, n):
    """R with F = R o D_n when F(z) = F(1/z) = F(zeta_n z); else None."""
    F = simplify(F)
    inv = LaurentPoly({-1: 1})
    if compose(F, inv) != F:
        return None
    if n > 1:
        rot = Poly([0, root_of_unity(n, 1)])
        if compose(F, rot) != F:
            return None
    R = solve_left_factor(F, laurent_D(n))
    return R


def recognize_power(P):
    """(mu, nu, n) with mu o P o nu = z^n, or None."""
    P = simplify(P)
    if not isinstance(P, Poly) or P.degree < 1:
        return None
    n, lc = P.degree, P.lead()
    s = P.coeff(n - 1) / (n * lc)
    t = P(-s)
    if P != Poly([s, 1]) ** n * lc + t:
        return None
    mu = Poly([-t / lc, 1 / lc])
    nu = Poly([-s, 1])
    return mu, nu, n


def chebyshev_ode_residue(P, n):
    """n^2 (P^2 - 1) - P'^2 (z^2 - 1); zero exactly for P = +-T_n."""
    return (P * P - 1) * (n * n) - P.derivative() ** 2 * Poly([-1, 0, 1])


def recognize_chebyshev(P, conductor=1):
    """(mu, nu, n) with mu o P o nu = T_n, or None."""
    P = simplify(P)
    if not isinstance(P, Poly) or P.degree < 1:
        return None
    n, lc = P.degree, P.lead()
    T = chebyshev(n)
    if n == 1:
        mu = Poly([-P.coeff(0) / lc, 1 / lc])
        return mu, Poly([0, 1]), 1
    gamma = -P.coeff(n - 1) / (n * lc)
    P0 = compose(P, Poly([gamma, 1]))
    if n == 2:
        betas = [Fraction(1)]
    else:
        p2 = P0.coeff(n - 2)
        if not p2:
            return None
        betas = kth_roots(-4 * p2 / (n * lc), 2, conductor * P.conductor())
    for beta in betas:
        kappa = Fraction(2) ** (n - 1) / (lc * beta ** n)
        Pt = compose(P0, Poly([0, beta])) * kappa
        lam = T.coeff(0) - Pt.coeff(0)
        Pt = Pt + lam
        if chebyshev_ode_residue(Pt, n).is_zero() and Pt == T:
            mu = Poly([lam, kappa])
            nu = Poly([gamma, beta])
            return mu, nu, n
    return None


def recognize_D(L, conductor=1):
    """(mu, nu, n) with mu o L o nu = D_n and nu = c z; or None."""
    L = as_laurent(L)
    if L is None or L.a != L.b or L.a == 0:
        return None
    n = L.a
    if any(e not in (n, -n, 0) for e in L.t):
        return None
    ln, lm = L.coeff(n), L.coeff(-n)
    lam = L.coeff(0)
    for c in kth_roots(ln / lm, 2 * n, conductor * L.conductor()):
        kappa = 2 * ln / c ** n
        nu = Poly([0, 1 / c])
        mu = Poly([-lam / kappa, 1 / kappa])
        if compose(mu, compose(L, nu)) == laurent_D(n):
            return mu, nu, n
    return None


def common_inner_factor(f, g):
    """W of maximal degree with f = f1 o W and g = g1 o W.

    The gcd of the numerators of f(x) - f(y) and g(x) - g(y), viewed as a
    polynomial in x over Q(y), is proportional to N_W(x) - W(y) D_W(x); any
    nonconstant ratio of its coefficients generates the same field as W.
    """
    H = bivariate_gcd(separated(f).swap(), separated(g).swap()).swap()
    # H is primitive in x; its x-coefficients are polynomials in y
    rows = {}
    for (i, j), v in H.t.items():
        rows.setdefault(i, {})[j] = v
    top = max(rows)
    hlead = Poly([rows[top].get(j, 0) for j in range(max(rows[top]) + 1)])
    W = Poly([0, 1])
    for i in sorted(rows):
        if i == top:
            continue
        hi = Poly([rows[i].get(j, 0) for j in range(max(rows[i]) + 1)])
        cand = RatFunc(hi, hlead)
        if cand.degree > 0:
            W = cand
            break
    W, _ = left_normal_form(W) if func_degree(simplify(W)) > 0 else (W, None)
    if func_degree(W) > 1:
        if solve_left_factor(f, W) is None or solve_left_factor(g, W) is None:
            raise AssertionError("inner factor failed to verify")
    return simplify(W)


# -- the six families of double decompositions -------------------------

def _need(cond, text):
    if not cond:
        raise ConstraintError("parameter constraint violated: " + text)


def case6_quadruple():
    from .parser import parse
    A = parse("(z^2-1)^3")
    C = parse("3*(3*z^4+4*z^3-6*z^2+4*z-1)/(3*z^2-1)^2")
    B = parse("3*z^4-4*z^3")
    D = parse("4*(9*z^6-9*z^4+18*z^3-15*z^2+6*z-1)/(3*z^2-1)^3")
    return A, C, B, D


def family_generator(case, n=None, m=None, r=None, l=None, L=None, S=None, eps=None, eps_j=None):
    """(A, C, B, D) of the given family with A o C = B o D checked exactly."""
    z = Poly([0, 1])
    if case == 1:
        _need(n is not None and n >= 1, "n >= 1")
        r = 0 if r is None else r
        _need(r >= 0, "r >= 0")
        _need(gcd(n, r) == 1, "gcd(n, r) = 1")
        L = LaurentPoly({0: 1}) if L is None else as_laurent(L)
        _need(L is not None and not L.is_zero(), "L is a nonzero Laurent polynomial")
        A = Poly.monomial(n)
        C = LaurentPoly({r: 1}) * L.subs_power(n)
        B = LaurentPoly({r: 1}) * L ** n
        D = Poly.monomial(n)
    elif case == 2:
        S = Poly([1]) if S is None else simplify(S)
        _need(isinstance(S, Poly) and not S.is_zero(), "S is a nonzero polynomial")
        w = RatFunc(Poly([0, 2]), Poly([1, 0, 1]))
        A = Poly.monomial(2)
        C = RatFunc(Poly([-1, 0, 1]), Poly([1, 0, 1])) * as_ratfunc(compose(S, w))
        B = Poly([1, 0, -1]) * S * S
        D = w
    elif case in (3, 4):
        _need(n is not None and m is not None and n >= 1 and m >= 1, "n, m >= 1")
        _need(gcd(n, m) == 1, "gcd(n, m) = 1")
        if case == 3:
            A, C, B, D = chebyshev(n), chebyshev(m), chebyshev(m), chebyshev(n)
        else:
            A, C, B, D = chebyshev(n), laurent_D(m), laurent_D(m), Poly.monomial(n)
    elif case == 5:
        _need(n is not None and m is not None and n >= 1 and m >= 1, "n, m >= 1")
        _need(gcd(n, m) == 1, "gcd(n, m) = 1")
        _need(l is not None and l > 1, "l > 1")
        if eps is None:
            j = 1 if eps_j is None else eps_j
            _need(j % 2 == 1, "eps = zeta_(2nl)^j needs odd j")
            eps = root_of_unity(2 * n * l, j)
        _need(eps ** (n * l) == -1, "eps^(nl) = -1")
        A = chebyshev(n * l) * -1
        C = laurent_D(1).subs_power(m, eps)
        B = chebyshev(m * l)
        D = laurent_D(n)
    elif case == 6:
        A, C, B, D = case6_quadruple()
    else:
        raise ConstraintError("case must be one of 1..6")
    A, C, B, D = (simplify(x) for x in (A, C, B, D))
    assert compose(A, C) == compose(B, D), "family identity failed"
    return A, C, B, D
