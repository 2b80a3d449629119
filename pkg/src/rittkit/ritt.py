"""Double decompositions in R_2: classification, equation solvers, Ritt moves.

Witness convention for a classified quadruple A o C = B o D::

    A = R o At,  B = R o Bt,  C = Ct o W,  D = Dt o W,  At o Ct = Bt o Dt
    At = alpha o Ah o mu1,   Ct = mu1^-1 o Ch o beta
    Bt = alpha o Bh o mu2,   Dt = mu2^-1 o Dh o beta

where (Ah, Ch, Bh, Dh) is a member of one of the six families, exactly as
produced by ``family_generator``.  Everything re-verifies with ``compose``.
"""

from collections import deque
from fractions import Fraction
from itertools import permutations
from math import gcd

from .errors import RittError, BoundExceeded, NotCertified, ConstraintError
from .exact import (as_scalar, kth_roots, roots_in_field, root_of_unity, conductor_of)
from .poly import (Poly, LaurentPoly, RatFunc, compose, compose_all, simplify, as_ratfunc,
                   as_laurent, chebyshev, laurent_D, func_degree, solve_left_factor, yun)
from .decompose import (DecompChain, canonical_chain, decompose, mobius, mobius_inverse,
                        recognize_power, recognize_chebyshev, recognize_D, common_inner_factor,
                        family_generator, is_indecomposable, func_key)
from . import genus as _genus

Z = Poly([0, 1])
INF = "inf"

DEFAULT_DEPTH = 8
DEFAULT_CAP = 10 ** 4


def _cond(*fs):
    n = 1
    for f in fs:
        c = simplify(f).conductor() if not isinstance(f, (int, Fraction)) else 1
        n = n * c // gcd(n, c)
    return n


# -- points, values and Moebius maps -----------------------------------------

def _value(F, p):
    r = as_ratfunc(F)
    if p == INF:
        dn, dd = r.num.degree, r.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return Fraction(0)
        return as_scalar(r.num.lead() / r.den.lead())
    d = r.den(p)
    if not d:
        return INF
    return as_scalar(r.num(p) / d)


def _mult(P, p):
    k = 0
    lin = Poly([-p, 1])
    while P.degree > 0:
        q, rem = divmod(P, lin)
        if not rem.is_zero():
            break
        P, k = q, k + 1
    return k


def _ramification(F, p):
    """Local degree of F at p."""
    if p == INF:
        return _ramification(compose(F, RatFunc(Poly([1]), Poly([0, 1]))), Fraction(0))
    r = as_ratfunc(F)
    v = _value(r, p)
    if v == INF:
        return _mult(r.den, p)
    return _mult(r.num - r.den * v, p)


def _fiber_poly(r, v):
    return r.den if v == INF else r.num - r.den * v


def _wronskian(r):
    return r.num.derivative() * r.den - r.num * r.den.derivative()


def _special_points(F, cond):
    """In-field part of F^-1({0, inf} and the critical values), with signatures.

    The set is Moebius-covariant: if F = G o nu then nu maps it onto G's set.
    """
    r = as_ratfunc(F)
    crit = roots_in_field(_wronskian(r).c, cond)
    if _ramification(r, INF) > 1:
        crit.append(INF)
    values = [Fraction(0), INF]
    for c in crit:
        v = _value(r, c)
        if v not in values:
            values.append(v)
    pts = set()
    for v in values:
        pts.update(roots_in_field(_fiber_poly(r, v).c, cond))
    if _value(r, INF) in values:
        pts.add(INF)
    out = []
    for p in pts:
        v = _value(r, p)
        cls = "0" if v == 0 else ("inf" if v == INF else "x")
        out.append((p, (cls, _ramification(r, p))))
    out.sort(key=lambda t: (t[1], str(t[0])))
    return out


def _mat_to_zero_inf_one(p, q, r):
    """Matrix of the map sending p, q, r to 0, infinity, 1."""
    if p == INF:
        return [[0, r - q], [1, -q]]
    if q == INF:
        return [[1, -p], [0, r - p]]
    if r == INF:
        return [[1, -p], [1, -q]]
    return [[r - q, -p * (r - q)], [r - p, -q * (r - p)]]


def mobius_through(src, dst):
    """Moebius map sending src[i] to dst[i] for three distinct points each."""
    S = _mat_to_zero_inf_one(*src)
    T = _mat_to_zero_inf_one(*dst)
    Ti = [[T[1][1], -T[0][1]], [-T[1][0], T[0][0]]]
    M = [[Ti[0][0] * S[0][0] + Ti[0][1] * S[1][0], Ti[0][0] * S[0][1] + Ti[0][1] * S[1][1]],
         [Ti[1][0] * S[0][0] + Ti[1][1] * S[1][0], Ti[1][0] * S[0][1] + Ti[1][1] * S[1][1]]]
    return mobius(M[0][0], M[0][1], M[1][0], M[1][1])


def right_equiv(F, G, cond=1):
    """All Moebius nu (up to the field) with F = G o nu."""
    F, G = simplify(F), simplify(G)
    d = func_degree(F)
    if d != func_degree(G) or d < 1:
        return []
    cond = cond * _cond(F, G) // gcd(cond, _cond(F, G))
    if d == 1:
        return [simplify(compose(mobius_inverse(G), F))]
    out = []
    if isinstance(F, Poly) and isinstance(G, Poly):
        lf, lg = F.lead(), G.lead()
        for a in kth_roots(lf / lg, d, cond):
            b = (F.coeff(d - 1) / a ** (d - 1) - G.coeff(d - 1)) / (d * lg)
            nu = Poly([b, a])
            if compose(G, nu) == F:
                out.append(nu)
        return out
    LF, LG = as_laurent(F), as_laurent(G)
    if LF is not None and LG is not None and LF.a > 0 and LF.b > 0 and LG.a > 0 and LG.b > 0:
        for flip in (False, True):
            H = LG.subs_power(-1) if flip else LG
            if (H.a, H.b) != (LF.a, LF.b):
                continue
            for c in kth_roots(LF.coeff(LF.a) / H.coeff(LF.a), LF.a, cond):
                nu = RatFunc(Poly([c]), Poly([0, 1])) if flip else Poly([0, c])
                if compose(G, nu) == F:
                    out.append(simplify(nu))
        return out
    pf, pg = _special_points(F, cond), _special_points(G, cond)
    if len(pf) != len(pg):
        return []
    if len(pf) == 2:
        return _two_point_equiv(F, G, pf, pg, cond)
    if len(pf) < 3:
        return []
    src = [p for p, _ in pf[:3]]
    sig = [s for _, s in pf[:3]]
    seen = set()
    for tri in permutations(range(len(pg)), 3):
        if [pg[i][1] for i in tri] != sig:
            continue
        nu = mobius_through(src, [pg[i][0] for i in tri])
        k = func_key(nu)
        if k in seen:
            continue
        seen.add(k)
        if compose(G, nu) == F:
            out.append(nu)
    return out


def _to_zero_inf(p, q):
    """Moebius map sending p to 0 and q to infinity."""
    if p == INF:
        return RatFunc(Poly([1]), Poly([-q, 1]))
    if q == INF:
        return Poly([-p, 1])
    return mobius(1, -p, 1, -q)


def _scale_solutions(F1, G1, cond):
    """c with G1(c z) = F1."""
    f, g = as_ratfunc(F1), as_ratfunc(G1)
    if (f.num.degree, f.den.degree) != (g.num.degree, g.den.degree):
        return []
    k = g.den.degree
    eqs = []
    for j, x in enumerate(g.num.c):
        if x and j != k:
            eqs.append((j - k, f.num.coeff(j) * g.den.lead() / x))
    for i, x in enumerate(g.den.c):
        if x and i != k:
            eqs.append((i - k, f.den.coeff(i) * g.den.lead() / x))
    if not eqs:
        return []
    e, v = min(eqs, key=lambda t: abs(t[0]))
    if not v:
        return []
    if e < 0:
        e, v = -e, 1 / v
    return [c for c in kth_roots(v, e, cond) if compose(G1, Poly([0, c])) == F1]


def _two_point_equiv(F, G, pf, pg, cond):
    out = []
    (p, sp_), (q, sq) = pf
    for (p2, s2), (q2, t2) in (pg, pg[::-1]):
        if (s2, t2) != (sp_, sq):
            continue
        M, M2 = _to_zero_inf(p, q), _to_zero_inf(p2, q2)
        F1 = compose(F, mobius_inverse(M))
        G1 = compose(G, mobius_inverse(M2))
        for c in _scale_solutions(F1, G1, cond):
            nu = simplify(compose(mobius_inverse(M2), compose(Poly([0, c]), M)))
            if compose(G, nu) == F:
                out.append(nu)
    return out


# -- R_2 normal form ---------------------------------------------------------------------

def _quadratic_conductor(P):
    """Conductor of Q(sqrt(disc)) for a rational quadratic, else None."""
    if P.degree != 2 or not all(conductor_of(c) == 1 for c in P.c):
        return None
    a, b, c = (Fraction(as_scalar(x)) for x in (P.coeff(2), P.coeff(1), P.coeff(0)))
    disc = b * b - 4 * a * c
    num = disc.numerator * disc.denominator
    sign = -1 if num < 0 else 1
    num = abs(num)
    d, k = 1, 2
    while k * k <= num:
        while num % (k * k) == 0:
            num //= k * k
        if num % k == 0:
            d *= k
            num //= k
        k += 1
    d = sign * d * num
    if d == 1:
        return 1
    return abs(d) if d % 4 == 1 else 4 * abs(d)


def r2_normalize(F, conductor=1, extend=False):
    """(mu1, mu2, L, w) with mu1 o F o mu2 = L a Laurent polynomial.

    w is the value whose fiber has at most two points.  Raises NotCertified
    when no such value with in-field fiber is found among the candidates.
    With ``extend`` a fiber made of two conjugate quadratic points is
    accepted by enlarging the field to the matching cyclotomic one.
    """
    F = simplify(F)
    if isinstance(F, LaurentPoly) and F.a == 0:
        inv = RatFunc(Poly([1]), Poly([0, 1]))
        return Z, inv, simplify(compose(F, inv)), INF
    if isinstance(F, (Poly, LaurentPoly)):
        return Z, Z, F, INF
    r = as_ratfunc(F)
    cond = conductor * r.conductor() // gcd(conductor, r.conductor())
    cands = [INF, _value(r, INF), Fraction(0)]
    for p in roots_in_field(_wronskian(r).c, cond):
        cands.append(_value(r, p))
    seen = []
    for w in cands:
        if w in seen:
            continue
        seen.append(w)
        P = _fiber_poly(r, w)
        sq = P.degree - _gcd_deg(P)
        at_inf = _value(r, INF) == w
        if sq + at_inf > 2 or sq + at_inf == 0:
            continue
        finite = roots_in_field(P.c, cond) if sq else []
        if len(finite) != sq and extend and sq == 2:
            from .poly import gcd_poly
            k = _quadratic_conductor(P // gcd_poly(P, P.derivative()))
            if k:
                finite = roots_in_field(P.c, cond * k // gcd(cond, k))
        if len(finite) != sq:
            continue
        pts = finite + ([INF] if at_inf else [])
        if len(pts) == 1:
            p = pts[0]
            mu2 = Z if p == INF else RatFunc(Poly([1, p]), Poly([0, 1]))
        else:
            p, q = pts
            if q == INF:
                mu2 = Poly([p, 1])
            else:
                mu2 = mobius(q, p, 1, 1)
        mu1 = Z if w == INF else RatFunc(Poly([1]), Poly([-w, 1]))
        L = as_laurent(compose(mu1, compose(r, mu2)))
        if L is not None:
            return simplify(mu1), simplify(mu2), simplify(L), w
    raise NotCertified("cannot certify R_2 membership in this field")


def _gcd_deg(P):
    from .poly import gcd_poly
    return gcd_poly(P, P.derivative()).degree


def decompose_any(F, conductor=1):
    """Maximal chains of any certified R_2 function."""
    F = simplify(F)
    if isinstance(F, (Poly, LaurentPoly)):
        return decompose(F, conductor)
    mu1, mu2, L, _ = r2_normalize(F, conductor)
    a, b = mobius_inverse(mu1), mobius_inverse(mu2)
    out = []
    for c in decompose(L, conductor):
        fs = list(c.factors)
        fs[0] = compose(a, fs[0])
        fs[-1] = compose(fs[-1], b)
        out.append(DecompChain(fs))
    return out


# -- witnesses ---------------------------------------------------------------------------------

class CaseWitness:
    __slots__ = ("case", "params", "R", "W", "alpha", "beta", "mu1", "mu2",
                 "tilde", "hat", "swapped", "matches", "reducible_pair")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))

    def verify(self, A, C, B, D):
        if self.swapped:
            A, C, B, D = B, D, A, C
        At, Ct, Bt, Dt = self.tilde
        Ah, Ch, Bh, Dh = self.hat
        ai, bi = mobius_inverse(self.mu1), mobius_inverse(self.mu2)
        checks = [
            compose(self.R, At) == A, compose(self.R, Bt) == B,
            compose(Ct, self.W) == C, compose(Dt, self.W) == D,
            compose(At, Ct) == compose(Bt, Dt),
            compose(self.alpha, compose(Ah, self.mu1)) == At,
            compose(ai, compose(Ch, self.beta)) == Ct,
            compose(self.alpha, compose(Bh, self.mu2)) == Bt,
            compose(bi, compose(Dh, self.beta)) == Dt,
            compose(Ah, Ch) == compose(Bh, Dh),
        ]
        return all(checks)

    def to_json(self):
        from .parser import to_text
        names = ("A", "C", "B", "D")
        p = {}
        for k, v in (self.params or {}).items():
            p[k] = v if isinstance(v, (int, bool, str)) or v is None else to_text(v)
        return {
            "case": self.case,
            "matches": self.matches,
            "swapped": bool(self.swapped),
            "params": p,
            "R": to_text(self.R), "W": to_text(self.W),
            "alpha": to_text(self.alpha), "beta": to_text(self.beta),
            "mu1": to_text(self.mu1), "mu2": to_text(self.mu2),
            "tilde": {n: to_text(f) for n, f in zip(names, self.tilde)},
            "family": {n: to_text(f) for n, f in zip(names, self.hat)},
            "reducible_pair": self.reducible_pair,
        }


def _fit(tq, hq, alphas, cond, betas=None):
    """(alpha, mu1, mu2, beta) realizing the witness shape, or None."""
    At, Ct, Bt, Dt = tq
    Ah, Ch, Bh, Dh = hq
    for alpha in alphas:
        ai = mobius_inverse(alpha)
        A1, B1 = compose(ai, At), compose(ai, Bt)
        for mu1 in right_equiv(A1, Ah, cond):
            C1 = compose(mu1, Ct)
            for mu2 in right_equiv(B1, Bh, cond):
                D1 = compose(mu2, Dt)
                bs = betas if betas is not None else \
                    right_equiv(D1, Dh, cond) or right_equiv(C1, Ch, cond)
                for beta in bs:
                    if compose(Ch, beta) == C1 and compose(Dh, beta) == D1:
                        return alpha, mu1, mu2, beta
    return None


def _alphas(a0):
    return [a0, compose(a0, Poly([0, -1]))]


def _match_case1(tq, cond):
    At, Ct, Bt, Dt = tq
    if not isinstance(At, Poly) or not isinstance(Dt, Poly):
        return None
    ra, rd = recognize_power(At), recognize_power(Dt)
    if ra is None or rd is None or ra[2] != rd[2]:
        return None
    n = ra[2]
    alpha = mobius_inverse(ra[0])
    mu2, beta = rd[0], mobius_inverse(rd[1])
    for mu1 in right_equiv(compose(mobius_inverse(alpha), At), Poly.monomial(n), cond):
        Ch = as_laurent(compose(mu1, compose(Ct, rd[1])))
        Bh = as_laurent(compose(mobius_inverse(alpha), compose(Bt, mobius_inverse(mu2))))
        if Ch is None or Bh is None or Ch.is_zero():
            continue
        res = {e % n for e in Ch.t}
        if len(res) != 1:
            continue
        r = res.pop()
        if gcd(n, r) != 1:
            continue
        L = LaurentPoly({(e - r) // n: c for e, c in Ch.t.items()})
        try:
            hq = family_generator(1, n=n, r=r, L=L)
        except (ConstraintError, AssertionError):
            continue
        if simplify(hq[1]) == simplify(Ch) and simplify(hq[2]) == simplify(Bh):
            return {"n": n, "r": r, "L": simplify(L)}, hq, (alpha, mu1, mu2, beta)
    return None


def _sqrt_quadratic_form(q):
    """(k, l) with q = k * l^2, l linear or constant; None if not such."""
    a, b, c = q.coeff(2), q.coeff(1), q.coeff(0)
    if q.degree > 2:
        return None
    if a:
        if b * b != 4 * a * c:
            return None
        return a, Poly([b / (2 * a), 1])
    if b:
        return None
    return c, Poly([1])


def _poly_sqrt(Q, cond):
    """Square roots of a polynomial inside the field."""
    if Q.is_zero() or Q.degree % 2:
        return []
    out = []
    for s in kth_roots(Q.lead(), 2, cond):
        k = Q.degree // 2
        S = [Fraction(0)] * (k + 1)
        S[k] = s
        for i in range(k - 1, -1, -1):
            acc = Q.coeff(k + i)
            for j in range(i + 1, k):
                acc -= S[j] * S[k + i - j]
            S[i] = acc / (2 * s)
        P = Poly(S)
        if P * P == Q:
            out.append(P)
    return out


def _match_case2(tq, cond):
    At, Ct, Bt, Dt = tq
    if not isinstance(At, Poly) or not isinstance(Bt, Poly) or At.degree != 2:
        return None
    ra = recognize_power(At)
    if ra is None:
        return None
    alpha = mobius_inverse(ra[0])
    B1 = compose(ra[0], Bt)
    odd = Poly([1])
    for a, i in yun(B1):
        if i % 2:
            odd = odd * a
    if odd.degree != 2:
        return None
    odd = odd.monic()
    h1, h0 = odd.coeff(1), odd.coeff(0)
    M = RatFunc(Poly([1, -1]), Poly([1, 1]))
    Ninv = RatFunc(Poly([1, 1]), Poly([1, -1]))
    for s in kth_roots(h1 * h1 / 4 - h0, 2, cond):
        mu2 = Poly([h1 / 2 / s, 1 / s])
        Bh = simplify(compose(B1, mobius_inverse(mu2)))
        Q, rem = divmod(Bh, Poly([1, 0, -1]))
        if not rem.is_zero():
            continue
        D3 = as_ratfunc(compose(M, compose(mu2, Dt)))
        n1, n2 = _sqrt_quadratic_form(D3.num), _sqrt_quadratic_form(D3.den)
        if n1 is None or n2 is None:
            continue
        betas = []
        for rr in kth_roots(n1[0] / n2[0], 2, cond):
            gamma = RatFunc(n1[1] * rr, n2[1])
            betas.append(simplify(compose(Ninv, gamma)))
        for S in _poly_sqrt(Q, cond):
            hq = family_generator(2, S=S)
            fit = _fit(tq, hq, [alpha], cond, betas=betas)
            if fit:
                return {"S": S}, hq, fit
    return None


def _match_chebyshev_composite(tq, case, cond):
    At, Ct, Bt, Dt = tq
    X = simplify(compose(At, Ct))
    if case == 3:
        if not all(isinstance(f, Poly) for f in tq):
            return None
        n, m = At.degree, Ct.degree
        if gcd(n, m) != 1 or Bt.degree != m or Dt.degree != n:
            return None
        rec = recognize_chebyshev(X, cond)
        if rec is None:
            return None
        hq = family_generator(3, n=n, m=m)
        fit = _fit(tq, hq, _alphas(mobius_inverse(rec[0])), cond)
        return ({"n": n, "m": m}, hq, fit) if fit else None
    LX = as_laurent(X)
    if LX is None:
        return None
    rec = recognize_D(LX, cond)
    if rec is None:
        return None
    alphas = _alphas(mobius_inverse(rec[0]))
    if case == 4:
        if not isinstance(At, Poly) or not isinstance(Dt, Poly):
            return None
        n, m2 = At.degree, func_degree(Ct)
        if m2 % 2:
            return None
        m = m2 // 2
        if gcd(n, m) != 1:
            return None
        hq = family_generator(4, n=n, m=m)
        fit = _fit(tq, hq, alphas, cond)
        return ({"n": n, "m": m}, hq, fit) if fit else None
    if not isinstance(At, Poly) or not isinstance(Bt, Poly):
        return None
    l = gcd(At.degree, Bt.degree)
    n, m = At.degree // l, Bt.degree // l
    if gcd(n, m) != 1 or l < 2 or func_degree(Ct) != 2 * m or func_degree(Dt) != 2 * n:
        return None
    N = 2 * n * l
    c5 = cond * N // gcd(cond, N)
    for j in range(1, N, 2):
        hq = family_generator(5, n=n, m=m, l=l, eps_j=j)
        fit = _fit(tq, hq, alphas, c5)
        if fit:
            return {"n": n, "m": m, "l": l, "eps": root_of_unity(N, j), "eps_j": j}, hq, fit
    return None


def _match_case6(tq, cond):
    At, Ct, Bt, Dt = tq
    if not isinstance(Bt, Poly) or not isinstance(At, Poly):
        return None
    if (At.degree, func_degree(Ct), Bt.degree, func_degree(Dt)) != (6, 4, 4, 6):
        return None
    parts = {i: a for a, i in yun(Bt.derivative())}
    if set(parts) != {1, 2} or parts[1].degree != 1 or parts[2].degree != 1:
        return None
    p0 = -parts[2].coeff(0) / parts[2].coeff(1)
    p1 = -parts[1].coeff(0) / parts[1].coeff(1)
    b0, b1 = Bt(p0), Bt(p1)
    alpha = Poly([b0, b0 - b1])
    hq = family_generator(6)
    fit = _fit(tq, hq, [alpha], cond)
    return ({}, hq, fit) if fit else None


def _match(case, tq, cond):
    if case == 1:
        return _match_case1(tq, cond)
    if case == 2:
        return _match_case2(tq, cond)
    if case in (3, 4, 5):
        return _match_chebyshev_composite(tq, case, cond)
    return _match_case6(tq, cond)


def common_left_factors(A, C, B, D, conductor=1):
    """(U, At, Bt) with A = U o At, B = U o Bt, At o C = Bt o D, deg U > 1."""
    A, B = simplify(A), simplify(B)
    if not isinstance(A, (Poly, LaurentPoly)) or not isinstance(B, (Poly, LaurentPoly)):
        return []
    if func_degree(A) < 2 or func_degree(B) < 2:
        return []

    def splits(F):
        out = []
        for c in decompose(F, conductor):
            fs = list(c.factors)
            for k in range(1, len(fs)):
                out.append((compose_all(fs[:k]), compose_all(fs[k:])))
        return out

    found, seen = [], set()
    sb = splits(B)
    for UA, At in splits(A):
        for UB, Bt in sb:
            if func_degree(UA) != func_degree(UB):
                continue
            for nu in right_equiv(UB, UA, conductor):
                Bt2 = simplify(compose(nu, Bt))
                if compose(At, C) == compose(Bt2, D):
                    key = (func_key(UA), func_key(At), func_key(Bt2))
                    if key not in seen:
                        seen.add(key)
                        found.append((simplify(UA), simplify(At), Bt2))
    found.sort(key=lambda t: -func_degree(t[0]))
    return found


def _is_exact(R, W, f):
    _, _, tq, (_, hq, fit) = f
    return func_key(R) == func_key(Z) and func_key(W) == func_key(Z) and \
        all(func_key(simplify(x)) == func_key(Z) for x in fit) and \
        all(func_key(simplify(a)) == func_key(simplify(b)) for a, b in zip(tq, hq))


def classify_double(A, C, B, D, conductor=1, cases=(1, 2, 3, 4, 5, 6)):
    """CaseWitness for A o C = B o D.

    The reported case is the lowest one whose witness has identity
    conjugators throughout (the input is literally a family member); failing
    that, the lowest matching case.  ``matches`` lists every case that fit.
    """
    A, C, B, D = (simplify(x) for x in (A, C, B, D))
    H = compose(A, C)
    if H != compose(B, D):
        raise ConstraintError("A o C and B o D differ")
    cond = conductor * _cond(A, B, C, D) // gcd(conductor, _cond(A, B, C, D))
    if func_degree(H) > 0:
        r2_normalize(H, cond, extend=True)
    try:
        W = common_inner_factor(C, D)
    except Exception:
        W = Z
    Ct, Dt = C, D
    if func_degree(W) > 1:
        Ct, Dt = solve_left_factor(C, W), solve_left_factor(D, W)
        if Ct is None or Dt is None:
            W, Ct, Dt = Z, C, D
    else:
        W = Z
    R, At, Bt = Z, A, B
    lf = common_left_factors(A, Ct, B, Dt, cond)
    if lf:
        R, At, Bt = lf[0]
    At, Ct, Bt, Dt = (simplify(x) for x in (At, Ct, Bt, Dt))
    found = []
    for case in cases:
        for swapped in (False, True):
            tq = (Bt, Dt, At, Ct) if swapped else (At, Ct, Bt, Dt)
            m = _match(case, tq, cond)
            if m:
                found.append((case, swapped, tq, m))
                break
    matches = [f[0] for f in found]
    exact = [f for f in found if _is_exact(R, W, f)]
    first = exact[0] if exact else (found[0] if found else None)
    if first is None:
        raise BoundExceeded("unclassified (bound): no family recognizer matched")
    case, swapped, tq, (params, hq, fit) = first
    alpha, mu1, mu2, beta = fit
    red = None
    if case == 5:
        red = params["l"] > 2
    w = CaseWitness(case=case, params=params, R=R, W=W, alpha=alpha, beta=beta,
                    mu1=mu1, mu2=mu2, tilde=tq, hat=tuple(simplify(x) for x in hq),
                    swapped=swapped, matches=matches, reducible_pair=red)
    assert w.verify(A, C, B, D), "witness failed to re-verify"
    return w


def solve_eq2(A, L1, L2, d, conductor=1):
    """A o L1 = L2 o z^d: power branch (case 1) or Chebyshev branch (case 4)."""
    A, L1, L2 = simplify(A), simplify(L1), simplify(L2)
    D = Poly.monomial(d)
    if compose(A, L1) != compose(L2, D):
        raise ConstraintError("A o L1 and L2 o z^d differ")
    w = classify_double(A, L1, L2, D, conductor, cases=(1, 4))
    w.case = "eq2-power-branch" if w.case == 1 else "eq2-chebyshev-branch"
    return w


def solve_posl(A, B, n, m, mu=1, bound=64):
    """(R, l) with A = R o (mu^(nml) T_lm), B = R o T_ln; None if no l works."""
    A, B = simplify(A), simplify(B)
    if gcd(n, m) != 1:
        raise ConstraintError("gcd(n, m) must be 1")
    mu = as_scalar(mu)
    lhs = compose(A, compose(laurent_D(n), Poly([0, mu])))
    F = compose(B, laurent_D(m))
    if lhs != F:
        raise ConstraintError("A o D_n o (mu z) and B o D_m differ")
    d = None
    inv2 = 1 / (mu * mu)
    for k in range(1, bound + 1):
        if inv2 ** k == 1:
            d = k
            break
    if d is None:
        return None
    nm = n * m
    l = (d * nm // gcd(d, nm)) // nm
    R = solve_left_factor(F, laurent_D(nm * l))
    if R is None:
        return None
    R = simplify(R)
    sgn = mu ** (nm * l)
    if mu ** (2 * nm * l) != 1:
        return None
    if compose(R, chebyshev(l * n)) != B or compose(R, chebyshev(l * m) * sgn) != A:
        return None
    return R, l


# -- specialness ---------------------------------------------------------------------

def detect_special(A, C, B, D, conductor=1):
    A, C, B, D = (simplify(x) for x in (A, C, B, D))
    if compose(A, C) != compose(B, D):
        raise ConstraintError("A o C and B o D differ")
    for name, F in (("C", C), ("D", D)):
        if isinstance(F, (Poly, LaurentPoly)):
            if not is_indecomposable(F, conductor):
                return {"special": False, "reason": "%s is decomposable" % name}
    irr = _genus.irreducibility(A, B) if isinstance(A, Poly) and isinstance(B, Poly) else \
        ({"verdict": "irreducible", "o": 1} if gcd(func_degree(A), func_degree(B)) == 1
         else {"verdict": "unknown", "o": None})
    if irr["verdict"] == "irreducible":
        return {"special": False, "reason": "the pair A, B is irreducible"}
    lf = common_left_factors(A, C, B, D, conductor)
    if lf:
        U, At, Bt = lf[0]
        return {"special": False, "reason": "common left factor", "U": U, "At": At, "Bt": Bt}
    if irr["verdict"] == "unknown":
        raise BoundExceeded("reducibility of the pair A, B is undecided")
    return {"special": True, "reason": "reducible pair without a common left factor"}


# -- weak equivalence --------------------------------------------------------------------------

class MoveChain:
    __slots__ = ("chains", "positions")

    def __init__(self, chains, positions):
        self.chains, self.positions = list(chains), list(positions)

    def __len__(self):
        return len(self.positions)

    def verify(self):
        """Each step keeps the composite and, up to equivalence, touches
        only the factors at positions i and i + 1."""
        H = self.chains[0].composite()
        for k, i in enumerate(self.positions):
            a, b = self.chains[k], self.chains[k + 1]
            if len(a) != len(b) or b.composite() != H:
                return False
            if compose(a[i], a[i + 1]) == compose(b[i], b[i + 1]):
                continue
            # b is stored canonically: compare after merging the moved pair
            fa = list(a.factors[:i]) + [compose(a[i], a[i + 1])] + list(a.factors[i + 2:])
            fb = list(b.factors[:i]) + [compose(b[i], b[i + 1])] + list(b.factors[i + 2:])
            if canonical_chain(fa).key() != canonical_chain(fb).key():
                return False
        return True

    def reversed(self):
        return MoveChain(self.chains[::-1], self.positions[::-1])

    def to_json(self):
        return {"chains": [c.to_json() for c in self.chains], "positions": self.positions}


_SPLITS = {}
_NEIGHBOURS = {}
_CACHE_LIMIT = 50000


class _MoveGraph:
    """Neighbours of canonical chains under Ritt moves.

    Splits and neighbour lists are memoized across searches, keyed by the
    conductor, so all-pairs queries on one composite reuse the same graph.
    """

    def __init__(self, conductor=1):
        self.cond = conductor
        if len(_SPLITS) > _CACHE_LIMIT or len(_NEIGHBOURS) > _CACHE_LIMIT:
            _SPLITS.clear()
            _NEIGHBOURS.clear()
        self.memo = _SPLITS

    def pair_splits(self, X):
        k = (self.cond, func_key(X))
        if k not in self.memo:
            try:
                self.memo[k] = [c for c in decompose(X, self.cond) if len(c) == 2]
            except (TypeError, ValueError):
                self.memo[k] = []
        return self.memo[k]

    def neighbours(self, chain):
        ck = (self.cond, chain.key())
        if ck in _NEIGHBOURS:
            return _NEIGHBOURS[ck]
        fs = list(chain.factors)
        out = []
        for i in range(len(fs) - 1):
            X = simplify(compose(fs[i], fs[i + 1]))
            for c in self.pair_splits(X):
                new = canonical_chain(DecompChain(fs[:i] + list(c.factors) + fs[i + 2:]))
                out.append((i, new))
        _NEIGHBOURS[ck] = out
        return out


def _to_laurent_chain(ch, mu1, mu2):
    fs = list(ch.factors)
    fs[0] = compose(mu1, fs[0])
    fs[-1] = compose(fs[-1], mu2)
    return DecompChain(fs)


def weak_equivalence(d1, d2, depth=DEFAULT_DEPTH, cap=DEFAULT_CAP, conductor=1):
    """(status, MoveChain | None); status is found | bound | disconnected.

    'disconnected' is only reported when the whole reachable set was explored
    without hitting the depth or the cap.
    """
    d1 = d1 if isinstance(d1, DecompChain) else DecompChain(d1)
    d2 = d2 if isinstance(d2, DecompChain) else DecompChain(d2)
    H = d1.composite()
    if H != d2.composite():
        raise ConstraintError("chains have different composites")
    mu1, mu2 = Z, Z
    if not isinstance(simplify(H), (Poly, LaurentPoly)):
        mu1, mu2, _, _ = r2_normalize(H, conductor)
    a, b = mobius_inverse(mu1), mobius_inverse(mu2)
    s = canonical_chain(_to_laurent_chain(d1, mu1, mu2))
    t_key = canonical_chain(_to_laurent_chain(d2, mu1, mu2)).key()
    g = _MoveGraph(conductor)
    start = s.key()
    parent = {start: (None, None, s)}
    q = deque([(s, 0)])
    hit_bound = False
    found = start == t_key
    while q and not found:
        ch, dist = q.popleft()
        if dist >= depth:
            hit_bound = True
            continue
        for i, nb in g.neighbours(ch):
            k = nb.key()
            if k in parent:
                continue
            if len(parent) >= cap:
                hit_bound = True
                break
            parent[k] = (ch.key(), i, nb)
            if k == t_key:
                found = True
                break
            q.append((nb, dist + 1))
    if not found:
        return ("bound" if hit_bound else "disconnected"), None
    path, pos = [], []
    k = t_key
    while k is not None:
        pk, i, ch = parent[k]
        path.append(ch)
        if i is not None:
            pos.append(i)
        k = pk
    path.reverse()
    pos.reverse()
    back = [_to_laurent_chain(c, a, b) for c in path]
    back[0] = d1
    mc = MoveChain(back, pos)
    for c in back:
        assert c.composite() == H, "move changed the composite"
    return "found", mc


def first_ritt_check(F, depth=DEFAULT_DEPTH, cap=DEFAULT_CAP, conductor=1):
    """Chain lengths, degree multisets and move-connectivity of all maximal chains."""
    F = simplify(F)
    chains = decompose_any(F, conductor)
    mu1, mu2 = Z, Z
    if not isinstance(F, (Poly, LaurentPoly)):
        mu1, mu2, _, _ = r2_normalize(F, conductor)
    lch = [canonical_chain(_to_laurent_chain(c, mu1, mu2)) for c in chains]
    keys = [c.key() for c in lch]
    index = {k: i for i, k in enumerate(keys)}
    g = _MoveGraph(conductor)
    edges = set()
    seen = {keys[0]: 0}
    q = deque([(lch[0], 0)])
    hit_bound = False
    while q:
        ch, dist = q.popleft()
        if dist >= depth:
            hit_bound = True
            continue
        for i, nb in g.neighbours(ch):
            k = nb.key()
            if k in index and ch.key() in index and k != ch.key():
                e = tuple(sorted((index[ch.key()], index[k])))
                edges.add(e)
            if k not in seen:
                if len(seen) >= cap:
                    hit_bound = True
                    continue
                seen[k] = dist + 1
                q.append((nb, dist + 1))
    reached = all(k in seen for k in keys)
    lengths = sorted({len(c) for c in chains})
    degs = {tuple(sorted(c.degrees())) for c in chains}
    connected = True if reached else ("bound" if hit_bound else False)
    return {
        "chains": chains,
        "count": len(chains),
        "lengths": lengths,
        "equal_length": len(lengths) == 1,
        "degree_multisets_equal": len(degs) == 1,
        "connected": connected,
        "edges": sorted(edges),
    }
