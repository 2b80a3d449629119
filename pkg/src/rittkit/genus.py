"""Passports, genus formulas, s-terms and special values.

A passport lists, for each finite branch point of a polynomial, the
partition of its degree given by the cycle lengths over that point.
Branch points of a rational polynomial are never isolated numerically:
each irreducible factor m(t) of the critical-value polynomial is handled
once, over Q[t]/(m), and its partition is repeated for every root of m.
"""

from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import RittError
from .exact import NumberFieldElem, is_rational
from .poly import Poly, simplify, discriminant_in_t, squarefree_part, yun, compose
from . import monodromy as mono


class Passport:
    """Degree plus a list of (label, partition) entries over finite points."""

    __slots__ = ("degree", "entries")

    def __init__(self, degree, entries):
        self.degree = int(degree)
        clean = []
        for label, part in entries:
            part = tuple(sorted(int(x) for x in part))
            if sum(part) != self.degree:
                raise ValueError("partition %s does not sum to %d" % (part, self.degree))
            clean.append((mono.parse_label(label), part))
        self.entries = clean

    @property
    def s(self):
        """Number of nontrivial partitions."""
        return sum(1 for _, p in self.entries if any(x > 1 for x in p))

    def partitions(self):
        return [p for _, p in self.entries]

    def at(self, label):
        label = mono.parse_label(label)
        for x, p in self.entries:
            if x == label:
                return p
        return (1,) * self.degree

    def labels(self):
        return [x for x, _ in self.entries]

    def riemann_hurwitz_ok(self):
        """sum of part counts = (s - 1) n + 1 over the nontrivial entries."""
        nontriv = [p for p in self.partitions() if any(x > 1 for x in p)]
        s = len(nontriv)
        return sum(len(p) for p in nontriv) == (s - 1) * self.degree + 1

    def to_json(self):
        return {"degree": self.degree,
                "entries": [{"label": mono.label_str(x), "partition": list(p)} for x, p in self.entries]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["degree"], [(e["label"], e["partition"]) for e in obj["entries"]])

    def __eq__(self, o):
        return isinstance(o, Passport) and self.degree == o.degree and \
            sorted(self.entries, key=_ekey) == sorted(o.entries, key=_ekey)

    def __repr__(self):
        return "Passport(%d, %s)" % (self.degree, [(mono.label_str(x), p) for x, p in self.entries])


def _ekey(e):
    return (mono.label_key(e[0]), e[1])


def _partition_from_yun(Q):
    parts = []
    for a, i in yun(Q):
        parts.extend([i] * a.degree)
    return tuple(sorted(parts))


def _factor_over_Q(p):
    """Monic irreducible factors of a rational polynomial (sympy)."""
    import sympy as sp
    t = sp.Symbol("t")
    expr = sum(sp.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(p.c))
    _, facs = sp.factor_list(expr, t)
    out = []
    for f, _ in facs:
        coeffs = sp.Poly(f, t).all_coeffs()
        q = Poly([Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in reversed(coeffs)])
        if q.degree > 0:
            out.append(q.monic())
    return out


def passport_of_poly(P):
    """Passport of a polynomial with rational coefficients."""
    P = simplify(P)
    if not isinstance(P, Poly):
        raise TypeError("passport_of_poly expects a polynomial")
    if not all(is_rational(c) for c in P.c):
        raise RittError("passports are computed for rational coefficients only")
    if P.degree < 2:
        raise RittError("degree must be at least 2")
    R = squarefree_part(discriminant_in_t(P))
    entries = []
    for m in sorted(_factor_over_Q(R), key=lambda q: (q.degree, [str(c) for c in q.c])):
        if m.degree == 1:
            tau = -m.coeff(0)
            entries.append((tau, _partition_from_yun(P - tau)))
            continue
        tau = NumberFieldElem(m.c, [0, 1])
        Q = Poly([P.coeff(0) - tau] + list(P.c[1:]))
        part = _partition_from_yun(Q)
        mtext = str(m).replace("z", "t")
        for j in range(1, m.degree + 1):
            entries.append(("root%d(%s)" % (j, mtext), part))
    entries.sort(key=_ekey)
    return Passport(P.degree, entries)


# -- genus formulas ----------------------------------------------------------

def genus_sum_rh0(f, g):
    """Right side of the genus-sum formula, from cycle types alone."""
    f, g = mono.merged(f, g)
    n, m = f.degree, g.degree
    total = 0
    for a, b in zip(f.perms, g.perms):
        ca = [len(c) for c in mono.cycles(a)]
        cb = [len(c) for c in mono.cycles(b)]
        total += sum(gcd(x, y) for x in ca for y in cb)
    return total - (f.r - 2) * n * m


class STerm:
    __slots__ = ("value", "clause", "bound", "holds", "coprime_check")

    def __init__(self, value, clause, bound, holds, coprime_check):
        self.value, self.clause, self.bound = value, clause, bound
        self.holds, self.coprime_check = holds, coprime_check

    def to_json(self):
        return {"value": self.value, "clause": self.clause, "bound": self.bound,
                "holds": self.holds, "coprime_check": self.coprime_check}

    def __repr__(self):
        return "STerm(%d, %s)" % (self.value, self.clause)


def s_term(a, b_parts, q=None):
    """s = a(1 - q) - 1 + sum gcd(a, b_j), with the bound that applies."""
    b_parts = [int(x) for x in b_parts]
    q = len(b_parts) if q is None else q
    value = a * (1 - q) - 1 + sum(gcd(a, b) for b in b_parts)
    off = [b for b in b_parts if b % a]
    if a == 1:
        clause, bound, holds = "a=1", "s = 0", value == 0
    elif len(off) >= 3:
        clause, bound, holds = "three-or-more-not-divisible", "s <= -2", value <= -2
    elif len(off) == 2:
        eq = all(gcd(a, b) == a // 2 and a % 2 == 0 for b in off)
        clause = "two-not-divisible"
        bound = "s = -1" if eq else "s < -1"
        holds = value == -1 if eq else value < -1
    elif len(off) == 1:
        clause = "one-not-divisible"
        bound = "s = -1 + gcd(a, b) = %d" % (-1 + gcd(a, off[0]))
        holds = value == -1 + gcd(a, off[0])
    else:
        clause, bound, holds = "all-divisible", "s = a - 1", value == a - 1
    cor = None
    if reduce(gcd, b_parts, 0) == 1:
        if a == 1 or len(off) == 1:
            expect = "s = 0"
            ok = value == 0
        elif a == 2 and len(off) == 2:
            expect = "s = -1"
            ok = value == -1
        else:
            expect = "s < -1"
            ok = value < -1
        cor = {"expect": expect, "holds": ok and value <= 0}
    return STerm(value, clause, bound, holds, cor)


def _merge_passports(pA, pB):
    labels = sorted(set(pA.labels()) | set(pB.labels()), key=mono.label_key)
    return [(x, pA.at(x), pB.at(x)) for x in labels]


def genus_pair_rh2(pA, pB, detail=False):
    """g(A, B) from passports: -2g = gcd(m, n) - 1 + sum of s-terms.

    Meant for irreducible pairs; a negative or odd right side raises.
    """
    n, m = pA.degree, pB.degree
    rows = _merge_passports(pA, pB)
    terms = []
    for label, a_part, b_part in rows:
        for a in a_part:
            terms.append((label, a, s_term(a, b_part)))
    rhs = gcd(m, n) - 1 + sum(t.value for _, _, t in terms)
    if rhs % 2 or rhs > 0:
        raise RittError("formula gives -2g = %d; the pair is probably reducible" % rhs)
    g = -rhs // 2
    if detail:
        return g, terms
    return g


# -- special values ------------------------------------------------------------

def classify_partition(part):
    """('special', d) | ('1-special', d) | ('2-special', d) | (None, None)."""
    part = list(part)
    g = reduce(gcd, part, 0)
    if g > 1:
        return "special", g
    for skip in (1, 2):
        best = None
        idx = range(len(part))
        from itertools import combinations
        for out in combinations(idx, skip):
            rest = [part[i] for i in idx if i not in out]
            if not rest:
                continue
            d = reduce(gcd, rest, 0)
            if d > 1 and all(part[i] % d for i in out):
                best = d if best is None else max(best, d)
        if best:
            return "%d-special" % skip, best
    return None, None


def _is_12_shape(p):
    return p[0] == 1 and all(x == 2 for x in p[1:]) and len(p) > 1


def special_values(p):
    """Per-entry tags and the verdict of the special-value constraints."""
    tags = []
    for label, part in p.entries:
        tag, d = classify_partition(part)
        tags.append({"label": mono.label_str(label), "partition": list(part), "tag": tag, "d": d})
    ns = sum(1 for t in tags if t["tag"] == "special")
    n1 = sum(1 for t in tags if t["tag"] == "1-special")
    n2 = sum(1 for t in tags if t["tag"] == "2-special")
    violations = []
    if ns >= 2:
        violations.append("a: two special values")
    if ns >= 1 and n1 >= 1:
        violations.append("a: a special value and a 1-special value")
    if n1 >= 3:
        violations.append("a: three 1-special values")
    nontriv = sorted(tuple(part) for _, part in p.entries if any(x > 1 for x in part))
    if n1 == 2 and not violations:
        if not (len(nontriv) == 2 and all(_is_12_shape(x) for x in nontriv)):
            violations.append("b: two 1-special values need passport {(1,2,...,2),(1,2,...,2)}")
    if n1 == 1 and n2 >= 1 and not violations:
        allowed = [sorted([(1, 1, 2), (1, 3)]), sorted([(1, 2, 2), (1, 1, 3)])]
        if nontriv not in allowed:
            violations.append("c: one 1-special and one 2-special value need "
                              "{(1,1,2),(1,3)} or {(1,2,2),(1,1,3)}")
    return {
        "entries": tags,
        "counts": {"special": ns, "1-special": n1, "2-special": n2},
        "consistent": not violations,
        "violations": violations,
        "riemann_hurwitz_ok": p.riemann_hurwitz_ok(),
    }


# -- tuples of recognizable polynomials and irreducibility ---------------------------

def tuple_of_poly(P):
    """Monodromy tuple of P when P is affinely equivalent to z^n or T_n.

    Labels are the exact branch values; the Chebyshev tuple is relabelled
    when the outer conjugator reverses the order of -1 and 1.  Returns None
    for anything else.
    """
    from .decompose import recognize_power, recognize_chebyshev, mobius_inverse
    P = simplify(P)
    rp = recognize_power(P)
    if rp is not None:
        mu, _, n = rp
        c = mono._cycle_perm(n)
        return mono.MonodromyTuple(n, [mobius_inverse(mu)(Fraction(0)), mono.INF], [c, mono.inv(c)])
    rc = recognize_chebyshev(P)
    if rc is not None:
        mu, _, n = rc
        back = mobius_inverse(mu)
        lo, hi = back(Fraction(-1)), back(Fraction(1))
        if not (is_rational(lo) and is_rational(hi)):
            return None
        t = mono.builtin_tuple("T", n, sign=1 if lo < hi else -1)
        return mono.MonodromyTuple(n, sorted([lo, hi]) + [mono.INF], t.perms)
    return None


def irreducibility(A, B, tuples=None):
    """Verdict on A(x) - B(y) = 0: irreducible, reducible (with o) or unknown."""
    A, B = simplify(A), simplify(B)
    n, m = max(A.degree, 0), max(B.degree, 0)
    if gcd(n, m) == 1:
        return {"verdict": "irreducible", "o": 1, "reason": "coprime degrees"}
    if tuples is not None:
        o = mono.o_count(*tuples)
        return {"verdict": "irreducible" if o == 1 else "reducible", "o": o,
                "reason": "fiber product of the supplied tuples"}
    tA, tB = tuple_of_poly(A), tuple_of_poly(B)
    if tA is not None and tB is not None:
        try:
            o = mono.o_count(tA, tB)
        except Exception:
            o = None
        if o is not None:
            return {"verdict": "irreducible" if o == 1 else "reducible", "o": o,
                    "reason": "fiber product of the power/Chebyshev tuples"}
    return {"verdict": "unknown", "o": None, "reason": "no certificate available"}


def genus_via_orbits(A, B):
    """(o, [genera]) of A(x) = B(y) through built-in tuples, or None."""
    tA, tB = tuple_of_poly(A), tuple_of_poly(B)
    if tA is None or tB is None:
        return None
    fp = mono.fiber_product(tA, tB)
    return fp.count, [c.genus for c in fp.components]
