from fractions import Fraction

import pytest
import sympy as sp

from rittkit import (Poly, chebyshev, power, Passport, passport_of_poly, genus_sum_rh0,
                     genus_pair_rh2, s_term, special_values, irreducibility, builtin_tuple,
                     RittError)
from rittkit.genus import classify_partition, genus_via_orbits, tuple_of_poly

x, y, w = sp.symbols("x y w")


def smooth_plane_genus(F):
    """Degree-genus formula after checking projective smoothness (oracle)."""
    d = sp.Poly(F, x, y).total_degree()
    H = sp.expand(w ** d * F.subs({x: x / w, y: y / w}))
    for chart in ({w: 1}, {x: 1}, {y: 1}):
        G = H.subs(chart)
        vs = sorted(G.free_symbols, key=str)
        sols = sp.solve([G] + [sp.diff(G, v) for v in vs], vs, dict=True)
        assert not sols, "curve is singular"
    return (d - 1) * (d - 2) // 2


def test_rh2_examples():
    B = Poly([0, -3, 0, 1])
    assert smooth_plane_genus(x ** 2 - (y ** 3 - 3 * y)) == 1
    g, terms = genus_pair_rh2(passport_of_poly(power(2)), passport_of_poly(B), detail=True)
    assert g == 1
    by_label = {}
    for label, _, t in terms:
        by_label[label] = by_label.get(label, 0) + t.value
    assert sorted(by_label.values()) == [-2, 0, 0]
    assert genus_pair_rh2(passport_of_poly(chebyshev(2)), passport_of_poly(chebyshev(3))) == 0
    # z^2 + b1 against z^2 + b2 with b1 != b2: gcd 2, genus 0
    assert genus_pair_rh2(passport_of_poly(power(2)), passport_of_poly(power(2) + 1)) == 0


def test_rh2_rejects_reducible():
    with pytest.raises(RittError):
        genus_pair_rh2(passport_of_poly(power(2)), passport_of_poly(power(2)))


def test_passports():
    p = passport_of_poly(Poly([0, -3, 0, 1]))
    assert sorted(p.entries) == [(Fraction(-2), (1, 2)), (Fraction(2), (1, 2))]
    assert passport_of_poly(power(5)).entries == [(Fraction(0), (5,))]
    p = passport_of_poly(Poly([0, 0, 0, -4, 3]))
    assert sorted(p.entries) == [(Fraction(-1), (1, 1, 2)), (Fraction(0), (1, 3))]
    assert p.riemann_hurwitz_ok()
    # irrational branch values carry algebraic labels
    p = passport_of_poly(Poly([0, -2, 0, 1]))
    assert len(p.entries) == 2 and all(isinstance(l, str) for l, _ in p.entries)
    assert Passport.from_json(p.to_json()) == p


def test_rh0_examples():
    assert genus_sum_rh0(builtin_tuple("pow", 2), builtin_tuple("pow", 3)) == 2
    for n in range(1, 6):
        assert genus_sum_rh0(builtin_tuple("pow", n), builtin_tuple("pow", n)) == 2 * n
    assert genus_sum_rh0(builtin_tuple("T", 2), builtin_tuple("T", 3)) == 2


def test_s_term():
    assert s_term(2, (1, 1, 1)).value == -2
    assert s_term(2, (1, 2)).value == 0
    for b in [(1, 1), (2, 3), (5,)]:
        assert s_term(1, b).value == 0
    t = s_term(2, (1, 1, 1))
    assert t.value == 2 * (1 - 3) - 1 + 3


@pytest.mark.parametrize("part,tag,d", [
    ((4,), "special", 4), ((2, 2, 2), "special", 2), ((1, 2, 2), "1-special", 2),
    ((1, 3), "1-special", 3), ((1, 1, 2), "2-special", 2), ((1, 1, 1), None, None),
])
def test_classify_partition(part, tag, d):
    assert classify_partition(part) == (tag, d)


def test_special_values_clauses():
    rep = special_values(passport_of_poly(power(6)))
    assert rep["counts"]["special"] == 1 and rep["consistent"]
    rep = special_values(passport_of_poly(chebyshev(5)))
    assert rep["counts"]["1-special"] == 2 and rep["consistent"]
    rep = special_values(passport_of_poly(Poly([0, 0, 0, -4, 3])))
    assert rep["counts"] == {"special": 0, "1-special": 1, "2-special": 1}
    assert rep["consistent"]
    rep = special_values(Passport(4, [(0, (2, 2)), (1, (4,))]))
    assert any(v.startswith("a") for v in rep["violations"])
    rep = special_values(Passport(7, [(0, (1, 3, 3)), (1, (1, 2, 2, 2))]))
    assert any(v.startswith("b") for v in rep["violations"])
    rep = special_values(Passport(5, [(0, (1, 2, 2)), (1, (1, 1, 3))]))
    assert rep["consistent"]
    rep = special_values(Passport(6, [(0, (1, 5)), (1, (1, 1, 2, 2))]))
    assert any(v.startswith("c") for v in rep["violations"])


def test_irreducibility():
    assert irreducibility(Poly([1, 0, 0, 0, 1]), Poly([0] * 9 + [1]))["verdict"] == "irreducible"
    r = irreducibility(chebyshev(4), chebyshev(4) * -1)
    assert r["verdict"] == "reducible" and r["o"] == 2
    T4 = lambda v: 8 * v ** 4 - 8 * v ** 2 + 1
    assert len(sp.factor_list(T4(x) + T4(y), x, y, extension=sp.sqrt(2))[1]) == 2
    assert irreducibility(chebyshev(2), chebyshev(2) * -1)["verdict"] == "irreducible"
    assert irreducibility(chebyshev(6), chebyshev(4) * -1)["verdict"] == "irreducible"
    assert irreducibility(power(4), power(6))["o"] == 2
    assert irreducibility(Poly([1, 1, 0, 1]) * Poly([0, 1, 0, 1]), power(2) * 7)["verdict"] == "unknown"


def test_orbit_route():
    assert genus_via_orbits(power(2), Poly([0, -3, 0, 1])) == (1, [1])
    assert genus_via_orbits(chebyshev(2), chebyshev(3)) == (1, [0])
    assert tuple_of_poly(Poly([1, 1, 0, 1])) is None
