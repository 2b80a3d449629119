import pytest

from rittkit import (Poly, LaurentPoly, RatFunc, compose, chebyshev, laurent_D, power, parse,
                     family_generator, classify_double, solve_eq2, solve_posl, detect_special,
                     r2_normalize, weak_equivalence, first_ritt_check, DecompChain, decompose,
                     root_of_unity, ConstraintError, BoundExceeded)
from rittkit.decompose import mobius, mobius_inverse, equivalence
from rittkit.ritt import right_equiv, decompose_any

Z = Poly([0, 1])


def test_r2_normalize():
    L = laurent_D(3)
    mu1, mu2, out, _ = r2_normalize(L)
    assert out == L and mu1 == Z and mu2 == Z
    mu1, mu2, out, _ = r2_normalize(parse("1/z^2"))
    assert out == power(2)
    assert compose(mu1, compose(parse("1/z^2"), mu2)) == out
    F = parse("((z^2-1)/(z^2+1))^2")
    mu1, mu2, out, w = r2_normalize(F)
    assert w == 1 and isinstance(out, LaurentPoly)
    assert compose(mu1, compose(F, mu2)) == out


def test_right_equiv():
    nu = mobius(1, 1, 1, -2)
    F = compose(laurent_D(2), nu)
    sols = right_equiv(F, laurent_D(2))
    assert sols and all(compose(laurent_D(2), s) == F for s in sols)


def test_classify_examples():
    w = classify_double(chebyshev(2), chebyshev(3), chebyshev(3), chebyshev(2))
    assert w.case == 3 and w.mu1 == Z and w.mu2 == Z and 1 in w.matches
    w = classify_double(chebyshev(3), laurent_D(2), laurent_D(2), power(3))
    assert w.case == 4
    quad = family_generator(5, n=1, m=1, l=3, eps=root_of_unity(6, 1))
    w = classify_double(*quad)
    assert w.case == 5 and w.reducible_pair and w.verify(*quad)


@pytest.mark.parametrize("case,kw", [
    (1, dict(n=3, r=1, L=parse("z + 2"))), (2, dict(S=parse("z + 1"))), (3, dict(n=3, m=4)),
    (4, dict(n=2, m=3)), (5, dict(n=2, m=1, l=2)), (6, {}),
])
def test_every_family_classifies(case, kw):
    quad = family_generator(case, **kw)
    w = classify_double(*quad)
    assert w.case == case and w.verify(*quad)
    assert w.to_json()["case"] == case


def test_classify_conjugated_case6():
    A, C, B, D = family_generator(6)
    R = parse("z^2 + 1")
    nu = mobius(1, 1, 1, -2)
    quad = (compose(R, A), compose(C, nu), compose(R, B), compose(D, nu))
    w = classify_double(*quad)
    assert w.case == 6 and w.verify(*quad)
    assert compose(w.R, w.tilde[0]) == quad[0]


def test_classify_conjugated_chebyshev():
    a, b = Poly([1, 3]), Poly([-2, 5])
    quad = (compose(chebyshev(5), mobius_inverse(a)), compose(a, chebyshev(2)),
            compose(chebyshev(2), mobius_inverse(b)), compose(b, chebyshev(5)))
    w = classify_double(*quad)
    # T_2 is also z^2 up to conjugation; without an exact member the lowest case is reported
    assert w.matches == [1, 3] and w.case == 1 and w.verify(*quad)
    w3 = classify_double(*quad, cases=(3,))
    assert w3.case == 3 and w3.verify(*quad)


def test_classify_rejects_unequal():
    with pytest.raises(ConstraintError):
        classify_double(power(2), power(3), power(3), Poly([0, 1, 1]))


def test_solve_eq2():
    w = solve_eq2(power(2), parse("z*(z^2+1)"), parse("z*(z+1)^2"), 2)
    assert w.case == "eq2-power-branch" and w.params["n"] == 2 and w.params["r"] == 1
    w = solve_eq2(chebyshev(3), laurent_D(2), laurent_D(2), 3)
    assert w.case == "eq2-chebyshev-branch"


def test_solve_posl():
    assert solve_posl(chebyshev(2), chebyshev(3), 3, 2) == (Z, 1)
    assert solve_posl(Z, Z, 1, 1) == (Z, 1)
    assert solve_posl(chebyshev(2), chebyshev(2), 1, 1, mu=-1) == (chebyshev(2), 1)
    z8 = root_of_unity(8)
    assert solve_posl(chebyshev(4), chebyshev(4) * -1, 1, 1, mu=z8, bound=2) is None
    assert solve_posl(chebyshev(4), chebyshev(4) * -1, 1, 1, mu=z8) == (Poly([0, -1]), 4)
    with pytest.raises(ConstraintError):
        solve_posl(chebyshev(2), chebyshev(3), 2, 3)


def test_detect_special():
    r = detect_special(chebyshev(2), chebyshev(3), chebyshev(3), chebyshev(2))
    assert r["special"] is False
    r = detect_special(power(2), Z, Z, power(2))
    assert r["special"] is False
    quad = family_generator(5, n=1, m=1, l=3, eps=root_of_unity(6, 1))
    assert detect_special(*quad)["special"] is True
    r = detect_special(compose(power(2), power(2)), power(3), compose(power(2), power(3)), power(2))
    assert r["special"] is False and "U" in r


def test_weak_equivalence_examples():
    a = DecompChain([chebyshev(2), chebyshev(3)])
    b = DecompChain([chebyshev(3), chebyshev(2)])
    status, mc = weak_equivalence(a, b)
    assert status == "found" and len(mc) == 1 and mc.verify()
    status, mc = weak_equivalence(a, a)
    assert status == "found" and len(mc) == 0
    D = laurent_D(1)
    c1 = DecompChain([chebyshev(2), chebyshev(2), chebyshev(3), D])
    c2 = DecompChain([D, power(2), power(2), power(3)])
    status, mc = weak_equivalence(c1, c2)
    assert status == "found" and mc.verify() and equivalence(mc.chains[-1], c2) is not None
    status, back = weak_equivalence(c2, c1)
    assert status == "found" and len(back) == len(mc)
    assert mc.reversed().chains[0] == mc.chains[-1]


def test_weak_equivalence_bound():
    c1 = DecompChain([chebyshev(2), chebyshev(2), chebyshev(3), laurent_D(1)])
    c2 = DecompChain([laurent_D(1), power(2), power(2), power(3)])
    status, mc = weak_equivalence(c1, c2, depth=1)
    assert status == "bound" and mc is None
    with pytest.raises(ConstraintError):
        weak_equivalence(DecompChain([power(2)]), DecompChain([power(3)]))


@pytest.mark.parametrize("F,count,length", [
    (power(6) + 1, 2, 2), (chebyshev(12), 3, 3), (laurent_D(12), 20, 4), (power(12), 3, 3),
])
def test_first_ritt_check(F, count, length):
    rep = first_ritt_check(F)
    assert rep["count"] == count and rep["lengths"] == [length]
    assert rep["equal_length"] and rep["degree_multisets_equal"]
    assert rep["connected"] is True


def test_rational_r2_chains():
    nu = mobius(1, 1, 1, -2)
    F = compose(laurent_D(6), nu)
    chains = decompose_any(F)
    assert len(chains) == len(decompose(laurent_D(6)))
    assert all(c.composite() == F for c in chains)
    assert first_ritt_check(F)["connected"] is True
