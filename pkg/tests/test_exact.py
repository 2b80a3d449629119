import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rittkit import CycloNum, NumberFieldElem, root_of_unity, kth_roots
from rittkit.exact import (cyclotomic_poly, descend, euler_phi, roots_in_field, scalar_str,
                           as_scalar)


def approx(x):
    """Complex value of an exact scalar (oracle for the field arithmetic)."""
    if isinstance(x, CycloNum):
        w = cmath.exp(2j * cmath.pi / x.k)
        return sum(float(c) * w ** j for j, c in enumerate(x.c))
    return complex(float(x))


def test_root_of_unity_basics():
    assert root_of_unity(1, 0) == 1
    assert root_of_unity(2, 1) == -1
    assert root_of_unity(8, 2) ** 2 == root_of_unity(2, 1)
    z6 = root_of_unity(6)
    assert z6 + z6 ** -1 == 1
    assert (-1) ** 3 == -1 and as_scalar(CycloNum(5, [-1])) ** 3 == -1


def test_cyclotomic_poly_matches_sympy():
    import sympy as sp
    x = sp.Symbol("x")
    for k in (1, 2, 3, 4, 6, 8, 9, 12, 15, 24):
        ref = [Fraction(int(c)) for c in reversed(sp.Poly(sp.cyclotomic_poly(k, x), x).all_coeffs())]
        assert list(cyclotomic_poly(k)) == ref
        assert len(ref) - 1 == euler_phi(k)


def test_cross_conductor_equality():
    i = root_of_unity(4)
    assert root_of_unity(8, 2) == i
    assert root_of_unity(12, 3) == i
    assert descend(root_of_unity(12, 3)).k == 4
    assert descend(root_of_unity(6, 3)) == -1


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 8, 12]), st.lists(coeff, min_size=1, max_size=6),
       st.lists(coeff, min_size=1, max_size=6))
def test_field_ops_against_complex(k, a, b):
    x, y = CycloNum(k, a), CycloNum(k, b)
    assert abs(approx(x + y) - (approx(x) + approx(y))) < 1e-9
    assert abs(approx(x * y) - approx(x) * approx(y)) < 1e-6
    if x != 0:
        assert x * x.inverse() == 1
        assert abs(approx(y / x) - approx(y) / approx(x)) < 1e-6


def test_scalar_str():
    assert scalar_str(Fraction(-3, 4)) == "-3/4"
    assert scalar_str(root_of_unity(8, 3)) == "zeta8^3"
    assert scalar_str(root_of_unity(4) * 2 - 1) == "-1 + 2*zeta4"


def test_kth_roots():
    assert sorted(kth_roots(4, 2)) == [-2, 2]
    assert kth_roots(2, 2) == []
    assert kth_roots(Fraction(-8, 27), 3) == [Fraction(-2, 3)]
    r = kth_roots(-1, 2, conductor=4)
    assert len(r) == 2 and all(x ** 2 == -1 for x in r)
    assert len(kth_roots(1, 6, conductor=6)) == 6
    assert len(kth_roots(2, 2, conductor=8)) == 2  # sqrt 2 lies in Q(zeta_8)


def test_roots_in_field():
    assert sorted(roots_in_field([-2, 1, 1])) == [-2, 1]
    assert roots_in_field([1, 0, 1]) == []
    rs = roots_in_field([1, 0, 1], conductor=4)
    assert len(rs) == 2 and all(r ** 2 == -1 for r in rs)
    # t^2 - 3 splits over Q(zeta_12)
    assert len(roots_in_field([-3, 0, 1], conductor=12)) == 2


def test_number_field():
    t = NumberFieldElem([-2, 0, 1], [0, 1])
    assert t * t == 2
    u = t + 1
    assert u * u.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        (t - t).inverse()
