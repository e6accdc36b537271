from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from starnat.polys import Poly, first_on_class


def test_eval_and_normalization():
    p = Poly.of(1, 2, 3)
    assert p.eval_int(0) == 1
    assert p.eval_int(2) == 1 + 4 + 12
    assert Poly.of(1, 0, 0) == Poly.of(1)
    assert Poly.of(0).is_zero


def test_half_integer_eval():
    tri = Poly.of(0, Fraction(1, 2), Fraction(1, 2))
    assert [tri.eval_int(x) for x in range(6)] == [0, 1, 3, 6, 10, 15]
    with pytest.raises(ValueError):
        Poly.of(0, Fraction(1, 2)).eval_int(3)


@given(st.lists(st.integers(-5, 5), min_size=0, max_size=4),
       st.lists(st.integers(-5, 5), min_size=0, max_size=4),
       st.integers(-10, 10))
def test_arithmetic_matches_pointwise(a, b, x):
    p, q = Poly(tuple(a)), Poly(tuple(b))
    assert (p + q).eval_fraction(x) == p.eval_fraction(x) + q.eval_fraction(x)
    assert (p - q).eval_fraction(x) == p.eval_fraction(x) - q.eval_fraction(x)
    assert (p * q).eval_fraction(x) == p.eval_fraction(x) * q.eval_fraction(x)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3),
       st.lists(st.integers(-4, 4), min_size=1, max_size=3),
       st.integers(-8, 8))
def test_compose_matches_pointwise(a, b, x):
    p, q = Poly(tuple(a)), Poly(tuple(b))
    inner = q.eval_fraction(x)
    assert inner.denominator == 1  # integer coefficients at an integer point
    assert p.compose(q).eval_fraction(x) == p.eval_fraction(int(inner))


def test_root_bound_contains_all_integer_roots():
    p = Poly.of(-6, 11, -6, 1)  # roots 1, 2, 3
    bound = p.root_bound()
    roots = [x for x in range(bound + 1) if p.eval_numerator(x) == 0]
    assert roots == [1, 2, 3]
    assert all(p.eval_numerator(x) != 0 for x in range(bound + 1, bound + 50))


def test_natural_roots_on_class():
    p = Poly.of(-6, 11, -6, 1)
    assert p.natural_roots_on_class(1, 2, 0) == [1, 3]
    assert p.natural_roots_on_class(0, 2, 0) == [2]
    assert p.natural_roots_on_class(1, 2, 2) == [3]


def test_nonneg_from():
    p = Poly.of(-10, 1)  # negative below 10
    assert p.nonneg_from(0, 1, 0) == 10
    assert p.nonneg_from(0, 3, 0) == 12
    assert Poly.of(5).nonneg_from(0, 1, 2) == 2
    assert Poly.of(-5).nonneg_from(0, 1, 0) is None
    assert Poly.of(0, -1).nonneg_from(0, 1, 0) is None


def test_first_on_class():
    assert first_on_class(2, 5, 0) == 2
    assert first_on_class(2, 5, 3) == 7
    assert first_on_class(2, 5, 7) == 7
