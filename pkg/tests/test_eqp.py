from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from starnat.epsets import EpSet
from starnat.eqp import (EqpFunction, InvalidFunctionError, NotNatValuedError,
                         ZPiecewise, cantor_pair, cantor_unpair, char_function,
                         compare, compose, equalizer, pair, poly_combine,
                         preimage)
from starnat.polys import Poly
from starnat.sampling import random_eqp, random_epset, rng_for

IDENT = EqpFunction.identity()
SQUARE = EqpFunction.from_poly(Poly.of(0, 0, 1))
SUCC = EqpFunction.from_poly(Poly.of(1, 1))
DOUBLE = EqpFunction.from_poly(Poly.of(0, 2))


def eqps(label):
    return st.integers(0, 10_000).map(lambda s: random_eqp(rng_for(s, label)))


def test_eval_examples():
    assert SQUARE(7) == 49
    assert char_function(EpSet.evens())(4) == 1
    assert pair(IDENT, SQUARE)(2) == 25  # cantor_pair(2, 4)
    assert cantor_pair(2, 4) == 25


def test_branch_dispatch_and_prefix():
    f = EqpFunction.from_parts(2, (9, 9), 2, (Poly.of(0, 1), Poly.of(1, 3)))
    assert f(0) == 9 and f(1) == 9
    assert f(4) == 4
    assert f(5) == 16


def test_invalid_functions_rejected():
    with pytest.raises(InvalidFunctionError):
        EqpFunction.from_poly(Poly.of(-1, 1))  # negative at 0
    with pytest.raises(InvalidFunctionError):
        EqpFunction.from_poly(Poly.of(0, Fraction(1, 2)))  # not integer valued
    with pytest.raises(InvalidFunctionError):
        EqpFunction.from_parts(0, (), 1, (Poly.of(0, -1),))  # eventually negative


def test_canonical_form():
    # identical branches merge to modulus 1
    f = EqpFunction.from_parts(0, (), 2, (Poly.of(0, 1), Poly.of(0, 1)))
    assert f.modulus == 1
    # prefix values produced by the branch are absorbed
    g = EqpFunction.from_parts(2, (0, 1), 1, (Poly.of(0, 1),))
    assert g.threshold == 0
    assert f == g


def test_compose_examples():
    assert compose(SUCC, DOUBLE)(5) == 11
    c = compose(SQUARE, SUCC)
    assert [c(x) for x in range(1000)] == [(x + 1) ** 2 for x in range(1000)]
    triple = EqpFunction.from_poly(Poly.of(0, 3))
    c2 = compose(char_function(EpSet.evens()), triple)
    assert [c2(x) for x in range(1000)] == [1 - x % 2 for x in range(1000)]


@given(eqps("cf"), eqps("cg"))
@settings(max_examples=40, deadline=None)
def test_compose_matches_pointwise(f, g):
    c = compose(g, f)
    hi = c.threshold + 4 * c.modulus
    for x in list(range(hi)) + list(range(200, 220)):
        assert c(x) == g(f(x))


def test_equalizer_examples():
    assert equalizer(IDENT, IDENT) == EpSet.naturals()
    assert equalizer(IDENT, SQUARE) == EpSet.finite({0, 1})
    assert equalizer(DOUBLE, EqpFunction.from_poly(Poly.of(5, 1))) == EpSet.singleton(5)


@given(eqps("ef"), eqps("eg"))
@settings(max_examples=40, deadline=None)
def test_equalizer_against_brute_force(f, g):
    eq = equalizer(f, g)
    for x in range(1000):
        assert eq.member(x) == (f(x) == g(x))


def test_preimage_examples():
    assert preimage(SUCC, EpSet.evens()) == EpSet.odds()
    assert preimage(SQUARE, EpSet.evens()) == EpSet.evens()
    assert preimage(random_eqp(rng_for(3, "any")), EpSet.naturals()) == EpSet.naturals()


@given(eqps("pf"), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_preimage_against_brute_force(f, set_seed):
    target = random_epset(rng_for(set_seed, "pt"))
    pre = preimage(f, target)
    for x in range(1000):
        assert pre.member(x) == target.member(f(x))


def test_char_function_examples():
    ch = char_function(EpSet.evens())
    assert ch.branches == (Poly.of(1), Poly.of(0))
    assert char_function(EpSet.empty()) == EqpFunction.constant(0)
    ch2 = char_function(EpSet.finite({0, 1}))
    assert [ch2(x) for x in range(5)] == [1, 1, 0, 0, 0]


def test_pair_examples():
    assert pair(EqpFunction.constant(0), EqpFunction.constant(0)) == EqpFunction.constant(0)
    h = pair(IDENT, IDENT)
    assert [h(n) for n in range(101)] == [cantor_pair(n, n) for n in range(101)]
    assert h(1) == 4  # 2n^2 + 2n


@given(eqps("prf"), eqps("prg"))
@settings(max_examples=30, deadline=None)
def test_pair_unpair_roundtrip(f, g):
    h = pair(f, g)
    for n in range(200):
        assert cantor_unpair(h(n)) == (f(n), g(n))


def test_poly_combine_examples():
    add = poly_combine({(1, 0): 1, (0, 1): 1}, (IDENT, EqpFunction.constant(1)))
    assert add == SUCC
    mul = poly_combine({(1, 1): 1}, (IDENT, IDENT))
    assert mul == SQUARE
    with pytest.raises(NotNatValuedError):
        poly_combine({(1, 0): 1, (0, 1): -1}, (EqpFunction.constant(1), IDENT))


def test_poly_combine_rejects_negative_prefix_values():
    # x - y is negative only at x = 0 here; still not a map into the naturals
    with pytest.raises(NotNatValuedError):
        poly_combine({(1, 0): 1, (0, 1): -1}, (IDENT, EqpFunction.constant(1)))


def test_compare_examples():
    part = compare(IDENT, SQUARE)
    assert part.equal == EpSet.finite({0, 1})
    assert part.less == EpSet.cofinite_excluding({0, 1})
    assert part.greater == EpSet.empty()
    part2 = compare(DOUBLE, EqpFunction.from_poly(Poly.of(5, 1)))
    assert part2.less == EpSet.finite(range(5))
    assert part2.equal == EpSet.singleton(5)
    assert part2.greater == EpSet.from_threshold(6)
    assert compare(EqpFunction.constant(5), EqpFunction.constant(5)).equal == EpSet.naturals()


@given(eqps("cpf"), eqps("cpg"))
@settings(max_examples=40, deadline=None)
def test_compare_is_exact_partition(f, g):
    part = compare(f, g)
    assert part.is_partition()
    for x in range(300):
        a, b = f(x), g(x)
        assert part.less.member(x) == (a < b)
        assert part.equal.member(x) == (a == b)
        assert part.greater.member(x) == (a > b)


@given(eqps("clf"), eqps("clg"))
@settings(max_examples=25, deadline=None)
def test_class_closure(f, g):
    # constructors validate; reaching here means the results are valid members
    for h in (compose(g, f), pair(f, g), char_function(equalizer(f, g))):
        assert isinstance(h, EqpFunction)
        assert h(10) >= 0


# -- integer-valued piecewise maps --------------------------------------------


def zp(f):
    return ZPiecewise.from_eqp(f)


def test_zpiecewise_arithmetic():
    d = zp(IDENT) - zp(DOUBLE)
    assert [d(x) for x in range(5)] == [0, -1, -2, -3, -4]
    assert (zp(IDENT) * zp(IDENT))(7) == 49
    assert zp(IDENT).power(3)(4) == 64
    assert zp(IDENT).scale(-2)(3) == -6


def test_zpiecewise_zero_and_sign_sets():
    d = zp(SQUARE) - zp(IDENT)          # n^2 - n
    assert d.zero_set() == EpSet.finite({0, 1})
    neg, zero, pos = (zp(IDENT) - zp(EqpFunction.constant(3))).sign_sets()
    assert neg == EpSet.finite({0, 1, 2})
    assert zero == EpSet.singleton(3)
    assert pos == EpSet.from_threshold(4)


def test_zpiecewise_congruence_and_in_set():
    z = zp(SQUARE)
    cong = z.congruence_set(1, 4)  # n^2 = 1 (mod 4) iff n odd
    assert cong == EpSet.odds()
    inside = (zp(IDENT) - zp(EqpFunction.constant(2))).in_set(EpSet.evens())
    for x in range(100):
        v = x - 2
        assert inside.member(x) == (v >= 0 and v % 2 == 0)


def test_zpiecewise_clamp():
    vee = zp(IDENT) - zp(EqpFunction.constant(3))
    clamped = vee.clamp_nonneg()
    assert isinstance(clamped, EqpFunction)
    assert [clamped(x) for x in range(6)] == [0, 0, 0, 0, 1, 2]
    down = zp(EqpFunction.constant(2)) - zp(IDENT)
    assert [down.clamp_nonneg()(x) for x in range(6)] == [2, 1, 0, 0, 0, 0]


def test_zpiecewise_compose_inner():
    t = (zp(IDENT) - zp(EqpFunction.constant(1)))
    composed = t.compose_inner(DOUBLE)
    assert [composed(x) for x in range(5)] == [2 * x - 1 for x in range(5)]
