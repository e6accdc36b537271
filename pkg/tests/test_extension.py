from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from starnat.epsets import EpSet
from starnat.eqp import EqpFunction, compose, equalizer
from starnat.extension import Context, orbit_explore, pair_index_set
from starnat.polys import Poly
from starnat.rep2 import LinearCongruence, ProductSet, StripX, diagonal
from starnat.sampling import random_epset, random_eqp, rng_for
from starnat.ultra import Distinct, EqualCertified, UltrafilterHandle

IDENT = EqpFunction.identity()
SQUARE = EqpFunction.from_poly(Poly.of(0, 0, 1))
SUCC = EqpFunction.from_poly(Poly.of(1, 1))


@pytest.fixture
def ctx():
    return Context(UltrafilterHandle.profinite_int(0))


def eqps(label):
    return st.integers(0, 10_000).map(lambda s: random_eqp(rng_for(s, label)))


def epsets(label):
    return st.integers(0, 10_000).map(lambda s: random_epset(rng_for(s, label)))


def test_star_apply_examples(ctx):
    xi = ctx.point(IDENT)
    assert ctx.star_apply(SUCC, xi).rep == SUCC
    composed = ctx.star_apply(SQUARE, ctx.point(SUCC))
    assert [composed.rep(x) for x in range(1000)] == [(x + 1) ** 2 for x in range(1000)]
    std = ctx.star_apply(EqpFunction.constant(5), xi)
    assert ctx.is_standard(std) and ctx.standard_value(std) == 5


def test_star_member_examples(ctx):
    assert ctx.star_member(ctx.point(IDENT), EpSet.evens())
    odd_point = ctx.point(EqpFunction.from_poly(Poly.of(1, 2)))
    assert not ctx.star_member(odd_point, EpSet.evens())
    # on standard points star membership is plain membership
    for k in range(8):
        for seed in range(5):
            s = random_epset(rng_for(seed, "std"))
            assert ctx.star_member(ctx.standard(k), s) == s.member(k)


def test_composition_preserved_exactly(ctx):
    for seed in range(40):
        rng = rng_for(seed, "comp")
        f, g = random_eqp(rng), random_eqp(rng)
        xi = ctx.point(random_eqp(rng))
        assert ctx.hyper_equal(ctx.star_apply(g, ctx.star_apply(f, xi)),
                               ctx.star_apply(compose(g, f), xi))


def test_equalizer_preserved_exactly(ctx):
    one = ctx.standard(1)
    for seed in range(40):
        rng = rng_for(seed, "equ")
        f, g = random_eqp(rng), random_eqp(rng)
        xi = ctx.point(random_eqp(rng))
        from starnat.eqp import char_function
        flag = ctx.star_apply(char_function(equalizer(f, g)), xi)
        assert ctx.hyper_equal(flag, one) == ctx.hyper_equal(
            ctx.star_apply(f, xi), ctx.star_apply(g, xi))


def test_equalizer_preservation_adversarial_pair(ctx):
    # identity vs squaring at [n]: the equalizer indicator evaluates to 0 at
    # the point, and the images really are different points
    from starnat.eqp import char_function
    xi = ctx.point(IDENT)
    flag = ctx.star_apply(char_function(equalizer(IDENT, SQUARE)), xi)
    assert ctx.standard_value(flag) == 0
    assert not ctx.hyper_equal(ctx.star_apply(IDENT, xi), ctx.star_apply(SQUARE, xi))


@given(eqps("bx"), epsets("ba"), epsets("bb"))
@settings(max_examples=60, deadline=None)
def test_boolean_commutation(rep, a, b):
    ctx = Context(UltrafilterHandle.profinite_int(0))
    xi = ctx.point(rep)
    ma, mb = ctx.star_member(xi, a), ctx.star_member(xi, b)
    assert ctx.star_member(xi, a.union(b)) == (ma or mb)
    assert ctx.star_member(xi, a.intersection(b)) == (ma and mb)
    assert ctx.star_member(xi, a.complement()) == (not ma)


def test_u_point_examples(ctx):
    assert ctx.u_point(ctx.point(IDENT)).describe() == "profinite:int:0"
    assert ctx.u_point(ctx.standard(5)).describe() == "principal:5"
    odd_point = ctx.point(EqpFunction.from_poly(Poly.of(1, 2)))
    w = ctx.u_point(odd_point)
    assert w.describe() == "profinite:int:1"
    for m in range(1, 101):
        for r in range(m):
            cls = EpSet.residue_class(r, m)
            assert w.member(cls) == ctx.star_member(odd_point, cls)


@given(eqps("upf"), eqps("upx"), epsets("upa"))
@settings(max_examples=60, deadline=None)
def test_u_point_matches_star_membership(f, rep, a):
    ctx = Context(UltrafilterHandle.profinite_int(0))
    xi = ctx.point(rep)
    assert ctx.u_point(xi).member(a) == ctx.star_member(xi, a)
    del f


@given(eqps("natf"), eqps("natx"), epsets("nata"))
@settings(max_examples=60, deadline=None)
def test_u_point_naturality(f, rep, a):
    from starnat.ultra import uf_pushforward
    ctx = Context(UltrafilterHandle.profinite_int(0))
    xi = ctx.point(rep)
    left = ctx.u_point(ctx.star_apply(f, xi))
    right = uf_pushforward(ctx.u_point(xi), f)
    assert left.member(a) == right.member(a)


def test_char_preservation(ctx):
    from starnat.eqp import char_function
    for seed in range(30):
        rng = rng_for(seed, "chp")
        s = random_epset(rng)
        xi = ctx.point(random_eqp(rng))
        value = ctx.star_apply(char_function(s), xi)
        assert ctx.is_standard(value)
        assert ctx.standard_value(value) == int(ctx.star_member(xi, s))


def test_representative_independence(ctx):
    # two reps equal on a set in the handle induce the same point behaviour
    f = EqpFunction.from_parts(3, (9, 9, 9), 1, (Poly.of(0, 1),))
    xi, eta = ctx.point(IDENT), ctx.point(f)
    assert ctx.hyper_equal(xi, eta)
    for seed in range(25):
        s = random_epset(rng_for(seed, "ri"))
        assert ctx.star_member(xi, s) == ctx.star_member(eta, s)
    assert ctx.u_point(xi).member(EpSet.evens()) == ctx.u_point(eta).member(EpSet.evens())


def test_monad_compare_flagship(ctx):
    report = ctx.monad_compare(ctx.point(IDENT), ctx.point(SQUARE))
    assert report.distinct
    assert report.kind == "indiscernible-certified"
    assert report.certificate == EqualCertified("integer-like", 0)
    assert ctx.separate(ctx.point(IDENT), ctx.point(SQUARE)) is None


def test_monad_compare_separated(ctx):
    xi, eta = ctx.point(IDENT), ctx.point(SUCC)
    report = ctx.monad_compare(xi, eta)
    assert report.distinct and report.kind == "separated"
    assert ctx.star_member(xi, report.witness) != ctx.star_member(eta, report.witness)
    assert ctx.separate(xi, eta) == report.witness


def test_monad_compare_equal_pair(ctx):
    xi = ctx.point(IDENT)
    report = ctx.monad_compare(xi, xi)
    assert not report.distinct
    assert report.kind == "hyper-equal"


def test_star_apply_k(ctx):
    xi = ctx.point(IDENT)
    total = ctx.star_apply_k({(1, 0): 1, (0, 1): 1}, [xi, ctx.standard(1)])
    assert total.rep == SUCC
    square = ctx.star_apply_k({(1, 1): 1}, [xi, xi])
    assert square.rep == SQUARE
    from starnat.eqp import NotNatValuedError
    with pytest.raises(NotNatValuedError):
        ctx.star_apply_k({(1, 0): 1, (0, 1): -1}, [ctx.standard(1), xi])


def test_indiscernible_pair_never_separated_afterwards(ctx):
    xi, eta = ctx.point(IDENT), ctx.point(SQUARE)
    report = ctx.monad_compare(xi, eta)
    assert report.kind == "indiscernible-certified"
    for seed in range(200):
        s = random_epset(rng_for(seed, "after"))
        assert ctx.star_member(xi, s) == ctx.star_member(eta, s)


def test_star_rel2_representative_independence(ctx):
    # reps agreeing on a set in the handle give the same relational verdicts
    bumped = EqpFunction.from_parts(3, (9, 9, 9), 1, (Poly.of(0, 1),))
    rel = (diagonal() | LinearCongruence(1, 2, 1, 3)) & ~StripX(2)
    eta = ctx.point(SQUARE)
    assert ctx.star_rel2(rel, ctx.point(IDENT), eta) == ctx.star_rel2(rel, ctx.point(bumped), eta)


def test_star_rel2(ctx):
    xi, eta = ctx.point(IDENT), ctx.point(SQUARE)
    assert ctx.star_rel2(diagonal(), xi, xi)
    assert not ctx.star_rel2(diagonal(), xi, eta)
    assert ctx.star_rel2(LinearCongruence(1, -1, 0, 1), xi, eta)
    assert not ctx.star_rel2(StripX(10), xi, eta)
    assert ctx.star_rel2(ProductSet(EpSet.naturals(), EpSet.evens()),
                         xi, ctx.point(EqpFunction.from_poly(Poly.of(0, 2))))


@given(eqps("rif"), eqps("rig"))
@settings(max_examples=40, deadline=None)
def test_pair_index_set_matches_pointwise(f, g):
    rel = (diagonal() | LinearCongruence(1, 2, 1, 3)) & ~StripX(2)
    idx = pair_index_set(rel, f, g)
    for n in range(300):
        assert idx.member(n) == rel.contains(f(n), g(n))


def test_dir_witness(ctx):
    xi, eta = ctx.point(IDENT), ctx.point(SQUARE)
    wit = ctx.dir_witness(xi, eta, check_upto=1000)
    assert wit.valid and wit.symbolic_identity
    assert wit.zeta.rep(3) == (3 + 9) * (3 + 9 + 1) // 2 + 9
    assert wit.proj_first(wit.zeta.rep(7)) == 7
    assert wit.proj_second(wit.zeta.rep(7)) == 49
    # star-applying nothing: the projections recover the inputs pointwise, so
    # both inputs sit below zeta in the ambient order
    same = ctx.dir_witness(xi, xi)
    assert same.valid


def test_dir_witness_standard_pair(ctx):
    wit = ctx.dir_witness(ctx.standard(0), ctx.standard(0))
    assert wit.valid
    assert ctx.is_standard(wit.zeta) and ctx.standard_value(wit.zeta) == 0


def test_poss_witness_hyper(ctx):
    family = [EpSet.evens(), EpSet.multiples(3), EpSet.from_threshold(9)]
    wit = ctx.poss_witness(family)
    assert wit.kind == "hyper"
    assert wit.hyper.rep == EqpFunction.from_poly(Poly.of(12, 6))
    assert all(wit.memberships)
    assert all(ctx.star_member(wit.hyper, s) for s in family)


def test_poss_witness_standard_and_nofip(ctx):
    assert ctx.poss_witness([EpSet.singleton(5)]).standard_point == 5
    report = ctx.poss_witness([EpSet.evens(), EpSet.odds()])
    assert report.kind == "no-fip"
    assert report.chain[-1] == EpSet.empty()


@given(st.integers(0, 2000))
@settings(max_examples=60, deadline=None)
def test_poss_witness_randomized(seed):
    ctx = Context(UltrafilterHandle.profinite_int(0))
    rng = rng_for(seed, "poss")
    family = [random_epset(rng) for _ in range(rng.randint(1, 6))]
    wit = ctx.poss_witness(family)
    period = 1
    for s in family:
        period = period * s.modulus // gcd(period, s.modulus)
    window = max(s.prefix_length for s in family) + period + 1
    brute_empty = not any(all(s.member(x) for s in family) for x in range(window))
    if wit.kind == "no-fip":
        assert brute_empty
    else:
        assert not brute_empty
        if wit.kind == "hyper":
            assert all(ctx.star_member(wit.hyper, s) for s in family)
        else:
            assert all(s.member(wit.standard_point) for s in family)


def test_axiom_suite_passes(ctx):
    report = ctx.axiom_suite(60, seed=3)
    assert report.passed
    assert report.samples == 60
    empty = ctx.axiom_suite(0, seed=3)
    assert empty.passed and empty.samples == 0


def test_orbit_integer_shift():
    report = orbit_explore(UltrafilterHandle.profinite_int(0), [SUCC], budget=5)
    assert [el.handle.describe() for el in report.elements] == [
        f"profinite:int:{c}" for c in range(6)]
    assert report.budget_used == 5
    # pairwise distinct, witnessed at some modulus (7 separates everything here)
    for (a, b), kind in report.verdicts.items():
        assert kind == "Distinct"
    assert all(p.ancestor_found and p.certified for p in report.directedness)


def test_orbit_principal_squares():
    report = orbit_explore(UltrafilterHandle.principal(3), [SQUARE], budget=3)
    assert [el.handle.describe() for el in report.elements] == [
        "principal:3", "principal:9", "principal:81", "principal:6561"]


def test_orbit_no_generators():
    report = orbit_explore(UltrafilterHandle.profinite_int(0), [], budget=10)
    assert len(report.elements) == 1 and not report.truncated


def test_orbit_dedupes_by_certificate():
    report = orbit_explore(UltrafilterHandle.profinite_int(0), [IDENT], budget=6)
    assert len(report.elements) == 1
