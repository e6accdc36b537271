import pytest
from hypothesis import given, settings, strategies as st

from starnat.epsets import EpSet, FiniteSetError


def brute_members(s: EpSet, hi: int) -> list[int]:
    return [x for x in range(hi) if s.member(x)]


epsets = st.builds(
    EpSet.from_parts,
    st.integers(0, 5),
    st.sets(st.integers(0, 4)),
    st.integers(1, 5),
    st.sets(st.integers(0, 4)),
)


def test_membership_semantics():
    evens = EpSet.evens()
    assert evens.member(4)
    assert not evens.member(7)
    s = EpSet.from_parts(3, {1}, 2, {0})  # prefix overrides the tail below 3
    assert s.member(1)
    assert not s.member(2)
    assert s.member(4)


def test_membership_window_equality():
    a = EpSet.from_parts(4, {0, 2}, 6, {1, 3})
    b = EpSet.from_parts(10, {0, 2, 7, 9}, 3, {1})
    window = a.equality_window(b)
    same_on_window = brute_members(a, window) == brute_members(b, window)
    assert same_on_window == (a == b)


def test_canonical_form_examples():
    # tail period 4 with both classes present collapses to period 2
    s = EpSet.from_parts(0, (), 4, {0, 2})
    assert s.modulus == 2 and s.residues == frozenset({0})
    # a prefix consistent with the tail disappears
    t = EpSet.from_parts(4, {0, 2}, 2, {0})
    assert t.prefix_length == 0
    # shifted multiples of six: canonical threshold is the first disagreement
    u = EpSet.from_parts(12, (), 6, {0})
    assert u.prefix_length == 7 and u.modulus == 6


@given(epsets)
def test_canonicalization_idempotent(s):
    again = EpSet.from_parts(s.prefix_length, s.prefix, s.modulus, s.residues)
    assert again == s


@given(epsets, epsets)
def test_structural_equality_is_extensional(a, b):
    window = a.equality_window(b)
    assert (a == b) == (brute_members(a, window) == brute_members(b, window))


@given(epsets, epsets)
def test_boolean_ops_against_brute_force(a, b):
    hi = a.equality_window(b) + 8
    for x in range(hi):
        assert a.union(b).member(x) == (a.member(x) or b.member(x))
        assert a.intersection(b).member(x) == (a.member(x) and b.member(x))
        assert a.difference(b).member(x) == (a.member(x) and not b.member(x))
        assert a.complement().member(x) == (not a.member(x))


@given(epsets, epsets, epsets)
@settings(max_examples=50)
def test_boolean_algebra_laws(a, b, c):
    assert a.union(b) == b.union(a)
    assert a.intersection(b) == b.intersection(a)
    assert a.union(b.union(c)) == a.union(b).union(c)
    assert a.intersection(b.intersection(c)) == a.intersection(b).intersection(c)
    assert a.intersection(b.union(c)) == a.intersection(b).union(a.intersection(c))
    assert a.union(b).complement() == a.complement().intersection(b.complement())
    assert a.union(a.complement()) == EpSet.naturals()
    assert a.intersection(a.complement()) == EpSet.empty()


def test_classify_examples():
    assert EpSet.empty().classify().kind == "empty"
    fin = EpSet.from_parts(2, {0, 1}, 1, ())
    assert fin.classify() == fin.classify().__class__("finite", (0, 1))
    assert EpSet.evens().classify().kind == "proper"
    cof = EpSet.cofinite_excluding({3, 5})
    assert cof.classify().kind == "cofinite"
    assert cof.classify().elements == (3, 5)


@given(epsets)
def test_classify_against_brute_count(s):
    hi = s.prefix_length + 4 * s.modulus
    members = brute_members(s, hi)
    cls = s.classify()
    if cls.kind == "empty":
        assert members == []
    elif cls.kind == "finite":
        assert members == list(cls.elements)
    elif cls.kind == "cofinite":
        missing = [x for x in range(hi) if x not in members]
        assert missing == list(cls.elements)
    else:
        assert len(members) >= 1 and len(members) < hi


def test_enumerator_examples():
    evens = EpSet.evens()
    e = evens.enumerator()
    assert [e(i) for i in range(5)] == [0, 2, 4, 6, 8]
    shifted = EpSet.from_parts(12, (), 6, {0})
    e2 = shifted.enumerator()
    assert [e2(i) for i in range(200)] == [6 * i + 12 for i in range(200)]
    mixed = EpSet.odds().union(EpSet.singleton(0))
    e3 = mixed.enumerator()
    want = [x for x in range(500) if mixed.member(x)]
    assert [e3(i) for i in range(len(want))] == want


def test_enumerator_first_thousand_values():
    for s in (EpSet.from_parts(5, {1, 3}, 6, {0, 4}),
              EpSet.residue_classes({2, 3}, 7).union(EpSet.finite({0, 10}))):
        e = s.enumerator()
        want = []
        x = 0
        while len(want) < 1000:
            if s.member(x):
                want.append(x)
            x += 1
        got = [e(i) for i in range(1000)]
        assert got == want
        assert all(a < b for a, b in zip(got, got[1:]))


@given(epsets)
def test_enumerator_against_brute_enumeration(s):
    if s.is_finite:
        with pytest.raises(FiniteSetError):
            s.enumerator()
        return
    e = s.enumerator()
    count = 60
    want = []
    x = 0
    while len(want) < count:
        if s.member(x):
            want.append(x)
        x += 1
    got = [e(i) for i in range(count)]
    assert got == want
    assert all(got[i] < got[i + 1] for i in range(count - 1))


def test_least_members():
    s = EpSet.from_parts(3, {2}, 4, {1})
    assert s.least_member() == 2
    assert EpSet.naturals().least_nonmember() is None
    assert EpSet.empty().least_member() is None
