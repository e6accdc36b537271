"""Eventually periodic subsets of the naturals.

An EpSet is a finite prefix correction on top of a union of residue
classes.  The class is closed under the Boolean operations and every
instance is kept in a canonical form (minimal modulus, then minimal
prefix length), so structural equality coincides with extensional
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator


class FiniteSetError(ValueError):
    """Raised when an infinite set was required."""


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@dataclass(frozen=True)
class Classification:
    kind: str  # "empty" | "finite" | "cofinite" | "proper"
    elements: tuple[int, ...] = ()  # members if finite, missing members if cofinite


@dataclass(frozen=True)
class EpSet:
    """x is a member iff (x < prefix_length and x in prefix) or
    (x >= prefix_length and x % modulus in residues).

    Instances built through ``from_parts`` are canonical; direct
    construction is reserved for code that already guarantees it.
    """

    prefix_length: int
    prefix: frozenset[int]
    modulus: int
    residues: frozenset[int]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if any(x < 0 or x >= self.prefix_length for x in self.prefix):
            raise ValueError("prefix member out of range")
        if any(r < 0 or r >= self.modulus for r in self.residues):
            raise ValueError("tail residue out of range")

    @staticmethod
    def from_parts(prefix_length: int,
                   prefix: Iterable[int],
                   modulus: int,
                   residues: Iterable[int]) -> EpSet:
        """Canonicalize: minimal tail period first, then minimal threshold."""
        pref = {x for x in prefix if 0 <= x < prefix_length}
        res = {r % modulus for r in residues}
        for d in _divisors(modulus):
            if all((r in res) == (((r + d) % modulus) in res) for r in range(modulus)):
                modulus, res = d, {r for r in range(d) if r in res}
                break
        n = prefix_length
        while n > 0:
            x = n - 1
            if (x in pref) == (x % modulus in res):
                pref.discard(x)
                n = x
            else:
                break
        return EpSet(n, frozenset(pref), modulus, frozenset(res))

    # -- constructors ----------------------------------------------------

    @staticmethod
    def empty() -> EpSet:
        return EpSet(0, frozenset(), 1, frozenset())

    @staticmethod
    def naturals() -> EpSet:
        return EpSet(0, frozenset(), 1, frozenset({0}))

    @staticmethod
    def finite(xs: Iterable[int]) -> EpSet:
        xs = set(xs)
        n = max(xs) + 1 if xs else 0
        return EpSet.from_parts(n, xs, 1, ())

    @staticmethod
    def singleton(x: int) -> EpSet:
        return EpSet.finite({x})

    @staticmethod
    def cofinite_excluding(xs: Iterable[int]) -> EpSet:
        return EpSet.finite(xs).complement()

    @staticmethod
    def residue_class(r: int, m: int) -> EpSet:
        return EpSet.from_parts(0, (), m, {r % m})

    @staticmethod
    def residue_classes(rs: Iterable[int], m: int) -> EpSet:
        return EpSet.from_parts(0, (), m, {r % m for r in rs})

    @staticmethod
    def multiples(k: int) -> EpSet:
        if k == 0:
            return EpSet.singleton(0)
        return EpSet.residue_class(0, k)

    @staticmethod
    def evens() -> EpSet:
        return EpSet.residue_class(0, 2)

    @staticmethod
    def odds() -> EpSet:
        return EpSet.residue_class(1, 2)

    @staticmethod
    def from_threshold(t: int) -> EpSet:
        """{x : x >= t}."""
        return EpSet.from_parts(t, (), 1, {0})

    # -- membership ------------------------------------------------------

    def member(self, x: int) -> bool:
        if x < self.prefix_length:
            return x in self.prefix
        return x % self.modulus in self.residues

    def __contains__(self, x: int) -> bool:
        return self.member(x)

    # -- boolean algebra --------------------------------------------------

    def _combine(self, other: EpSet, op) -> EpSet:
        n = max(self.prefix_length, other.prefix_length)
        m = lcm(self.modulus, other.modulus)
        res = {r for r in range(m)
               if op(r % self.modulus in self.residues,
                     r % other.modulus in other.residues)}
        pref = {x for x in range(n) if op(self.member(x), other.member(x))}
        return EpSet.from_parts(n, pref, m, res)

    def union(self, other: EpSet) -> EpSet:
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other: EpSet) -> EpSet:
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: EpSet) -> EpSet:
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> EpSet:
        return EpSet(self.prefix_length,
                     frozenset(range(self.prefix_length)) - self.prefix,
                     self.modulus,
                     frozenset(range(self.modulus)) - self.residues)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def __invert__(self) -> EpSet:
        return self.complement()

    # -- classification ---------------------------------------------------

    def classify(self) -> Classification:
        full = len(self.residues) == self.modulus
        if not self.residues:
            elems = tuple(sorted(self.prefix))
            return Classification("finite" if elems else "empty", elems)
        if full:
            missing = tuple(x for x in range(self.prefix_length) if x not in self.prefix)
            return Classification("cofinite", missing)
        return Classification("proper")

    @property
    def is_empty(self) -> bool:
        return not self.residues and not self.prefix

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_infinite(self) -> bool:
        return bool(self.residues)

    @property
    def is_cofinite(self) -> bool:
        return len(self.residues) == self.modulus

    def equality_window(self, other: EpSet) -> int:
        """Agreement on [0, window) decides extensional equality."""
        return (self.prefix_length + other.prefix_length
                + 2 * lcm(self.modulus, other.modulus))

    # -- enumeration -------------------------------------------------------

    def members_below(self, n: int) -> list[int]:
        return [x for x in range(n) if self.member(x)]

    def iter_members(self) -> Iterator[int]:
        x = 0
        while True:
            if self.member(x):
                yield x
            x += 1

    def least_member(self) -> int | None:
        if self.is_empty:
            return None
        bound = self.prefix_length + self.modulus
        for x in range(bound):
            if self.member(x):
                return x
        return None

    def least_nonmember(self) -> int | None:
        return self.complement().least_member()

    def enumerator(self):
        """Strictly increasing function enumerating the members.

        The increasing enumeration of an eventually periodic set is
        eventually affine on index classes: with p prefix members and d
        tail residues, e(k + d) = e(k) + modulus beyond index p.
        """
        from .eqp import EqpFunction
        from .polys import Poly
        from fractions import Fraction

        if self.is_finite:
            raise FiniteSetError("cannot enumerate a finite set")
        pref = sorted(self.prefix)
        p = len(pref)
        d = len(self.residues)
        m = self.modulus
        tail_first = []
        x = self.prefix_length
        while len(tail_first) < d:
            if x % m in self.residues:
                tail_first.append(x)
            x += 1
        branches: list[Poly] = [Poly(()) for _ in range(d)]
        for s, t in enumerate(tail_first):
            c = (p + s) % d
            # e(k) = (m/d) * (k - p - s) + t on the index class k = c (mod d)
            slope = Fraction(m, d)
            branches[c] = Poly.of(t - slope * (p + s), slope)
        return EqpFunction.from_parts(p, tuple(pref), d, tuple(branches))

    def __str__(self) -> str:
        from .notation import format_epset
        return format_epset(self)


def intersect_all(sets: Iterable[EpSet]) -> EpSet:
    out = EpSet.naturals()
    for s in sets:
        out = out.intersection(s)
    return out


def union_all(sets: Iterable[EpSet]) -> EpSet:
    out = EpSet.empty()
    for s in sets:
        out = out.union(s)
    return out


__all__ = ["EpSet", "Classification", "FiniteSetError", "intersect_all", "union_all"]
