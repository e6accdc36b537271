"""Representable subsets of N x N.

A Rep2Set is a finite Boolean combination of a fixed atom grammar:
linear congruences, coordinate strips, the diagonal, polynomial graphs,
and products of EpSets.  The grammar is small on purpose: every section
{y : (n, y) in A} is an EpSet, and the family n -> A_n admits an exact
finite description (a periodic list of templates plus finitely many
exceptional sections), which is what makes tensor-product membership
decidable downstream.

A template describes sections on one residue class of n as a fixed base
EpSet adjusted by finitely many "movers": nonconstant integer
polynomials whose value at n is forced into or out of the section.  The
combination step refines threshold and modulus until every mover has a
stable relationship to every base and to every other mover, after which
Boolean structure acts classwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

from .epsets import EpSet
from .polys import Poly, first_on_class


@dataclass(frozen=True)
class SectionTemplate:
    """Sections on one class: (base minus absent mover values) plus present ones."""

    base: EpSet
    movers: tuple[tuple[Poly, bool], ...]  # (polynomial, present flag)

    def presence(self, q: Poly, probe: int) -> bool:
        """Whether q(n) lies in the section for class points n >= the family
        threshold; probe must be such a point."""
        for p, flag in self.movers:
            if p == q:
                return flag
        return self.base.member(q.eval_int(probe))


@dataclass(frozen=True)
class SectionFamily:
    threshold: int
    modulus: int
    exceptional: tuple[EpSet, ...]  # sections at n = 0 .. threshold-1
    templates: tuple[SectionTemplate, ...]

    def section_at(self, n: int) -> EpSet:
        if n < self.threshold:
            return self.exceptional[n]
        tpl = self.templates[n % self.modulus]
        out = tpl.base
        for q, flag in tpl.movers:
            v = q.eval_int(n)
            if v < 0:
                continue
            point = EpSet.singleton(v)
            out = out.union(point) if flag else out.difference(point)
        return out


def _mover_key(q: Poly):
    return (q.degree, tuple((c.numerator, c.denominator) for c in q.coeffs))


class Rep2Set:
    """Base class; build instances from the atom constructors below and
    combine with &, |, ~ and -."""

    def contains(self, x: int, y: int) -> bool:
        raise NotImplementedError

    def section(self, n: int) -> EpSet:
        raise NotImplementedError

    def _family(self) -> SectionFamily:
        raise NotImplementedError

    def __and__(self, other: Rep2Set) -> Rep2Set:
        return Intersect2(self, other)

    def __or__(self, other: Rep2Set) -> Rep2Set:
        return Union2(self, other)

    def __invert__(self) -> Rep2Set:
        return Complement2(self)

    def __sub__(self, other: Rep2Set) -> Rep2Set:
        return Intersect2(self, Complement2(other))


@lru_cache(maxsize=None)
def section_family(rel: Rep2Set) -> SectionFamily:
    return rel._family()


def _solve_linear(b: int, c: int, m: int) -> EpSet:
    """{y : b*y = c (mod m)}."""
    b %= m
    c %= m
    g = gcd(b, m)
    if c % g:
        return EpSet.empty()
    m2 = m // g
    if m2 == 1:
        return EpSet.naturals()
    y0 = (c // g) * pow(b // g, -1, m2) % m2
    return EpSet.residue_class(y0, m2)


@dataclass(frozen=True)
class LinearCongruence(Rep2Set):
    """{(x, y) : a*x + b*y = r (mod m)}."""

    a: int
    b: int
    r: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("modulus must be positive")

    def contains(self, x: int, y: int) -> bool:
        return (self.a * x + self.b * y - self.r) % self.m == 0

    def section(self, n: int) -> EpSet:
        return _solve_linear(self.b, self.r - self.a * n, self.m)

    def _family(self) -> SectionFamily:
        templates = tuple(SectionTemplate(self.section(r), ()) for r in range(self.m))
        return SectionFamily(0, self.m, (), templates)


@dataclass(frozen=True)
class StripX(Rep2Set):
    """{(x, y) : x <= c}."""

    c: int

    def contains(self, x: int, y: int) -> bool:
        return x <= self.c

    def section(self, n: int) -> EpSet:
        return EpSet.naturals() if n <= self.c else EpSet.empty()

    def _family(self) -> SectionFamily:
        exc = tuple(EpSet.naturals() for _ in range(self.c + 1))
        return SectionFamily(self.c + 1, 1, exc, (SectionTemplate(EpSet.empty(), ()),))


@dataclass(frozen=True)
class StripY(Rep2Set):
    """{(x, y) : y <= c}."""

    c: int

    def contains(self, x: int, y: int) -> bool:
        return y <= self.c

    def section(self, n: int) -> EpSet:
        return EpSet.finite(range(self.c + 1))

    def _family(self) -> SectionFamily:
        return SectionFamily(0, 1, (), (SectionTemplate(self.section(0), ()),))


@dataclass(frozen=True)
class GraphPoly(Rep2Set):
    """{(x, y) : y = p(x)} for an integer-coefficient polynomial p."""

    p: Poly

    def __post_init__(self) -> None:
        if self.p.denominator != 1:
            raise ValueError("graph polynomial must have integer coefficients")

    def contains(self, x: int, y: int) -> bool:
        return self.p.eval_int(x) == y

    def section(self, n: int) -> EpSet:
        v = self.p.eval_int(n)
        return EpSet.singleton(v) if v >= 0 else EpSet.empty()

    def _family(self) -> SectionFamily:
        p = self.p
        if p.degree <= 0:
            return SectionFamily(0, 1, (), (SectionTemplate(self.section(0), ()),))
        if p.leading > 0:
            t = p.nonneg_from(0, 1, 0)
            movers = ((p, True),)
        else:
            t = max(0, p.root_bound() + 1)
            movers = ()
        exc = tuple(self.section(n) for n in range(t))
        return SectionFamily(t, 1, exc, (SectionTemplate(EpSet.empty(), movers),))


def diagonal() -> Rep2Set:
    """{(x, y) : x = y}."""
    return GraphPoly(Poly.x())


@dataclass(frozen=True)
class ProductSet(Rep2Set):
    """A x B for EpSets A, B."""

    first: EpSet
    second: EpSet

    def contains(self, x: int, y: int) -> bool:
        return self.first.member(x) and self.second.member(y)

    def section(self, n: int) -> EpSet:
        return self.second if self.first.member(n) else EpSet.empty()

    def _family(self) -> SectionFamily:
        a = self.first
        exc = tuple(self.section(n) for n in range(a.prefix_length))
        templates = tuple(
            SectionTemplate(self.second if r in a.residues else EpSet.empty(), ())
            for r in range(a.modulus))
        return SectionFamily(a.prefix_length, a.modulus, exc, templates)


# -- Boolean structure -------------------------------------------------------


def _stable_parts(families: tuple[SectionFamily, ...]) -> tuple[int, int]:
    """Threshold and modulus past which every mover has a fixed relation to
    every base and movers never collide with each other."""
    movers = []
    bases = []
    for fam in families:
        for tpl in fam.templates:
            bases.append(tpl.base)
            for q, _flag in tpl.movers:
                if all(q != seen for seen in movers):
                    movers.append(q)
    modulus = 1
    for fam in families:
        modulus = lcm(modulus, fam.modulus)
    for b in bases:
        modulus = lcm(modulus, b.modulus)
    threshold = max(fam.threshold for fam in families)
    for q in movers:
        cuts = [q.nonneg_from(0, 1, 0)]
        for b in bases:
            cuts.append((q - Poly.constant(b.prefix_length)).nonneg_from(0, 1, 0))
        threshold = max(threshold, *cuts)
    for i, q in enumerate(movers):
        for q2 in movers[i + 1:]:
            d = q - q2
            roots = d.natural_roots_on_class(0, 1, 0)
            if roots:
                threshold = max(threshold, roots[-1] + 1)
    return threshold, modulus


def _transform(families: tuple[SectionFamily, ...], ep_op, bit_op) -> SectionFamily:
    threshold, modulus = _stable_parts(families)
    all_movers = []
    for fam in families:
        for tpl in fam.templates:
            for q, _flag in tpl.movers:
                if all(q != seen for seen in all_movers):
                    all_movers.append(q)
    all_movers.sort(key=_mover_key)
    templates = []
    for r in range(modulus):
        tpls = [fam.templates[r % fam.modulus] for fam in families]
        base = ep_op(*[t.base for t in tpls])
        probe = first_on_class(r, modulus, threshold)
        movers = []
        for q in all_movers:
            present = bit_op(*[t.presence(q, probe) for t in tpls])
            if present != base.member(q.eval_int(probe)):
                movers.append((q, present))
        templates.append(SectionTemplate(base, tuple(movers)))
    exceptional = tuple(
        ep_op(*[fam.section_at(n) for fam in families]) for n in range(threshold))
    return SectionFamily(threshold, modulus, exceptional, tuple(templates))


@dataclass(frozen=True)
class Union2(Rep2Set):
    left: Rep2Set
    right: Rep2Set

    def contains(self, x: int, y: int) -> bool:
        return self.left.contains(x, y) or self.right.contains(x, y)

    def section(self, n: int) -> EpSet:
        return self.left.section(n).union(self.right.section(n))

    def _family(self) -> SectionFamily:
        return _transform((section_family(self.left), section_family(self.right)),
                          EpSet.union, lambda a, b: a or b)


@dataclass(frozen=True)
class Intersect2(Rep2Set):
    left: Rep2Set
    right: Rep2Set

    def contains(self, x: int, y: int) -> bool:
        return self.left.contains(x, y) and self.right.contains(x, y)

    def section(self, n: int) -> EpSet:
        return self.left.section(n).intersection(self.right.section(n))

    def _family(self) -> SectionFamily:
        return _transform((section_family(self.left), section_family(self.right)),
                          EpSet.intersection, lambda a, b: a and b)


@dataclass(frozen=True)
class Complement2(Rep2Set):
    body: Rep2Set

    def contains(self, x: int, y: int) -> bool:
        return not self.body.contains(x, y)

    def section(self, n: int) -> EpSet:
        return self.body.section(n).complement()

    def _family(self) -> SectionFamily:
        return _transform((section_family(self.body),),
                          EpSet.complement, lambda a: not a)


__all__ = [
    "Rep2Set", "LinearCongruence", "StripX", "StripY", "GraphPoly",
    "ProductSet", "Union2", "Intersect2", "Complement2", "diagonal",
    "SectionFamily", "SectionTemplate", "section_family",
]
