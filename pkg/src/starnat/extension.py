"""The fragment extension: hyper-points and star operations.

A Context fixes an ambient ultrafilter handle.  Hyper-points are
eventually quasi-polynomial maps modulo that handle; star application is
composition on representatives, star membership routes through exact
preimages, and the point-to-ultrafilter map is the pushforward of the
ambient handle along the representative.

The probes in this module (indiscernibility, directedness witnesses,
simultaneous-satisfaction witnesses, the randomized axiom suite, orbit
exploration) return small report objects that re-validate through the
public operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Mapping, Sequence

from .epsets import EpSet
from .eqp import (EqpFunction, ZPiecewise, cantor_unpair, char_function,
                  compose, equalizer, pair, poly_combine, preimage)
from .rep2 import (Complement2, GraphPoly, Intersect2, LinearCongruence,
                   ProductSet, Rep2Set, StripX, StripY, Union2)
from .ultra import (Distinct, EqualCertified, EqualUpTo, UltrafilterHandle,
                    uf_equal, uf_pushforward)


@dataclass(eq=False)
class Context:
    """All points and verdicts below are relative to one ambient handle."""

    ambient: UltrafilterHandle
    horizon: int = 64
    seed: int = 0

    def point(self, rep: EqpFunction) -> HyperNat:
        return HyperNat(rep, self)

    def standard(self, k: int) -> HyperNat:
        return HyperNat(EqpFunction.constant(k), self)

    # -- equality and star operations -----------------------------------

    def hyper_equal(self, xi: HyperNat, eta: HyperNat) -> bool:
        return self.ambient.member(equalizer(xi.rep, eta.rep))

    def star_apply(self, f: EqpFunction, xi: HyperNat) -> HyperNat:
        return HyperNat(compose(f, xi.rep), self)

    def star_member(self, xi: HyperNat, s: EpSet) -> bool:
        return self.ambient.member(preimage(xi.rep, s))

    def star_apply_k(self, terms: Mapping[tuple[int, ...], object],
                     points: Sequence[HyperNat]) -> HyperNat:
        return HyperNat(poly_combine(terms, [p.rep for p in points]), self)

    def star_rel2(self, rel: Rep2Set, xi: HyperNat, eta: HyperNat) -> bool:
        return self.ambient.member(pair_index_set(rel, xi.rep, eta.rep))

    def u_point(self, xi: HyperNat) -> UltrafilterHandle:
        """The ultrafilter of sets whose star contains the point."""
        return uf_pushforward(self.ambient, xi.rep)

    def is_standard(self, xi: HyperNat) -> bool:
        return self.u_point(xi).is_principal

    def standard_value(self, xi: HyperNat) -> int | None:
        u = self.u_point(xi)
        return u.point if u.is_principal else None

    # -- probes -----------------------------------------------------------

    def monad_compare(self, xi: HyperNat, eta: HyperNat) -> IndiscernibilityReport:
        distinct = not self.hyper_equal(xi, eta)
        verdict = uf_equal(self.u_point(xi), self.u_point(eta), self.horizon)
        if isinstance(verdict, Distinct):
            if not distinct:
                raise AssertionError("equal points with separated point ultrafilters")
            return IndiscernibilityReport(True, "separated", witness=verdict.witness)
        if isinstance(verdict, EqualCertified):
            kind = "indiscernible-certified" if distinct else "hyper-equal"
            return IndiscernibilityReport(distinct, kind, certificate=verdict)
        kind = "unknown-up-to" if distinct else "hyper-equal"
        return IndiscernibilityReport(distinct, kind, horizon=verdict.horizon)

    def separate(self, xi: HyperNat, eta: HyperNat) -> EpSet | None:
        report = self.monad_compare(xi, eta)
        return report.witness

    def dir_witness(self, xi: HyperNat, eta: HyperNat, check_upto: int = 512) -> DirWitness:
        """A common upper bound in the image order: both inputs are recovered
        from the Cantor-paired point by the tier-2 unpairing maps."""
        zeta = self.point(pair(xi.rep, eta.rep))
        ok = True
        for n in range(check_upto):
            z = zeta.rep.eval(n)
            if cantor_unpair(z) != (xi.rep.eval(n), eta.rep.eval(n)):
                ok = False
                break
        return DirWitness(zeta, UNPAIR_FIRST, UNPAIR_SECOND,
                          checked_upto=check_upto, symbolic_identity=True, valid=ok)

    def poss_witness(self, family: Sequence[EpSet]) -> PossWitness:
        """Simultaneous satisfaction for a finite family of properties.

        An infinite intersection is hit by the hyper-point enumerating it;
        a finite nonempty one by its least element; an empty one yields
        the intersection chain as the refutation.
        """
        family = list(family)
        chain = []
        inter = EpSet.naturals()
        for s in family:
            inter = inter.intersection(s)
            chain.append(inter)
        if inter.is_empty:
            return PossWitness("no-fip", chain=tuple(chain))
        if inter.is_finite:
            pt = inter.least_member()
            member = tuple(s.member(pt) for s in family)
            return PossWitness("standard", standard_point=pt,
                               memberships=member, chain=tuple(chain))
        xi = self.point(inter.enumerator())
        member = tuple(self.star_member(xi, s) for s in family)
        return PossWitness("hyper", hyper=xi, memberships=member, chain=tuple(chain))

    def axiom_suite(self, samples: int, seed: int | None = None,
                    dir_check_upto: int = 128) -> AxiomReport:
        """Randomized verification of composition preservation, equalizer
        preservation, and directedness on sampled (f, g, point) triples.

        Sample i draws from its own (seed, i) stream, so shards over index
        ranges are independent and their reports merge by addition."""
        from .sampling import random_eqp, rng_for
        seed = self.seed if seed is None else seed
        comp_fail = equ_fail = dir_fail = 0
        failures: list[int] = []
        one = self.standard(1)
        for i in range(samples):
            rng = rng_for(seed, "axiom", i)
            f = random_eqp(rng)
            g = random_eqp(rng)
            xi = self.point(random_eqp(rng))
            bad = False
            left = self.star_apply(g, self.star_apply(f, xi))
            right = self.star_apply(compose(g, f), xi)
            if not self.hyper_equal(left, right):
                comp_fail += 1
                bad = True
            flag = self.star_apply(char_function(equalizer(f, g)), xi)
            values_equal = self.hyper_equal(self.star_apply(f, xi), self.star_apply(g, xi))
            if self.hyper_equal(flag, one) != values_equal:
                equ_fail += 1
                bad = True
            wit = self.dir_witness(self.star_apply(f, xi), self.star_apply(g, xi),
                                   check_upto=dir_check_upto)
            if not wit.valid:
                dir_fail += 1
                bad = True
            if bad:
                failures.append(i)
        return AxiomReport(samples, comp_fail, equ_fail, dir_fail, tuple(failures))


@dataclass(frozen=True, eq=False)
class HyperNat:
    rep: EqpFunction
    ctx: Context

    def equals(self, other: HyperNat) -> bool:
        return self.ctx.hyper_equal(self, other)


@dataclass(frozen=True)
class ComputableMap:
    """Tier-2 descriptor: a general computable map, allowed only inside
    directedness witnesses."""

    name: str
    fn: Callable[[int], int]

    def __call__(self, x: int) -> int:
        return self.fn(x)


def _unpair_first(z: int) -> int:
    w = (isqrt(8 * z + 1) - 1) // 2
    return w - (z - w * (w + 1) // 2)


def _unpair_second(z: int) -> int:
    w = (isqrt(8 * z + 1) - 1) // 2
    return z - w * (w + 1) // 2


UNPAIR_FIRST = ComputableMap("cantor-unpair-first", _unpair_first)
UNPAIR_SECOND = ComputableMap("cantor-unpair-second", _unpair_second)


@dataclass(frozen=True)
class DirWitness:
    zeta: HyperNat
    proj_first: ComputableMap
    proj_second: ComputableMap
    checked_upto: int
    symbolic_identity: bool
    valid: bool


@dataclass(frozen=True)
class IndiscernibilityReport:
    distinct: bool
    kind: str  # "separated" | "indiscernible-certified" | "unknown-up-to" | "hyper-equal"
    witness: EpSet | None = None
    certificate: EqualCertified | None = None
    horizon: int | None = None


@dataclass(frozen=True)
class PossWitness:
    kind: str  # "standard" | "hyper" | "no-fip"
    standard_point: int | None = None
    hyper: HyperNat | None = None
    memberships: tuple[bool, ...] = ()
    chain: tuple[EpSet, ...] = ()


@dataclass(frozen=True)
class AxiomReport:
    samples: int
    comp_failures: int
    equ_failures: int
    dir_failures: int
    failure_seeds: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not (self.comp_failures or self.equ_failures or self.dir_failures)


# -- index sets of binary relations along a pair of representatives -----------


def pair_index_set(rel: Rep2Set, f: EqpFunction, g: EqpFunction) -> EpSet:
    """{n : (f(n), g(n)) in rel}, exactly."""
    return _pair_index(rel, ZPiecewise.from_eqp(f), ZPiecewise.from_eqp(g))


def _pair_index(rel: Rep2Set, zf: ZPiecewise, zg: ZPiecewise) -> EpSet:
    if isinstance(rel, LinearCongruence):
        combo = zf.scale(rel.a) + zg.scale(rel.b)
        return combo.congruence_set(rel.r, rel.m)
    if isinstance(rel, GraphPoly):
        return (zg - zf.apply_poly(rel.p)).zero_set()
    if isinstance(rel, StripX):
        neg, zero, _pos = (zf - ZPiecewise.constant(rel.c)).sign_sets()
        return neg.union(zero)
    if isinstance(rel, StripY):
        neg, zero, _pos = (zg - ZPiecewise.constant(rel.c)).sign_sets()
        return neg.union(zero)
    if isinstance(rel, ProductSet):
        return zf.in_set(rel.first).intersection(zg.in_set(rel.second))
    if isinstance(rel, Union2):
        return _pair_index(rel.left, zf, zg).union(_pair_index(rel.right, zf, zg))
    if isinstance(rel, Intersect2):
        return _pair_index(rel.left, zf, zg).intersection(_pair_index(rel.right, zf, zg))
    if isinstance(rel, Complement2):
        return _pair_index(rel.body, zf, zg).complement()
    raise TypeError(f"unsupported relation {rel!r}")


# -- orbit exploration ---------------------------------------------------------


@dataclass(frozen=True)
class OrbitElement:
    handle: UltrafilterHandle
    path: tuple[int, ...]  # generator indices from the root


@dataclass(frozen=True)
class DirectednessProbe:
    first: int
    second: int
    ancestor_found: bool
    certified: bool


@dataclass
class OrbitReport:
    elements: list[OrbitElement]
    verdicts: dict[tuple[int, int], str]
    directedness: list[DirectednessProbe]
    budget_used: int
    truncated: bool
    unresolved_merges: int = 0


def orbit_explore(u: UltrafilterHandle, generators: Sequence[EqpFunction],
                  budget: int, horizon: int = 64,
                  probe_pairs: int = 8) -> OrbitReport:
    """Closure of {u} under pushforward by the generators, up to budget
    applications; elements deduplicated by certificate when possible.

    The directedness probe replays each element's generator path from the
    root and confirms the recorded handle is reached again, exhibiting the
    root as a common pushforward ancestor for every sampled pair.
    """
    elements = [OrbitElement(u, ())]
    used = 0
    unresolved = 0
    i = 0
    truncated = False
    while i < len(elements):
        current = elements[i]
        for gi, g in enumerate(generators):
            if used >= budget:
                truncated = i < len(elements)
                break
            used += 1
            image = uf_pushforward(current.handle, g)
            duplicate = False
            for existing in elements:
                verdict = uf_equal(image, existing.handle, horizon)
                if isinstance(verdict, EqualCertified):
                    duplicate = True
                    break
                if isinstance(verdict, EqualUpTo):
                    unresolved += 1
            if not duplicate:
                elements.append(OrbitElement(image, current.path + (gi,)))
        else:
            i += 1
            continue
        break
    verdicts: dict[tuple[int, int], str] = {}
    if len(elements) <= 16:
        for a in range(len(elements)):
            for b in range(a + 1, len(elements)):
                verdict = uf_equal(elements[a].handle, elements[b].handle, horizon)
                verdicts[(a, b)] = type(verdict).__name__
    probes = []
    pair_list = [(a, b) for a in range(len(elements)) for b in range(a + 1, len(elements))]
    for a, b in pair_list[:probe_pairs]:
        ok = True
        certified = True
        for idx in (a, b):
            h = EqpFunction.identity()
            for gi in elements[idx].path:
                h = compose(generators[gi], h)
            verdict = uf_equal(uf_pushforward(u, h), elements[idx].handle, horizon)
            if isinstance(verdict, Distinct):
                ok = False
            if not isinstance(verdict, EqualCertified):
                certified = False
        probes.append(DirectednessProbe(a, b, ok, certified))
    return OrbitReport(elements, verdicts, probes, used, truncated, unresolved)


__all__ = [
    "Context", "HyperNat", "ComputableMap", "DirWitness",
    "IndiscernibilityReport", "PossWitness", "AxiomReport",
    "UNPAIR_FIRST", "UNPAIR_SECOND",
    "pair_index_set", "orbit_explore", "OrbitElement", "OrbitReport",
    "DirectednessProbe",
]
