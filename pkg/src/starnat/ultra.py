"""Ultrafilters on the eventually periodic set algebra.

A handle is either principal at a natural, or profinite: membership of a
canonical EpSet is decided by a coherent residue oracle queried at the
set's modulus (prefixes never matter, so finite sets are out and
cofinite sets are in).  Oracle flavours:

* integer-like: residues of a fixed integer, fully symbolic;
* lazy seeded: residues drawn on demand per prime power and combined by
  CRT, with an append-only commitment log, optionally running an
  avoidance policy that settles registered polynomial differences at a
  fresh prime;
* derived: the image of another oracle under a polynomial, which is how
  pushforwards along increasing branches are represented;
* projection: residues read off a tensor handle through product sets.

Pushforwards satisfy the exact contract member(push(U, f), A) ==
member(U, preimage(f, A)); equality of handles is three valued
(separating witness, symbolic certificate, or agreement up to a
horizon).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm

from .epsets import EpSet
from .eqp import EqpFunction, equalizer
from .polys import Poly
from .rep2 import ProductSet, Rep2Set, section_family


# -- residue oracles ---------------------------------------------------------


class ResidueOracle:
    """Coherent residue system: residue(m') = residue(m) mod m' when m' | m."""

    def residue(self, m: int) -> int:
        raise NotImplementedError

    def symbolic(self):
        """Closed form if one exists: ("int", c), ("poly", root, p, class_mod),
        or None."""
        return None

    def log(self) -> tuple[tuple[int, int], ...]:
        return ()

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class IntegerLikeOracle(ResidueOracle):
    """Residues of a fixed integer: r_m = c mod m."""

    c: int

    def residue(self, m: int) -> int:
        return self.c % m

    def symbolic(self):
        return ("int", self.c)

    def describe(self) -> str:
        return f"int:{self.c}"


def _prime_powers(m: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out.append((p, a))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


def _next_prime(n: int) -> int:
    n += 1
    while True:
        if n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1)):
            return n
        n += 1


def _crt(parts: list[tuple[int, int]]) -> int:
    """Combine pairwise coprime (modulus, residue) pairs."""
    m0, r0 = 1, 0
    for m, r in parts:
        inv = pow(m0, -1, m)
        r0 = r0 + m0 * ((r - r0) * inv % m)
        m0 *= m
    return r0 % m0


class LazySeededOracle(ResidueOracle):
    """Residues chosen on demand per prime power, CRT-combined.

    Digit choices derive from (seed, prime, level) so the profinite point
    does not depend on query order; the commitment log does, and replaying
    the same queries against the same seed reproduces it exactly.  With
    avoidance on, a registered nonzero polynomial gets a fresh prime at
    which its value is forced away from zero, whenever possible.
    """

    def __init__(self, seed: int, avoidance: bool = False) -> None:
        self.seed = seed
        self.avoidance = avoidance
        self._commit: dict[int, tuple[int, int]] = {}  # prime -> (exponent, residue)
        self._log: list[tuple[int, int]] = []

    def _ensure(self, p: int, a: int) -> None:
        e, r = self._commit.get(p, (0, 0))
        while e < a:
            digit = random.Random(f"{self.seed}:{p}:{e}").randrange(p)
            r += digit * p ** e
            e += 1
            self._log.append((p ** e, r))
        self._commit[p] = (e, r)

    def residue(self, m: int) -> int:
        if m == 1:
            return 0
        parts = []
        for p, a in _prime_powers(m):
            self._ensure(p, a)
            _e, r = self._commit[p]
            parts.append((p ** a, r % p ** a))
        return _crt(parts)

    def symbolic(self):
        return ("poly", self, Poly.x(), 1)

    def log(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._log)

    def register_avoidance(self, h: Poly, class_mod: int, retries: int = 64) -> int | None:
        """Commit a fresh prime q with h nonzero mod q at the oracle's point.

        Fresh means larger than every prior commitment, deg h, the class
        modulus, and h's denominator, so the new congruence is independent
        of everything already pinned down.
        """
        if h.is_zero:
            return None
        floor = max([2, h.degree, class_mod, h.denominator] + list(self._commit))
        q = floor
        for _ in range(retries):
            q = _next_prime(q)
            coeffs = [c % q for c in h.int_coeffs]
            if not any(coeffs):
                continue
            nonroots = [t for t in range(q)
                        if sum(c * pow(t, i, q) for i, c in enumerate(coeffs)) % q]
            if not nonroots:
                continue
            s = random.Random(f"{self.seed}:avoid:{q}").choice(nonroots)
            self._commit[q] = (1, s)
            self._log.append((q, s))
            return q
        return None

    def describe(self) -> str:
        return f"lazy:seed={self.seed}:avoid={'on' if self.avoidance else 'off'}"


@dataclass(frozen=True, eq=False)
class DerivedOracle(ResidueOracle):
    """Image of a base oracle under a polynomial.

    residue(m) evaluates the polynomial at the base residue taken at
    lcm(class_mod, m * denominator): knowing the base point to that
    modulus pins the image modulo m, and class_mod keeps the
    representative on the polynomial's integrality class.
    """

    base: ResidueOracle
    poly: Poly
    class_mod: int

    def residue(self, m: int) -> int:
        big = lcm(self.class_mod, m * self.poly.denominator)
        x0 = self.base.residue(big)
        return self.poly.eval_int(x0) % m

    def symbolic(self):
        inner = self.base.symbolic()
        if inner is None:
            return None
        if inner[0] == "int":
            return ("int", self.poly.eval_int(inner[1]))
        _tag, root, q, mq = inner
        return ("poly", root, self.poly.compose(q), lcm(mq, self.class_mod * q.denominator))

    def log(self) -> tuple[tuple[int, int], ...]:
        return self.base.log()

    def describe(self) -> str:
        return f"derived({self.base.describe()})"


@dataclass(frozen=True, eq=False)
class ProjectionOracle(ResidueOracle):
    """Coordinate projection of a tensor handle, read through product sets."""

    source: "TensorHandle"
    which: int

    def residue(self, m: int) -> int:
        for s in range(m):
            cls = EpSet.residue_class(s, m)
            if self.which == 1:
                rel = ProductSet(cls, EpSet.naturals())
            else:
                rel = ProductSet(EpSet.naturals(), cls)
            if tensor_member(self.source, rel):
                return s
        raise AssertionError("no residue class belongs; factor handle incoherent")

    def log(self) -> tuple[tuple[int, int], ...]:
        return self.source.left.commitment_log() + self.source.right.commitment_log()

    def describe(self) -> str:
        return f"proj{self.which}(tensor)"


# -- handles -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UltrafilterHandle:
    kind: str  # "principal" | "profinite"
    point: int | None = None
    oracle: ResidueOracle | None = None

    @staticmethod
    def principal(k: int) -> UltrafilterHandle:
        return UltrafilterHandle("principal", point=k)

    @staticmethod
    def profinite(oracle: ResidueOracle) -> UltrafilterHandle:
        return UltrafilterHandle("profinite", oracle=oracle)

    @staticmethod
    def profinite_int(c: int) -> UltrafilterHandle:
        return UltrafilterHandle.profinite(IntegerLikeOracle(c))

    @staticmethod
    def profinite_lazy(seed: int, avoidance: bool = False) -> UltrafilterHandle:
        return UltrafilterHandle.profinite(LazySeededOracle(seed, avoidance))

    @property
    def is_principal(self) -> bool:
        return self.kind == "principal"

    def member(self, s: EpSet) -> bool:
        if self.is_principal:
            return s.member(self.point)
        return self.oracle.residue(s.modulus) in s.residues

    def residue(self, m: int) -> int:
        if self.is_principal:
            return self.point % m
        return self.oracle.residue(m)

    def commitment_log(self) -> tuple[tuple[int, int], ...]:
        return self.oracle.log() if self.oracle is not None else ()

    def describe(self) -> str:
        if self.is_principal:
            return f"principal:{self.point}"
        return f"profinite:{self.oracle.describe()}"


def uf_member(u: UltrafilterHandle, s: EpSet) -> bool:
    return u.member(s)


def uf_pushforward(u: UltrafilterHandle, f: EqpFunction) -> UltrafilterHandle:
    """Image ultrafilter: A belongs iff the preimage under f belongs to u.

    Principal points map through f.  For a profinite handle the oracle
    selects the large branch class; a constant branch collapses to a
    principal point, an increasing branch yields a derived oracle, and a
    derived oracle over an integer-like base folds to integer-like again
    by evaluating the branch at the integer.
    """
    if u.is_principal:
        return UltrafilterHandle.principal(f.eval(u.point))
    oracle = u.oracle
    r_star = oracle.residue(f.modulus)
    branch = f.branches[r_star % f.modulus]
    if branch.degree <= 0:
        return UltrafilterHandle.principal(int(branch.constant_value))
    sym = oracle.symbolic()
    if sym is not None and sym[0] == "int":
        return UltrafilterHandle.profinite_int(branch.eval_int(sym[1]))
    if sym is not None and sym[0] == "poly":
        _tag, root, q, mq = sym
        composed = branch.compose(q)
        class_mod = lcm(mq, f.modulus * q.denominator)
        return UltrafilterHandle.profinite(DerivedOracle(root, composed, class_mod))
    return UltrafilterHandle.profinite(DerivedOracle(oracle, branch, f.modulus))


# -- equality ----------------------------------------------------------------


@dataclass(frozen=True)
class Distinct:
    witness: EpSet


@dataclass(frozen=True)
class EqualCertified:
    certificate_kind: str  # "principal" | "integer-like"
    value: int


@dataclass(frozen=True)
class EqualUpTo:
    horizon: int
    note: str = ""


EqualityVerdict = Distinct | EqualCertified | EqualUpTo


def _separating_modulus(c1: int, c2: int) -> int:
    m = 2
    while (c1 - c2) % m == 0:
        m += 1
    return m


def uf_equal(u: UltrafilterHandle, v: UltrafilterHandle, horizon: int = 64) -> EqualityVerdict:
    """Three-valued equality of handles.

    Certificates exist only for principal pairs and for integer-like
    closed forms; lazy pairs sharing a root are settled by the avoidance
    policy when it is on, and otherwise by scanning residues up to the
    horizon.
    """
    if u.is_principal and v.is_principal:
        if u.point == v.point:
            return EqualCertified("principal", u.point)
        return Distinct(EpSet.singleton(u.point))
    if u.is_principal:
        return Distinct(EpSet.singleton(u.point))
    if v.is_principal:
        return Distinct(EpSet.singleton(v.point))
    s1 = u.oracle.symbolic()
    s2 = v.oracle.symbolic()
    if s1 is not None and s2 is not None and s1[0] == "int" and s2[0] == "int":
        c1, c2 = s1[1], s2[1]
        if c1 == c2:
            return EqualCertified("integer-like", c1)
        m = _separating_modulus(c1, c2)
        return Distinct(EpSet.residue_class(c1 % m, m))
    if (s1 is not None and s2 is not None
            and s1[0] == "poly" and s2[0] == "poly" and s1[1] is s2[1]):
        root = s1[1]
        h = s1[2] - s2[2]
        if h.is_zero:
            return EqualUpTo(horizon, note="identical symbolic form over the shared oracle")
        if getattr(root, "avoidance", False):
            class_mod = lcm(s1[3], s2[3])
            root.residue(class_mod)  # pin the shared class before going fresh
            q = root.register_avoidance(h, class_mod)
            if q is not None:
                r1, r2 = u.residue(q), v.residue(q)
                if r1 != r2:
                    return Distinct(EpSet.residue_class(r1, q))
    for m in range(2, horizon + 1):
        r1, r2 = u.residue(m), v.residue(m)
        if r1 != r2:
            return Distinct(EpSet.residue_class(r1, m))
    return EqualUpTo(horizon)


# -- the pushforward-equality vs equalizer-membership comparison --------------


@dataclass(frozen=True)
class HausdorffReport:
    equalizer: EpSet
    equalizer_in_filter: bool
    pushforward_verdict: EqualityVerdict
    verdict: str  # "holds" | "violated" | "inconclusive" | "internal-inconsistency"


def hausdorff_check(u: UltrafilterHandle, f: EqpFunction, g: EqpFunction,
                    horizon: int = 64) -> HausdorffReport:
    """Compare pushforward equality against equalizer membership.

    "violated" records certified-equal pushforwards with the equalizer
    outside the handle; separated pushforwards with the equalizer inside
    cannot happen and are reported as an internal inconsistency.
    """
    eq = equalizer(f, g)
    inside = u.member(eq)
    verdict = uf_equal(uf_pushforward(u, f), uf_pushforward(u, g), horizon)
    if inside:
        final = "internal-inconsistency" if isinstance(verdict, Distinct) else "holds"
    elif isinstance(verdict, EqualCertified):
        final = "violated"
    elif isinstance(verdict, Distinct):
        final = "holds"
    else:
        final = "inconclusive"
    return HausdorffReport(eq, inside, verdict, final)


# -- tensor products -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TensorHandle:
    left: UltrafilterHandle
    right: UltrafilterHandle


def tensor(u: UltrafilterHandle, v: UltrafilterHandle) -> TensorHandle:
    return TensorHandle(u, v)


def inner_epset(rel: Rep2Set, right: UltrafilterHandle) -> EpSet:
    """{n : section(rel, n) belongs to right}, exactly.

    On a nonprincipal handle the movers of a template are invisible, so
    each class answers through its base.  On a principal handle at k the
    base answer flips exactly where some mover hits k, which happens at
    finitely many n found by root search.
    """
    fam = section_family(rel)
    hi = fam.threshold
    exceptions: dict[int, bool] = {}
    class_answers = []
    if right.is_principal:
        k = right.point
        for r, tpl in enumerate(fam.templates):
            class_answers.append(tpl.base.member(k))
            for q, _flag in tpl.movers:
                d = q - Poly.constant(k)
                for n0 in d.natural_roots_on_class(r, fam.modulus, fam.threshold):
                    exceptions[n0] = fam.section_at(n0).member(k)
                    hi = max(hi, n0 + 1)
    else:
        for tpl in fam.templates:
            class_answers.append(right.member(tpl.base))
    prefix = set()
    for n in range(hi):
        if n < fam.threshold:
            value = right.member(fam.section_at(n))
        elif n in exceptions:
            value = exceptions[n]
        else:
            value = class_answers[n % fam.modulus]
        if value:
            prefix.add(n)
    residues = {r for r, ok in enumerate(class_answers) if ok}
    return EpSet.from_parts(hi, prefix, fam.modulus, residues)


def tensor_member(t: TensorHandle, rel: Rep2Set) -> bool:
    return t.left.member(inner_epset(rel, t.right))


def tensor_proj(t: TensorHandle, which: int) -> UltrafilterHandle:
    """Pushforward of the tensor under a coordinate projection."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    factor = t.left if which == 1 else t.right
    if factor.is_principal:
        return UltrafilterHandle.principal(factor.point)
    return UltrafilterHandle.profinite(ProjectionOracle(t, which))


__all__ = [
    "ResidueOracle", "IntegerLikeOracle", "LazySeededOracle", "DerivedOracle",
    "ProjectionOracle", "UltrafilterHandle",
    "uf_member", "uf_pushforward", "uf_equal",
    "Distinct", "EqualCertified", "EqualUpTo", "EqualityVerdict",
    "HausdorffReport", "hausdorff_check",
    "TensorHandle", "tensor", "tensor_member", "tensor_proj", "inner_epset",
]
