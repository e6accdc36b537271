"""Eventually quasi-polynomial functions.

An EqpFunction is a total map on the naturals given by a finite table of
prefix values and, beyond the threshold, one rational-coefficient
polynomial per residue class of the branch modulus.  Each branch must be
integer valued and nonnegative on its class past the threshold, which
forces it to be constant or eventually strictly increasing there.

The class is closed under composition, Cantor pairing, polynomial
combination, equalizers (into EpSet), preimages of EpSets, and exact
three-way comparison.  All operations are exact; bounded searches use
classical root bounds, never sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Mapping, Sequence

from .epsets import EpSet
from .polys import Poly, first_on_class


class InvalidFunctionError(ValueError):
    """Representation does not describe a total map into the naturals."""


class NotNatValuedError(ValueError):
    """Polynomial combination escapes the naturals."""


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _validate_branch(p: Poly, residue: int, modulus: int, threshold: int) -> None:
    start = first_on_class(residue, modulus, threshold)
    # integer valued on the whole class follows from degree+1 consecutive class points
    for i in range(max(p.degree, 0) + 1):
        x = start + i * modulus
        if p.eval_numerator(x) % p.denominator:
            raise InvalidFunctionError(f"branch {p} not integer valued on class {residue} mod {modulus}")
    if p.degree <= 0:
        if p.constant_value < 0:
            raise InvalidFunctionError(f"constant branch {p} negative")
        return
    if p.leading < 0:
        raise InvalidFunctionError(f"branch {p} eventually negative")
    if p.nonneg_from(residue, modulus, threshold) != start:
        raise InvalidFunctionError(f"branch {p} negative on class {residue} mod {modulus} past {threshold}")


@dataclass(frozen=True)
class EqpFunction:
    """f(x) = prefix[x] for x < threshold, else branches[x % modulus](x)."""

    threshold: int
    prefix: tuple[int, ...]
    modulus: int
    branches: tuple[Poly, ...]

    def __post_init__(self) -> None:
        if len(self.prefix) != self.threshold:
            raise InvalidFunctionError("prefix length must equal threshold")
        if len(self.branches) != self.modulus or self.modulus < 1:
            raise InvalidFunctionError("need one branch per residue class")

    @staticmethod
    def from_parts(threshold: int,
                   prefix: Sequence[int],
                   modulus: int,
                   branches: Sequence[Poly]) -> EqpFunction:
        prefix = tuple(int(v) for v in prefix)
        if any(v < 0 for v in prefix):
            raise InvalidFunctionError("prefix values must be naturals")
        branches = tuple(branches)
        for r, p in enumerate(branches):
            _validate_branch(p, r, modulus, threshold)
        # minimal modulus: merge residue classes carrying identical polynomials
        for d in _divisors(modulus):
            if all(branches[r] == branches[r % d] for r in range(modulus)):
                modulus, branches = d, branches[:d]
                break
        # minimal threshold: absorb prefix values that the branches already produce
        t = threshold
        while t > 0:
            x = t - 1
            p = branches[x % modulus]
            try:
                v = p.eval_int(x)
            except ValueError:
                break
            if v != prefix[x] or v < 0:
                break
            t = x
        return EqpFunction(t, prefix[:t], modulus, branches)

    # -- basic builders ----------------------------------------------------

    @staticmethod
    def constant(c: int) -> EqpFunction:
        return EqpFunction.from_parts(0, (), 1, (Poly.constant(c),))

    @staticmethod
    def identity() -> EqpFunction:
        return EqpFunction.from_parts(0, (), 1, (Poly.x(),))

    @staticmethod
    def from_poly(p: Poly) -> EqpFunction:
        """The map n -> p(n); p must be integer valued and >= 0 on all of N."""
        t = p.nonneg_from(0, 1, 0)
        if t is None or t > 0:
            raise InvalidFunctionError(f"{p} takes negative values on the naturals")
        return EqpFunction.from_parts(0, (), 1, (p,))

    # -- evaluation ---------------------------------------------------------

    def eval(self, x: int) -> int:
        if x < self.threshold:
            return self.prefix[x]
        return self.branches[x % self.modulus].eval_int(x)

    __call__ = eval

    @property
    def denominator(self) -> int:
        d = 1
        for p in self.branches:
            d = lcm(d, p.denominator)
        return d

    def is_constant_map(self) -> bool:
        return (self.threshold == 0 and self.modulus == 1
                and self.branches[0].degree <= 0)


# -- composition core, shared with the integer-valued piecewise class -------


def _compose_parts(outer_threshold: int,
                   outer_modulus: int,
                   outer_branches: tuple[Poly, ...],
                   outer_eval: Callable[[int], int],
                   f: EqpFunction):
    """Parts of (outer o f).

    The branch modulus refines f's modulus with the period of f modulo the
    outer modulus (denominators cleared); the threshold is pushed until every
    nonconstant inner branch has cleared the outer threshold.
    """
    m = lcm(f.modulus, outer_modulus * f.denominator)
    branches: list[Poly] = []
    cuts = [f.threshold]
    for c in range(m):
        p = f.branches[c % f.modulus]
        if p.degree <= 0:
            branches.append(Poly.constant(outer_eval(int(p.constant_value))))
        else:
            x0 = first_on_class(c, m, f.threshold)
            s = p.eval_int(x0) % outer_modulus
            branches.append(outer_branches[s].compose(p))
            cut = (p - Poly.constant(outer_threshold)).nonneg_from(c, m, f.threshold)
            cuts.append(cut)
    t = max(cuts)
    prefix = tuple(outer_eval(f.eval(x)) for x in range(t))
    return t, prefix, m, tuple(branches)


def compose(g: EqpFunction, f: EqpFunction) -> EqpFunction:
    """g o f, extensionally equal to pointwise composition."""
    return EqpFunction.from_parts(*_compose_parts(g.threshold, g.modulus, g.branches, g.eval, f))


def equalizer(f: EqpFunction, g: EqpFunction) -> EpSet:
    """{x : f(x) = g(x)}, exact.

    Per residue class the branch difference either vanishes (whole class
    tail) or has finitely many natural roots below its root bound.
    """
    t0 = max(f.threshold, g.threshold)
    m = lcm(f.modulus, g.modulus)
    residues = set()
    n = t0
    for c in range(m):
        d = f.branches[c % f.modulus] - g.branches[c % g.modulus]
        if d.is_zero:
            residues.add(c)
        else:
            roots = d.natural_roots_on_class(c, m, t0)
            if roots:
                n = max(n, roots[-1] + 1)
    prefix = {x for x in range(n) if f.eval(x) == g.eval(x)}
    return EpSet.from_parts(n, prefix, m, residues)


def preimage(f: EqpFunction, target: EpSet) -> EpSet:
    """f^{-1}(target), exact.

    Congruence tails come from the periodicity of each branch modulo the
    target modulus; the stretch before a branch clears the target's prefix
    is settled pointwise.
    """
    big = lcm(f.modulus, target.modulus * f.denominator)
    cut = f.threshold
    for c in range(f.modulus):
        p = f.branches[c]
        if p.degree > 0:
            cut = max(cut, (p - Poly.constant(target.prefix_length)).nonneg_from(c, f.modulus, f.threshold))
    residues = set()
    for c in range(big):
        p = f.branches[c % f.modulus]
        if p.degree <= 0:
            if target.member(int(p.constant_value)):
                residues.add(c)
        else:
            if target.member(p.eval_int(first_on_class(c, big, cut))):
                residues.add(c)
    prefix = {x for x in range(cut) if target.member(f.eval(x))}
    return EpSet.from_parts(cut, prefix, big, residues)


def char_function(s: EpSet) -> EqpFunction:
    """The 0/1 indicator of s as an EqpFunction."""
    prefix = tuple(1 if x in s.prefix else 0 for x in range(s.prefix_length))
    branches = tuple(Poly.constant(1 if r in s.residues else 0) for r in range(s.modulus))
    return EqpFunction.from_parts(s.prefix_length, prefix, s.modulus, branches)


def poly_combine(terms: Mapping[tuple[int, ...], int | Fraction],
                 fs: Sequence[EqpFunction]) -> EqpFunction:
    """Pointwise F(f1(x), ..., fk(x)) for a k-ary polynomial F given as
    {exponent tuple: coefficient}.

    Raises NotNatValuedError when the combination takes a negative or
    non-integer value anywhere on the naturals.
    """
    k = len(fs)
    if any(len(e) != k for e in terms):
        raise ValueError("exponent tuples must match arity")
    m = 1
    for f in fs:
        m = lcm(m, f.modulus)
    t0 = max([f.threshold for f in fs], default=0)
    branches = []
    cuts = [t0]
    for c in range(m):
        s = Poly(())
        for exps, coeff in sorted(terms.items()):
            term = Poly.constant(coeff)
            for f, e in zip(fs, exps):
                if e:
                    term = term * f.branches[c % f.modulus].power(e)
            s = s + term
        cut = s.nonneg_from(c, m, t0)
        if cut is None:
            raise NotNatValuedError("combination is eventually negative")
        branches.append(s)
        cuts.append(cut)
    t = max(cuts)
    prefix = []
    for x in range(t):
        v = Fraction(0)
        args = [f.eval(x) for f in fs]
        for exps, coeff in terms.items():
            w = Fraction(coeff)
            for a, e in zip(args, exps):
                w *= Fraction(a) ** e
            v += w
        if v < 0 or v.denominator != 1:
            raise NotNatValuedError(f"combination value {v} at {x} is not a natural")
        prefix.append(int(v))
    try:
        return EqpFunction.from_parts(t, prefix, m, branches)
    except InvalidFunctionError as exc:
        raise NotNatValuedError(str(exc)) from exc


# Cantor pairing (a, b) -> (a + b)(a + b + 1)/2 + b as a 2-ary polynomial.
_PAIRING = {
    (2, 0): Fraction(1, 2),
    (1, 1): Fraction(1),
    (0, 2): Fraction(1, 2),
    (1, 0): Fraction(1, 2),
    (0, 1): Fraction(3, 2),
}


def pair(f: EqpFunction, g: EqpFunction) -> EqpFunction:
    """x -> cantor_pair(f(x), g(x)); stays in the class because the pairing
    polynomial is integer valued on integer pairs."""
    return poly_combine(_PAIRING, (f, g))


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    from math import isqrt
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


@dataclass(frozen=True)
class ComparePartition:
    less: EpSet
    equal: EpSet
    greater: EpSet

    def is_partition(self) -> bool:
        return (self.less.intersection(self.equal).is_empty
                and self.less.intersection(self.greater).is_empty
                and self.equal.intersection(self.greater).is_empty
                and self.less.union(self.equal).union(self.greater) == EpSet.naturals())


def compare(f: EqpFunction, g: EqpFunction) -> ComparePartition:
    """Exact partition of N into {f<g}, {f=g}, {f>g}.

    Sporadic sign changes happen below the root bound of the branch
    difference; beyond it the leading coefficient decides.
    """
    t0 = max(f.threshold, g.threshold)
    m = lcm(f.modulus, g.modulus)
    tails: dict[int, int] = {}
    n = t0
    for c in range(m):
        d = f.branches[c % f.modulus] - g.branches[c % g.modulus]
        tails[c] = d.eventual_sign()
        if not d.is_zero:
            n = max(n, first_on_class(c, m, max(t0, d.root_bound() + 1)))
    buckets = {-1: set(), 0: set(), 1: set()}
    for x in range(n):
        a, b = f.eval(x), g.eval(x)
        buckets[(a > b) - (a < b)].add(x)
    res = {sign: {c for c, s in tails.items() if s == sign} for sign in (-1, 0, 1)}
    return ComparePartition(
        less=EpSet.from_parts(n, buckets[-1], m, res[-1]),
        equal=EpSet.from_parts(n, buckets[0], m, res[0]),
        greater=EpSet.from_parts(n, buckets[1], m, res[1]),
    )


# -- integer-valued variant (formula terms) ---------------------------------


@dataclass(frozen=True)
class ZPiecewise:
    """Eventually quasi-polynomial map into the integers.

    Same shape as EqpFunction but without the nonnegativity and
    monotonicity constraints; used for arithmetic on formula terms, where
    subtraction may leave the naturals.
    """

    threshold: int
    prefix: tuple[int, ...]
    modulus: int
    branches: tuple[Poly, ...]

    @staticmethod
    def from_parts(threshold: int,
                   prefix: Sequence[int],
                   modulus: int,
                   branches: Sequence[Poly]) -> ZPiecewise:
        prefix = tuple(int(v) for v in prefix)
        branches = tuple(branches)
        for r, p in enumerate(branches):
            start = first_on_class(r, modulus, threshold)
            for i in range(max(p.degree, 0) + 1):
                if p.eval_numerator(start + i * modulus) % p.denominator:
                    raise InvalidFunctionError(f"branch {p} not integer valued on its class")
        for d in _divisors(modulus):
            if all(branches[r] == branches[r % d] for r in range(modulus)):
                modulus, branches = d, branches[:d]
                break
        t = threshold
        while t > 0:
            x = t - 1
            try:
                v = branches[x % modulus].eval_int(x)
            except ValueError:
                break
            if v != prefix[x]:
                break
            t = x
        return ZPiecewise(t, prefix[:t], modulus, branches)

    @staticmethod
    def from_eqp(f: EqpFunction) -> ZPiecewise:
        return ZPiecewise(f.threshold, f.prefix, f.modulus, f.branches)

    @staticmethod
    def constant(c: int) -> ZPiecewise:
        return ZPiecewise(0, (), 1, (Poly.constant(c),))

    @staticmethod
    def variable() -> ZPiecewise:
        return ZPiecewise(0, (), 1, (Poly.x(),))

    def eval(self, x: int) -> int:
        if x < self.threshold:
            return self.prefix[x]
        return self.branches[x % self.modulus].eval_int(x)

    __call__ = eval

    @property
    def denominator(self) -> int:
        d = 1
        for p in self.branches:
            d = lcm(d, p.denominator)
        return d

    def _zip(self, other: ZPiecewise, op) -> ZPiecewise:
        m = lcm(self.modulus, other.modulus)
        t = max(self.threshold, other.threshold)
        branches = [op(self.branches[c % self.modulus], other.branches[c % other.modulus])
                    for c in range(m)]
        pointwise = _POINTWISE[op]
        prefix = [pointwise(self.eval(x), other.eval(x)) for x in range(t)]
        return ZPiecewise.from_parts(t, prefix, m, branches)

    def __add__(self, other: ZPiecewise) -> ZPiecewise:
        return self._zip(other, Poly.__add__)

    def __sub__(self, other: ZPiecewise) -> ZPiecewise:
        return self._zip(other, Poly.__sub__)

    def __mul__(self, other: ZPiecewise) -> ZPiecewise:
        return self._zip(other, Poly.__mul__)

    def __neg__(self) -> ZPiecewise:
        return ZPiecewise.constant(0) - self

    def scale(self, k: int) -> ZPiecewise:
        branches = [p.scale(k) for p in self.branches]
        prefix = [v * k for v in self.prefix]
        return ZPiecewise.from_parts(self.threshold, prefix, self.modulus, branches)

    def power(self, k: int) -> ZPiecewise:
        out = ZPiecewise.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def apply_poly(self, p: Poly) -> ZPiecewise:
        """p(self(n)) for an integer-coefficient polynomial p."""
        branches = [p.compose(b) for b in self.branches]
        prefix = [p.eval_int(self.eval(x)) for x in range(self.threshold)]
        return ZPiecewise.from_parts(self.threshold, prefix, self.modulus, branches)

    def compose_inner(self, f: EqpFunction) -> ZPiecewise:
        """self(f(n)) for a natural-valued inner function."""
        return ZPiecewise.from_parts(*_compose_parts(self.threshold, self.modulus, self.branches, self.eval, f))

    # -- exact analysis ----------------------------------------------------

    def zero_set(self) -> EpSet:
        t0 = self.threshold
        residues = set()
        n = t0
        for c, p in enumerate(self.branches):
            if p.is_zero:
                residues.add(c)
            else:
                roots = p.natural_roots_on_class(c, self.modulus, t0)
                if roots:
                    n = max(n, roots[-1] + 1)
        prefix = {x for x in range(n) if self.eval(x) == 0}
        return EpSet.from_parts(n, prefix, self.modulus, residues)

    def sign_sets(self) -> tuple[EpSet, EpSet, EpSet]:
        """(negative, zero, positive) index sets; an exact partition of N."""
        t0 = self.threshold
        n = t0
        tails = {}
        for c, p in enumerate(self.branches):
            tails[c] = p.eventual_sign()
            if not p.is_zero:
                n = max(n, first_on_class(c, self.modulus, max(t0, p.root_bound() + 1)))
        buckets = {-1: set(), 0: set(), 1: set()}
        for x in range(n):
            v = self.eval(x)
            buckets[(v > 0) - (v < 0)].add(x)
        out = []
        for sign in (-1, 0, 1):
            res = {c for c, s in tails.items() if s == sign}
            out.append(EpSet.from_parts(n, buckets[sign], self.modulus, res))
        return tuple(out)

    def congruence_set(self, residue: int, m: int) -> EpSet:
        """{n : self(n) = residue (mod m)}."""
        big = lcm(self.modulus, m * self.denominator)
        residues = set()
        for c in range(big):
            p = self.branches[c % self.modulus]
            v = p.eval_int(first_on_class(c, big, self.threshold))
            if v % m == residue % m:
                residues.add(c)
        prefix = {x for x in range(self.threshold) if self.eval(x) % m == residue % m}
        return EpSet.from_parts(self.threshold, prefix, big, residues)

    def in_set(self, target: EpSet) -> EpSet:
        """{n : self(n) >= 0 and self(n) in target}."""
        big = lcm(self.modulus, target.modulus * self.denominator)
        cut = self.threshold
        for c, p in enumerate(self.branches):
            if p.degree > 0:
                if p.leading > 0:
                    cut = max(cut, (p - Poly.constant(target.prefix_length)).nonneg_from(c, self.modulus, self.threshold))
                else:
                    cut = max(cut, first_on_class(c, self.modulus, max(self.threshold, p.root_bound() + 1)))
        residues = set()
        for c in range(big):
            p = self.branches[c % self.modulus]
            if p.degree <= 0:
                v = int(p.constant_value)
                if v >= 0 and target.member(v):
                    residues.add(c)
            elif p.leading > 0:
                if target.member(p.eval_int(first_on_class(c, big, cut))):
                    residues.add(c)
        prefix = set()
        for x in range(cut):
            v = self.eval(x)
            if v >= 0 and target.member(v):
                prefix.add(x)
        return EpSet.from_parts(cut, prefix, big, residues)

    def clamp_nonneg(self) -> EqpFunction:
        """max(self, 0) as a natural-valued function."""
        cut = self.threshold
        branches = []
        for c, p in enumerate(self.branches):
            if p.degree <= 0:
                branches.append(Poly.constant(max(int(p.constant_value), 0)))
            elif p.leading > 0:
                branches.append(p)
                cut = max(cut, p.nonneg_from(c, self.modulus, self.threshold))
            else:
                branches.append(Poly.constant(0))
                cut = max(cut, first_on_class(c, self.modulus, max(self.threshold, p.root_bound() + 1)))
        prefix = [max(self.eval(x), 0) for x in range(cut)]
        return EqpFunction.from_parts(cut, prefix, self.modulus, branches)


_POINTWISE = {
    Poly.__add__: lambda a, b: a + b,
    Poly.__sub__: lambda a, b: a - b,
    Poly.__mul__: lambda a, b: a * b,
}


__all__ = [
    "EqpFunction", "ZPiecewise", "ComparePartition",
    "InvalidFunctionError", "NotNatValuedError",
    "compose", "equalizer", "preimage", "char_function",
    "pair", "poly_combine", "compare", "cantor_pair", "cantor_unpair",
]
