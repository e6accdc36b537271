"""Exact univariate polynomials with rational coefficients.

Everything downstream (piecewise function algebra, residue oracles,
section families) reduces to a handful of exact questions about these
polynomials: evaluation, natural roots on an arithmetic progression,
eventual sign, and congruence behaviour.  All of them are answered with
integer arithmetic on the cleared-denominator form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm


def _strip(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


@dataclass(frozen=True)
class Poly:
    """Polynomial sum(coeffs[i] * x**i) with Fraction coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(tuple(Fraction(c) for c in self.coeffs)))

    @staticmethod
    def of(*coeffs) -> Poly:
        return Poly(tuple(Fraction(c) for c in coeffs))

    @staticmethod
    def constant(c) -> Poly:
        return Poly.of(c)

    @staticmethod
    def x() -> Poly:
        return Poly.of(0, 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def constant_value(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @cached_property
    def denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            d = lcm(d, c.denominator)
        return d

    @cached_property
    def int_coeffs(self) -> tuple[int, ...]:
        """Coefficients of denominator * self, all integers."""
        d = self.denominator
        return tuple(int(c * d) for c in self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(tuple(out))

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    def scale(self, k) -> Poly:
        k = Fraction(k)
        return Poly(tuple(c * k for c in self.coeffs))

    def shift(self, k) -> Poly:
        return self + Poly.constant(k)

    def power(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative exponent")
        out = Poly.of(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def compose(self, inner: Poly) -> Poly:
        """self(inner(x)), by Horner over polynomials."""
        out = Poly(())
        for c in reversed(self.coeffs):
            out = out * inner + Poly.constant(c)
        return out

    # -- evaluation ------------------------------------------------------

    def eval_fraction(self, x: int) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_numerator(self, x: int) -> int:
        """(denominator * self)(x); exact, fast, defined for every integer x."""
        out = 0
        for c in reversed(self.int_coeffs):
            out = out * x + c
        return out

    def eval_int(self, x: int) -> int:
        """Exact integer value; raises if self(x) is not an integer."""
        num = self.eval_numerator(x)
        q, r = divmod(num, self.denominator)
        if r:
            raise ValueError(f"{self}({x}) is not an integer")
        return q

    # -- root and sign analysis -----------------------------------------

    def root_bound(self) -> int:
        """Integer B with every real root of self strictly below B (Cauchy bound)."""
        if self.degree <= 0:
            return 0
        ic = self.int_coeffs
        lead = abs(ic[-1])
        top = max(abs(c) for c in ic[:-1])
        return 2 + top // lead

    def natural_roots_on_class(self, residue: int, modulus: int, lo: int = 0) -> list[int]:
        """All x >= lo with x = residue (mod modulus) and self(x) = 0.

        Caller must ensure self is not the zero polynomial.
        """
        if self.is_zero:
            raise ValueError("zero polynomial has every root")
        hi = self.root_bound()
        out = []
        x = first_on_class(residue, modulus, lo)
        while x <= hi:
            if self.eval_numerator(x) == 0:
                out.append(x)
            x += modulus
        return out

    def nonneg_from(self, residue: int, modulus: int, lo: int = 0) -> int | None:
        """Least class point t >= lo with self(x) >= 0 for every class x >= t.

        Returns None when self is eventually negative on the class.
        """
        if self.degree <= 0:
            return lo if self.constant_value >= 0 else None
        if self.leading < 0:
            return None
        hi = self.root_bound()
        t = first_on_class(residue, modulus, lo)
        x = t
        while x <= hi:
            if self.eval_numerator(x) < 0:
                t = x + modulus
            x += modulus
        return t

    def sign_at(self, x: int) -> int:
        v = self.eval_numerator(x)
        return (v > 0) - (v < 0)

    def eventual_sign(self) -> int:
        if self.is_zero:
            return 0
        return 1 if self.leading > 0 else -1

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(parts)


def first_on_class(residue: int, modulus: int, lo: int) -> int:
    """Smallest x >= lo with x = residue (mod modulus)."""
    return lo + (residue - lo) % modulus


def value_mod_period(p: Poly, modulus: int) -> int:
    """Period d with: x = y (mod d) and both on an integrality class implies
    p(x) = p(y) (mod modulus).  Clearing denominators gives d = modulus * den."""
    return modulus * p.denominator


__all__ = ["Poly", "first_on_class", "value_mod_period", "gcd", "lcm"]
