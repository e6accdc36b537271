"""Seeded random generators for sets, functions, and formulas.

Every generator takes an explicit random.Random so suites can shard their
sample space deterministically; rng_for derives a stream from a seed and
a label path.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .epsets import EpSet
from .eqp import EqpFunction
from .polys import Poly
from . import formulas as F

# x(x+1)/2, integer valued on all of Z
_TRIANGLE = Poly.of(0, Fraction(1, 2), Fraction(1, 2))


def rng_for(seed: int, *path) -> random.Random:
    return random.Random(":".join([str(seed)] + [str(p) for p in path]))


def random_epset(rng: random.Random, max_modulus: int = 6,
                 max_prefix: int = 6) -> EpSet:
    m = rng.randint(1, max_modulus)
    residues = {r for r in range(m) if rng.random() < 0.5}
    n = rng.randint(0, max_prefix)
    prefix = {x for x in range(n) if rng.random() < 0.5}
    return EpSet.from_parts(n, prefix, m, residues)


def random_nonempty_epset(rng: random.Random, **kwargs) -> EpSet:
    while True:
        s = random_epset(rng, **kwargs)
        if not s.is_empty:
            return s


def _random_branch(rng: random.Random, max_degree: int, max_coeff: int) -> Poly:
    roll = rng.random()
    if roll < 0.3:
        return Poly.constant(rng.randrange(0, 7))
    if roll < 0.85:
        degree = rng.randint(1, max_degree)
        coeffs = [Fraction(rng.randint(-max_coeff, max_coeff)) for _ in range(degree)]
        coeffs.append(Fraction(rng.randint(1, max_coeff)))
        return Poly(tuple(coeffs))
    # half-integer flavour: triangle(a*x + b) + c, integer valued everywhere
    inner = Poly.of(rng.randint(0, 3), rng.randint(1, 2))
    return _TRIANGLE.compose(inner) + Poly.constant(rng.randrange(0, 4))


def random_eqp(rng: random.Random, max_modulus: int = 3, max_degree: int = 2,
               max_coeff: int = 3, max_extra_prefix: int = 2) -> EqpFunction:
    m = rng.choice([1, 1, 1, 2, 2, 3, max_modulus])
    branches = [_random_branch(rng, max_degree, max_coeff) for _ in range(m)]
    t = 0
    for r, p in enumerate(branches):
        if p.degree > 0:
            t = max(t, p.nonneg_from(r, m, 0))
    t += rng.randint(0, max_extra_prefix)
    prefix = [rng.randrange(0, 9) for _ in range(t)]
    return EqpFunction.from_parts(t, prefix, m, branches)


def random_distinct_eqp_pair(rng: random.Random, **kwargs) -> tuple[EqpFunction, EqpFunction]:
    while True:
        f = random_eqp(rng, **kwargs)
        g = random_eqp(rng, **kwargs)
        if f != g:
            return f, g


# -- formulas -------------------------------------------------------------------


def random_term(rng: random.Random, env: F.FormulaEnv, depth: int) -> F.Term:
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        return F.Var() if rng.random() < 0.6 else F.Const(rng.randrange(0, 6))
    if roll < 0.55 and env.functions:
        name = rng.choice(sorted(env.functions))
        return F.Apply(name, random_term(rng, env, depth - 1))
    if roll < 0.65:
        return F.Power(random_term(rng, env, depth - 1), 2)
    op = rng.choice(["+", "+", "*", "-"])
    return F.BinOp(op, random_term(rng, env, depth - 1), random_term(rng, env, depth - 1))


def random_atom(rng: random.Random, env: F.FormulaEnv, depth: int) -> F.Atom:
    roll = rng.random()
    if roll < 0.4 and env.sets:
        name = rng.choice(sorted(env.sets))
        return F.Atom("in", random_term(rng, env, depth), set_name=name)
    kind = "eq" if roll < 0.7 else "le"
    return F.Atom(kind, random_term(rng, env, depth), right=random_term(rng, env, depth))


def random_formula(rng: random.Random, env: F.FormulaEnv, depth: int = 2,
                   term_depth: int = 2) -> F.Formula:
    if depth <= 0 or rng.random() < 0.4:
        return random_atom(rng, env, term_depth)
    roll = rng.random()
    if roll < 0.2:
        return F.Not(random_formula(rng, env, depth - 1, term_depth))
    left = random_formula(rng, env, depth - 1, term_depth)
    right = random_formula(rng, env, depth - 1, term_depth)
    if roll < 0.5:
        return F.And(left, right)
    if roll < 0.8:
        return F.Or(left, right)
    return F.Implies(left, right)


__all__ = [
    "rng_for", "random_epset", "random_nonempty_epset", "random_eqp",
    "random_distinct_eqp_pair", "random_term", "random_atom", "random_formula",
]
