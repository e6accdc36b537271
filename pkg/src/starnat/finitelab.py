"""Exhaustive star-map search on small finite universes, plus finite
Stone-space approximations.

A candidate assigns to every function f on the base X = {0..k-1} a total
extension to X plus e extra points, fixed on X.  The candidate is fully
described by its extras columns, and the axioms (composition
preservation, equalizer preservation and its weak variant, directedness)
together with the separation and simultaneous-satisfaction flags are all
decidable by direct enumeration.  The search enumerates columns
depth-first with constraint propagation from composition closure and
characteristic-value constraints; budgets make truncated runs honest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .epsets import EpSet
from .ultra import UltrafilterHandle

AXIOMS = ("comp", "equ", "wequ", "dir")

WEQU_NOTE = ("on a finite carrier every function has finite range, so the "
             "weak equalizer condition applies to every pair and coincides "
             "with full equalizer preservation")


@dataclass(frozen=True)
class FiniteUniverse:
    """Base {0..size-1} with `extras` additional points; 0 and 1 are the
    designated characteristic values, hence size >= 2."""

    size: int
    extras: int

    def __post_init__(self) -> None:
        if self.size < 2:
            raise ValueError("base must contain 0 and 1")
        if self.extras < 1:
            raise ValueError("need at least one extra point")

    @property
    def points(self) -> int:
        return self.size + self.extras

    @cached_property
    def functions(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(range(self.size), repeat=self.size))

    @cached_property
    def function_index(self) -> dict[tuple[int, ...], int]:
        return {f: i for i, f in enumerate(self.functions)}

    @cached_property
    def compose_table(self) -> tuple[tuple[int, ...], ...]:
        """compose_table[gi][fi] = index of g o f."""
        idx = self.function_index
        out = []
        for g in self.functions:
            row = []
            for f in self.functions:
                row.append(idx[tuple(g[f[x]] for x in range(self.size))])
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def char_table(self) -> tuple[tuple[int, ...], ...]:
        """char_table[fi][gi] = index of the 0/1 indicator of {x : f(x) = g(x)}."""
        idx = self.function_index
        out = []
        for f in self.functions:
            row = []
            for g in self.functions:
                row.append(idx[tuple(1 if f[x] == g[x] else 0 for x in range(self.size))])
            out.append(tuple(row))
        return tuple(out)

    def candidate_count(self) -> int:
        return self.points ** (len(self.functions) * self.extras)

    def iter_candidates(self):
        column = itertools.product(range(self.points), repeat=self.extras)
        return itertools.product(tuple(column), repeat=len(self.functions))


Candidate = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CandidateVerdicts:
    comp: bool
    equ: bool
    wequ: bool
    dir: bool
    ind: bool
    poss: bool
    wequ_note: str
    failures: tuple[tuple, ...]  # (axiom, witness) first failures


def star_value(universe: FiniteUniverse, candidate: Candidate, fi: int, z: int) -> int:
    if z < universe.size:
        return universe.functions[fi][z]
    return candidate[fi][z - universe.size]


def verify_candidate(universe: FiniteUniverse, candidate: Candidate) -> CandidateVerdicts:
    k = universe.size
    pts = universe.points
    fcount = len(universe.functions)
    failures: list[tuple] = []

    def star(fi: int, z: int) -> int:
        return star_value(universe, candidate, fi, z)

    comp = True
    for gi in range(fcount):
        for fi in range(fcount):
            hi = universe.compose_table[gi][fi]
            for z in range(pts):
                if star(gi, star(fi, z)) != star(hi, z):
                    comp = False
                    failures.append(("comp", (gi, fi, z)))
                    break
            if not comp:
                break
        if not comp:
            break

    equ = True
    for fi in range(fcount):
        for gi in range(fi, fcount):
            ci = universe.char_table[fi][gi]
            for z in range(pts):
                want = 1 if star(fi, z) == star(gi, z) else 0
                if star(ci, z) != want:
                    equ = False
                    failures.append(("equ", (fi, gi, z)))
                    break
            if not equ:
                break
        if not equ:
            break

    direct = True
    for xi in range(pts):
        for eta in range(pts):
            found = any(star(p1, z) == xi and star(p2, z) == eta
                        for z in range(pts)
                        for p1 in range(fcount)
                        for p2 in range(fcount))
            if not found:
                direct = False
                failures.append(("dir", (xi, eta)))
                break
        if not direct:
            break

    ind = True
    subset_chars = []
    for bits in itertools.product((0, 1), repeat=k):
        subset_chars.append(universe.function_index[bits])
    for z1 in range(pts):
        for z2 in range(z1 + 1, pts):
            if not any(star(ci, z1) != star(ci, z2) for ci in subset_chars):
                ind = False
                failures.append(("ind", (z1, z2)))
                break
        if not ind:
            break

    return CandidateVerdicts(comp=comp, equ=equ, wequ=equ, dir=direct,
                             ind=ind, poss=True,
                             wequ_note=WEQU_NOTE, failures=tuple(failures))


# -- search --------------------------------------------------------------------


@dataclass(frozen=True)
class SubsetEntry:
    axioms: tuple[str, ...]
    status: str  # "complete" | "budget-exhausted" | "not-evaluated"
    count: int | None
    first_model: Candidate | None


@dataclass(frozen=True)
class SatisfiabilityMatrix:
    size: int
    extras: int
    total_candidates: int
    entries: dict[tuple[str, ...], SubsetEntry]
    nodes_used: int
    exhaustive: bool

    def entry(self, *axioms: str) -> SubsetEntry:
        return self.entries[tuple(a for a in AXIOMS if a in axioms)]


def _all_subsets() -> list[tuple[str, ...]]:
    out = []
    for mask in range(16):
        out.append(tuple(a for i, a in enumerate(AXIOMS) if mask >> i & 1))
    return out


def search_extensions(k: int, e: int, required: tuple[str, ...] = (),
                      budget: int = 200_000,
                      full_enum_limit: int = 5_000) -> SatisfiabilityMatrix:
    """Count candidates satisfying each axiom subset.

    Small spaces are enumerated outright and every subset is tallied.
    Larger spaces run a depth-first search with propagation for the
    required subset only; a blown budget marks the entry
    budget-exhausted with the count found so far.
    """
    for a in required:
        if a not in AXIOMS:
            raise ValueError(f"unknown axiom {a!r}")
    universe = FiniteUniverse(k, e)
    required = tuple(a for a in AXIOMS if a in required)
    total = universe.candidate_count()
    entries: dict[tuple[str, ...], SubsetEntry] = {}
    if total <= full_enum_limit:
        counts = {s: 0 for s in _all_subsets()}
        first = {s: None for s in _all_subsets()}
        for candidate in universe.iter_candidates():
            verdicts = verify_candidate(universe, candidate)
            for s in counts:
                if all(getattr(verdicts, a) for a in s):
                    counts[s] += 1
                    if first[s] is None:
                        first[s] = candidate
        for s in counts:
            entries[s] = SubsetEntry(s, "complete", counts[s], first[s])
        return SatisfiabilityMatrix(k, e, total, entries, total, True)

    count, first_model, nodes, exhausted = _search_dfs(universe, required, budget)
    for s in _all_subsets():
        if s == required:
            status = "budget-exhausted" if exhausted else "complete"
            entries[s] = SubsetEntry(s, status, count, first_model)
        else:
            entries[s] = SubsetEntry(s, "not-evaluated", None, None)
    return SatisfiabilityMatrix(k, e, total, entries, nodes, False)


def _search_dfs(universe: FiniteUniverse, required: tuple[str, ...], budget: int):
    k = universe.size
    e = universe.extras
    fcount = len(universe.functions)
    comp_on = "comp" in required
    equ_on = "equ" in required or "wequ" in required
    compose_t = universe.compose_table
    char_t = universe.char_table
    funcs = universe.functions
    order = [(fi, ei) for fi in range(fcount) for ei in range(e)]

    state = {"nodes": 0, "count": 0, "first": None, "exhausted": False}

    def propagate(assign: dict) -> bool:
        changed = True
        while changed:
            changed = False
            if comp_on:
                for (fi, ei), v in list(assign.items()):
                    for gi in range(fcount):
                        hi = compose_t[gi][fi]
                        if v < k:
                            forced = funcs[gi][v]
                        else:
                            forced = assign.get((gi, v - k))
                            if forced is None:
                                continue
                        cur = assign.get((hi, ei))
                        if cur is None:
                            assign[(hi, ei)] = forced
                            changed = True
                        elif cur != forced:
                            return False
            if equ_on:
                for fi in range(fcount):
                    for gi in range(fi, fcount):
                        ci = char_t[fi][gi]
                        for ei in range(e):
                            vc = assign.get((ci, ei))
                            if vc is not None and vc > 1:
                                return False
                            vf = assign.get((fi, ei))
                            vg = assign.get((gi, ei))
                            if vf is not None and vg is not None:
                                want = 1 if vf == vg else 0
                                if vc is None:
                                    assign[(ci, ei)] = want
                                    changed = True
                                elif vc != want:
                                    return False
                            elif vc == 1:
                                if vf is not None and vg is None:
                                    assign[(gi, ei)] = vf
                                    changed = True
                                elif vg is not None and vf is None:
                                    assign[(fi, ei)] = vg
                                    changed = True
        return True

    def dfs(assign: dict) -> None:
        if state["exhausted"]:
            return
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["exhausted"] = True
            return
        var = next((v for v in order if v not in assign), None)
        if var is None:
            candidate = tuple(tuple(assign[(fi, ei)] for ei in range(e))
                              for fi in range(fcount))
            verdicts = verify_candidate(universe, candidate)
            if all(getattr(verdicts, a) for a in required):
                state["count"] += 1
                if state["first"] is None:
                    state["first"] = candidate
            return
        for val in range(universe.points):
            child = dict(assign)
            child[var] = val
            if propagate(child):
                dfs(child)
            if state["exhausted"]:
                return

    root: dict = {}
    if propagate(root):
        dfs(root)
    return state["count"], state["first"], state["nodes"], state["exhausted"]


# -- finite Stone spaces ---------------------------------------------------------


@dataclass(frozen=True)
class FiniteStone:
    generators: tuple[EpSet, ...]
    atoms: tuple[EpSet, ...]
    generator_atoms: tuple[tuple[int, ...], ...]  # per generator: atom indices below it


def finite_stone(generators) -> FiniteStone:
    """Atoms of the finite subalgebra generated by the given sets."""
    generators = tuple(generators)
    if not generators:
        raise ValueError("need at least one generator")
    atoms = [EpSet.naturals()]
    for g in generators:
        refined = []
        for a in atoms:
            for piece in (a.intersection(g), a.difference(g)):
                if not piece.is_empty:
                    refined.append(piece)
        atoms = refined
    gen_atoms = []
    for g in generators:
        gen_atoms.append(tuple(i for i, a in enumerate(atoms)
                               if a.intersection(g) == a))
    return FiniteStone(generators, tuple(atoms), tuple(gen_atoms))


def stone_trace(point, stone: FiniteStone) -> int:
    """Index of the unique atom the point lies in: ultrafilter handles by
    membership, hyper-points by star membership."""
    if isinstance(point, UltrafilterHandle):
        hits = [i for i, a in enumerate(stone.atoms) if point.member(a)]
    else:
        hits = [i for i, a in enumerate(stone.atoms)
                if point.ctx.star_member(point, a)]
    if len(hits) != 1:
        raise AssertionError(f"point selects {len(hits)} atoms; expected exactly one")
    return hits[0]


__all__ = [
    "AXIOMS", "FiniteUniverse", "Candidate", "CandidateVerdicts",
    "star_value", "verify_candidate",
    "SubsetEntry", "SatisfiabilityMatrix", "search_extensions",
    "FiniteStone", "finite_stone", "stone_trace",
]
