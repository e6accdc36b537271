"""Batch front-end: seeded experiment runs with JSON and text reports.

Every subcommand assembles one report object; the human-readable text is
rendered from that object, never computed separately.  Reports echo their
full effective configuration, and re-running a subcommand from the
echoed config and seed reproduces the report bit for bit (timing aside).

Exit codes: 0 all checks passed, 1 usage error, 2 a guaranteed law
failed (a bug), 3 nothing failed but some outcome stayed inconclusive.

The exact grammars for set, function, oracle, and formula literals are
documented in starnat.notation and starnat.formulas (and the README).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .epsets import EpSet, intersect_all
from .eqp import EqpFunction
from .extension import Context, orbit_explore
from .finitelab import (AXIOMS, FiniteUniverse, finite_stone,
                        search_extensions, stone_trace, verify_candidate)
from .formulas import FormulaEnv, parse_formula, transfer_check
from .notation import (NotationError, format_epset, format_eqp, parse_epset,
                       parse_eqp, parse_oracle)
from .polys import Poly
from .rep2 import LinearCongruence, ProductSet, diagonal
from .sampling import random_distinct_eqp_pair, random_epset, rng_for
from .ultra import (Distinct, EqualCertified, EqualUpTo, hausdorff_check,
                    tensor, tensor_member, tensor_proj)

SCHEMA_VERSION = 1

SUBCOMMANDS = ("axioms", "hausdorff", "indiscernibles", "tensor", "possibility",
               "transfer", "orbit", "finite-search", "stone")


class UsageError(ValueError):
    pass


def _default_horizon() -> int:
    raw = os.environ.get("STARNAT_HORIZON", "64")
    try:
        return int(raw)
    except ValueError:
        return 64


def _verdict_json(v) -> dict:
    if isinstance(v, Distinct):
        return {"kind": "distinct", "witness": format_epset(v.witness)}
    if isinstance(v, EqualCertified):
        return {"kind": "equal-certified",
                "certificate": {"kind": v.certificate_kind, "value": v.value}}
    if isinstance(v, EqualUpTo):
        return {"kind": "equal-up-to", "horizon": v.horizon, "note": v.note}
    raise TypeError(f"not a verdict: {v!r}")


class Checks:
    def __init__(self) -> None:
        self.passed: list[str] = []
        self.failed: list[str] = []
        self.inconclusive: list[str] = []

    def record(self, ok: bool, label: str) -> None:
        (self.passed if ok else self.failed).append(label)

    def note_inconclusive(self, label: str) -> None:
        self.inconclusive.append(label)

    def as_json(self) -> dict:
        return {"passed": self.passed, "failed": self.failed,
                "inconclusive": self.inconclusive}


def _cfg(config: dict, key: str, default, cast):
    raw = config.get(key, default)
    try:
        return cast(raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad value for {key}: {raw!r}") from exc


def _parse_fn(text: str) -> EqpFunction:
    try:
        return parse_eqp(str(text))
    except (NotationError, ValueError) as exc:
        raise UsageError(f"bad function literal {text!r}: {exc}") from exc


def _parse_set(text: str) -> EpSet:
    try:
        return parse_epset(str(text))
    except NotationError as exc:
        raise UsageError(f"bad set literal {text!r}: {exc}") from exc


def _parse_oracle_cfg(text: str):
    try:
        return parse_oracle(str(text))
    except NotationError as exc:
        raise UsageError(str(exc)) from exc


# -- subcommand runners ---------------------------------------------------------


def _run_axioms(config: dict, checks: Checks) -> tuple[dict, dict]:
    oracle = _cfg(config, "oracle", "profinite:int:0", str)
    seed = _cfg(config, "seed", 0, int)
    horizon = _cfg(config, "horizon", _default_horizon(), int)
    samples = _cfg(config, "samples", 200, int)
    echo = {"oracle": oracle, "seed": seed, "horizon": horizon, "samples": samples}
    ctx = Context(_parse_oracle_cfg(oracle), horizon=horizon, seed=seed)
    report = ctx.axiom_suite(samples, seed=seed)
    checks.record(report.comp_failures == 0, f"composition identity exact on {samples} samples")
    checks.record(report.equ_failures == 0, f"equalizer identity exact on {samples} samples")
    checks.record(report.dir_failures == 0, f"directedness witness valid on {samples} samples")
    results = {
        "samples": report.samples,
        "comp_failures": report.comp_failures,
        "equ_failures": report.equ_failures,
        "dir_failures": report.dir_failures,
        "failure_seeds": list(report.failure_seeds),
        "oracle": ctx.ambient.describe(),
    }
    return echo, {"results": results, "log_handles": [ctx.ambient]}


def _run_hausdorff(config: dict, checks: Checks) -> tuple[dict, dict]:
    oracle = _cfg(config, "oracle", "profinite:int:0", str)
    fn_f = _cfg(config, "fn-f", "n", str)
    fn_g = _cfg(config, "fn-g", "n^2", str)
    horizon = _cfg(config, "horizon", _default_horizon(), int)
    echo = {"oracle": oracle, "fn-f": fn_f, "fn-g": fn_g, "horizon": horizon}
    u = _parse_oracle_cfg(oracle)
    f, g = _parse_fn(fn_f), _parse_fn(fn_g)
    hr = hausdorff_check(u, f, g, horizon)
    if hr.verdict == "internal-inconsistency":
        checks.record(False, "pushforwards separated while equalizer is inside the filter")
    elif hr.verdict == "inconclusive":
        checks.note_inconclusive(f"no certificate or witness up to horizon {horizon}")
    else:
        checks.record(True, f"definitive verdict: condition {hr.verdict}")
    results = {
        "equalizer": format_epset(hr.equalizer),
        "equalizer_in_filter": hr.equalizer_in_filter,
        "pushforward": _verdict_json(hr.pushforward_verdict),
        "verdict": hr.verdict,
    }
    return echo, {"results": results, "log_handles": [u]}


def _run_indiscernibles(config: dict, checks: Checks) -> tuple[dict, dict]:
    oracle = _cfg(config, "oracle", "profinite:int:0", str)
    seed = _cfg(config, "seed", 0, int)
    horizon = _cfg(config, "horizon", _default_horizon(), int)
    pairs = _cfg(config, "pairs", 25, int)
    echo = {"oracle": oracle, "seed": seed, "horizon": horizon, "pairs": pairs}
    ctx = Context(_parse_oracle_cfg(oracle), horizon=horizon, seed=seed)
    flag_xi = ctx.point(EqpFunction.identity())
    flag_eta = ctx.point(EqpFunction.from_poly(Poly.of(0, 0, 1)))
    flagship = ctx.monad_compare(flag_xi, flag_eta)
    checks.record(flagship.distinct, "flagship pair [n], [n^2] is distinct")
    if flagship.kind == "unknown-up-to":
        checks.note_inconclusive("flagship pair separability unknown at this horizon")
    results_pairs = []
    counts = {"separated": 0, "indiscernible-certified": 0, "unknown-up-to": 0}
    witness_ok = True
    battery = [(flag_xi, flag_eta, "n", "n^2", flagship)]
    for i in range(pairs):
        rng = rng_for(seed, "indiscernibles", i)
        while True:
            f, g = random_distinct_eqp_pair(rng)
            xi, eta = ctx.point(f), ctx.point(g)
            if not ctx.hyper_equal(xi, eta):
                break
        battery.append((xi, eta, format_eqp(f), format_eqp(g), ctx.monad_compare(xi, eta)))
    for xi, eta, tf, tg, rep in battery:
        counts[rep.kind] = counts.get(rep.kind, 0) + 1
        entry = {"f": tf, "g": tg, "distinct": rep.distinct, "kind": rep.kind}
        if rep.witness is not None:
            entry["witness"] = format_epset(rep.witness)
            if ctx.star_member(xi, rep.witness) == ctx.star_member(eta, rep.witness):
                witness_ok = False
        if rep.certificate is not None:
            entry["certificate"] = {"kind": rep.certificate.certificate_kind,
                                    "value": rep.certificate.value}
        results_pairs.append(entry)
    checks.record(witness_ok, "every separation witness re-validates through star membership")
    if counts.get("unknown-up-to"):
        checks.note_inconclusive(f"{counts['unknown-up-to']} pair(s) unresolved at horizon {horizon}")
    results = {"pairs": results_pairs, "counts": counts,
               "flagship_kind": flagship.kind}
    return echo, {"results": results, "log_handles": [ctx.ambient]}


def _run_tensor(config: dict, checks: Checks) -> tuple[dict, dict]:
    oracle = _cfg(config, "oracle", "profinite:int:0", str)
    seed = _cfg(config, "seed", 0, int)
    max_modulus = _cfg(config, "max-modulus", 50, int)
    max_prefix = _cfg(config, "max-prefix", 50, int)
    sample_sets = _cfg(config, "sample-sets", 40, int)
    echo = {"oracle": oracle, "seed": seed, "max-modulus": max_modulus,
            "max-prefix": max_prefix, "sample-sets": sample_sets}
    u = _parse_oracle_cfg(oracle)
    if u.is_principal:
        raise UsageError("the tensor counterexample needs a nonprincipal oracle")
    t = tensor(u, u)
    diag_in = tensor_member(t, diagonal())
    checks.record(not diag_in, "diagonal is outside the self-tensor")
    product_ok = True
    for i in range(sample_sets):
        rng = rng_for(seed, "tensor-product", i)
        a, b = random_epset(rng), random_epset(rng)
        if tensor_member(t, ProductSet(a, b)) != (u.member(a) and u.member(b)):
            product_ok = False
    checks.record(product_ok, f"product membership rule on {sample_sets} sampled pairs")
    congruence = tensor_member(t, LinearCongruence(1, -1, 0, 2))
    expected = u.member(EpSet.evens()) or u.member(EpSet.odds())
    checks.record(congruence == expected, "congruence x = y (mod 2) membership matches the section rule")
    proj = [tensor_proj(t, 1), tensor_proj(t, 2)]
    residue_ok = all(p.residue(m) == u.residue(m)
                     for p in proj for m in range(1, max_modulus + 1))
    checks.record(residue_ok,
                  f"projection residues match the factor for every modulus <= {max_modulus} "
                  f"(settles every eventually periodic set with modulus <= {max_modulus})")
    sampled_ok = True
    for i in range(sample_sets):
        rng = rng_for(seed, "tensor-proj", i)
        s = random_epset(rng, max_modulus=min(10, max_modulus), max_prefix=min(10, max_prefix))
        for p in proj:
            if p.member(s) != u.member(s):
                sampled_ok = False
    checks.record(sampled_ok, f"projection membership equals the factor on {sample_sets} sampled sets")
    results = {
        "diagonal_in_tensor": diag_in,
        "congruence_mod2_in_tensor": congruence,
        "projection_residues_checked_upto": max_modulus,
        "projection_residues_agree": residue_ok,
    }
    return echo, {"results": results, "log_handles": [u]}


def _run_possibility(config: dict, checks: Checks) -> tuple[dict, dict]:
    oracle = _cfg(config, "oracle", "profinite:int:0", str)
    sets_text = _cfg(config, "sets", "evens; mult 3; cofinite {0,1,2,3,4,5,6,7,8}", str)
    echo = {"oracle": oracle, "sets": sets_text}
    ctx = Context(_parse_oracle_cfg(oracle))
    family = [_parse_set(chunk) for chunk in sets_text.split(";") if chunk.strip()]
    if not family:
        raise UsageError("need at least one set literal")
    witness = ctx.poss_witness(family)
    results = {"kind": witness.kind,
               "chain": [format_epset(s) for s in witness.chain]}
    if witness.kind == "no-fip":
        window = intersect_all(family).equality_window(EpSet.empty())
        brute_empty = not any(all(s.member(x) for s in family) for x in range(window))
        checks.record(brute_empty, f"empty intersection cross-checked on window [0, {window})")
    elif witness.kind == "standard":
        results["standard_point"] = witness.standard_point
        checks.record(all(witness.memberships), "standard witness lies in every set")
    else:
        results["hyper_rep"] = format_eqp(witness.hyper.rep)
        results["memberships"] = list(witness.memberships)
        checks.record(all(witness.memberships),
                      "hyper witness star-membership re-validates for every set")
    return echo, {"results": results, "log_handles": [ctx.ambient]}


def _env_from_config(config: dict) -> FormulaEnv:
    env = FormulaEnv.with_defaults()
    for key, value in sorted(config.items()):
        if key.startswith("fn."):
            env.functions[key[3:]] = _parse_fn(value)
        elif key.startswith("set."):
            env.sets[key[4:]] = _parse_set(value)
    return env


def _run_transfer(config: dict, checks: Checks) -> tuple[dict, dict]:
    oracle = _cfg(config, "oracle", "profinite:int:0", str)
    formula_text = _cfg(config, "formula", "n^2 = n", str)
    points_text = _cfg(config, "points", "n; n^2; 2*n+1", str)
    echo = {"oracle": oracle, "formula": formula_text, "points": points_text}
    for key in sorted(config):
        if key.startswith(("fn.", "set.")):
            echo[key] = str(config[key])
    ctx = Context(_parse_oracle_cfg(oracle))
    env = _env_from_config(config)
    try:
        phi = parse_formula(formula_text)
    except ValueError as exc:
        raise UsageError(f"bad formula: {exc}") from exc
    points = [ctx.point(_parse_fn(chunk)) for chunk in points_text.split(";") if chunk.strip()]
    report = transfer_check(phi, points, env)
    checks.record(report.los_ok,
                  "star evaluation equals membership in the star of the truth set at every point")
    checks.record(report.closure_agrees, "universal closure agrees on both sides")
    results = {
        "truth_set": format_epset(report.truth_set),
        "closure_standard": report.closure_standard,
        "points": [{"star_value": v.star_value, "member_value": v.member_value,
                    "agree": v.agree} for v in report.point_verdicts],
    }
    if report.counterexample is not None:
        results["counterexample"] = report.counterexample
        results["counterexample_star_value"] = report.counterexample_star_value
    return echo, {"results": results, "log_handles": [ctx.ambient]}


def _run_orbit(config: dict, checks: Checks) -> tuple[dict, dict]:
    oracle = _cfg(config, "oracle", "profinite:int:0", str)
    generators_text = _cfg(config, "generators", "n+1", str)
    budget = _cfg(config, "budget", 8, int)
    horizon = _cfg(config, "horizon", _default_horizon(), int)
    echo = {"oracle": oracle, "generators": generators_text,
            "budget": budget, "horizon": horizon}
    u = _parse_oracle_cfg(oracle)
    generators = [_parse_fn(chunk) for chunk in generators_text.split(";") if chunk.strip()]
    report = orbit_explore(u, generators, budget, horizon)
    checks.record(all(p.ancestor_found for p in report.directedness),
                  "every probed pair has the root as a pushforward ancestor")
    if report.unresolved_merges:
        checks.note_inconclusive(
            f"{report.unresolved_merges} equality checks stayed at the horizon during deduplication")
    results = {
        "elements": [{"handle": el.handle.describe(), "path": list(el.path)}
                     for el in report.elements],
        "pairwise": {f"{a},{b}": kind for (a, b), kind in sorted(report.verdicts.items())},
        "probes": [{"first": p.first, "second": p.second,
                    "ancestor_found": p.ancestor_found, "certified": p.certified}
                   for p in report.directedness],
        "budget_used": report.budget_used,
        "truncated": report.truncated,
    }
    return echo, {"results": results, "log_handles": [u]}


def _run_finite_search(config: dict, checks: Checks) -> tuple[dict, dict]:
    k = _cfg(config, "k", 2, int)
    e = _cfg(config, "e", 1, int)
    require_text = _cfg(config, "require", "comp,equ,dir", str)
    budget = _cfg(config, "budget", 200_000, int)
    echo = {"k": k, "e": e, "require": require_text, "budget": budget}
    required = tuple(a.strip() for a in require_text.split(",") if a.strip())
    for a in required:
        if a not in AXIOMS:
            raise UsageError(f"unknown axiom {a!r}; choose from {AXIOMS}")
    matrix = search_extensions(k, e, required, budget)
    entry = matrix.entry(*required)
    if entry.status == "budget-exhausted":
        checks.note_inconclusive(f"required subset truncated after {matrix.nodes_used} nodes")
    if set(required) >= {"comp", "equ", "dir"} and entry.status == "complete":
        checks.record(entry.count == 0,
                      "no candidate satisfies composition, equalizer and directedness together")
    agreement = True
    for sub_entry in matrix.entries.values():
        if sub_entry.first_model is not None:
            verdicts = verify_candidate(FiniteUniverse(k, e), sub_entry.first_model)
            if not all(getattr(verdicts, a) for a in sub_entry.axioms):
                agreement = False
    checks.record(agreement, "every first-found model re-passes direct verification")
    if matrix.exhaustive:
        subsets = sorted(matrix.entries)
        monotone = all(
            matrix.entries[s].count >= matrix.entries[t].count
            for s in subsets for t in subsets if set(s) <= set(t))
        checks.record(monotone, "model counts are monotone under adding axioms")
    universe = FiniteUniverse(k, e)
    entries_json = {}
    for axioms, sub_entry in sorted(matrix.entries.items()):
        key = "+".join(axioms) if axioms else "(none)"
        model = None
        if sub_entry.first_model is not None:
            # candidate table keyed by function graphs: "f(0),f(1),..." -> extras column
            model = {",".join(str(v) for v in graph): list(col)
                     for graph, col in zip(universe.functions, sub_entry.first_model)}
        entries_json[key] = {
            "status": sub_entry.status,
            "count": sub_entry.count,
            "first_model": model,
        }
    results = {
        "total_candidates": matrix.total_candidates,
        "exhaustive": matrix.exhaustive,
        "nodes_used": matrix.nodes_used,
        "entries": entries_json,
    }
    return echo, {"results": results, "log_handles": []}


def _run_stone(config: dict, checks: Checks) -> tuple[dict, dict]:
    generators_text = _cfg(config, "generators", "evens; mult 3", str)
    trace_spec = _cfg(config, "trace", "profinite:int:0", str)
    echo = {"generators": generators_text, "trace": trace_spec}
    generators = [_parse_set(chunk) for chunk in generators_text.split(";") if chunk.strip()]
    if not generators:
        raise UsageError("need at least one generator set")
    stone = finite_stone(generators)
    union = EpSet.empty()
    disjoint = True
    for i, a in enumerate(stone.atoms):
        for b in stone.atoms[i + 1:]:
            if not a.intersection(b).is_empty:
                disjoint = False
        union = union.union(a)
    checks.record(disjoint and union == EpSet.naturals(),
                  "atoms are pairwise disjoint and cover the naturals")
    gens_ok = True
    for gi, g in enumerate(generators):
        rebuilt = EpSet.empty()
        for ai in stone.generator_atoms[gi]:
            rebuilt = rebuilt.union(stone.atoms[ai])
        if rebuilt != g:
            gens_ok = False
    checks.record(gens_ok, "every generator is the union of its atoms")
    handle = _parse_oracle_cfg(trace_spec)
    results = {
        "atoms": [format_epset(a) for a in stone.atoms],
        "generator_atoms": [list(x) for x in stone.generator_atoms],
    }
    try:
        index = stone_trace(handle, stone)
    except AssertionError:
        checks.record(False, "trace selected exactly one atom")
    else:
        checks.record(True, "trace selected exactly one atom")
        results["trace_atom_index"] = index
        results["trace_atom"] = format_epset(stone.atoms[index])
    return echo, {"results": results, "log_handles": [handle]}


_RUNNERS = {
    "axioms": _run_axioms,
    "hausdorff": _run_hausdorff,
    "indiscernibles": _run_indiscernibles,
    "tensor": _run_tensor,
    "possibility": _run_possibility,
    "transfer": _run_transfer,
    "orbit": _run_orbit,
    "finite-search": _run_finite_search,
    "stone": _run_stone,
}


def run(subcommand: str, config: dict) -> dict:
    """Execute one subcommand; returns the full report object."""
    if subcommand not in _RUNNERS:
        raise UsageError(f"unknown subcommand {subcommand!r}")
    checks = Checks()
    started = time.perf_counter()
    echo, payload = _RUNNERS[subcommand](config, checks)
    elapsed = (time.perf_counter() - started) * 1000.0
    log = []
    for handle in payload.get("log_handles", []):
        log.extend([list(entry) for entry in handle.commitment_log()])
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "config": echo,
        "results": payload["results"],
        "checks": checks.as_json(),
        "commitmentLog": log,
        "timing_ms": elapsed,
    }


def exit_code_for(report: dict) -> int:
    checks = report["checks"]
    if checks["failed"]:
        return 2
    if checks["inconclusive"]:
        return 3
    return 0


def report_json(report: dict, drop_timing: bool = False) -> str:
    body = dict(report)
    if drop_timing:
        body.pop("timing_ms", None)
    return json.dumps(body, sort_keys=True, separators=(",", ": "), indent=1)


def render_text(report: dict) -> str:
    lines = [f"== {report['subcommand']} (schema v{report['schema_version']}) =="]
    lines.append("config: " + ", ".join(f"{k}={v}" for k, v in sorted(report["config"].items())))
    for label in report["checks"]["passed"]:
        lines.append(f"  [pass] {label}")
    for label in report["checks"]["failed"]:
        lines.append(f"  [FAIL] {label}")
    for label in report["checks"]["inconclusive"]:
        lines.append(f"  [....] {label}")
    lines.append("results:")
    lines.extend(_render_value(report["results"], "  "))
    if report["commitmentLog"]:
        entries = ", ".join(f"{pp}:{r}" for pp, r in report["commitmentLog"])
        lines.append(f"commitment log: {entries}")
    lines.append(f"timing: {report['timing_ms']:.1f} ms")
    return "\n".join(lines)


def _render_value(value, indent: str) -> list[str]:
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.extend(_render_value(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                inner = _render_value(v, indent + "  ")
                if inner:
                    inner[0] = indent + "- " + inner[0].lstrip()
                lines.extend(inner)
            else:
                lines.append(f"{indent}- {v}")
    else:
        lines.append(f"{indent}{value}")
    return lines


# -- argument handling -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_config_file(path: str) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected KEY = VALUE")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


_FLAG_KEYS = {
    "axioms": ["oracle", "seed", "horizon", "samples"],
    "hausdorff": ["oracle", "fn-f", "fn-g", "horizon"],
    "indiscernibles": ["oracle", "seed", "horizon", "pairs"],
    "tensor": ["oracle", "seed", "max-modulus", "max-prefix", "sample-sets"],
    "possibility": ["oracle", "sets"],
    "transfer": ["oracle", "formula", "points"],
    "orbit": ["oracle", "generators", "budget", "horizon"],
    "finite-search": ["k", "e", "require", "budget"],
    "stone": ["generators", "trace"],
}


def build_parser() -> _Parser:
    parser = _Parser(prog="starnat", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat KEY = VALUE config file")
        p.add_argument("--json", dest="json_path", help="write the JSON report here")
        p.add_argument("--quiet", action="store_true", help="suppress the text rendering")
        for key in _FLAG_KEYS[name]:
            p.add_argument(f"--{key}", dest=f"opt_{key.replace('-', '_')}")
        if name == "transfer":
            p.add_argument("--fn", action="append", default=[],
                           help="NAME=LITERAL extra function symbol")
            p.add_argument("--set", action="append", default=[], dest="set_defs",
                           help="NAME=LITERAL extra set symbol")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config: dict = {}
        if args.config:
            config.update(_load_config_file(args.config))
        for key in _FLAG_KEYS[args.subcommand]:
            value = getattr(args, f"opt_{key.replace('-', '_')}")
            if value is not None:
                config[key] = value
        if args.subcommand == "transfer":
            for item in args.fn:
                if "=" not in item:
                    raise UsageError(f"--fn needs NAME=LITERAL, got {item!r}")
                name, literal = item.split("=", 1)
                config[f"fn.{name.strip()}"] = literal.strip()
            for item in args.set_defs:
                if "=" not in item:
                    raise UsageError(f"--set needs NAME=LITERAL, got {item!r}")
                name, literal = item.split("=", 1)
                config[f"set.{name.strip()}"] = literal.strip()
        report = run(args.subcommand, config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal law violation: {exc}", file=sys.stderr)
        return 2
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(report_json(report))
            fh.write("\n")
    if not args.quiet:
        print(render_text(report))
    return exit_code_for(report)


if __name__ == "__main__":
    sys.exit(main())
