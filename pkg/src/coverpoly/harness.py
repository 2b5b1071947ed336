"""Check orchestration shared by the CLI: single-graph checks and fuzz campaigns."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from coverpoly import __version__
from coverpoly.errors import CoverpolyError, InputError, StructuralViolation
from coverpoly.graph import Graph, is_cactus
from coverpoly.ideal import cover_ideal, ideal_power, membership, minimal_vertex_covers
from coverpoly.io import read_decomposition, read_graph, read_order
from coverpoly.monomial import VariableOrder
from coverpoly.structure import (
    Decomposition,
    find_decomposition,
    random_decomposed_graph,
    variable_order,
    verify_decomposition,
)
from coverpoly.wp import (
    BRUTE_FORCE,
    CASE_Y3,
    CASE_Y4,
    DivergencePoint,
    constructive_case,
    constructive_witness,
    count_identities_check,
    degree_sums,
    divergence_groups,
    first_failure,
    has_linear_quotients,
    triple_counts,
    triple_of,
    witness_bruteforce,
)

SCHEMA = "coverpoly/1"
DEFAULT_K_CAP = 6
LINEAR_QUOTIENT_LIMIT = 300

EXIT_OK, EXIT_FOUND, EXIT_ERROR = 0, 1, 2


def parse_k_range(text: str, cap: int = DEFAULT_K_CAP) -> tuple[int, ...]:
    """``"2"``, ``"1..4"``, ``"1-4"`` or ``"1,2,3"``."""
    try:
        if ".." in text or "-" in text:
            lo, hi = text.replace("..", "-").split("-")
            ks = tuple(range(int(lo), int(hi) + 1))
        else:
            ks = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad k range {text!r}") from exc
    if not ks:
        raise InputError(f"empty k range {text!r}")
    if min(ks) < 1 or max(ks) > cap:
        raise InputError(f"k must lie in 1..{cap}, got {text!r}")
    return ks


@dataclass
class RunConfig:
    command: str = "wp-check"
    graph_path: str | None = None
    decomposition_path: str | None = None
    order_path: str | None = None
    ks: tuple[int, ...] = (1, 2)
    seed: int = 0
    instances: int = 25
    limits: tuple[int, int, int] = (3, 1, 1)
    max_vertices: int = 14
    extra_instances: list[tuple[str, str]] = field(default_factory=list)
    strict: bool = False
    require_cactus: bool = False
    witness_limit: int = 200
    timings: bool = False


def _five_triple_violations(g: Graph, d: Decomposition) -> list[str]:
    out = []
    covers = minimal_vertex_covers(g) if d.five_cycles else []
    for block in d.five_cycles:
        for c in covers:
            try:
                triple_of(c, block)
            except StructuralViolation as exc:
                out.append(str(exc))
    return out


def check_instance(g: Graph, d: Decomposition | None, order: VariableOrder, ks, *,
                   witness_limit: int = 200, timings: bool = False) -> dict:
    """Run the full pipeline for one graph and collect results and findings.

    ``d`` may be None (no known decomposition); then every pair is resolved
    by brute force and the 5-cycle checks are skipped.
    """
    findings: list[str] = []
    clock: dict[str, float] = {}
    t0 = time.perf_counter()
    J = cover_ideal(g, order)
    clock["cover_ideal"] = time.perf_counter() - t0
    blocks = d.five_cycles if d is not None else ()
    triple_issues = _five_triple_violations(g, d) if d is not None else []
    findings += [f"five-triple: {m}" for m in triple_issues]
    variables = order.variables
    powers = []
    for k in ks:
        t0 = time.perf_counter()
        I = ideal_power(J, k)
        clock[f"power_{k}"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        groups = divergence_groups(I, order)
        ce = first_failure(I, groups)
        clock[f"wp_{k}"] = time.perf_counter() - t0
        gens = I.generators

        t0 = time.perf_counter()
        facts: dict[int, object] = {}

        def fact(i):
            if i not in facts:
                fa = membership(J, k, gens[i])
                if fa is None or fa.cofactor.degree:
                    raise StructuralViolation(f"generator {gens[i]} has no exact factorization in J^{k}")
                facts[i] = fa
            return facts[i]

        counts_cache: dict[tuple[int, int], object] = {}

        def counts(i, b):
            if (i, b) not in counts_cache:
                counts_cache[(i, b)] = triple_counts(fact(i), blocks[b])
            return counts_cache[(i, b)]

        methods = {CASE_Y3: 0, CASE_Y4: 0, BRUTE_FORCE: 0}
        identity_cache: dict[tuple, dict] = {}
        n_identity = n_identity_bad = n_deduction = 0
        constructive_failures = disagreements = y5_hits = 0
        listed = []
        for grp in sorted(groups, key=lambda q: (q.f_indices[0], q.g_index)):
            point = DivergencePoint(grp.z, gens[grp.f_indices[0]], gens[grp.g_index])
            case = constructive_case(grp.z, d, order) if d is not None else None
            if any(grp.z == b.y5 for b in blocks):
                y5_hits += len(grp.f_indices)
                findings.append(f"k={k}: divergence at y5 vertex {grp.z}")
            report = None
            if case is not None:
                block, tag = case
                b = blocks.index(block)
                methods[tag] += len(grp.f_indices)
                try:
                    report = constructive_witness(fact(grp.f_indices[0]), fact(grp.g_index), point, g, d, order)
                except StructuralViolation as exc:
                    constructive_failures += 1
                    findings.append(f"k={k}: constructive witness failed for g={point.g}, z={grp.z}: {exc}")
                brute = witness_bruteforce(point, J, k, order)
                if brute is None or report is None or grp.w is None:
                    disagreements += 1
                    findings.append(f"k={k}: constructive/brute-force disagreement at g={point.g}, z={grp.z}")
                gc = counts(grp.g_index, b)
                pos = block.position(grp.z)
                equal_at = range(1, pos)
                for fi in grp.f_indices:
                    fc = counts(fi, b)
                    key = (fc.as_tuple(), gc.as_tuple(), pos)
                    if key not in identity_cache:
                        identity_cache[key] = count_identities_check(fc, gc, equal_at, pos)
                    res = identity_cache[key]
                    for name, entry in res.items():
                        if entry["applicable"]:
                            n_identity += 1
                            if name == "f9":
                                n_deduction += 1
                            if not entry["holds"]:
                                n_identity_bad += 1
                                findings.append(f"k={k}: identity {name} fails for f={gens[fi]}, g={point.g}")
            else:
                methods[BRUTE_FORCE] += len(grp.f_indices)
            if len(listed) < witness_limit and grp.w is not None:
                if report is None:
                    report = witness_bruteforce(point, J, k, order)
                listed.append(report.to_json(variables))
        clock[f"witness_{k}"] = time.perf_counter() - t0

        sums_ok = all(degree_sums(I, b) <= {3 * k} for b in blocks)
        if not sums_ok:
            findings.append(f"k={k}: degree sum over a 5-cycle differs from {3 * k}")
        entry = {
            "k": k,
            "generators": len(gens),
            "divergent_pairs": sum(len(q.f_indices) for q in groups),
            "wp": {"ok": ce is None},
            "methods": methods,
            "constructive_failures": constructive_failures,
            "disagreements": disagreements,
            "identity_checks": n_identity,
            "deduction_checks": n_deduction,
            "identity_violations": n_identity_bad,
            "y5_divergences": y5_hits,
            "degree_sum_ok": sums_ok,
            "linear_quotients": has_linear_quotients(gens) if ce is None and len(gens) <= LINEAR_QUOTIENT_LIMIT
            else None,
            "witnesses": listed,
        }
        if ce is not None:
            entry["wp"]["counterexample"] = {"f": ce.f.format(variables), "g": ce.g.format(variables), "z": ce.z}
        powers.append(entry)
    out = {
        "graph": {"vertices": len(g.vertices), "edges": len(g.edges)},
        "order": list(variables),
        "decomposition": d.to_json() if d is not None else None,
        "five_triple_violations": len(triple_issues),
        "powers": powers,
        "findings": findings,
    }
    if timings:
        out["timings"] = {k: round(v, 6) for k, v in clock.items()}
    return out


def _header(cfg: RunConfig) -> dict:
    return {"schema": SCHEMA, "version": __version__, "command": cfg.command}


def _prepare(cfg: RunConfig) -> tuple[Graph, Decomposition | None, VariableOrder]:
    g = read_graph(cfg.graph_path)
    if cfg.require_cactus and not is_cactus(g):
        raise StructuralViolation("input graph is not a cactus")
    d = None
    if cfg.decomposition_path:
        d = read_decomposition(cfg.decomposition_path)
        ok, problems = verify_decomposition(g, d)
        if not ok:
            raise StructuralViolation("invalid decomposition: " + "; ".join(problems))
    elif is_cactus(g):
        d = find_decomposition(g)
    if cfg.order_path:
        order = read_order(cfg.order_path)
        if sorted(order.variables) != sorted(g.vertices):
            raise InputError("order file must list every vertex exactly once")
    elif d is not None:
        order = variable_order(g, d)
    else:
        raise StructuralViolation("no decomposition found; pass --order FILE to choose a variable order")
    return g, d, order


def run_check(cfg: RunConfig) -> tuple[dict, int]:
    """Graph -> decomposition -> order -> J(G)^k -> WP check, for each k.

    Exit codes: 0 all ok, 1 a counterexample or another finding, 2 input or
    structural error.
    """
    report = _header(cfg)
    report["input"] = {"graph": cfg.graph_path, "decomposition": cfg.decomposition_path,
                       "order": cfg.order_path, "k": list(cfg.ks)}
    try:
        g, d, order = _prepare(cfg)
        result = check_instance(g, d, order, cfg.ks, witness_limit=cfg.witness_limit, timings=cfg.timings)
    except CoverpolyError as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        return report, EXIT_ERROR
    report["result"] = result
    ok = all(p["wp"]["ok"] for p in result["powers"]) and not result["findings"]
    report["ok"] = ok
    return report, EXIT_OK if ok else EXIT_FOUND


def fuzz_campaign(cfg: RunConfig) -> tuple[dict, int]:
    """Check ``cfg.instances`` generated graphs (plus any fixture instances).

    Findings never abort the run; with ``strict`` any finding makes the
    exit code 1.
    """
    report = _header(cfg)
    report["input"] = {"seed": cfg.seed, "instances": cfg.instances, "k": list(cfg.ks),
                       "limits": list(cfg.limits), "max_vertices": cfg.max_vertices}
    rng = random.Random(cfg.seed)
    jobs = []
    for i in range(cfg.instances):
        s = rng.getrandbits(32)
        jobs.append((f"seed:{s}", lambda s=s: random_decomposed_graph(s, cfg.limits, cfg.max_vertices)))
    for gpath, dpath in cfg.extra_instances:
        jobs.append((f"file:{gpath}", lambda gp=gpath, dp=dpath: (read_graph(gp), read_decomposition(dp))))

    instances = []
    summary = {"instances": 0, "wp_failures": 0, "constructive_pairs": 0, "constructive_failures": 0,
               "disagreements": 0, "identity_checks": 0, "identity_violations": 0,
               "five_triple_violations": 0, "y5_divergences": 0, "invalid_decompositions": 0,
               "errors": 0, "findings": 0}
    for name, make in jobs:
        entry: dict = {"instance": name}
        try:
            g, d = make()
            entry["graph"] = {"vertices": len(g.vertices), "edges": len(g.edges)}
            ok_d, problems = verify_decomposition(g, d)
            if not is_cactus(g):
                problems = ["graph is not a cactus"] + problems
                ok_d = False
            if not ok_d:
                summary["invalid_decompositions"] += 1
                entry["findings"] = [f"invalid decomposition: {p}" for p in problems]
            else:
                res = check_instance(g, d, variable_order(g, d), cfg.ks, witness_limit=0, timings=cfg.timings)
                res.pop("order")
                entry.update(res)
                for p in res["powers"]:
                    summary["wp_failures"] += not p["wp"]["ok"]
                    summary["constructive_pairs"] += p["methods"][CASE_Y3] + p["methods"][CASE_Y4]
                    for key in ("constructive_failures", "disagreements", "identity_checks",
                                "identity_violations", "y5_divergences"):
                        summary[key] += p[key]
                    p.pop("witnesses")
                summary["five_triple_violations"] += res["five_triple_violations"]
                entry["findings"] = res["findings"] + [f"k={p['k']}: not weakly polymatroidal"
                                                       for p in res["powers"] if not p["wp"]["ok"]]
        except CoverpolyError as exc:
            summary["errors"] += 1
            entry["findings"] = [f"{type(exc).__name__}: {exc}"]
        summary["instances"] += 1
        summary["findings"] += len(entry["findings"])
        instances.append(entry)
    report["summary"] = summary
    report["instances"] = instances
    code = EXIT_FOUND if cfg.strict and summary["findings"] else EXIT_OK
    return report, code
