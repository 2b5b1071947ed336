"""Command-line front end: ``coverpoly <command> ...``."""

from __future__ import annotations

import argparse
import sys

from coverpoly.errors import CoverpolyError, StructuralViolation
from coverpoly.graph import is_cactus, simple_cycles
from coverpoly.harness import (
    DEFAULT_K_CAP,
    EXIT_ERROR,
    EXIT_FOUND,
    EXIT_OK,
    SCHEMA,
    RunConfig,
    _prepare,
    fuzz_campaign,
    parse_k_range,
    run_check,
)
from coverpoly.ideal import cover_ideal, ideal_power, membership, minimal_vertex_covers
from coverpoly.io import dumps, read_graph
from coverpoly.monomial import Monomial
from coverpoly.structure import find_decomposition, variable_order
from coverpoly.wp import constructive_case, constructive_witness, first_divergence, witness_bruteforce


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coverpoly",
                                description="Vertex cover ideals of cactus graphs and weak polymatroidality.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="edge-list file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    graph_cmd("check-cactus", "is the graph a cactus? (exit 0 yes, 1 no)")
    graph_cmd("decompose", "search for a clique/5-cycle/4-cycle-edge decomposition")
    graph_cmd("covers", "list the minimal vertex covers")
    sp = graph_cmd("ideal-power", "minimal generators of J(G)^k")
    sp.add_argument("--k", default="1")
    sp.add_argument("--decomposition", help="decomposition JSON (sets the generator order)")
    sp.add_argument("--order", default="auto", help="'auto' or a file listing vertices, greatest first")

    for name, help_ in (("wp-check", "check J(G)^k is weakly polymatroidal"),
                        ("witness", "exchange witness for one pair (f, g)")):
        sp = graph_cmd(name, help_)
        sp.add_argument("--k", default="1..2" if name == "wp-check" else "2")
        sp.add_argument("--k-cap", type=int, default=DEFAULT_K_CAP)
        sp.add_argument("--decomposition", help="decomposition JSON (searched when omitted)")
        sp.add_argument("--order", default="auto", help="'auto' or a file listing vertices, greatest first")
        sp.add_argument("--require-cactus", action="store_true")
        if name == "wp-check":
            sp.add_argument("--witness-limit", type=int, default=200)
            sp.add_argument("--timings", action="store_true", help="include wall-clock phase timings")
        else:
            sp.add_argument("--f", required=True, help="monomial, e.g. y1*y2*y3^2*y4*y5")
            sp.add_argument("--g", required=True)

    sp = sub.add_parser("fuzz", help="check randomly generated decomposed cactus graphs")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--n", type=int, default=25, help="number of generated instances")
    sp.add_argument("--k", default="1..2")
    sp.add_argument("--k-cap", type=int, default=DEFAULT_K_CAP)
    sp.add_argument("--limits", default="3,1,1", help="max cliques, 5-cycles, 4-cycle edges")
    sp.add_argument("--max-vertices", type=int, default=14)
    sp.add_argument("--instance", nargs=2, action="append", default=[], metavar=("GRAPH", "DECOMPOSITION"),
                    help="extra fixture instance (repeatable)")
    sp.add_argument("--strict", action="store_true", help="exit 1 when there are findings")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timings", action="store_true")
    return p


def _emit(obj, as_json: bool, human: str) -> None:
    sys.stdout.write(dumps(obj) if as_json else human + "\n")


def _summarize_check(report: dict) -> str:
    if "error" in report:
        return f"error: {report['error']}"
    res = report["result"]
    lines = ["order: " + " > ".join(res["order"])]
    for p in res["powers"]:
        status = "ok" if p["wp"]["ok"] else "COUNTEREXAMPLE {f} / {g} at {z}".format(**p["wp"]["counterexample"])
        m = p["methods"]
        lines.append(f"k={p['k']}: {p['generators']} generators, {p['divergent_pairs']} divergent pairs, "
                     f"WP {status}; constructive y3/y4: {m['constructive-case-y3']}/{m['constructive-case-y4']}, "
                     f"brute force: {m['brute-force']}, identity violations: {p['identity_violations']}")
    lines += [f"finding: {f}" for f in res["findings"]]
    return "\n".join(lines)


def _summarize_fuzz(report: dict) -> str:
    s = report["summary"]
    lines = [", ".join(f"{k}={v}" for k, v in s.items())]
    for inst in report["instances"]:
        for f in inst.get("findings", []):
            lines.append(f"{inst['instance']}: {f}")
    return "\n".join(lines)


def _config(args) -> RunConfig:
    cap = getattr(args, "k_cap", DEFAULT_K_CAP)
    return RunConfig(
        command=args.command,
        graph_path=getattr(args, "graph", None),
        decomposition_path=getattr(args, "decomposition", None),
        order_path=None if getattr(args, "order", "auto") == "auto" else args.order,
        ks=parse_k_range(args.k, cap) if hasattr(args, "k") else (1,),
        require_cactus=getattr(args, "require_cactus", False),
        witness_limit=getattr(args, "witness_limit", 200),
        timings=getattr(args, "timings", False),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except CoverpolyError as exc:
        if getattr(args, "json", False):
            sys.stdout.write(dumps({"schema": SCHEMA, "command": args.command,
                                    "error": f"{type(exc).__name__}: {exc}"}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "fuzz":
        cfg = _config(args)
        try:
            cfg.limits = tuple(int(x) for x in args.limits.split(","))
        except ValueError:
            raise CoverpolyError(f"bad --limits {args.limits!r}") from None
        if len(cfg.limits) != 3:
            raise CoverpolyError("--limits takes three numbers")
        cfg.seed, cfg.instances, cfg.max_vertices = args.seed, args.n, args.max_vertices
        cfg.extra_instances = [tuple(x) for x in args.instance]
        cfg.strict = args.strict
        report, code = fuzz_campaign(cfg)
        _emit(report, args.json, _summarize_fuzz(report))
        return code
    if cmd == "wp-check":
        report, code = run_check(_config(args))
        _emit(report, args.json, _summarize_check(report))
        return code

    g = read_graph(args.graph)
    head = {"schema": SCHEMA, "command": cmd}
    if cmd == "check-cactus":
        ok = is_cactus(g)
        cycles = simple_cycles(g) if ok else []
        _emit({**head, "cactus": ok, "cycles": [list(c) for c in cycles]}, args.json,
              "cactus" if ok else "not a cactus")
        return EXIT_OK if ok else EXIT_FOUND
    if cmd == "decompose":
        if not is_cactus(g):
            raise StructuralViolation("decompose needs a cactus graph")
        d = find_decomposition(g)
        if d is None:
            _emit({**head, "decomposition": None}, args.json, "no decomposition")
            return EXIT_FOUND
        _emit({**head, "decomposition": d.to_json()}, args.json, dumps(d.to_json()).rstrip())
        return EXIT_OK
    if cmd == "covers":
        covers = [sorted(c) for c in minimal_vertex_covers(g)]
        _emit({**head, "covers": covers}, args.json, "\n".join(" ".join(c) for c in covers))
        return EXIT_OK
    if cmd == "ideal-power":
        cfg = _config(args)
        if len(cfg.ks) != 1:
            raise CoverpolyError("ideal-power takes a single --k")
        order = None
        if cfg.decomposition_path or cfg.order_path:
            _, _, order = _prepare(cfg)
        elif is_cactus(g) and (d := find_decomposition(g)) is not None:
            order = variable_order(g, d)
        ideal = ideal_power(cover_ideal(g, order), cfg.ks[0])
        _emit({**head, "k": cfg.ks[0], **ideal.to_json()}, args.json, "\n".join(ideal.to_json()["generators"]))
        return EXIT_OK
    if cmd == "witness":
        return _witness(args, head)
    raise CoverpolyError(f"unknown command {cmd}")  # pragma: no cover


def _witness(args, head) -> int:
    cfg = _config(args)
    if len(cfg.ks) != 1:
        raise CoverpolyError("witness takes a single --k")
    k = cfg.ks[0]
    g, d, order = _prepare(cfg)
    J = cover_ideal(g, order)
    f, gm = Monomial.parse(args.f), Monomial.parse(args.g)
    f_fact, g_fact = membership(J, k, f), membership(J, k, gm)
    if f_fact is None or g_fact is None:
        raise CoverpolyError(f"f and g must both lie in J(G)^{k}")
    point = first_divergence(f, gm, order)
    out = {**head, "k": k, "f": f.format(order.variables), "g": gm.format(order.variables)}
    if point is None:
        out["divergence"] = None
        _emit(out, args.json, "no divergence point (f = g or g is larger at the first difference)")
        return EXIT_OK
    out["divergence"] = point.z
    reports = []
    case = constructive_case(point.z, d, order) if d is not None else None
    if case is not None:
        if f_fact.cofactor.degree or g_fact.cofactor.degree:
            raise CoverpolyError("constructive witness needs f and g to be minimal generators of J(G)^k")
        reports.append(constructive_witness(f_fact, g_fact, point, g, d, order))
    brute = witness_bruteforce(point, J, k, order)
    if brute is not None:
        reports.append(brute)
    out["witnesses"] = [r.to_json(order.variables) for r in reports]
    human = [f"z = {point.z}"] + [
        f"{r.method}: w = {r.w}, z*g/w = " + " * ".join(f"({m.format(order.variables)})"
                                                      for m in r.certificate.factors)
        + ("" if not r.certificate.cofactor.degree else f" * {r.certificate.cofactor.format(order.variables)}")
        for r in reports]
    if not reports:
        human.append("no witness: the exchange property fails for this pair")
    _emit(out, args.json, "\n".join(human))
    return EXIT_OK if brute is not None else EXIT_FOUND


if __name__ == "__main__":
    sys.exit(main())
