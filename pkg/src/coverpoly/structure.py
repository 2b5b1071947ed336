"""Block decompositions of Cohen-Macaulay cactus candidates.

A decomposition partitions the vertices into cliques of size 2 or 3, basic
5-cycles, and edges of 4-cycles whose endpoints have degree two. It fixes
the variable order used for the weakly polymatroidal check: clique vertices
first, then the 5-cycles as y1 > y2 > y3 > y4 > y5, then the 4-cycle edges.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from coverpoly.errors import BudgetExceeded, InputError, StructuralViolation
from coverpoly.graph import Graph, _check_cycle, five_cycle_order, is_basic_five_cycle, simple_cycles
from coverpoly.monomial import VariableOrder

MAX_DECOMPOSITION_VERTICES = 24


class FiveCycle(NamedTuple):
    """A labeled 5-cycle; traversal order is y1, y4, y2, y3, y5."""

    y1: str
    y2: str
    y3: str
    y4: str
    y5: str

    def position(self, v: str) -> int:
        """1-based label index of ``v`` in the block."""
        return self.index(v) + 1

    def traversal(self) -> tuple[str, ...]:
        return five_cycle_order(self)


@dataclass(frozen=True)
class Clique:
    vertices: tuple[str, ...]
    free: tuple[str, ...] = ()


@dataclass(frozen=True)
class Decomposition:
    cliques: tuple[Clique, ...] = ()
    five_cycles: tuple[FiveCycle, ...] = ()
    four_cycle_edges: tuple[tuple[str, str], ...] = ()

    def blocks(self) -> list[tuple[str, ...]]:
        return ([c.vertices for c in self.cliques] + [tuple(fc) for fc in self.five_cycles]
                + [tuple(e) for e in self.four_cycle_edges])

    def to_json(self) -> dict:
        return {
            "cliques": [{"vertices": list(c.vertices), "free": list(c.free)} for c in self.cliques],
            "five_cycles": [fc._asdict() for fc in self.five_cycles],
            "four_cycle_edges": [list(e) for e in self.four_cycle_edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> Decomposition:
        try:
            cliques = tuple(Clique(tuple(c["vertices"]), tuple(c.get("free", ())))
                            for c in data.get("cliques", ()))
            fives = tuple(FiveCycle(*(fc[f"y{a}"] for a in range(1, 6)))
                          for fc in data.get("five_cycles", ()))
            fours = []
            for e in data.get("four_cycle_edges", ()):
                if len(e) != 2:
                    raise InputError(f"four-cycle edge must have two endpoints: {e}")
                fours.append((e[0], e[1]))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed decomposition JSON: {exc}") from exc
        return cls(cliques, fives, tuple(fours))


def free_vertices(g: Graph, clique: Sequence[str]) -> tuple[str, ...]:
    """Vertices of ``clique`` whose whole neighbourhood lies inside it."""
    inside = set(clique)
    return tuple(sorted(v for v in clique if g.adjacency[v] <= inside))


def on_four_cycle(g: Graph, z1: str, z2: str) -> bool:
    for a in g.adjacency[z1] - {z2}:
        for b in g.adjacency[z2] - {z1}:
            if a != b and g.has_edge(a, b):
                return True
    return False


def verify_decomposition(g: Graph, d: Decomposition) -> tuple[bool, list[str]]:
    """Check every decomposition clause against ``g``; returns (ok, violations)."""
    problems: list[str] = []
    verts = set(g.vertices)
    listed = [v for b in d.blocks() for v in b]
    unknown = sorted(set(listed) - verts)
    if unknown:
        problems.append(f"unknown vertices {unknown}")
    dup = sorted(v for v, n in _counts(listed).items() if n > 1)
    if dup:
        problems.append(f"blocks overlap in {dup}")
    if set(listed) != verts:
        problems.append(f"union ≠ V(G): missing {sorted(verts - set(listed))}")
    if unknown:
        return False, problems

    for i, c in enumerate(d.cliques, 1):
        if len(c.vertices) not in (2, 3):
            problems.append(f"clique {i} has size {len(c.vertices)}")
        for u, v in itertools.combinations(c.vertices, 2):
            if not g.has_edge(u, v):
                problems.append(f"clique {i}: {u}-{v} is not an edge")
        if tuple(sorted(c.free)) != free_vertices(g, c.vertices):
            problems.append(f"clique {i}: free vertices {sorted(c.free)} ≠ {list(free_vertices(g, c.vertices))}")

    for i, fc in enumerate(d.five_cycles, 1):
        try:
            _check_cycle(g, fc.traversal(), 5)
        except StructuralViolation as exc:
            problems.append(f"five-cycle {i}: {exc}")
            continue
        chords = [(u, v) for u, v in itertools.combinations(fc, 2)
                  if g.has_edge(u, v) and not _adjacent_in(fc.traversal(), u, v)]
        if chords:
            problems.append(f"five-cycle {i}: chords {chords}")
        if not is_basic_five_cycle(g, fc.traversal()):
            problems.append(f"five-cycle {i} is not basic")
        for v in (fc.y3, fc.y4, fc.y5):
            if g.degree(v) != 2:
                problems.append(f"five-cycle {i}: deg({v}) = {g.degree(v)} ≠ 2")

    for i, (z1, z2) in enumerate(d.four_cycle_edges, 1):
        if not g.has_edge(z1, z2):
            problems.append(f"four-cycle edge {i}: {z1}-{z2} is not an edge")
            continue
        for v in (z1, z2):
            if g.degree(v) != 2:
                problems.append(f"four-cycle edge {i}: deg({v}) = {g.degree(v)} ≠ 2")
        if not on_four_cycle(g, z1, z2):
            problems.append(f"four-cycle edge {i}: {z1}-{z2} lies on no 4-cycle")
    return not problems, problems


def _counts(items):
    out: dict = {}
    for x in items:
        out[x] = out.get(x, 0) + 1
    return out


def _adjacent_in(cycle: Sequence[str], u: str, v: str) -> bool:
    i, j = cycle.index(u), cycle.index(v)
    return (i - j) % len(cycle) in (1, len(cycle) - 1)


def label_five_cycle(g: Graph, cycle: Sequence[str]) -> FiveCycle:
    """Assign y1..y5 to a basic 5-cycle.

    The traversal must read y1, y4, y2, y3, y5 with y3, y4, y5 of degree two;
    among the valid assignments the one with the smallest (y1, y2) labels
    wins.
    """
    if not is_basic_five_cycle(g, cycle):
        raise StructuralViolation(f"{list(cycle)} is not a basic 5-cycle")
    c = list(cycle)
    best = None
    for seq in [c[i:] + c[:i] for i in range(5)] + [(c[::-1])[i:] + (c[::-1])[:i] for i in range(5)]:
        y1, y4, y2, y3, y5 = seq
        if all(g.degree(v) == 2 for v in (y3, y4, y5)):
            cand = FiveCycle(y1, y2, y3, y4, y5)
            if best is None or (cand.y1, cand.y2) < (best.y1, best.y2):
                best = cand
    if best is None:
        raise StructuralViolation(f"no labeling of {c} puts three consecutive degree-2 vertices at y3, y4, y5")
    return best


def variable_order(g: Graph, d: Decomposition) -> VariableOrder:
    """Clique vertices (non-free before free), then y-blocks, then z-pairs."""
    seq: list[str] = []
    for c in d.cliques:
        free = set(c.free)
        seq += sorted(v for v in c.vertices if v not in free) + sorted(v for v in c.vertices if v in free)
    for fc in d.five_cycles:
        seq += list(fc)
    for z1, z2 in d.four_cycle_edges:
        seq += [z1, z2]
    if sorted(seq) != sorted(g.vertices):
        raise StructuralViolation("decomposition does not partition the vertex set")
    return VariableOrder(seq)


def _candidates(g: Graph):
    fives = []
    for c in simple_cycles(g):
        if len(c) != 5:
            continue
        if any(g.has_edge(u, v) and not _adjacent_in(c, u, v) for u, v in itertools.combinations(c, 2)):
            continue
        if not is_basic_five_cycle(g, c):
            continue
        try:
            fives.append(label_five_cycle(g, c))
        except StructuralViolation:
            pass
    fours = sorted((z1, z2) for z1, z2 in g.sorted_edges()
                   if g.degree(z1) == 2 and g.degree(z2) == 2 and on_four_cycle(g, z1, z2))
    cliques = [tuple(e) for e in g.sorted_edges()]
    for a, b, c in itertools.combinations(sorted(g.vertices), 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            cliques.append((a, b, c))
    cliques.sort()
    return sorted(fives), fours, cliques


def find_decomposition(g: Graph) -> Decomposition | None:
    """The first decomposition found by exact-cover backtracking.

    The smallest uncovered label is covered next, trying 5-cycles, then
    4-cycle edges, then cliques, each kind in lexicographic order.
    """
    if len(g.vertices) > MAX_DECOMPOSITION_VERTICES:
        raise BudgetExceeded(f"{len(g.vertices)} vertices exceeds the decomposition budget of "
                             f"{MAX_DECOMPOSITION_VERTICES}")
    fives, fours, cliques = _candidates(g)
    options = [("5", fc, frozenset(fc)) for fc in fives] + \
              [("4", e, frozenset(e)) for e in fours] + \
              [("k", c, frozenset(c)) for c in cliques]
    by_vertex: dict[str, list] = {v: [] for v in g.vertices}
    for opt in options:
        for v in opt[2]:
            by_vertex[v].append(opt)
    uncovered = sorted(g.vertices)
    chosen: list = []

    def search(covered: frozenset) -> bool:
        v = next((u for u in uncovered if u not in covered), None)
        if v is None:
            return True
        for opt in by_vertex[v]:
            if opt[2] & covered:
                continue
            chosen.append(opt)
            if search(covered | opt[2]):
                return True
            chosen.pop()
        return False

    if not g.vertices or not search(frozenset()):
        return None
    return Decomposition(
        cliques=tuple(Clique(c, free_vertices(g, c)) for kind, c, _ in chosen if kind == "k"),
        five_cycles=tuple(fc for kind, fc, _ in chosen if kind == "5"),
        four_cycle_edges=tuple(e for kind, e, _ in chosen if kind == "4"),
    )


@dataclass
class _Builder:
    edges: list = field(default_factory=list)
    names: list = field(default_factory=list)
    ports: list = field(default_factory=list)

    def new_vertex(self) -> str:
        v = f"v{len(self.names):02d}"
        self.names.append(v)
        return v


def random_decomposed_graph(seed, limits: Sequence[int] = (3, 1, 1),
                            max_vertices: int | None = None) -> tuple[Graph, Decomposition]:
    """A random cactus together with a valid decomposition.

    ``limits`` bounds the number of (cliques, basic 5-cycles, 4-cycle edges).
    Blocks hang off each other along a random tree: every new clique or
    5-cycle is joined by one edge to a port of an earlier block. Clique ports
    exclude at least one vertex, so every clique keeps a free vertex; 5-cycle
    ports are y1 and y2 only. A 4-cycle edge z1-z2 decorates one of those
    joining edges a-b as the path a-z1-z2-b.
    """
    max_cliques, max_fives, max_fours = limits
    if min(limits) < 0 or max_cliques + max_fives == 0:
        raise ValueError("limits must allow at least one clique or 5-cycle")
    rng = random.Random(seed)
    n_cliques = rng.randint(0, max_cliques)
    n_fives = rng.randint(0, max_fives)
    if n_cliques + n_fives == 0:
        if max_cliques and (not max_fives or rng.random() < 0.5):
            n_cliques = 1
        else:
            n_fives = 1
    n_fours = rng.randint(0, min(max_fours, n_cliques + n_fives - 1))
    kinds = ["k"] * n_cliques + ["5"] * n_fives
    rng.shuffle(kinds)
    link_kinds = ["4"] * n_fours + ["e"] * (len(kinds) - 1 - n_fours)
    rng.shuffle(link_kinds)

    b = _Builder()
    cliques: list[tuple[str, ...]] = []
    fives: list[FiveCycle] = []
    fours: list[tuple[str, str]] = []
    used = 0
    for idx, kind in enumerate(kinds):
        link = link_kinds[idx - 1] if idx and b.ports else None
        size = rng.choice((2, 3)) if kind == "k" else 5
        if max_vertices is not None:
            while used + size + (2 if link == "4" else 0) > max_vertices:
                if link == "4":
                    link = "e"
                elif size == 3:
                    size = 2
                else:
                    break
            if used + size > max_vertices:
                continue
        if kind == "k":
            vs = tuple(b.new_vertex() for _ in range(size))
            for u, v in itertools.combinations(vs, 2):
                b.edges.append((u, v))
            cliques.append(vs)
            new_ports = list(vs[:rng.randint(1, size - 1)])
        else:
            vs = tuple(b.new_vertex() for _ in range(5))
            fc = FiveCycle(*vs)
            t = fc.traversal()
            for i in range(5):
                b.edges.append((t[i], t[(i + 1) % 5]))
            fives.append(fc)
            new_ports = [fc.y1, fc.y2]
        used += len(vs)
        if b.ports:
            a = rng.choice(b.ports)
            c = rng.choice(new_ports)
            b.edges.append((a, c))
            if link == "4":
                z1, z2 = b.new_vertex(), b.new_vertex()
                b.edges += [(a, z1), (z1, z2), (z2, c)]
                fours.append((z1, z2))
                used += 2
        b.ports += new_ports
    g = Graph.from_edges(b.edges, vertices=b.names)
    d = Decomposition(
        cliques=tuple(Clique(c, free_vertices(g, c)) for c in cliques),
        five_cycles=tuple(fives),
        four_cycle_edges=tuple(fours),
    )
    return g, d
