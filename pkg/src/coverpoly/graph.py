"""Labeled simple graphs: blocks, cycles, cactus recognition, basic 5-cycles.

Vertex labels are opaque strings. Whenever a tie has to be broken the
lexicographic order of labels is used, so every function here is
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from coverpoly.errors import BudgetExceeded, InputError, StructuralViolation

CYCLE_LIMIT = 100_000


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on string labels.

    ``vertices`` keeps declaration order; ``edges`` is a set of 2-element
    frozensets.
    """

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        known = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise InputError(f"not a simple edge: {sorted(e)}")
            if not e <= known:
                raise InputError(f"edge {sorted(e)} uses an undeclared vertex")

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[str]], vertices: Iterable[str] = ()) -> Graph:
        """Build a graph from endpoint pairs; extra ``vertices`` may be isolated.

        Vertex order is: explicit ``vertices`` first, then endpoints in order
        of first appearance. Repeated edges are merged; loops are rejected.
        """
        order: dict[str, None] = dict.fromkeys(vertices)
        es = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at vertex {u!r}")
            order.setdefault(u)
            order.setdefault(v)
            es.add(frozenset((u, v)))
        return cls(tuple(order), frozenset(es))

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adjacency[v]

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency.get(u, ())

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def induced(self, subset: Iterable[str]) -> Graph:
        keep = set(subset)
        verts = tuple(v for v in self.vertices if v in keep)
        return Graph(verts, frozenset(e for e in self.edges if e <= keep))

    def components(self) -> list[list[str]]:
        """Connected components, each sorted, ordered by smallest label."""
        seen: set[str] = set()
        comps = []
        for s in sorted(self.vertices):
            if s in seen:
                continue
            comp = _reach(self.adjacency, s, seen)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and len(self.components()) == 1


def _reach(adj, start, seen, blocked=frozenset()):
    """BFS from ``start`` avoiding ``blocked``; marks visits in ``seen``."""
    seen.add(start)
    out = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if v not in seen and v not in blocked:
                seen.add(v)
                out.append(v)
                queue.append(v)
    return out


def biconnected_blocks(g: Graph) -> list[frozenset[frozenset[str]]]:
    """Edge sets of the biconnected blocks of ``g`` (bridges are blocks too).

    Iterative Hopcroft-Tarjan with an edge stack. Blocks are returned sorted
    by their sorted edge lists.
    """
    adj = {v: sorted(g.adjacency[v]) for v in g.vertices}
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    blocks = []
    counter = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[str, str]] = []
        stack = [(root, None, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for v in it:
                if v == parent:
                    continue
                if v not in disc:
                    edge_stack.append((u, v))
                    disc[v] = low[v] = counter
                    counter += 1
                    stack.append((v, u, iter(adj[v])))
                    advanced = True
                    break
                if disc[v] < disc[u]:
                    edge_stack.append((u, v))
                    low[u] = min(low[u], disc[v])
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[u])
                if low[u] >= disc[parent]:
                    block = set()
                    while True:
                        a, b = edge_stack.pop()
                        block.add(frozenset((a, b)))
                        if (a, b) == (parent, u):
                            break
                    blocks.append(frozenset(block))
    return sorted(blocks, key=lambda b: sorted(tuple(sorted(e)) for e in b))


def canonical_cycle(cycle: Sequence[str]) -> tuple[str, ...]:
    """Rotate/reflect a cycle to start at its smallest label and go toward
    the smaller of that vertex's two cycle neighbours."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[:0:-1]
    return tuple(c)


def simple_cycles(g: Graph, limit: int = CYCLE_LIMIT) -> list[tuple[str, ...]]:
    """All simple cycles of ``g`` in canonical form, sorted.

    Enumeration runs inside each biconnected block; a cactus therefore costs
    linear time. Raises BudgetExceeded past ``limit`` cycles.
    """
    found: list[tuple[str, ...]] = []
    for block in biconnected_blocks(g):
        if len(block) < 3:
            continue
        adj: dict[str, list[str]] = {}
        for e in block:
            u, v = tuple(e)
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        for nb in adj.values():
            nb.sort()
        for s in sorted(adj):
            # paths from s through labels > s; closing edge back to s
            path = [s]
            on_path = {s}
            iters = [iter(adj[s])]
            while iters:
                advanced = False
                for v in iters[-1]:
                    if v == s:
                        if len(path) >= 3 and path[1] < path[-1]:
                            found.append(tuple(path))
                            if len(found) > limit:
                                raise BudgetExceeded(f"more than {limit} simple cycles")
                    elif v > s and v not in on_path:
                        path.append(v)
                        on_path.add(v)
                        iters.append(iter(adj[v]))
                        advanced = True
                        break
                if not advanced:
                    iters.pop()
                    on_path.discard(path.pop())
    return sorted(found, key=lambda c: (len(c), c))


def is_cactus(g: Graph) -> bool:
    """Connected, and every block is a single edge or a single cycle."""
    if not g.is_connected():
        return False
    for block in biconnected_blocks(g):
        verts = set().union(*block)
        if len(block) > 1 and len(block) != len(verts):
            return False
    return True


def _check_cycle(g: Graph, cycle: Sequence[str], length: int | None = None) -> None:
    if length is not None and len(cycle) != length:
        raise StructuralViolation(f"expected a {length}-cycle, got {len(cycle)} vertices")
    if len(set(cycle)) != len(cycle) or len(cycle) < 3:
        raise StructuralViolation(f"not a simple cycle: {list(cycle)}")
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if a not in g.adjacency or not g.has_edge(a, b):
            raise StructuralViolation(f"{a}-{b} is not an edge of the graph")


def is_basic_five_cycle(g: Graph, cycle: Sequence[str]) -> bool:
    """True iff no two adjacent vertices of the 5-cycle have degree >= 3."""
    _check_cycle(g, cycle, 5)
    big = [v for v in cycle if g.degree(v) >= 3]
    return not any(g.has_edge(u, v) for i, u in enumerate(big) for v in big[i + 1:])


def five_cycle_order(labeled: Sequence[str]) -> tuple[str, str, str, str, str]:
    """Traversal order y1, y4, y2, y3, y5 of a labeled 5-cycle (y1, ..., y5)."""
    y1, y2, y3, y4, y5 = labeled
    return (y1, y4, y2, y3, y5)


def reachable_partition(g: Graph, labeled: Sequence[str]) -> tuple[frozenset[str], frozenset[str]]:
    """Split ``V(G) - {y3, y4, y5}`` around a labeled basic 5-cycle.

    Returns ``(T1, T2)`` where ``Ta`` holds the vertices other than y1, y2
    connected to ``ya`` once y3, y4, y5 are deleted. Raises
    StructuralViolation unless T1, {y1, y2}, T2 are pairwise disjoint and
    exhaust the remaining vertices.
    """
    _check_cycle(g, five_cycle_order(labeled), 5)
    y1, y2, y3, y4, y5 = labeled
    removed = {y3, y4, y5}
    rest = [v for v in g.vertices if v not in removed]
    adj = {v: g.adjacency[v] - removed for v in rest}
    r1 = set(_reach(adj, y1, set()))
    r2 = set(_reach(adj, y2, set()))
    if y2 in r1:
        raise StructuralViolation(f"{y1} and {y2} stay connected after removing {sorted(removed)}")
    t1 = frozenset(r1 - {y1, y2})
    t2 = frozenset(r2 - {y1, y2})
    if t1 & t2:
        raise StructuralViolation(f"T1 and T2 overlap in {sorted(t1 & t2)}")
    missing = set(rest) - t1 - t2 - {y1, y2}
    if missing:
        raise StructuralViolation(f"vertices unreachable from {y1} or {y2}: {sorted(missing)}")
    return t1, t2
