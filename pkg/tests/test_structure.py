import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from coverpoly.errors import StructuralViolation
from coverpoly.graph import Graph, is_cactus
from coverpoly.structure import (
    Clique,
    Decomposition,
    FiveCycle,
    find_decomposition,
    label_five_cycle,
    random_decomposed_graph,
    variable_order,
    verify_decomposition,
)

from conftest import C5_EDGES

EXAMPLE = Decomposition(five_cycles=(FiveCycle("y1", "y2", "y3", "y4", "y5"),))


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def has_valid_partition(g: Graph) -> bool:
    """Oracle: some set partition into valid blocks, each block checked alone."""
    def block_ok(b):
        if len(b) in (2, 3) and all(g.has_edge(u, v) for u, v in itertools.combinations(b, 2)):
            return True
        if len(b) == 2:
            z1, z2 = b
            return g.has_edge(z1, z2) and g.degree(z1) == g.degree(z2) == 2 and any(
                g.has_edge(a, c) for a in g.neighbors(z1) - {z2} for c in g.neighbors(z2) - {z1} if a != c)
        if len(b) == 5:
            for perm in itertools.permutations(b):
                y1, y4, y2, y3, y5 = perm
                cyc = [y1, y4, y2, y3, y5]
                ring = {frozenset((cyc[i], cyc[(i + 1) % 5])) for i in range(5)}
                inside = {e for e in g.edges if e <= set(b)}
                if inside == ring and all(g.degree(v) == 2 for v in (y3, y4, y5)):
                    return True
        return False
    return any(all(block_ok(b) for b in p) for p in set_partitions(sorted(g.vertices)))


def test_verify_examples():
    assert verify_decomposition(Graph.from_edges(C5_EDGES), EXAMPLE) == (True, [])
    k3 = Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c")])
    assert verify_decomposition(k3, Decomposition(cliques=(Clique(("a", "b", "c"), ("a", "b", "c")),)))[0]
    ok, problems = verify_decomposition(Graph.from_edges(C5_EDGES), Decomposition(cliques=(Clique(("y1", "y2")),)))
    assert not ok
    assert any(p.startswith("union ≠ V(G)") for p in problems)


def test_verify_flags_wrong_free_list_and_bad_degrees():
    g = Graph.from_edges(C5_EDGES + [("y3", "w"), ("w", "x")])
    d = Decomposition(cliques=(Clique(("w", "x"), ()),), five_cycles=EXAMPLE.five_cycles)
    ok, problems = verify_decomposition(g, d)
    assert not ok
    assert any("free vertices" in p for p in problems)
    assert any("deg(y3) = 3" in p for p in problems)


def test_find_decomposition_examples():
    assert find_decomposition(Graph.from_edges(C5_EDGES)) == EXAMPLE
    d = find_decomposition(Graph.from_edges([("a", "b")]))
    assert d == Decomposition(cliques=(Clique(("a", "b"), ("a", "b")),))
    p3 = Graph.from_edges([("a", "b"), ("b", "c")])
    assert find_decomposition(p3) is None
    assert not has_valid_partition(p3)


def test_find_decomposition_agrees_with_partition_oracle_on_small_cacti():
    seen = 0
    for nxg in nx.graph_atlas_g()[1:]:
        if nxg.number_of_nodes() > 7:
            continue
        g = Graph.from_edges([(f"v{u}", f"v{v}") for u, v in nxg.edges()],
                             vertices=[f"v{v}" for v in nxg.nodes()])
        if not is_cactus(g):
            continue
        d = find_decomposition(g)
        assert (d is not None) == has_valid_partition(g)
        if d is not None:
            assert verify_decomposition(g, d)[0]
        seen += 1
    assert seen > 100


def test_label_five_cycle_tie_break_matches_enumeration():
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
    ring = ["a", "b", "c", "d", "e"]
    options = []
    for seq in [ring[i:] + ring[:i] for i in range(5)] + [ring[::-1][i:] + ring[::-1][:i] for i in range(5)]:
        y1, y4, y2, y3, y5 = seq
        options.append((y1, y2, y3, y4, y5))
    assert len(options) == 10
    assert label_five_cycle(g, ring) == FiveCycle(*min(options, key=lambda t: (t[0], t[1])))
    assert label_five_cycle(g, ring) == FiveCycle("a", "c", "d", "b", "e")


def test_label_five_cycle_puts_whiskered_vertices_at_y1_y2():
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"), ("b", "u"), ("d", "w")])
    fc = label_five_cycle(g, ["a", "b", "c", "d", "e"])
    assert {fc.y1, fc.y2} == {"b", "d"}
    assert all(g.degree(v) == 2 for v in (fc.y3, fc.y4, fc.y5))
    adjacent = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"), ("a", "u"), ("b", "w")])
    with pytest.raises(StructuralViolation):
        label_five_cycle(adjacent, ["a", "b", "c", "d", "e"])


def test_variable_order_examples():
    assert variable_order(Graph.from_edges(C5_EDGES), EXAMPLE).variables == ("y1", "y2", "y3", "y4", "y5")
    k3 = Graph.from_edges([("c", "a"), ("b", "c"), ("a", "b")])
    d = find_decomposition(k3)
    assert variable_order(k3, d).variables == ("a", "b", "c")
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("c", "y1")] + C5_EDGES)
    d = Decomposition(cliques=(Clique(("a", "b", "c"), ("a", "b")),), five_cycles=EXAMPLE.five_cycles)
    assert verify_decomposition(g, d)[0]
    assert variable_order(g, d).variables == ("c", "a", "b", "y1", "y2", "y3", "y4", "y5")


def test_generator_examples():
    g, d = random_decomposed_graph(0, (1, 0, 0))
    assert len(d.cliques) == 1 and not d.five_cycles and len(g.vertices) in (2, 3)
    g, d = random_decomposed_graph(1, (0, 1, 0))
    assert len(g.vertices) == 5 and len(g.edges) == 5 and len(d.five_cycles) == 1


def test_generator_is_deterministic():
    assert random_decomposed_graph(7, (4, 2, 2), 14) == random_decomposed_graph(7, (4, 2, 2), 14)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.tuples(st.integers(1, 4), st.integers(0, 2), st.integers(0, 2)))
def test_generated_graphs_are_decomposed_cacti(seed, limits):
    g, d = random_decomposed_graph(seed, limits, 18)
    assert len(g.vertices) <= 18
    assert is_cactus(g)
    assert verify_decomposition(g, d) == (True, [])
    order = variable_order(g, d)
    assert sorted(order.variables) == sorted(g.vertices)
    assert sorted(order.rank.values()) == list(range(len(g.vertices)))
    found = find_decomposition(g)
    assert found is not None and verify_decomposition(g, found)[0]
    for fc in found.five_cycles:
        assert all(g.degree(v) == 2 for v in (fc.y3, fc.y4, fc.y5))


def test_decomposition_json_round_trip():
    g, d = random_decomposed_graph(3, (3, 2, 2), 20)
    assert Decomposition.from_json(d.to_json()) == d
