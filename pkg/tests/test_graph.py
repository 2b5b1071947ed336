import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from coverpoly.errors import StructuralViolation
from coverpoly.graph import (
    Graph,
    canonical_cycle,
    is_basic_five_cycle,
    is_cactus,
    reachable_partition,
    simple_cycles,
)
from coverpoly.errors import InputError
from coverpoly.structure import random_decomposed_graph

from conftest import C5_EDGES
from oracles import cactus_by_cycles, cycles_by_permutation

C5_WITH = lambda *extra: Graph.from_edges(C5_EDGES + list(extra))  # noqa: E731
LABELED = ("y1", "y2", "y3", "y4", "y5")


def test_graph_rejects_loops_and_unknown_vertices():
    with pytest.raises(InputError):
        Graph.from_edges([("a", "a")])
    with pytest.raises(InputError):
        Graph(("a",), frozenset({frozenset(("a", "b"))}))


def test_vertex_order_is_declaration_order():
    g = Graph.from_edges([("b", "a"), ("c", "b")], vertices=["z"])
    assert g.vertices == ("z", "b", "a", "c")


@pytest.mark.parametrize("edges, expected", [
    (C5_EDGES, True),
    ([("a", "b")], True),
    ([("a", "b"), ("b", "c"), ("a", "c"), ("b", "d"), ("c", "d")], False),  # two triangles on bc
])
def test_is_cactus_examples(edges, expected):
    assert is_cactus(Graph.from_edges(edges)) is expected


def test_shared_edge_lies_on_two_cycles():
    edges = [("a", "b"), ("b", "c"), ("a", "c"), ("b", "d"), ("c", "d")]
    cycles = cycles_by_permutation("abcd", edges)
    through_bc = [c for c in cycles if any({c[i], c[(i + 1) % len(c)]} == {"b", "c"} for i in range(len(c)))]
    assert sorted(through_bc) == [("a", "b", "c"), ("b", "c", "d")]


def test_degenerate_graphs():
    assert is_cactus(Graph(("a",), frozenset())) is True
    assert is_cactus(Graph((), frozenset())) is False


def test_simple_cycles_examples():
    assert simple_cycles(Graph.from_edges(C5_EDGES)) == [("y1", "y4", "y2", "y3", "y5")]
    assert simple_cycles(Graph.from_edges([("a", "b"), ("b", "c"), ("b", "d")])) == []
    k3_pendant = Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    assert simple_cycles(k3_pendant) == [("a", "b", "c")]


def test_canonical_form_starts_small_and_turns_to_smaller_neighbour():
    assert canonical_cycle(("y3", "y5", "y1", "y4", "y2")) == ("y1", "y4", "y2", "y3", "y5")
    assert canonical_cycle(("y1", "y5", "y3", "y2", "y4")) == ("y1", "y4", "y2", "y3", "y5")


@given(st.lists(st.sampled_from("abcdefg"), min_size=3, max_size=7, unique=True))
def test_canonical_form_is_idempotent(cycle):
    once = canonical_cycle(cycle)
    assert canonical_cycle(once) == once
    assert canonical_cycle(list(reversed(cycle))) == once


def _atlas():
    for g in nx.graph_atlas_g()[1:]:
        yield [f"v{v}" for v in g.nodes()], [(f"v{u}", f"v{v}") for u, v in g.edges()]


def test_cycles_and_cactus_match_oracle_on_all_graphs_up_to_7_vertices():
    checked = 0
    for verts, edges in _atlas():
        g = Graph.from_edges(edges, vertices=verts)
        assert set(simple_cycles(g)) == cycles_by_permutation(verts, edges)
        assert is_cactus(g) == cactus_by_cycles(verts, edges)
        checked += 1
    assert checked == 1252


@settings(max_examples=60, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda e: e[0] < e[1]), max_size=14))
def test_cactus_matches_oracle_on_random_8_vertex_graphs(pairs):
    verts = [f"v{i}" for i in range(8)]
    edges = [(f"v{a}", f"v{b}") for a, b in sorted(pairs)]
    g = Graph.from_edges(edges, vertices=verts)
    assert is_cactus(g) == cactus_by_cycles(verts, edges)


def test_basic_five_cycle():
    cyc = ("y1", "y4", "y2", "y3", "y5")
    assert is_basic_five_cycle(C5_WITH(), cyc)
    assert not is_basic_five_cycle(C5_WITH(("y1", "a"), ("y4", "b")), cyc)
    assert is_basic_five_cycle(C5_WITH(("y1", "a"), ("y2", "b")), cyc)
    with pytest.raises(StructuralViolation):
        is_basic_five_cycle(C5_WITH(), ("y1", "y2", "y3", "y4", "y5"))


def test_reachable_partition_examples():
    assert reachable_partition(C5_WITH(), LABELED) == (frozenset(), frozenset())
    assert reachable_partition(C5_WITH(("y1", "w")), LABELED) == (frozenset({"w"}), frozenset())
    tri = C5_WITH(("y2", "p"), ("y2", "q"), ("p", "q"))
    assert reachable_partition(tri, LABELED) == (frozenset(), frozenset({"p", "q"}))


def test_reachable_partition_rejects_a_bridge_between_y1_and_y2():
    g = C5_WITH(("y1", "a"), ("a", "y2"))
    with pytest.raises(StructuralViolation):
        reachable_partition(g, LABELED)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_reachable_partition_splits_fuzzed_cacti(seed):
    g, d = random_decomposed_graph(seed, (3, 2, 2), 16)
    assert is_cactus(g)
    for block in d.five_cycles:
        t1, t2 = reachable_partition(g, block)
        ends = {block.y1, block.y2}
        assert not (t1 & t2) and not (t1 & ends) and not (t2 & ends)
        assert t1 | t2 | ends == set(g.vertices) - {block.y3, block.y4, block.y5}
