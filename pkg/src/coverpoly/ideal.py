"""Cover ideals, their powers, and membership with certificates."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from coverpoly.errors import BudgetExceeded, InputError
from coverpoly.graph import Graph
from coverpoly.monomial import Monomial, VariableOrder, product

MAX_COVER_VERTICES = 22
MAX_POWER_PRODUCTS = 10**7


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    ``generators`` is sorted lex-descending under ``order`` (label order when
    ``order`` is None). Use :meth:`from_generators` to build one from an
    arbitrary generating set.
    """

    generators: tuple[Monomial, ...]
    order: VariableOrder | None = None

    @classmethod
    def from_generators(cls, gens: Iterable[Monomial], order: VariableOrder | None = None,
                        *, assume_minimal: bool = False) -> MonomialIdeal:
        gens = set(gens) if assume_minimal else minimalize(gens)
        return cls(_sort(gens, order), order)

    @property
    def variables(self) -> tuple[str, ...]:
        if self.order is not None:
            return self.order.variables
        return tuple(sorted(set().union(*(m.support for m in self.generators))))

    def effective_order(self) -> VariableOrder:
        return self.order if self.order is not None else VariableOrder(self.variables)

    def with_order(self, order: VariableOrder) -> MonomialIdeal:
        return MonomialIdeal(_sort(self.generators, order), order)

    def matrix(self) -> np.ndarray:
        """Exponent matrix, one row per generator, columns in variable order."""
        variables = self.variables
        if not self.generators:
            return np.zeros((0, len(variables)), dtype=np.int32)
        return np.array([m.vector(variables) for m in self.generators], dtype=np.int32)

    def __contains__(self, m: Monomial) -> bool:
        return any(h.divides(m) for h in self.generators)

    def __len__(self):
        return len(self.generators)

    def to_json(self) -> dict:
        variables = self.variables
        return {"generators": [m.format(variables) for m in self.generators]}


@dataclass(frozen=True)
class Factorization:
    """``target = factors[0] * ... * factors[k-1] * cofactor``."""

    factors: tuple[Monomial, ...]
    cofactor: Monomial = Monomial()

    @property
    def target(self) -> Monomial:
        return product(self.factors) * self.cofactor

    @property
    def k(self) -> int:
        return len(self.factors)

    def to_json(self, variables: Sequence[str] | None = None) -> dict:
        return {
            "factors": [m.format(variables) for m in self.factors],
            "cofactor": self.cofactor.format(variables),
        }


def _sort(gens: Iterable[Monomial], order: VariableOrder | None) -> tuple[Monomial, ...]:
    gens = list(gens)
    if order is None:
        order = VariableOrder.by_label(set().union(*(m.support for m in gens)) if gens else ())
    return tuple(sorted(gens, key=order.lex_key))


def _minimal_rows(arr: np.ndarray) -> np.ndarray:
    """Rows of ``arr`` not divisible by another row (duplicates collapsed)."""
    if len(arr) == 0:
        return arr
    arr = np.unique(arr, axis=0)
    degs = arr.sum(axis=1)
    kept: list[np.ndarray] = []
    for d in np.unique(degs):
        group = arr[degs == d]
        if kept:
            low = np.concatenate(kept)
            keep = np.ones(len(group), dtype=bool)
            # chunk to bound the (group x low x n) temporary
            step = max(1, 4_000_000 // max(1, low.size))
            for s in range(0, len(group), step):
                chunk = group[s:s + step]
                keep[s:s + step] = ~(low[None, :, :] <= chunk[:, None, :]).all(axis=2).any(axis=1)
            group = group[keep]
        if len(group):
            kept.append(group)
    return np.concatenate(kept) if kept else arr[:0]


def minimalize(gens: Iterable[Monomial]) -> set[Monomial]:
    """Drop every monomial divisible by another one in ``gens``."""
    gens = set(gens)
    if not gens:
        return set()
    variables = sorted(set().union(*(m.support for m in gens)))
    arr = np.array([m.vector(variables) for m in gens], dtype=np.int32)
    return {Monomial.from_vector(row, variables) for row in _minimal_rows(arr)}


def _check_budget(g: Graph) -> None:
    if len(g.vertices) > MAX_COVER_VERTICES:
        raise BudgetExceeded(f"{len(g.vertices)} vertices exceeds the cover budget of {MAX_COVER_VERTICES}")


def maximal_independent_sets(g: Graph) -> list[frozenset[str]]:
    """Maximal independent sets via Bron-Kerbosch with pivoting on the complement."""
    _check_budget(g)
    verts = frozenset(g.vertices)
    non_adj = {v: verts - g.adjacency[v] - {v} for v in g.vertices}
    out: list[frozenset[str]] = []

    def expand(r: frozenset, p: set, x: set):
        if not p and not x:
            out.append(r)
            return
        pivot = max(sorted(p | x), key=lambda u: len(non_adj[u] & p))
        for v in sorted(p - non_adj[pivot]):
            expand(r | {v}, p & non_adj[v], x & non_adj[v])
            p.discard(v)
            x.add(v)

    expand(frozenset(), set(verts), set())
    return out


def minimal_vertex_covers(g: Graph) -> list[frozenset[str]]:
    """All inclusion-minimal vertex covers, sorted by their sorted labels.

    Complements of maximal independent sets.
    """
    verts = frozenset(g.vertices)
    covers = {verts - s for s in maximal_independent_sets(g)}
    return sorted(covers, key=lambda c: (len(c), sorted(c)))


def is_vertex_cover(g: Graph, vertices: Iterable[str]) -> bool:
    c = set(vertices)
    return all(e & c for e in g.edges)


def is_minimal_vertex_cover(g: Graph, vertices: Iterable[str]) -> bool:
    c = set(vertices)
    if not c <= set(g.vertices) or not is_vertex_cover(g, c):
        return False
    # each member needs a neighbour outside the cover
    return all(g.adjacency[v] - c for v in c)


def shrink_to_minimal_cover(g: Graph, vertices: Iterable[str], order: VariableOrder | None = None) -> frozenset[str]:
    """Remove redundant vertices, smallest variables first."""
    c = set(vertices)
    order = order or VariableOrder.by_label(g.vertices)
    for v in reversed(order.variables):
        if v in c and not (g.adjacency[v] - c):
            c.discard(v)
    return frozenset(c)


def cover_ideal(g: Graph, order: VariableOrder | None = None) -> MonomialIdeal:
    """The cover ideal J(G), generated by the minimal vertex covers."""
    gens = [Monomial.from_support(c) for c in minimal_vertex_covers(g)]
    if order is None:
        order = VariableOrder.by_label(g.vertices)
    return MonomialIdeal.from_generators(gens, order, assume_minimal=True)


def ideal_power(ideal: MonomialIdeal, k: int, budget: int = MAX_POWER_PRODUCTS) -> MonomialIdeal:
    """Minimal generators of ``ideal**k``.

    Raises BudgetExceeded when the number of k-multisets of generators is
    above ``budget``. Products are built one factor at a time and minimized
    after every step, which yields the same minimal set as minimizing all
    k-fold products at once.
    """
    if k < 1:
        raise InputError("power must be >= 1")
    n = len(ideal.generators)
    if comb(n + k - 1, k) > budget:
        raise BudgetExceeded(f"{comb(n + k - 1, k)} products for power {k} exceeds budget {budget}")
    if k == 1:
        return ideal
    base = ideal.matrix()
    cur = base
    for _ in range(k - 1):
        prods = (cur[:, None, :] + base[None, :, :]).reshape(-1, base.shape[1])
        cur = _minimal_rows(prods)
    variables = ideal.variables
    gens = [Monomial.from_vector(row, variables) for row in cur]
    return MonomialIdeal(_sort(gens, ideal.order), ideal.order)


def membership(base: MonomialIdeal, k: int, m: Monomial, *, find_all: bool = False,
               limit: int | None = None) -> Factorization | list[Factorization] | None:
    """Decide ``m in base**k`` by backtracking over base generators.

    Returns the first factorization in generator order (indices
    non-decreasing) together with the cofactor, or None. With ``find_all``
    returns every factorization (as a list, possibly empty), up to ``limit``.
    """
    if k < 1:
        raise InputError("power must be >= 1")
    variables = base.variables
    known = set(variables)
    outside = Monomial((v, e) for v, e in m.items() if v not in known)
    target = [m[v] for v in variables]
    gens = [list(h.vector(variables)) for h in base.generators]
    gdeg = [sum(h) for h in gens]
    min_deg = min(gdeg) if gens else 0
    found: list[Factorization] = []
    chosen: list[int] = []
    remaining = list(target)
    rem_deg = sum(remaining)

    def search(start: int, depth: int) -> bool:
        nonlocal rem_deg
        if depth == 0:
            cof = Monomial.from_vector(remaining, variables) * outside
            found.append(Factorization(tuple(base.generators[i] for i in chosen), cof))
            return not find_all or (limit is not None and len(found) >= limit)
        if rem_deg < depth * min_deg:
            return False
        for i in range(start, len(gens)):
            h = gens[i]
            if any(a > b for a, b in zip(h, remaining)):
                continue
            for j, a in enumerate(h):
                remaining[j] -= a
            rem_deg -= gdeg[i]
            chosen.append(i)
            stop = search(i, depth - 1)
            chosen.pop()
            rem_deg += gdeg[i]
            for j, a in enumerate(h):
                remaining[j] += a
            if stop:
                return True
        return False

    search(0, k)
    if find_all:
        return found
    return found[0] if found else None
