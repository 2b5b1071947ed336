"""Weakly polymatroidal checks and exchange witnesses.

A monomial ideal ``I`` is weakly polymatroidal for a variable order when,
for any two minimal generators f, g whose exponents agree on every variable
above some z and with ``deg_z f > deg_z g``, there is a variable ``w < z``
with ``z*g/w`` in ``I``.

Two routes produce the exchange variable ``w``: a brute-force search over
every candidate ``w`` (:func:`witness_bruteforce`), and, for divergence at
the y3 or y4 vertex of a basic 5-cycle, the explicit swap construction of
:func:`constructive_witness`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from coverpoly.errors import StructuralViolation
from coverpoly.graph import Graph, reachable_partition
from coverpoly.ideal import (
    Factorization,
    MonomialIdeal,
    is_minimal_vertex_cover,
    is_vertex_cover,
    membership,
    shrink_to_minimal_cover,
)
from coverpoly.monomial import Monomial, VariableOrder
from coverpoly.structure import Decomposition, FiveCycle

TRIPLES = ("123", "125", "134", "245", "345")

CASE_Y3 = "constructive-case-y3"
CASE_Y4 = "constructive-case-y4"
BRUTE_FORCE = "brute-force"


@dataclass(frozen=True)
class DivergencePoint:
    z: str
    f: Monomial
    g: Monomial


@dataclass(frozen=True)
class WitnessReport:
    point: DivergencePoint
    w: str
    certificate: Factorization
    method: str

    @property
    def target(self) -> Monomial:
        return self.point.g.times_var(self.point.z) / Monomial({self.w: 1})

    def to_json(self, variables: Sequence[str] | None = None) -> dict:
        cert = self.certificate
        return {
            "f": self.point.f.format(variables),
            "g": self.point.g.format(variables),
            "z": self.point.z,
            "w": self.w,
            "method": self.method,
            "certificate": [m.format(variables) for m in cert.factors],
            "cofactor": cert.cofactor.format(variables),
        }


@dataclass(frozen=True)
class WPResult:
    ok: bool
    counterexample: DivergencePoint | None
    generators: int
    divergent_pairs: int

    def to_json(self, variables: Sequence[str] | None = None) -> dict:
        out = {"ok": self.ok, "generators": self.generators, "divergent_pairs": self.divergent_pairs}
        if self.counterexample is not None:
            ce = self.counterexample
            out["counterexample"] = {"f": ce.f.format(variables), "g": ce.g.format(variables), "z": ce.z}
        return out


@dataclass(frozen=True)
class DivergenceGroup:
    """All generators f that diverge from generator ``g_index`` at ``z``.

    ``w`` is the nearest variable below ``z`` with ``z*g/w`` in the ideal,
    or None when there is none.
    """

    g_index: int
    z: str
    f_indices: tuple[int, ...]
    w: str | None


def first_divergence(f: Monomial, g: Monomial, order: VariableOrder) -> DivergencePoint | None:
    """The first variable (greatest first) where f and g differ, if f wins there."""
    for v in order.variables:
        a, b = f[v], g[v]
        if a != b:
            return DivergencePoint(v, f, g) if a > b else None
    return None


def _member_rows(gens: np.ndarray, m: np.ndarray) -> bool:
    return bool((gens <= m).all(axis=1).any())


def divergence_groups(ideal: MonomialIdeal, order: VariableOrder | None = None) -> list[DivergenceGroup]:
    """Group every divergent ordered pair (f, g) of generators by (g, z).

    The exchange variable only depends on g and z, so each group is checked
    once. Groups come out sorted by (g_index, rank of z).
    """
    order = order or ideal.effective_order()
    ideal = ideal if ideal.order == order else ideal.with_order(order)
    A = ideal.matrix().astype(np.int64)
    n_gens, n = A.shape
    groups = []
    for j in range(n_gens):
        diff = A - A[j]
        nz = diff != 0
        has = nz.any(axis=1)
        first = nz.argmax(axis=1)
        wins = has & (diff[np.arange(n_gens), first] > 0)
        if not wins.any():
            continue
        for zi in np.unique(first[wins]):
            f_idx = tuple(int(i) for i in np.nonzero(wins & (first == zi))[0])
            found = None
            for wi in range(zi + 1, n):
                if A[j, wi] == 0:
                    continue
                cand = A[j].copy()
                cand[zi] += 1
                cand[wi] -= 1
                if _member_rows(A, cand):
                    found = order.variables[wi]
                    break
            groups.append(DivergenceGroup(j, order.variables[zi], f_idx, found))
    return groups


def first_failure(ideal: MonomialIdeal, groups: Iterable[DivergenceGroup]) -> DivergencePoint | None:
    """The failing pair that comes first in (f index, g index) order."""
    best = None
    for grp in groups:
        if grp.w is None:
            key = (grp.f_indices[0], grp.g_index)
            if best is None or key < best[0]:
                best = (key, grp.z)
    if best is None:
        return None
    (i, j), z = best
    return DivergencePoint(z, ideal.generators[i], ideal.generators[j])


def wp_check(ideal: MonomialIdeal, order: VariableOrder | None = None) -> WPResult:
    """Check the weakly polymatroidal property for ``ideal`` under ``order``.

    Every ordered pair of distinct minimal generators is examined; the
    result carries the first failing pair when the property does not hold.
    """
    order = order or ideal.effective_order()
    ideal = ideal if ideal.order == order else ideal.with_order(order)
    groups = divergence_groups(ideal, order)
    ce = first_failure(ideal, groups)
    return WPResult(ce is None, ce, len(ideal.generators), sum(len(g.f_indices) for g in groups))


def witness_bruteforce(point: DivergencePoint, base: MonomialIdeal, k: int, order: VariableOrder,
                       candidates: Iterable[str] | None = None) -> WitnessReport | None:
    """Try each ``w < z`` dividing g, nearest to z first, via membership in base**k."""
    allowed = None if candidates is None else set(candidates)
    zg = point.g.times_var(point.z)
    for w in order.below(point.z):
        if point.g[w] == 0 or (allowed is not None and w not in allowed):
            continue
        fact = membership(base, k, zg / Monomial({w: 1}))
        if fact is not None:
            return WitnessReport(point, w, fact, BRUTE_FORCE)
    return None


@dataclass(frozen=True)
class TripleCounts:
    """How many factors contain each of the five cover triples of a block."""

    block: FiveCycle
    counts: Mapping[str, int]
    k: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, triple: str) -> int:
        return self.counts[triple]

    def degree(self, position: int) -> int:
        """Exponent of y_position in the product, read off the counts."""
        return sum(n for t, n in self.counts.items() if str(position) in t)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.counts[t] for t in TRIPLES)


def triple_of(support: Iterable[str], block: FiveCycle) -> str:
    """The unique triple of ``block`` inside ``support``; StructuralViolation otherwise."""
    s = set(support)
    hits = [t for t in TRIPLES if all(block[int(a) - 1] in s for a in t)]
    if len(hits) != 1:
        raise StructuralViolation(f"support {sorted(s)} contains {len(hits)} triples of block {tuple(block)}")
    return hits[0]


def triple_counts(fact: Factorization, block: FiveCycle) -> TripleCounts:
    counts = dict.fromkeys(TRIPLES, 0)
    for m in fact.factors:
        counts[triple_of(m.support, block)] += 1
    return TripleCounts(block, counts, len(fact.factors))


FORMULAS = {
    "f1": "deg y1: f134+f123+f125 vs g134+g123+g125",
    "f2": "deg y2: f245+f123+f125 vs g245+g123+g125",
    "f3": "deg y3: f134+f123+f345 vs g134+g123+g345",
    "f4": "deg y4: f134+f245+f345 vs g134+g245+g345",
    "f5": "f134+f245+f123+f125+f345 = g134+g245+g123+g125+g345 = k",
    "f6": "f245+f345 = g245+g345",
    "f7": "f134+f345 = g134+g345",
    "f8": "f245+f125 = g245+g125",
    "f9": "case deduction",
}


def count_identities_check(fc: TripleCounts, gc: TripleCounts, equal_at: Iterable[str | int],
                           strict_at: str | int | None) -> dict[str, dict]:
    """Evaluate the count identities f1..f9 for one (f, g) pair.

    ``equal_at`` names the block vertices (labels or positions 1..5) where
    f and g have equal degree; ``strict_at`` the one where f is larger.
    f1..f4 are the degree relations at y1..y4 (equality or strict), f5 the
    total, f6..f8 the differences f5 - f1, f5 - f2, f5 - f3, and f9 the
    deduced inequalities of the y3 case (needs g125 = 0) or of the y4 case.
    Entries that do not apply have ``holds = None``.
    """
    pos = lambda v: v if isinstance(v, int) else fc.block.position(v)  # noqa: E731
    eq = {pos(v) for v in equal_at}
    strict = None if strict_at is None else pos(strict_at)
    out: dict[str, dict] = {}

    def put(key, applicable, holds, text=None):
        out[key] = {"formula": text or FORMULAS[key], "applicable": applicable,
                    "holds": bool(holds) if applicable else None}

    for a in range(1, 5):
        df, dg = fc.degree(a), gc.degree(a)
        if a in eq:
            put(f"f{a}", True, df == dg, FORMULAS[f"f{a}"].replace(" vs ", " = "))
        elif a == strict:
            put(f"f{a}", True, df > dg, FORMULAS[f"f{a}"].replace(" vs ", " > "))
        else:
            put(f"f{a}", False, None)
    put("f5", True, fc.total == fc.k and gc.total == gc.k and fc.k == gc.k)
    put("f6", 1 in eq, fc["245"] + fc["345"] == gc["245"] + gc["345"])
    put("f7", 2 in eq, fc["134"] + fc["345"] == gc["134"] + gc["345"])
    put("f8", 3 in eq, fc["245"] + fc["125"] == gc["245"] + gc["125"])
    if strict == 3 and {1, 2} <= eq and gc["125"] == 0:
        put("f9", True,
            fc["345"] > fc["125"] + gc["345"] and fc["134"] < gc["134"] and fc["245"] < gc["245"],
            "g125 = 0 => f345 > f125+g345, f134 < g134, f245 < g245")
    elif strict == 4 and {1, 2, 3} <= eq:
        put("f9", True, fc["245"] > gc["245"] and fc["345"] < gc["345"] and fc["125"] < gc["125"],
            "f245 > g245, f345 < g345, f125 < g125")
    else:
        put("f9", False, None)
    return out


def constructive_case(point_z: str, d: Decomposition, order: VariableOrder) -> tuple[FiveCycle, str] | None:
    """The 5-cycle block and case tag when ``z`` is y3 or y4 of a block whose
    preceding labels sit above z in ``order``."""
    for block in d.five_cycles:
        if point_z == block.y3:
            above, w = (block.y1, block.y2), (block.y4, block.y5)
            tag = CASE_Y3
        elif point_z == block.y4:
            above, w = (block.y1, block.y2, block.y3), (block.y5,)
            tag = CASE_Y4
        else:
            continue
        if all(order.greater(v, point_z) for v in above) and all(order.greater(point_z, v) for v in w):
            return block, tag
        return None
    return None


def split_residual(support: Iterable[str], block: FiveCycle, t1: frozenset[str],
                   t2: frozenset[str]) -> tuple[frozenset[str], frozenset[str]]:
    """Split the off-cycle part of a cover into its T1 and T2 pieces."""
    rest = set(support) - set(block)
    stray = rest - t1 - t2
    if stray:
        raise StructuralViolation(f"residual vertices {sorted(stray)} lie outside T1 and T2")
    return frozenset(rest & t1), frozenset(rest & t2)


def swap_supports(gp: Iterable[str], gq: Iterable[str], block: FiveCycle, t1: frozenset[str],
                  t2: frozenset[str], case: str) -> tuple[frozenset[str], frozenset[str]]:
    """The two exchanged covers built from factors g_p and g_q.

    y3 case: g_p holds {y2,y4,y5}, g_q holds {y1,y3,y4}; returns
    ({y3,y4,y5} + u1 + v2, {y1,y2,y3} + v1 + u2).
    y4 case: g_p holds {y3,y4,y5}, g_q holds {y1,y2,y5}; returns
    ({y2,y4,y5} + u1 + v2, {y1,y3,y4} + v1 + u2).
    Here u_a, v_a are the T_a parts of g_p, g_q.
    """
    y = block
    u1, u2 = split_residual(gp, block, t1, t2)
    v1, v2 = split_residual(gq, block, t1, t2)
    if case == CASE_Y3:
        first, second = {y.y3, y.y4, y.y5}, {y.y1, y.y2, y.y3}
    else:
        first, second = {y.y2, y.y4, y.y5}, {y.y1, y.y3, y.y4}
    return frozenset(first | u1 | v2), frozenset(second | v1 | u2)


def _as_factor(g: Graph, support: frozenset[str], order: VariableOrder) -> tuple[Monomial, Monomial]:
    if not is_vertex_cover(g, support):
        raise StructuralViolation(f"swapped support {sorted(support)} is not a vertex cover")
    core = shrink_to_minimal_cover(g, support, order)
    return Monomial.from_support(core), Monomial.from_support(support - core)


def constructive_witness(f_fact: Factorization, g_fact: Factorization, point: DivergencePoint,
                         g: Graph, d: Decomposition, order: VariableOrder) -> WitnessReport:
    """Exchange witness for divergence at y3 or y4 of a basic 5-cycle.

    y3 case: a factor of g holding {y1,y2,y5} gets y5 swapped for y3 (w = y5);
    without one, factors holding {y2,y4,y5} and {y1,y3,y4} are recombined
    along T1/T2 and w = y4. y4 case: factors holding {y3,y4,y5} and
    {y1,y2,y5} are recombined and w = y5. Raises StructuralViolation when
    the guaranteed factors are missing or a rebuilt factor is not a cover.
    ``f_fact`` is only used to confirm the divergence.
    """
    found = constructive_case(point.z, d, order)
    if found is None:
        raise StructuralViolation(f"{point.z} is not y3/y4 of a 5-cycle block under this order")
    block, case = found
    if f_fact.target != point.f or g_fact.target != point.g:
        raise StructuralViolation("factorizations do not match the divergence pair")
    gc = triple_counts(g_fact, block)
    factors = list(g_fact.factors)
    triples = [triple_of(m.support, block) for m in factors]
    cofactor = g_fact.cofactor
    y = block

    if case == CASE_Y3 and gc["125"] > 0:
        s = triples.index("125")
        new = (factors[s].support - {y.y5}) | {y.y3}
        factors[s], extra = _as_factor(g, new, order)
        cofactor = cofactor * extra
        w = y.y5
    else:
        want_p, want_q = ("245", "134") if case == CASE_Y3 else ("345", "125")
        if want_p not in triples or want_q not in triples:
            raise StructuralViolation(f"no factors holding triples {want_p} and {want_q} (counts {gc.counts})")
        p, q = triples.index(want_p), triples.index(want_q)
        t1, t2 = reachable_partition(g, block)
        v1, v2 = swap_supports(factors[p].support, factors[q].support, block, t1, t2, case)
        factors[p], e1 = _as_factor(g, v1, order)
        factors[q], e2 = _as_factor(g, v2, order)
        cofactor = cofactor * e1 * e2
        w = y.y4 if case == CASE_Y3 else y.y5

    cert = Factorization(tuple(factors), cofactor)
    report = WitnessReport(point, w, cert, case)
    if not verify_certificate(report, g):
        raise StructuralViolation(f"constructed certificate for z={point.z}, w={w} does not verify")
    return report


def verify_certificate(report: WitnessReport, g: Graph) -> bool:
    """Factors are minimal covers of ``g`` and multiply (with cofactor) to z*g/w."""
    if report.point.g[report.w] == 0:
        return False
    if report.certificate.target != report.target:
        return False
    return all(is_minimal_vertex_cover(g, m.support) and m.is_squarefree() for m in report.certificate.factors)


def has_linear_quotients(gens: Sequence[Monomial]) -> bool:
    """Whether each colon ideal (u_1..u_{j-1}) : u_j is generated by variables."""
    for j in range(1, len(gens)):
        uj = gens[j]
        colon = [gens[i] / _gcd(gens[i], uj) for i in range(j)]
        linear = {m for m in colon if m.degree == 1}
        for m in colon:
            if not any(x.divides(m) for x in linear):
                return False
    return True


def _gcd(a: Monomial, b: Monomial) -> Monomial:
    return Monomial((v, min(e, b[v])) for v, e in a.items() if b[v])


def degree_sums(ideal: MonomialIdeal, block: FiveCycle) -> set[int]:
    """Distinct values of deg_{y1}+...+deg_{y5} over the generators."""
    return {sum(m[v] for v in block) for m in ideal.generators}

