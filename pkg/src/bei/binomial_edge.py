"""Binomial edge ideals and the d-sequence property of edge binomials."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Iterable, Sequence

from .graph import (
    Classification,
    Edge,
    Graph,
    GraphError,
    NotATree,
    _norm,
    classify_tree,
    edge_orbits,
    ge_closure,
    is_bridge_extension,
)
from .ideal import STATS, Ideal, colon_poly, ideal_equal, minimal_generators
from .poly import Field, Polynomial, Ring

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, verdict: "DSeqVerdict | None" = None):
        super().__init__(message)
        self.verdict = verdict


class NotABridge(GraphError):
    pass


def binomial_edge_ideal(g: Graph, field: Field | None = None) -> Ideal:
    if not g.edges:
        raise GraphError("binomial edge ideal of a graph without edges")
    ring = Ring(g.n, field)
    return Ideal(ring, [ring.edge_binomial(i, j) for i, j in g.sorted_edges()])


@dataclass(frozen=True)
class EdgeBinomialSequence:
    graph: Graph
    order: tuple[Edge, ...]
    ring: Ring

    @classmethod
    def build(cls, g: Graph, order: Iterable[Iterable[int]], field: Field | None = None) -> "EdgeBinomialSequence":
        order = tuple(_norm(e) for e in order)
        if len(order) != len(set(order)) or set(order) != set(g.edges):
            raise GraphError("ordering is not a permutation of the edge set")
        return cls(g, order, Ring(g.n, field))

    @property
    def polynomials(self) -> list[Polynomial]:
        return [self.ring.edge_binomial(i, j) for i, j in self.order]


@dataclass
class Violation:
    """(J_i : a_{i+1} a_j) != (J_i : a_j); i counts prefix length, j is 1-based."""

    i: int
    j: int
    left: Ideal | None = None
    right: Ideal | None = None

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j}


@dataclass
class DSeqVerdict:
    holds: bool
    ordering: list[Edge] | None = None
    violation: Violation | None = None
    exhaustive: bool = True
    buchberger_runs: int = 0
    searched: int = 0
    field: str = ""
    # orderings found where every step had J_i : a_{i+1} = J_i
    regular_orderings: list[list[Edge]] = dc_field(default_factory=list)
    all_orderings: list[list[Edge]] = dc_field(default_factory=list)

    @property
    def inconclusive(self) -> bool:
        return not self.holds and not self.exhaustive

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "ordering": [list(e) for e in self.ordering] if self.ordering is not None else None,
            "violation": self.violation.to_json() if self.violation is not None else None,
            "exhaustive": self.exhaustive,
            "buchberger_runs": self.buchberger_runs,
        }


class ColonCache:
    """Colon ideals of binomial-edge prefixes, keyed by the prefix edge set.

    ``prefix(S)`` is J_S; ``colon(S, e)`` is J_S : f_e and
    ``colon2(S, e, g)`` is (J_S : f_e) : f_g = J_S : f_e f_g.
    """

    def __init__(self, ring: Ring):
        self.ring = ring
        self._prefix: dict[frozenset, Ideal] = {}
        self._colon: dict[tuple, Ideal] = {}
        self._colon2: dict[tuple, Ideal] = {}
        self._pair: dict[tuple, bool] = {}
        self._regular: dict[tuple, bool] = {}

    def prefix(self, S: frozenset) -> Ideal:
        I = self._prefix.get(S)
        if I is None:
            I = Ideal(self.ring, [self.ring.edge_binomial(*e) for e in sorted(S)])
            self._prefix[S] = I
        return I

    def colon(self, S: frozenset, e: Edge) -> Ideal:
        key = (S, e)
        I = self._colon.get(key)
        if I is None:
            I = colon_poly(self.prefix(S), self.ring.edge_binomial(*e))
            self._colon[key] = I
        return I

    def colon2(self, S: frozenset, e: Edge, g: Edge) -> Ideal:
        key = (S, e, g)
        I = self._colon2.get(key)
        if I is None:
            I = colon_poly(self.colon(S, e), self.ring.edge_binomial(*g))
            self._colon2[key] = I
        return I

    def pair_ok(self, S: frozenset, e: Edge, g: Edge) -> bool:
        """J_S : f_e f_g == J_S : f_g."""
        key = (S, e, g)
        ok = self._pair.get(key)
        if ok is None:
            if not S:
                ok = True  # the zero ideal is prime
            else:
                ok = ideal_equal(self.colon2(S, e, g), self.colon(S, g))
            self._pair[key] = ok
        return ok

    def is_regular_step(self, S: frozenset, e: Edge) -> bool:
        """J_S : f_e == J_S."""
        key = (S, e)
        ok = self._regular.get(key)
        if ok is None:
            ok = True if not S else ideal_equal(self.colon(S, e), self.prefix(S))
            self._regular[key] = ok
        return ok


def _check_minimality(seq: EdgeBinomialSequence) -> bool:
    polys = seq.polynomials
    return len(minimal_generators(Ideal(seq.ring, polys))) == len(polys)


def is_d_sequence(seq: EdgeBinomialSequence, cache: ColonCache | None = None) -> DSeqVerdict:
    """Check the d-sequence conditions directly: minimal generation, then for
    every prefix length i >= 0 and every j >= i+1 the colon equality, in
    increasing i and, for fixed i, increasing j.  The first failure is the
    witness."""
    start = STATS.buchberger_runs
    cache = cache or ColonCache(seq.ring)
    order = list(seq.order)
    fname = seq.ring.field.name
    if not _check_minimality(seq):
        return DSeqVerdict(False, None, Violation(-1, -1), True, STATS.buchberger_runs - start, 1, fname)
    m = len(order)
    for i in range(m):
        S = frozenset(order[:i])
        for j in range(i + 1, m + 1):
            if not cache.pair_ok(S, order[i], order[j - 1]):
                viol = Violation(i, j, cache.colon2(S, order[i], order[j - 1]), cache.colon(S, order[j - 1]))
                return DSeqVerdict(False, None, viol, True, STATS.buchberger_runs - start, 1, fname)
    return DSeqVerdict(True, order, None, True, STATS.buchberger_runs - start, 1, fname)


def _meets(e: Edge, g: Edge) -> bool:
    return bool(set(e) & set(g))


def exists_d_sequence_order(
    g: Graph,
    budget: int = 50_000,
    field: Field | None = None,
    prune: bool = True,
    symmetry: bool = True,
    collect: bool = False,
) -> DSeqVerdict:
    """Depth-first search for an ordering of E(g) whose edge binomials form a
    d-sequence.

    A prefix a_1..a_k is abandoned as soon as a pair condition with j <= k
    fails.  With ``prune``, once the first i with J_i : a_{i+1} != J_i is
    known, only edges meeting a_{i+1} may follow.  With ``symmetry`` the first
    edge ranges over one representative per automorphism orbit.  ``collect``
    gathers every passing ordering instead of stopping at the first.

    Raises BudgetExceeded (carrying an inconclusive verdict) once more than
    ``budget`` Groebner basis computations have been spent.
    """
    if not g.is_tree():
        raise NotATree("ordering search is defined for trees")
    if not g.edges:
        raise GraphError("no edges")
    ring = Ring(g.n, field)
    cache = ColonCache(ring)
    start = STATS.buchberger_runs
    edges = g.sorted_edges()
    m = len(edges)
    searched = 0
    found: list[list[Edge]] = []
    regular: list[list[Edge]] = []

    if symmetry:
        firsts = [orbit[0] for orbit in edge_orbits(g)]
    else:
        firsts = list(edges)

    def spent() -> int:
        return STATS.buchberger_runs - start

    def dfs(prefix: list[Edge], pivot: Edge | None, all_regular: bool) -> bool:
        nonlocal searched
        if spent() > budget:
            raise BudgetExceeded(f"budget of {budget} Groebner runs exhausted")
        k = len(prefix)
        if k == m:
            searched += 1
            found.append(list(prefix))
            if all_regular:
                regular.append(list(prefix))
            return not collect
        used = set(prefix)
        candidates = firsts if k == 0 else [e for e in edges if e not in used]
        for e in candidates:
            if prune and pivot is not None and not _meets(pivot, e):
                continue
            ok = True
            # new pairs (i, j = k+1) for i = 1..k
            for i in range(1, k + 1):
                nxt = prefix[i] if i < k else e
                if not cache.pair_ok(frozenset(prefix[:i]), nxt, e):
                    ok = False
                    break
            if not ok:
                searched += 1
                continue
            new_pivot = pivot
            still_regular = all_regular
            if pivot is None and k >= 1 and not cache.is_regular_step(frozenset(prefix), e):
                new_pivot = e
                still_regular = False
            prefix.append(e)
            try:
                if dfs(prefix, new_pivot, still_regular):
                    return True
            finally:
                prefix.pop()
        return False

    fname = ring.field.name
    try:
        dfs([], None, True)
    except BudgetExceeded as exc:
        verdict = DSeqVerdict(False, None, None, False, spent(), searched, fname)
        exc.verdict = verdict
        raise
    if found:
        v = DSeqVerdict(True, found[0], None, True, spent(), searched, fname)
    else:
        # a concrete witness: the first violation of the lexicographic ordering
        witness = is_d_sequence(EdgeBinomialSequence(g, tuple(edges), ring), cache)
        v = DSeqVerdict(False, None, witness.violation, True, spent(), searched, fname)
    v.regular_orderings = regular
    if collect:
        v.all_orderings = found
    return v


@dataclass
class TreeDecision:
    graph: Graph
    classification: Classification
    verdict: DSeqVerdict | None
    mismatch: bool
    rechecked_over_q: bool = False
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "degree_sequence": list(self.classification.degree_sequence),
            "variant": self.classification.variant,
            "verdict": self.verdict.to_json() if self.verdict else None,
            "mismatch": self.mismatch,
            "rechecked_over_q": self.rechecked_over_q,
            "error": self.error,
        }


def decide_tree(g: Graph, budget: int = 50_000, field: Field | None = None) -> TreeDecision:
    """Classify g and search for a d-sequence ordering; a negative result that
    contradicts the classification is recomputed over the rationals."""
    c = classify_tree(g)
    field = field or Field.prime()
    try:
        v = exists_d_sequence_order(g, budget, field)
    except BudgetExceeded as exc:
        return TreeDecision(g, c, exc.verdict, False, error=str(exc))
    mismatch = v.holds != c.has_dsequence
    rechecked = False
    if mismatch and not v.holds and not field.is_rational:
        log.info("negative verdict contradicts classification; recomputing over Q")
        rechecked = True
        try:
            v = exists_d_sequence_order(g, budget, Field.rationals())
        except BudgetExceeded as exc:
            return TreeDecision(g, c, exc.verdict, True, True, error=str(exc))
        mismatch = v.holds != c.has_dsequence
    return TreeDecision(g, c, v, mismatch, rechecked)


# ---------------------------------------------------------------------------
# Colon by an edge binomial across a bridge
# ---------------------------------------------------------------------------


@dataclass
class ColonIdentityReport:
    graph: Graph
    edge: Edge
    closure: Graph
    equal: bool
    added_edges: list[Edge]
    colon: Ideal
    expected: Ideal

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "edge": list(self.edge),
            "equal": self.equal,
            "added_edges": [list(e) for e in self.added_edges],
            "closure": self.closure.to_json(),
        }


def colon_identity_suite(g: Graph, e: Iterable[int], field: Field | None = None) -> ColonIdentityReport:
    """Compare J_G : f_e with J_{G_e} for an edge e joining two components."""
    e = _norm(e)
    if not is_bridge_extension(g, e):
        raise NotABridge(f"{{{e[0]},{e[1]}}} is not a bridge of G plus e")
    ring = Ring(g.n, field)
    J = Ideal(ring, [ring.edge_binomial(*d) for d in g.sorted_edges()])
    closure = ge_closure(g, e)
    expected = Ideal(ring, [ring.edge_binomial(*d) for d in closure.sorted_edges()])
    col = colon_poly(J, ring.edge_binomial(*e))
    return ColonIdentityReport(
        g, e, closure, ideal_equal(col, expected), sorted(closure.edges - g.edges), col, expected
    )


def prefix_is_path_forest(edges: Sequence[Edge]) -> bool:
    """Every prefix of the ordering spans a disjoint union of paths."""
    deg: dict[int, int] = {}
    parent: dict[int, int] = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        if deg[a] > 2 or deg[b] > 2:
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True
