from __future__ import annotations

import itertools

import pytest

from bei.binomial_edge import (
    BudgetExceeded,
    ColonCache,
    EdgeBinomialSequence,
    NotABridge,
    binomial_edge_ideal,
    colon_identity_suite,
    decide_tree,
    exists_d_sequence_order,
    is_d_sequence,
    prefix_is_path_forest,
)
from bei.graph import Graph, GraphError, canonical_dseq_order, classify_tree, enumerate_trees, path, star
from bei.ideal import ideal_equal
from bei.poly import Field

G2 = Graph.from_edges([(1, 2), (1, 3), (1, 4), (1, 5), (5, 6), (5, 7)])
TWO_CENTERS = Graph.from_edges([(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (5, 7)])
THREE_DEG3 = Graph.from_edges([(1, 2), (2, 3), (1, 4), (1, 5), (2, 6), (3, 7), (3, 8)])


def test_binomial_edge_ideal():
    assert len(binomial_edge_ideal(path(2)).generators) == 1
    J = binomial_edge_ideal(Graph.from_edges([(1, 2), (1, 3), (2, 3)]))
    R = J.ring
    assert set(J.generators) == {R.edge_binomial(1, 2), R.edge_binomial(1, 3), R.edge_binomial(2, 3)}
    assert len(binomial_edge_ideal(G2).generators) == 6
    with pytest.raises(GraphError):
        binomial_edge_ideal(Graph(3))


def test_sequence_must_permute_edges():
    with pytest.raises(GraphError):
        EdgeBinomialSequence.build(path(3), [(1, 2)])
    with pytest.raises(GraphError):
        EdgeBinomialSequence.build(path(3), [(1, 2), (1, 2)])


def test_paths_in_every_order():
    for order in itertools.permutations(path(4).sorted_edges()):
        assert is_d_sequence(EdgeBinomialSequence.build(path(4), order)).holds


def test_star_in_every_order():
    for order in itertools.permutations(star(3).sorted_edges()):
        assert is_d_sequence(EdgeBinomialSequence.build(star(3), order)).holds


def test_two_centers_fail_in_every_order():
    cache = None
    for order in itertools.permutations(TWO_CENTERS.sorted_edges()):
        seq = EdgeBinomialSequence.build(TWO_CENTERS, order)
        cache = cache or ColonCache(seq.ring)
        assert not is_d_sequence(seq, cache).holds


def test_search_examples():
    v = exists_d_sequence_order(G2)
    assert v.holds and v.exhaustive
    c = classify_tree(G2)
    canon = canonical_dseq_order(c, G2)
    assert canon[-1] == (1, 5)
    assert is_d_sequence(EdgeBinomialSequence.build(G2, canon)).holds
    v = exists_d_sequence_order(THREE_DEG3)
    assert not v.holds and v.exhaustive


def test_verdict_json_schema():
    v = exists_d_sequence_order(TWO_CENTERS)
    data = v.to_json()
    assert set(data) == {"holds", "ordering", "violation", "exhaustive", "buchberger_runs"}
    assert data["ordering"] is None and set(data["violation"]) == {"i", "j"}
    assert exists_d_sequence_order(star(3)).to_json()["violation"] is None


def test_budget_exhaustion_is_inconclusive():
    with pytest.raises(BudgetExceeded) as info:
        exists_d_sequence_order(TWO_CENTERS, budget=3)
    v = info.value.verdict
    assert not v.holds and not v.exhaustive and v.inconclusive


def _recheck(g: Graph, v, field=None):
    if v.holds:
        assert is_d_sequence(EdgeBinomialSequence.build(g, v.ordering, field)).holds
    else:
        seq = EdgeBinomialSequence.build(g, g.sorted_edges(), field)
        fresh = is_d_sequence(seq)
        assert not fresh.holds
        assert (fresh.violation.i, fresh.violation.j) == (v.violation.i, v.violation.j)
        assert not ideal_equal(fresh.violation.left, fresh.violation.right)


def test_verdicts_reverify_with_fresh_caches():
    for n in range(2, 8):
        for t in enumerate_trees(n):
            _recheck(t, exists_d_sequence_order(t))


def test_search_options_agree():
    for n in range(2, 7):
        for t in enumerate_trees(n):
            base = exists_d_sequence_order(t).holds
            assert exists_d_sequence_order(t, prune=False).holds == base
            assert exists_d_sequence_order(t, symmetry=False).holds == base


def test_rational_search_agrees():
    for t in enumerate_trees(6):
        assert exists_d_sequence_order(t, field=Field.rationals()).holds == exists_d_sequence_order(t).holds


def test_classification_matches_search_up_to_seven():
    for n in range(2, 8):
        for t in enumerate_trees(n):
            d = decide_tree(t)
            assert not d.mismatch and d.error is None


def test_canonical_order_suffices_up_to_eight():
    for n in range(2, 9):
        for t in enumerate_trees(n):
            c = classify_tree(t)
            if c.has_dsequence:
                assert is_d_sequence(EdgeBinomialSequence.build(t, canonical_dseq_order(c, t))).holds


def test_all_regular_orderings_are_path_forests():
    for n in range(2, 7):
        for t in enumerate_trees(n):
            v = exists_d_sequence_order(t, collect=True, prune=False)
            for order in v.regular_orderings:
                assert prefix_is_path_forest(order)


def test_intersection_property_on_passing_orderings():
    # once J_i : a_{i+1} != J_i, every later edge meets a_{i+1}; checked without the pruning
    for n in range(4, 7):
        for t in enumerate_trees(n):
            v = exists_d_sequence_order(t, collect=True, prune=False)
            seq = EdgeBinomialSequence.build(t, t.sorted_edges())
            cache = ColonCache(seq.ring)
            for order in v.all_orderings:
                first = next(
                    (i for i in range(1, len(order)) if not cache.is_regular_step(frozenset(order[:i]), order[i])),
                    None,
                )
                if first is None:
                    continue
                pivot = set(order[first])
                assert all(pivot & set(e) for e in order[first + 1 :])


def test_colon_identity_suite_examples():
    g = Graph.from_edges([(1, 2), (1, 3)], 4)
    rep = colon_identity_suite(g, (1, 4))
    assert rep.equal and rep.added_edges == [(2, 3)]
    disjoint = Graph.from_edges([(1, 2), (3, 4)], 6)
    rep = colon_identity_suite(disjoint, (5, 6))
    assert rep.equal and rep.added_edges == []
    rep = colon_identity_suite(Graph.from_edges([(1, 2), (2, 3)], 4), (3, 4))
    assert rep.equal and rep.added_edges == []
    with pytest.raises(NotABridge):
        colon_identity_suite(Graph.from_edges([(1, 2), (2, 3)]), (1, 3))
    with pytest.raises(NotABridge):
        colon_identity_suite(Graph.from_edges([(1, 2), (2, 3)]), (1, 2))


def test_colon_identity_over_rationals():
    for t in enumerate_trees(5):
        for e in t.sorted_edges():
            assert colon_identity_suite(t.remove_edge(e), e, Field.rationals()).equal
