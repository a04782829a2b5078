"""Binomial edge ideals of trees: d-sequence classification and regularity."""

from .binomial_edge import (
    BudgetExceeded,
    DSeqVerdict,
    EdgeBinomialSequence,
    binomial_edge_ideal,
    colon_identity_suite,
    exists_d_sequence_order,
    is_d_sequence,
)
from .graph import Classification, Graph, canonical_dseq_order, classify_tree, enumerate_trees, ge_closure
from .ideal import Ideal, colon_poly, ideal_equal, power, product
from .poly import DEGREVLEX, LEX, Field, MonomialOrder, Polynomial, Ring
from .regularity import BettiTable, Prediction, betti_table, predict, regularity

__all__ = [
    "BettiTable",
    "BudgetExceeded",
    "Classification",
    "DSeqVerdict",
    "DEGREVLEX",
    "EdgeBinomialSequence",
    "Field",
    "Graph",
    "Ideal",
    "LEX",
    "MonomialOrder",
    "Polynomial",
    "Prediction",
    "Ring",
    "betti_table",
    "binomial_edge_ideal",
    "canonical_dseq_order",
    "classify_tree",
    "colon_identity_suite",
    "colon_poly",
    "enumerate_trees",
    "exists_d_sequence_order",
    "ge_closure",
    "ideal_equal",
    "is_d_sequence",
    "power",
    "predict",
    "product",
    "regularity",
]
