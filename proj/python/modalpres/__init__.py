"""Kripke models, modal formulas, morphisms and monotone GNNs."""

from ._core import (
    Formula,
    Model,
    ModalpresError,
    antichain,
    canonical_key,
    charform,
    check,
    enumerate_models,
    evaluate,
    gnn_certified,
    gnn_compile,
    gnn_eval,
    l_bisimilar,
    prune,
    relate,
    synthesize,
    unravel,
)

__all__ = [
    "Formula",
    "Model",
    "ModalpresError",
    "antichain",
    "canonical_key",
    "charform",
    "check",
    "enumerate_models",
    "evaluate",
    "gnn_certified",
    "gnn_compile",
    "gnn_eval",
    "l_bisimilar",
    "prune",
    "relate",
    "synthesize",
    "unravel",
]
