"""Derivation reduction for second-order function-free Horn clauses.

Clauses are exchanged as text, e.g. ``"P0(x1,x2) :- P1(x1,x3), P2(x3,x2)."``.
"""

import json

from . import _core
from ._core import (
    SCHEMA_VERSION,
    ParseError,
    PreconditionError,
    alpha_equivalent,
    c_base,
    canonical,
    count,
    enumerate,
    hnr_family,
    hnr_level,
    is_connected,
    is_instance,
    is_two_connected,
    nonred_extend,
    pending_variables,
    spanning_tree_split,
    to_dot,
    triadic_counterexample,
)

__all__ = [
    "SCHEMA_VERSION",
    "ParseError",
    "PreconditionError",
    "alpha_equivalent",
    "c_base",
    "canonical",
    "count",
    "derive",
    "enumerate",
    "hnr_family",
    "hnr_level",
    "is_connected",
    "is_instance",
    "is_reducible",
    "is_two_connected",
    "nonred_extend",
    "pending_variables",
    "reduce_theory",
    "run_cli",
    "spanning_tree_split",
    "to_dot",
    "triadic_counterexample",
]


def derive(theory, goal, mode="sld", max_depth=2, max_body=8, max_clauses=200000):
    """Bounded derivation search. Returns a dict with ``found`` and, when found, ``proof``."""
    return json.loads(_core.derive_json(list(theory), goal, mode, max_depth, max_body, max_clauses))


def reduce_theory(theory, mode="sld", max_depth=2, max_body=8, max_clauses=200000):
    """Greedy reduction. Returns a dict with ``core``, ``removed`` and ``bounds_hit``."""
    return json.loads(_core.reduce_theory_json(list(theory), mode, max_depth, max_body, max_clauses))


def is_reducible(clause, mode="sld", arity_cap=2, connected=None, two_connected=None, method="partition"):
    """Reducibility check. The premise fragment defaults to the tightest
    connectivity constraint the clause itself satisfies."""
    if connected is None and two_connected is None:
        two_connected = _core.is_two_connected(clause)
        connected = _core.is_connected(clause)
    return json.loads(
        _core.is_reducible_json(clause, mode, arity_cap, bool(connected), bool(two_connected), method)
    )


def run_cli(args):
    """Runs the command-line interface in-process; returns (code, stdout, stderr)."""
    return _core.run_cli(list(args))
