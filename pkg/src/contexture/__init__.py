"""Exact tools for quantum logics, contextuality and correlation polytopes."""

from .exact import ONE, SQRT2, ZERO, QSqrt2, Rational, format_qs2, parse_qs2, qs2_arith, qs2_sign
from .logic import BUILTINS, Logic, LogicError, builtin, from_blocks, isomorphic, link_report, parse_logic, paste, render_logic
from .partition import (
    MealyAutomaton,
    PartitionError,
    PartitionLogic,
    UrnModel,
    automaton_from_partition,
    automaton_to_urn,
    logic_from_model,
    partition_from_states,
    singlet_joint_probability,
    state_probabilities,
    urn_from_partition,
    urn_to_automaton,
)
from .polytope import EventScheme, Inequality, Polytope, PolytopeError, check, facets, state_polytope, vertices
from .quantum import AngleSet, born_expectation, ch_bound, ch_eigenvalues, ch_operator, q_observables, sigma
from .rays import (
    OrthoGraph,
    Ray,
    RayError,
    cabello_rays,
    canonicalize,
    complete_contexts,
    contexts_from_rays,
    inner_product,
    nor_closure,
    ortho_graph,
    parse_rays,
    peres_rays,
)
from .states import Classification, StateSet, classify, enumerate_ray_states, enumerate_states, parity_certificate

__version__ = "0.1.0"
