"""
Urns, automata and partition logics
===================================

Two-valued states of a logic induce, block by block, partitions of the state
set. The same partitions arise from an urn whose balls show one symbol per
colour filter, and from a Mealy automaton whose single-input experiments
separate initial states. This script goes round that triangle for the
two-tripod logic and for the bug.
"""

from contexture.logic import builtin, isomorphic
from contexture.partition import (
    automaton_from_partition,
    format_automaton,
    format_partition_logic,
    format_urn,
    logic_from_model,
    partition_from_states,
    singlet_joint_probability,
    state_probabilities,
    uniform,
    urn_from_partition,
    urn_to_automaton,
)
from contexture.states import enumerate_states

l = builtin("l12")
pl = partition_from_states(l, enumerate_states(l))
print(format_partition_logic(pl))

# each ball type is a state; the symbol seen through a filter names the true atom
urn = urn_from_partition(pl, "index")
print(format_urn(urn))
auto = urn_to_automaton(urn)
print(format_automaton(auto))
print("logic read back from the urn is L12:", isomorphic(logic_from_model(urn), l))
print("and from the automaton:", isomorphic(logic_from_model(auto), l))

# the bug: 14 states, seven blocks, and a joint probability that no single state
# explains, computed on two identically prepared copies
bug = builtin("bug")
pl = partition_from_states(bug, enumerate_states(bug))
probs = state_probabilities(pl, uniform(pl))
print("\nbug, uniform mixture:", {a: str(p) for a, p in probs.items() if a in ("a1", "a13")})
print("P(a1 and a13) =", singlet_joint_probability(pl, uniform(pl), ["a1", "a13"]))
print(format_automaton(automaton_from_partition(pl, padded=True)))
