"""
Conditions of possible experience as polytope facets
====================================================

Classical probabilities of events and their joint occurrences are convex
combinations of 0/1 truth assignments. The facets of the resulting polytope
are the linear constraints every classical model must obey; for two events per
side they are the Clauser-Horne inequalities.
"""

import time
from fractions import Fraction as F

from contexture.polytope import (
    EventScheme,
    check,
    facet_classes,
    implied_bounds,
    parse_inequality,
    match_class,
    scheme_polytope,
)

# one event per side: four vertices, four facets
P = scheme_polytope(EventScheme.parse("1-1"))
print(P.text())

# two events with probabilities 0.9 and 0.7 cannot have a joint probability below 0.6
lo, hi = implied_bounds(P.facets, {"p": F(9, 10), "q": F(7, 10)}, "pq")
print(f"pq must lie in [{lo}, {hi}]")
for r in check(P.facets, {"p": F(9, 10), "q": F(7, 10), "pq": F(2, 5)}):
    print(r)

# two events per side: 16 vertices, 24 facets, 8 of them of Clauser-Horne type
sch = EventScheme.parse("2-2")
P = scheme_polytope(sch)
print(f"\n2-2: {len(P.facets)} facets in dimension {P.dim}")
for cls in facet_classes(P.facets, sch):
    print(f"  class of {len(cls)}: {cls[0]}")

# three per side: 684 facets. The six-event inequality sits in a class of 72.
sch = EventScheme.parse("3-3")
t0 = time.perf_counter()
P = scheme_polytope(sch)
print(f"\n3-3: {len(P.facets)} facets in {time.perf_counter() - t0:.1f} s")
print("class sizes:", sorted(len(c) for c in facet_classes(P.facets, sch)))
ineq = parse_inequality("p1 + 2*q1 + q2 - p1q1 - p1q2 - p1q3 - p2q1 - p2q2 + p2q3 - p3q1 + p3q2 >= 0")
print(f"{ineq}\n  is a facet: {ineq in P.facets}, symmetry class size {len(match_class(ineq, P.facets, sch))}")
