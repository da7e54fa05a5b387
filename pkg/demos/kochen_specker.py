"""
Value indefiniteness from finite ray sets
=========================================

Walks through three small logics and two ray sets. The logics with two-valued
states get their states listed; the ray sets that have none are certified
uncolourable, once by exhaustive search and once (for the four-dimensional
set) by a counting argument that needs no search at all.
"""

import time

from contexture import rays, states
from contexture.exact import SQRT2
from contexture.logic import builtin, render_logic

# a pentagon of five three-atom blocks still has plenty of two-valued states
pent = builtin("pentagon")
print(render_logic(pent))
ss = states.enumerate_states(pent)
print(f"pentagon: {len(ss)} two-valued states, classification {ss.classification.label}")

# the bug logic separates its atoms, yet a1 and a13 behave classically only in part
bug = builtin("bug")
ss = states.enumerate_states(bug)
print(f"bug: {len(ss)} states, separating={ss.classification.separating}, full={ss.classification.full}")

# Peres' 33 rays in three dimensions, coordinates in Q(sqrt 2)
peres = rays.peres_rays()
g = rays.ortho_graph(peres)
print(f"\nPeres: {len(peres)} rays, {len(g.edges)} orthogonal pairs, "
      f"{len(rays.complete_contexts(g, 3))} complete triads")
t0 = time.perf_counter()
ss = states.enumerate_ray_states(g, 3, threads=4)
print(f"two-valued states: {len(ss)}  ({time.perf_counter() - t0:.2f} s)")

# Cabello's 18 rays in four dimensions: every ray sits in two of nine contexts,
# so the number of true atoms would be both even and equal to 9
cab = builtin("cabello")
cert = states.parity_certificate(cab)
print(f"\nCabello: {cert.detail}")
print("search agrees:", len(states.enumerate_states(cab)) == 0)

# Where do the Peres rays come from? Close a three-ray seed under cross products.
# Unrestricted, the set explodes (round 4 already has 612 rays, round 5 takes about
# a minute); keeping only rays that belong to the Peres set reaches all 33 slowly.
seeds = [rays.canonicalize(v) for v in ((1, 0, 0), (1, 1, 0), (SQRT2, 1, 1))]
target = set(peres)
print()
for k, rs in enumerate(rays.iter_nor_closure(seeds)):
    print(f"round {k}: {len(rs)} rays, {len(target & set(rs))} Peres")
    if k == 3:
        break
for k, rs in enumerate(rays.iter_nor_closure(seeds, restrict_to=peres)):
    last = (k, len(rs))
print(f"restricted closure: all {last[1]} Peres rays after {last[0]} rounds")
