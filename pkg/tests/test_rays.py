import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from contexture.exact import ONE, SQRT2, ZERO, QSqrt2
from contexture.rays import (
    CABELLO_CONTEXTS,
    RayError,
    cabello_rays,
    canonicalize,
    complete_contexts,
    contexts_from_rays,
    cross,
    format_rays,
    inner_product,
    iter_nor_closure,
    maximal_cliques,
    nor_closure,
    ortho_graph,
    parse_rays,
    peres_rays,
    ray_from_ints,
    signed_permutations,
)

R = ray_from_ints


def test_inner_product_examples():
    assert inner_product(R(1, 0, 0), R(0, 1, 0)) == ZERO
    assert inner_product(R(1, 1, 0), R(1, -1, 0)) == ZERO
    assert inner_product(canonicalize((SQRT2, ONE, ONE)), R(0, 1, -1)) == ZERO
    with pytest.raises(RayError):
        inner_product(R(1, 0, 0), R(1, 0, 0, 0))


def test_canonicalize_examples():
    assert canonicalize((0, 0, -2)) == R(0, 0, 1)
    assert canonicalize((-1, 1, 0)).coords == (ONE, -ONE, ZERO)
    two = QSqrt2(2)
    assert canonicalize((QSqrt2(0, 2), two, two)) == canonicalize((SQRT2, ONE, ONE))
    assert canonicalize((QSqrt2(0, 2), two, two)).coords == (SQRT2, ONE, ONE)
    with pytest.raises(RayError):
        canonicalize((0, 0, 0))


small = st.integers(-4, 4)
coords = st.lists(st.builds(QSqrt2, small, small), min_size=3, max_size=3).filter(any)
scalars = st.builds(QSqrt2, st.fractions(max_denominator=7), st.fractions(max_denominator=7)).filter(bool)


@given(coords, scalars)
def test_canonicalize_is_projective(v, lam):
    r = canonicalize(v)
    assert canonicalize([c * lam for c in v]) == r
    assert canonicalize(r.coords) == r
    assert r.coords[next(i for i, c in enumerate(r.coords) if c)].sign() > 0


@given(coords, coords)
def test_inner_product_symmetric_and_float_consistent(u, v):
    x, y = canonicalize(u), canonicalize(v)
    ip = inner_product(x, y)
    assert ip == inner_product(y, x)
    assert inner_product(x, x).sign() > 0
    assert abs(float(ip) - float(np.dot(x.to_floats(), y.to_floats()))) < 1e-9


def test_peres_set():
    rays = peres_rays()
    assert len(rays) == 33
    assert R(1, 0, 0) in rays
    assert canonicalize((ONE, -ONE, SQRT2)) in rays
    image = {img for r in rays for img in signed_permutations(r)}
    assert image == set(rays)
    # labels are the digit strings of the coordinates
    labels = {r.label for r in rays}
    assert {"001", "011", "01!", "012", "0!2", "112", "!12", "1!2", "!!2"} <= labels
    assert len(labels) == 33


def test_peres_graph_matches_float_oracle():
    rays = peres_rays()
    g = ortho_graph(rays)
    vecs = [np.array(r.to_floats()) for r in rays]
    oracle = {(i, j) for i, j in itertools.combinations(range(33), 2) if abs(vecs[i] @ vecs[j]) < 1e-9}
    assert g.edges == oracle
    assert len(g.edges) == 72
    z = rays.index(R(0, 0, 1))
    for other in (R(1, 0, 0), R(0, 1, 0), R(1, 1, 0), R(1, -1, 0)):
        assert g.adjacent(z, rays.index(other))


def test_peres_contexts_match_networkx_and_triple_scan():
    rays = peres_rays()
    g = ortho_graph(rays)
    ctx = contexts_from_rays(g, 3)
    G = nx.Graph()
    G.add_nodes_from(range(33))
    G.add_edges_from(g.edges)
    assert sorted(tuple(sorted(c)) for c in nx.find_cliques(G)) == [tuple(c) for c in ctx]
    assert len(ctx) == 40
    triads = complete_contexts(g, 3)
    scan = [list(t) for t in itertools.combinations(range(33), 3) if all(g.adjacent(a, b) for a, b in itertools.combinations(t, 2))]
    assert triads == scan
    assert len(triads) == 16


def test_cliques_are_maximal():
    rays = peres_rays()
    g = ortho_graph(rays)
    adj = g.neighbours()
    for c in contexts_from_rays(g, 3):
        outside = set(range(33)) - set(c)
        assert not any(all(v in adj[u] for u in c) for v in outside)


def test_small_graphs():
    g = ortho_graph([R(1, 0, 0), R(0, 1, 0)])
    assert g.edges == {(0, 1)}
    assert ortho_graph([R(1, 0, 0), R(1, 1, 0)]).edges == frozenset()
    g = ortho_graph([R(1, 0, 0), R(0, 1, 0), R(0, 0, 1)])
    assert contexts_from_rays(g, 3) == [[0, 1, 2]]
    assert maximal_cliques([set(), set()]) == [(0,), (1,)]


def test_oversized_clique_is_an_error():
    g = ortho_graph([R(1, 0, 0, 0), R(0, 1, 0, 0), R(0, 0, 1, 0), R(0, 0, 0, 1)])
    with pytest.raises(RayError):
        contexts_from_rays(g, 3)


def test_cabello():
    rays, ctx = cabello_rays()
    assert len(rays) == 18 and len(ctx) == 9
    names = [r.label for r in rays]
    assert [names[i] for i in ctx[0]] == list("ABCD")
    counts = [sum(i in c for c in ctx) for i in range(18)]
    assert counts == [2] * 18
    for c in ctx:
        for i, j in itertools.combinations(c, 2):
            assert inner_product(rays[i], rays[j]) == ZERO
    g = ortho_graph(rays)
    assert sorted(map(sorted, complete_contexts(g, 4))) == sorted(map(sorted, ctx))
    assert set(CABELLO_CONTEXTS) == set("abcdefghi")


def test_cross_product():
    assert canonicalize(cross(R(1, 0, 0), R(1, 1, 0))) == R(0, 0, 1)
    with pytest.raises(RayError):
        cross(R(1, 0, 0, 0), R(0, 1, 0, 0))


def test_nor_closure_small():
    rounds = list(iter_nor_closure([R(1, 0, 0), R(1, 1, 0)]))
    assert R(0, 0, 1) in rounds[1]
    assert nor_closure([R(1, 0, 0)], 5) == [R(1, 0, 0)]
    with pytest.raises(RayError):
        nor_closure([R(1, 0, 0, 0)], 1)


NOR_SEEDS = [R(1, 0, 0), R(1, 1, 0), canonicalize((SQRT2, ONE, ONE))]


def test_nor_closure_round_sizes():
    # derived by running the closure; round 5 (131064 rays) is exercised in the demo
    peres = set(peres_rays())
    sizes, hits = [], []
    for k, rays in enumerate(iter_nor_closure(NOR_SEEDS)):
        sizes.append(len(rays))
        hits.append(len(peres & set(rays)))
        if k == 3:
            break
    assert sizes == [3, 6, 15, 47]
    assert hits == [3, 5, 10, 16]


def test_nor_closure_restricted_to_peres():
    peres = peres_rays()
    sizes = [len(r) for r in iter_nor_closure(NOR_SEEDS, restrict_to=peres)]
    assert sizes == [3, 5, 10, 15, 19, 23, 25, 27, 31, 33]
    assert set(nor_closure(NOR_SEEDS, 20, restrict_to=peres)) == set(peres)


def test_nor_closure_nonorthogonal_only_stalls():
    final = nor_closure(NOR_SEEDS, 50, nonorthogonal_only=True)
    assert len(final) == 10


def test_rays_text_round_trip():
    rays = peres_rays()
    back = parse_rays(format_rays(rays))
    assert back == rays
    assert [r.label for r in back] == [r.label for r in rays]
    text = "# comment\nx : 1 0:1 -1/2:1  # trailing\n"
    (r,) = parse_rays(text)
    assert r.label == "x"
    assert r == canonicalize((ONE, SQRT2, QSqrt2(Fraction(-1, 2), 1)))
    for bad in ("x 1 0 0", "x : 1 0", "x : 1 a b", "x : 1 0 0\ny : 1 0 0 0"):
        with pytest.raises(RayError):
            parse_rays(bad)
