import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contexture.logic import builtin, from_blocks
from contexture.polytope import (
    EventScheme,
    Inequality,
    PolytopeError,
    check,
    facet_classes,
    facets,
    format_inequality,
    format_vertices_csv,
    implied_bounds,
    in_span,
    match_class,
    parse_inequalities,
    parse_inequality,
    parse_vertices_csv,
    scheme_polytope,
    state_polytope,
    vertices,
)
from contexture.states import StateSet, enumerate_states
from paper_tables import BUG_STATES, ch22_facets
from polytope_oracle import brute_force_facets


def tight_sets(verts, labels, fcs):
    out = set()
    for f in fcs:
        vals = [f.value(dict(zip(labels, v))) for v in verts]
        assert all(x >= 0 for x in vals)
        out.add(frozenset(i for i, x in enumerate(vals) if x == 0))
    return out


def test_vertices_1_1():
    sch = EventScheme.parse("1-1")
    assert sch.labels == ("p", "q", "pq")
    assert vertices(sch) == [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 1)]


def test_vertices_2_2_truth_table():
    sch = EventScheme.parse("2-2")
    vs = vertices(sch)
    assert len(vs) == 16
    for bits in itertools.product((0, 1), repeat=4):
        p1, p2, q1, q2 = bits
        assert (p1, p2, q1, q2, p1 * q1, p1 * q2, p2 * q1, p2 * q2) in vs


def test_vertices_3_3_and_limits():
    vs = vertices(EventScheme.parse("3-3"))
    assert len(vs) == 64 and len(vs[0]) == 15
    with pytest.raises(PolytopeError):
        vertices(EventScheme.bipartite(13, 12))
    with pytest.raises(PolytopeError):
        EventScheme(("a",), (("a",), ("b",)))
    with pytest.raises(PolytopeError):
        EventScheme(("a",), (("a",), ("a",)))
    with pytest.raises(PolytopeError):
        EventScheme.parse("two-two")


def test_facets_1_1():
    P = scheme_polytope(EventScheme.parse("1-1"))
    assert [str(f) for f in P.facets] == ["pq >= 0", "p - pq >= 0", "q - pq >= 0", "1 - p - q + pq >= 0"]
    assert P.equalities == () and P.dim == 3


def test_facets_2_2_match_the_table():
    sch = EventScheme.parse("2-2")
    P = scheme_polytope(sch)
    got = [f.vector(sch.labels) for f in P.facets]
    assert len(got) == 24
    assert set(got) == set(ch22_facets())
    ch = parse_inequality("1 - p1 - q1 + p1q1 + p1q2 + p2q1 - p2q2 >= 0")
    assert ch in P.facets
    # the "-1" and "0" forms are related by complementing outcomes, not by index or
    # side permutations, so the eight rows 17-24 form two classes of four
    lower = match_class(ch, P.facets, sch)
    upper = match_class(parse_inequality("p1 + q1 - p1q1 - p1q2 - p2q1 + p2q2 >= 0"), P.facets, sch)
    assert len(lower) == len(upper) == 4
    assert {f.vector(sch.labels) for f in lower + upper} == set(ch22_facets()[16:])


def test_printed_2_2_rows_with_index_slips_are_not_valid():
    sch = EventScheme.parse("2-2")
    P = scheme_polytope(sch)
    got = {f.vector(sch.labels) for f in P.facets}
    printed = ch22_facets(fixed=False)
    assert [k + 1 for k, v in enumerate(printed) if v not in got] == [8, 11]
    vs = vertices(sch)
    for k in (8, 11):
        ineq = Inequality.from_vector(printed[k - 1], sch.labels)
        assert min(ineq.value(dict(zip(sch.labels, v))) for v in vs) == -1


def test_facets_3_3():
    sch = EventScheme.parse("3-3")
    P = scheme_polytope(sch)
    vs = vertices(sch)
    assert len(P.facets) == 684 and P.equalities == ()
    for f in P.facets:
        vals = [f.value(dict(zip(sch.labels, v))) for v in vs]
        assert min(vals) == 0
        tight = [v for v, x in zip(vs, vals) if x == 0]
        assert len(tight) >= 15
    classes = facet_classes(P.facets, sch)
    assert sorted(len(c) for c in classes) == [9, 9, 18, 36, 36, 36, 36, 36, 36, 72, 72, 72, 72, 72, 72]
    fixed = parse_inequality("p1 + 2*q1 + q2 - p1q1 - p1q2 - p1q3 - p2q1 - p2q2 + p2q3 - p3q1 + p3q2 >= 0")
    assert fixed in P.facets
    assert len(match_class(fixed, P.facets, sch)) == 72
    printed = parse_inequality("p1 + 2*q1 + q2 - p1q1 - 2*p2q2 - p1q3 - p2q1 + p2q3 - p3q1 + p3q2 >= 0")
    assert match_class(printed, P.facets, sch) == []
    assert min(printed.value(dict(zip(sch.labels, v))) for v in vs) == -1


def test_check_worked_numbers():
    P = scheme_polytope(EventScheme.parse("1-1"))
    ok = check(P.facets, {"p": Fraction(9, 10), "q": Fraction(7, 10), "pq": Fraction(6, 10)})
    assert all(r.satisfied for r in ok) and ok[3].tight
    bad = check(P.facets, {"p": "9/10", "q": "7/10", "pq": "4/10"})
    assert [r.satisfied for r in bad] == [True, True, True, False]
    assert bad[3].margin == Fraction(1, 5)
    lo, hi = implied_bounds(P.facets, {"p": Fraction(9, 10), "q": Fraction(7, 10)}, "pq")
    assert lo == Fraction(3, 5) and hi == Fraction(7, 10)
    with pytest.raises(PolytopeError):
        check(P.facets, {"p": 1, "q": 1})


def test_check_at_vertices():
    sch = EventScheme.parse("2-2")
    P = scheme_polytope(sch)
    for v in vertices(sch):
        res = check(P.facets, dict(zip(sch.labels, v)))
        assert all(r.satisfied for r in res)
        assert any(r.tight for r in res)


def test_bug_state_polytope_equalities():
    bug = builtin("bug")
    P = state_polytope(bug, StateSet(bug.atoms, tuple(sorted(BUG_STATES))))
    assert P.dim == 6
    eq = lambda s: parse_inequality(s if s.startswith("=") else "= " + s + " = 0")
    for s in (
        "-1 + a1 + a2 + a3",
        "-1 + a4 + a10 + a13",
        "a1 + a2 - a4 - a5",
        "-1 + a1 + a2 - a4 + a6 + a7",
        "-1 + a1 + a2 - a4 + a6 - a8 + a10 + a11",
        "-a1 - a2 + a4 - a6 + a8 + a9",
        "-1 + a3 + a4 + a5",
        "-1 + a5 + a6 + a7",
        "-1 + a7 + a8 + a9",
        "-1 + a9 + a10 + a11",
        "-1 + a11 + a12 + a1",
        "-a2 + a4 - a6 + a8 - a10 + a12",
    ):
        assert in_span(eq(s), P.equalities, P.labels), s
    # the printed "1 = -P2 + P4 - P6 + P8 - P10 + P12" does not hold
    assert not in_span(eq("-1 - a2 + a4 - a6 + a8 - a10 + a12"), P.equalities, P.labels)
    assert not in_span(eq("a1 - a2"), P.equalities, P.labels)


def test_mo2_state_polytope():
    l = builtin("mo2")
    P = state_polytope(l, enumerate_states(l))
    assert [str(e) for e in P.equalities] == ["= -1 + E + Ep = 0", "= -1 + F + Fp = 0"]
    assert {str(f) for f in P.facets} == {"E >= 0", "F >= 0", "1 - E >= 0", "1 - F >= 0"}


def test_single_block_is_a_simplex():
    l = from_blocks([["a", "b", "c"]])
    P = state_polytope(l, enumerate_states(l))
    assert len(P.equalities) == 1 and len(P.facets) == 3 and P.dim == 2


def test_empty_state_set_is_an_error():
    l = builtin("cabello")
    with pytest.raises(PolytopeError):
        state_polytope(l, enumerate_states(l))


def test_text_formats():
    P = scheme_polytope(EventScheme.parse("2-2"))
    text = P.text()
    assert parse_inequalities(text) == list(P.facets)
    assert format_inequality(parse_inequality("2*q1 - 3*p1q1 + 1 >= 0")) == "1 + 2*q1 - 3*p1q1 >= 0"
    e = parse_inequality("= -1 + a + b = 0")
    assert e.equality and str(e) == "= -1 + a + b = 0"
    labels, vs = parse_vertices_csv(format_vertices_csv(P.labels, P.vertices))
    assert tuple(labels) == P.labels and tuple(vs) == P.vertices
    with pytest.raises(PolytopeError):
        parse_inequality("p >= q >= 0")


@pytest.mark.parametrize("scheme", ["1-1", "1-2", "2-1"])
def test_small_schemes_match_brute_force(scheme):
    sch = EventScheme.parse(scheme)
    vs = vertices(sch)
    eqs, fcs = facets(vs, sch.labels)
    oracle, d = brute_force_facets(vs)
    assert tight_sets(vs, sch.labels, fcs) == oracle
    assert len(sch.labels) - len(eqs) == d


point_sets = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(0, 1)] * n), min_size=1, max_size=12, unique=True)
)


@given(point_sets)
def test_random_01_polytopes_match_brute_force(pts):
    labels = [f"x{i}" for i in range(len(pts[0]))]
    eqs, fcs = facets(pts, labels)
    oracle, d = brute_force_facets(pts)
    assert len(labels) - len(eqs) == d
    for e in eqs:
        assert all(e.value(dict(zip(labels, p))) == 0 for p in pts)
    assert tight_sets(pts, labels, fcs) == oracle
