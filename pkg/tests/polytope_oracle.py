"""Brute-force facet search, independent of the double-description code."""

import itertools

import sympy


def _rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def affine_dim(points):
    return _rank([[1, *p] for p in points]) - 1


def brute_force_facets(points):
    """Facets as frozensets of tight vertex indices, plus the affine dimension.

    Every subset of ``d`` affinely independent points spans a candidate
    hyperplane within the affine hull; it is a facet when all points lie on
    one side and some lie strictly off it.
    """
    pts = [list(p) for p in points]
    d = affine_dim(pts)
    if d <= 0:
        return set(), d
    found = set()
    for subset in itertools.combinations(range(len(pts)), d):
        rows = [[1, *pts[i]] for i in subset]
        if _rank(rows) != d:
            continue
        tight = frozenset(i for i in range(len(pts)) if _rank(rows + [[1, *pts[i]]]) == d)
        if tight in found:
            continue
        normal = None
        for vec in sympy.Matrix(rows).nullspace():
            vals = [sum(v * x for v, x in zip(vec, [1, *p])) for p in pts]
            if any(vals):
                normal = vals
                break
        if normal is None:
            continue
        if all(v >= 0 for v in normal) or all(v <= 0 for v in normal):
            found.add(tight)
    return found, d
