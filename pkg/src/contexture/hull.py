"""Exact double description: vertices to facets.

The facets of ``conv(V)`` are the extreme rays of the polar cone
``{(b, a) : b + a.v >= 0 for all v in V}``. Rays are kept as primitive
integer vectors and their zero sets as bit masks over the inserted
constraints; adjacency is decided combinatorially.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd
from typing import Sequence

from .linalg import independent_columns, independent_rows, integer_primitive, nullspace, solve

log = logging.getLogger(__name__)


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def extreme_rays(rows: Sequence[Sequence[int]], order: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{z : A z >= 0}``.

    ``A`` must have full column rank. Constraints are inserted in ``order``
    (default: row order) after an initial simplicial cone built from the
    first independent rows of that order.
    """
    k = len(rows[0])
    order = list(range(len(rows))) if order is None else list(order)
    ordered = [rows[i] for i in order]
    base = [order[i] for i in independent_rows(ordered)]
    if len(base) != k:
        raise ValueError("constraint matrix is not of full column rank")

    # columns of the inverse of the base matrix generate the initial cone
    brows = [rows[i] for i in base]
    rays: list[tuple[int, ...]] = []
    for j in range(k):
        e = [Fraction(int(i == j)) for i in range(k)]
        rays.append(integer_primitive(solve(brows, e)))
    bit = {row_idx: 1 << pos for pos, row_idx in enumerate(order)}
    zeros = []
    for j in range(k):
        z = 0
        for i, row_idx in enumerate(base):
            if i != j:
                z |= bit[row_idx]
        zeros.append(z)

    seen = set(base)
    for row_idx in order:
        if row_idx in seen:
            continue
        seen.add(row_idx)
        a = rows[row_idx]
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            b = bit[row_idx]
            zeros = [z | b if v == 0 else z for z, v in zip(zeros, vals)]
            continue
        new_rays = []
        new_zeros = []
        need = k - 2
        for p in pos:
            zp = zeros[p]
            for n in neg:
                common = zp & zeros[n]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for r, zr in enumerate(zeros):
                    if r != p and r != n and zr & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[p], vals[n]
                rp, rn = rays[p], rays[n]
                new = _primitive([vp * x - vn * y for x, y in zip(rn, rp)])
                new_rays.append(new)
                new_zeros.append(common)
        b = bit[row_idx]
        rays = [rays[i] for i in pos] + [rays[i] for i in zer] + new_rays
        zeros = [zeros[i] for i in pos] + [zeros[i] | b for i in zer] + [z | b for z in new_zeros]
        log.debug("inserted row %d: %d rays", row_idx, len(rays))
    return rays


def affine_hull(points: Sequence[Sequence]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Equalities ``b + a.x = 0`` satisfied by every point, and the free coordinates.

    Coordinates are indexed with the constant term at position 0. The free
    coordinates are the leftmost columns of the homogenized point matrix that
    are linearly independent; each equality solves one of the remaining
    coordinates in terms of them.
    """
    n = len(points[0])
    hom = [[1] + list(p) for p in points]
    free = independent_columns(hom, n + 1)
    eqs = []
    for v in nullspace(hom, n + 1, reverse=False):
        eqs.append(integer_primitive(v))
    # re-express so each equality has a single non-free pivot
    eqs = canonical_equalities(eqs, free, n + 1)
    return eqs, free


def canonical_equalities(eqs: list[tuple[int, ...]], free: list[int], width: int) -> list[tuple[int, ...]]:
    if not eqs:
        return []
    dependent = [c for c in range(width) if c not in free]
    # eliminate so that each row has exactly one dependent column
    from .linalg import rref

    order_cols = dependent + free
    perm = [[row[c] for c in order_cols] for row in eqs]
    m, piv = rref(perm, width)
    out = []
    for row in m:
        full = [Fraction(0)] * width
        for pos, c in enumerate(order_cols):
            full[c] = row[pos]
        v = list(integer_primitive(full))
        lead = next(x for x in v[1:] + v[:1] if x != 0)
        if lead < 0:
            v = [-x for x in v]
        out.append(tuple(v))
    return sorted(out, key=lambda r: [c for c in range(1, width) if r[c] != 0][-1:] or [0])


def facets_from_points(points: Sequence[Sequence]) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Return ``(equalities, facets)`` as coefficient tuples ``(b, a1, ..., an)``.

    Facets only involve the free coordinates reported by ``affine_hull``, so
    they are unique modulo the equalities.
    """
    n = len(points[0])
    eqs, free = affine_hull(points)
    if len(free) == 1:
        # a single point: no proper facets
        return eqs, []
    hom = [[1] + list(p) for p in points]
    den = 1
    for row in hom:
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    proj = [[int(Fraction(row[c]) * den) for c in free] for row in hom]
    # identical projected points give identical constraints
    uniq = sorted(set(tuple(r) for r in proj), key=lambda r: proj.index(list(r)))
    rays = extreme_rays(uniq)
    facets = []
    for r in rays:
        full = [0] * (n + 1)
        for c, x in zip(free, r):
            full[c] = x
        facets.append(tuple(full))
    return eqs, facets
