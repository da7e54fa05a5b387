"""Exact linear algebra over the rationals.

Small helpers used by the hull solver and the brute-force oracles. Matrices
are lists of rows; entries may be ints or Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int | None = None, reverse: bool = False):
    """Reduced row echelon form.

    Returns ``(matrix, pivots)``. With ``reverse=True`` pivots are searched
    from the rightmost column leftwards, so the pivot variables are the
    last possible ones.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    order = range(ncols - 1, -1, -1) if reverse else range(ncols)
    pivots = []
    r = 0
    for c in order:
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, reverse: bool = False) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows, ncols, reverse=reverse)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(m, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def independent_columns(rows: Sequence[Sequence], ncols: int) -> list[int]:
    """Leftmost maximal set of linearly independent columns."""
    return rref(rows, ncols)[1]


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of the first maximal linearly independent subset of rows, greedily."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivcols: list[int] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for b, pc in zip(basis, pivcols):
            if v[pc] != 0:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, b)]
        pc = next((i for i, x in enumerate(v) if x != 0), None)
        if pc is None:
            continue
        piv = v[pc]
        v = [x / piv for x in v]
        for k, b in enumerate(basis):
            if b[pc] != 0:
                f = b[pc]
                basis[k] = [x - f * y for x, y in zip(b, v)]
        basis.append(v)
        pivcols.append(pc)
        chosen.append(idx)
    return chosen


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(a)
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    m, piv = rref(aug, n + 1)
    if piv[:n] != list(range(n)):
        raise ValueError("singular system")
    return [m[i][n] for i in range(n)]


def integer_primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers (same direction)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)
