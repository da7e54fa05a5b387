"""Exact ray geometry over Q(sqrt 2).

Rays are one-dimensional subspaces of R^3 or R^4 with coordinates in
Q(sqrt 2). Orthogonality is decided exactly, contexts are the maximal
cliques of the orthogonality graph.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

from .exact import ONE, SQRT2, ZERO, QSqrt2, format_qs2, parse_qs2, qs2_sign


class RayError(ValueError):
    pass


@dataclass(frozen=True)
class Ray:
    coords: tuple[QSqrt2, ...]
    label: str | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def key(self) -> tuple:
        return tuple((c.a, c.b) for c in self.coords)

    def __lt__(self, other: Ray) -> bool:
        return self.key() < other.key()

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coords]

    def __str__(self):
        return "(" + ",".join(format_qs2(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class OrthoGraph:
    rays: tuple[Ray, ...]
    edges: frozenset[tuple[int, int]]

    def neighbours(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.rays]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges


def _as_qs2(x) -> QSqrt2:
    return x if isinstance(x, QSqrt2) else QSqrt2.coerce(x)


def inner_product(x: Ray, y: Ray) -> QSqrt2:
    if x.dim != y.dim:
        raise RayError(f"dimension mismatch: {x.dim} vs {y.dim}")
    total = ZERO
    for a, b in zip(x.coords, y.coords):
        total = total + a * b
    return total


def _primitive(coords: Sequence[QSqrt2]) -> list[QSqrt2]:
    den = 1
    for c in coords:
        for q in (c.a, c.b):
            den = den * q.denominator // gcd(den, q.denominator)
    ints = [(int(c.a * den), int(c.b * den)) for c in coords]
    g = 0
    for a, b in ints:
        g = gcd(gcd(g, a), b)
    return [QSqrt2(a // g, b // g) for a, b in ints]


def _height(coords: Sequence[QSqrt2]) -> int:
    return max(max(abs(c.a), abs(c.b)) for c in coords)


def canonicalize(v: Iterable, label: str | None = None) -> Ray:
    """Unique representative of ``span(v)``.

    The first nonzero coordinate is positive and the integer content is
    reduced. Multiples by any nonzero element of Q(sqrt 2) map to the same
    ray; of the two primitive scalings ``w`` and ``sqrt2*w`` the one with the
    smaller integer height is kept (ties keep ``w``).
    """
    coords = [_as_qs2(c) for c in v]
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise RayError("zero vector has no direction")
    unit = [c / lead for c in coords]
    w = _primitive(unit)
    alt = _primitive([c * SQRT2 for c in w])
    best = alt if _height(alt) < _height(w) else w
    if qs2_sign(next(c for c in best if c)) < 0:
        best = [-c for c in best]
    return Ray(tuple(best), label)


def cross(x: Ray, y: Ray) -> tuple[QSqrt2, ...]:
    if x.dim != 3 or y.dim != 3:
        raise RayError("cross product needs d = 3")
    a1, a2, a3 = x.coords
    b1, b2, b3 = y.coords
    return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)


def signed_permutations(r: Ray) -> Iterator[Ray]:
    """All images of ``r`` under coordinate permutations and axis reversals."""
    d = r.dim
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product((1, -1), repeat=d):
            yield canonicalize([r.coords[p] * s for p, s in zip(perm, signs)])


def peres_rays() -> list[Ray]:
    """The 33 rays generated by the four seed families in R^3."""
    seeds = [
        (ZERO, ZERO, ONE),
        (ZERO, ONE, ONE),
        (ZERO, ONE, SQRT2),
        (ONE, ONE, SQRT2),
    ]
    out = set()
    for s in seeds:
        out.update(signed_permutations(canonicalize(s)))
    rays = sorted(out)
    assert len(rays) == 33, len(rays)
    return [Ray(r.coords, _digit_label(r)) for r in rays]


def _digit_label(r: Ray) -> str:
    # "1" -> 1, "!" -> -1, "2" -> sqrt 2, "0" -> 0; oriented so sqrt 2 is positive
    coords = list(r.coords)
    if any(c.b < 0 for c in coords):
        coords = [-c for c in coords]
    names = {(1, 0): "1", (-1, 0): "!", (0, 1): "2", (0, 0): "0"}
    try:
        return "".join(names[(c.a, c.b)] for c in coords)
    except KeyError:
        return str(r)


CABELLO_VECTORS = {
    "A": (0, 0, 1, -1),
    "B": (1, -1, 0, 0),
    "C": (1, 1, -1, -1),
    "D": (1, 1, 1, 1),
    "E": (1, -1, 1, -1),
    "F": (1, 0, -1, 0),
    "G": (0, 1, 0, -1),
    "H": (1, 0, 1, 0),
    "I": (1, 1, -1, 1),
    "J": (-1, 1, 1, 1),
    "K": (1, 1, 1, -1),
    "L": (1, 0, 0, 1),
    "M": (0, 1, -1, 0),
    "N": (0, 1, 1, 0),
    "O": (0, 0, 0, 1),
    "P": (1, 0, 0, 0),
    "Q": (0, 1, 0, 0),
    "R": (0, 0, 1, 1),
}

CABELLO_CONTEXTS = {
    "a": "ABCD",
    "b": "DEFG",
    "c": "GHIJ",
    "d": "JKLM",
    "e": "MNOP",
    "f": "PQRA",
    "g": "BIKR",
    "h": "CELN",
    "i": "FHOQ",
}


def cabello_rays() -> tuple[list[Ray], list[list[int]]]:
    """The 18 labeled vectors A..R in R^4 and the nine contexts a..i."""
    names = sorted(CABELLO_VECTORS)
    rays = [canonicalize(CABELLO_VECTORS[n], label=n) for n in names]
    index = {n: i for i, n in enumerate(names)}
    contexts = [[index[c] for c in CABELLO_CONTEXTS[k]] for k in sorted(CABELLO_CONTEXTS)]
    return rays, contexts


def iter_nor_closure(
    seeds: Sequence[Ray],
    nonorthogonal_only: bool = False,
    restrict_to: Sequence[Ray] | None = None,
) -> Iterator[list[Ray]]:
    """Yield the ray set after each round of cross-product closure.

    The first item is the canonicalized seed set. Iteration stops once a
    round adds nothing. With ``restrict_to``, new rays outside that set are
    discarded.
    """
    allowed = None if restrict_to is None else {canonicalize(r.coords) for r in restrict_to}
    current = sorted({canonicalize(s.coords) for s in seeds})
    yield current
    while True:
        found = set(current)
        for x, y in itertools.combinations(current, 2):
            if nonorthogonal_only and not inner_product(x, y):
                continue
            c = cross(x, y)
            if not any(c):
                continue
            r = canonicalize(c)
            if allowed is None or r in allowed:
                found.add(r)
        if len(found) == len(current):
            return
        current = sorted(found)
        yield current


def nor_closure(
    seeds: Sequence[Ray],
    max_rounds: int,
    nonorthogonal_only: bool = False,
    restrict_to: Sequence[Ray] | None = None,
) -> list[Ray]:
    """Close ``seeds`` under cross products of non-collinear pairs.

    Stops at a fixpoint or after ``max_rounds`` rounds, whichever first.
    """
    if any(s.dim != 3 for s in seeds):
        raise RayError("nor closure is defined for d = 3")
    result: list[Ray] = []
    for rnd, rays in enumerate(iter_nor_closure(seeds, nonorthogonal_only, restrict_to)):
        result = rays
        if rnd >= max_rounds:
            break
    return result


def ortho_graph(rays: Sequence[Ray]) -> OrthoGraph:
    dims = {r.dim for r in rays}
    if len(dims) > 1:
        raise RayError(f"mixed dimensions {sorted(dims)}")
    edges = set()
    for i, j in itertools.combinations(range(len(rays)), 2):
        if not inner_product(rays[i], rays[j]):
            edges.add((i, j))
    return OrthoGraph(tuple(rays), frozenset(edges))


def maximal_cliques(adj: Sequence[set[int]]) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting; cliques returned as sorted tuples in sorted order."""
    out: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        # pivot: smallest index among vertices with most neighbours in p
        pivot = min(p | x, key=lambda u: (-len(adj[u] & p), u))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand([], set(range(len(adj))), set())
    return sorted(out)


def contexts_from_rays(g: OrthoGraph, dim: int) -> list[list[int]]:
    """All maximal mutually orthogonal cliques, lexicographically ordered.

    Cliques of size ``dim`` are complete contexts; see :func:`complete_contexts`.
    """
    cliques = maximal_cliques(g.neighbours())
    for c in cliques:
        if len(c) > dim:
            raise RayError(f"clique of size {len(c)} exceeds dimension {dim}")
    return [list(c) for c in cliques]


def complete_contexts(g: OrthoGraph, dim: int) -> list[list[int]]:
    return [c for c in contexts_from_rays(g, dim) if len(c) == dim]


_RAY_LINE = re.compile(r"^\s*([^:#\s][^:#]*?)\s*:\s*(.*)$")


def parse_rays(text: str) -> list[Ray]:
    """Parse the ``.rays`` text format (``label : c1 c2 ... cd`` per line)."""
    rays = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RAY_LINE.match(line)
        if m is None:
            raise RayError(f"line {lineno}: expected 'label : coords'")
        label, rest = m.group(1), m.group(2).split()
        try:
            coords = [parse_qs2(tok) for tok in rest]
        except (ValueError, ZeroDivisionError) as exc:
            raise RayError(f"line {lineno}: {exc}") from None
        if dim is None:
            dim = len(coords)
        if len(coords) != dim or dim not in (3, 4):
            raise RayError(f"line {lineno}: expected {dim or '3 or 4'} coordinates, got {len(coords)}")
        rays.append(canonicalize(coords, label=label))
    return rays


def format_rays(rays: Sequence[Ray]) -> str:
    lines = []
    for i, r in enumerate(rays):
        label = r.label if r.label is not None else f"r{i + 1}"
        lines.append(f"{label} : " + " ".join(format_qs2(c) for c in r.coords))
    return "\n".join(lines) + "\n"


def ray_from_ints(*coords) -> Ray:
    return canonicalize([QSqrt2(Fraction(c)) if not isinstance(c, QSqrt2) else c for c in coords])
