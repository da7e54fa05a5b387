"""Correlation polytopes computed exactly.

Vertices are the 0/1 monomial vectors of all truth assignments to a set of
events; facets come from the double-description solver in :mod:`.hull`.
Inequalities use the convention ``b + sum(a_i * x_i) >= 0`` with coprime
integer coefficients.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .hull import facets_from_points
from .logic import Logic
from .states import StateSet

MAX_EVENTS = 24


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class EventScheme:
    """Events plus the monomials (coordinates) recorded for each assignment."""

    events: tuple[str, ...]
    monomials: tuple[tuple[str, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple("".join(m) for m in self.monomials))
        if len(set(self.labels)) != len(self.labels):
            raise PolytopeError("monomial labels must be unique")
        for m in self.monomials:
            for e in m:
                if e not in self.events:
                    raise PolytopeError(f"monomial {''.join(m)!r} uses undeclared event {e!r}")

    @classmethod
    def bipartite(cls, n_left: int, n_right: int) -> EventScheme:
        """Events ``p1..pn`` and ``q1..qm`` with all products ``pi qj``.

        The 1-1 case uses the bare names ``p``, ``q``, ``pq``.
        """
        if n_left == n_right == 1:
            left, right = ["p"], ["q"]
        else:
            left = [f"p{i}" for i in range(1, n_left + 1)]
            right = [f"q{j}" for j in range(1, n_right + 1)]
        mons = [(e,) for e in left + right] + [(a, b) for a in left for b in right]
        return cls(tuple(left + right), tuple(mons))

    @classmethod
    def parse(cls, text: str) -> EventScheme:
        """``"2-2"`` style names or ``n_left-n_right``."""
        m = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*", text)
        if not m:
            raise PolytopeError(f"bad scheme {text!r}; expected e.g. '2-2'")
        return cls.bipartite(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class Inequality:
    """``b + sum(coeffs[label] * x[label]) >= 0`` (or ``== 0`` for equalities)."""

    b: int
    coeffs: tuple[tuple[str, int], ...]
    equality: bool = False

    @classmethod
    def from_vector(cls, vec: Sequence[int], labels: Sequence[str], equality: bool = False) -> Inequality:
        return cls(int(vec[0]), tuple((l, int(a)) for l, a in zip(labels, vec[1:]) if a), equality)

    @classmethod
    def from_dict(cls, b, coeffs: Mapping[str, int], equality: bool = False) -> Inequality:
        return cls(int(b), tuple((l, int(a)) for l, a in coeffs.items() if a), equality)

    def as_dict(self) -> dict[str, int]:
        return dict(self.coeffs)

    def vector(self, labels: Sequence[str]) -> tuple[int, ...]:
        d = self.as_dict()
        unknown = set(d) - set(labels)
        if unknown:
            raise PolytopeError(f"unknown coordinates {sorted(unknown)}")
        return (self.b, *(d.get(l, 0) for l in labels))

    def value(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(self.b)
        for l, a in self.coeffs:
            if l not in point:
                raise PolytopeError(f"point has no coordinate {l!r}")
            total += a * Fraction(point[l])
        return total

    def normalized(self) -> Inequality:
        g = abs(self.b)
        for _, a in self.coeffs:
            g = gcd(g, a)
        if g <= 1:
            return self
        return Inequality(self.b // g, tuple((l, a // g) for l, a in self.coeffs), self.equality)

    def __str__(self):
        return format_inequality(self)


def format_inequality(ineq: Inequality) -> str:
    parts = [str(ineq.b)] if ineq.b or not ineq.coeffs else []
    for l, a in ineq.coeffs:
        mag = "" if abs(a) == 1 else f"{abs(a)}*"
        if not parts:
            parts.append(f"{'-' if a < 0 else ''}{mag}{l}")
        else:
            parts.append(f"{'-' if a < 0 else '+'} {mag}{l}")
    body = " ".join(parts)
    return f"= {body} = 0" if ineq.equality else f"{body} >= 0"


_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)?")


def parse_inequality(line: str) -> Inequality:
    """Read a line written by :func:`format_inequality`."""
    s = line.strip()
    equality = s.startswith("=")
    if equality:
        s = s[1:]
        s = re.sub(r"=\s*0\s*$", "", s)
    else:
        s = re.sub(r">=\s*0\s*$", "", s)
    b = 0
    coeffs: dict[str, int] = {}
    pos = 0
    s = s.strip()
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise PolytopeError(f"cannot parse {line!r}")
        sign = -1 if m.group(1) == "-" else 1
        mag = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            coeffs[m.group(3)] = coeffs.get(m.group(3), 0) + sign * mag
        else:
            b += sign * mag
        pos = m.end()
    return Inequality.from_dict(b, coeffs, equality)


@dataclass(frozen=True)
class Polytope:
    labels: tuple[str, ...]
    vertices: tuple[tuple[int, ...], ...]
    equalities: tuple[Inequality, ...] = ()
    facets: tuple[Inequality, ...] = ()
    free: tuple[str, ...] = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        """Affine dimension."""
        return len(self.labels) - len(self.equalities)

    def text(self) -> str:
        return "".join(f"{e}\n" for e in self.equalities) + "".join(f"{f}\n" for f in self.facets)


def vertices(scheme: EventScheme) -> list[tuple[int, ...]]:
    """Monomial vectors of all 0/1 assignments, deduplicated, lexicographic."""
    n = len(scheme.events)
    if n > MAX_EVENTS:
        raise PolytopeError(f"{n} events exceed the enumeration limit of {MAX_EVENTS}")
    idx = {e: i for i, e in enumerate(scheme.events)}
    out = set()
    for bits in itertools.product((0, 1), repeat=n):
        out.add(tuple(int(all(bits[idx[e]] for e in m)) for m in scheme.monomials))
    return sorted(out)


def _sort_key(ineq: Inequality, labels: Sequence[str]):
    v = ineq.vector(labels)
    nnz = sum(1 for x in v[1:] if x)
    return (nnz, tuple(-x for x in v[1:]), v[0])


def facets(verts: Sequence[Sequence], labels: Sequence[str] | None = None):
    """Exact hull: ``(equalities, facets)`` as sorted :class:`Inequality` lists.

    Facets are expressed in the free coordinates of the affine hull (the
    leftmost coordinates whose values are not fixed by earlier ones), so
    they are unique modulo the equalities.
    """
    if not verts:
        raise PolytopeError("need at least one vertex")
    dim = len(verts[0])
    labels = list(labels) if labels is not None else [f"x{i + 1}" for i in range(dim)]
    eq_vecs, fac_vecs = facets_from_points([list(v) for v in verts])
    eqs = [Inequality.from_vector(v, labels, equality=True) for v in eq_vecs]
    fcs = [Inequality.from_vector(v, labels) for v in fac_vecs]
    fcs.sort(key=lambda f: _sort_key(f, labels))
    return eqs, fcs


def polytope(verts: Sequence[Sequence[int]], labels: Sequence[str]) -> Polytope:
    eqs, fcs = facets(verts, labels)
    return Polytope(tuple(labels), tuple(tuple(v) for v in verts), tuple(eqs), tuple(fcs))


def scheme_polytope(scheme: EventScheme) -> Polytope:
    return polytope(vertices(scheme), scheme.labels)


def state_polytope(l: Logic, ss: StateSet) -> Polytope:
    """Convex hull of the two-valued states, coordinates labelled by atom."""
    if not ss.states:
        raise PolytopeError("no two-valued states: the state polytope is empty")
    return polytope(sorted(set(ss.states)), l.atoms)


@dataclass(frozen=True)
class CheckResult:
    inequality: Inequality
    value: Fraction

    @property
    def satisfied(self) -> bool:
        return self.value == 0 if self.inequality.equality else self.value >= 0

    @property
    def tight(self) -> bool:
        return self.value == 0

    @property
    def margin(self) -> Fraction:
        """Amount of violation (zero when satisfied)."""
        if self.satisfied:
            return Fraction(0)
        return abs(self.value)

    def __str__(self):
        if self.satisfied:
            status = "tight" if self.tight and not self.inequality.equality else "satisfied"
            return f"{status}\t{_q(self.value)}\t{self.inequality}"
        return f"violated\t{_q(self.margin)}\t{self.inequality}"


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def check(ineqs: Iterable[Inequality], point: Mapping[str, object]) -> list[CheckResult]:
    """Evaluate each inequality exactly at ``point``."""
    p = {k: Fraction(v) for k, v in point.items()}
    return [CheckResult(i, i.value(p)) for i in ineqs]


def implied_bounds(ineqs: Iterable[Inequality], known: Mapping[str, object], target: str):
    """Bounds on ``target`` from the inequalities whose other coordinates are known.

    Returns ``(low, high)``; ``None`` marks an unbounded side.
    """
    k = {a: Fraction(v) for a, v in known.items()}
    lo = hi = None
    for ineq in ineqs:
        d = ineq.as_dict()
        a = d.get(target, 0)
        if not a or any(l not in k for l in d if l != target):
            continue
        rest = Fraction(ineq.b) + sum(c * k[l] for l, c in d.items() if l != target)
        bound = -rest / a
        if a > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    return lo, hi


def in_span(eq: Inequality, equalities: Sequence[Inequality], labels: Sequence[str]) -> bool:
    """True if ``eq`` is a linear consequence of ``equalities``."""
    from .linalg import rank

    rows = [e.vector(labels) for e in equalities]
    return rank(rows + [eq.vector(labels)]) == rank(rows) if rows else not any(eq.vector(labels))


def reduce_modulo(ineq: Inequality, poly: Polytope) -> Inequality:
    """Rewrite ``ineq`` in the free coordinates of ``poly`` (eliminating via its equalities)."""
    labels = list(poly.labels)
    v = [Fraction(x) for x in ineq.vector(labels)]
    for e in poly.equalities:
        ev = e.vector(labels)
        # each canonical equality has one dependent coordinate: its last nonzero entry
        piv = max(i for i in range(1, len(ev)) if ev[i])
        if v[piv]:
            f = v[piv] / ev[piv]
            v = [x - f * y for x, y in zip(v, ev)]
    from .linalg import integer_primitive

    return Inequality.from_vector(integer_primitive(v), labels, ineq.equality)


# symmetry of bipartite schemes


def bipartite_relabelings(scheme: EventScheme) -> list[dict[str, str]]:
    """Label maps for all permutations of left indices, right indices, and side swap."""
    left = [e for e in scheme.events if e.startswith("p")]
    right = [e for e in scheme.events if e.startswith("q")]
    maps = []
    swaps = [False, True] if len(left) == len(right) else [False]
    for pl in itertools.permutations(range(len(left))):
        for pr in itertools.permutations(range(len(right))):
            for swap in swaps:
                ev = {}
                for i, e in enumerate(left):
                    ev[e] = right[pl[i]] if swap else left[pl[i]]
                for j, e in enumerate(right):
                    ev[e] = left[pr[j]] if swap else right[pr[j]]
                lab = {}
                for m, l in zip(scheme.monomials, scheme.labels):
                    img = sorted((ev[e] for e in m), key=lambda x: (x[0] != "p", x))
                    lab[l] = "".join(img)
                maps.append(lab)
    return maps


def relabel(ineq: Inequality, mapping: Mapping[str, str]) -> Inequality:
    out: dict[str, int] = {}
    for l, a in ineq.coeffs:
        out[mapping[l]] = out.get(mapping[l], 0) + a
    return Inequality.from_dict(ineq.b, out, ineq.equality)


def orbit(ineq: Inequality, scheme: EventScheme) -> set[tuple[int, ...]]:
    return {relabel(ineq, m).vector(scheme.labels) for m in bipartite_relabelings(scheme)}


def match_class(target: Inequality, fcs: Sequence[Inequality], scheme: EventScheme) -> list[Inequality]:
    """Facets equal to ``target`` up to index permutations and side swap."""
    orb = orbit(target, scheme)
    return [f for f in fcs if f.vector(scheme.labels) in orb]


def facet_classes(fcs: Sequence[Inequality], scheme: EventScheme) -> list[list[Inequality]]:
    """Partition facets into orbits of the index/side relabeling group."""
    remaining = {f.vector(scheme.labels): f for f in fcs}
    classes = []
    for f in fcs:
        v = f.vector(scheme.labels)
        if v not in remaining:
            continue
        orb = orbit(f, scheme)
        members = [remaining.pop(w) for w in sorted(orb) if w in remaining]
        classes.append(sorted(members, key=lambda x: _sort_key(x, scheme.labels)))
    return classes


def format_vertices_csv(labels: Sequence[str], verts: Sequence[Sequence[int]]) -> str:
    return ",".join(labels) + "\n" + "".join(",".join(str(x) for x in v) + "\n" for v in verts)


def parse_vertices_csv(text: str) -> tuple[list[str], list[tuple[int, ...]]]:
    rows = [r for r in text.splitlines() if r.strip() and not r.startswith("#")]
    labels = [x.strip() for x in rows[0].split(",")]
    return labels, [tuple(int(x) for x in r.split(",")) for r in rows[1:]]


def parse_inequalities(text: str) -> list[Inequality]:
    return [parse_inequality(l) for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
