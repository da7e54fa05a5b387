"""Two-valued (dispersion-free) states.

A two-valued state assigns 0 or 1 to every atom so that each block holds
exactly one 1. States are plain tuples of ints indexed like the atoms.
"""

from __future__ import annotations

import io
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .logic import Logic
from .rays import OrthoGraph, complete_contexts

State = tuple[int, ...]

EMPTY = "empty"
NOT_UNITAL = "nonempty-not-unital"
NOT_SEPARATING = "unital-not-separating"
SEPARATING = "separating"
FULL = "full"


@dataclass(frozen=True)
class Classification:
    label: str
    unital: bool
    separating: bool
    full: bool
    unseparated: tuple[tuple[str, str], ...] = ()

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class StateSet:
    atoms: tuple[str, ...]
    states: tuple[State, ...]
    classification: Classification | None = field(default=None, compare=False)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __bool__(self):
        return bool(self.states)


class _Search:
    """Backtracking over 0/1 variables.

    ``groups`` must each contain exactly one 1; ``adj[i]`` lists variables that
    may not be 1 together with ``i``. Variables in no group are branched on
    freely at the end.
    """

    def __init__(self, n: int, groups: Sequence[Sequence[int]], adj: Sequence[set[int]]):
        self.n = n
        self.groups = [tuple(g) for g in groups]
        self.adj = [sorted(a) for a in adj]
        self.member: list[list[int]] = [[] for _ in range(n)]
        for k, g in enumerate(self.groups):
            for i in g:
                self.member[i].append(k)
        grouped = {i for g in self.groups for i in g}
        self.loose = [i for i in range(n) if i not in grouped]

    def _assign(self, vals: list[int], i: int, v: int, trail: list[int]) -> bool:
        stack = [(i, v)]
        while stack:
            i, v = stack.pop()
            if vals[i] != -1:
                if vals[i] != v:
                    return False
                continue
            vals[i] = v
            trail.append(i)
            if v == 1:
                for j in self.adj[i]:
                    if vals[j] == 1:
                        return False
                    if vals[j] == -1:
                        stack.append((j, 0))
            else:
                for k in self.member[i]:
                    g = self.groups[k]
                    if any(vals[j] == 1 for j in g):
                        continue
                    open_ = [j for j in g if vals[j] == -1]
                    if not open_:
                        return False
                    if len(open_) == 1:
                        stack.append((open_[0], 1))
        return True

    def _undo(self, vals: list[int], trail: list[int], mark: int) -> None:
        while len(trail) > mark:
            vals[trail.pop()] = -1

    def _pick(self, vals: list[int]):
        best = None
        best_key = None
        for k, g in enumerate(self.groups):
            if any(vals[j] == 1 for j in g):
                continue
            assigned = sum(vals[j] != -1 for j in g)
            key = (-assigned, k)
            if best_key is None or key < best_key:
                best, best_key = k, key
        return best

    def branches(self, vals: list[int]) -> list[tuple[int, int]]:
        k = self._pick(vals)
        if k is not None:
            return [(j, 1) for j in self.groups[k] if vals[j] == -1]
        free = next((i for i in self.loose if vals[i] == -1), None)
        if free is None:
            return []
        return [(free, 0), (free, 1)]

    def run(self, vals: list[int], out: list[State]) -> None:
        trail: list[int] = []
        self._run(vals, trail, out)

    def _run(self, vals: list[int], trail: list[int], out: list[State]) -> None:
        opts = self.branches(vals)
        if not opts:
            self._emit(vals, out)
            return
        for i, v in opts:
            mark = len(trail)
            if self._assign(vals, i, v, trail):
                self._run(vals, trail, out)
            self._undo(vals, trail, mark)

    def _emit(self, vals: list[int], out: list[State]) -> None:
        state = tuple(vals)
        assert all(x in (0, 1) for x in state)
        for g in self.groups:
            assert sum(state[j] for j in g) == 1
        for i in range(self.n):
            if state[i]:
                assert not any(state[j] for j in self.adj[i])
        out.append(state)

    def solve(self, threads: int = 1) -> list[State]:
        vals = [-1] * self.n
        if threads <= 1:
            out: list[State] = []
            self.run(vals, out)
            return sorted(set(out))

        def subtree(opt):
            local = [-1] * self.n
            trail: list[int] = []
            res: list[State] = []
            if self._assign(local, opt[0], opt[1], trail):
                self._run(local, trail, res)
            return res

        opts = self.branches(vals)
        if not opts:
            out = []
            self._emit(vals, out)
            return out
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(subtree, opts))
        return sorted(set(itertools.chain.from_iterable(parts)))


def _block_adjacency(n: int, blocks: Sequence[Sequence[int]]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for b in blocks:
        for i in b:
            adj[i].update(j for j in b if j != i)
    return adj


def enumerate_states(l: Logic, threads: int = 1) -> StateSet:
    """All two-valued states of ``l`` in lexicographic order."""
    search = _Search(l.n_atoms, l.blocks, _block_adjacency(l.n_atoms, l.blocks))
    states = tuple(search.solve(threads))
    ss = StateSet(l.atoms, states)
    return StateSet(l.atoms, states, classify(ss, l))


def enumerate_ray_states(g: OrthoGraph, dim: int, threads: int = 1) -> StateSet:
    """0/1 colourings of rays: orthogonal rays never both 1, complete contexts exactly one 1.

    Incomplete cliques only get the at-most-one rule.
    """
    n = len(g.rays)
    groups = complete_contexts(g, dim)
    search = _Search(n, groups, g.neighbours())
    states = tuple(search.solve(threads))
    atoms = tuple(r.label if r.label is not None else str(r) for r in g.rays)
    return StateSet(atoms, states, _classify(states, atoms, g.neighbours()))


def _classify(states: Sequence[State], atoms: Sequence[str], adj: Sequence[set[int]] | None = None) -> Classification:
    n = len(atoms)
    if not states:
        return Classification(EMPTY, False, False, False)
    unital = all(any(s[i] for s in states) for i in range(n))
    unseparated = tuple(
        (atoms[i], atoms[j])
        for i, j in itertools.combinations(range(n), 2)
        if all(s[i] == s[j] for s in states)
    )
    separating = not unseparated
    # fullness checked on atoms and atom complements: a </= b needs m(a)=1, m(b)=0,
    # and a </= b' (a, b not orthogonal) needs m(a)=m(b)=1
    full = all(any(s[i] and not s[j] for s in states) for i, j in itertools.permutations(range(n), 2))
    if full and adj is not None:
        full = all(
            any(s[i] and s[j] for s in states)
            for i, j in itertools.combinations(range(n), 2)
            if j not in adj[i]
        )
    if not unital:
        label = NOT_UNITAL
    elif not separating:
        label = NOT_SEPARATING
    else:
        # "full" is reported as a flag; the label follows the separating/full synonymy
        label = SEPARATING
    return Classification(label, unital, separating, full, unseparated)


def classify(ss: StateSet, l: Logic | None = None) -> Classification:
    """Classify a state set; ``l`` only supplies atom names when given."""
    if l is None:
        return _classify(ss.states, ss.atoms)
    return _classify(ss.states, l.atoms, _block_adjacency(l.n_atoms, l.blocks))


@dataclass(frozen=True)
class ParityCertificate:
    applies: bool
    detail: str


def parity_certificate(l: Logic) -> ParityCertificate:
    """Counting argument: every atom in an even number of blocks, odd block count.

    Summing the exactly-one constraints over all blocks counts each true atom
    an even number of times, yet the total must equal the (odd) block count.
    """
    mult = l.multiplicity()
    odd_atoms = [a for a, m in zip(l.atoms, mult) if m % 2]
    nb = len(l.blocks)
    if odd_atoms:
        return ParityCertificate(False, f"atoms with odd multiplicity: {' '.join(odd_atoms)}")
    if nb % 2 == 0:
        return ParityCertificate(False, f"even number of blocks ({nb})")
    return ParityCertificate(
        True,
        f"all {len(l.atoms)} atoms lie in an even number of blocks, but there are {nb} blocks: "
        "no two-valued state",
    )


def states_to_csv(ss: StateSet) -> str:
    buf = io.StringIO()
    buf.write(",".join(ss.atoms) + "\n")
    for s in ss.states:
        buf.write(",".join(str(x) for x in s) + "\n")
    label = ss.classification.label if ss.classification else _classify(ss.states, ss.atoms).label
    buf.write(f"# classification: {label}\n")
    return buf.getvalue()


def states_from_csv(text: str) -> StateSet:
    rows = [r for r in text.splitlines() if r.strip() and not r.startswith("#")]
    atoms = tuple(a.strip() for a in rows[0].split(","))
    states = tuple(tuple(int(x) for x in r.split(",")) for r in rows[1:])
    return StateSet(atoms, states, _classify(states, atoms))
