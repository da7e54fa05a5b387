"""Pasted logics given by their Greechie diagrams.

A :class:`Logic` is a list of atom names and a list of blocks (contexts),
each block a list of atom indices. The tautology and absurdity are implicit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence


class LogicError(ValueError):
    """Malformed logic text or an invalid block structure."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Logic:
    atoms: tuple[str, ...]
    blocks: tuple[tuple[int, ...], ...]
    block_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.block_names is None:
            object.__setattr__(self, "block_names", tuple(f"b{j + 1}" for j in range(len(self.blocks))))
        validate(self)

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def index(self, atom: str) -> int:
        return self.atoms.index(atom)

    def block_atoms(self, j: int) -> list[str]:
        return [self.atoms[i] for i in self.blocks[j]]

    def names(self) -> list[str]:
        return list(self.block_names)

    def multiplicity(self) -> list[int]:
        m = [0] * len(self.atoms)
        for b in self.blocks:
            for i in b:
                m[i] += 1
        return m

    def block_sets(self) -> set[frozenset[str]]:
        """Blocks as sets of atom names (for comparisons up to ordering)."""
        return {frozenset(self.block_atoms(j)) for j in range(len(self.blocks))}


def validate(l: Logic) -> None:
    seen = set()
    for j, b in enumerate(l.blocks):
        if len(b) < 2:
            raise LogicError(f"block {j + 1} has fewer than two atoms")
        if len(set(b)) != len(b):
            raise LogicError(f"duplicate atom in block {j + 1}")
        for i in b:
            if not 0 <= i < len(l.atoms):
                raise LogicError(f"block {j + 1} refers to unknown atom index {i}")
        seen.update(b)
    if len(seen) != len(l.atoms):
        missing = [a for i, a in enumerate(l.atoms) if i not in seen]
        raise LogicError(f"atoms in no block: {' '.join(missing)}")
    if len(set(l.atoms)) != len(l.atoms):
        raise LogicError("duplicate atom names")
    if len(l.block_names) != len(l.blocks) or len(set(l.block_names)) != len(l.block_names):
        raise LogicError("block names must be unique, one per block")
    sets = [frozenset(b) for b in l.blocks]
    for i, s in enumerate(sets):
        for k, t in enumerate(sets):
            if i != k and s <= t:
                what = "duplicates" if s == t else "is a subset of"
                raise LogicError(f"block {i + 1} {what} block {k + 1}")


def from_blocks(
    blocks: Sequence[Sequence[str]],
    names: Sequence[str] | None = None,
    atom_order: Sequence[str] | None = None,
) -> Logic:
    """Build a logic from blocks of atom names.

    Atoms are numbered in first-appearance order unless ``atom_order`` is
    given (it must list exactly the atoms used).
    """
    seen: list[str] = []
    for b in blocks:
        for a in b:
            if a not in seen:
                seen.append(a)
    if atom_order is not None:
        if sorted(atom_order) != sorted(seen):
            raise LogicError("atom order does not list exactly the atoms of the blocks")
        seen = list(atom_order)
    index = {a: i for i, a in enumerate(seen)}
    out = tuple(tuple(index[a] for a in b) for b in blocks)
    return Logic(tuple(seen), out, tuple(names) if names else None)


def _first_appearance(l: Logic) -> list[str]:
    seen: list[str] = []
    for j in range(len(l.blocks)):
        for a in l.block_atoms(j):
            if a not in seen:
                seen.append(a)
    return seen


_ATOM = re.compile(r"[A-Za-z0-9_]+")
_NAME = re.compile(r"\s*([A-Za-z0-9_]+)\s*:")
_ORDER = re.compile(r"\s*#\s*atoms\s*:(.*)$")


def parse_logic(text: str) -> Logic:
    """Parse ``.gdl`` text: one ``name : atom atom ...`` block per line.

    A comment of the form ``# atoms: x y z`` fixes the atom numbering;
    otherwise atoms are numbered in order of first appearance.
    """
    blocks: list[list[str]] = []
    names: list[str] = []
    order = None
    seen_lines: dict[frozenset[str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        pragma = _ORDER.match(raw)
        if pragma:
            order = pragma.group(1).split()
            continue
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _NAME.match(line)
        if m is None:
            col = len(line) - len(line.lstrip()) + 1
            raise LogicError("expected 'name :'", lineno, col)
        name = m.group(1)
        if name in names:
            raise LogicError(f"duplicate block name {name!r}", lineno, m.start(1) + 1)
        atoms: list[str] = []
        pos = m.end()
        for tok in re.finditer(r"\S+", line[pos:]):
            col = pos + tok.start() + 1
            word = tok.group()
            if not _ATOM.fullmatch(word):
                raise LogicError(f"bad atom name {word!r}", lineno, col)
            if word in atoms:
                raise LogicError(f"duplicate atom {word!r} in block", lineno, col)
            atoms.append(word)
        if len(atoms) < 2:
            raise LogicError("a block needs at least two atoms", lineno, m.end() + 1)
        key = frozenset(atoms)
        if key in seen_lines:
            raise LogicError(f"duplicate of block on line {seen_lines[key]}", lineno, 1)
        seen_lines[key] = lineno
        blocks.append(atoms)
        names.append(name)
    if not blocks:
        raise LogicError("no blocks", 1, 1)
    return from_blocks(blocks, names, order)


def render_logic(l: Logic) -> str:
    names = l.names()
    head = ""
    if list(l.atoms) != _first_appearance(l):
        head = f"# atoms: {' '.join(l.atoms)}\n"
    return head + "".join(f"{n} : {' '.join(l.block_atoms(j))}\n" for j, n in enumerate(names))


def paste(logics: Sequence[Logic], identify: Sequence[tuple[str, str]] = ()) -> Logic:
    """Paste logics, merging the atoms named in ``identify``.

    Atom references are written ``k.name`` (``k`` the 0-based position in
    ``logics``); bare names are accepted when unambiguous. Without
    identifications this is the horizontal sum. Atoms that stay distinct but
    share a name across inputs are suffixed with ``_k``.
    """
    nodes = [(k, a) for k, l in enumerate(logics) for a in l.atoms]
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    def resolve(ref: str):
        if "." in ref:
            k, name = ref.split(".", 1)
            node = (int(k), name)
            if node not in parent:
                raise LogicError(f"unknown atom {ref!r}")
            return node
        hits = [n for n in nodes if n[1] == ref]
        if len(hits) != 1:
            raise LogicError(f"atom reference {ref!r} is {'ambiguous' if hits else 'unknown'}")
        return hits[0]

    for left, right in identify:
        a, b = resolve(left), resolve(right)
        if a[0] == b[0]:
            raise LogicError(f"cannot identify {left!r} and {right!r}: same input logic")
        ra, rb = find(a), find(b)
        parent[max(ra, rb)] = min(ra, rb)

    # name each class; keep plain names unless two classes collide
    classes: dict = {}
    for n in nodes:
        classes.setdefault(find(n), []).append(n)
    by_name: dict[str, list] = {}
    for root in classes:
        by_name.setdefault(root[1], []).append(root)
    label = {}
    for name, roots in by_name.items():
        for root in roots:
            label[root] = name if len(roots) == 1 else f"{name}_{root[0]}"

    blocks = []
    names = []
    for k, l in enumerate(logics):
        for j in range(len(l.blocks)):
            merged = [label[find((k, a))] for a in l.block_atoms(j)]
            if len(set(merged)) != len(merged):
                raise LogicError(f"identification merges two atoms of block {l.names()[j]!r}")
            blocks.append(merged)
            names.append(f"{l.names()[j]}" if len(logics) == 1 else f"{l.names()[j]}_{k}")
    return from_blocks(blocks, names)


_BUILTIN_BLOCKS = {
    "mo2": [["E", "Ep"], ["F", "Fp"]],
    "l12": [["a1", "a2", "a5"], ["a3", "a4", "a5"]],
    "bug": [
        ["a1", "a2", "a3"],
        ["a3", "a4", "a5"],
        ["a5", "a6", "a7"],
        ["a7", "a8", "a9"],
        ["a9", "a10", "a11"],
        ["a11", "a12", "a1"],
        ["a4", "a13", "a10"],
    ],
    "triangle": [["A", "B", "C"], ["C", "D", "E"], ["E", "F", "A"]],
    "quadrangle": [["A", "B", "C"], ["C", "D", "E"], ["E", "F", "G"], ["G", "H", "A"]],
    "pentagon": [["A", "B", "C"], ["C", "D", "E"], ["E", "F", "G"], ["G", "H", "I"], ["I", "J", "A"]],
}

# colour names of the bug's blocks, in the column order c1..c7 of its urn table
BUG_BLOCK_NAMES = ["green", "red", "yellow", "magenta", "gray", "blue", "cyan"]

BUILTINS = ("mo2", "l12", "bug", "cabello", "pentagon", "triangle", "quadrangle")


def builtin(name: str) -> Logic:
    """Fixture logics by name (see ``BUILTINS``)."""
    if name == "cabello":
        from .rays import CABELLO_CONTEXTS

        keys = sorted(CABELLO_CONTEXTS)
        return from_blocks([list(CABELLO_CONTEXTS[k]) for k in keys], keys)
    if name not in _BUILTIN_BLOCKS:
        raise LogicError(f"unknown builtin logic {name!r}; choose from {', '.join(BUILTINS)}")
    blocks = _BUILTIN_BLOCKS[name]
    if name == "bug":
        return from_blocks(blocks, BUG_BLOCK_NAMES)
    if name == "l12":
        return from_blocks(blocks, atom_order=["a1", "a2", "a3", "a4", "a5"])
    return from_blocks(blocks)


@dataclass(frozen=True)
class LinkReport:
    atoms: tuple[str, ...]
    memberships: tuple[tuple[int, ...], ...]

    @property
    def counts(self) -> list[int]:
        return [len(m) for m in self.memberships]

    @property
    def links(self) -> list[str]:
        return [a for a, m in zip(self.atoms, self.memberships) if len(m) >= 2]

    def format(self, block_names: Sequence[str]) -> str:
        lines = []
        for a, m in zip(self.atoms, self.memberships):
            tag = " link" if len(m) >= 2 else ""
            lines.append(f"{a} {len(m)} {' '.join(block_names[j] for j in m)}{tag}")
        return "\n".join(lines) + "\n"


def link_report(l: Logic) -> LinkReport:
    member: list[list[int]] = [[] for _ in l.atoms]
    for j, b in enumerate(l.blocks):
        for i in b:
            member[i].append(j)
    return LinkReport(l.atoms, tuple(tuple(m) for m in member))


def isomorphic(l1: Logic, l2: Logic) -> bool:
    """True if the two logics coincide up to relabeling of atoms and blocks."""
    if len(l1.atoms) != len(l2.atoms) or len(l1.blocks) != len(l2.blocks):
        return False
    if sorted(len(b) for b in l1.blocks) != sorted(len(b) for b in l2.blocks):
        return False
    if sorted(l1.multiplicity()) != sorted(l2.multiplicity()):
        return False
    target = {frozenset(b) for b in l2.blocks}
    m1, m2 = l1.multiplicity(), l2.multiplicity()
    mem2 = [set() for _ in l2.atoms]
    for j, b in enumerate(l2.blocks):
        for i in b:
            mem2[i].add(j)
    order = sorted(range(len(l1.atoms)), key=lambda i: -m1[i])
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent() -> bool:
        for b in l1.blocks:
            img = [mapping[i] for i in b if i in mapping]
            if len(img) < 2:
                continue
            if not any(set(img) <= t for t in target):
                return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return {frozenset(mapping[i] for i in b) for b in l1.blocks} == target
        i = order[k]
        for cand in range(len(l2.atoms)):
            if cand in used or m2[cand] != m1[i]:
                continue
            mapping[i] = cand
            used.add(cand)
            if consistent() and search(k + 1):
                return True
            del mapping[i]
            used.discard(cand)
        return False

    return search(0)
