"""Partition logics, generalized urn models and Mealy automata.

The three model types carry the same propositional structure. A partition
logic is built from the two-valued states of a logic by labelling each atom
with the set of states that are 1 on it; urns and automata are synthesized
from the partitions, and converted into each other by plain relabeling.

State labels are 1-based positions in the state list that was passed in.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .logic import Logic, from_blocks
from .states import StateSet

STAR = "*"


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionLogic:
    """Partitions of ``{1..size}``, one per block, with an atom name per cell."""

    size: int
    partitions: tuple[tuple[frozenset[int], ...], ...]
    atom_names: tuple[tuple[str, ...], ...]
    names: tuple[str, ...]
    atom_order: tuple[str, ...] = ()

    def __post_init__(self):
        seen = self._first_appearance()
        if not self.atom_order:
            object.__setattr__(self, "atom_order", tuple(seen))
        elif sorted(self.atom_order) != sorted(seen):
            raise PartitionError("atom order must list every atom exactly once")
        ground = set(range(1, self.size + 1))
        for name, cells in zip(self.names, self.partitions):
            covered: set[int] = set()
            for c in cells:
                if not c:
                    raise PartitionError(f"empty cell in partition {name!r}")
                if covered & c:
                    raise PartitionError(f"cells of partition {name!r} overlap")
                covered |= c
            if covered != ground:
                raise PartitionError(f"partition {name!r} does not cover 1..{self.size}")
        cell_of: dict[str, frozenset[int]] = {}
        for cells, names in zip(self.partitions, self.atom_names):
            if len(cells) != len(names):
                raise PartitionError("every cell needs exactly one atom name")
            for c, a in zip(cells, names):
                if cell_of.setdefault(a, c) != c:
                    raise PartitionError(f"atom {a!r} labels two different cells")

    def cells(self) -> dict[str, frozenset[int]]:
        """Atom name to its set of state labels."""
        out: dict[str, frozenset[int]] = {}
        for cells, names in zip(self.partitions, self.atom_names):
            for c, a in zip(cells, names):
                out.setdefault(a, c)
        return out

    def atoms(self) -> list[str]:
        return list(self.atom_order)

    def _first_appearance(self) -> list[str]:
        seen: list[str] = []
        for names in self.atom_names:
            for a in names:
                if a not in seen:
                    seen.append(a)
        return seen

    def to_logic(self) -> Logic:
        return from_blocks([list(n) for n in self.atom_names], list(self.names), atom_order=list(self.atom_order))


@dataclass(frozen=True)
class UrnModel:
    """Ball types x colours -> symbol lookup table."""

    balls: tuple[str, ...]
    colors: tuple[str, ...]
    table: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(self.table) != len(self.balls) or any(len(r) != len(self.colors) for r in self.table):
            raise PartitionError("lookup table must be total: one symbol per ball and colour")

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(sorted({s for row in self.table for s in row}, key=_natural))

    def lookup(self, ball: str, color: str) -> str:
        return self.table[self.balls.index(ball)][self.colors.index(color)]


@dataclass(frozen=True)
class MealyAutomaton:
    states: tuple[str, ...]
    inputs: tuple[str, ...]
    delta: tuple[tuple[str, ...], ...]
    lam: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        for tab, what in ((self.delta, "transition"), (self.lam, "output")):
            if len(tab) != len(self.states) or any(len(r) != len(self.inputs) for r in tab):
                raise PartitionError(f"{what} function must be total")
        for row in self.delta:
            for s in row:
                if s not in self.states:
                    raise PartitionError(f"transition to unknown state {s!r}")

    @property
    def outputs(self) -> tuple[str, ...]:
        return tuple(sorted({o for row in self.lam for o in row}, key=_natural))

    def output(self, state: str, inp: str) -> str:
        return self.lam[self.states.index(state)][self.inputs.index(inp)]

    def transition(self, state: str, inp: str) -> str:
        return self.delta[self.states.index(state)][self.inputs.index(inp)]


def _natural(s: str):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", s) if t]


def partition_from_states(l: Logic, ss: StateSet | Sequence[Sequence[int]]) -> PartitionLogic:
    """Label each atom by the states true on it; one partition per block."""
    states = list(ss.states if isinstance(ss, StateSet) else ss)
    if not states:
        raise PartitionError("no two-valued states: the logic has no partition representation")
    cell = {
        i: frozenset(k + 1 for k, s in enumerate(states) if s[i] == 1) for i in range(l.n_atoms)
    }
    partitions = []
    names = []
    for j, b in enumerate(l.blocks):
        cells = [cell[i] for i in b]
        if len(set(cells)) != len(cells):
            dup = [l.atoms[i] for i in b if cells.count(cell[i]) > 1]
            raise PartitionError(f"atoms {' '.join(dup)} of block {l.names()[j]!r} have identical state sets")
        partitions.append(tuple(cells))
        names.append(tuple(l.atoms[i] for i in b))
    return PartitionLogic(len(states), tuple(partitions), tuple(names), tuple(l.names()), tuple(l.atoms))


def _symbol(pl: PartitionLogic, j: int, q: int, symbols: str) -> str:
    if symbols == "atom":
        return pl.atom_names[j][q]
    if symbols == "index":
        return str(pl.atoms().index(pl.atom_names[j][q]) + 1)
    if symbols == "rank":
        order = sorted(range(len(pl.partitions[j])), key=lambda c: min(pl.partitions[j][c]))
        return str(order.index(q) + 1)
    raise ValueError(f"unknown symbol scheme {symbols!r}")


def _true_cell(pl: PartitionLogic, j: int, k: int) -> int:
    return next(q for q, c in enumerate(pl.partitions[j]) if k in c)


def urn_from_partition(pl: PartitionLogic, symbols: str = "atom") -> UrnModel:
    """One ball type per state, one colour per partition.

    Ball ``k`` shows, in colour ``j``, the symbol of the atom whose cell
    contains ``k``. ``symbols`` chooses the alphabet: ``"atom"`` (atom
    names), ``"index"`` (1-based atom number) or ``"rank"`` (position of the
    cell within its partition, cells ordered by their smallest state label).
    """
    table = tuple(
        tuple(_symbol(pl, j, _true_cell(pl, j, k), symbols) for j in range(len(pl.partitions)))
        for k in range(1, pl.size + 1)
    )
    return UrnModel(tuple(str(k) for k in range(1, pl.size + 1)), pl.names, table)


def urn_star_table(pl: PartitionLogic) -> list[list[list[str]]]:
    """Sign-colouring scheme padded over all atoms.

    Row ``k``, colour ``j`` is a list over all atoms holding the atom number
    where ball ``k`` carries a sign in that colour and ``*`` elsewhere.
    """
    atoms = pl.atoms()
    rows = []
    for k in range(1, pl.size + 1):
        row = []
        for j in range(len(pl.partitions)):
            q = _true_cell(pl, j, k)
            hit = atoms.index(pl.atom_names[j][q])
            row.append([str(hit + 1) if i == hit else STAR for i in range(len(atoms))])
        rows.append(row)
    return rows


def automaton_from_partition(pl: PartitionLogic, padded: bool = False) -> MealyAutomaton:
    """One automaton state per two-valued state, one input per partition.

    The output on input ``l`` names the atom of partition ``l`` whose cell
    contains the state. With ``padded=True`` the output lists every atom of
    that partition, each replaced by ``*`` unless it is the true one. All
    transitions lead to the first state.
    """
    states = tuple(str(k) for k in range(1, pl.size + 1))
    lam = []
    for k in range(1, pl.size + 1):
        row = []
        for j in range(len(pl.partitions)):
            q = _true_cell(pl, j, k)
            if padded:
                row.append(" ".join(a if i == q else STAR for i, a in enumerate(pl.atom_names[j])))
            else:
                row.append(pl.atom_names[j][q])
        lam.append(tuple(row))
    delta = tuple(tuple(states[0] for _ in pl.names) for _ in states)
    return MealyAutomaton(states, tuple(pl.names), delta, tuple(lam))


def urn_to_automaton(
    u: UrnModel,
    t_s: Mapping[str, str] | None = None,
    t_i: Mapping[str, str] | None = None,
    t_o: Mapping[str, str] | None = None,
) -> MealyAutomaton:
    """Relabel balls, colours and symbols as states, inputs and outputs.

    Defaults: balls keep their names, colour ``j`` becomes input ``str(j)``
    (0-based), symbols keep their names. Every transition goes to the first
    state.
    """
    t_s = dict(t_s) if t_s else {b: b for b in u.balls}
    t_i = dict(t_i) if t_i else {c: str(j) for j, c in enumerate(u.colors)}
    t_o = dict(t_o) if t_o else {v: v for v in u.symbols}
    for m, dom, what in ((t_s, u.balls, "t_S"), (t_i, u.colors, "t_I"), (t_o, u.symbols, "t_O")):
        _check_bijection(m, dom, what)
    states = tuple(t_s[b] for b in u.balls)
    inputs = tuple(t_i[c] for c in u.colors)
    lam = tuple(tuple(t_o[v] for v in row) for row in u.table)
    delta = tuple(tuple(states[0] for _ in inputs) for _ in states)
    return MealyAutomaton(states, inputs, delta, lam)


def automaton_to_urn(
    a: MealyAutomaton,
    tau_u: Mapping[str, str] | None = None,
    tau_c: Mapping[str, str] | None = None,
    tau_l: Mapping[str, str] | None = None,
) -> UrnModel:
    """Inverse construction; the transition function is dropped."""
    tau_u = dict(tau_u) if tau_u else {s: s for s in a.states}
    tau_c = dict(tau_c) if tau_c else {i: i for i in a.inputs}
    tau_l = dict(tau_l) if tau_l else {o: o for o in a.outputs}
    for m, dom, what in ((tau_u, a.states, "tau_U"), (tau_c, a.inputs, "tau_C"), (tau_l, a.outputs, "tau_L")):
        _check_bijection(m, dom, what)
    return UrnModel(
        tuple(tau_u[s] for s in a.states),
        tuple(tau_c[i] for i in a.inputs),
        tuple(tuple(tau_l[o] for o in row) for row in a.lam),
    )


def _check_bijection(m: Mapping[str, str], domain: Sequence[str], what: str) -> None:
    missing = [x for x in domain if x not in m]
    if missing:
        raise PartitionError(f"{what} is undefined on {', '.join(missing)}")
    images = [m[x] for x in domain]
    if len(set(images)) != len(images):
        raise PartitionError(f"{what} is not injective")


def same_up_to_relabeling(t1: Sequence[Sequence[str]], t2: Sequence[Sequence[str]]) -> bool:
    """Tables equal after a bijective renaming of symbols within each column."""
    if len(t1) != len(t2) or any(len(a) != len(b) for a, b in zip(t1, t2)):
        return False
    for col in range(len(t1[0]) if t1 else 0):
        fwd: dict[str, str] = {}
        back: dict[str, str] = {}
        for r1, r2 in zip(t1, t2):
            x, y = r1[col], r2[col]
            if fwd.setdefault(x, y) != y or back.setdefault(y, x) != x:
                return False
    return True


def logic_from_model(m: UrnModel | MealyAutomaton) -> Logic:
    """Empirical logic: per colour (input), group balls (states) by symbol.

    Cells become atoms named ``m`` + the 1-based member indices; equal cells
    under different colours are the same atom. Colours that do not split the
    ball types carry no atoms and are skipped, as are repeated partitions.
    """
    if isinstance(m, MealyAutomaton):
        rows, cols = m.lam, m.inputs
    else:
        rows, cols = m.table, m.colors
    blocks = []
    names = []
    seen = set()
    for j, col in enumerate(cols):
        groups: dict[str, list[int]] = {}
        for k, row in enumerate(rows):
            groups.setdefault(row[j], []).append(k + 1)
        cells = sorted(groups.values())
        if len(cells) < 2:
            continue
        key = frozenset(frozenset(c) for c in cells)
        if key in seen:
            continue
        seen.add(key)
        blocks.append(["m" + "_".join(str(k) for k in c) for c in cells])
        names.append(col)
    return from_blocks(blocks, names)


def _weights(pl: PartitionLogic, kappa) -> dict[int, Fraction]:
    if isinstance(kappa, Mapping):
        w = {int(k): Fraction(v) for k, v in kappa.items()}
    else:
        w = {k + 1: Fraction(v) for k, v in enumerate(kappa)}
    if set(w) - set(range(1, pl.size + 1)):
        raise PartitionError("weights refer to unknown states")
    if any(v < 0 for v in w.values()):
        raise PartitionError("weights must be nonnegative")
    if sum(w.values()) != 1:
        raise PartitionError(f"weights sum to {sum(w.values())}, not 1")
    return w


def uniform(pl: PartitionLogic) -> dict[int, Fraction]:
    return {k: Fraction(1, pl.size) for k in range(1, pl.size + 1)}


def point_mass(pl: PartitionLogic, k: int) -> dict[int, Fraction]:
    return {j: Fraction(int(j == k)) for j in range(1, pl.size + 1)}


def state_probabilities(pl: PartitionLogic, kappa) -> dict[str, Fraction]:
    """Probability of each atom under the convex combination ``kappa`` of states."""
    w = _weights(pl, kappa)
    return {a: sum((w.get(k, Fraction(0)) for k in c), Fraction(0)) for a, c in pl.cells().items()}


def singlet_joint_probability(pl: PartitionLogic, kappa, atoms: Sequence[str]) -> Fraction:
    """Joint probability of ``atoms`` measured on identically prepared copies."""
    w = _weights(pl, kappa)
    cells = pl.cells()
    unknown = [a for a in atoms if a not in cells]
    if unknown:
        raise PartitionError(f"unknown atoms: {' '.join(unknown)}")
    common = set(range(1, pl.size + 1))
    for a in atoms:
        common &= cells[a]
    return sum((w.get(k, Fraction(0)) for k in common), Fraction(0))


# text formats


def format_partition_logic(pl: PartitionLogic) -> str:
    lines = [f"# states: {pl.size}"]
    if list(pl.atom_order) != pl._first_appearance():
        lines.append("# atoms: " + " ".join(pl.atom_order))
    for name, cells, atoms in zip(pl.names, pl.partitions, pl.atom_names):
        parts = ["{" + ",".join(str(k) for k in sorted(c)) + "}=" + a for c, a in zip(cells, atoms)]
        lines.append(f"{name} : " + " ".join(parts))
    return "\n".join(lines) + "\n"


_CELL = re.compile(r"\{([0-9,\s]*)\}(?:=([A-Za-z0-9_]+))?")


def parse_partition_logic(text: str) -> PartitionLogic:
    size = None
    order: tuple[str, ...] = ()
    partitions, atom_names, names = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        m = re.match(r"\s*#\s*states\s*:\s*(\d+)", raw)
        if m:
            size = int(m.group(1))
            continue
        m = re.match(r"\s*#\s*atoms\s*:(.*)$", raw)
        if m:
            order = tuple(m.group(1).split())
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PartitionError(f"line {lineno}: expected 'name : {{..}}{{..}}'")
        name, rest = (x.strip() for x in line.split(":", 1))
        cells, labels = [], []
        for cm in _CELL.finditer(rest):
            cell = frozenset(int(x) for x in cm.group(1).replace(",", " ").split())
            cells.append(cell)
            if cm.group(2):
                labels.append(cm.group(2))
            else:
                labels.append("m" + "_".join(str(k) for k in sorted(cell)))
        if not cells:
            raise PartitionError(f"line {lineno}: no cells")
        partitions.append(tuple(cells))
        atom_names.append(tuple(labels))
        names.append(name)
    if size is None:
        size = max((max(c) for p in partitions for c in p), default=0)
    return PartitionLogic(size, tuple(partitions), tuple(atom_names), tuple(names), order)


def _tsv(header: Sequence[str], rows: Sequence[Sequence[str]], row_names: Sequence[str]) -> str:
    buf = io.StringIO()
    buf.write("\t".join(header) + "\n")
    for name, row in zip(row_names, rows):
        buf.write("\t".join([name, *row]) + "\n")
    return buf.getvalue()


def _read_tsv(text: str):
    rows = [r.split("\t") for r in text.splitlines() if r.strip() and not r.startswith("#")]
    header = rows[0]
    return header, [r[0] for r in rows[1:]], [tuple(r[1:]) for r in rows[1:]]


def format_urn(u: UrnModel) -> str:
    return _tsv(["ball", *u.colors], u.table, u.balls)


def parse_urn(text: str) -> UrnModel:
    header, balls, table = _read_tsv(text)
    return UrnModel(tuple(balls), tuple(header[1:]), tuple(table))


def format_automaton(a: MealyAutomaton) -> str:
    return (
        "# delta\n"
        + _tsv(["state", *a.inputs], a.delta, a.states)
        + "\n# lambda\n"
        + _tsv(["state", *a.inputs], a.lam, a.states)
    )


def parse_automaton(text: str) -> MealyAutomaton:
    sections: dict[str, list[str]] = {}
    current = None
    for line in text.splitlines():
        m = re.match(r"#\s*(delta|lambda)\s*$", line.strip())
        if m:
            current = m.group(1)
            sections[current] = []
        elif current is not None and line.strip():
            sections[current].append(line)
    if set(sections) != {"delta", "lambda"}:
        raise PartitionError("automaton text needs '# delta' and '# lambda' tables")
    hd, sd, delta = _read_tsv("\n".join(sections["delta"]))
    hl, sl, lam = _read_tsv("\n".join(sections["lambda"]))
    if hd != hl or sd != sl:
        raise PartitionError("delta and lambda tables disagree on states or inputs")
    return MealyAutomaton(tuple(sd), tuple(hd[1:]), tuple(delta), tuple(lam))
