"""Command-line frontend: ``contexture <group> <command> [options]``.

Exit codes: 0 success, 1 usage or input error, 2 negative certificate
(no two-valued state, uncolorable ray set, violated inequality).
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
from fractions import Fraction

from . import logic as lg
from . import partition as pt
from . import polytope as po
from . import quantum as qu
from . import rays as ry
from . import states as st
from .exact import ONE, SQRT2, ZERO

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("CONTEXTURE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"CONTEXTURE_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _logic(args) -> lg.Logic:
    if getattr(args, "builtin", None):
        return lg.builtin(args.builtin)
    if getattr(args, "input", None):
        return lg.parse_logic(_read(args.input))
    raise UsageError("give a logic file or --builtin NAME")


def _ray_set(name: str):
    if name == "peres":
        rays = ry.peres_rays()
        return rays, 3
    if name == "cabello":
        rays, _ = ry.cabello_rays()
        return rays, 4
    raise UsageError(f"unknown ray set {name!r}")


def _rays(args):
    if getattr(args, "set", None):
        return _ray_set(args.set)
    if getattr(args, "input", None):
        rays = ry.parse_rays(_read(args.input))
        if not rays:
            raise UsageError("ray file is empty")
        return rays, rays[0].dim
    raise UsageError("give a ray file or --set peres|cabello")


# logic


def cmd_logic_parse(args, out):
    out.write(lg.render_logic(_logic(args)))
    return EXIT_OK


def cmd_logic_validate(args, out):
    l = _logic(args)
    out.write(f"valid: {l.n_atoms} atoms, {len(l.blocks)} blocks\n")
    return EXIT_OK


def cmd_logic_paste(args, out):
    logics = [lg.parse_logic(_read(p)) for p in args.inputs]
    pairs = []
    for spec in args.identify or []:
        if "=" not in spec:
            raise UsageError(f"--identify expects REF=REF, got {spec!r}")
        a, b = spec.split("=", 1)
        pairs.append((a.strip(), b.strip()))
    out.write(lg.render_logic(lg.paste(logics, pairs)))
    return EXIT_OK


def cmd_logic_links(args, out):
    l = _logic(args)
    out.write(lg.link_report(l).format(l.names()))
    return EXIT_OK


# states


def _write_states(ss: st.StateSet, fmt: str, out):
    if fmt == "csv":
        out.write(st.states_to_csv(ss))
        return
    width = max((len(a) for a in ss.atoms), default=1)
    out.write(" ".join(a.rjust(width) for a in ss.atoms) + "\n")
    for s in ss.states:
        out.write(" ".join(str(x).rjust(width) for x in s) + "\n")
    out.write(f"# classification: {ss.classification.label}\n")


def cmd_states_enumerate(args, out):
    threads = _threads(args)
    if args.set or (args.input and args.input.endswith(".rays")):
        rays, dim = _rays(args)
        ss = st.enumerate_ray_states(ry.ortho_graph(rays), dim, threads)
    else:
        ss = st.enumerate_states(_logic(args), threads)
    if not ss.states:
        out.write("no two-valued state\n")
        return EXIT_NEGATIVE
    _write_states(ss, args.format or "csv", out)
    return EXIT_OK


def cmd_states_classify(args, out):
    ss = st.states_from_csv(_read(args.states))
    l = _logic(args) if (args.builtin or args.input) else None
    c = st.classify(ss, l)
    out.write(f"classification: {c.label}\n")
    out.write(f"states: {len(ss.states)}\n")
    for flag in ("unital", "separating", "full"):
        out.write(f"{flag}: {'yes' if getattr(c, flag) else 'no'}\n")
    for a, b in c.unseparated:
        out.write(f"unseparated: {a} {b}\n")
    return EXIT_NEGATIVE if c.label == st.EMPTY else EXIT_OK


def cmd_states_parity(args, out):
    cert = st.parity_certificate(_logic(args))
    out.write(("PARITY CERTIFICATE: " if cert.applies else "no parity certificate: ") + cert.detail + "\n")
    return EXIT_NEGATIVE if cert.applies else EXIT_OK


# rays


def cmd_rays_gen(args, out):
    rays, _ = _rays(args)
    out.write(ry.format_rays(rays))
    return EXIT_OK


def _label(r: ry.Ray, i: int) -> str:
    return r.label if r.label is not None else f"r{i + 1}"


def cmd_rays_ortho(args, out):
    rays, _ = _rays(args)
    g = ry.ortho_graph(rays)
    if args.format == "csv":
        out.write("ray1,ray2\n")
    for i, j in sorted(g.edges):
        sep = "," if args.format == "csv" else " "
        out.write(f"{_label(rays[i], i)}{sep}{_label(rays[j], j)}\n")
    if args.format != "csv":
        out.write(f"# {len(rays)} rays, {len(g.edges)} orthogonal pairs\n")
    return EXIT_OK


def cmd_rays_contexts(args, out):
    rays, dim = _rays(args)
    g = ry.ortho_graph(rays)
    ctx = ry.contexts_from_rays(g, dim)
    n_complete = 0
    for c in ctx:
        complete = len(c) == dim
        n_complete += complete
        if args.complete_only and not complete:
            continue
        out.write(" ".join(_label(rays[i], i) for i in c) + ("" if complete else "  # incomplete") + "\n")
    out.write(f"# {len(ctx)} maximal cliques, {n_complete} complete contexts\n")
    return EXIT_OK


def cmd_rays_ks_check(args, out):
    rays, dim = _rays(args)
    ss = st.enumerate_ray_states(ry.ortho_graph(rays), dim, _threads(args))
    if not ss.states:
        out.write("UNCOLORABLE\n")
        return EXIT_NEGATIVE
    out.write(f"COLORABLE: {len(ss.states)} two-valued states\n")
    return EXIT_OK


DEFAULT_NOR_SEEDS = [(ONE, ZERO, ZERO), (ONE, ONE, ZERO), (SQRT2, ONE, ONE)]


def cmd_rays_nor_closure(args, out):
    if args.input:
        seeds = ry.parse_rays(_read(args.input))
    else:
        seeds = [ry.canonicalize(s) for s in DEFAULT_NOR_SEEDS]
    restrict = _ray_set(args.restrict_set)[0] if args.restrict_set else None
    compare = {ry.canonicalize(r.coords) for r in ry.peres_rays()}
    last = []
    for rnd, rays in enumerate(ry.iter_nor_closure(seeds, args.nonorthogonal_only, restrict)):
        last = rays
        hit = sum(1 for r in rays if r in compare)
        out.write(f"# round {rnd}: {len(rays)} rays, {hit} of the 33 Peres rays\n")
        if rnd >= args.rounds:
            break
    if args.print_rays:
        out.write(ry.format_rays(last))
    return EXIT_OK


# partition


def _pl(args) -> pt.PartitionLogic:
    if args.partition:
        return pt.parse_partition_logic(_read(args.partition))
    l = _logic(args)
    ss = st.enumerate_states(l, _threads(args))
    if not ss.states:
        raise _Negative("no two-valued state: no partition logic")
    return pt.partition_from_states(l, ss)


class _Negative(Exception):
    pass


def _kappa(args, pl):
    if not args.kappa:
        return pt.uniform(pl)
    return [Fraction(x) for x in re.split(r"[,\s]+", args.kappa.strip()) if x]


def cmd_partition_build(args, out):
    out.write(pt.format_partition_logic(_pl(args)))
    return EXIT_OK


def cmd_partition_urn(args, out):
    out.write(pt.format_urn(pt.urn_from_partition(_pl(args), args.symbols)))
    return EXIT_OK


def cmd_partition_automaton(args, out):
    out.write(pt.format_automaton(pt.automaton_from_partition(_pl(args), args.padded)))
    return EXIT_OK


def cmd_partition_to_urn(args, out):
    out.write(pt.format_urn(pt.automaton_to_urn(pt.parse_automaton(_read(args.model)))))
    return EXIT_OK


def cmd_partition_to_automaton(args, out):
    u = pt.parse_urn(_read(args.model))
    t_i = {c: c for c in u.colors} if args.keep_colors else None
    out.write(pt.format_automaton(pt.urn_to_automaton(u, t_i=t_i)))
    return EXIT_OK


def _model(text: str):
    if re.search(r"^#\s*delta", text, re.M):
        return pt.parse_automaton(text)
    return pt.parse_urn(text)


def cmd_partition_to_logic(args, out):
    out.write(lg.render_logic(pt.logic_from_model(_model(_read(args.model)))))
    return EXIT_OK


def cmd_partition_prob(args, out):
    pl = _pl(args)
    probs = pt.state_probabilities(pl, _kappa(args, pl))
    for a in pl.atoms():
        out.write(f"{a}\t{_q(probs[a])}\n")
    return EXIT_OK


def cmd_partition_joint(args, out):
    pl = _pl(args)
    p = pt.singlet_joint_probability(pl, _kappa(args, pl), args.atoms)
    out.write(f"{_q(p)}\n")
    return EXIT_OK


# polytope


def _scheme_or_vertices(args):
    if args.scheme:
        sch = po.EventScheme.parse(args.scheme)
        return sch, list(sch.labels), po.vertices(sch)
    if args.vertices:
        labels, verts = po.parse_vertices_csv(_read(args.vertices))
        return None, labels, verts
    raise UsageError("give --scheme or --vertices FILE")


def cmd_polytope_vertices(args, out):
    _, labels, verts = _scheme_or_vertices(args)
    out.write(po.format_vertices_csv(labels, verts))
    return EXIT_OK


def cmd_polytope_facets(args, out):
    sch, labels, verts = _scheme_or_vertices(args)
    eqs, fcs = po.facets(verts, labels)
    for e in eqs:
        out.write(f"{e}\n")
    for f in fcs:
        out.write(f"{f}\n")
    if args.classes:
        if sch is None:
            raise UsageError("--classes needs --scheme")
        for k, cl in enumerate(po.facet_classes(fcs, sch), 1):
            out.write(f"# class {k}: {len(cl)} facets, representative {cl[0]}\n")
    return EXIT_OK


def _point(text: str) -> dict[str, Fraction]:
    pt_: dict[str, Fraction] = {}
    for item in re.split(r"[,\s]+", text.strip()):
        if not item:
            continue
        if "=" not in item:
            raise UsageError(f"point entries look like label=value, got {item!r}")
        k, v = item.split("=", 1)
        pt_[k.strip()] = Fraction(v.strip())
    return pt_


def cmd_polytope_check(args, out):
    if args.facets:
        ineqs = po.parse_inequalities(_read(args.facets))
    else:
        _, labels, verts = _scheme_or_vertices(args)
        eqs, fcs = po.facets(verts, labels)
        ineqs = eqs + fcs
    results = po.check(ineqs, _point(args.point))
    bad = 0
    for r in results:
        bad += not r.satisfied
        out.write(f"{r}\n")
    out.write(f"# {len(results) - bad} satisfied, {bad} violated\n")
    return EXIT_NEGATIVE if bad else EXIT_OK


def cmd_polytope_state_polytope(args, out):
    l = _logic(args)
    ss = st.enumerate_states(l, _threads(args))
    if not ss.states:
        out.write("no two-valued state\n")
        return EXIT_NEGATIVE
    out.write(po.state_polytope(l, ss).text())
    return EXIT_OK


# quantum

_ANGLE = re.compile(r"^([+-]?)(\d*\.?\d*(?:e[+-]?\d+)?)(\*?pi)?(?:/(\d+\.?\d*))?$", re.I)


def parse_angle(text: str) -> float:
    """Decimal radians or multiples of pi such as ``3pi/4`` or ``-pi/2``."""
    m = _ANGLE.match(text.strip().replace(" ", ""))
    if not m or not (m.group(2).strip(".") or m.group(3)):
        raise UsageError(f"cannot read angle {text!r}")
    sign, num, pi, den = m.groups()
    val = float(num) if num.strip(".") else 1.0
    if pi:
        val *= math.pi
    if den:
        val /= float(den)
    return -val if sign == "-" else val


def _angles(text: str) -> qu.AngleSet:
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != 4:
        raise UsageError("--angles needs four values alpha,beta,gamma,delta")
    return qu.AngleSet(*(parse_angle(p) for p in parts))


def cmd_quantum_eig(args, out):
    a = _angles(args.angles)
    ev = qu.ch_eigenvalues(a)
    resid = float(max(abs(x - y) for x, y in zip(ev, qu.ch_closed_form(a))))
    f = qu.fmt
    if args.format == "csv":
        out.write("alpha,beta,gamma,delta,l1,l2,l3,l4,residual,bound\n")
        out.write(",".join(f(x) for x in (*a.as_tuple(), *ev, resid, qu.BOUND)) + "\n")
    else:
        out.write("angles\t" + " ".join(f(x) for x in a.as_tuple()) + "\n")
        out.write("eigenvalues\t" + " ".join(f(x) for x in ev) + "\n")
        out.write(f"residual\t{f(resid)}\n")
        out.write(f"max\t{f(ev[-1])}\n")
        out.write(f"bound\t{f(qu.BOUND)}\n")
    return EXIT_OK


def cmd_quantum_bound(args, out):
    r = qu.ch_bound(args.family, args.grid)
    f = qu.fmt
    out.write(f"family\t{args.family}\n")
    out.write(f"max\t{f(r.value)}\n")
    out.write("argmax\t" + " ".join(f(x) for x in r.angles.as_tuple()) + "\n")
    out.write(f"bound\t{f(qu.BOUND)}\n")
    out.write(f"gap\t{f(qu.BOUND - r.value)}\n")
    return EXIT_OK


def cmd_quantum_sweep(args, out):
    f = qu.fmt
    sep = "," if args.format == "csv" else "\t"
    out.write(sep.join(["theta", "max_eigenvalue", "closed_form"]) + "\n")
    for t, m, c in qu.theta_sweep(args.samples):
        out.write(sep.join(f(x) for x in (t, m, c)) + "\n")
    return EXIT_OK


def _observable(text: str):
    name, _, rest = text.partition(":")
    vals = [parse_angle(p) for p in re.split(r"[,\s]+", rest.strip()) if p]
    want = {"ch": 4, "q1": 1, "q3": 1, "q13": 2, "sigma": 1}
    if name not in want or len(vals) != want[name]:
        raise UsageError("observable is ch:a,b,g,d | q1:x | q3:x | q13:x,y | sigma:x")
    if name == "ch":
        return qu.ch_operator(vals)
    if name == "q1":
        return qu.q_single_left(vals[0])
    if name == "q3":
        return qu.q_single_right(vals[0])
    if name == "q13":
        return qu.q_joint(*vals)
    return qu.sigma(vals[0])


def _rho(text: str):
    import numpy as np

    if text.startswith("mixed:"):
        n = int(text.split(":", 1)[1])
        return np.eye(n) / n
    if text.startswith("pure:"):
        return qu.pure_state([float(Fraction(x)) for x in re.split(r"[,\s]+", text[5:].strip()) if x])
    return np.loadtxt(text, ndmin=2)


def cmd_quantum_expect(args, out):
    v = qu.born_expectation(_rho(args.rho), _observable(args.observable))
    out.write(f"{qu.fmt(v)}\n")
    return EXIT_OK


# parser


def _add_logic_input(p):
    p.add_argument("input", nargs="?", help="logic file (.gdl); '-' for stdin")
    p.add_argument("--builtin", choices=lg.BUILTINS, help="use a built-in logic")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, help="worker threads (default: $CONTEXTURE_THREADS or CPU count)")
    common.add_argument("--format", choices=("text", "csv"), help="output format")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    parser = _Parser(prog="contexture", description="Quantum logic, contextuality and correlation polytopes.")
    groups = parser.add_subparsers(dest="group", metavar="GROUP", parser_class=_Parser)
    groups.required = True

    def sub(group, name, func, help_):
        p = group.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("logic", help="parse, validate, paste logics")
    s = g.add_subparsers(dest="cmd", metavar="COMMAND", parser_class=_Parser)
    s.required = True
    _add_logic_input(sub(s, "parse", cmd_logic_parse, "read a logic and print it in canonical form"))
    _add_logic_input(sub(s, "validate", cmd_logic_validate, "check a logic's block structure"))
    p = sub(s, "paste", cmd_logic_paste, "paste logics, identifying atoms")
    p.add_argument("inputs", nargs="+", help="logic files")
    p.add_argument("--identify", action="append", metavar="K.A=L.B", help="identify atom A of logic K with B of L")
    _add_logic_input(sub(s, "links", cmd_logic_links, "list block memberships and link atoms"))

    g = groups.add_parser("states", help="two-valued states")
    s = g.add_subparsers(dest="cmd", metavar="COMMAND", parser_class=_Parser)
    s.required = True
    p = sub(s, "enumerate", cmd_states_enumerate, "enumerate all two-valued states")
    _add_logic_input(p)
    p.add_argument("--set", choices=("peres", "cabello"), help="use a built-in ray set")
    p = sub(s, "classify", cmd_states_classify, "classify a state set (CSV)")
    p.add_argument("states", help="states CSV file")
    p.add_argument("--logic", dest="input", help="logic file supplying orthogonality")
    p.add_argument("--builtin", choices=lg.BUILTINS)
    _add_logic_input(sub(s, "parity", cmd_states_parity, "try the parity (counting) certificate"))

    g = groups.add_parser("rays", help="ray sets over Q(sqrt 2)")
    s = g.add_subparsers(dest="cmd", metavar="COMMAND", parser_class=_Parser)
    s.required = True
    for name, func, help_ in (
        ("gen", cmd_rays_gen, "emit a ray set"),
        ("ortho", cmd_rays_ortho, "list orthogonal pairs"),
        ("contexts", cmd_rays_contexts, "list maximal orthogonal cliques"),
        ("ks-check", cmd_rays_ks_check, "decide whether a ray set admits a two-valued state"),
    ):
        p = sub(s, name, func, help_)
        p.add_argument("input", nargs="?", help="ray file (.rays)")
        p.add_argument("--set", choices=("peres", "cabello"), help="use a built-in ray set")
        if name == "contexts":
            p.add_argument("--complete-only", action="store_true", help="only cliques of full size")
    p = sub(s, "nor-closure", cmd_rays_nor_closure, "close seed rays under cross products")
    p.add_argument("input", nargs="?", help="seed ray file (default: (1,0,0), (1,1,0), (sqrt2,1,1))")
    p.add_argument("--rounds", type=int, default=3, help="number of rounds (default 3)")
    p.add_argument("--nonorthogonal-only", action="store_true", help="only combine non-orthogonal pairs")
    p.add_argument("--restrict-set", choices=("peres", "cabello"), help="discard rays outside this set")
    p.add_argument("--print-rays", action="store_true", help="print the final ray set")

    g = groups.add_parser("partition", help="partition logics, urns and automata")
    s = g.add_subparsers(dest="cmd", metavar="COMMAND", parser_class=_Parser)
    s.required = True

    def pl_input(p):
        _add_logic_input(p)
        p.add_argument("--partition", help="read a partition logic file instead of a logic")

    pl_input(sub(s, "build", cmd_partition_build, "partition logic from the two-valued states"))
    p = sub(s, "urn", cmd_partition_urn, "synthesize a generalized urn model")
    pl_input(p)
    p.add_argument("--symbols", choices=("atom", "index", "rank"), default="atom", help="symbol per cell")
    p = sub(s, "automaton", cmd_partition_automaton, "synthesize a Mealy automaton")
    pl_input(p)
    p.add_argument("--padded", action="store_true", help="per-atom output with * for false atoms")
    for name, func, help_ in (
        ("to-urn", cmd_partition_to_urn, "convert an automaton to an urn model"),
        ("to-automaton", cmd_partition_to_automaton, "convert an urn model to an automaton"),
        ("to-logic", cmd_partition_to_logic, "read off the logic of an urn or automaton"),
    ):
        p = sub(s, name, func, help_)
        p.add_argument("model", help="model file")
        if name == "to-automaton":
            p.add_argument("--keep-colors", action="store_true", help="use colour names as inputs (default: 0, 1, ...)")
    p = sub(s, "prob", cmd_partition_prob, "atom probabilities for a mixture of states")
    pl_input(p)
    p.add_argument("--kappa", help="comma-separated weights (default uniform)")
    p = sub(s, "joint", cmd_partition_joint, "joint probability on identically prepared copies")
    pl_input(p)
    p.add_argument("--atoms", nargs="+", required=True)
    p.add_argument("--kappa", help="comma-separated weights (default uniform)")

    g = groups.add_parser("polytope", help="correlation polytopes")
    s = g.add_subparsers(dest="cmd", metavar="COMMAND", parser_class=_Parser)
    s.required = True
    for name, func, help_ in (
        ("vertices", cmd_polytope_vertices, "vertices of a correlation polytope"),
        ("facets", cmd_polytope_facets, "exact facets and equalities"),
        ("check", cmd_polytope_check, "evaluate inequalities at a point"),
    ):
        p = sub(s, name, func, help_)
        p.add_argument("--scheme", help="bipartite event scheme such as 2-2")
        p.add_argument("--vertices", help="vertex CSV file")
        if name == "facets":
            p.add_argument("--classes", action="store_true", help="group facets by index/side symmetry")
        if name == "check":
            p.add_argument("--facets", help="inequality file (instead of computing them)")
            p.add_argument("--point", required=True, help="label=value list, e.g. p=9/10,q=7/10,pq=2/5")
    _add_logic_input(sub(s, "state-polytope", cmd_polytope_state_polytope, "hull of the two-valued states"))

    g = groups.add_parser("quantum", help="Clauser-Horne operator for two qubits")
    s = g.add_subparsers(dest="cmd", metavar="COMMAND", parser_class=_Parser)
    s.required = True
    p = sub(s, "eig", cmd_quantum_eig, "eigenvalues of the CH operator")
    p.add_argument("--angles", required=True, help="alpha,beta,gamma,delta (radians or k*pi/n)")
    p = sub(s, "bound", cmd_quantum_bound, "maximize the largest eigenvalue")
    p.add_argument("--family", choices=("free", "theta"), default="free")
    p.add_argument("--grid", type=int, default=64)
    p = sub(s, "sweep", cmd_quantum_sweep, "theta-family curve")
    p.add_argument("--samples", type=int, default=65)
    p = sub(s, "expect", cmd_quantum_expect, "Born-rule expectation tr(rho A)")
    p.add_argument("--rho", required=True, help="mixed:N, pure:v1,v2,..., or a whitespace matrix file")
    p.add_argument("--observable", required=True, help="ch:a,b,g,d | q1:x | q3:x | q13:x,y | sigma:x")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                return args.func(args, fh)
        return args.func(args, stdout)
    except _Negative as exc:
        print(exc, file=stdout)
        return EXIT_NEGATIVE
    except (UsageError, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"contexture: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
