"""``ust`` command line: JSON in, JSON out.

Graphs come from a JSON file (``-`` for stdin) shaped like
``{"vertices": 5, "edges": [{"u": 0, "v": 1, "w": "3/2"}, ...]}`` or
``{"family": "torus", "n": 3}``, or from ``--family NAME --n N``.  Edges are
referred to as ``e<k>``, k being the position in the edge list.

Exit status is 0 on success and 2 on bad input or a domain error, with a
JSON error object on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .events import CylinderEvent
from .graph import FAMILIES, Graph, GraphError, as_weight, build_graph, generate_family, torus_vertex
from .harmonic import effective_resistance, hitting_voltage, torus_potential_table, unit_current_potential
from .limits import (
    RootedTree,
    gw_tree_moment,
    incipient_cluster_sample,
    incipient_tree_moment,
    kn_degree_pmf,
    falling_factorial_moment,
    poisson_plus_one_pmf,
    spanning_tree_entropy_finite,
    spanning_tree_entropy_integral,
    temperley_matching,
)
from .linalg import use_exact
from .oracle import bitree_weight_sum, brute_cylinder_prob, enumerate_spanning_trees, matrix_tree_count
from .sampler import aldous_broder, sample_frequencies, sample_tree_census
from .transfer import impedance_matrix, prob_cylinder, prob_cylinder_weighted

EXIT_OK = 0
EXIT_ERROR = 2


class InputError(ValueError):
    """Malformed command-line or graph input."""


# ---- graph input -----------------------------------------------------------

def _parse_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def graph_from_obj(obj: Any, source: str = "<graph>") -> Graph:
    if not isinstance(obj, dict):
        raise InputError(f"{source}: expected a JSON object")
    if "family" in obj:
        fam, n = obj.get("family"), obj.get("n")
        if fam not in FAMILIES:
            raise InputError(f"{source}: family: unknown family {fam!r}")
        if not isinstance(n, int) or isinstance(n, bool):
            raise InputError(f"{source}: n: expected an integer")
        return generate_family(fam, n)
    nv = obj.get("vertices")
    if not isinstance(nv, int) or isinstance(nv, bool) or nv < 1:
        raise InputError(f"{source}: vertices: expected a positive integer")
    edges = obj.get("edges")
    if not isinstance(edges, list):
        raise InputError(f"{source}: edges: expected a list")
    items = []
    for k, e in enumerate(edges):
        where = f"{source}: edges[{k}]"
        if not isinstance(e, dict) or "u" not in e or "v" not in e:
            raise InputError(f"{where}: expected an object with u and v")
        for key in ("u", "v"):
            x = e[key]
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < nv:
                raise InputError(f"{where}.{key}: vertex {x!r} out of range")
        try:
            w = as_weight(e.get("w", 1))
        except GraphError as exc:
            raise InputError(f"{where}.w: {exc}") from exc
        items.append((e["u"], e["v"], w))
    return build_graph(nv, items)


def load_graph(path: str | None, family: str | None, n: int | None) -> Graph:
    if family is not None:
        if path is not None:
            raise InputError("give either a graph file or --family, not both")
        if n is None:
            raise InputError("--family needs --n")
        return graph_from_obj({"family": family, "n": n}, "--family")
    if path is None:
        raise InputError("no graph given; pass a JSON file, '-' or --family/--n")
    if path == "-":
        return graph_from_obj(_parse_json(sys.stdin.read(), "<stdin>"), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    return graph_from_obj(_parse_json(text, path), path)


def parse_edge_refs(text: str | None, g: Graph | None = None) -> tuple[int, ...]:
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if len(tok) < 2 or tok[0] != "e" or not tok[1:].isdigit():
            raise InputError(f"bad edge reference {tok!r}; expected e<k>")
        k = int(tok[1:])
        if g is not None and not g.has_edge(k):
            raise InputError(f"edge {tok} does not exist")
        out.append(k)
    return tuple(out)


def edge_ref(k: int) -> str:
    return f"e{k}"


# ---- output ----------------------------------------------------------------

class _Float:
    __slots__ = ("text",)

    def __init__(self, x: float):
        self.text = format(x, ".17g")


def render(x: Any) -> Any:
    """Fractions become "p/q" strings (integers as "n"); floats keep 17 digits."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return _Float(x)
    if hasattr(x, "item") and not hasattr(x, "__len__"):  # numpy scalar
        return render(x.item())
    if isinstance(x, dict):
        return {str(k): render(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [render(v) for v in x]
    raise TypeError(f"cannot render {type(x).__name__}")


def dumps(payload: dict) -> str:
    floats: list[str] = []

    def default(o):
        if isinstance(o, _Float):
            floats.append(o.text)
            return f"\x00{len(floats) - 1}\x00"
        raise TypeError(type(o).__name__)

    text = json.dumps(render(payload), default=default)
    for i, f in enumerate(floats):
        text = text.replace(f'"\\u0000{i}\\u0000"', f, 1)
    return text


def _numeric(x, exact: bool):
    return x if exact or not isinstance(x, Fraction) else float(x)


# ---- commands --------------------------------------------------------------

def _mode(args, size: int) -> bool:
    if args.exact:
        return True
    if getattr(args, "float", False):
        return False
    env = os.environ.get("UST_NUMERIC", "").strip().lower()
    if env in ("exact", "float"):
        return env == "exact"
    if env:
        raise InputError(f"UST_NUMERIC must be 'exact' or 'float', got {env!r}")
    return use_exact(size, None)


def _graph(args) -> Graph:
    return load_graph(args.graph, args.family, args.n)


def cmd_count(args):
    g = _graph(args)
    return {"count": matrix_tree_count(g)}, True


def cmd_enumerate(args):
    g = _graph(args)
    en = enumerate_spanning_trees(g)
    trees = [[edge_ref(e) for e in t] for t in en.trees]
    return {"trees": trees, "count": len(trees), "total_weight": en.total_weight}, True


def cmd_prob(args):
    g = _graph(args)
    ev = CylinderEvent(parse_edge_refs(args.include, g), parse_edge_refs(args.exclude, g))
    ex = _mode(args, g.vertex_count)
    method = args.method
    if method == "auto":
        method = "det" if g.is_unweighted else "weighted"
    if method == "det":
        p = prob_cylinder(g, ev, exact=ex)
    elif method == "weighted":
        p = prob_cylinder_weighted(g, ev)
    else:
        p = brute_cylinder_prob(g, ev)
    return {"p": _numeric(p, ex), "method": method}, ex


def cmd_sample(args):
    g = _graph(args)
    if args.census:
        return _census(args, g)
    if args.trials == 1:
        t = aldous_broder(g, args.start, args.seed)
        return {
            "root": t.root,
            "tree": [edge_ref(e) for e in t.edges],
            "arrows": [list(a) for a in t.arrows()],
        }, False
    freq = sample_frequencies(g, args.trials, args.seed, args.start)
    return {"trials": args.trials, "frequencies": {edge_ref(e): f for e, f in freq.items()}}, False


def _census(args, g: Graph):
    c = sample_tree_census(g, args.trials, args.seed, args.start)
    census = {k: c[k] for k in sorted(c)}
    return {"trials": args.trials, "categories": len(census), "census": census}, False


def cmd_census(args):
    return _census(args, _graph(args))


def cmd_resistance(args):
    g = _graph(args)
    ex = _mode(args, g.vertex_count)
    return {"resistance": effective_resistance(g, args.a, args.b, exact=ex)}, ex


def cmd_voltage(args):
    g = _graph(args)
    ex = _mode(args, g.vertex_count)
    if args.unit_current:
        pot = unit_current_potential(g, args.source, args.sink, exact=ex)
    else:
        pot = hitting_voltage(g, args.source, args.sink, exact=ex)
    out = {"voltages": {str(v): x for v, x in enumerate(pot.values)}}
    if args.torus_table is not None:
        n = args.torus_table
        if n * n != g.vertex_count:
            raise InputError(f"--torus-table {n} needs {n * n} vertices")
        out["table"] = [[pot.values[torus_vertex(n, i, j)] for i in range(n)] for j in reversed(range(n))]
    return out, ex


def cmd_impedance(args):
    g = _graph(args)
    ids = parse_edge_refs(args.edges, g)
    if not ids:
        raise InputError("--edges needs at least one edge")
    ex = _mode(args, g.vertex_count)
    m = impedance_matrix(g, list(ids), ex)
    return {"edges": [edge_ref(e) for e in ids], "matrix": m.as_lists(), "det": m.det()}, ex


def cmd_torus_potential(args):
    table = torus_potential_table(args.size)
    n = args.size
    # rows printed top first, like the grid drawings
    rows = [table[j] for j in reversed(range(n))]
    top = table[0][0]
    return {"n": n, "unit_current": rows, "one_volt": [[v / top for v in r] for r in rows]}, False


def cmd_kn_degree(args):
    pmf = kn_degree_pmf(args.size)
    return {
        "n": args.size,
        "pmf": pmf,
        "factorial_moments": {r: falling_factorial_moment(pmf, r) for r in (1, 2, 3)},
        "poisson_plus_one": {k: poisson_plus_one_pmf(k) for k in pmf},
    }, True


def _tree_arg(text: str) -> RootedTree:
    try:
        return RootedTree.from_parens(text)
    except ValueError as exc:
        raise InputError(f"--tree: {exc}") from exc


def cmd_gw_moment(args):
    t = _tree_arg(args.tree)
    est = gw_tree_moment(t, args.samples, args.seed)
    return {"tree": t.to_parens(), "samples": est.samples, "mean": est.mean, "stderr": est.stderr}, False


def cmd_entropy(args):
    if args.integral:
        return {"grid": args.grid, "entropy": spanning_tree_entropy_integral(args.grid)}, False
    return {"n": args.size, "entropy": spanning_tree_entropy_finite(args.size)}, False


def cmd_domino(args):
    tiling = temperley_matching(args.m, parse_edge_refs(args.tree))
    return {"m": args.m, "dominoes": [[list(a), list(b)] for a, b in tiling.dominoes]}, True


def cmd_incipient(args):
    if args.tree is not None:
        t = _tree_arg(args.tree)
        est = incipient_tree_moment(t, args.r, args.samples, args.seed)
        return {"r": args.r, "tree": t.to_parens(), "samples": est.samples,
                "mean": est.mean, "stderr": est.stderr}, False
    t = incipient_cluster_sample(args.r, args.seed)
    return {"r": args.r, "tree": t.to_parens(), "size": t.size, "height": t.height,
            "root_degree": t.root_degree}, True


def cmd_bitrees(args):
    g = _graph(args)
    return {"bitree_sum": bitree_weight_sum(g, args.a, args.b)}, True


# ---- argument parsing ------------------------------------------------------

def _add_graph(p):
    p.add_argument("graph", nargs="?", help="graph JSON file, or '-' for stdin")
    p.add_argument("--family", choices=sorted(FAMILIES))
    p.add_argument("--n", type=int)


def _add_mode(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="rational arithmetic")
    g.add_argument("--float", action="store_true", help="floating point")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ust", description="Uniform spanning tree toolkit.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="total spanning-tree weight")
    _add_graph(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list every spanning tree")
    _add_graph(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("prob", help="probability of a cylinder event")
    _add_graph(p)
    _add_mode(p)
    p.add_argument("--in", dest="include", default="", help="edges required in the tree")
    p.add_argument("--out", dest="exclude", default="", help="edges required out of the tree")
    p.add_argument("--method", choices=("auto", "det", "weighted", "brute"), default="auto")
    p.set_defaults(func=cmd_prob)

    helps = {"sample": "random-walk spanning tree samples", "census": "counts of each sampled tree"}
    for name, census in (("sample", False), ("census", True)):
        p = sub.add_parser(name, help=helps[name])
        _add_graph(p)
        p.add_argument("--start", type=int, default=0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=1)
        if census:
            p.set_defaults(func=cmd_census)
        else:
            p.add_argument("--census", action="store_true", help="count whole trees")
            p.set_defaults(func=cmd_sample)

    p = sub.add_parser("resistance", help="effective resistance between two vertices")
    _add_graph(p)
    _add_mode(p)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_resistance)

    p = sub.add_parser("voltage", help="voltages with source at 1 and sink at 0")
    _add_graph(p)
    _add_mode(p)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--sink", type=int, required=True)
    p.add_argument("--unit-current", action="store_true", help="unit current, sink grounded")
    p.add_argument("--torus-table", type=int, metavar="N", help="also lay values out as an N x N table")
    p.set_defaults(func=cmd_voltage)

    p = sub.add_parser("impedance", help="transfer impedance matrix")
    _add_graph(p)
    _add_mode(p)
    p.add_argument("--edges", required=True)
    p.set_defaults(func=cmd_impedance)

    p = sub.add_parser("torus-potential", help="Fourier potential on the n x n torus")
    p.add_argument("size", type=int, metavar="n")
    p.set_defaults(func=cmd_torus_potential)

    p = sub.add_parser("kn-degree", help="exact tree-degree law on K_n")
    p.add_argument("size", type=int, metavar="n")
    p.set_defaults(func=cmd_kn_degree)

    p = sub.add_parser("gw-moment", help="Galton-Watson tree moment")
    p.add_argument("--tree", required=True, help='parenthesis encoding, e.g. "(()())"')
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gw_moment)

    p = sub.add_parser("entropy", help="spanning-tree entropy")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", dest="size", type=int)
    g.add_argument("--integral", action="store_true")
    p.add_argument("--grid", type=int, default=1024)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("domino", help="domino tiling of a grid spanning tree")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tree", required=True, help="edge references, e.g. e0,e2,e3")
    p.set_defaults(func=cmd_domino)

    p = sub.add_parser("incipient", help="incipient infinite cluster sample")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tree", help="estimate this tree moment instead of printing a sample")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_incipient)

    p = sub.add_parser("bitrees", help="total weight of two-component forests splitting a and b")
    _add_graph(p)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_bitrees)
    return ap


def _fail(code: str, message: str) -> int:
    print(json.dumps({"error": code, "message": message}), file=sys.stderr)
    return EXIT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, exact = args.func(args)
    except InputError as exc:
        return _fail("input", str(exc))
    except GraphError as exc:
        return _fail("graph", str(exc))
    except (ValueError, ArithmeticError, OverflowError) as exc:
        return _fail("domain", str(exc))
    out = {"command": args.command, **payload, "numeric_mode": "exact" if exact else "float",
           "version": __version__}
    print(dumps(out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
