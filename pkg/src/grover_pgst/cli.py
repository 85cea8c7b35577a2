"""``grover-pgst`` command line.

Exit status: 0 on success, 1 on usage or input errors, 2 when a PGST
verdict is ``Unknown``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import acceptance, cayley, unitary_cayley
from .algebraic import approx_value, identify_spectrum
from .chebyshev_walk import DEFAULT_TAU_BOUND, DEFAULT_TAU_MAX, fidelity_sweep, pst_check
from .graph_core import Graph, GraphError, discriminant, from_generator, read_edge_list
from .kronecker_relations import DEFAULT_COEFF_BOUND, DEFAULT_PRECISION, SCHEMA_VERSION, decide_pgst_generic
from .spectral import DEFAULT_GROUP_TOL, DEFAULT_SUPPORT_TOL, decompose, eigenvalue_support

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Source:
    graph: Graph
    cayley: cayley.CayleyGraph | None
    label: str

    def vertex(self, text: str) -> int:
        try:
            if self.cayley is not None and "," in text:
                idx = self.cayley.group.index(tuple(int(x) for x in text.split(",")))
            else:
                idx = int(text)
        except (ValueError, cayley.CayleyError, KeyError):
            raise UsageError(f"bad vertex {text!r}") from None
        if not 0 <= idx < self.graph.n:
            raise UsageError(f"vertex {text} out of range 0..{self.graph.n - 1}")
        return idx

    def name(self, idx: int):
        if self.cayley is not None:
            return list(self.cayley.group.elements[idx])
        return idx


def _positive(kind):
    def parse(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value

    return parse


def _precision(text):
    value = int(text)
    if value < 50:
        raise argparse.ArgumentTypeError(f"precision must be at least 50 digits, got {value}")
    return value


def _load_source(args) -> Source:
    chosen = [f for f in ("edge_list", "generator", "group", "circulant", "unitary") if getattr(args, f) is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one graph source: --edge-list, --generator, --group, --circulant or --unitary")
    if args.conn is not None and args.circulant is None:
        raise UsageError("--conn only applies to --circulant")
    try:
        if args.edge_list is not None:
            if not Path(args.edge_list).is_file():
                raise UsageError(f"no such file: {args.edge_list}")
            return Source(read_edge_list(args.edge_list), None, f"edge-list:{args.edge_list}")
        if args.generator is not None:
            return Source(from_generator(args.generator), None, f"generator:{args.generator}")
        if args.unitary is not None:
            cg = unitary_cayley.unitary_cayley_graph(args.unitary)
            return Source(cg.graph, cg, f"unitary:{args.unitary}")
        if args.circulant is not None:
            if args.conn is None:
                raise UsageError("--circulant needs --conn")
            conn = [int(x) for x in args.conn.split(",") if x.strip()]
            cg = cayley.circulant(args.circulant, conn)
            return Source(cg.graph, cg, f"circulant:{args.circulant}:{args.conn}")
        try:
            spec = json.loads(Path(args.group).read_text())
        except FileNotFoundError:
            raise UsageError(f"no such file: {args.group}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.group}: invalid JSON ({exc.msg})") from None
        if not isinstance(spec, dict) or "factors" not in spec or "connection" not in spec:
            raise UsageError(f"{args.group}: expected keys 'factors' and 'connection'")
        cg = cayley.cayley_graph(spec["factors"], spec["connection"])
        return Source(cg.graph, cg, f"group:{args.group}")
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def cmd_spectrum(args) -> int:
    src = _load_source(args)
    disc = discriminant(src.graph)
    dec = decompose(disc, args.group_tol)
    if src.cayley is not None:
        exact_vals = cayley.exact_spectrum(src.cayley)
        exact = [str(next(x for x in exact_vals if abs(approx_value(x) - mu) < 1e-7)) for mu in dec.eigenvalues]
    else:
        found = identify_spectrum(disc.adjacency, disc.degrees, dec.eigenvalues, dec.multiplicities)
        exact = [str(x) for x in found] if found is not None else [None] * len(dec.eigenvalues)
    supports = [set(eigenvalue_support(dec, u, args.support_tol)) for u in range(src.graph.n)]
    doc = {
        "schema": SCHEMA_VERSION,
        "graph": src.label,
        "vertices": src.graph.n,
        "eigenvalues": [
            {
                "value": mu,
                "exact": ex,
                "multiplicity": mult,
                "support": [mu in s for s in supports],
            }
            for mu, ex, mult in zip(dec.eigenvalues, exact, dec.multiplicities)
        ],
        "caveats": list(dec.caveats),
    }
    _emit(_dumps(doc), args.out)
    return EXIT_OK


def cmd_check_pgst(args) -> int:
    src = _load_source(args)
    u, v = src.vertex(args.u), src.vertex(args.v)
    if u == v:
        raise UsageError("u and v must differ")
    if src.cayley is not None:
        verdict = cayley.pgst_check(src.cayley, src.cayley.group.elements[u], src.cayley.group.elements[v], args.precision, args.coeff_bound)
        route = "cayley"
    else:
        dec = decompose(discriminant(src.graph), args.group_tol)
        verdict = decide_pgst_generic(dec, u, v, args.precision, args.coeff_bound, support_tol=args.support_tol)
        route = "spectral"
    doc = verdict.to_dict()
    doc.update(graph=src.label, u=src.name(u), v=src.name(v), route=route)
    _emit(_dumps(doc), args.out)
    return EXIT_UNKNOWN if verdict.outcome == "Unknown" else EXIT_OK


def cmd_check_pst(args) -> int:
    src = _load_source(args)
    u, v = src.vertex(args.u), src.vertex(args.v)
    if u == v:
        raise UsageError("u and v must differ")
    res = pst_check(src.graph, u, v, args.tau_bound)
    doc = {"schema": SCHEMA_VERSION, "graph": src.label, "u": src.name(u), "v": src.name(v), **res.to_dict()}
    _emit(_dumps(doc), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    src = _load_source(args)
    u, v = src.vertex(args.u), src.vertex(args.v)
    keep = args.out is not None or args.format == "csv"
    tr = fidelity_sweep(discriminant(src.graph), u, v, args.tau_max, keep_samples=keep)
    summary = {
        "schema": SCHEMA_VERSION,
        "graph": src.label,
        "u": src.name(u),
        "v": src.name(v),
        "tau_max": tr.tau_max,
        "max_fidelity": tr.max_fidelity,
        "argmax": tr.argmax,
        "empirical": True,
    }
    if args.out is not None:
        Path(args.out).write_text(tr.to_csv())
        summary["trace"] = args.out
    if args.format == "csv" and args.out is None:
        sys.stdout.write(tr.to_csv())
    else:
        _emit(_dumps(summary), None)
    return EXIT_OK


def cmd_unitary_table(args) -> int:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise UsageError("need 2 <= n_min <= n_max")
    lines = ["n,pgst,pst,witness"]
    for n in range(args.n_min, args.n_max + 1):
        pgst, witness = unitary_cayley.decide_pgst(n)
        pst = unitary_cayley.decide_pst(n)
        w = f"{witness[0]};{witness[1]}" if witness else ""
        lines.append(f"{n},{str(pgst).lower()},{str(pst).lower()},{w}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = []
    for crit in acceptance.CRITERIA:
        res = crit()
        results.append(res)
        print(res.line(), flush=True)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    source = argparse.ArgumentParser(add_help=False)
    g = source.add_argument_group("graph source (exactly one)")
    g.add_argument("--edge-list", metavar="PATH", help="text file with one 'u v' pair per line")
    g.add_argument("--generator", metavar="KIND:PARAMS", help="cycle:N, complete:N, path:N, star:N, hypercube:D, petersen, random:N[:P[:SEED]]")
    g.add_argument("--group", metavar="PATH", help='JSON {"factors": [...], "connection": [[...], ...]}')
    g.add_argument("--circulant", metavar="N", type=int, help="circulant on Z_N (needs --conn)")
    g.add_argument("--conn", metavar="LIST", help="comma-separated connection set for --circulant")
    g.add_argument("--unitary", metavar="N", type=int, help="unitary Cayley graph of Z_N")
    t = source.add_argument_group("numerics")
    t.add_argument("--group-tol", type=_positive(float), default=DEFAULT_GROUP_TOL)
    t.add_argument("--support-tol", type=_positive(float), default=DEFAULT_SUPPORT_TOL)
    t.add_argument("--precision", type=_precision, default=DEFAULT_PRECISION, help="decimal digits for relation search")
    t.add_argument("--coeff-bound", type=_positive(int), default=DEFAULT_COEFF_BOUND)
    t.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
    t.add_argument("--format", choices=("json", "csv"), default="json")

    parser = _Parser(prog="grover-pgst", description="Grover-walk state transfer: spectra, fidelities and PGST/PST decisions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[source], help="eigenvalues, multiplicities and vertex supports")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("check-pgst", parents=[source], help="decide pretty good state transfer u -> v")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_check_pgst)

    p = sub.add_parser("check-pst", parents=[source], help="search for perfect state transfer u -> v")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--tau-bound", type=_positive(int), default=DEFAULT_TAU_BOUND, help="periodicity search bound")
    p.set_defaults(func=cmd_check_pst)

    p = sub.add_parser("sweep", parents=[source], help="fidelity trace u -> v over 0..tau-max")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--tau-max", type=_positive(int), default=DEFAULT_TAU_MAX)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("unitary-table", help="PGST/PST table for unitary Cayley graphs")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_unitary_table)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, IndexError, OSError) as exc:
        print(f"grover-pgst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
