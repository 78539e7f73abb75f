"""Command-line interface: ``sr-opt <subcommand> ...``.

Exit codes: 0 success, 1 unsolvable instance, 2 usage or validation
error, 3 a search budget or enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Sequence

from . import generators as gen
from . import oracle
from .core import (
    Instance,
    Matching,
    egalitarian_costs,
    embed_sm,
    format_costs,
    format_instance,
    format_sm,
    parse_costs,
    parse_instance,
    parse_sm,
)
from .engine import DEFAULT_TABLE_CAP, discover_rotations, solve
from .errors import LimitError, SrOptError, ValidationError
from .mco import DEFAULT_K_MAX, McoResult, min_crossing_orientation, to_almost_2sat
from .optimizer import OptimalResult, optimal_stable_matching
from .poset import (
    MirrorPoset,
    crossing_edges,
    format_mirror_poset,
    label,
    parse_mirror_poset,
    subset_labels,
    to_dot,
)

EXIT_OK = 0
EXIT_UNSOLVABLE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_instance(path: str) -> Instance:
    """Read an ``sr`` file, or an ``sm`` file which is embedded as SR."""
    text = _read(path)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            if line.split()[0] == "sm":
                return embed_sm(parse_sm(text))
            break
    return parse_instance(text)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _unsolvable(report: str) -> int:
    if report == "json":
        _emit({"status": "unsolvable"})
    else:
        print("unsolvable")
    return EXIT_UNSOLVABLE


def _pairs(m: Matching) -> list[list[int]]:
    return [list(p) for p in m.pairs()]


def _poset_names(p: MirrorPoset, names: Sequence[str] | None) -> list[str]:
    return list(names) if names else [label(e) for e in range(p.size)]


def _mco_report(res: McoResult, names: Sequence[str] | None = None) -> dict:
    o = res.orientation
    names = _poset_names(o.base, names)
    return {
        "k": res.crossings,
        "base": subset_labels(o.neg, names),
        "crossing_edges": [[names[a], names[b]] for a, b in crossing_edges(o)],
    }


def _print_mco(res: McoResult, report: str, names: Sequence[str] | None = None) -> None:
    rep = _mco_report(res, names)
    if report == "json":
        _emit(rep)
        return
    print(f"k={rep['k']}")
    print("base: " + " ".join(rep["base"]))
    for a, b in rep["crossing_edges"]:
        print(f"crossing: {a} -> {b}")


def _optimal_report(res: OptimalResult) -> dict:
    u = res.universe
    names = [f"r{r + 1}" for r in u.rotation_of] if u else None
    return {
        "status": "ok",
        "matching": _pairs(res.matching),
        "cost": res.cost,
        "k": res.k,
        "maximal_count": res.maximal_count,
        "per_interval": [
            {"maximal": subset_labels(t, names), "cost": cost} for t, cost in res.per_interval
        ],
    }


# -- subcommands ----------------------------------------------------------


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    m = solve(inst)
    if m is None:
        return _unsolvable(args.report)
    if args.report == "json":
        _emit({"status": "ok", "matching": _pairs(m)})
    else:
        for a, b in m.pairs():
            print(a, b)
    return EXIT_OK


def cmd_rotations(args) -> int:
    inst = load_instance(args.instance)
    u = discover_rotations(inst, max_tables=args.max_tables)
    if u is None:
        return _unsolvable("json")
    rots = []
    for i, rho in enumerate(u.rotations):
        rots.append(
            {
                "id": i + 1,
                "cycle": rho.to_json(),
                "kind": "singular" if i in u.singular else "non-singular",
                "dual": u.dual[i] + 1 if i in u.dual else None,
            }
        )
    _emit(
        {
            "rotations": rots,
            "order": [[a + 1, b + 1] for a, b in u.order],
            "fixed_pairs": [[a + 1, b + 1] for a, b in u.fixed_pairs],
        }
    )
    if args.dot:
        names = [f"r{r + 1}" for r in u.rotation_of]
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(u.reduced, names=names))
    return EXIT_OK


def _costs(args, inst: Instance):
    if args.cost:
        return parse_costs(_read(args.cost), inst)
    return egalitarian_costs(inst)


def cmd_optimal(args) -> int:
    inst = load_instance(args.instance)
    c = _costs(args, inst)
    res = optimal_stable_matching(inst, c, k_max=args.kmax, max_tables=args.max_tables)
    if res is None:
        return _unsolvable(args.report)
    rep = _optimal_report(res)
    if args.report == "json":
        _emit(rep)
    else:
        print(f"cost={rep['cost']} k={rep['k']} intervals={rep['maximal_count']}")
        for a, b in rep["matching"]:
            print(a, b)
    return EXIT_OK


def _load_poset(args) -> tuple[MirrorPoset, list[str] | None] | None:
    if args.poset:
        return parse_mirror_poset(_read(args.poset)), None
    if not args.instance:
        raise ValidationError("give an instance file or --poset")
    u = discover_rotations(load_instance(args.instance), max_tables=args.max_tables)
    if u is None:
        return None
    return u.reduced, [f"r{r + 1}" for r in u.rotation_of]


def cmd_mco(args) -> int:
    loaded = _load_poset(args)
    if loaded is None:
        return _unsolvable(args.report)
    p, names = loaded
    if args.emit_2sat is not None:
        inst = to_almost_2sat(p, args.emit_2sat, all_soft=args.all_soft)
        sys.stdout.write(inst.to_text())
        return EXIT_OK
    res = min_crossing_orientation(p, args.kmax)
    _print_mco(res, args.report, names)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(p, res.orientation, names=names))
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.what == "mco":
        loaded = _load_poset(args)
        if loaded is None:
            return _unsolvable(args.report)
        p, names = loaded
        k, o = oracle.mco_bruteforce(p)
        _print_mco(McoResult(o, k, k), args.report, names)
        return EXIT_OK
    if not args.instance:
        raise ValidationError(f"oracle {args.what} needs an instance file")
    inst = load_instance(args.instance)
    if args.what == "solve":
        ms = oracle.all_stable_matchings_bruteforce(inst)
        if not ms:
            return _unsolvable(args.report)
        if args.report == "json":
            _emit({"status": "ok", "stable_matchings": [_pairs(m) for m in ms]})
        else:
            for m in ms:
                print(" ".join(f"{a}-{b}" for a, b in m.pairs()))
        return EXIT_OK
    c = _costs(args, inst)
    best = oracle.optimal_bruteforce(inst, c)
    if best is None:
        return _unsolvable(args.report)
    m, cost = best
    if args.report == "json":
        _emit({"status": "ok", "matching": _pairs(m), "cost": cost})
    else:
        print(f"cost={cost}")
        for a, b in m.pairs():
            print(a, b)
    return EXIT_OK


def _graph(text: str, seed: int):
    name, _, arg = text.partition(":")
    if name == "k4":
        return gen.complete_graph(4)
    if name == "petersen":
        return gen.petersen_graph()
    if name == "k33":
        return gen.complete_bipartite_33()
    if name == "prism":
        return gen.prism_graph(int(arg or 3))
    if name == "cubic":
        return gen.random_cubic_graph(seed, int(arg or 8))
    raise ValidationError(f"unknown graph {text!r} (k4, petersen, k33, prism:K, cubic:N)")


def cmd_gen(args) -> int:
    if args.kind == "sr":
        sys.stdout.write(format_instance(gen.gen_random_sr(args.seed, args.n)))
    elif args.kind == "solvable":
        inst, tries = gen.sample_solvable_sr(args.seed, args.n)
        sys.stdout.write(f"# seed {args.seed}, accepted after {tries} draws\n")
        sys.stdout.write(format_instance(inst))
    elif args.kind == "sm":
        sys.stdout.write(format_sm(gen.gen_random_sm(args.seed, args.n)))
    elif args.kind == "costs":
        if args.instance:
            inst = load_instance(args.instance)
        else:
            inst = gen.gen_solvable_sr(args.seed, args.n)
        sys.stdout.write(format_costs(gen.gen_random_costs(args.seed, inst)))
    elif args.kind == "gadget":
        n, edges = _graph(args.graph, args.seed)
        sys.stdout.write(format_mirror_poset(gen.mvc_gadget_poset(n, edges)))
    elif args.kind == "sweep":
        return _sweep(args)
    return EXIT_OK


def _sweep(args) -> int:
    """Distribution of minimum crossing distance over a range of seeds."""
    hist: Counter = Counter()
    unsolvable = 0
    for seed in range(args.seed, args.seed + args.count):
        u = discover_rotations(gen.gen_random_sr(seed, args.n), max_tables=args.max_tables)
        if u is None:
            unsolvable += 1
            continue
        hist[min_crossing_orientation(u.reduced, args.kmax).crossings] += 1
    rep = {
        "n": args.n,
        "seeds": [args.seed, args.seed + args.count - 1],
        "unsolvable": unsolvable,
        "k_histogram": {str(k): hist[k] for k in sorted(hist)},
    }
    _emit(rep)
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sr-opt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def instance_arg(p, optional=False):
        if optional:
            p.add_argument("instance", nargs="?", help="sr or sm file ('-' for stdin)")
        else:
            p.add_argument("instance", help="sr or sm file ('-' for stdin)")
        p.add_argument("--max-tables", type=int, default=DEFAULT_TABLE_CAP)

    def report_arg(p, default="text"):
        p.add_argument("--report", choices=["json", "text"], default=default)

    p = sub.add_parser("solve", help="one stable matching via Irving's algorithm")
    instance_arg(p)
    report_arg(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("rotations", help="rotations, their order, and fixed pairs as JSON")
    instance_arg(p)
    p.add_argument("--dot", help="write the reduced poset's Hasse diagram here")
    p.set_defaults(func=cmd_rotations)

    p = sub.add_parser("optimal", help="minimum-cost stable matching")
    instance_arg(p)
    p.add_argument("--cost", help="cost file (default: egalitarian)")
    p.add_argument("--kmax", type=int, default=DEFAULT_K_MAX)
    report_arg(p, "json")
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("mco", help="minimum crossing orientation")
    instance_arg(p, optional=True)
    p.add_argument("--poset", help="mirror-poset file instead of an instance")
    p.add_argument("--kmax", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--emit-2sat", type=int, metavar="BUDGET", nargs="?", const=0, default=None,
                   help="print the Almost 2-SAT encoding for this budget and stop")
    p.add_argument("--all-soft", action="store_true",
                   help="encode type-1 clauses as budget+1 soft copies")
    p.add_argument("--dot", help="write the oriented Hasse diagram here")
    report_arg(p)
    p.set_defaults(func=cmd_mco)

    p = sub.add_parser("oracle", help="brute-force counterparts of solve, optimal, mco")
    p.add_argument("what", choices=["solve", "optimal", "mco"])
    instance_arg(p, optional=True)
    p.add_argument("--cost")
    p.add_argument("--poset")
    report_arg(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="seeded generators and the seed-sweep report")
    p.add_argument("kind", choices=["sr", "solvable", "sm", "costs", "gadget", "sweep"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=10, help="agents (sr), men (sm)")
    p.add_argument("--graph", default="k4", help="gadget graph: k4, petersen, k33, prism:K, cubic:N")
    p.add_argument("--count", type=int, default=100, help="seeds in a sweep")
    p.add_argument("--instance", help="costs: build for this instance file")
    p.add_argument("--kmax", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--max-tables", type=int, default=DEFAULT_TABLE_CAP)
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LimitError as exc:
        print(f"sr-opt: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (SrOptError, ValueError, OSError) as exc:
        print(f"sr-opt: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
