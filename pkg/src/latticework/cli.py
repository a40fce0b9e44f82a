"""Command-line front end.

Exit codes: 0 success, 1 a decided property is false, 2 bad input or guard
violation, 3 usage error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebras as A
from . import constructions as C
from . import render
from . import trees as T
from .errors import (
    GuardError,
    InputFormatError,
    NotALatticeError,
    PosetError,
    WorkbenchError,
)
from .order import FinitePoset, is_lattice
from .verify import MUTANTS, run_verify

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_USAGE = 3
EXIT_VERIFY = 4

DECIDERS = {
    ("Ln", "complete"): "double-tree lattice completeness",
    ("TnA", "complete"): "capped-tree completeness",
    ("TnA", "algebraic"): "capped-tree algebraicity",
    ("SumL", "compact-a"): "designated-cap compactness",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: {exc}") from None


def _write_text(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _descriptor(args, want_trees=True):
    """Construction name plus tree list from --input and/or --construction."""
    obj = _load_json(args.input)
    if isinstance(obj, dict) and "construction" in obj:
        construction = obj["construction"]
        tree_objs = obj.get("trees", [])
        depth = obj.get("depth")
    else:
        construction = None
        tree_objs = [obj]
        depth = None
    if getattr(args, "construction", None):
        construction = args.construction
    if construction not in C.CONSTRUCTIONS:
        raise UsageError(
            f"construction must be one of {', '.join(C.CONSTRUCTIONS)} "
            "(via --construction or the descriptor)"
        )
    trees = [T.tree_from_json(t) for t in tree_objs] if want_trees else []
    if getattr(args, "depth", None) is not None:
        depth = args.depth
    return construction, trees, depth


def _lattice_json(construction, labeled):
    out = {
        "construction": construction,
        "size": labeled.size,
        "labels": [str(x) for x in labeled.labels],
        "leq": [list(p) for p in labeled.lattice.poset.pairs()],
    }
    if construction == "SumL":
        out["designated_ids"] = [
            i for i, x in enumerate(labeled.labels) if getattr(x, "kind", None) == "a"
        ]
    return out


def _emit_lattice(args, construction, labeled, title):
    if args.json:
        _write_text(args.json, json.dumps(_lattice_json(construction, labeled), indent=2) + "\n")
    if args.dot:
        _write_text(args.dot, render.to_dot(labeled.lattice, labeled.labels))
    if args.fig:
        render.hasse_figure(labeled.lattice, labeled.labels, args.fig, title=title)


def _cmd_check_poset(args):
    obj = _load_json(args.input)
    try:
        poset = FinitePoset.from_json(obj)
    except PosetError as exc:
        print(f"poset: {exc}")
        return EXIT_FALSE
    print("poset: ok")
    ok, witness = is_lattice(poset)
    print(f"lattice: {str(ok).lower()}" + ("" if ok else f" (witness pair {witness})"))
    if args.dot:
        _write_text(args.dot, render.to_dot(poset))
    if args.fig:
        render.hasse_figure(poset, None, args.fig)
    return EXIT_OK if ok else EXIT_FALSE


def _cmd_build(args):
    construction, trees, depth = _descriptor(args)
    cyclic = [t for t in trees if not T.is_well_founded(t)]
    if cyclic or args.symbolic:
        if not args.symbolic:
            raise InputFormatError(
                "tree presents an infinite member set; rerun with --symbolic "
                "for a handle usable by decide"
            )
        handle = {
            "construction": construction,
            "symbolic": True,
            "trees": [t.to_json() for t in trees],
        }
        if depth is not None:
            handle["depth"] = depth
        text = json.dumps(handle, indent=2) + "\n"
        if args.json:
            _write_text(args.json, text)
        else:
            sys.stdout.write(text)
        print(f"{construction}: symbolic handle", file=sys.stderr)
        return EXIT_OK
    labeled = C.materialize(construction, trees, depth=depth, max_size=args.max_size)
    print(f"{construction}: {labeled.size} elements")
    _emit_lattice(args, construction, labeled, title=construction)
    return EXIT_OK


def _cmd_decide(args):
    construction, trees, depth = _descriptor(args)
    prop = args.property
    if (construction, prop) not in DECIDERS:
        raise UsageError(
            f"property {prop!r} is not decided for construction {construction!r}; "
            f"supported: {sorted(set(DECIDERS))}"
        )
    if not trees:
        raise InputFormatError("descriptor carries no trees")
    if construction == "SumL":
        if not (0 <= args.index < len(trees)):
            raise UsageError(f"--index {args.index} out of range for {len(trees)} trees")
        tree = trees[args.index]
        verdict = C.sum_is_compact_a(trees, args.index)
        name = f"{prop}[{args.index}]"
    else:
        if len(trees) != 1:
            raise InputFormatError(f"construction {construction} takes exactly one tree")
        tree = trees[0]
        if prop == "complete":
            verdict = C.dt_is_complete(tree) if construction == "Ln" else C.tna_is_complete(tree)
        else:
            verdict = C.tna_is_algebraic(tree)
        name = prop
    print(f"{name}: {str(verdict).lower()}")
    if not verdict:
        witness = T.has_infinite_path(tree)
        if witness is not None:
            print(f"witness: {witness}")
    return EXIT_OK if verdict else EXIT_FALSE


def _load_algebra(path):
    return A.FiniteAlgebra.from_json(_load_json(path))


def _cmd_con(args):
    alg = _load_algebra(args.input)
    con = A.congruence_lattice(alg)
    covers = {}
    for a, b in con.lattice.poset.covers():
        covers.setdefault(a, []).append(b)
    print("id\tblocks\tcovers")
    for i, eq in enumerate(con.congruences):
        ups = " ".join(str(b) for b in sorted(covers.get(i, [])))
        print(f"{i}\t{json.dumps([list(b) for b in eq.blocks])}\t{ups}")
    labeled = con.labeled()
    if args.json:
        payload = {
            "n": alg.n,
            "congruences": [{"id": i, "blocks": [list(b) for b in eq.blocks]}
                            for i, eq in enumerate(con.congruences)],
            "leq": [list(p) for p in con.lattice.poset.pairs()],
        }
        _write_text(args.json, json.dumps(payload, indent=2) + "\n")
    if args.dot:
        _write_text(args.dot, render.to_dot(con.lattice, labeled.labels))
    if args.fig:
        render.hasse_figure(con.lattice, labeled.labels, args.fig, title="congruence lattice")
    return EXIT_OK


def _cmd_compact(args):
    alg = _load_algebra(args.input)
    con = A.congruence_lattice(alg)
    print("id\tblocks\tgenerators\tfinitely_generated")
    for i, eq in enumerate(con.congruences):
        try:
            pairs = A.minimal_generating_pairs(alg, eq, max_pairs=args.max_pairs)
            gen = json.dumps([list(p) for p in pairs])
            flag = "true"
        except GuardError as exc:
            gen = json.dumps(None)
            flag = f"false ({exc})"
        print(f"{i}\t{json.dumps([list(b) for b in eq.blocks])}\t{gen}\t{flag}")
    return EXIT_OK


def _cmd_verify(args):
    try:
        ok, lines = run_verify(seed=args.seed, sizes=args.sizes, mutate=args.mutate)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_export(args):
    obj = _load_json(args.input)
    poset = FinitePoset.from_json(obj)
    labels = obj.get("labels") if isinstance(obj, dict) else None
    if labels is not None and len(labels) != poset.size:
        raise InputFormatError("label count does not match poset size")
    dot = render.to_dot(poset, labels)
    if args.dot:
        _write_text(args.dot, dot)
    else:
        sys.stdout.write(dot)
    if args.fig:
        render.hasse_figure(poset, labels, args.fig)
    if args.json:
        payload = poset.to_json()
        if labels is not None:
            payload["labels"] = list(labels)
        _write_text(args.json, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _build_parser():
    parser = _Parser(prog="latticework", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check-poset", _cmd_check_poset, "validate a poset JSON and test lattice-ness")
    p.add_argument("--input", required=True)
    p.add_argument("--dot")
    p.add_argument("--fig")

    p = add("build", _cmd_build, "materialize a construction, or emit a symbolic handle")
    p.add_argument("--input", required=True)
    p.add_argument("--construction", choices=C.CONSTRUCTIONS)
    p.add_argument("--depth", type=int)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--max-size", type=int, default=C.MATERIALIZE_MAX_SIZE)
    p.add_argument("--json")
    p.add_argument("--dot")
    p.add_argument("--fig")

    p = add("decide", _cmd_decide, "decide a property of a construction")
    p.add_argument("--input", required=True)
    p.add_argument("--construction", choices=C.CONSTRUCTIONS)
    p.add_argument("--property", required=True, choices=["complete", "compact-a", "algebraic"])
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--depth", type=int)

    p = add("con", _cmd_con, "congruence lattice of an algebra, as TSV/DOT/JSON/figure")
    p.add_argument("--input", required=True)
    p.add_argument("--json")
    p.add_argument("--dot")
    p.add_argument("--fig")

    p = add("compact", _cmd_compact, "minimal generating pairs per congruence")
    p.add_argument("--input", required=True)
    p.add_argument("--max-pairs", type=int)

    p = add("verify", _cmd_verify, "run the cross-check suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sizes", type=int, default=25)
    p.add_argument("--mutate", choices=sorted(MUTANTS), metavar="NAME")

    p = add("export", _cmd_export, "DOT/figure/JSON for a poset or lattice JSON file")
    p.add_argument("--input", required=True)
    p.add_argument("--dot")
    p.add_argument("--fig")
    p.add_argument("--json")

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputFormatError, GuardError, PosetError, NotALatticeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, WorkbenchError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry():
    sys.exit(main())
