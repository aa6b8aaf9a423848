"""Command-line surface.

Exit codes: 0 success / verification passed, 1 a verification suite failed,
2 malformed input or unusable arguments.  Identical inputs and flags produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from slimrect.diagram import (
    check_c1,
    check_c2,
    mirror_natural_diagram,
    natural_diagram,
    verify_c1_equals_natural,
    verify_c2_uniqueness,
    verify_meet_embedding,
)
from slimrect.errors import SchemaError, SlimrectError
from slimrect.fork import (
    CellRef,
    canonical_minimal_s7,
    cell_ref,
    decompose,
    delete_fork,
    insert_fork,
    rank,
    replay,
    resolve_cell,
)
from slimrect.rect import grid, is_sr, verify_corollaries, verify_main_theorem
from slimrect.render import render
from slimrect.serialize import (
    dumps,
    lattice_payload,
    load_lattice,
    load_script,
    save_universe,
    script_payload,
    step_payload,
)
from slimrect.universe import enumerate_sr


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(str(path), f"cannot read file: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(str(path), f"not valid JSON: {e}") from e


def _load_lattice_file(path):
    lattice, _ = load_lattice(_read_json(path))
    return lattice


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cell_arg(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--cell expects H,K,J (o height, o index, c index)")
    h, k, j = (int(p) for p in parts)
    return CellRef(o_height=h, o_index=k, c_index=j)


def _pair_arg(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("--max-grid expects P,Q")
    return int(parts[0]), int(parts[1])


def cmd_gen(args):
    L = grid(args.p, args.q)
    _emit(dumps(lattice_payload(L)), args.out)
    return 0


def cmd_fork_insert(args):
    L = _load_lattice_file(args.file)
    try:
        cell = resolve_cell(L, args.cell)
    except ValueError as e:
        raise SchemaError("--cell", str(e)) from e
    ext, trace = insert_fork(L, cell)
    _emit(dumps(lattice_payload(ext)), args.out)
    print(
        f"inserted fork at {args.cell}: middle {ext.label(trace.m)}, "
        f"trajectories {len(trace.left)} left / {len(trace.right)} right, "
        f"{L.n} -> {ext.n} elements",
        file=sys.stderr,
    )
    return 0


def cmd_fork_delete(args):
    L = _load_lattice_file(args.file)
    occ = canonical_minimal_s7(L)
    if occ is None:
        raise SchemaError(args.file, "no covering S7: nothing to delete")
    reduced, cell = delete_fork(L, occ)
    _emit(dumps(lattice_payload(reduced)), args.out)
    print(dumps(step_payload(cell_ref(reduced, cell))).rstrip(), file=sys.stderr)
    return 0


def cmd_decompose(args):
    L = _load_lattice_file(args.file)
    script = decompose(L)
    _emit(dumps(script_payload(script)), args.out)
    return 0


def cmd_replay(args):
    script = load_script(_read_json(args.script))
    L = replay(script)
    _emit(dumps(lattice_payload(L)), args.out)
    return 0


def cmd_rank(args):
    L = _load_lattice_file(args.file)
    print(rank(L))
    return 0


def _diagram_reports(L):
    d = natural_diagram(L)
    return [
        verify_meet_embedding(L),
        check_c1(L, d),
        check_c2(L, d),
        verify_c1_equals_natural(L, d),
        verify_c2_uniqueness(L, d, mirror_natural_diagram(L)),
    ]


def cmd_verify(args):
    L = _load_lattice_file(args.file)
    reports = []
    notes = []
    if args.suite in ("main", "all"):
        reports.append(verify_main_theorem(L))
    if args.suite in ("corollaries", "all"):
        reports.append(verify_corollaries(L))
    if args.suite in ("diagrams", "all"):
        if is_sr(L):
            reports.extend(_diagram_reports(L))
        elif args.suite == "diagrams":
            raise SchemaError(
                args.file, "diagram checks need a slim rectangular lattice"
            )
        else:
            notes.append("diagram checks skipped: lattice is not slim rectangular")
    passed = all(r.passed for r in reports)
    if args.json:
        payload = {
            "passed": passed,
            "notes": notes,
            "reports": [r.to_dict() for r in reports],
        }
        sys.stdout.write(dumps(payload))
    else:
        for note in notes:
            print(f"note: {note}")
        for r in reports:
            print(r.render_text())
        print(f"RESULT: {'PASS' if passed else 'FAIL'}")
    return 0 if passed else 1


def cmd_enumerate(args):
    universe = enumerate_sr(args.max_grid[0], args.max_grid[1], args.max_rank)
    index = save_universe(universe, args.out)
    print(f"{len(universe)} lattices -> {index}")
    return 0


def cmd_render(args):
    L = _load_lattice_file(args.file)
    d = natural_diagram(L)
    if args.c2:
        bad = [r for r in (check_c1(L, d), check_c2(L, d)) if not r.passed]
        if bad:
            for r in bad:
                print(r.render_text(), file=sys.stderr)
            return 1
    _emit(render(d, args.format), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="slimrect",
        description="Slim rectangular lattices: build, decompose, verify, draw.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a starting lattice")
    gen_sub = p.add_subparsers(dest="what", required=True)
    g = gen_sub.add_parser("grid", help="direct product of two chains")
    g.add_argument("p", type=int)
    g.add_argument("q", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("fork", help="insert or delete a fork")
    fork_sub = p.add_subparsers(dest="what", required=True)
    f = fork_sub.add_parser("insert", help="insert a fork at a 4-cell")
    f.add_argument("file")
    f.add_argument("--cell", type=_cell_arg, required=True, metavar="H,K,J")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fork_insert)
    f = fork_sub.add_parser("delete", help="delete the canonical minimal fork")
    f.add_argument("file")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fork_delete)

    p = sub.add_parser("decompose", help="strip forks down to a grid")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("replay", help="rebuild a lattice from a fork script")
    p.add_argument("script")
    p.add_argument("--out")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("rank", help="number of forks over the underlying grid")
    p.add_argument("file")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("file")
    p.add_argument(
        "--suite",
        choices=("main", "corollaries", "diagrams", "all"),
        default="all",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="enumerate slim rectangular lattices")
    p.add_argument("--max-grid", type=_pair_arg, required=True, metavar="P,Q")
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="draw the natural diagram")
    p.add_argument("file")
    p.add_argument("--natural", action="store_true", default=True)
    p.add_argument("--c2", action="store_true", help="also require equal lower-boundary edges")
    p.add_argument("--format", choices=("svg", "tikz"), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SlimrectError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
