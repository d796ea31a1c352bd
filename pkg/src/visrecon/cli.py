"""Command-line entry point: ``visrecon <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad polygon, inconsistent
data, ...) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .agent import PolygonEnvironment, SensorConfig, format_trace
from .ambiguity import check_ambiguity
from .angle_recon import embed, fill_missing_angle, reconstruct_from_angles, reconstruct_unknown_n
from .errors import VisReconError
from .generate import generate_polygon
from .geometry import ANGLE_EPS, build_visibility_graph, measure
from .labeled import labeling_by_name, minimum_base, to_text
from .render import render_svg
from .structure import structure_report


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _polygon(path):
    return io.read_polygon(path).check()


def _parse_hidden(spec: str | None) -> frozenset:
    if not spec:
        return frozenset()
    out = set()
    for tok in spec.split(","):
        v, s = tok.split(":")
        out.add((int(v), int(s)))
    return frozenset(out)


def _sensors(args) -> SensorConfig:
    try:
        hidden = _parse_hidden(getattr(args, "hide", None))
        return SensorConfig.parse(args.sensors, movement=args.movement, hidden_angles=hidden)
    except ValueError as exc:
        raise SystemExit(str(exc)) from exc


def cmd_gen(args) -> None:
    if args.seed < 0 or args.seed >= 2**64:
        raise SystemExit("seed must fit in 64 bits")
    p = generate_polygon(args.n, args.seed, coord_bound=args.coord_bound)
    _emit(io.polygon_to_text(p), args.output)


def cmd_visgraph(args) -> None:
    _emit(io.visgraph_to_text(build_visibility_graph(_polygon(args.polygon))), args.output)


def cmd_measure(args) -> None:
    _emit(io.measurements_to_text(measure(_polygon(args.polygon))), args.output)


def cmd_reconstruct(args) -> None:
    m = io.read_measurements(args.measurements)
    if any(a is None for row in m for a in row):
        m = fill_missing_angle(m, args.n)
    if args.infer_n:
        _, g = reconstruct_unknown_n(iter(m), eps=args.eps)
    else:
        g = reconstruct_from_angles(m, args.n if args.n is not None else len(m), eps=args.eps)
    _emit(io.visgraph_to_text(g), args.output)


def cmd_embed(args) -> None:
    e = embed(io.read_visgraph(args.visgraph), io.read_measurements(args.measurements))
    _emit("".join(f"{x!r} {y!r}\n" for x, y in e.coords), args.output)


def cmd_minbase(args) -> None:
    if args.polygon:
        p = _polygon(args.polygon)
        vg = build_visibility_graph(p)
    elif args.visgraph:
        p, vg = None, io.read_visgraph(args.visgraph)
    else:
        raise SystemExit("minbase needs --polygon or --visgraph")
    mb = minimum_base(labeling_by_name(args.labeling, vg, p))
    text = f"k {mb.k}\nclass_of {' '.join(map(str, mb.class_of))}\n" + to_text(mb.base)
    _emit(text, args.output)


def cmd_simulate(args) -> None:
    p = _polygon(args.polygon)
    env = PolygonEnvironment(p, _sensors(args), marked=args.marked, start=args.start)
    moves = [int(t) for t in args.moves.split(",") if t.strip()] if args.moves else []
    positions = []
    for slot in moves:
        positions.append(env.position)
        env.step(slot)
    log = format_trace(env.trace, positions)
    last = format_trace([(env.observe(), 0)], [env.position]).replace(" move=0", "")
    _emit(log + last.replace("step=0", f"step={len(moves)}"), args.output)


def cmd_structure(args) -> None:
    rep = structure_report(_polygon(args.polygon), args.labeling)
    _emit("\n".join(rep.lines()) + "\n", args.output)


def cmd_check_ambiguity(args) -> None:
    rep = check_ambiguity(_polygon(args.p1), _polygon(args.p2), _sensors(args), args.depth)
    _emit("\n".join(rep.lines()) + "\n", args.output)


def cmd_render(args) -> None:
    p = _polygon(args.polygon)
    vg = build_visibility_graph(p) if args.chords or args.classes else None
    classes = minimum_base(labeling_by_name(args.classes, vg, p)).class_of if args.classes else None
    _emit(render_svg(p, vg if args.chords else None, classes), args.output)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="visrecon", description="Polygon visibility-graph reconstruction tools")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-o", "--output", help="write here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("gen", cmd_gen, "generate a random simple polygon")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--coord-bound", type=int, default=1024)

    sp = add("visgraph", cmd_visgraph, "compute the visibility graph")
    sp.add_argument("--polygon", required=True)

    sp = add("measure", cmd_measure, "ordered angle measurements")
    sp.add_argument("--polygon", required=True)

    sp = add("reconstruct", cmd_reconstruct, "visibility graph from angle measurements")
    sp.add_argument("--measurements", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--infer-n", action="store_true")
    sp.add_argument("--eps", type=float, default=ANGLE_EPS)

    sp = add("embed", cmd_embed, "planar layout from graph and measurements")
    sp.add_argument("--visgraph", required=True)
    sp.add_argument("--measurements", required=True)

    sp = add("minbase", cmd_minbase, "minimum base of a labeled visibility graph")
    sp.add_argument("--polygon")
    sp.add_argument("--visgraph")
    sp.add_argument("--labeling", choices=["basic", "lookback", "angletype"], default="basic")

    sp = add("simulate", cmd_simulate, "move an agent and log its observations")
    sp.add_argument("--polygon", required=True)
    sp.add_argument("--sensors", default="")
    sp.add_argument("--moves", default="")
    sp.add_argument("--movement", choices=["free", "boundary"], default="free")
    sp.add_argument("--marked", type=int)
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--hide", help="hidden angle readings as vertex:slot,...")

    sp = add("structure", cmd_structure, "class structure, clique class and sector resolution")
    sp.add_argument("--polygon", required=True)
    sp.add_argument("--labeling", choices=["basic", "lookback", "angletype"], default="lookback")

    sp = add("check-ambiguity", cmd_check_ambiguity, "can an agent tell two polygons apart?")
    sp.add_argument("p1")
    sp.add_argument("p2")
    sp.add_argument("--sensors", default="")
    sp.add_argument("--movement", choices=["free", "boundary"], default="free")
    sp.add_argument("--hide", help="hidden angle readings as vertex:slot,...")
    sp.add_argument("--depth", type=int)

    sp = add("render", cmd_render, "SVG drawing")
    sp.add_argument("--polygon", required=True)
    sp.add_argument("--chords", action="store_true", help="draw visibility edges")
    sp.add_argument("--classes", choices=["basic", "lookback", "angletype"], help="color vertices by class")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return 2
        raise
    except (VisReconError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
