"""Command-line front door: diagnose overplotting, render gatherplot SVGs,
and run the layout service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .data_model import Kind, ingest_csv
from .errors import GatherplotError
from .geom import Rect
from .layout import GatherplotSpec, Mode, layout_gatherplot, parse_fold_arg
from .overlap import VisualTransform, overplotting_index_2d
from .schema import layout_document, to_bytes
from .svg import Theme, load_theme, render_svg

ANALYZE_EXTENT = (400.0, 300.0)  # default axis extents for diagnostics
EXIT_DATA_ERROR = 2


def _load(path: str):
    data = Path(path).read_bytes()
    return ingest_csv(data)


def _axis_transform(dataset, name: str, extent: float, mark_size: float) -> VisualTransform:
    dim = dataset.dimension(name)
    if dim.kind is Kind.CONTINUOUS:
        lo, hi = dim.range
        span = (hi - lo) or 1.0
        return VisualTransform(lambda v: (float(v) - lo) / span * extent, mark_size)
    rank = dim.category_rank
    n = len(dim.categories)
    return VisualTransform(lambda v: (rank[v] + 0.5) / n * extent, mark_size)


def cmd_analyze(args) -> int:
    dataset = _load(args.input)
    tx = _axis_transform(dataset, args.x, ANALYZE_EXTENT[0], args.mark_size)
    ty = _axis_transform(dataset, args.y, ANALYZE_EXTENT[1], args.mark_size)
    points = list(zip(dataset.values(args.x), dataset.values(args.y)))
    report = overplotting_index_2d(points, tx, ty)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(f"points:       {len(points)}")
        print(f"overlap x:    {report.overlap_x}")
        print(f"overlap y:    {report.overlap_y}")
        print(f"overplotting: {report.overplotting}")
        if report.pair_samples:
            shown = ", ".join(f"({a},{b})" for a, b in report.pair_samples[:4])
            print(f"sample pairs: {shown}")
    return 0


def _parse_size(s: str) -> tuple[int, int]:
    try:
        w, h = s.lower().split("x", 1)
        return int(w), int(h)
    except ValueError:
        raise GatherplotError(f"bad --size {s!r}; expected WxH, e.g. 900x600") from None


def cmd_plot(args) -> int:
    dataset = _load(args.input)
    width, height = _parse_size(args.size)
    margin_left, margin_top, margin_bottom = 70, 10, 46
    margin_right = 160 if args.color else 20
    region = Rect(
        margin_left,
        margin_top,
        max(1, width - margin_left - margin_right),
        max(1, height - margin_top - margin_bottom),
    )
    spec = GatherplotSpec(
        region=region,
        x_dim=args.x,
        y_dim=args.y,
        color_dim=args.color,
        mode=Mode(args.mode),
        folds=tuple(parse_fold_arg(f) for f in args.fold),
    )
    layout = layout_gatherplot(dataset, spec)
    theme = load_theme(args.theme) if args.theme else Theme()

    if args.emit == "json":
        payload = to_bytes(layout_document(layout))
    else:
        payload = render_svg(layout, theme)
    if args.output == "-":
        sys.stdout.buffer.write(payload)
    else:
        Path(args.output).write_bytes(payload)
        for w in layout.warnings:
            print(f"warning: {w}", file=sys.stderr)
        print(f"wrote {args.output}: {layout.mark_count} marks, mode {layout.mode_used.value}")
    return 0


def cmd_serve(args) -> int:
    from .service import run

    run(bind=args.bind, dataset_cap=args.dataset_cap)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatherplot",
        description="Overlap-free gatherplots: diagnostics, SVG rendering, layout service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report overlap/overplotting indices for two columns")
    p.add_argument("input", help="CSV file")
    p.add_argument("--x", required=True, help="x column")
    p.add_argument("--y", required=True, help="y column")
    p.add_argument("--mark-size", type=float, default=6.0, dest="mark_size")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("plot", help="compute a gatherplot and write SVG (or geometry JSON)")
    p.add_argument("input", help="CSV file")
    p.add_argument("--x", default=None, help="x dimension (omit for undefined axis)")
    p.add_argument("--y", default=None, help="y dimension (omit for undefined axis)")
    p.add_argument("--color", default=None, help="color dimension")
    p.add_argument(
        "--mode",
        default="auto",
        choices=[m.value for m in Mode],
        help="layout mode (auto switches absolute/streamgraph by aspect ratio)",
    )
    p.add_argument("--size", default="900x600", help="canvas size WxH in px")
    p.add_argument(
        "--fold",
        action="append",
        default=[],
        metavar="AXIS=VALUE:STATE",
        help="fold a value, e.g. x=Crew:min or y=Adult:max (repeatable)",
    )
    p.add_argument("--theme", default=None, help="TOML/JSON theme file")
    p.add_argument("--emit", choices=["svg", "json"], default="svg")
    p.add_argument("-o", "--output", default="-", help="output file, - for stdout")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("serve", help="run the HTTP layout service")
    p.add_argument("--bind", default="127.0.0.1:8040", help="host:port")
    p.add_argument("--dataset-cap", type=int, default=None, dest="dataset_cap")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GatherplotError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
