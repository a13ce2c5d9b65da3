"""Command-line harness: generate, render, dump and verify.

Every run is deterministic for a fixed (config, seed): reports and SVG
are byte-identical across invocations.  Check suites write a TSV report
plus a figure next to it; exit status is nonzero exactly when some check
fails (indeterminate entries are counted separately and do not fail a
run).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path as FsPath

from . import checks as checks_mod
from .checks import ANCHORS, SuiteResult, check_assumptions
from .errors import PunctileError
from .geometry import Patch
from .render import render_svg, save_patch_figure, save_status_figure
from .semigroup import enumerate_elements, sorted_elements
from .substitution import (
    DEFAULT_CELL_BUDGET,
    SubstitutionSystem,
    atlas_with_depth,
    builtin_path,
    fixed_point_window,
    load_system,
    supertile,
)

BUDGET_ENV = "PUNCTILE_CELL_BUDGET"


def _resolve_system(spec: str) -> SubstitutionSystem:
    budget = int(os.environ.get(BUDGET_ENV, DEFAULT_CELL_BUDGET))
    path = FsPath(spec)
    if not path.exists():
        candidate = builtin_path(spec)
        if candidate.exists():
            path = candidate
        else:
            raise PunctileError(
                f"no such system: {spec!r} (not a file, not a builtin)"
            )
    return load_system(path, cell_budget=budget)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        FsPath(path).write_text(text, encoding="utf-8")


def _report_header(command: str, system: SubstitutionSystem, args: argparse.Namespace, result: SuiteResult) -> list[str]:
    lines = [
        f"# command: {command}",
        f"# system: {system.name}",
        f"# seed: {getattr(args, 'seed', 0)}",
        f"# params: radius={getattr(args, 'radius', '')} "
        f"max_tiles={getattr(args, 'max_tiles', '')} "
        f"samples={getattr(args, 'samples', '')}",
        f"# totals: fail={result.failures} indet={result.indeterminates}",
    ]
    for check_id in sorted(result.counts):
        anchor = ANCHORS.get(check_id, "")
        lines.append(f"# check {check_id}: {anchor}")
    return lines


def _emit_suite(command: str, system: SubstitutionSystem, args, result: SuiteResult) -> int:
    out_dir = FsPath(getattr(args, "out_dir", ".") or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    header = _report_header(command, system, args, result)
    body = [line.render() for line in result.merged()]
    report_path = out_dir / f"{command}.report.tsv"
    report_path.write_text("\n".join(header + body) + "\n", encoding="utf-8")
    counts = {
        "pass": sum(c["pass"] for c in result.counts.values()),
        "fail": result.failures,
        "indet": result.indeterminates,
    }
    save_status_figure(
        counts, out_dir / f"{command}.figure.png", f"{command} [{system.name}]"
    )
    print(
        f"{command}: {counts['pass']} pass, {counts['fail']} fail, "
        f"{counts['indet']} indeterminate -> {report_path}"
    )
    return 1 if result.failures else 0


def cmd_gen(args) -> int:
    system = _resolve_system(args.system)
    window = fixed_point_window(system, args.radius)
    _write_text(args.out, window.patch.serialize() + "\n")
    if args.svg:
        _write_text(args.svg, render_svg(window.patch))
    if args.figure:
        save_patch_figure(
            window.patch,
            args.figure,
            title=f"{system.name} window R={args.radius}",
        )
    return 0


def cmd_render(args) -> int:
    system = _resolve_system(args.system)
    if args.label is not None:
        patch = supertile(system, args.label, args.depth)
        title = f"{system.name} supertile {args.label} depth {args.depth}"
    else:
        patch = fixed_point_window(system, args.radius).patch
        title = f"{system.name} window R={args.radius}"
    _write_text(args.out, render_svg(patch))
    if args.figure:
        save_patch_figure(patch, args.figure, title=title)
    return 0


def cmd_atlas(args) -> int:
    system = _resolve_system(args.system)
    plaques, depth = atlas_with_depth(system, args.radius)
    blocks = [p.serialize() for p in plaques]
    text = (
        f"# system: {system.name}\n# radius: {args.radius}\n"
        f"# classes: {len(plaques)}\n# saturation-depth: {depth}\n\n"
        + "\n\n".join(blocks)
        + "\n"
    )
    _write_text(args.out, text)
    return 0


def cmd_semigroup_table(args) -> int:
    system = _resolve_system(args.system)
    elements = sorted_elements(
        enumerate_elements(system, args.radius, args.max_tiles)
    )
    lines = [e.serialize() for e in elements]
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_semigroup_check(args) -> int:
    system = _resolve_system(args.system)
    result = checks_mod.semigroup_suite(
        system,
        radius=args.radius,
        max_tiles=args.max_tiles,
        seed=args.seed,
        samples=args.samples,
        emit_passes=not args.summary_only,
    )
    return _emit_suite("semigroup-check", system, args, result)


def cmd_filters_check(args) -> int:
    system = _resolve_system(args.system)
    result = checks_mod.filters_suite(
        system,
        universe_radius=args.radius,
        seed=args.seed,
        window_count=args.samples,
        emit_passes=not args.summary_only,
    )
    return _emit_suite("filters-check", system, args, result)


def cmd_groupoid_check(args) -> int:
    system = _resolve_system(args.system)
    result = checks_mod.groupoid_suite(
        system,
        seed=args.seed,
        samples=args.samples,
        emit_passes=not args.summary_only,
    )
    info = check_assumptions(
        result,
        system,
        atlas_radius=2,
        period_radius=args.period_radius,
        repetitivity_radius=1,
        master_radius=32,
        expect_period=args.expect_period,
        emit=not args.summary_only,
    )
    del info
    return _emit_suite("groupoid-check", system, args, result)


def cmd_metric(args) -> int:
    system = _resolve_system(args.system)
    result = checks_mod.metric_suite(
        system,
        radius=args.radius,
        seed=args.seed,
        samples=args.samples,
        emit_passes=not args.summary_only,
    )
    return _emit_suite("metric", system, args, result)


def _add_common(p: argparse.ArgumentParser, radius_default: int):
    p.add_argument("--system", required=True, help="builtin name or rules file")
    p.add_argument("--radius", type=int, default=radius_default)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--out-dir", default=".")
    p.add_argument(
        "--summary-only",
        action="store_true",
        help="emit only failures, indeterminates and summaries",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="punctile",
        description=(
            "substitution tilings, their pattern semigroup, filters, "
            "characters and groupoids, with verification suites"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a fixed-point window")
    p.add_argument("--system", required=True)
    p.add_argument("--radius", type=int, default=16)
    p.add_argument("--out", default="-")
    p.add_argument("--svg")
    p.add_argument("--figure")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("render", help="render a supertile or window as SVG")
    p.add_argument("--system", required=True)
    p.add_argument("--label")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--out", default="-")
    p.add_argument("--figure")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("atlas", help="dump the plaque atlas at a radius")
    p.add_argument("--system", required=True)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("semigroup-table", help="dump enumerated elements")
    p.add_argument("--system", required=True)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--max-tiles", type=int, default=3)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_semigroup_table)

    p = sub.add_parser("semigroup-check", help="inverse semigroup axioms")
    _add_common(p, radius_default=1)
    p.add_argument("--max-tiles", type=int, default=3)
    p.set_defaults(func=cmd_semigroup_check)

    p = sub.add_parser("filters-check", help="filters and characters")
    _add_common(p, radius_default=1)
    p.set_defaults(func=cmd_filters_check)

    p = sub.add_parser("groupoid-check", help="germs and the bridge map")
    _add_common(p, radius_default=1)
    p.add_argument("--period-radius", type=int, default=8)
    p.add_argument(
        "--expect-period",
        action="store_true",
        help="treat a detected period as a pass (periodic controls)",
    )
    p.set_defaults(func=cmd_groupoid_check)

    p = sub.add_parser("metric", help="window pseudometric properties")
    _add_common(p, radius_default=6)
    p.set_defaults(func=cmd_metric)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PunctileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
