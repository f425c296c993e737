"""Command-line front end: construct configurations, run the verification
suite, inspect the vertex-orthocenter locus, and emit SVG figures.

Reports are UTF-8 JSON.  Every geometric value appears as an exact
coordinate string that parses back bit-identically; floats occur only inside
the dedicated "render" sub-object.  Exit codes: 0 success, 1 verification
failure, 2 malformed input or hard degeneracy.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .scalar import Scalar, ScalarError
from .projective import (
    GeometryError,
    Point,
    VERTEX_A,
    VERTEX_B,
    VERTEX_C,
    complement,
    isotomic,
)
from .conics import conic_through_five, RankDeficient
from .constructions import (
    ConstructionSet,
    OnAnticomplementarySideline,
    construct,
    degeneracy_report,
    locus_conic,
)
from .projective import OnSideline
from .render import (
    PRESETS,
    RenderTriangle,
    bary_to_xy,
    direction_to_xy,
    named_conics,
    named_maps,
    named_points,
    render_svg,
)
from .verify import UnknownCheck, run_suite

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_INPUT_ERROR = 2


class InputError(Exception):
    pass


def parse_point(text: str) -> Point:
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise InputError(f"point needs three colon-separated coordinates: {text!r}")
    try:
        return Point(*(Scalar.parse(p) for p in parts))
    except (ValueError, ScalarError) as exc:
        raise InputError(f"bad point {text!r}: {exc}") from exc


def load_config_file(path: str) -> dict[str, str]:
    """key = value lines; blank lines and #-comments ignored."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def _point_entry(p: Point) -> dict:
    return {"bary": str(p), "infinite": p.is_infinite()}


def _render_block(cs: ConstructionSet, tri: RenderTriangle) -> dict:
    pts: dict[str, dict] = {}
    for slug, _, p in named_points(cs):
        if p is None:
            continue
        if p.is_infinite():
            dx, dy = direction_to_xy(p, tri)
            pts[slug] = {"direction": [dx, dy]}
        else:
            x, y = bary_to_xy(p, tri)
            pts[slug] = {"xy": [x, y]}
    return {
        "triangle": [[float(v[0]), float(v[1])] for v in tri.vertices()],
        "points": pts,
    }


def construction_report(cs: ConstructionSet, tri: RenderTriangle) -> dict:
    points = {}
    for slug, label, p in named_points(cs):
        if p is not None:
            points[slug] = {"label": label, **_point_entry(p)}
    conics = {}
    for slug, label, conic, _seed in named_conics(cs):
        if conic is None:
            continue
        entry = {
            "label": label,
            "matrix": str(conic),
            "degenerate": conic.is_degenerate(),
        }
        if not conic.is_degenerate():
            entry["center"] = str(conic.center())
        conics[slug] = entry
    maps = {name: str(m) for name, m in named_maps(cs) if m is not None}
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "construct",
        "input": {
            "p": str(cs.p),
            "triangle": [[str(v[0]), str(v[1])] for v in tri.vertices()],
            "extension_d": cs.extension_d,
        },
        "flags": dataclasses.asdict(cs.flags),
        "absent": dict(sorted(cs.absent.items())),
        "points": points,
        "conics": conics,
        "maps": maps,
        "render": _render_block(cs, tri),
    }


def _emit(payload: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def cmd_construct(args) -> int:
    p = parse_point(args.p)
    tri = RenderTriangle.parse(args.triangle) if args.triangle else RenderTriangle.default()
    cs = construct(p)
    report = construction_report(cs, tri)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = None
    if args.check:
        checks = list(dict.fromkeys(args.check))
    report = run_suite(
        args.seed, args.count, field_policy=args.field_policy, check_ids=checks
    )
    payload = {"schema_version": SCHEMA_VERSION, "command": "verify"}
    payload.update(report.to_dict())
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    summary = ", ".join(
        f"{cid}: {t['pass']}/{t['pass'] + t['fail']}"
        for cid, t in sorted(report.tallies().items())
        if t["pass"] + t["fail"]
    )
    print(f"checks passed: {summary}", file=sys.stderr)
    return EXIT_OK if report.ok() else EXIT_CHECK_FAILURE


def cmd_locus(args) -> int:
    conic = locus_conic(args.vertex)
    vertex = {"A": VERTEX_A, "B": VERTEX_B, "C": VERTEX_C}[args.vertex]
    excluded = {
        "A": ("B", "C", "E0", "F0"),
        "B": ("C", "A", "F0", "D0"),
        "C": ("A", "B", "D0", "E0"),
    }[args.vertex]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "locus",
        "vertex": args.vertex,
        "matrix": str(conic),
        "center": str(conic.center()),
        "polar_of_vertex": str(conic.polar(vertex)),
        "excluded_points": list(excluded),
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def z_locus_sweep(p: Point, tri: RenderTriangle, count: int = 80) -> list[Point]:
    """Centers of the cevian conics as the driving point slides along the
    line through p perpendicular to side BC in the render triangle.  Display
    only: each sample is exact, the sweep itself is a finite sampling."""
    (bx, by), (cx, cy) = tri.b, tri.c
    dx, dy = -(cy - by), cx - bx
    rows = (
        (tri.b[1] - tri.c[1], tri.c[0] - tri.b[0]),
        (tri.c[1] - tri.a[1], tri.a[0] - tri.c[0]),
        (tri.a[1] - tri.b[1], tri.b[0] - tri.a[0]),
    )
    direction = Point(*(Scalar(r[0] * dx + r[1] * dy) for r in rows))
    base = p.normalized()
    out: list[Point] = []
    for k in range(-count, count + 1):
        if k == 0:
            continue
        t = Fraction(k, 3 * count)
        moved = Point(*(base[i] + t * direction.coords[i] for i in range(3)))
        rep = degeneracy_report(moved)
        if rep.hard() or rep.on_median:
            continue
        q = complement(isotomic(moved))
        try:
            conic = conic_through_five((VERTEX_A, VERTEX_B, VERTEX_C, moved, q))
        except RankDeficient:
            continue
        if conic.is_degenerate():
            continue
        out.append(conic.center())
    return out


def cmd_svg(args) -> int:
    p = parse_point(args.p)
    tri = RenderTriangle.parse(args.triangle) if args.triangle else RenderTriangle.default()
    cs = construct(p)
    locus = z_locus_sweep(p, tri) if args.z_locus else None
    svg = render_svg(cs, tri, preset=args.preset, z_locus=locus)
    _emit(svg, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cevian",
        description="Exact barycentric triangle geometry and theorem verification.",
    )
    parser.add_argument(
        "--config",
        help="plain-text configuration file of key = value lines; flags override",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser("construct", help="derive one full configuration")
    p_construct.add_argument("--p", help="driving point, e.g. 2:3:6 or 1:1+1*sqrt(2):1-1*sqrt(2)")
    p_construct.add_argument("--triangle", help='Cartesian vertices "x1,y1;x2,y2;x3,y3" (render only)')
    p_construct.add_argument("--out", help="output path (default stdout)")
    p_construct.set_defaults(fn=cmd_construct)

    p_verify = sub.add_parser("verify", help="run the theorem-check suite")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--count", type=int, default=None)
    p_verify.add_argument(
        "--check", action="append", metavar="ID",
        help="run only this check id (repeatable); see README for the list",
    )
    p_verify.add_argument(
        "--field-policy", choices=("auto", "rational"), default=None,
        help="auto includes the quadratic-extension fixture",
    )
    p_verify.add_argument("--out", help="output path (default stdout)")
    p_verify.set_defaults(fn=cmd_verify)

    p_locus = sub.add_parser("locus", help="the conic of points whose orthocenter-like point is a vertex")
    p_locus.add_argument("--vertex", choices=("A", "B", "C"), default=None)
    p_locus.add_argument("--out", help="output path (default stdout)")
    p_locus.set_defaults(fn=cmd_locus)

    p_svg = sub.add_parser("svg", help="render a figure")
    p_svg.add_argument("--p", help="driving point")
    p_svg.add_argument("--triangle", help='Cartesian vertices "x1,y1;x2,y2;x3,y3"')
    p_svg.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p_svg.add_argument(
        "--z-locus", action="store_true", default=None,
        help="overlay the sweep of cevian-conic centers (display only, no exactness claim)",
    )
    p_svg.add_argument("--out", help="output path (default stdout)")
    p_svg.set_defaults(fn=cmd_svg)
    return parser


_CONFIG_KEYS = {
    "p": str,
    "triangle": str,
    "seed": int,
    "count": int,
    "check": lambda v: [s.strip() for s in v.split(",") if s.strip()],
    "field_policy": str,
    "vertex": str,
    "preset": str,
    "out": str,
    "z_locus": lambda v: v.lower() in ("1", "true", "yes"),
}

_DEFAULTS = {
    "seed": 42,
    "count": 25,
    "field_policy": "auto",
    "vertex": "A",
    "preset": "fig2",
    "z_locus": False,
}


def _apply_config(args: argparse.Namespace) -> None:
    file_values: dict[str, object] = {}
    if args.config:
        raw = load_config_file(args.config)
        for key, value in raw.items():
            if key not in _CONFIG_KEYS:
                raise InputError(f"unknown configuration key {key!r}")
            file_values[key] = _CONFIG_KEYS[key](value)
    for key in _CONFIG_KEYS:
        if not hasattr(args, key):
            continue
        if getattr(args, key) is None:
            if key in file_values:
                setattr(args, key, file_values[key])
            elif key in _DEFAULTS:
                setattr(args, key, _DEFAULTS[key])


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        if getattr(args, "p", "skip") is None:
            raise InputError("a driving point is required (--p or config file)")
        return args.fn(args)
    except (OnSideline, OnAnticomplementarySideline) as exc:
        flag = (
            "on_sideline"
            if isinstance(exc, OnSideline)
            else "on_anticomplementary_sideline"
        )
        print(f"degenerate input ({flag}): {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (InputError, UnknownCheck, ValueError, ScalarError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
