"""Command line entry point: ``tetrahull gen|construct|optimize|verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constructions import CONSTRUCTIONS, Scene
from .geom import GeometryError
from .io import (
    SceneDocument,
    SceneParseError,
    document_scene,
    dump_document,
    fmt,
    mesh_text,
    optimizer_result,
    parse_document,
    scene_document,
    write_mesh,
)
from .optimizer import SearchConfig, min_enclosing_regular_tetra
from .platonic import SolidKind, unit_solid
from .regtetra import RegularTetra
from .verify import render, verification_rows

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

SOLIDS = [k.value for k in SolidKind]


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_gen(args) -> int:
    _emit(mesh_text(unit_solid(args.solid)), args.output)
    return EXIT_OK


def cmd_construct(args) -> int:
    scene = CONSTRUCTIONS[args.name]()
    _emit(dump_document(scene_document(scene)), args.output)
    if args.mesh:
        stem = Path(args.output).with_suffix("") if args.output not in (None, "-") else Path(scene.label)
        write_mesh(scene.solid, f"{stem}.solid.obj")
        write_mesh(scene.enclosure, f"{stem}.enclosure.obj")
    return EXIT_OK


def _load_target(ref: str) -> tuple[SceneDocument | None, object]:
    """Resolve a solid name or scene path to ``(document or None, points)``."""
    if ref in SOLIDS:
        return None, unit_solid(ref).vertices
    path = Path(ref)
    if not path.exists():
        raise FileNotFoundError(ref)
    doc = parse_document(path.read_text())
    return doc, doc.solid.polyhedron().vertices


def cmd_optimize(args) -> int:
    cfg = SearchConfig(coarse_samples=args.samples, seed=args.seed)
    doc, points = _load_target(args.target)
    result = min_enclosing_regular_tetra(points, cfg)

    if doc is None:
        scene_label = f"optimize-{args.target}"
        solid = unit_solid(args.target)
        doc = scene_document(_result_scene(scene_label, solid, result))
        gap = None
    else:
        gap = document_scene(doc).measured_volume - result.volume
    doc = doc.model_copy(update={"optimizerResult": optimizer_result(result, cfg, gap)})

    print(f"volume: {fmt(result.volume)}")
    print(f"edge: {fmt(result.edge)}")
    if gap is not None:
        print(f"claimed volume: {fmt(doc.claimedVolume)}")
        print(f"gap: {fmt(gap)}")
    print(f"evaluations: {result.evaluations}")
    print(f"converged: {str(result.converged).lower()}")
    if args.output:
        Path(args.output).write_text(dump_document(doc))
    return EXIT_OK


def _result_scene(label, solid, result) -> Scene:
    tetra = RegularTetra(result.centroid, result.rotation, result.edge)
    return Scene(label, solid, tetra.as_polyhedron(), result.edge, result.volume, {})


def cmd_verify(args) -> int:
    cfg = SearchConfig(coarse_samples=args.samples, seed=args.seed)
    rows = verification_rows(include_optimizer=not args.skip_optimizer, cfg=cfg)
    sys.stdout.write(render(rows, args.format))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tetrahull",
        description="Smallest regular tetrahedra around the Platonic solids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a unit-edge solid as a text mesh")
    p.add_argument("solid", choices=SOLIDS)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("construct", help="run a named construction and write its scene")
    p.add_argument("name", choices=sorted(CONSTRUCTIONS))
    p.add_argument("-o", "--output", help="scene path (default stdout)")
    p.add_argument("--mesh", action="store_true", help="also write solid and enclosure meshes")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("optimize", help="search orientations for the smallest enclosing tetrahedron")
    p.add_argument("target", help="solid name or scene JSON path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_positive_int, default=SearchConfig.coarse_samples)
    p.add_argument("-o", "--output", help="write the scene document with optimizerResult")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="recompute the quoted values and compare")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--skip-optimizer", action="store_true", help="closed-form rows only")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_positive_int, default=SearchConfig.coarse_samples)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SceneParseError as exc:
        print(f"tetrahull: parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"tetrahull: {exc}", file=sys.stderr)
        return EXIT_IO
    except GeometryError as exc:
        print(f"tetrahull: invalid input: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
