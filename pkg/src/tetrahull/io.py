"""Text mesh export and the JSON scene document.

Numbers are written with 12 significant digits so files are stable
byte-for-byte across runs and platforms.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .constructions import Scene, make_trace
from .geom import ConvexPolyhedron
from .optimizer import EnclosureResult, SearchConfig

SCHEMA_VERSION = 1
DIGITS = 12


class SceneParseError(ValueError):
    """Malformed scene or mesh text; the message carries line or field details."""


def fmt(x: float) -> str:
    return f"{float(x) + 0.0:.{DIGITS}g}"


def round_sig(x: float) -> float:
    return float(fmt(x))


# --- meshes ---------------------------------------------------------------


def mesh_text(p: ConvexPolyhedron) -> str:
    lines = [f"v {fmt(x)} {fmt(y)} {fmt(z)}" for x, y, z in p.vertices]
    lines += ["f " + " ".join(str(i + 1) for i in face) for face in p.faces]
    return "\n".join(lines) + "\n"


def write_mesh(p: ConvexPolyhedron, path: str | Path) -> None:
    Path(path).write_text(mesh_text(p))


def parse_mesh(text: str) -> ConvexPolyhedron:
    vertices, faces = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        try:
            if tag == "v":
                if len(rest) < 3:
                    raise ValueError("vertex needs 3 coordinates")
                vertices.append([float(v) for v in rest[:3]])
            elif tag == "f":
                # "f 1/1/1 2/2/2 ..." keeps only the position index
                faces.append([int(tok.split("/")[0]) - 1 for tok in rest])
        except ValueError as exc:
            raise SceneParseError(f"line {lineno}: {exc}") from None
    for k, face in enumerate(faces):
        if any(i < 0 or i >= len(vertices) for i in face):
            raise SceneParseError(f"face {k + 1} references a missing vertex")
    return ConvexPolyhedron(np.array(vertices, dtype=float).reshape(-1, 3), faces)


def read_mesh(path: str | Path) -> ConvexPolyhedron:
    return parse_mesh(Path(path).read_text())


# --- scene document -------------------------------------------------------


class Mesh(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: list[tuple[float, float, float]]
    faces: list[list[int]] = Field(description="0-based vertex index cycles")

    @classmethod
    def of(cls, p: ConvexPolyhedron) -> Mesh:
        return cls(
            vertices=[tuple(round_sig(c) for c in v) for v in p.vertices],
            faces=[list(f) for f in p.faces],
        )

    def polyhedron(self) -> ConvexPolyhedron:
        return ConvexPolyhedron(np.array(self.vertices, dtype=float).reshape(-1, 3), self.faces)


class OptimizerResult(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rotvec: tuple[float, float, float]
    edge: float
    centroid: tuple[float, float, float]
    volume: float
    evaluations: int
    converged: bool
    seed: int
    samples: int
    gap: Optional[float] = None


class SceneDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schemaVersion: Literal[1] = SCHEMA_VERSION
    label: str
    solid: Mesh
    enclosure: Mesh
    enclosureEdge: Optional[float] = None
    claimedVolume: float
    trace: dict[str, float] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)
    optimizerResult: Optional[OptimizerResult] = None


def _round_tree(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return obj


def scene_document(scene: Scene) -> SceneDocument:
    return SceneDocument(
        label=scene.label,
        solid=Mesh.of(scene.solid),
        enclosure=Mesh.of(scene.enclosure),
        enclosureEdge=None if scene.enclosure_edge is None else round_sig(scene.enclosure_edge),
        claimedVolume=round_sig(scene.claimed_volume),
        trace={k: round_sig(v) for k, v in scene.trace.items()},
        notes=list(scene.notes),
    )


def optimizer_result(result: EnclosureResult, cfg: SearchConfig, gap: float | None = None) -> OptimizerResult:
    return OptimizerResult(
        rotvec=tuple(round_sig(c) for c in result.rotation.as_rotvec()),
        edge=round_sig(result.edge),
        centroid=tuple(round_sig(c) for c in result.centroid),
        volume=round_sig(result.volume),
        evaluations=result.evaluations,
        converged=result.converged,
        seed=cfg.seed,
        samples=cfg.coarse_samples,
        gap=None if gap is None else round_sig(gap),
    )


def dump_document(doc: SceneDocument) -> str:
    data = _round_tree(doc.model_dump(exclude_none=True))
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def parse_document(text: str) -> SceneDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return SceneDocument.model_validate(data)
    except ValidationError as exc:
        problems = [
            f"field {'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in exc.errors()
        ]
        raise SceneParseError("; ".join(problems)) from None


def document_scene(doc: SceneDocument) -> Scene:
    return Scene(
        label=doc.label,
        solid=doc.solid.polyhedron(),
        enclosure=doc.enclosure.polyhedron(),
        enclosure_edge=doc.enclosureEdge,
        claimed_volume=doc.claimedVolume,
        trace=make_trace(**doc.trace),
        notes=tuple(doc.notes),
    )

