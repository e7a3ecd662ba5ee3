"""Recompute every quoted decimal and compare within a per-row tolerance."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import constructions as C
from .geom import cross_section_z, polyhedron_volume
from .io import fmt
from .optimizer import SearchConfig, min_enclosing_regular_tetra
from .platonic import SolidKind, unit_solid
from .regtetra import RegularTetra

QUOTED_REL_TOL = 1e-3


@dataclass(frozen=True)
class VerificationRow:
    name: str
    quoted_value: float
    computed_value: float
    relative_error: float
    tolerance: float
    status: str

    @classmethod
    def compare(cls, name: str, quoted: float, computed: float, tol: float) -> VerificationRow:
        rel = abs(computed - quoted) / abs(quoted)
        return cls(name, quoted, computed, rel, tol, "pass" if rel <= tol else "fail")

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _closed_form_specs() -> list[tuple[str, float, Callable[[], float]]]:
    scenes: dict[str, C.Scene] = {}

    def scene(name: str) -> C.Scene:
        if name not in scenes:
            scenes[name] = C.CONSTRUCTIONS[name]()
        return scenes[name]

    def edge3_section_side() -> float:
        tetra = RegularTetra.standing(3.0).as_polyhedron()
        return float(cross_section_z(tetra, 1.0).side_lengths().mean())

    return [
        ("right-corner-volume", 4.5, lambda: scene("right-corner-cube").measured_volume),
        ("cube-slice-area", 2.0, lambda: scene("right-corner-cube").trace["sliceArea"]),
        ("edge3-tetra-volume", 3.182, lambda: polyhedron_volume(RegularTetra.canonical(3.0).as_polyhedron())),
        ("edge3-section-side", 1.775, edge3_section_side),
        ("cube-corner-overhang", 0.671, lambda: scene("standard-cube").trace["gap"]),
        ("cube-min-regular-tetra-edge", 3.37945, lambda: scene("standard-cube").enclosure_edge),
        ("cube-min-regular-tetra-volume", 4.5485, lambda: scene("standard-cube").measured_volume),
        ("octa-tetra-volume", 0.94281, lambda: scene("octa").measured_volume),
        ("octa-volume", 0.47140, lambda: polyhedron_volume(unit_solid(SolidKind.OCTAHEDRON))),
        ("icosa-circumradius", 0.95106,
         lambda: float(np.linalg.norm(unit_solid(SolidKind.ICOSAHEDRON).vertices, axis=1).max())),
        ("icosa-insphere-tetra-edge", 4.65921, lambda: scene("icosa-insphere").enclosure_edge),
        ("icosa-insphere-tetra-volume", 11.91982, lambda: scene("icosa-insphere").measured_volume),
        ("icosa-golden-octa-edge", 3.7025,
         lambda: float(scene("icosa-golden").shells["octahedronFrame2"].edge_lengths().mean())),
        ("icosa-golden-tetra-edge", 7.4049, lambda: scene("icosa-golden").trace["tetraEdgeFrame2"]),
        ("icosa-golden-tetra-volume", 5.9816, lambda: scene("icosa-golden").measured_volume),
        ("dodeca-dual-icosa-edge", 1.8541,
         lambda: float(scene("dodeca-dual").shells["icosahedron"].edge_lengths().mean())),
        ("dodeca-dual-icosa-circumradius", 1.76336,
         lambda: float(np.linalg.norm(scene("dodeca-dual").shells["icosahedron"].vertices, axis=1).max())),
        ("dodeca-dual-tetra-edge", 8.63864, lambda: scene("dodeca-dual").enclosure_edge),
        ("dodeca-dual-tetra-volume", 75.9749, lambda: scene("dodeca-dual").measured_volume),
        ("dodeca-volume", 7.6631, lambda: polyhedron_volume(unit_solid(SolidKind.DODECAHEDRON))),
        ("dodeca-rotated-icosa-edge", 1.7236,
         lambda: float(scene("dodeca-rotated").shells["icosahedron"].edge_lengths().mean())),
    ]


def closed_form_rows() -> list[VerificationRow]:
    return [VerificationRow.compare(n, p, float(f()), QUOTED_REL_TOL) for n, p, f in _closed_form_specs()]


# name, solid, quoted value, relative tolerance
OPTIMIZER_ROWS = (
    ("optimizer-octa-volume", SolidKind.OCTAHEDRON, 0.94281, 1e-4),
    ("optimizer-cube-volume", SolidKind.CUBE, 4.5485, 1e-2),
    ("optimizer-icosa-volume", SolidKind.ICOSAHEDRON, 5.9816, 1e-2),
    ("dodeca-rotated-reference", SolidKind.DODECAHEDRON, C.DODECA_REFERENCE_VOLUME, 2e-2),
)


def optimizer_rows(cfg: SearchConfig | None = None) -> list[VerificationRow]:
    rows = []
    for name, kind, quoted, tol in OPTIMIZER_ROWS:
        result = min_enclosing_regular_tetra(unit_solid(kind).vertices, cfg)
        rows.append(VerificationRow.compare(name, quoted, result.volume, tol))
    return rows


def verification_rows(include_optimizer: bool = True, cfg: SearchConfig | None = None) -> list[VerificationRow]:
    rows = closed_form_rows()
    if include_optimizer:
        rows += optimizer_rows(cfg)
    return rows


COLUMNS = ("name", "quoted_value", "computed_value", "relative_error", "tolerance", "status")


def _cells(row: VerificationRow) -> list[str]:
    return [
        row.name, fmt(row.quoted_value), fmt(row.computed_value),
        f"{row.relative_error:.3e}", f"{row.tolerance:.0e}", row.status,
    ]


def render(rows: list[VerificationRow], form: str = "table") -> str:
    if form == "json":
        return json.dumps([asdict(r) for r in rows], indent=2) + "\n"
    if form == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows(_cells(r) for r in rows)
        return buf.getvalue()
    cells = [list(COLUMNS)] + [_cells(r) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(COLUMNS))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    failed = sum(not r.passed for r in rows)
    lines.append(f"{len(rows) - failed}/{len(rows)} rows pass")
    return "\n".join(lines) + "\n"
