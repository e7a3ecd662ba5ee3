import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tetrahull.constructions import CONSTRUCTIONS
from tetrahull.io import (
    SceneDocument,
    SceneParseError,
    document_scene,
    dump_document,
    fmt,
    mesh_text,
    parse_document,
    parse_mesh,
    read_mesh,
    scene_document,
    write_mesh,
)
from tetrahull.platonic import SolidKind, unit_solid


@pytest.mark.parametrize("kind", list(SolidKind))
def test_mesh_round_trip(kind, tmp_path):
    solid = unit_solid(kind)
    path = tmp_path / f"{kind.value}.obj"
    write_mesh(solid, path)
    back = read_mesh(path)
    assert np.max(np.abs(back.vertices - solid.vertices)) <= 1e-10
    assert back.faces == solid.faces
    back.validate()


def test_mesh_format():
    text = mesh_text(unit_solid(SolidKind.CUBE))
    lines = text.splitlines()
    assert sum(line.startswith("v ") for line in lines) == 8
    assert sum(line.startswith("f ") for line in lines) == 6
    assert text.endswith("\n")
    assert min(int(t) for line in lines if line.startswith("f") for t in line.split()[1:]) == 1


def test_parse_mesh_slashes_and_comments():
    text = "# tri\nv 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nf 1/1/1 3/3/3 2/2/2\nf 1 2 4\nf 1 4 3\nf 2 3 4\n"
    p = parse_mesh(text)
    assert len(p.vertices) == 4
    assert p.faces[0] == (0, 2, 1)


@pytest.mark.parametrize(
    "text, where",
    [("v 0 0\n", "line 1"), ("v 0 0 0\nf 1 x 2\n", "line 2"), ("v 0 0 0\nf 1 2 3\n", "face 1")],
)
def test_parse_mesh_errors(text, where):
    with pytest.raises(SceneParseError, match=where):
        parse_mesh(text)


@settings(max_examples=200)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_twelve_digits(x):
    s = fmt(x)
    assert float(s) == pytest.approx(x, rel=1e-11, abs=0)
    mantissa = s.split("e")[0].replace("-", "").replace(".", "").lstrip("0")
    assert len(mantissa) <= 12


def test_fmt_no_negative_zero():
    assert fmt(-0.0) == "0"


@pytest.mark.parametrize("name", sorted(CONSTRUCTIONS))
def test_document_round_trip(name):
    text = dump_document(scene_document(CONSTRUCTIONS[name]()))
    again = dump_document(parse_document(text))
    assert again == text
    scene = document_scene(parse_document(text))
    assert scene.label == name
    assert scene.contains_solid(1e-6)


def test_enclosure_edge_absent_for_right_tetra():
    data = json.loads(dump_document(scene_document(CONSTRUCTIONS["right-corner-cube"]())))
    assert "enclosureEdge" not in data
    assert "optimizerResult" not in data
    assert data["schemaVersion"] == 1
    assert data["claimedVolume"] == 4.5


def test_document_fields():
    data = json.loads(dump_document(scene_document(CONSTRUCTIONS["octa"]())))
    assert set(data) >= {"label", "solid", "enclosure", "enclosureEdge", "claimedVolume", "trace"}
    assert data["enclosureEdge"] == 2.0
    assert len(data["enclosure"]["faces"]) == 4


def test_json_error_reports_line():
    with pytest.raises(SceneParseError, match=r"line 2, column \d+"):
        parse_document('{\n  "label": ,\n}')


def test_validation_error_reports_field():
    data = json.loads(dump_document(scene_document(CONSTRUCTIONS["octa"]())))
    data["claimedVolume"] = "lots"
    with pytest.raises(SceneParseError, match="field claimedVolume"):
        parse_document(json.dumps(data))
    del data["claimedVolume"]
    data["solid"]["vertices"][0] = [1, 2]
    with pytest.raises(SceneParseError, match=r"field solid\.vertices\.0"):
        parse_document(json.dumps(data))


def test_unknown_keys_and_schema_rejected():
    data = json.loads(dump_document(scene_document(CONSTRUCTIONS["octa"]())))
    with pytest.raises(SceneParseError, match="field surprise"):
        parse_document(json.dumps({**data, "surprise": 1}))
    with pytest.raises(SceneParseError, match="field schemaVersion"):
        parse_document(json.dumps({**data, "schemaVersion": 2}))


def test_unknown_trace_name_rejected():
    doc = SceneDocument.model_validate(json.loads(dump_document(scene_document(CONSTRUCTIONS["octa"]()))))
    doc = doc.model_copy(update={"trace": {"notAName": 1.0}})
    with pytest.raises(ValueError):
        document_scene(doc)
