import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from symedge.cli import main
from symedge.svg import guide_positions, scatter_svg

DATA = Path(__file__).parent / "data"
NS = "{http://www.w3.org/2000/svg}"


def parse(text):
    root = ET.fromstring(text.encode())
    by_class = {}
    for el in root.iter():
        by_class.setdefault(el.get("class"), []).append(el)
    return root, by_class


def plot(tmp_path, d):
    out = tmp_path / f"d{d}.svg"
    assert main(["plot", "--d", str(d), "--out", str(out)]) == 0
    return out.read_text()


def test_canvas_and_guides():
    text = scatter_svg([(-0.5, 0.3), (-0.5, -0.3)], 2)
    root, cls = parse(text)
    assert root.get("viewBox") == "0 0 800 600"
    assert len(cls["guide"]) == 5
    assert all(g.get("stroke-dasharray") for g in cls["guide"])
    assert [float(g.get("data-re")) for g in cls["guide"]] == [-2, -1, 0, 1, 2]
    assert len(cls["symmetry"]) == 1
    labels = [t.text for t in root.iter(NS + "text")]
    assert "Re" in labels and "Im" in labels


def test_guide_values():
    assert [v for v, _ in guide_positions(34)] == [-34, -17, 16, 33, 34]


def test_deterministic():
    pts = [(1.23456, -2.5), (0.0, 0.0)]
    assert scatter_svg(pts, 4, "t") == scatter_svg(pts, 4, "t")


def test_title_escaped():
    assert "a&lt;b" in scatter_svg([(0, 0)], 2, "a<b")


def test_golden_d3(tmp_path):
    assert plot(tmp_path, 3) == (DATA / "plot_d3.svg").read_text()


def test_d3_points_on_symmetry_line(tmp_path):
    _, cls = parse(plot(tmp_path, 3))
    pts = cls["root"]
    assert len(pts) == 2
    sym_x = cls["symmetry"][0].get("x1")
    for p in pts:
        assert abs(float(p.get("data-re")) + 0.5) < 1e-9
        assert p.get("cx") == sym_x


def _guide_x(cls, value):
    return next(float(g.get("x1")) for g in cls["guide"] if float(g.get("data-re")) == value)


def test_d35_right_of_fano_guide(tmp_path):
    _, cls = parse(plot(tmp_path, 35))
    gx = _guide_x(cls, 16)
    assert any(float(p.get("cx")) > gx for p in cls["root"])
    assert any(float(p.get("data-re")) > 16 for p in cls["root"])


@pytest.mark.slow
def test_d127_right_of_dimension_guide(tmp_path):
    _, cls = parse(plot(tmp_path, 127))
    gx = _guide_x(cls, 126)
    assert any(float(p.get("cx")) > gx for p in cls["root"])


def test_unwritable_path(tmp_path):
    assert main(["plot", "--d", "3", "--out", str(tmp_path / "missing" / "x.svg")]) == 3
