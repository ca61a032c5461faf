import re
import xml.etree.ElementTree as ET

import pytest

from chainconic.chain import propagate
from chainconic.generator import scenario
from chainconic.render import render_svg
from chainconic.report import verify_config

SVG = "{http://www.w3.org/2000/svg}"


def _svg(name, backend="exact"):
    result = verify_config(scenario(name), backend)
    assert result.passed
    return render_svg(result.chain, result.polygon, result.conic)


@pytest.mark.parametrize("name", ["fig2-ellipse", "fig3-parabola", "hyperbola"])
def test_structure(name):
    root = ET.fromstring(_svg(name).encode())
    assert root.get("viewBox") == "0 0 1000 1000"
    ids = [el.get("id") for el in root.iter() if el.get("id")]
    for expected in ["carrier-K", "carrier-L", "center-polygon", "conic-0", "support-1", "P-1", "Q-6", "O-6", "focus-K"]:
        assert expected in ids
    if name == "hyperbola":
        assert "conic-1" in ids
    if name == "fig3-parabola":
        assert "directrix" in ids and "focus-L" not in ids


def test_deterministic_bytes():
    assert _svg("fig2-ellipse") == _svg("fig2-ellipse")


def test_coordinates_within_viewbox():
    text = _svg("hyperbola")
    root = ET.fromstring(text.encode())
    conic = [el for el in root.iter(SVG + "path") if el.get("id", "").startswith("conic")]
    for el in conic:
        for x, y in re.findall(r"[ML](-?[\d.]+),(-?[\d.]+)", el.get("d")):
            assert -100 <= float(x) <= 1100 and -100 <= float(y) <= 1100


def test_render_without_conic():
    chain = propagate(scenario("fig2-ellipse"))
    text = render_svg(chain)
    assert "conic-0" not in text and "center-polygon" not in text
