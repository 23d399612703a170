import re
import xml.etree.ElementTree as ET

import pytest

from hfmap.group import HeckeParams
from hfmap.polygon import boundary_from_circuit, bring_circuit, bring_side_pairing
from hfmap.render import (
    Cusp,
    RenderConfig,
    render_polygon,
    render_quotient,
    render_universal,
    universal_geodesics,
)


def test_depth_zero_is_the_imaginary_axis():
    geos = universal_geodesics(4, 0)
    assert len(geos) == 1
    assert {geos[0].a, geos[0].b} == {Cusp(0, 0, 1), Cusp(1, 0, 0)}


def test_principal_face_appears_at_depth_two():
    geos = universal_geodesics(4, 2)
    endpoints = {g.a for g in geos} | {g.b for g in geos}
    # infinity, 0/1, 1/sqrt2 = sqrt2/2, sqrt2/1
    for cusp in (Cusp(1, 0, 0), Cusp(0, 0, 1), Cusp(0, 1, 2), Cusp(0, 1, 1)):
        assert cusp in endpoints


@pytest.mark.parametrize("q", [3, 4, 6])
def test_edge_counts_strictly_increase(q):
    counts = [len(universal_geodesics(q, d)) for d in range(5)]
    assert all(a < b for a, b in zip(counts, counts[1:]))


def test_no_duplicate_endpoint_pairs():
    geos = universal_geodesics(4, 4)
    pairs = {(g.a, g.b) for g in geos}
    assert len(pairs) == len(geos)
    assert all(g.a != g.b for g in geos)


def test_depth_bound():
    with pytest.raises(ValueError):
        universal_geodesics(4, 13)
    with pytest.raises(ValueError):
        RenderConfig(depth=-1)
    with pytest.raises(ValueError):
        RenderConfig(model="sphere")


def _assert_well_formed(svg: str) -> ET.Element:
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    return root


@pytest.mark.parametrize("model", ["halfplane", "disk"])
def test_universal_svg(model):
    cfg = RenderConfig(model=model, depth=3)
    svg = render_universal(4, cfg)
    _assert_well_formed(svg)
    # one path per geodesic
    paths = svg.count("<path ")
    assert paths == len(universal_geodesics(4, 3))
    assert svg == render_universal(4, cfg)  # byte-identical


@pytest.mark.parametrize(
    "qn,ve", [((4, 5), (24, 60)), ((4, 3), (8, 12)), ((3, 5), (12, 30))]
)
def test_quotient_dot_counts(qn, ve):
    dot = render_quotient(HeckeParams(*qn), "dot")
    lines = dot.splitlines()
    assert lines[0] == "graph {"
    nodes = [l for l in lines if l.strip().endswith('";') and "--" not in l]
    edges = [l for l in lines if "--" in l]
    assert (len(nodes), len(edges)) == ve
    assert dot == render_quotient(HeckeParams(*qn), "dot")


def test_quotient_svg():
    svg = render_quotient(HeckeParams(4, 5), "svg")
    _assert_well_formed(svg)
    assert svg.count("<circle ") == 24
    with pytest.raises(ValueError):
        render_quotient(HeckeParams(4, 5), "png")


def test_polygon_svg():
    p = HeckeParams(4, 5)
    boundary = boundary_from_circuit(bring_circuit(), p)
    svg = render_polygon(boundary, bring_side_pairing())
    _assert_well_formed(svg)
    assert svg.count('class="corner">H2<') == 5
    assert svg.count('class="corner">B1<') == 10
    assert svg.count('class="corner">C2<') == 5
    assert svg.count("<line ") == 20
    colors = set(re.findall(r'stroke="(#[0-9a-f]{6})" stroke-width="2"', svg))
    assert len(colors) == 10  # one style per side pair
    assert svg == render_polygon(boundary, bring_side_pairing())
