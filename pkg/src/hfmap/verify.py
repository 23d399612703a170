"""One-shot verification suite covering every headline property.

Each check is independent and returns a pass/fail result with a short
detail string; the CLI prints one line per check and exits nonzero if any
fails.  The embedded circuit and side pairing can be replaced by caller
fixtures, which is how corrupted inputs are detected end to end.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import coords as C
from . import maps as M
from . import polygon as P
from . import render as R
from .group import HeckeParams, cached_group, perm_order, s5_permutation_group

__all__ = ["CheckResult", "run_checks", "CHECK_NAMES"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def _map_for(q: int, n: int) -> M.MapStructure:
    return M.build_algebraic_map(cached_group(q, n))


def _check_index_formula() -> str:
    from .group import principal_congruence_index

    if principal_congruence_index(HeckeParams(4, 5)) != 120:
        raise AssertionError("index(4,5) != 120")
    if principal_congruence_index(HeckeParams(4, 3)) != 24:
        raise AssertionError("index(4,3) != 24")
    pairs = [(3, 5), (4, 3), (4, 5), (4, 7), (6, 5)]
    for q, n in pairs:
        formula = principal_congruence_index(HeckeParams(q, n))
        enumerated = cached_group(q, n).order
        if formula != enumerated:
            raise AssertionError(f"({q},{n}): formula {formula} != closure {enumerated}")
    orders = ", ".join(str(cached_group(q, n).order) for q, n in pairs)
    return f"closure orders {orders} all equal the index formula"


def _check_bring_map() -> str:
    group = cached_group(4, 5)
    inv = _map_for(4, 5).invariants()
    want = (120, 24, 60, 30, 4, 5, 4)
    got = (inv.darts, inv.vertices, inv.edges, inv.faces, inv.genus,
           inv.vertex_valency, inv.face_size)
    if got != want:
        raise AssertionError(f"invariants {got} != {want}")
    p = HeckeParams(4, 5)
    table = C.vertex_names(p)
    cusps = {C.cusp_of(group.matrix(i), p) for i in range(group.order)}
    named = {table.coord(name) for name in table.names()}
    if cusps != named:
        raise AssertionError("map vertices do not match the 24 named coordinates")
    return "darts=120 V=24 E=60 F=30 genus=4, vertices = the 24 named coordinates"


def _check_cube() -> str:
    p = HeckeParams(4, 3)
    inv = _map_for(4, 3).invariants()
    if (inv.vertices, inv.edges, inv.faces, inv.genus) != (8, 12, 6, 0):
        raise AssertionError(f"cube invariants wrong: {inv}")
    table = C.vertex_names(p)
    if {table.coord(nm) for nm in table.names()} != set(C.enumerate_coords(p)):
        raise AssertionError("coordinates do not match the 8 cube fractions")
    graph = M.build_coordinate_graph(p)
    if not M.graphs_isomorphic(graph.adjacency_matrix(), M.cube_graph_adjacency()):
        raise AssertionError("coordinate graph is not the cube graph")
    return "V=8 E=12 F=6 genus=0, coordinate graph isomorphic to the 3-cube"


def _check_icosahedron() -> str:
    p = HeckeParams(3, 5)
    listed = {C.parse_fraction(s, p) for s in C.Q3_N5_FRACTIONS}
    if listed != set(C.enumerate_coords(p)):
        raise AssertionError("fraction list does not match the enumeration")
    graph = M.build_coordinate_graph(p)
    if len(graph.nodes) != 12 or len(graph.edges) != 30:
        raise AssertionError("graph is not 12 vertices / 30 edges")
    inv = _map_for(3, 5).invariants()
    if (inv.vertices, inv.edges, inv.faces, inv.genus) != (12, 30, 20, 0):
        raise AssertionError(f"icosahedron invariants wrong: {inv}")
    return "12 fractions, 30 edges, F=20, genus=0"


def _check_oracle_equivalence() -> str:
    pg = s5_permutation_group()
    if pg.order != 120:
        raise AssertionError(f"permutation group order {pg.order} != 120")
    orders = tuple(perm_order(pg.gens[k]) for k in ("x", "y", "z"))
    if orders != (2, 5, 4):
        raise AssertionError(f"generator orders {orders} != (2, 5, 4)")
    if not M.is_isomorphic(M.permutation_model_map(pg), _map_for(4, 5)):
        raise AssertionError("permutation model is not isomorphic to the matrix model")
    return "order 120, generator orders (2,5,4), dart systems isomorphic"


def _check_circuit_boundary(circuit: P.Circuit) -> str:
    p = HeckeParams(4, 5)
    if not P.validate_circuit(circuit, p):
        raise AssertionError("circuit fails adjacency validation")
    b = P.boundary_from_circuit(circuit, p)
    table = C.vertex_names(p)
    counts = Counter(table.name(b.slots[i]) for i in b.pole_slots)
    if counts != {"H2": 5, "C2": 5, "B1": 10}:
        raise AssertionError(f"pole multiset {dict(counts)} wrong")
    for src, dst in (("E1", "G1"), ("F2", "E2"), ("H2", "H2")):
        if C.translate(table.coord(src), p) != table.coord(dst):
            raise AssertionError(f"translation {src} -> {dst} fails")
    return "60-slot boundary, poles H2:5 C2:5 B1:10, translation identities hold"


def _check_pairing_genus(pairing: P.PairingTable) -> str:
    if not P.pairing_rule_check(pairing):
        raise AssertionError("pairing fails the side-pairing rule")
    forced = P.rule_pairing()
    if set(forced.pairs) != set(pairing.pairs):
        raise AssertionError("pairing is not the matching forced by the rule")
    part = P.vertex_classes(pairing)
    want = (
        frozenset(range(1, 21, 2)),
        frozenset({2, 6, 10, 14, 18}),
        frozenset({4, 8, 12, 16, 20}),
    )
    if set(part.classes) != set(want):
        raise AssertionError(f"corner classes {part.classes} wrong")
    if part.genus != 4:
        raise AssertionError(f"genus {part.genus} != 4")
    return "rule holds, unique forced matching, classes 10/5/5, genus 4"


def _check_side_labels(circuit: P.Circuit) -> str:
    p = HeckeParams(4, 5)
    rep = P.side_label_analysis(P.boundary_from_circuit(circuit, p))
    if sorted(rep.orbit_b) != sorted(["F2", "E2", "K2", "B2", "J2"]):
        raise AssertionError(f"orbit of F2 wrong: {rep.orbit_b}")
    if sorted(rep.orbit_a) != sorted(["K1", "I1", "H1", "L1", "J1"]):
        raise AssertionError(f"orbit of K1 wrong: {rep.orbit_a}")
    if not rep.designation_counts_ok or not rep.fixture_counts_ok:
        raise AssertionError("side labels are not the two orbits, each twice")
    if len(rep.alignment_offsets) != 1 or not rep.pairing_consistent:
        raise AssertionError("no unique alignment with the classical numbering")
    return (
        "two orbits of 5 labels; each label twice; unique alignment offset "
        f"{rep.alignment_offsets[0]} matches labels and pairing"
    )


def _check_property_suites() -> str:
    # Equivariance of adjacency under the full group, exhaustively.
    for q, n in ((4, 3), (4, 5), (3, 5)):
        p = HeckeParams(q, n)
        group = cached_group(q, n)
        graph = M.build_coordinate_graph(p)
        index = graph.node_index
        adj = graph.adjacency_matrix()
        for i in range(group.order):
            g = group.matrix(i)
            perm = np.asarray(
                [index[C.apply_to_coord(g, u, p)] for u in graph.nodes]
            )
            if not np.array_equal(adj[np.ix_(perm, perm)], adj):
                raise AssertionError(f"({q},{n}): element {i} breaks adjacency")
        if q == 4 and not graph.is_bipartite_by_kind():
            raise AssertionError(f"({q},{n}): graph is not kind-bipartite")
    # Correspondence and the coset fundamental-domain characteristic.
    for q, n in ((4, 3), (4, 5), (3, 5), (6, 5), (4, 7)):
        group = cached_group(q, n)
        amap = M.build_algebraic_map(group)
        if n % 2:
            rep = M.correspondence_check(group, amap, M.build_coordinate_graph(HeckeParams(q, n)))
            if not rep.ok:
                raise AssertionError(f"({q},{n}): correspondence fails: {rep.problems}")
        dom = P.coset_domain_check(group)
        if not dom.matches_map:
            raise AssertionError(
                f"({q},{n}): coset domain chi {dom.chi} != map chi {dom.map_chi}"
            )
    return "equivariance, bipartiteness, correspondence and coset chi all hold"


def _check_rendering() -> str:
    geos = R.universal_geodesics(4, 2)
    endpoints = {g.a for g in geos} | {g.b for g in geos}
    principal = [R.Cusp(1, 0, 0), R.Cusp(0, 0, 1), R.Cusp(0, 1, 2), R.Cusp(0, 1, 1)]
    if not all(c in endpoints for c in principal):
        raise AssertionError("principal face cusps missing at depth 2")
    for (q, n), (nv, ne) in {(4, 5): (24, 60), (4, 3): (8, 12), (3, 5): (12, 30)}.items():
        dot = R.render_quotient(HeckeParams(q, n))
        lines = dot.splitlines()
        nodes = sum(1 for l in lines if l.strip().endswith('";') and "--" not in l)
        edges = sum(1 for l in lines if "--" in l)
        if (nodes, edges) != (nv, ne):
            raise AssertionError(f"dot({q},{n}) has {(nodes, edges)}, want {(nv, ne)}")
    cfg = R.RenderConfig(model="disk", depth=3)
    svg = R.render_universal(4, cfg)
    ET.fromstring(svg)
    if svg != R.render_universal(4, cfg):
        raise AssertionError("repeated render is not byte-identical")
    return "principal face present, DOT counts exact, SVG well-formed and stable"


CHECK_NAMES = [
    "index-formula",
    "bring-map",
    "cube",
    "icosahedron",
    "oracle-equivalence",
    "circuit-boundary",
    "pairing-genus",
    "side-labels",
    "property-suites",
    "rendering",
]


def run_checks(
    circuit: P.Circuit | None = None,
    pairing: P.PairingTable | None = None,
) -> list[CheckResult]:
    """Run all checks; failures are captured, never raised."""
    circuit = circuit or P.bring_circuit()
    pairing = pairing or P.bring_side_pairing()
    table: list[tuple[str, Callable[[], str]]] = [
        ("index-formula", _check_index_formula),
        ("bring-map", _check_bring_map),
        ("cube", _check_cube),
        ("icosahedron", _check_icosahedron),
        ("oracle-equivalence", _check_oracle_equivalence),
        ("circuit-boundary", lambda: _check_circuit_boundary(circuit)),
        ("pairing-genus", lambda: _check_pairing_genus(pairing)),
        ("side-labels", lambda: _check_side_labels(circuit)),
        ("property-suites", _check_property_suites),
        ("rendering", _check_rendering),
    ]
    results = []
    for name, fn in table:
        try:
            detail = fn()
            results.append(CheckResult(name=name, ok=True, detail=detail))
        except Exception as exc:
            results.append(CheckResult(name=name, ok=False, detail=str(exc)))
    return results
