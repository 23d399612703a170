from collections import Counter

import pytest

from hfmap.coords import vertex_names
from hfmap.group import HeckeParams, cached_group
from hfmap.polygon import (
    BRING_CIRCUIT_NAMES,
    BRING_SIDE_LABELS,
    Circuit,
    PairingTable,
    boundary_from_circuit,
    bring_circuit,
    bring_side_pairing,
    coset_domain_check,
    format_circuit_text,
    format_pairing_text,
    pairing_rule_check,
    parse_circuit_text,
    parse_pairing_text,
    polygon_corner_classes,
    rule_pairing,
    search_circuits,
    side_label_analysis,
    validate_circuit,
    vertex_classes,
)

P45 = HeckeParams(4, 5)


@pytest.fixture(scope="module")
def table():
    return vertex_names(P45)


@pytest.fixture(scope="module")
def boundary():
    return boundary_from_circuit(bring_circuit(), P45)


# -- circuits ---------------------------------------------------------------


def test_reference_circuit_validates():
    assert len(BRING_CIRCUIT_NAMES) == 12
    assert validate_circuit(bring_circuit(), P45)


def test_two_step_walks(table):
    ok = Circuit((table.coord("H2"), table.coord("E1")))
    assert validate_circuit(ok, P45)
    bad = Circuit((table.coord("H2"), table.coord("C2")))  # both kind B
    assert not validate_circuit(bad, P45)


def test_search_finds_reference_circuit(table):
    found = search_circuits(table.coord("H2"), 12, {0, 3, 6, 9}, P45)
    assert bring_circuit() in found
    # deterministic ordering
    again = search_circuits(table.coord("H2"), 12, {0, 3, 6, 9}, P45)
    assert found == again


def test_search_edge_cases(table):
    h2 = table.coord("H2")
    assert search_circuits(h2, 3, {0}, P45) == []  # bipartite: no odd walks
    assert len(search_circuits(h2, 4, {0}, P45)) > 0  # quadrilateral faces
    with pytest.raises(ValueError):
        search_circuits(h2, 17, {0}, P45)
    # start poleness must match position 0
    assert search_circuits(table.coord("E1"), 4, {0}, P45) == []


# -- boundary ---------------------------------------------------------------


def test_boundary_structure(boundary, table):
    assert len(boundary.slots) == 60
    assert len(boundary.pole_slots) == 20
    assert boundary.pole_slots == tuple(range(0, 60, 3))
    assert table.name(boundary.slots[12]) == "H2"
    assert table.name(boundary.slots[13]) == "G1"  # E1 + sqrt2
    counts = Counter(table.name(boundary.slots[i]) for i in boundary.pole_slots)
    assert counts == {"H2": 5, "C2": 5, "B1": 10}


def test_boundary_rejects_wrong_circuit(table):
    short = Circuit((table.coord("H2"), table.coord("E1")))
    with pytest.raises(ValueError):
        boundary_from_circuit(short, P45)
    # valid 12-circuit but poles in the wrong slots: rotate the reference
    rotated = Circuit(bring_circuit().seq[1:] + bring_circuit().seq[:1])
    with pytest.raises(ValueError):
        boundary_from_circuit(rotated, P45)


# -- pairing ----------------------------------------------------------------


def test_reference_pairing_contents():
    t = bring_side_pairing()
    assert (1, 18) in t.pairs
    assert (8, 19) in t.pairs
    assert len(t.pairs) == 10


def test_pairing_rule():
    assert pairing_rule_check(bring_side_pairing())
    # swapping two targets breaks the rule
    broken = PairingTable(
        pairs=tuple(sorted([
            (2, 9), (5, 6), (10, 13), (14, 17), (1, 18),
            (3, 12), (7, 16), (11, 20), (4, 15), (8, 19),
        ]))
    )
    assert not pairing_rule_check(broken)
    antipodal = PairingTable(pairs=tuple((k, k + 10) for k in range(1, 11)))
    assert not pairing_rule_check(antipodal)


def test_rule_forces_the_unique_matching():
    forced = rule_pairing()
    assert set(forced.pairs) == set(bring_side_pairing().pairs)
    # the rule already constrains ten disjoint pairs covering every side,
    # so any matching satisfying it equals the forced one
    covered = sorted(s for pair in forced.pairs for s in pair)
    assert covered == list(range(1, 21))


def test_pairing_table_validation():
    with pytest.raises(ValueError):
        PairingTable(pairs=tuple([(1, 2)] * 10))


# -- corner classes ---------------------------------------------------------


def test_vertex_classes_reference():
    part = vertex_classes(bring_side_pairing())
    assert set(part.classes) == {
        frozenset({1, 3, 5, 7, 9, 11, 13, 15, 17, 19}),
        frozenset({2, 6, 10, 14, 18}),
        frozenset({4, 8, 12, 16, 20}),
    }
    assert part.vertex_count == 3
    assert part.genus == 4  # 2 - 2g = 3 - 10 + 1


def test_vertex_classes_antipodal():
    part = vertex_classes(PairingTable(pairs=tuple((k, k + 10) for k in range(1, 11))))
    assert part.vertex_count == 1
    assert part.genus == 5


def test_vertex_classes_all_nonnegative():
    # genus >= 0 and V >= 1 for a sample of matchings
    import itertools
    import random

    rng = random.Random(5)
    sides = list(range(1, 21))
    for _ in range(100):
        rng.shuffle(sides)
        pairs = tuple(
            tuple(sorted((sides[2 * i], sides[2 * i + 1]))) for i in range(10)
        )
        part = vertex_classes(PairingTable(pairs=tuple(sorted(pairs))))
        assert part.vertex_count >= 1
        assert part.genus >= 0


def test_corner_classes_match_pole_labels(boundary, table):
    # the three vertex classes land on the three boundary poles: the class
    # sizes 10/5/5 match the corner labels B1 x10, H2 x5, C2 x5
    part = vertex_classes(bring_side_pairing())
    report = side_label_analysis(boundary)
    offset = report.alignment_offsets[0]
    label_of_corner = {}
    for k in range(1, 21):
        span = (k - 1 + offset) % 20
        label_of_corner[k] = table.name(boundary.slots[boundary.pole_slots[span]])
    for cls in part.classes:
        labels = {label_of_corner[c] for c in cls}
        assert len(labels) == 1, f"class {sorted(cls)} has mixed labels {labels}"
    sizes = {len(cls): label_of_corner[min(cls)] for cls in part.classes}
    assert sizes[10] == "B1"
    assert {sizes[5] for cls in part.classes if len(cls) == 5} <= {"H2", "C2"}


# -- side labels ------------------------------------------------------------


def test_side_label_analysis(boundary):
    rep = side_label_analysis(boundary)
    assert rep.orbit_b == ["F2", "E2", "K2", "B2", "J2"]
    assert rep.orbit_a == ["K1", "I1", "H1", "L1", "J1"]
    assert rep.span_interiors[0] == ("E1", "F2")
    assert rep.designation_counts_ok
    assert rep.fixture_counts_ok
    assert len(rep.alignment_offsets) == 1
    assert rep.pairing_consistent
    assert rep.ok


def test_side_label_fixture_multiset():
    counts = Counter(BRING_SIDE_LABELS.values())
    assert len(counts) == 10
    assert set(counts.values()) == {2}
    # classically paired sides carry the same label
    for a, b in bring_side_pairing().pairs:
        assert BRING_SIDE_LABELS[a] == BRING_SIDE_LABELS[b]


# -- coset fundamental domain -----------------------------------------------


@pytest.mark.parametrize(
    "qn,chi",
    [((4, 5), -6), ((4, 3), 2), ((3, 5), 2), ((6, 5), -16), ((4, 7), -36)],
)
def test_coset_domain_chi(qn, chi):
    report = coset_domain_check(cached_group(*qn))
    assert report.chi == chi
    assert report.matches_map
    assert report.genus == (2 - chi) // 2
    # every boundary pairing element lies in the congruence kernel
    assert report.pairings_in_kernel == report.edge_pairs
    # tree + boundary bookkeeping
    assert report.tree_edges == report.tiles - 1
    assert report.boundary_sides == 2 * report.edge_pairs


def test_coset_domain_rejects_even_modulus():
    with pytest.raises(ValueError):
        coset_domain_check(cached_group(4, 6))


def test_polygon_corner_classes_square_torus():
    # abab identification of a square gives the torus: V=1, chi = 1-2+1 = 0
    classes = polygon_corner_classes(4, [(0, 2), (1, 3)])
    assert len(classes) == 1


# -- text formats -----------------------------------------------------------


def test_pairing_text_roundtrip():
    t = bring_side_pairing()
    text = format_pairing_text(t)
    assert parse_pairing_text(text) == t
    commented = "# classical pairing\n" + text.replace("\n", "   # pair\n", 1)
    assert parse_pairing_text(commented) == t
    with pytest.raises(ValueError):
        parse_pairing_text("1 2 3\n")


def test_circuit_text_roundtrip(table):
    c = bring_circuit()
    named = format_circuit_text(c, P45)
    assert named == ",".join(BRING_CIRCUIT_NAMES)
    assert parse_circuit_text(named, P45) == c
    raw = format_circuit_text(c, P45, use_names=False)
    assert parse_circuit_text(raw, P45) == c
    assert parse_circuit_text("B:2/0, A:2/1", P45) == Circuit(
        (table.coord("H2"), table.coord("E1"))
    )
