from collections import Counter

import pytest

from hfmap.coords import (
    HFCoord,
    Q3_N5_FRACTIONS,
    adjacent,
    apply_to_coord,
    cusp_of,
    enumerate_coords,
    is_pole,
    normalize,
    parse_fraction,
    poles,
    translate,
    vertex_names,
)
from hfmap.group import HeckeParams, cached_group, generators

P45 = HeckeParams(4, 5)
P43 = HeckeParams(4, 3)
P35 = HeckeParams(3, 5)


def test_normalize_sign_examples():
    # -(4,2) = (1,3) mod 5, and (1,3) is the canonical representative (F2)
    assert normalize("B", 4, 2, P45) == HFCoord("B", 1, 3)
    assert vertex_names(P45).name(HFCoord("B", 1, 3)) == "F2"
    assert normalize("A", 1, 0, P45) == HFCoord("A", 1, 0)
    # sqrt2/2 and 2sqrt2/1 are the same vertex of the cube map
    assert normalize("B", 1, 2, P43) == normalize("B", 2, 1, P43)


def test_normalize_rejects_non_coprime():
    with pytest.raises(ValueError):
        normalize("A", 0, 0, P45)
    with pytest.raises(ValueError):
        normalize("A", 3, 0, HeckeParams(4, 9))
    with pytest.raises(ValueError):
        normalize("B", 1, 1, P35)  # no kind B when q = 3


def test_normalize_idempotent_exhaustive():
    for p in (P45, P43, HeckeParams(4, 7)):
        for u in enumerate_coords(p):
            assert normalize(u.kind, u.num, u.den, p) == u
            assert normalize(u.kind, -u.num, -u.den, p) == u


@pytest.mark.parametrize(
    "p,count",
    [(P45, 24), (P43, 8), (P35, 12), (HeckeParams(6, 5), 24), (HeckeParams(4, 7), 48)],
)
def test_enumeration_count_is_group_order_over_n(p, count):
    coords = enumerate_coords(p)
    assert len(coords) == count
    assert len(coords) == cached_group(p.q, p.n).order // p.n


def test_enumeration_rejects_even_n():
    with pytest.raises(ValueError):
        enumerate_coords(HeckeParams(4, 6))


def test_names_table_is_bijective():
    t45 = vertex_names(P45)
    assert len(t45) == 24
    assert sorted(t45.coord(n) for n in t45.names()) == enumerate_coords(P45)
    t43 = vertex_names(P43)
    assert len(t43) == 8
    assert sorted(t43.coord(n) for n in t43.names()) == enumerate_coords(P43)
    with pytest.raises(ValueError):
        vertex_names(P35)


def test_icosahedron_fraction_list():
    assert len(Q3_N5_FRACTIONS) == 12
    listed = {parse_fraction(s, P35) for s in Q3_N5_FRACTIONS}
    assert listed == set(enumerate_coords(P35))


def test_adjacency_examples():
    t = vertex_names(P45)
    assert adjacent(t.coord("H2"), t.coord("E1"), P45)  # 2*0 - 2*2*1 = -4 = 1 mod 5
    assert adjacent(t.coord("A1"), t.coord("A2"), P45)  # infinity joined to 0
    for u in enumerate_coords(P45):
        assert not adjacent(u, u, P45)
    # symmetry
    coords = enumerate_coords(P45)
    for u in coords:
        for v in coords:
            assert adjacent(u, v, P45) == adjacent(v, u, P45)


def test_adjacency_is_kind_bipartite():
    for u in enumerate_coords(P45):
        for v in enumerate_coords(P45):
            if adjacent(u, v, P45):
                assert u.kind != v.kind


def test_poles():
    t = vertex_names(P45)
    assert {t.name(u) for u in poles(P45)} == {"A1", "B1", "C2", "H2"}
    assert {f"{u.num}/{u.den}" for u in poles(P35)} == {"1/0", "2/0"}
    assert len(poles(P43)) == 2
    assert all(is_pole(u) for u in poles(P43))


def test_cusp_examples(group45):
    t = vertex_names(P45)
    s, _, r = generators(P45)
    assert cusp_of(group45.matrix(0), P45) == HFCoord("A", 1, 0)
    assert t.name(cusp_of(s, P45)) == "A2"  # S sends infinity to 0
    assert t.name(cusp_of(r, P45)) == "D2"  # R sends infinity to sqrt2/1


def test_cusp_constant_on_translation_cosets(group45):
    sigma = group45.right_mult_perm(group45.gen_T)
    cusps = [cusp_of(group45.matrix(i), P45) for i in range(group45.order)]
    for i in range(group45.order):
        assert cusps[int(sigma[i])] == cusps[i]


@pytest.mark.parametrize("qn", [(4, 3), (4, 5), (3, 5)])
def test_cusp_fibers_have_size_n(qn):
    p = HeckeParams(*qn)
    group = cached_group(*qn)
    fibers = Counter(cusp_of(group.matrix(i), p) for i in range(group.order))
    assert set(fibers.values()) == {p.n}
    assert sorted(fibers) == enumerate_coords(p)


def test_even_columns_realize_the_adjacency_determinant(group45):
    # for even g with columns A(a,c), B(b,d): a*d - m*b*c = det = 1
    odd = group45.parities()
    for i in range(group45.order):
        if odd[i]:
            continue
        g = group45.matrix(i)
        a, c = g.e11.rat, g.e21.irr
        b, d = g.e12.irr, g.e22.rat
        assert (a * d - 2 * b * c) % 5 == 1
        u = normalize("A", a, c, P45)
        v = normalize("B", b, d, P45)
        assert adjacent(u, v, P45)


def test_translation_action_examples():
    t = vertex_names(P45)
    assert t.name(translate(t.coord("E1"), P45)) == "G1"
    assert t.name(translate(t.coord("H2"), P45)) == "H2"
    assert t.name(translate(t.coord("F2"), P45)) == "E2"


def test_translation_matches_matrix_action():
    _, tmat, _ = generators(P45)
    for u in enumerate_coords(P45):
        assert apply_to_coord(tmat, u, P45) == translate(u, P45)


def test_translation_orbit_structure():
    # fixed: the four poles; every other orbit has length 5
    sizes = Counter()
    seen = set()
    for u in enumerate_coords(P45):
        if u in seen:
            continue
        orbit = {u}
        v = translate(u, P45)
        while v != u:
            orbit.add(v)
            v = translate(v, P45)
        seen |= orbit
        sizes[len(orbit)] += 1
    assert sizes == {1: 4, 5: 4}


def test_inversion_swaps_kinds():
    s, _, _ = generators(P45)
    for u in enumerate_coords(P45):
        assert apply_to_coord(s, u, P45).kind != u.kind


@pytest.mark.parametrize("qn", [(4, 3), (4, 5), (3, 5)])
def test_adjacency_equivariance_exhaustive(qn):
    p = HeckeParams(*qn)
    group = cached_group(*qn)
    coords = enumerate_coords(p)
    adj = {
        (u, v) for u in coords for v in coords if adjacent(u, v, p)
    }
    for i in range(group.order):
        g = group.matrix(i)
        images = {u: apply_to_coord(g, u, p) for u in coords}
        assert {(images[u], images[v]) for u, v in adj} == adj
