"""Farey circuits, the 60-vertex boundary, and the 20-gon of the genus-4 map.

The boundary of the fundamental 20-gon carries 60 coordinates: a 12-vertex
circuit through the poles plus its translates under T (which rotates the map
by 2*pi/5 about the center 1/0).  Pole slots become polygon corners, sides
are paired by equal coordinate labels, and a union-find over the identified
corners recovers V - E + F = 2 - 2g.  The same corner-identification engine
drives an independent Euler-characteristic check built from a spanning-tree
fundamental domain of coset tiles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coords import (
    HFCoord,
    NameTable,
    adjacent,
    is_pole,
    normalize,
    translate,
    vertex_names,
)
from .group import FiniteHeckeGroup, HeckeParams
from .maps import CoordGraph, MapStructure, build_algebraic_map, build_coordinate_graph

__all__ = [
    "Circuit",
    "BoundarySequence",
    "PairingTable",
    "CornerPartition",
    "BRING_CIRCUIT_NAMES",
    "BRING_SIDE_LABELS",
    "bring_circuit",
    "bring_side_pairing",
    "rule_pairing",
    "validate_circuit",
    "search_circuits",
    "boundary_from_circuit",
    "pairing_rule_check",
    "vertex_classes",
    "polygon_corner_classes",
    "side_label_analysis",
    "SideLabelReport",
    "coset_domain_check",
    "CosetDomainReport",
    "parse_pairing_text",
    "format_pairing_text",
    "parse_circuit_text",
    "format_circuit_text",
]

# The 12-vertex circuit through the boundary poles of the genus-4 map, and
# the classical side labels / side pairing of its 20-gon (sides 1..20).
BRING_CIRCUIT_NAMES = [
    "H2", "E1", "F2", "B1", "J2", "K1", "C2", "L1", "E2", "B1", "F2", "D1",
]

BRING_SIDE_LABELS = {
    1: "K2", 2: "B2", 3: "L1", 4: "I1", 5: "B2",
    6: "J2", 7: "J1", 8: "H1", 9: "J2", 10: "F2",
    11: "K1", 12: "L1", 13: "F2", 14: "E2", 15: "I1",
    16: "J1", 17: "E2", 18: "K2", 19: "H1", 20: "K1",
}

_BRING_SIDE_PAIRS = [
    (2, 5), (6, 9), (10, 13), (14, 17), (18, 1),
    (3, 12), (7, 16), (11, 20), (15, 4), (19, 8),
]


@dataclass(frozen=True)
class Circuit:
    """Closed walk of coordinates; the edge back to the start is implicit."""

    seq: tuple[HFCoord, ...]

    def __len__(self) -> int:
        return len(self.seq)


@dataclass(frozen=True)
class PairingTable:
    """Perfect matching on polygon sides 1..num_sides."""

    pairs: tuple[tuple[int, int], ...]
    num_sides: int = 20

    def __post_init__(self) -> None:
        flat = [s for pair in self.pairs for s in pair]
        if sorted(flat) != list(range(1, self.num_sides + 1)):
            raise ValueError("pairs are not a perfect matching of the sides")

    def partner(self, k: int) -> int:
        for a, b in self.pairs:
            if k == a:
                return b
            if k == b:
                return a
        raise KeyError(k)


@dataclass(frozen=True)
class CornerPartition:
    classes: tuple[frozenset[int], ...]
    genus: int

    @property
    def vertex_count(self) -> int:
        return len(self.classes)


def bring_circuit(p: HeckeParams | None = None) -> Circuit:
    p = p or HeckeParams(4, 5)
    table = vertex_names(p)
    return Circuit(tuple(table.coord(name) for name in BRING_CIRCUIT_NAMES))


def bring_side_pairing() -> PairingTable:
    pairs = tuple(tuple(sorted(pair)) for pair in _BRING_SIDE_PAIRS)
    return PairingTable(pairs=tuple(sorted(pairs)))


def rule_pairing(num_sides: int = 20) -> PairingTable:
    """The matching forced by the rule: k = 2 mod 4 pairs with k+3,
    k = 3 mod 4 pairs with k+9 (side numbers wrap into 1..num_sides)."""
    pairs = set()
    for k in range(1, num_sides + 1):
        if k % 4 == 2:
            pairs.add(tuple(sorted((k, (k + 3 - 1) % num_sides + 1))))
        elif k % 4 == 3:
            pairs.add(tuple(sorted((k, (k + 9 - 1) % num_sides + 1))))
    return PairingTable(pairs=tuple(sorted(pairs)), num_sides=num_sides)


def pairing_rule_check(t: PairingTable) -> bool:
    """True iff every side 2 mod 4 pairs to +3 and every 3 mod 4 to +9."""
    n = t.num_sides
    for k in range(1, n + 1):
        if k % 4 == 2 and t.partner(k) != (k + 3 - 1) % n + 1:
            return False
        if k % 4 == 3 and t.partner(k) != (k + 9 - 1) % n + 1:
            return False
    return True


def validate_circuit(c: Circuit, p: HeckeParams) -> bool:
    """Adjacency-only validation; vertices and edges may repeat."""
    seq = c.seq
    if len(seq) < 2:
        return False
    return all(adjacent(seq[i], seq[(i + 1) % len(seq)], p) for i in range(len(seq)))


def search_circuits(
    start: HFCoord,
    length: int,
    pole_positions: set[int],
    p: HeckeParams,
    graph: CoordGraph | None = None,
) -> list[Circuit]:
    """All closed walks of the given length from start whose pole positions
    are exactly the given set; deterministic depth-first order."""
    if length > 16:
        raise ValueError(f"circuit search length {length} exceeds the bound 16")
    if (0 in pole_positions) != is_pole(start):
        return []
    graph = graph or build_coordinate_graph(p)
    index = graph.node_index
    nodes = graph.nodes
    nbrs: list[list[int]] = [[] for _ in nodes]
    for a, b in graph.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    for lst in nbrs:
        lst.sort()
    pole_flags = [is_pole(u) for u in nodes]

    # BFS distances to the start node, for return-distance pruning.
    start_idx = index[start]
    dist = np.full(len(nodes), -1, dtype=np.int64)
    dist[start_idx] = 0
    queue = [start_idx]
    while queue:
        nxt = []
        for v in queue:
            for w in nbrs[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        queue = nxt

    # Position k holds circuit vertex v_k (0-based); position `length`
    # closes back onto v_0.
    results: list[Circuit] = []
    path = [start_idx]

    def extend(pos: int) -> None:
        cur = path[-1]
        remaining = length - pos
        if remaining == 0:
            if cur == start_idx:
                results.append(Circuit(tuple(nodes[i] for i in path[:-1])))
            return
        for w in nbrs[cur]:
            if dist[w] > remaining - 1:
                continue
            if pos + 1 == length:
                if w != start_idx:
                    continue
            elif pole_flags[w] != ((pos + 1) in pole_positions):
                continue
            path.append(w)
            extend(pos + 1)
            path.pop()

    extend(0)
    return results


@dataclass(frozen=True)
class BoundarySequence:
    """Cyclic sequence of boundary coordinates; slot j + L is T(slot j)."""

    params: HeckeParams
    slots: tuple[HFCoord, ...]
    pole_slots: tuple[int, ...]

    @property
    def circuit_length(self) -> int:
        return len(self.slots) // self.params.n

    def spans(self) -> list[tuple[int, int]]:
        """Pole-to-pole index ranges (start pole slot, end pole slot)."""
        ps = list(self.pole_slots)
        return [(ps[i], ps[(i + 1) % len(ps)]) for i in range(len(ps))]


def boundary_from_circuit(c: Circuit, p: HeckeParams) -> BoundarySequence:
    """Concatenate the n translates of the circuit and validate the seams."""
    if not validate_circuit(c, p):
        raise ValueError("circuit fails adjacency validation")
    pole_positions = {i for i, u in enumerate(c.seq) if is_pole(u)}
    if len(c.seq) != 12 or pole_positions != {0, 3, 6, 9}:
        raise ValueError(
            "boundary construction expects a 12-vertex circuit with poles "
            f"at positions 0, 3, 6, 9; got length {len(c.seq)}, poles {sorted(pole_positions)}"
        )
    block = list(c.seq)
    slots: list[HFCoord] = []
    for _ in range(p.n):
        slots.extend(block)
        block = [translate(u, p) for u in block]
    total = len(slots)
    for j in range(total):
        if not adjacent(slots[j], slots[(j + 1) % total], p):
            raise ValueError(f"boundary seam violation between slots {j} and {j+1}")
    for j in range(total):
        if translate(slots[j], p) != slots[(j + len(c.seq)) % total]:
            raise ValueError(f"slot {j} does not translate onto slot {j + len(c.seq)}")
    pole_slots = tuple(j for j, u in enumerate(slots) if is_pole(u))
    if len(pole_slots) != p.n * len(pole_positions):
        raise ValueError("pole count mismatch after translation")
    return BoundarySequence(params=p, slots=tuple(slots), pole_slots=pole_slots)


# ---------------------------------------------------------------------------
# Corner identification.
# ---------------------------------------------------------------------------


def polygon_corner_classes(num_sides: int, pairs: list[tuple[int, int]]) -> list[set[int]]:
    """Corner classes of a polygon whose sides are glued in pairs.

    Sides and corners are 0-based; side i runs from corner i to corner i+1
    (cyclically).  Gluing sides (i, j) identifies corner i with j+1 and
    corner i+1 with j (the two sides are traversed oppositely along the
    boundary).
    """
    parent = list(range(num_sides))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for i, j in pairs:
        union(i, (j + 1) % num_sides)
        union((i + 1) % num_sides, j)
    groups: dict[int, set[int]] = {}
    for c in range(num_sides):
        groups.setdefault(find(c), set()).add(c)
    return sorted(groups.values(), key=min)


def vertex_classes(t: PairingTable) -> CornerPartition:
    """Identify the polygon corners a_1..a_20 under the side pairing.

    Corner a_k is the first corner of side k going around the boundary;
    genus comes from V - E + F = 2 - 2g with E = 10 and F = 1.
    """
    n = t.num_sides
    zero_based = [(a - 1, b - 1) for a, b in t.pairs]
    classes = polygon_corner_classes(n, zero_based)
    v = len(classes)
    chi = v - n // 2 + 1
    if chi % 2:
        raise ValueError(f"odd Euler characteristic {chi} from corner classes")
    return CornerPartition(
        classes=tuple(frozenset(c + 1 for c in cls) for cls in classes),
        genus=(2 - chi) // 2,
    )


# ---------------------------------------------------------------------------
# Side labels of the 20-gon.
# ---------------------------------------------------------------------------


@dataclass
class SideLabelReport:
    orbit_b: list[str]
    orbit_a: list[str]
    span_interiors: list[tuple[str, str]]
    designated: list[str]
    designation_counts_ok: bool
    fixture_counts_ok: bool
    alignment_offsets: list[int]
    pairing_consistent: bool

    @property
    def ok(self) -> bool:
        return (
            self.designation_counts_ok
            and self.fixture_counts_ok
            and len(self.alignment_offsets) == 1
            and self.pairing_consistent
        )


def _translate_orbit(name: str, table: NameTable, p: HeckeParams) -> list[str]:
    u = table.coord(name)
    orbit = [name]
    v = translate(u, p)
    while v != u:
        orbit.append(table.name(v))
        v = translate(v, p)
    return orbit


def side_label_analysis(b: BoundarySequence) -> SideLabelReport:
    """Interior labels of the 20 pole-to-pole spans, and their bookkeeping.

    Each span has one kind-A and one kind-B interior vertex.  Designating
    the kind-A label when it lies in the valency-5 orbit of K1 and the
    kind-B label otherwise is forced by counting, and yields each of the
    ten side labels exactly twice.  A unique cyclic offset aligns the
    designations with the classical side numbering, which also carries the
    same-label span pairs onto the classical side pairing.
    """
    p = b.params
    if (p.q, p.n) != (4, 5):
        raise ValueError("side labels are defined for the q=4, n=5 boundary")
    table = vertex_names(p)
    orbit_b = _translate_orbit("F2", table, p)
    orbit_a = _translate_orbit("K1", table, p)

    poles = list(b.pole_slots)
    num_spans = len(poles)
    total = len(b.slots)
    interiors: list[tuple[str, str]] = []
    designated: list[str] = []
    for s in range(num_spans):
        start = poles[s]
        end = poles[(s + 1) % num_spans]
        width = (end - start) % total
        inner = [table.name(b.slots[(start + k) % total]) for k in range(1, width)]
        if len(inner) != 2:
            raise ValueError(f"span {s} has {len(inner)} interior vertices, expected 2")
        interiors.append((inner[0], inner[1]))
        in_a = [x for x in inner if x in orbit_a]
        designated.append(in_a[0] if in_a else next(x for x in inner if x in orbit_b))

    from collections import Counter

    want = sorted(orbit_a + orbit_b)
    designation_counts = Counter(designated)
    designation_counts_ok = (
        sorted(designation_counts) == want
        and all(v == 2 for v in designation_counts.values())
    )
    fixture = [BRING_SIDE_LABELS[k] for k in range(1, 21)]
    fixture_counts = Counter(fixture)
    fixture_counts_ok = (
        sorted(fixture_counts) == want and all(v == 2 for v in fixture_counts.values())
    )

    # Rotational alignment of our span order with the classical numbering.
    offsets = [
        r
        for r in range(num_spans)
        if all(designated[(k - 1 + r) % num_spans] == fixture[k - 1] for k in range(1, 21))
    ]

    pairing_consistent = False
    if len(offsets) == 1:
        r = offsets[0]
        by_label: dict[str, list[int]] = {}
        for s, lab in enumerate(designated):
            by_label.setdefault(lab, []).append(s)
        derived = set()
        for slots in by_label.values():
            if len(slots) != 2:
                break
            sides = tuple(sorted(((s - r) % num_spans) + 1 for s in slots))
            derived.add(sides)
        else:
            derived_table = PairingTable(pairs=tuple(sorted(derived)))
            pairing_consistent = set(derived_table.pairs) == set(bring_side_pairing().pairs)

    return SideLabelReport(
        orbit_b=orbit_b,
        orbit_a=orbit_a,
        span_interiors=interiors,
        designated=designated,
        designation_counts_ok=designation_counts_ok,
        fixture_counts_ok=fixture_counts_ok,
        alignment_offsets=offsets,
        pairing_consistent=pairing_consistent,
    )


# ---------------------------------------------------------------------------
# Spanning-tree fundamental domain check.
# ---------------------------------------------------------------------------


@dataclass
class CosetDomainReport:
    tiles: int
    tree_edges: int
    boundary_sides: int
    edge_pairs: int
    corner_classes: int
    chi: int
    genus: int
    map_chi: int
    matches_map: bool
    pairings_in_kernel: int


def coset_domain_check(group: FiniteHeckeGroup) -> CosetDomainReport:
    """Euler characteristic from a glued fundamental domain of coset tiles.

    Each group element is a tile shaped like the standard fundamental region:
    sides L, arc1, arc2, R in boundary order, with R(g) glued to L(g*T) and
    arc1(g) to arc2(g*S).  Gluing tiles along a BFS spanning tree yields a
    disk; walking its boundary gives one big polygon whose sides are paired
    by the leftover gluings (all of which are trivial in the quotient, i.e.
    lie in the congruence kernel).  Corner identification then computes the
    surface's Euler characteristic independently of any orbit counting.
    """
    if group.params.n % 2 == 0:
        raise ValueError("coset domain check requires odd n")
    amap = build_algebraic_map(group)
    size = group.order
    sigma = amap.sigma  # g -> g*T
    alpha = amap.alpha  # g -> g*S
    sigma_inv = np.argsort(sigma)

    # Side encoding: 4*g + k with k in L=0, arc1=1, arc2=2, R=3 (boundary order).
    def partner(sid: int) -> int:
        g, k = divmod(sid, 4)
        if k == 0:
            return 4 * int(sigma_inv[g]) + 3
        if k == 3:
            return 4 * int(sigma[g]) + 0
        if k == 1:
            return 4 * int(alpha[g]) + 2
        return 4 * int(alpha[g]) + 1

    # BFS spanning tree over tiles; crossing side k of tile g reaches:
    # L -> g*T^-1, arc1/arc2 -> g*S, R -> g*T.
    neighbor_sides = (3, 0, 1, 2)
    tree = np.zeros(4 * size, dtype=bool)
    seen = np.zeros(size, dtype=bool)
    seen[0] = True
    queue = [0]
    tree_edges = 0
    while queue:
        nxt = []
        for g in queue:
            for k in neighbor_sides:
                sid = 4 * g + k
                other = partner(sid)
                h = other // 4
                if not seen[h]:
                    seen[h] = True
                    tree[sid] = True
                    tree[other] = True
                    tree_edges += 1
                    nxt.append(h)
        queue = nxt
    if not bool(seen.all()):
        raise RuntimeError("tile graph is disconnected")

    # Boundary walk of the glued disk.
    def next_boundary(sid: int) -> int:
        g, k = divmod(sid, 4)
        t = 4 * g + (k + 1) % 4
        while tree[t]:
            pg, pk = divmod(partner(t), 4)
            t = 4 * pg + (pk + 1) % 4
        return t

    start = next(s for s in range(4 * size) if not tree[s])
    walk = [start]
    cur = next_boundary(start)
    while cur != start:
        walk.append(cur)
        cur = next_boundary(cur)
    expected_sides = 4 * size - 2 * tree_edges
    if len(walk) != expected_sides:
        raise RuntimeError(
            f"boundary walk covers {len(walk)} sides, expected {expected_sides}"
        )

    position = {sid: i for i, sid in enumerate(walk)}
    pairs = []
    kernel_checked = 0
    for i, sid in enumerate(walk):
        other = partner(sid)
        j = position[other]
        if i < j:
            pairs.append((i, j))
            # The pairing element maps tile g onto tile h across this edge;
            # in the quotient it is g * X * (gX)^-1 = identity, i.e. the
            # side-pairing transformation lies in the congruence kernel.
            g, k = divmod(sid, 4)
            h = other // 4
            crossed = int(sigma_inv[g]) if k == 0 else (
                int(sigma[g]) if k == 3 else int(alpha[g])
            )
            if crossed == h:
                kernel_checked += 1

    classes = polygon_corner_classes(len(walk), pairs)
    chi = len(classes) - len(pairs) + 1
    inv = amap.invariants()
    map_chi = inv.vertices - inv.edges + inv.faces
    if chi % 2:
        raise RuntimeError(f"odd Euler characteristic {chi} from coset domain")
    return CosetDomainReport(
        tiles=size,
        tree_edges=tree_edges,
        boundary_sides=len(walk),
        edge_pairs=len(pairs),
        corner_classes=len(classes),
        chi=chi,
        genus=(2 - chi) // 2,
        map_chi=map_chi,
        matches_map=chi == map_chi,
        pairings_in_kernel=kernel_checked,
    )


# ---------------------------------------------------------------------------
# Text formats: pairing tables and circuits.
# ---------------------------------------------------------------------------


def parse_pairing_text(text: str, num_sides: int = 20) -> PairingTable:
    """Lines "i j" (1-based); '#' starts a comment."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two side numbers, got {raw!r}")
        a, b = int(parts[0]), int(parts[1])
        pairs.append(tuple(sorted((a, b))))
    return PairingTable(pairs=tuple(sorted(pairs)), num_sides=num_sides)


def format_pairing_text(t: PairingTable) -> str:
    return "\n".join(f"{a} {b}" for a, b in t.pairs) + "\n"


def parse_circuit_text(text: str, p: HeckeParams) -> Circuit:
    """Comma-separated vertex names (when a name table exists) or raw
    kind:num/den triples such as B:2/0."""
    table = None
    try:
        table = vertex_names(p)
    except ValueError:
        pass
    seq = []
    for token in text.strip().split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            kind, frac = token.split(":", 1)
            num, den = frac.split("/", 1)
            seq.append(normalize(kind.strip(), int(num), int(den), p))
        elif table is not None:
            seq.append(table.coord(token))
        else:
            raise ValueError(f"no name table for q={p.q}, n={p.n}; use kind:num/den")
    return Circuit(tuple(seq))


def format_circuit_text(c: Circuit, p: HeckeParams, use_names: bool = True) -> str:
    if use_names:
        try:
            table = vertex_names(p)
            return ",".join(table.name(u) for u in c.seq)
        except (ValueError, KeyError):
            pass
    return ",".join(f"{u.kind}:{u.num}/{u.den}" for u in c.seq)
