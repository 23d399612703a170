"""Farey coordinates modulo n for the maps of the Hecke groups.

A coordinate is a cusp label taken mod n up to a simultaneous sign change:
kind "A" stands for the value num/(den*sqrt(m)) and kind "B" for
num*sqrt(m)/den.  For q = 3 (sqrt(m) = 1) only kind A exists and the value
is the plain fraction num/den.  Two coordinates are joined by an edge of
the quotient map iff the determinant-style form below is +-1 mod n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .group import FiniteHeckeGroup, HeckeParams, parity
from .ring import ProjMatrix, RingElem, ring_add, ring_mul

__all__ = [
    "HFCoord",
    "normalize",
    "enumerate_coords",
    "adjacent",
    "cusp_of",
    "apply_to_coord",
    "poles",
    "is_pole",
    "NameTable",
    "vertex_names",
    "coord_value_str",
    "Q3_N5_FRACTIONS",
    "parse_fraction",
]

# The 12 fractions mod 5 of the icosahedral map (q=3, n=5), in their
# customary printed form.
Q3_N5_FRACTIONS = [
    "1/0", "2/0", "0/1", "1/1", "2/1", "3/1",
    "4/1", "0/2", "1/2", "2/2", "3/2", "4/2",
]


@dataclass(frozen=True, order=True)
class HFCoord:
    """Sign-normalized coordinate: lexicographic minimum over +-(num, den)."""

    kind: str
    num: int
    den: int


def normalize(kind: str, num: int, den: int, p: HeckeParams) -> HFCoord:
    """Reduce mod n and pick the canonical sign representative."""
    if kind not in ("A", "B"):
        raise ValueError(f"coordinate kind must be 'A' or 'B', got {kind!r}")
    if p.q == 3 and kind == "B":
        raise ValueError("q=3 has only kind-A coordinates")
    n = p.n
    a, c = num % n, den % n
    if math.gcd(a, c, n) != 1:
        raise ValueError(f"({num}, {den}) is not a coordinate mod {n}: gcd > 1")
    return HFCoord(kind, *min((a, c), (-a % n, -c % n)))


def is_pole(u: HFCoord) -> bool:
    return u.den == 0


def enumerate_coords(p: HeckeParams) -> list[HFCoord]:
    """All coordinates mod n in sorted order; rejects even n.

    For even n the sign identification degenerates (pairs collide), so the
    coordinate model is only offered for odd n; the group-theoretic map
    remains available either way.
    """
    if p.n % 2 == 0:
        raise ValueError("coordinate enumeration requires odd n")
    kinds = ("A",) if p.q == 3 else ("A", "B")
    seen = set()
    for kind in kinds:
        for a in range(p.n):
            for c in range(p.n):
                if math.gcd(a, c, p.n) == 1:
                    seen.add(normalize(kind, a, c, p))
    return sorted(seen)


def adjacent(u: HFCoord, v: HFCoord, p: HeckeParams) -> bool:
    """Edge test: a*d - m*b*c = +-1 with (a,c) the A side and (b,d) the B side.

    For q = 3 both arguments are kind A and the plain two-by-two determinant
    is used.  The result does not depend on the sign representatives.
    """
    n = p.n
    if p.q == 3:
        d = (u.num * v.den - v.num * u.den) % n
        return d == 1 % n or d == -1 % n
    if u.kind == v.kind:
        return False
    ac = u if u.kind == "A" else v
    bd = v if u.kind == "A" else u
    d = (ac.num * bd.den - p.m * bd.num * ac.den) % n
    return d == 1 % n or d == -1 % n


def poles(p: HeckeParams) -> list[HFCoord]:
    return [u for u in enumerate_coords(p) if is_pole(u)]


def cusp_of(g: ProjMatrix, p: HeckeParams) -> HFCoord:
    """Coordinate of g(infinity), read off the first column of g.

    Even matrices [[a, b*sqrt(m)], [c*sqrt(m), d]] give a/(c*sqrt(m)), odd
    ones the kind-B mirror.  Right multiplication by T fixes the result.
    """
    if p.q == 3:
        return normalize("A", g.e11.rat, g.e21.rat, p)
    if parity(g, p) == "even":
        return normalize("A", g.e11.rat, g.e21.irr, p)
    return normalize("B", g.e11.irr, g.e21.rat, p)


def _column(u: HFCoord, p: HeckeParams) -> tuple[RingElem, RingElem]:
    if p.q == 3:
        return RingElem(u.num, 0), RingElem(u.den, 0)
    if u.kind == "A":
        return RingElem(u.num, 0), RingElem(0, u.den)
    return RingElem(0, u.num), RingElem(u.den, 0)


def apply_to_coord(g: ProjMatrix, u: HFCoord, p: HeckeParams) -> HFCoord:
    """Moebius action of g on the homogeneous column of u."""
    rp = p.ring
    top, bot = _column(u, p)
    w1 = ring_add(ring_mul(g.e11, top, rp), ring_mul(g.e12, bot, rp), rp)
    w2 = ring_add(ring_mul(g.e21, top, rp), ring_mul(g.e22, bot, rp), rp)
    if p.q == 3:
        return normalize("A", w1.rat, w2.rat, p)
    if w1.irr == 0 and w2.rat == 0:
        return normalize("A", w1.rat, w2.irr, p)
    if w1.rat == 0 and w2.irr == 0:
        return normalize("B", w1.irr, w2.rat, p)
    raise ValueError(f"image column ({w1}, {w2}) matches no coordinate pattern")


def translate(u: HFCoord, p: HeckeParams) -> HFCoord:
    """Action of the translation T (add lam_q to the coordinate value)."""
    if p.q == 3 or u.kind == "B":
        return normalize(u.kind, u.num + u.den, u.den, p)
    return normalize("A", u.num + p.m * u.den, u.den, p)


def coord_value_str(u: HFCoord, p: HeckeParams) -> str:
    """Human-readable value, e.g. 2/(1sqrt2), 2sqrt2/0, or 2/1 for q=3."""
    if p.q == 3:
        return f"{u.num}/{u.den}"
    root = f"sqrt{p.m}"
    if u.kind == "A":
        return f"{u.num}/({u.den}{root})"
    return f"{u.num}{root}/{u.den}"


def parse_fraction(text: str, p: HeckeParams) -> HFCoord:
    """Parse a plain q=3 fraction string like 3/2 into a coordinate."""
    if p.q != 3:
        raise ValueError("plain fractions exist only for q=3")
    num, den = text.strip().split("/", 1)
    return normalize("A", int(num), int(den), p)


# ---------------------------------------------------------------------------
# Vertex name tables.
# ---------------------------------------------------------------------------

# 24 vertices of the genus-4 map (q=4, n=5), classical letter labels with the
# printed representatives (not all of which are sign-canonical).
_NAMES_Q4_N5 = [
    ("A1", "A", 1, 0), ("B1", "A", 2, 0), ("C1", "A", 0, 1), ("D1", "A", 1, 1),
    ("E1", "A", 2, 1), ("F1", "A", 3, 1), ("G1", "A", 4, 1), ("H1", "A", 0, 2),
    ("I1", "A", 1, 2), ("J1", "A", 3, 2), ("K1", "A", 2, 2), ("L1", "A", 4, 2),
    ("A2", "B", 0, 1), ("B2", "B", 0, 2), ("C2", "B", 1, 0), ("D2", "B", 1, 1),
    ("E2", "B", 1, 2), ("F2", "B", 1, 3), ("G2", "B", 1, 4), ("H2", "B", 2, 0),
    ("I2", "B", 2, 1), ("J2", "B", 2, 2), ("K2", "B", 2, 3), ("L2", "B", 2, 4),
]

# The 8 vertices of the cube map (q=4, n=3) carry no letter labels; they are
# named by their printed fraction strings.
_NAMES_Q4_N3 = [
    ("1/(0sqrt2)", "A", 1, 0), ("0/(1sqrt2)", "A", 0, 1),
    ("1/(1sqrt2)", "A", 1, 1), ("1/(2sqrt2)", "A", 1, 2),
    ("0sqrt2/1", "B", 0, 1), ("2sqrt2/1", "B", 2, 1),
    ("1sqrt2/0", "B", 1, 0), ("1sqrt2/1", "B", 1, 1),
]


class NameTable:
    """Bijection between canonical coordinates and their customary names."""

    def __init__(self, p: HeckeParams, rows: list[tuple[str, str, int, int]]):
        self.params = p
        self._by_name: dict[str, HFCoord] = {}
        self._by_coord: dict[HFCoord, str] = {}
        self._printed: dict[str, tuple[str, int, int]] = {}
        for name, kind, num, den in rows:
            u = normalize(kind, num, den, p)
            if name in self._by_name or u in self._by_coord:
                raise ValueError(f"duplicate name-table row {name}")
            self._by_name[name] = u
            self._by_coord[u] = name
            self._printed[name] = (kind, num, den)

    def __len__(self) -> int:
        return len(self._by_name)

    def names(self) -> list[str]:
        return list(self._by_name)

    def coord(self, name: str) -> HFCoord:
        return self._by_name[name]

    def name(self, u: HFCoord) -> str:
        return self._by_coord[u]

    def printed_value(self, name: str) -> str:
        """The customary (not necessarily sign-canonical) fraction string."""
        kind, num, den = self._printed[name]
        root = f"sqrt{self.params.m}"
        if kind == "A":
            return f"{num}/({den}{root})"
        return f"{num}{root}/{den}"


def vertex_names(p: HeckeParams) -> NameTable:
    """Name table for the maps that have customary labels."""
    if (p.q, p.n) == (4, 5):
        return NameTable(p, _NAMES_Q4_N5)
    if (p.q, p.n) == (4, 3):
        return NameTable(p, _NAMES_Q4_N3)
    raise ValueError(f"no name table for q={p.q}, n={p.n}")
