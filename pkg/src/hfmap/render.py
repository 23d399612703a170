"""SVG and DOT exports: universal tessellations, quotient graphs, the 20-gon.

All identity and deduplication decisions use exact integer arithmetic in
Z[sqrt(m)]; floating point enters only when projecting to page coordinates,
so repeated renders are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coords import HFCoord, coord_value_str, vertex_names
from .group import HeckeParams
from .maps import CoordGraph, build_coordinate_graph
from .polygon import BoundarySequence, PairingTable, side_label_analysis

__all__ = [
    "Cusp",
    "Geodesic",
    "RenderConfig",
    "universal_geodesics",
    "render_universal",
    "render_quotient",
    "render_polygon",
]

MAX_DEPTH = 12


@dataclass(frozen=True, order=False)
class Cusp:
    """Exact boundary point (p + q*sqrt(m)) / d, or infinity when d = 0.

    Stored normalized: gcd(p, q, d) = 1 with d > 0, and infinity as (1, 0, 0).
    """

    p: int
    q: int
    d: int

    @property
    def is_infinity(self) -> bool:
        return self.d == 0

    def value(self, m: int) -> float:
        if self.is_infinity:
            return math.inf
        return (self.p + self.q * math.sqrt(m)) / self.d

    def sort_key(self, m: int) -> tuple:
        return (1, 0, 0, 0) if self.is_infinity else (0, self.value(m), self.p, self.q)


def _make_cusp(p: int, q: int, d: int) -> Cusp:
    if d == 0:
        return Cusp(1, 0, 0)
    if d < 0:
        p, q, d = -p, -q, -d
    g = math.gcd(math.gcd(abs(p), abs(q)), d)
    return Cusp(p // g, q // g, d // g)


def _column_cusp(top: tuple[int, int], bot: tuple[int, int], m: int) -> Cusp:
    """Exact value of (x + y*sqrt(m)) / (z + w*sqrt(m))."""
    x, y = top
    z, w = bot
    if z == 0 and w == 0:
        return Cusp(1, 0, 0)
    norm = z * z - m * w * w
    if norm == 0:
        raise ZeroDivisionError("denominator has zero norm")
    return _make_cusp(x * z - m * y * w, y * z - x * w, norm)


@dataclass(frozen=True)
class Geodesic:
    """Unordered pair of distinct exact endpoints."""

    a: Cusp
    b: Cusp


def _make_geodesic(u: Cusp, v: Cusp, m: int) -> Geodesic:
    if u == v:
        raise ValueError("geodesic endpoints coincide")
    if v.sort_key(m) < u.sort_key(m):
        u, v = v, u
    return Geodesic(u, v)


@dataclass
class RenderConfig:
    model: str = "halfplane"
    depth: int = 4
    xmin: float = -3.0
    xmax: float = 3.0
    ymax: float = 3.0
    width: int = 800
    stroke: str = "#1a1a80"
    labels: bool = False

    def __post_init__(self) -> None:
        if self.model not in ("halfplane", "disk"):
            raise ValueError(f"model must be halfplane or disk, got {self.model!r}")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")


# Exact integer matrices (component order as in the modular kernels, but
# over Z rather than Z_n).
_IntMat = tuple[int, int, int, int, int, int, int, int]


def _int_mat_mul(a: _IntMat, b: _IntMat, m: int) -> _IntMat:
    a0, a1, a2, a3, a4, a5, a6, a7 = a
    b0, b1, b2, b3, b4, b5, b6, b7 = b
    return (
        a0 * b0 + m * a1 * b1 + a2 * b4 + m * a3 * b5,
        a0 * b1 + a1 * b0 + a2 * b5 + a3 * b4,
        a0 * b2 + m * a1 * b3 + a2 * b6 + m * a3 * b7,
        a0 * b3 + a1 * b2 + a2 * b7 + a3 * b6,
        a4 * b0 + m * a5 * b1 + a6 * b4 + m * a7 * b5,
        a4 * b1 + a5 * b0 + a6 * b5 + a7 * b4,
        a4 * b2 + m * a5 * b3 + a6 * b6 + m * a7 * b7,
        a4 * b3 + a5 * b2 + a6 * b7 + a7 * b6,
    )


def _int_mat_canon(a: _IntMat) -> _IntMat:
    for v in a:
        if v > 0:
            return a
        if v < 0:
            return tuple(-x for x in a)
    raise ValueError("zero matrix")


def universal_geodesics(q: int, depth: int) -> list[Geodesic]:
    """Distinct images of the imaginary axis under words of length <= depth
    in S, T, T^-1, ordered by exact endpoints."""
    if depth > MAX_DEPTH:
        raise ValueError(f"depth {depth} exceeds the bound {MAX_DEPTH}")
    m = {3: 1, 4: 2, 6: 3}[q]
    lam = (1, 0) if q == 3 else (0, 1)
    ident: _IntMat = (1, 0, 0, 0, 0, 0, 1, 0)
    s: _IntMat = (0, 0, -1, 0, 1, 0, 0, 0)
    t: _IntMat = (1, 0, lam[0], lam[1], 0, 0, 1, 0)
    t_inv: _IntMat = (1, 0, -lam[0], -lam[1], 0, 0, 1, 0)
    gens = (s, t, t_inv)

    seen = {ident}
    frontier = [ident]
    matrices = [ident]
    for _ in range(depth):
        nxt = []
        for g in frontier:
            for h in gens:
                prod = _int_mat_canon(_int_mat_mul(g, h, m))
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    matrices.append(prod)
        frontier = nxt

    geodesics = set()
    for g in matrices:
        end_inf = _column_cusp((g[0], g[1]), (g[4], g[5]), m)
        end_zero = _column_cusp((g[2], g[3]), (g[6], g[7]), m)
        geodesics.add(_make_geodesic(end_inf, end_zero, m))
    return sorted(
        geodesics, key=lambda geo: (geo.a.sort_key(m), geo.b.sort_key(m))
    )


# ---------------------------------------------------------------------------
# SVG helpers.
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.5f}"


def _svg_document(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _halfplane_to_disk(x: float, y: float) -> tuple[float, float]:
    """Conformal map (z - i)/(z + i): sends i to 0, the real line to the
    unit circle."""
    zr, zi = x, y - 1.0
    wr, wi = x, y + 1.0
    norm = wr * wr + wi * wi
    return (zr * wr + zi * wi) / norm, (zi * wr - zr * wi) / norm


def _sample_geodesic(geo: Geodesic, m: int, ymax: float, samples: int = 48) -> list[tuple[float, float]]:
    """Points along the geodesic in the upper half-plane."""
    if geo.b.is_infinity:
        if geo.a.is_infinity:
            raise ValueError("degenerate geodesic")
        x = geo.a.value(m)
        ys = [ymax * (k / (samples - 1)) ** 2 * 400 for k in range(samples)]
        return [(x, y) for y in ys]
    x1, x2 = geo.a.value(m), geo.b.value(m)
    cx, r = (x1 + x2) / 2.0, abs(x2 - x1) / 2.0
    return [
        (cx + r * math.cos(math.pi * k / (samples - 1)),
         r * math.sin(math.pi * k / (samples - 1)))
        for k in range(samples)
    ]


def render_universal(q: int, cfg: RenderConfig) -> str:
    """SVG of the universal tessellation's edges down to the given depth."""
    geodesics = universal_geodesics(q, cfg.depth)
    m = {3: 1, 4: 2, 6: 3}[q]
    width = cfg.width
    if cfg.model == "halfplane":
        scale = width / (cfg.xmax - cfg.xmin)
        height = int(round(cfg.ymax * scale))

        def to_page(x: float, y: float) -> tuple[float, float]:
            return ((x - cfg.xmin) * scale, (cfg.ymax - y) * scale)

        body = [
            f'<rect width="{width}" height="{height}" fill="white"/>',
            f'<line x1="0" y1="{height}" x2="{width}" y2="{height}" '
            'stroke="black" stroke-width="1"/>',
        ]
        for geo in geodesics:
            if geo.b.is_infinity:
                x, _ = to_page(geo.a.value(m), 0.0)
                body.append(
                    f'<path d="M {_fmt(x)} {height} L {_fmt(x)} 0" fill="none" '
                    f'stroke="{cfg.stroke}" stroke-width="1"/>'
                )
            else:
                x1, y1 = to_page(geo.a.value(m), 0.0)
                x2, y2 = to_page(geo.b.value(m), 0.0)
                r = abs(x2 - x1) / 2.0
                body.append(
                    f'<path d="M {_fmt(x1)} {_fmt(y1)} A {_fmt(r)} {_fmt(r)} 0 0 1 '
                    f'{_fmt(x2)} {_fmt(y2)}" fill="none" stroke="{cfg.stroke}" '
                    'stroke-width="1"/>'
                )
        return _svg_document(width, height, body)

    # Disk model: sample in the half-plane, project pointwise.
    height = width
    radius = width * 0.48
    cx = cy = width / 2.0
    body = [
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius)}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    for geo in geodesics:
        pts = _sample_geodesic(geo, m, cfg.ymax)
        page = []
        for x, y in pts:
            wx, wy = _halfplane_to_disk(x, y)
            page.append((cx + radius * wx, cy - radius * wy))
        d = "M " + " L ".join(f"{_fmt(px)} {_fmt(py)}" for px, py in page)
        body.append(
            f'<path d="{d}" fill="none" stroke="{cfg.stroke}" stroke-width="1"/>'
        )
    return _svg_document(width, height, body)


# ---------------------------------------------------------------------------
# Quotient graphs.
# ---------------------------------------------------------------------------


def _node_labels(graph: CoordGraph) -> list[str]:
    p = graph.params
    try:
        table = vertex_names(p)
        return [table.name(u) for u in graph.nodes]
    except ValueError:
        return [coord_value_str(u, p) for u in graph.nodes]


def render_quotient(p: HeckeParams, fmt: str = "dot",
                    graph: CoordGraph | None = None) -> str:
    """DOT or schematic SVG of the coordinate graph."""
    graph = graph or build_coordinate_graph(p)
    labels = _node_labels(graph)
    if fmt == "dot":
        lines = ["graph {"]
        for name in labels:
            lines.append(f'  "{name}";')
        for a, b in graph.edges:
            lines.append(f'  "{labels[a]}" -- "{labels[b]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt != "svg":
        raise ValueError(f"format must be dot or svg, got {fmt!r}")

    width = 640
    cx = cy = width / 2.0
    radius = width * 0.42
    count = len(graph.nodes)
    pos = [
        (cx + radius * math.cos(2 * math.pi * i / count - math.pi / 2),
         cy + radius * math.sin(2 * math.pi * i / count - math.pi / 2))
        for i in range(count)
    ]
    body = [f'<rect width="{width}" height="{width}" fill="white"/>']
    for a, b in graph.edges:
        body.append(
            f'<line x1="{_fmt(pos[a][0])}" y1="{_fmt(pos[a][1])}" '
            f'x2="{_fmt(pos[b][0])}" y2="{_fmt(pos[b][1])}" '
            'stroke="#777777" stroke-width="1"/>'
        )
    for i, (x, y) in enumerate(pos):
        body.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#1a1a80"/>'
        )
        body.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y - 6)}" font-size="9" '
            f'text-anchor="middle">{labels[i]}</text>'
        )
    return _svg_document(width, width, body)


# ---------------------------------------------------------------------------
# The 20-gon.
# ---------------------------------------------------------------------------

_PAIR_COLORS = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#9a6324", "#008080", "#808000",
]


def render_polygon(b: BoundarySequence, t: PairingTable) -> str:
    """Schematic regular 20-gon: corner pole names, classical side numbers,
    interior labels, and one stroke color per side pair."""
    p = b.params
    table = vertex_names(p)
    report = side_label_analysis(b)
    offset = report.alignment_offsets[0] if len(report.alignment_offsets) == 1 else 0

    num = len(b.pole_slots)
    width = 720
    cx = cy = width / 2.0
    radius = width * 0.40

    def corner_pos(j: int, rad: float = radius) -> tuple[float, float]:
        ang = -math.pi / 2 + 2 * math.pi * j / num
        return (cx + rad * math.cos(ang), cy + rad * math.sin(ang))

    color_of_side: dict[int, str] = {}
    for idx, (a, bb) in enumerate(sorted(t.pairs)):
        color_of_side[a] = _PAIR_COLORS[idx % len(_PAIR_COLORS)]
        color_of_side[bb] = _PAIR_COLORS[idx % len(_PAIR_COLORS)]

    body = [f'<rect width="{width}" height="{width}" fill="white"/>']
    for span in range(num):
        # Classical side number of this span under the derived alignment.
        side = (span - offset) % num + 1
        x1, y1 = corner_pos(span)
        x2, y2 = corner_pos((span + 1) % num)
        color = color_of_side.get(side, "#000000")
        body.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        mx, my = (x1 + x2) / 2.0, (y1 + y2) / 2.0
        body.append(
            f'<text x="{_fmt(mx)}" y="{_fmt(my - 8)}" font-size="11" '
            f'text-anchor="middle">{side}</text>'
        )
        body.append(
            f'<text x="{_fmt(mx)}" y="{_fmt(my + 14)}" font-size="10" '
            f'text-anchor="middle" fill="#555555">{report.designated[span]}</text>'
        )
    for j, slot in enumerate(b.pole_slots):
        x, y = corner_pos(j, radius * 1.08)
        name = table.name(b.slots[slot])
        body.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="12" font-weight="bold" '
            f'text-anchor="middle" class="corner">{name}</text>'
        )
    center = table.name(HFCoord("A", 1, 0))  # the pole 1/0 sits at the center
    body.append(
        f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" font-size="12" '
        f'text-anchor="middle">{center}</text>'
    )
    return _svg_document(width, width, body)
