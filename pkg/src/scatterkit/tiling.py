"""Frames on the doubled Dyck path and the four-colour footprint tiling.

A tight grading lives inside one rectangular frame on P(2 d1, 2 d2). Each
weighted edge in the frame spawns a family of footprints (tiles); tightness is
equivalent to three colour classes of tiles having pairwise disjoint
interiors. The module also renders tilings as SVG or ASCII.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .dyck import E, N, MaxDyckPath, build_max_dyck
from .gradings import Grading, tight_sign

CYAN, DARKBLUE, RED, DARKRED = "cyan", "darkblue", "red", "darkred"
COLOR_FILL = {CYAN: "cyan", DARKBLUE: "#00f", RED: "red", DARKRED: "#800", "purple": "purple"}
COLOR_CODE = {CYAN: "C", DARKBLUE: "B", RED: "R", DARKRED: "D"}


@dataclass(frozen=True)
class Rect:
    x0: int
    y0: int
    x1: int
    y1: int

    def overlaps(self, other: "Rect") -> bool:
        """Open interiors intersect; shared boundary does not count."""
        return (self.x0 < other.x1 and other.x0 < self.x1
                and self.y0 < other.y1 and other.y0 < self.y1)

    def intersection(self, other: "Rect") -> "Rect | None":
        if not self.overlaps(other):
            return None
        return Rect(max(self.x0, other.x0), max(self.y0, other.y0),
                    min(self.x1, other.x1), min(self.y1, other.y1))


@dataclass(frozen=True)
class Frame:
    anchor: tuple[int, int]          # the frame point p_m
    m: int
    epsilon: int
    origin: tuple[int, int]          # south-west corner on the doubled path
    width: int
    height: int
    window: tuple[int, ...]          # ordinals on the doubled path
    doubled: MaxDyckPath

    @property
    def rect(self) -> Rect:
        x, y = self.origin
        return Rect(x, y, x + self.width, y + self.height)


@dataclass(frozen=True)
class Tile:
    rect: Rect
    color: str
    family: str                      # "E" or "N"
    s: int
    r: int


@dataclass
class TilingResult:
    frame: Frame
    weights: dict                    # doubled-path ordinal -> weight, window only
    tiles: list = field(default_factory=list)

    def region(self, color: str) -> list[Rect]:
        return [t.rect for t in self.tiles if t.color == color]

    def clashes(self) -> dict[str, bool]:
        red, dred = self.region(RED), self.region(DARKRED)
        cyan, dblue = self.region(CYAN), self.region(DARKBLUE)
        return {
            "red_cyan": _any_overlap(red, cyan),
            "red_darkblue": _any_overlap(red, dblue),
            "darkred_cyan": _any_overlap(dred, cyan),
            "outside_frame": not all(_inside(t.rect, self.frame.rect) for t in self.tiles),
        }

    def purple(self) -> dict[tuple[int, int], list[Rect]]:
        """Dark blue / dark red overlaps, grouped by the owning (s, s') pair."""
        out: dict[tuple[int, int], list[Rect]] = {}
        blues = [t for t in self.tiles if t.color == DARKBLUE]
        reds = [t for t in self.tiles if t.color == DARKRED]
        for tb in blues:
            for tr in reds:
                cut = tb.rect.intersection(tr.rect)
                if cut is not None:
                    out.setdefault((tb.s, tr.s), []).append(cut)
        return out

    def empty_area(self) -> int:
        """Unit cells of the frame above the path covered by no tile."""
        f = self.frame
        covered = set()
        for t in self.tiles:
            for x in range(t.rect.x0, t.rect.x1):
                for y in range(t.rect.y0, t.rect.y1):
                    covered.add((x, y))
        floor = _path_floor(f)
        total = 0
        x0, y0 = f.origin
        for x in range(x0, x0 + f.width):
            for y in range(max(y0, floor.get(x, y0)), y0 + f.height):
                if (x, y) not in covered:
                    total += 1
        return total


def _inside(r: Rect, box: Rect) -> bool:
    return box.x0 <= r.x0 and r.x1 <= box.x1 and box.y0 <= r.y0 and r.y1 <= box.y1


def _any_overlap(a: Sequence[Rect], b: Sequence[Rect]) -> bool:
    return any(r.overlaps(s) for r in a for s in b)


def _path_floor(f: Frame) -> dict[int, int]:
    # height of the path under each unit column inside the window
    floor = {}
    for k in f.window:
        e = f.doubled.edges[k]
        if e.direction == E:
            floor[e.anchor[0]] = e.anchor[1]
    return floor


def frame_points(d1: int, d2: int, p: int, q: int) -> list[tuple[int, int]]:
    """The gamma lattice points of P(d1, d2) whose labels are 0, ..., gamma-1, by label."""
    g = gcd(p, q)
    eps = p * d2 - q * d1
    if abs(eps) != g:
        raise ValueError(f"|p*d2 - q*d1| must equal gcd(p,q) for ({d1},{d2},{p},{q})")
    P, Q = p // g, q // g
    if eps < 0:
        pts = [(0, 0)] + [(d1 - m * P, d2 - m * Q) for m in range(1, g)]
    else:
        pts = [(m * P, m * Q) for m in range(g)]
    for m, (x, y) in enumerate(pts):
        assert d2 * x - d1 * y == m
    return pts


def frames(d1: int, d2: int, p: int, q: int) -> list[Frame]:
    if d1 < p or d2 < q:
        raise ValueError("frames need d1 >= p and d2 >= q to fit in the doubled path")
    g = gcd(p, q)
    eps = 1 if p * d2 - q * d1 > 0 else -1
    doubled = build_max_dyck(2 * d1, 2 * d2)
    anchor_of = {e.anchor: e.ordinal for e in doubled.edges}
    length = p + q + 1
    out = []
    for m, pt in enumerate(frame_points(d1, d2, p, q)):
        if eps == -1:
            start = anchor_of[pt]
            origin, width, height = pt, p + 1, q
        else:
            # the frame's north-east corner sits at p_m; use the copy in the second half
            ne = (pt[0] + d1, pt[1] + d2)
            end = next(e.ordinal for e in doubled.edges
                       if e.direction == N and (e.anchor[0], e.anchor[1] + 1) == ne)
            start = end - length + 1
            origin, width, height = (ne[0] - p, ne[1] - q - 1), p, q + 1
        window = tuple(range(start, start + length))
        first, last = doubled.edges[window[0]], doubled.edges[window[-1]]
        assert first.direction == E and last.direction == N
        assert first.anchor == origin
        assert (last.anchor[0], last.anchor[1] + 1) == (origin[0] + width, origin[1] + height)
        out.append(Frame(pt, m, eps, origin, width, height, window, doubled))
    return out


def unwrap(omega: Grading, f: Frame) -> dict[int, int]:
    """Weights on the frame window, pulled back along pi labels (ordinal mod n)."""
    n = omega.path.n
    if f.doubled.d1 != 2 * omega.path.d1 or f.doubled.d2 != 2 * omega.path.d2:
        raise ValueError("frame does not belong to this grading's path")
    return {k: omega.weights[k % n] for k in f.window}


def build_footprints(weights: dict[int, int], f: Frame) -> TilingResult:
    res = TilingResult(f, dict(weights))
    edges = f.doubled.edges
    win = list(f.window)
    hs = [k for k in win if edges[k].direction == E]
    vs = [k for k in win if edges[k].direction == N]

    # horizontal family, generators left to right
    placed: list[Rect] = []
    s = 0
    for idx, k in enumerate(hs):
        h = weights.get(k, 0)
        if not h:
            continue
        s += 1
        x, y = edges[k].anchor
        rect = Rect(x, y, x + 1, y + h)
        res.tiles.append(Tile(rect, CYAN, E, s, 1))
        family = [rect]
        for r in range(2, idx + 2):
            x -= 1
            ny = y
            cand = Rect(x, ny, x + 1, ny + h)
            while any(cand.overlaps(o) for o in placed):
                ny += 1
                cand = Rect(x, ny, x + 1, ny + h)
            res.tiles.append(Tile(cand, DARKBLUE if ny == y else CYAN, E, s, r))
            family.append(cand)
            y = ny
        placed.extend(family)

    # vertical family, generators top to bottom
    placed = []
    s = 0
    for idx, k in enumerate(reversed(vs)):
        wv = weights.get(k, 0)
        if not wv:
            continue
        s += 1
        x, y = edges[k].anchor
        rect = Rect(x - wv, y, x, y + 1)
        res.tiles.append(Tile(rect, RED, N, s, 1))
        family = [rect]
        for r in range(2, idx + 2):
            y += 1
            nx = x
            cand = Rect(nx - wv, y, nx, y + 1)
            while any(cand.overlaps(o) for o in placed):
                nx -= 1
                cand = Rect(nx - wv, y, nx, y + 1)
            res.tiles.append(Tile(cand, DARKRED if nx == x else RED, N, s, r))
            family.append(cand)
            x = nx
        placed.extend(family)
    return res


def tilings(omega: Grading) -> list[TilingResult]:
    """Tilings for every frame whose window carries the full weight of omega."""
    p, q = omega.p, omega.q
    if tight_sign(omega.path, p, q) is None:
        return []
    if omega.path.d1 < p or omega.path.d2 < q:
        # no frame fits; no tight grading exists in this regime either
        return []
    out = []
    for f in frames(omega.path.d1, omega.path.d2, p, q):
        w = unwrap(omega, f)
        ws_n = sum(x for k, x in w.items() if f.doubled.edges[k].direction == N)
        ws_e = sum(x for k, x in w.items() if f.doubled.edges[k].direction == E)
        if ws_n == p and ws_e == q:
            out.append(build_footprints(w, f))
    return out


def tightness_via_tiles(omega: Grading) -> bool:
    return any(not any(t.clashes().values()) for t in tilings(omega))


# rendering

def render(t: TilingResult, fmt: str = "svg", scale: int = 20) -> str:
    if fmt == "svg":
        return _render_svg(t, scale)
    if fmt == "ascii":
        return _render_ascii(t)
    raise ValueError(f"unknown format {fmt!r}")


def _render_svg(t: TilingResult, scale: int) -> str:
    f = t.frame
    fx, fy = f.origin
    W, H = f.width, f.height
    pad = 1

    def X(x):
        return (x - fx + pad) * scale

    def Y(y):
        return (fy + H - y + pad) * scale

    width = (W + 2 * pad) * scale
    height = (H + 2 * pad) * scale
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">']
    for x in range(W + 1):
        out.append(f'<line x1="{X(fx + x)}" y1="{Y(fy)}" x2="{X(fx + x)}" y2="{Y(fy + H)}" stroke="#ddd"/>')
    for y in range(H + 1):
        out.append(f'<line x1="{X(fx)}" y1="{Y(fy + y)}" x2="{X(fx + W)}" y2="{Y(fy + y)}" stroke="#ddd"/>')
    inset = 0.15 * scale
    for tile in t.tiles:
        r = tile.rect
        out.append(
            f'<rect x="{X(r.x0) + inset:.2f}" y="{Y(r.y1) + inset:.2f}" '
            f'width="{(r.x1 - r.x0) * scale - 2 * inset:.2f}" height="{(r.y1 - r.y0) * scale - 2 * inset:.2f}" '
            f'fill="{COLOR_FILL[tile.color]}" fill-opacity="0.7" data-family="{tile.family}" '
            f'data-s="{tile.s}" data-r="{tile.r}"/>')
    for (s1, s2), cuts in sorted(t.purple().items()):
        for r in cuts:
            out.append(
                f'<rect x="{X(r.x0) + inset:.2f}" y="{Y(r.y1) + inset:.2f}" '
                f'width="{(r.x1 - r.x0) * scale - 2 * inset:.2f}" height="{(r.y1 - r.y0) * scale - 2 * inset:.2f}" '
                f'fill="purple" data-component="{s1},{s2}"/>')
    out.append(f'<rect x="{X(fx)}" y="{Y(fy + H)}" width="{W * scale}" height="{H * scale}" '
               f'fill="none" stroke="purple" stroke-width="2"/>')
    # diagonal through the whole doubled path, clipped visually by the viewport
    d1, d2 = f.doubled.d1, f.doubled.d2
    out.append(f'<line x1="{X(0)}" y1="{Y(0)}" x2="{X(d1)}" y2="{Y(d2)}" stroke="#999"/>')
    pts = []
    for k in f.window:
        e = f.doubled.edges[k]
        pts.append(e.anchor)
    last = f.doubled.edges[f.window[-1]]
    pts.append((last.anchor[0], last.anchor[1] + 1))
    poly = " ".join(f"{X(x)},{Y(y)}" for x, y in pts)
    out.append(f'<polyline points="{poly}" fill="none" stroke="black" stroke-width="2"/>')
    for k in f.window:
        w = t.weights.get(k, 0)
        if w:
            e = f.doubled.edges[k]
            x, y = e.anchor
            tx, ty = (x + 0.5, y - 0.3) if e.direction == E else (x + 0.3, y + 0.5)
            out.append(f'<text x="{X(tx):.1f}" y="{Y(ty):.1f}" font-size="{scale * 0.6:.0f}">{w}</text>')
    out.append("</svg>")
    return "\n".join(out)


def _render_ascii(t: TilingResult) -> str:
    """One character per unit cell: C/B/R/D for tiles, P where dark blue meets dark red,
    '*' for any other overlap, '#' below the path, '.' empty."""
    f = t.frame
    fx, fy = f.origin
    floor = _path_floor(f)
    grid = {}
    for tile in t.tiles:
        r = tile.rect
        for x in range(r.x0, r.x1):
            for y in range(r.y0, r.y1):
                grid.setdefault((x, y), set()).add(tile.color)
    rows = []
    for y in range(fy + f.height - 1, fy - 1, -1):
        row = []
        for x in range(fx, fx + f.width):
            cols = grid.get((x, y))
            if cols:
                if cols == {DARKBLUE, DARKRED}:
                    row.append("P")
                elif len(cols) == 1:
                    row.append(COLOR_CODE[next(iter(cols))])
                else:
                    row.append("*")
            elif y < floor.get(x, fy):
                row.append("#")
            else:
                row.append(".")
        rows.append("".join(row))
    return "\n".join(rows)


def gallery(results: Sequence[TilingResult], columns: int = 3, scale: int = 20,
            labels: Sequence[str] | None = None) -> str:
    """Lay several tilings out in a grid as one SVG document."""
    cells = [_render_svg(t, scale) for t in results]
    sizes = [(t.frame.width + 2, t.frame.height + 2) for t in results]
    cw = max((w for w, _ in sizes), default=1) * scale
    ch = max((h for _, h in sizes), default=1) * scale + scale
    rows = max(1, -(-len(cells) // columns))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{cw * min(columns, max(1, len(cells)))}" height="{ch * rows}">']
    for idx, svg in enumerate(cells):
        x, y = (idx % columns) * cw, (idx // columns) * ch
        body = svg.split("\n", 1)[1].rsplit("\n", 1)[0]
        w, h = sizes[idx]
        out.append(f'<svg x="{x}" y="{y + scale}" width="{w * scale}" height="{h * scale}">')
        out.append(body)
        out.append("</svg>")
        if labels:
            out.append(f'<text x="{x + scale // 2}" y="{y + scale * 0.8:.0f}" '
                       f'font-size="{scale * 0.6:.0f}">{labels[idx]}</text>')
    out.append("</svg>")
    return "\n".join(out)
