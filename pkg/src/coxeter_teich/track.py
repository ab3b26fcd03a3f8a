"""Segment arrangements and the invariant train track of a plane tree.

Every vertex of the tree becomes a segment (vertical or horizontal) and every
edge a crossing.  Gluing the two ends of each segment turns the union of
segments into a graph whose vertices are the crossings; its edges are the
arcs between consecutive crossings, oriented downward on vertical segments
and leftward on horizontal ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .plane_tree import HORIZONTAL, VERTICAL, PlaneTree

Crossing = tuple[str, str]  # (vertical vertex, horizontal vertex)


@dataclass(frozen=True)
class Arrangement:
    """Crossing orders and integer coordinates of a segment arrangement.

    ``orders[v]`` lists the crossings of segment ``v`` bottom-to-top (vertical)
    or left-to-right (horizontal).  ``coords[c]`` is the point ``(x, y)`` of
    crossing ``c``.
    """

    tree: PlaneTree
    orientation: dict[str, str]
    orders: dict[str, tuple[Crossing, ...]]
    coords: dict[Crossing, tuple[int, int]]

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        """Crossings ordered by vertical segment (bipartite order), bottom-to-top."""
        out = []
        for v in self.tree.bipartite_order:
            if self.orientation[v] == VERTICAL:
                out.extend(self.orders[v])
        return tuple(out)

    def incidence_graph(self) -> set[frozenset[str]]:
        """Pairs of segments that cross, recomputed from coordinates alone."""
        xs = {}
        ys = {}
        for v, cs in self.orders.items():
            pts = [self.coords[c] for c in cs]
            if not pts:
                continue
            if self.orientation[v] == VERTICAL:
                xs[v] = (pts[0][0], min(p[1] for p in pts), max(p[1] for p in pts))
            else:
                ys[v] = (pts[0][1], min(p[0] for p in pts), max(p[0] for p in pts))
        out = set()
        for a, (x, y0, y1) in xs.items():
            for b, (y, x0, x1) in ys.items():
                if x0 <= x <= x1 and y0 <= y <= y1:
                    out.add(frozenset((a, b)))
        return out

    def text_grid(self) -> str:
        """Debug picture: rows are y (top row = largest), columns are x."""
        if not self.coords:
            return ""
        w = max(p[0] for p in self.coords.values()) + 1
        h = max(p[1] for p in self.coords.values()) + 1
        grid = [[" "] * (2 * w - 1) for _ in range(h)]
        for v, cs in self.orders.items():
            pts = [self.coords[c] for c in cs]
            if self.orientation[v] == VERTICAL:
                x = pts[0][0]
                for y in range(min(p[1] for p in pts), max(p[1] for p in pts) + 1):
                    grid[y][2 * x] = "|"
            else:
                y = pts[0][1]
                for x in range(2 * min(p[0] for p in pts), 2 * max(p[0] for p in pts) + 1):
                    if grid[y][x] == " ":
                        grid[y][x] = "-"
        for x, y in self.coords.values():
            grid[y][2 * x] = "+"
        return "\n".join("".join(r).rstrip() for r in reversed(grid))


def _crossing(tree: PlaneTree, v: str, w: str) -> Crossing:
    return (v, w) if tree[v].orientation == VERTICAL else (w, v)


def embed_arrangement(tree: PlaneTree) -> Arrangement:
    """Lay out the segments by nested boxes, then compress coordinates to integers.

    The root segment (first input vertex) carries its crossings at unit spacing.
    A child segment through a crossing lives in a box one third the spacing of
    its parent, so distinct subtrees can never meet.
    """
    orient = {v.id: v.orientation for v in tree.vertices}
    orders = {
        v.id: tuple(_crossing(tree, v.id, w) for w in v.neighbors) for v in tree.vertices
    }
    if len(tree) == 1:
        return Arrangement(tree, orient, orders, {})

    pos: dict[Crossing, tuple[Fraction, Fraction]] = {}
    root = tree.vertices[0].id
    # (segment, parent segment, anchor point, box size)
    stack = [(root, None, (Fraction(0), Fraction(0)), Fraction(3))]
    while stack:
        v, parent, (ax, ay), size = stack.pop()
        nbrs = tree[v].neighbors
        d = len(nbrs)
        step = size / (d + 1)
        k = nbrs.index(parent) if parent is not None else 0
        for i, w in enumerate(nbrs):
            off = (i - k) * step
            pt = (ax, ay + off) if orient[v] == VERTICAL else (ax + off, ay)
            c = _crossing(tree, v, w)
            pos[c] = pt
            if w != parent:
                stack.append((w, v, pt, step / 3))

    xs = sorted({p[0] for p in pos.values()})
    ys = sorted({p[1] for p in pos.values()})
    xr = {x: i for i, x in enumerate(xs)}
    yr = {y: i for i, y in enumerate(ys)}
    coords = {c: (xr[p[0]], yr[p[1]]) for c, p in pos.items()}
    return Arrangement(tree, orient, orders, coords)


# ---------------------------------------------------------------------------
# train track
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrackEdge:
    segment: str
    source: int
    target: int
    wrap: bool
    vertical: bool


@dataclass(frozen=True)
class TrainTrack:
    crossings: tuple[Crossing, ...]
    edges: tuple[TrackEdge, ...]
    segment_vertices: dict[str, tuple[int, ...]]  # crossing indices, bottom/left first
    orientation: dict[str, str]

    @property
    def n_vertices(self) -> int:
        return len(self.crossings)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def perpendicular(self, vertex: int, vertical: bool) -> str:
        """Segment through crossing ``vertex`` that is vertical (or horizontal)."""
        a, b = self.crossings[vertex]
        return a if vertical else b


def build_train_track(arr: Arrangement) -> TrainTrack:
    """Crossings become vertices; each segment contributes a directed cycle.

    Edges are listed segment by segment (vertical segments first), each cycle
    starting at its wrap edge and then walking down (or left) from the top
    (or right) crossing.
    """
    crossings = arr.crossings
    index = {c: i for i, c in enumerate(crossings)}
    seg_vertices = {v: tuple(index[c] for c in cs) for v, cs in arr.orders.items()}
    edges = []
    for v in arr.tree.bipartite_order:
        vs = seg_vertices[v]
        vert = arr.orientation[v] == VERTICAL
        d = len(vs)
        if d == 0:
            continue
        edges.append(TrackEdge(v, vs[0], vs[-1], True, vert))
        for k in range(d - 1, 0, -1):
            edges.append(TrackEdge(v, vs[k], vs[k - 1], False, vert))
    return TrainTrack(crossings, tuple(edges), seg_vertices, dict(arr.orientation))


# ---------------------------------------------------------------------------
# structure maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureMaps:
    """The combinatorial maps s, t, l, d, p, g, c, a on a train track."""

    track: TrainTrack
    coords: dict[Crossing, tuple[int, int]]

    def s(self, e: int) -> int:
        return self.track.edges[e].source

    def t(self, e: int) -> int:
        return self.track.edges[e].target

    def d(self, e: int) -> str:
        return self.track.edges[e].segment

    def p(self, e: int) -> int:
        return int(self.track.edges[e].vertical)

    def l(self, v: str) -> int:
        """Top crossing of a vertical segment, rightmost of a horizontal one."""
        return self.track.segment_vertices[v][-1]

    def g(self, e: int, v: int) -> int:
        return int(v in self.track.segment_vertices[self.d(e)])

    def point(self, v: int) -> tuple[int, int]:
        return self.coords[self.track.crossings[v]]

    def c(self, e: int, v: int, w: int) -> int:
        """1 iff edge ``e`` lies in the box spanned by crossings ``v`` and ``w``.

        A wrap edge runs through the glued endpoints and is never inside.
        """
        edge = self.track.edges[e]
        if edge.wrap:
            return 0
        (x1, y1), (x2, y2) = self.point(v), self.point(w)
        lox, hix = sorted((x1, x2))
        loy, hiy = sorted((y1, y2))
        for q in (edge.source, edge.target):
            x, y = self.point(q)
            if not (lox <= x <= hix and loy <= y <= hiy):
                return 0
        return 1

    def a(self, e: int) -> str:
        """Perpendicular segment at the source (vertical e) or target (horizontal e)."""
        edge = self.track.edges[e]
        if edge.vertical:
            return self.track.perpendicular(edge.source, vertical=False)
        return self.track.perpendicular(edge.target, vertical=True)


def structure_maps(tt: TrainTrack, arr: Arrangement) -> StructureMaps:
    return StructureMaps(tt, dict(arr.coords))


# ---------------------------------------------------------------------------
# paths in the non-wrap spanning tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathTable:
    """``paths[i]`` is the edge path from the basepoint to crossing ``i`` as
    ``(edge index, orientation sign)`` pairs."""

    basepoint: int
    paths: tuple[tuple[tuple[int, int], ...], ...]


def spanning_paths(tt: TrainTrack, v0: int = 0) -> PathTable:
    n = tt.n_vertices
    if not 0 <= v0 < n:
        raise ValueError(f"basepoint {v0} is not a crossing index (0..{n - 1})")
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for i, e in enumerate(tt.edges):
        if e.wrap:
            continue
        adj[e.source].append((e.target, i, 1))
        adj[e.target].append((e.source, i, -1))
    paths: list[tuple | None] = [None] * n
    paths[v0] = ()
    queue = deque([v0])
    while queue:
        x = queue.popleft()
        for y, i, sign in adj[x]:
            if paths[y] is None:
                paths[y] = paths[x] + ((i, sign),)
                queue.append(y)
    if any(p is None for p in paths):
        raise AssertionError("non-wrap edges do not connect the track")
    return PathTable(v0, tuple(paths))
