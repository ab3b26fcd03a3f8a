"""Plane trees with a vertical/horizontal bipartition.

A plane tree is read from the line-based ``.ptree`` format::

    # A3: horizontal center, two vertical leaves
    a1 V : b1
    b1 H : a1 a2
    a2 V : b1

Each line lists a vertex id, its class (``V`` = vertical, sign -1; ``H`` =
horizontal, sign +1) and its neighbors in counterclockwise order.  Neighbor
lists are normalized by rotating the lexicographically smallest id to the
front, which keeps the circular order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterator, Sequence

IntMatrix = tuple[tuple[int, ...], ...]

VERTICAL = "V"
HORIZONTAL = "H"


class PlaneTreeError(ValueError):
    """Malformed or invalid plane tree input."""

    def __init__(self, message: str, line: int | None = None, vertex: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if vertex is not None:
            where.append(f"vertex {vertex!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.vertex = vertex


@dataclass(frozen=True)
class Vertex:
    id: str
    orientation: str
    neighbors: tuple[str, ...]

    @property
    def sign(self) -> int:
        return -1 if self.orientation == VERTICAL else 1

    @property
    def degree(self) -> int:
        return len(self.neighbors)


def _rotate_min_first(ids: Sequence[str]) -> tuple[str, ...]:
    if not ids:
        return ()
    k = min(range(len(ids)), key=lambda i: ids[i])
    return tuple(ids[k:]) + tuple(ids[:k])


@dataclass(frozen=True)
class PlaneTree:
    vertices: tuple[Vertex, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v.id: i for i, v in enumerate(self.vertices)})

    def __getitem__(self, vid: str) -> Vertex:
        return self.vertices[self._index[vid]]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def edges(self) -> tuple[tuple[str, str], ...]:
        """Edges as (vertical id, horizontal id), in bipartite vertex order."""
        out = []
        for v in self.bipartite_order:
            vert = self[v]
            if vert.orientation == VERTICAL:
                out.extend((v, w) for w in vert.neighbors)
        return tuple(out)

    @cached_property
    def bipartite_order(self) -> tuple[str, ...]:
        """Vertical vertices (input order) followed by horizontal ones."""
        vs = [v.id for v in self.vertices if v.orientation == VERTICAL]
        hs = [v.id for v in self.vertices if v.orientation == HORIZONTAL]
        return tuple(vs + hs)

    @property
    def n_vertical(self) -> int:
        return sum(1 for v in self.vertices if v.orientation == VERTICAL)

    def to_text(self) -> str:
        return "".join(f"{v.id} {v.orientation} : {' '.join(v.neighbors)}\n" for v in self.vertices)

    def swapped(self) -> PlaneTree:
        """Same plane tree with the vertical and horizontal classes exchanged."""
        flip = {VERTICAL: HORIZONTAL, HORIZONTAL: VERTICAL}
        return PlaneTree(tuple(Vertex(v.id, flip[v.orientation], v.neighbors) for v in self.vertices))


def validate(records: Sequence[tuple[str, str, Sequence[str], int | None]]) -> PlaneTree:
    """Build a :class:`PlaneTree` from ``(id, class, neighbors, line)`` records."""
    index: dict[str, int] = {}
    for vid, cls, nbrs, line in records:
        if vid in index:
            raise PlaneTreeError("duplicate vertex id", line, vid)
        if cls not in (VERTICAL, HORIZONTAL):
            raise PlaneTreeError(f"class must be V or H, got {cls!r}", line, vid)
        index[vid] = len(index)
    lines = {vid: line for vid, _, _, line in records}
    cls_of = {vid: cls for vid, cls, _, _ in records}
    nb_of = {vid: list(nbrs) for vid, _, nbrs, _ in records}
    for vid, nbrs in nb_of.items():
        if len(set(nbrs)) != len(nbrs):
            raise PlaneTreeError("neighbor listed twice", lines[vid], vid)
        for w in nbrs:
            if w == vid:
                raise PlaneTreeError("vertex lists itself", lines[vid], vid)
            if w not in index:
                raise PlaneTreeError(f"unknown neighbor {w!r}", lines[vid], vid)
            if vid not in nb_of[w]:
                raise PlaneTreeError(f"lists {w!r} but {w!r} does not list it back", lines[vid], vid)
            if cls_of[w] == cls_of[vid]:
                raise PlaneTreeError(
                    f"edge to {w!r} joins two {cls_of[vid]} vertices (not a proper 2-coloring)",
                    lines[vid],
                    vid,
                )
    n = len(records)
    m = sum(len(v) for v in nb_of.values()) // 2
    if n == 0:
        raise PlaneTreeError("empty tree")
    seen = {records[0][0]}
    queue = deque([records[0][0]])
    while queue:
        v = queue.popleft()
        for w in nb_of[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != n:
        missing = next(r[0] for r in records if r[0] not in seen)
        raise PlaneTreeError("graph is disconnected", lines[missing], missing)
    if m != n - 1:
        raise PlaneTreeError(f"graph has a cycle ({m} edges on {n} vertices)", records[-1][3])
    return PlaneTree(
        tuple(Vertex(vid, cls, _rotate_min_first(nbrs)) for vid, cls, nbrs, _ in records)
    )


def parse_plane_tree(text: str) -> PlaneTree:
    """Parse and validate a ``.ptree`` document."""
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise PlaneTreeError("expected '<id> <V|H> : <neighbors>'", lineno)
        head, tail = line.split(":", 1)
        parts = head.split()
        if len(parts) != 2:
            raise PlaneTreeError("expected '<id> <V|H>' before ':'", lineno)
        vid, cls = parts
        records.append((vid, cls.upper(), tail.split(), lineno))
    if not records:
        raise PlaneTreeError("no vertices found")
    return validate(records)


def read_plane_tree(path) -> PlaneTree:
    with open(path, encoding="utf-8") as fh:
        return parse_plane_tree(fh.read())


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a)


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def bipartite_block(tree: PlaneTree) -> IntMatrix:
    """The block ``X`` (vertical rows x horizontal columns) of the adjacency matrix."""
    order = tree.bipartite_order
    nv = tree.n_vertical
    vs, hs = order[:nv], order[nv:]
    return tuple(tuple(int(h in tree[v].neighbors) for h in hs) for v in vs)


def adjacency_matrix(tree: PlaneTree) -> IntMatrix:
    """Adjacency matrix in bipartite order, ``[[0, X], [X^T, 0]]``."""
    order = tree.bipartite_order
    return tuple(tuple(int(w in tree[v].neighbors) for w in order) for v in order)


def homological_multitwists(tree: PlaneTree) -> tuple[IntMatrix, IntMatrix]:
    """``T_a = [[I, X], [0, I]]`` and ``T_b = [[I, 0], [X^T, I]]`` on ``Z^|V|``."""
    x = bipartite_block(tree)
    nv = tree.n_vertical
    n = len(tree)
    ta = [list(r) for r in identity(n)]
    tb = [list(r) for r in identity(n)]
    for i in range(nv):
        for j in range(n - nv):
            ta[i][nv + j] = x[i][j]
            tb[nv + j][i] = x[i][j]
    return tuple(map(tuple, ta)), tuple(map(tuple, tb))


# ---------------------------------------------------------------------------
# integer kernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelBasis:
    """Integer basis of ``ker(A)``: the columns of ``matrix`` (``n x r``)."""

    matrix: IntMatrix
    vertex_order: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"x{j}" for j in range(self.rank))

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(r[j] for r in self.matrix) for j in range(self.rank)]

    def exponent(self, vertex: str) -> tuple[int, ...]:
        """Exponent vector of the deck transformation of winding once around ``vertex``."""
        return self.matrix[self.vertex_order.index(vertex)]


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form (pivots positive, entries above pivots reduced)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncol = len(rows[0])
    r = 0
    pivots = []
    for c in range(ncol):
        if r >= len(rows):
            break
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[k] = rows[k], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if not rows[r][c]:
            continue
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return [row for row in rows[:r]]


def integer_kernel(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of ``{v : A v = 0}`` via unimodular column reduction, returned
    as rows in Hermite normal form (so the basis is canonical)."""
    m = len(a)
    n = len(a[0]) if a else 0
    # columns of [A; I]
    cols = [[a[i][j] for i in range(m)] + [int(k == j) for k in range(n)] for j in range(n)]
    p = 0
    for i in range(m):
        while True:
            nz = [j for j in range(p, n) if cols[j][i]]
            if not nz:
                break
            k = min(nz, key=lambda j: abs(cols[j][i]))
            cols[p], cols[k] = cols[k], cols[p]
            done = True
            for j in range(p + 1, n):
                if cols[j][i]:
                    q = cols[j][i] // cols[p][i]
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[p])]
                    if cols[j][i]:
                        done = False
            if done:
                break
        if p < n and cols[p][i]:
            p += 1
    kernel = [c[m:] for c in cols[p:]]
    return _hnf_rows(kernel)


def kernel_basis(a: IntMatrix, vertex_order: Sequence[str] | None = None) -> KernelBasis:
    """Saturated integer kernel basis of a square integer matrix."""
    n = len(a)
    rows = integer_kernel(a)
    for r in rows:
        g = 0
        for x in r:
            g = gcd(g, x)
        if g != 1:
            raise AssertionError("kernel basis vector is not primitive")
    mat = tuple(tuple(rows[j][i] for j in range(len(rows))) for i in range(n))
    order = tuple(vertex_order) if vertex_order is not None else tuple(str(i) for i in range(n))
    return KernelBasis(mat, order)


def tree_kernel(tree: PlaneTree) -> KernelBasis:
    return kernel_basis(adjacency_matrix(tree), tree.bipartite_order)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _ordered_trees(n: int) -> Iterator[tuple]:
    """All ordered (plane rooted) trees with ``n`` vertices as nested tuples."""
    if n == 1:
        yield ()
        return
    # children forests with n-1 vertices
    yield from _forests(n - 1)


def _forests(n: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    for k in range(1, n + 1):
        for first in _ordered_trees(k):
            for rest in _forests(n - k):
                yield (first,) + rest


def _to_adjacency(tree: tuple) -> list[list[int]]:
    """Circular neighbor orders of an ordered rooted tree (root = 0)."""
    adj: list[list[int]] = [[]]

    def build(node: tuple, me: int):
        for child in node:
            c = len(adj)
            adj.append([me])
            adj[me].append(c)
            build(child, c)

    build(tree, 0)
    return adj


def _encode(adj: list[list[int]], v: int, start: int) -> str:
    """Parenthesis code of the plane tree rooted at ``v`` with ``adj[v][start]`` first."""
    out = []

    def walk(x: int, parent: int):
        nb = adj[x]
        k = nb.index(parent)
        order = nb[k + 1:] + nb[:k]
        out.append("(")
        for y in order:
            walk(y, x)
        out.append(")")

    nb = adj[v]
    out.append("(")
    for y in nb[start:] + nb[:start]:
        walk(y, v)
    out.append(")")
    return "".join(out)


def canonical_code(adj: list[list[int]]) -> str:
    """Rotation-invariant code of an (uncolored) plane tree."""
    best = None
    for v in range(len(adj)):
        for s in range(max(len(adj[v]), 1)):
            c = _encode(adj, v, s)
            if best is None or c < best:
                best = c
    return best


def _decode(code: str) -> list[list[int]]:
    adj: list[list[int]] = []
    stack: list[int] = []
    for ch in code:
        if ch == "(":
            me = len(adj)
            adj.append([])
            if stack:
                adj[stack[-1]].append(me)
                adj[me].append(stack[-1])
            stack.append(me)
        else:
            stack.pop()
    return adj


def tree_from_adjacency(adj: list[list[int]], root_class: str = HORIZONTAL) -> PlaneTree:
    """PlaneTree with ids ``v0, v1, ...``; vertex 0 gets ``root_class``."""
    other = VERTICAL if root_class == HORIZONTAL else HORIZONTAL
    depth = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in depth:
                depth[y] = depth[x] + 1
                queue.append(y)
    recs = [
        (f"v{i}", root_class if depth[i] % 2 == 0 else other, [f"v{j}" for j in adj[i]], None)
        for i in range(len(adj))
    ]
    return validate(recs)


def enumerate_plane_trees(n: int) -> list[PlaneTree]:
    """One representative of every plane tree on ``n`` vertices.

    Trees are taken up to orientation-preserving isomorphism.  Root
    convention: the vertex where the canonical code starts is horizontal.
    """
    codes = set()
    for t in _ordered_trees(n):
        codes.add(canonical_code(_to_adjacency(t)))
    return [tree_from_adjacency(_decode(c)) for c in sorted(codes)]
