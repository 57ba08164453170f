"""Square grid graphs and the window algebra used by the extraction step.

The ``n x n`` grid graph has vertices ``v_{i,j}`` for ``1 <= i, j <= n``
(row ``i``, column ``j``) numbered ``(i - 1) * n + j``, and edges joining
horizontally and vertically adjacent vertices.  Edge ids are assigned in
row-major vertex order, right edge before down edge, starting at 1, so
any two grids of the same size agree on ids.

A :class:`GridAtlas` fixes a ``(g + 2k) x (g + 2k)`` window inside the
grid: a central ``g x g`` block padded by ``k`` layers on every side.
The algebra of nested windows, peel cycles and rings below is what the
extraction step uses to carve a clean subgrid out of a model and wire it
to the root set.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def vertex_id(n: int, i: int, j: int) -> int:
    """Id of grid vertex ``v_{i,j}`` in the ``n x n`` grid (1-based)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"({i},{j}) outside the {n}x{n} grid")
    return (i - 1) * n + j


def vertex_coord(n: int, vid: int) -> tuple[int, int]:
    """Inverse of :func:`vertex_id`."""
    if not (1 <= vid <= n * n):
        raise ValueError(f"vertex id {vid} outside the {n}x{n} grid")
    i, j = divmod(vid - 1, n)
    return i + 1, j + 1


def grid_graph(n: int):
    """The ``n x n`` grid graph with deterministic vertex and edge ids."""
    from .graph import Graph

    if n < 1:
        raise ValueError("grid side must be at least 1")
    edges = []
    eid = 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = vertex_id(n, i, j)
            if j < n:
                edges.append((eid, v, vertex_id(n, i, j + 1)))
                eid += 1
            if i < n:
                edges.append((eid, v, vertex_id(n, i + 1, j)))
                eid += 1
    return Graph(range(1, n * n + 1), edges)


def grid_edge_id(n: int, u: int, v: int) -> int:
    """Edge id between two adjacent grid vertices.

    Recomputes the row-major numbering without building the graph: each
    cell emits its right edge (when one exists) and then its down edge.
    """
    a, b = min(u, v), max(u, v)
    i, j = vertex_coord(n, a)
    ic, jc = vertex_coord(n, b)
    if (ic, jc) not in ((i, j + 1), (i + 1, j)):
        raise ValueError(f"vertices {u} and {v} are not grid-adjacent")
    # Rows above row i each emit n - 1 right edges and n down edges;
    # earlier cells in row i emit one right edge each plus a down edge
    # when row i is not the last row.
    count = (i - 1) * (2 * n - 1) + (j - 1) * (2 if i < n else 1)
    if (ic, jc) == (i, j + 1):
        return count + 1
    return count + (2 if j < n else 1)


def row_vertices(n: int, i: int) -> tuple[int, ...]:
    """Ids of row ``i`` of the ``n x n`` grid, left to right."""
    return tuple(vertex_id(n, i, j) for j in range(1, n + 1))


def column_vertices(n: int, j: int) -> tuple[int, ...]:
    """Ids of column ``j`` of the ``n x n`` grid, top to bottom."""
    return tuple(vertex_id(n, i, j) for i in range(1, n + 1))


@dataclass(frozen=True)
class GridAtlas:
    """A ``(g + 2k) x (g + 2k)`` window inside the ``n x n`` grid.

    ``(i0, j0)`` is the top-left corner of the central ``g x g`` block,
    so the window itself spans rows ``i0 - k .. i0 + g - 1 + k`` and the
    same range of columns.  The window must fit inside the grid.
    """

    n: int
    i0: int
    j0: int
    g: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.g:
            raise ValueError("need 1 <= k <= g")
        lo_i, lo_j = self.i0 - self.k, self.j0 - self.k
        hi_i, hi_j = self.i0 + self.g - 1 + self.k, self.j0 + self.g - 1 + self.k
        if lo_i < 1 or lo_j < 1 or hi_i > self.n or hi_j > self.n:
            raise ValueError("window does not fit inside the grid")

    # -- window layers ---------------------------------------------------

    def window_vertices(self, s: int) -> frozenset[int]:
        """Vertices of the layer-``s`` window ``H_s``.

        ``H_0`` is the whole padded window; each increment of ``s`` strips
        one boundary layer, and ``H_k`` is the central ``g x g`` block.
        Valid for ``0 <= s <= k``.
        """
        if not (0 <= s <= self.k):
            raise ValueError(f"layer {s} outside 0..{self.k}")
        lo_i, lo_j = self.i0 - self.k + s, self.j0 - self.k + s
        hi_i, hi_j = self.i0 + self.g - 1 + self.k - s, self.j0 + self.g - 1 + self.k - s
        return frozenset(
            vertex_id(self.n, i, j)
            for i in range(lo_i, hi_i + 1)
            for j in range(lo_j, hi_j + 1)
        )

    def peel_cycle(self, s: int) -> frozenset[int]:
        """The boundary layer stripped between ``H_s`` and ``H_{s+1}``.

        Valid for ``0 <= s <= k - 1``.
        """
        if not (0 <= s <= self.k - 1):
            raise ValueError(f"peel layer {s} outside 0..{self.k - 1}")
        return self.window_vertices(s) - self.window_vertices(s + 1)

    def ring(self, s: int) -> frozenset[int]:
        """The four-segment ring through depth ``s``, for ``1 <= s <= k``.

        The ring consists of the top and bottom rows at depth ``s - 1``
        inside the window and the left and right columns at depth
        ``s - 1``, restricted to the rows strictly between those two;
        together these coincide with the peel cycle at layer ``s - 1``.
        """
        if not (1 <= s <= self.k):
            raise ValueError(f"ring index {s} outside 1..{self.k}")
        d = s - 1
        lo_i, lo_j = self.i0 - self.k + d, self.j0 - self.k + d
        hi_i, hi_j = self.i0 + self.g - 1 + self.k - d, self.j0 + self.g - 1 + self.k - d
        out = set()
        for j in range(lo_j, hi_j + 1):
            out.add(vertex_id(self.n, lo_i, j))
            out.add(vertex_id(self.n, hi_i, j))
        for i in range(lo_i + 1, hi_i):
            out.add(vertex_id(self.n, i, lo_j))
            out.add(vertex_id(self.n, i, hi_j))
        return frozenset(out)

    def root_segment(self) -> tuple[int, ...]:
        """The k-vertex column stub the extracted subgrid hangs from.

        These are the vertices ``v_{i, j0}`` for ``i0 <= i <= i0 + k - 1``:
        the top ``k`` rows of the central block's first column.
        """
        return tuple(
            vertex_id(self.n, i, self.j0) for i in range(self.i0, self.i0 + self.k)
        )

    def central_vertices(self) -> frozenset[int]:
        """The central ``g x g`` block ``H_k``."""
        return self.window_vertices(self.k)

    def window_rows(self) -> range:
        """Grid rows covered by the padded window, ascending."""
        return range(self.i0 - self.k, self.i0 + self.g + self.k)

    def window_columns(self) -> range:
        return range(self.j0 - self.k, self.j0 + self.g + self.k)


def choose_band(n: int, g: int, k: int, forbidden: Iterable[int]) -> GridAtlas | None:
    """Pick the first band of ``g + 2k`` consecutive clean grid rows.

    A row is dirty when it contains a forbidden vertex, and a band is
    clean when none of its rows is dirty; this guarantees that no grid
    row meets both the window and the forbidden set.  Candidate top rows
    are scanned with stride 1 in ascending order, so the result is the
    band with the least feasible top row.  The window's columns are
    always the leftmost ``g + 2k``.  Returns ``None`` when no clean band
    exists.
    """
    side = g + 2 * k
    if side > n:
        return None
    dirty_rows = set()
    for vid in forbidden:
        if 1 <= vid <= n * n:
            dirty_rows.add(vertex_coord(n, vid)[0])
    for top in range(1, n - side + 2):
        if all(i not in dirty_rows for i in range(top, top + side)):
            return GridAtlas(n=n, i0=top + k, j0=k + 1, g=g, k=k)
    return None
