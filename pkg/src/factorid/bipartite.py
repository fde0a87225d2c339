"""Bipartite graphs generated from sparsity patterns, matchings, and covers."""

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Literal

from factorid import _kernels
from factorid.errors import MatchingNotMaximumError, NotSquareError
from factorid.pattern import SparsityPattern

Side = Literal["columns", "rows"]


@dataclass(frozen=True)
class BipartiteGraph:
    """Undirected bipartite graph with column vertices and row vertices.

    Edges are (column index, row index) pairs. When generated from a pattern,
    column j and row i are adjacent iff entry (i, j) is 1. Optional labels
    carry original-pattern coordinates through trimming or row deletion.
    """

    n_col: int
    n_row: int
    edges: frozenset[tuple[int, int]]
    col_labels: tuple[int, ...] | None = None
    row_labels: tuple[int, ...] | None = None

    def __post_init__(self):
        for c, r in self.edges:
            if not (0 <= c < self.n_col and 0 <= r < self.n_row):
                raise ValueError(f"edge ({c}, {r}) out of range")
        if self.col_labels is not None and len(self.col_labels) != self.n_col:
            raise ValueError("col_labels length mismatch")
        if self.row_labels is not None and len(self.row_labels) != self.n_row:
            raise ValueError("row_labels length mismatch")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted row neighbors per column vertex."""
        adj: list[list[int]] = [[] for _ in range(self.n_col)]
        for c, r in self.edges:
            adj[c].append(r)
        return tuple(tuple(sorted(rows)) for rows in adj)

    def _csr(self) -> tuple[list[int], list[int]]:
        indptr = [0]
        indices: list[int] = []
        for rows in self.adjacency:
            indices.extend(rows)
            indptr.append(len(indices))
        return indptr, indices


@dataclass(frozen=True)
class Matching:
    """Set of edges with pairwise distinct endpoints."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        cols = {c for c, _ in self.pairs}
        rows = {r for _, r in self.pairs}
        if len(cols) != len(self.pairs) or len(rows) != len(self.pairs):
            raise ValueError("matching reuses an endpoint")

    @property
    def size(self) -> int:
        return len(self.pairs)

    def column_to_row(self) -> dict[int, int]:
        return {c: r for c, r in self.pairs}


@dataclass(frozen=True)
class VertexCover:
    """Vertex set touching every edge; `weight` is its total vertex weight."""

    cols: frozenset[int]
    rows: frozenset[int]
    weight: int

    @property
    def size(self) -> int:
        return len(self.cols) + len(self.rows)

    def covers(self, g: BipartiteGraph) -> bool:
        return all(c in self.cols or r in self.rows for c, r in g.edges)


def generate_bipartite(
    p: SparsityPattern,
    col_labels: tuple[int, ...] | None = None,
    row_labels: tuple[int, ...] | None = None,
) -> BipartiteGraph:
    """Bipartite graph of a pattern: edge (j, i) iff entry (i, j) is 1."""
    edges = frozenset(
        (j, i) for i, row in enumerate(p.entries) for j, v in enumerate(row) if v
    )
    return BipartiteGraph(
        n_col=p.r, n_row=p.m, edges=edges, col_labels=col_labels, row_labels=row_labels
    )


def duplicate_columns(g: BipartiteGraph) -> BipartiteGraph:
    """Double the column side; vertex j + n_col mirrors the edges of j."""
    mirrored = frozenset((c + g.n_col, r) for c, r in g.edges)
    labels = g.col_labels * 2 if g.col_labels is not None else None
    return BipartiteGraph(
        n_col=2 * g.n_col,
        n_row=g.n_row,
        edges=g.edges | mirrored,
        col_labels=labels,
        row_labels=g.row_labels,
    )


def maximum_matching(g: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching (Hopcroft-Karp).

    Deterministic: vertices are scanned in ascending order, so repeated calls
    on equal graphs return the same matching even when several maximum
    matchings exist.
    """
    indptr, indices = g._csr()
    _, match_l, _ = _kernels.hopcroft_karp(g.n_col, g.n_row, indptr, indices)
    pairs = frozenset((c, r) for c, r in enumerate(match_l) if r != -1)
    return Matching(pairs)


def minimum_vertex_cover(g: BipartiteGraph, mm: Matching) -> VertexCover:
    """Minimum vertex cover built from a maximum matching.

    Follows alternating paths from the unmatched column vertices: reached
    rows enter the cover, reached columns leave it. Cover size then equals
    the matching size. Raises MatchingNotMaximumError if the walk finds an
    augmenting path (i.e. `mm` was not maximum).
    """
    if not mm.pairs <= g.edges:
        raise ValueError("matching contains edges not present in the graph")
    match_c = {c: r for c, r in mm.pairs}
    match_r = {r: c for c, r in mm.pairs}
    adjacency = g.adjacency
    visited_c = set()
    visited_r = set()
    stack = [c for c in range(g.n_col) if c not in match_c]
    visited_c.update(stack)
    while stack:
        c = stack.pop()
        for r in adjacency[c]:
            if match_c.get(c) == r or r in visited_r:
                continue
            visited_r.add(r)
            back = match_r.get(r)
            if back is None:
                raise MatchingNotMaximumError(
                    f"augmenting path exists through row vertex {r}"
                )
            if back not in visited_c:
                visited_c.add(back)
                stack.append(back)
    cols = frozenset(c for c in range(g.n_col) if c in match_c and c not in visited_c)
    rows = frozenset(visited_r)
    return VertexCover(cols=cols, rows=rows, weight=len(cols) + len(rows))


def has_saturating_matching(g: BipartiteGraph, side: Side) -> bool:
    """Whether some matching covers every vertex of the chosen side."""
    if side not in ("columns", "rows"):
        raise ValueError(f"side must be 'columns' or 'rows', got {side!r}")
    target = g.n_col if side == "columns" else g.n_row
    return maximum_matching(g).size == target


def is_rcm(p: SparsityPattern) -> tuple[bool, Matching | None]:
    """Whether a square pattern has a column-saturating matching.

    Equivalently: some reordering of the rows puts a 1 on every diagonal
    cell, so a generic filling of the pattern is non-singular.
    """
    if p.m != p.r:
        raise NotSquareError(f"pattern is {p.m}x{p.r}, need square")
    mm = maximum_matching(generate_bipartite(p))
    if mm.size == p.r:
        return True, mm
    return False, None


def remove_rows(g: BipartiteGraph, rows: frozenset[int]) -> BipartiteGraph:
    """Subgraph with the given row vertices deleted (rows are renumbered)."""
    keep = [r for r in range(g.n_row) if r not in rows]
    renumber = {r: i for i, r in enumerate(keep)}
    edges = frozenset((c, renumber[r]) for c, r in g.edges if r not in rows)
    row_labels = None
    if g.row_labels is not None:
        row_labels = tuple(g.row_labels[r] for r in keep)
    return replace(g, n_row=len(keep), edges=edges, row_labels=row_labels)
