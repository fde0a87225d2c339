"""Identification network construction and exact min-cut via Dinic's algorithm.

The network encodes the minimum weighted vertex cover of the pattern's
bipartite graph with column weight 2r+1 and row weight r: cutting a
source->column arc puts that column in the cover, cutting a row->sink arc
puts that row in the cover, and the middle arcs are uncuttable.
"""

from dataclasses import dataclass
from typing import NamedTuple

from factorid import _kernels
from factorid.bipartite import VertexCover
from factorid.errors import EmptyPatternError, SentinelCutError, UntrimmedPatternError
from factorid.pattern import SparsityPattern


class Arc(NamedTuple):
    tail: int
    head: int
    capacity: int


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network with source 0, column nodes, row nodes, sink last.

    Node layout: source = 0, column j -> node 1+j, row i -> node 1+n_col+i,
    sink = n_col + n_row + 1. Arcs are ordered deterministically: source arcs
    by ascending column, middle arcs by (column, row), sink arcs by ascending
    row. `sentinel` is the finite stand-in for infinite capacity; it exceeds
    the weight of the all-columns cut, so no minimum cut can use it.
    """

    n_col: int
    n_row: int
    arcs: tuple[Arc, ...]
    sentinel: int

    @property
    def n_nodes(self) -> int:
        return self.n_col + self.n_row + 2

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return self.n_col + self.n_row + 1

    def col_node(self, j: int) -> int:
        return 1 + j

    def row_node(self, i: int) -> int:
        return 1 + self.n_col + i

    def node_name(self, node: int) -> str:
        if node == self.source:
            return "s"
        if node == self.sink:
            return "t"
        if node <= self.n_col:
            return f"u{node}"
        return f"v{node - self.n_col}"


@dataclass(frozen=True)
class CutResult:
    """Minimum s-t cut: its value, the source-side nodes, and crossing arcs."""

    value: int
    source_side: frozenset[int]
    cut_arcs: tuple[Arc, ...]


def build_identification_network(p: SparsityPattern) -> FlowNetwork:
    """Build the weighted network for a trimmed pattern.

    Capacities: 2r+1 on source->column arcs, r on row->sink arcs, and the
    sentinel r(2r+1)+1 on one column->row arc per 1-entry.
    """
    r, m = p.r, p.m
    if r == 0:
        raise EmptyPatternError("pattern has no columns")
    col_masks = p.col_masks
    row_masks = p.row_masks
    if any(mask == 0 for mask in col_masks) or any(mask == 0 for mask in row_masks):
        raise UntrimmedPatternError("pattern has an all-zero row or column")
    col_w = 2 * r + 1
    sentinel = r * col_w + 1
    arcs: list[Arc] = []
    sink = r + m + 1
    for j in range(r):
        arcs.append(Arc(0, 1 + j, col_w))
    for j in range(r):
        mask = col_masks[j]
        for i in range(m):
            if mask >> i & 1:
                arcs.append(Arc(1 + j, 1 + r + i, sentinel))
    for i in range(m):
        arcs.append(Arc(1 + r + i, sink, r))
    return FlowNetwork(n_col=r, n_row=m, arcs=tuple(arcs), sentinel=sentinel)


def max_flow_min_cut(n: FlowNetwork) -> CutResult:
    """Exact minimum cut of the network (equals the maximum s-t flow).

    The reported source side is the set reachable from the source in the
    final residual network, which is the same for every maximum flow, so the
    witness is reproducible across kernel backends.
    """
    tails = [a.tail for a in n.arcs]
    heads = [a.head for a in n.arcs]
    caps = [a.capacity for a in n.arcs]
    value, side, _ = _kernels.dinic_min_cut(
        n.n_nodes, n.source, n.sink, tails, heads, caps
    )
    cut_arcs = tuple(a for a in n.arcs if side[a.tail] and not side[a.head])
    assert value == sum(a.capacity for a in cut_arcs)
    return CutResult(
        value=value,
        source_side=frozenset(i for i, on in enumerate(side) if on),
        cut_arcs=cut_arcs,
    )


def mwvc_from_cut(n: FlowNetwork, c: CutResult) -> VertexCover:
    """Read the minimum weighted vertex cover off a finite minimum cut.

    Column j is covered iff the source->column-j arc is cut; row i is covered
    iff the row-i->sink arc is cut. The cover weight equals the cut value.
    """
    if c.value >= n.sentinel:
        raise SentinelCutError(f"cut value {c.value} reaches the sentinel {n.sentinel}")
    cols = set()
    rows = set()
    for a in c.cut_arcs:
        if a.tail == n.source:
            cols.add(a.head - 1)
        elif a.head == n.sink:
            rows.add(a.tail - 1 - n.n_col)
        else:
            raise SentinelCutError("minimum cut crosses a middle arc")
    return VertexCover(cols=frozenset(cols), rows=frozenset(rows), weight=c.value)
