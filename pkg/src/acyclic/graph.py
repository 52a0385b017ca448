"""Immutable simple graphs over bitset adjacency rows, plus vertex-subset predicates.

Vertex sets are plain Python ints used as bitmasks (bit ``i`` set means vertex
``i`` is a member).  Every predicate accepts either a mask or an iterable of
vertex indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

VertexSet = int


def as_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, (int, np.integer)):
        return int(vertices)
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {i} has bits outside the vertex range")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
        a = self.adjacency_matrix(dtype=bool)
        if not np.array_equal(a, a.T):
            i, j = np.argwhere(a != a.T)[0]
            raise ValueError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def from_matrix(cls, matrix, labels=None) -> "Graph":
        """Build from a dense 0/1 (or boolean) symmetric matrix."""
        a = np.asarray(matrix, dtype=bool)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        packed = np.packbits(a, axis=1, bitorder="little")
        rows = tuple(int.from_bytes(packed[i].tobytes(), "little") for i in range(n))
        return cls(n, rows, tuple(labels) if labels is not None else None)

    def adjacency_matrix(self, dtype=np.int8) -> np.ndarray:
        nbytes = (self.n + 7) // 8
        buf = np.frombuffer(
            b"".join(r.to_bytes(nbytes, "little") for r in self.rows), dtype=np.uint8
        ).reshape(self.n, nbytes)
        bits = np.unpackbits(buf, axis=1, bitorder="little")[:, : self.n]
        return bits.astype(dtype)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.rows):
            for v in members(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def induced_edge_count(self, vertices) -> int:
        mask = as_mask(vertices)
        return sum((self.rows[v] & mask).bit_count() for v in members(mask)) // 2

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``perm[i]`` plays the role of old vertex ``i``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def subgraph(self, vertices) -> tuple["Graph", list[int]]:
        """Induced subgraph, renumbered; returns it with the old-index map."""
        keep = members(as_mask(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        labels = [self.labels[v] for v in keep] if self.labels else None
        return Graph.from_edges(len(keep), edges, labels), keep

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(self.rows)), self.labels)


def build_graph(n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
    return Graph.from_edges(n, edges, labels)


def is_independent(g: Graph, vertices) -> bool:
    mask = as_mask(vertices)
    rows = g.rows
    return all(not (rows[v] & mask) for v in members(mask))


@dataclass(frozen=True)
class ForestCheck:
    is_forest: bool
    components: int
    cycle_edge: tuple[int, int] | None = None


def forest_check(g: Graph, vertices) -> ForestCheck:
    """Union-find over the induced edges, stopping at the first cycle-closing edge.

    ``components`` counts the components of the induced subgraph in both cases.
    """
    mask = as_mask(vertices)
    verts = members(mask)
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = len(verts)
    cycle_edge = None
    for u in verts:
        # only edges to higher-numbered members, each edge once
        for v in members(g.rows[u] & mask & ~((1 << (u + 1)) - 1)):
            ru, rv = find(u), find(v)
            if ru == rv:
                if cycle_edge is None:
                    cycle_edge = (u, v)
                continue
            parent[ru] = rv
            components -= 1
    return ForestCheck(cycle_edge is None, components, cycle_edge)


def is_forest(g: Graph, vertices) -> bool:
    """Forest test without the component count; cheaper in inner loops."""
    mask = as_mask(vertices)
    verts = members(mask)
    if g.induced_edge_count(mask) > len(verts) - 1 and verts:
        return False
    return forest_check(g, mask).is_forest


def regularity(g: Graph) -> int | None:
    degs = g.degrees()
    if not degs:
        return 0
    return degs[0] if all(d == degs[0] for d in degs) else None


def common_nonneighbors(g: Graph, a: int, b: int) -> int:
    """Mask of vertices other than ``a``, ``b`` adjacent to neither."""
    if a == b:
        raise ValueError("common_nonneighbors needs two distinct vertices")
    closed = g.rows[a] | g.rows[b] | (1 << a) | (1 << b)
    return g.full_mask & ~closed


@dataclass(frozen=True)
class EtaResult:
    value: int
    witness_edge: tuple[int, int]


def eta(g: Graph) -> EtaResult:
    """Largest number of vertices missing both ends of an edge, over all edges."""
    best = -1
    witness = None
    full = g.full_mask
    rows = g.rows
    for u in range(g.n):
        ru = rows[u] | (1 << u)
        for v in members(rows[u] >> (u + 1)):
            v += u + 1
            value = (full & ~(ru | rows[v] | (1 << v))).bit_count()
            if value > best:
                best, witness = value, (u, v)
    if witness is None:
        raise ValueError("eta is undefined on an edgeless graph")
    return EtaResult(best, witness)
