"""Partitioned Cayley digraphs built from connection-set systems.

Vertex convention: ``vertex(i, g) = i * |G| + g``; part i is the contiguous
index range ``[i*|G|, (i+1)*|G|)``.  The arc rule multiplies the connection
element on the LEFT of the source's group coordinate (arc g_i -> (t g)_j for
t in T[i][j]); the translation embedding multiplies on the RIGHT
(x_i -> (x g)_i).  Both are property-tested together, since swapping one of
them silently breaks the embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidParameter
from .groups import GroupTable


@dataclass(frozen=True)
class ConnectionSets:
    """An m x m array of sorted element-index tuples T[i][j]."""

    m: int
    sets: tuple  # tuple of tuples of tuples of ints

    @staticmethod
    def from_lists(m: int, sets: Sequence[Sequence[Iterable[int]]]) -> "ConnectionSets":
        if len(sets) != m or any(len(row) != m for row in sets):
            raise InvalidParameter("sets must be an m x m array")
        canon = []
        for row in sets:
            crow = []
            for cell in row:
                cell = list(cell)
                if len(set(cell)) != len(cell):
                    raise InvalidParameter(f"duplicate elements in cell {cell}")
                crow.append(tuple(sorted(int(e) for e in cell)))
            canon.append(tuple(crow))
        return ConnectionSets(m, tuple(canon))

    @staticmethod
    def from_words(g: GroupTable, m: int, cells: dict) -> "ConnectionSets":
        """Build from a mapping {(i, j): [word, ...]} of generator words."""
        sets = [[[] for _ in range(m)] for _ in range(m)]
        for (i, j), words in cells.items():
            sets[i][j] = [g.evaluate_word(w) for w in words]
        return ConnectionSets.from_lists(m, sets)

    def cell(self, i: int, j: int) -> tuple:
        return self.sets[i][j]

    def check_indices(self, g: GroupTable) -> None:
        for row in self.sets:
            for cell in row:
                for e in cell:
                    if not 0 <= e < g.order:
                        raise IndexOutOfRange(f"element {e} out of range for order {g.order}")

    def size_matrix(self) -> list[list[int]]:
        return [[len(c) for c in row] for row in self.sets]

    def to_json(self, g: GroupTable | None = None) -> dict:
        if g is None:
            cells = [[[int(e) for e in cell] for cell in row] for row in self.sets]
        else:
            cells = [[[g.words[e] for e in cell] for cell in row] for row in self.sets]
        return {"m": self.m, "sets": cells}

    @staticmethod
    def from_json(data: dict, g: GroupTable) -> "ConnectionSets":
        m = int(data["m"])
        sets = [
            [[g.evaluate_word(w) if isinstance(w, str) else int(w) for w in cell]
             for cell in row]
            for row in data["sets"]
        ]
        return ConnectionSets.from_lists(m, sets)


class Digraph:
    """Immutable digraph with mirrored out- and in-adjacency."""

    __slots__ = ("n", "out_adj", "in_adj", "n_arcs", "has_loops",
                 "_out_flat", "_out_off", "_in_flat", "_in_off")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        arcs = sorted(set((int(u), int(v)) for u, v in arcs))
        out_lists: list[list[int]] = [[] for _ in range(n)]
        in_lists: list[list[int]] = [[] for _ in range(n)]
        loops = False
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"arc ({u}, {v}) outside 0..{n - 1}")
            out_lists[u].append(v)
            in_lists[v].append(u)
            loops |= u == v
        self.n = n
        self.out_adj = [np.array(a, dtype=np.int32) for a in out_lists]
        self.in_adj = [np.array(sorted(a), dtype=np.int32) for a in in_lists]
        self.n_arcs = len(arcs)
        self.has_loops = loops
        self._out_flat = None
        self._out_off = None
        self._in_flat = None
        self._in_off = None

    # CSR views used by the refinement kernels
    def csr(self):
        if self._out_flat is None:
            self._out_off = np.zeros(self.n + 1, dtype=np.int64)
            self._in_off = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                self._out_off[v + 1] = self._out_off[v] + len(self.out_adj[v])
                self._in_off[v + 1] = self._in_off[v] + len(self.in_adj[v])
            self._out_flat = (
                np.concatenate(self.out_adj).astype(np.int64)
                if self.n_arcs else np.zeros(0, dtype=np.int64)
            )
            self._in_flat = (
                np.concatenate(self.in_adj).astype(np.int64)
                if self.n_arcs else np.zeros(0, dtype=np.int64)
            )
        return self._out_flat, self._out_off, self._in_flat, self._in_off

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, int(v)) for u in range(self.n) for v in self.out_adj[u]]

    def arc_set(self) -> set[tuple[int, int]]:
        return set(self.arcs())

    def has_arc(self, u: int, v: int) -> bool:
        idx = np.searchsorted(self.out_adj[u], v)
        return idx < len(self.out_adj[u]) and self.out_adj[u][idx] == v

    def out_degrees(self) -> list[int]:
        return [len(a) for a in self.out_adj]

    def in_degrees(self) -> list[int]:
        return [len(a) for a in self.in_adj]

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """New digraph with vertex u renamed to perm[u]."""
        p = list(perm)
        return Digraph(self.n, [(p[u], p[v]) for u, v in self.arcs()])

    def is_weakly_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = np.zeros(self.n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for v in self.out_adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
            for v in self.in_adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        return bool(seen.all())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and all(np.array_equal(a, b) for a, b in zip(self.out_adj, other.out_adj))
        )

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.n_arcs})"


@dataclass
class PartitionedDigraph:
    """A digraph on m * |G| vertices with the fixed part/vertex convention."""

    digraph: Digraph
    group_order: int
    m: int

    def vertex(self, i: int, g: int) -> int:
        return i * self.group_order + g

    def part_of(self, v: int) -> int:
        return v // self.group_order

    def part_range(self, i: int) -> range:
        return range(i * self.group_order, (i + 1) * self.group_order)


@dataclass(frozen=True)
class ValidationReport:
    oriented: bool
    partite: bool
    regular: bool
    connected: bool

    def ok_for(self, kind: str) -> bool:
        """POSR needs oriented+partite+regular; PDR drops oriented."""
        if kind.upper() == "POSR":
            return self.oriented and self.partite and self.regular
        if kind.upper() == "PDR":
            return self.partite and self.regular
        raise InvalidParameter(f"unknown kind {kind!r}")


def build_cayley(g: GroupTable, conn: ConnectionSets) -> PartitionedDigraph:
    """Arcs vertex(i, h) -> vertex(j, t*h) for every t in T[i][j], h in G."""
    conn.check_indices(g)
    n = g.order
    arcs = []
    for i in range(conn.m):
        for j in range(conn.m):
            for t in conn.cell(i, j):
                row = g.mult[t]  # t*h for all h
                base_i, base_j = i * n, j * n
                for h in range(n):
                    arcs.append((base_i + h, base_j + int(row[h])))
    return PartitionedDigraph(Digraph(conn.m * n, arcs), n, conn.m)


def validate_sets(g: GroupTable, conn: ConnectionSets, valency: int) -> ValidationReport:
    """Check the oriented / partite / regularity / connectivity conditions."""
    conn.check_indices(g)
    m = conn.m
    oriented = True
    for i in range(m):
        for j in range(m):
            inv_ji = {int(g.inv[t]) for t in conn.cell(j, i)}
            if inv_ji.intersection(conn.cell(i, j)):
                oriented = False
    partite = all(not conn.cell(i, i) for i in range(m))
    sizes = conn.size_matrix()
    regular = all(sum(row) == valency for row in sizes) and all(
        sum(sizes[i][j] for i in range(m)) == valency for j in range(m)
    )
    connected = build_cayley(g, conn).digraph.is_weakly_connected()
    return ValidationReport(oriented, partite, regular, connected)


def sets_oriented(g: GroupTable, conn: ConnectionSets) -> bool:
    """Orientedness alone, as a cheap pre-filter (no digraph built)."""
    for i in range(conn.m):
        for j in range(i, conn.m):
            cell_ij = conn.cell(i, j)
            cell_ji = conn.cell(j, i)
            if not cell_ij or not cell_ji:
                continue
            inv_ji = {int(g.inv[t]) for t in cell_ji}
            if inv_ji.intersection(cell_ij):
                return False
    return True


def right_translations(g: GroupTable, m: int) -> list[np.ndarray]:
    """One vertex permutation per group element: vertex(i, h) -> vertex(i, h*g)."""
    n = g.order
    offsets = np.arange(m, dtype=np.int64)[:, None] * n
    perms = []
    for e in range(n):
        col = g.mult[:, e].astype(np.int64)  # h*e for all h
        perms.append((offsets + col[None, :]).reshape(-1))
    return perms


def is_digraph_automorphism(d: Digraph, perm: np.ndarray) -> bool:
    perm = np.asarray(perm)
    for u in range(d.n):
        if not np.array_equal(np.sort(perm[d.out_adj[u]]), d.out_adj[perm[u]]):
            return False
    return True


def out_ball(d: Digraph, v: int, radius: int) -> list[set[int]]:
    """Level sets of repeated out-neighborhoods; levels are not deduplicated
    against earlier ones (level k is the union of out-neighbors of level k-1)."""
    if not 0 <= v < d.n:
        raise IndexOutOfRange(f"vertex {v} outside 0..{d.n - 1}")
    levels = [{v}]
    for _ in range(radius):
        prev = levels[-1]
        nxt: set[int] = set()
        for u in prev:
            nxt.update(int(w) for w in d.out_adj[u])
        levels.append(nxt)
    return levels
