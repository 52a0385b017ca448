"""Disjoint-set forest with an undo log, used for incremental cycle detection."""

from __future__ import annotations


class RollbackUnionFind:
    """Union by rank without path compression, so every merge can be undone.

    Each root also carries the bitmask of its component and, when adjacency
    rows are supplied, the union of the component's neighbourhoods.  ``find``
    is O(log n); ``rollback(mark)`` undoes every union made after ``mark()``.
    """

    __slots__ = ("parent", "rank", "members", "nbrs", "_history")

    def __init__(self, n: int, rows=None):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.members = [1 << i for i in range(n)]
        self.nbrs = list(rows) if rows is not None else [0] * n
        self._history: list[tuple[int, int, bool, int]] = []

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the components of ``a`` and ``b``; False if already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        bumped = self.rank[ra] == self.rank[rb]
        self._history.append((ra, rb, bumped, self.nbrs[ra]))
        self.parent[rb] = ra
        self.members[ra] |= self.members[rb]
        self.nbrs[ra] |= self.nbrs[rb]
        if bumped:
            self.rank[ra] += 1
        return True

    def mark(self) -> int:
        return len(self._history)

    def rollback(self, mark: int) -> None:
        history = self._history
        while len(history) > mark:
            ra, rb, bumped, old_nbrs = history.pop()
            self.parent[rb] = rb
            self.members[ra] &= ~self.members[rb]
            self.nbrs[ra] = old_nbrs
            if bumped:
                self.rank[ra] -= 1

    def component(self, x: int) -> int:
        return self.members[self.find(x)]

    def neighbourhood(self, x: int) -> int:
        return self.nbrs[self.find(x)]
