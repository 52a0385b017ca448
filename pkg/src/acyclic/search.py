"""Exact solvers for the independence number and the acyclic number.

Both solvers are deterministic depth-first branch-and-bound searches over
bitmask vertex sets.  A budget overrun never yields a wrong answer: the result
comes back with ``optimal=False`` and the best set found so far.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from dataclasses import dataclass

from .bounds import floor_bound, induced_forest_caps, min_eigenvalue, ratio_bound
from .graph import Graph, as_mask, forest_check, is_forest, is_independent, members, regularity
from .unionfind import RollbackUnionFind


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**8
    max_seconds: float = 600.0


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: tuple[int, ...]
    nodes_explored: int
    time: float
    optimal: bool

    @property
    def mask(self) -> int:
        return as_mask(self.witness)


class BudgetExceeded(Exception):
    pass


class _Stop(Exception):
    pass


class _Meter:
    """Node counter with a coarse wall-clock check."""

    __slots__ = ("nodes", "budget", "deadline")

    def __init__(self, budget: SearchBudget):
        self.nodes = 0
        self.budget = budget
        self.deadline = time.monotonic() + budget.max_seconds

    def tick(self):
        self.nodes += 1
        if self.nodes >= self.budget.max_nodes:
            raise BudgetExceeded
        if not self.nodes & 0xFFF and time.monotonic() > self.deadline:
            raise BudgetExceeded


def _lowbit_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# -- maximum independent set ---------------------------------------------------


def greedy_independent_set(g: Graph) -> int:
    """Minimum-degree greedy coclique."""
    rows = g.rows
    left = g.full_mask
    chosen = 0
    while left:
        v = min(members(left), key=lambda u: ((rows[u] & left).bit_count(), u))
        chosen |= 1 << v
        left &= ~(rows[v] | (1 << v))
    return chosen


def max_independent_set(g: Graph, budget: SearchBudget = DEFAULT_BUDGET, cap: int | None = None) -> SolveResult:
    """Exact maximum coclique by branch and bound on the complement's cliques.

    The bound colours the candidates greedily into cliques of ``g`` (a coclique
    meets each clique at most once).  For regular graphs the ratio bound caps
    the search globally.
    """
    start = time.monotonic()
    n = g.n
    rows = g.rows
    full = g.full_mask
    non = [full & ~r & ~(1 << i) for i, r in enumerate(rows)]
    if cap is None:
        cap = n
        k = regularity(g)
        if k and n > 1:
            spec = min_eigenvalue(g)
            cap = min(cap, floor_bound(ratio_bound(n, k, spec.lambda_min)))
    best_mask = greedy_independent_set(g)
    best = [best_mask.bit_count(), best_mask]
    meter = _Meter(budget)

    def colour_order(P):
        order = []
        colour = 0
        U = P
        while U:
            colour += 1
            Q = U
            while Q:
                v = _lowbit_index(Q)
                Q &= rows[v]
                U &= ~(1 << v)
                order.append((v, colour))
        return order

    def expand(R, size, P):
        meter.tick()
        for v, colour in reversed(colour_order(P)):
            if size + colour <= best[0]:
                return
            R2 = R | (1 << v)
            P2 = P & non[v]
            if not P2:
                if size + 1 > best[0]:
                    best[0], best[1] = size + 1, R2
                    if best[0] >= cap:
                        raise _Stop
            else:
                expand(R2, size + 1, P2)
            P &= ~(1 << v)

    optimal = True
    if best[0] < cap and n:
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))
        try:
            expand(0, 0, full)
        except _Stop:
            pass
        except BudgetExceeded:
            optimal = False
    witness = tuple(members(best[1]))
    return SolveResult(best[0], witness, meter.nodes, time.monotonic() - start, optimal)


# -- induced forests -----------------------------------------------------------


def greedy_forest(g: Graph, order) -> int:
    """Add vertices in ``order`` whenever they keep the set acyclic."""
    rows = g.rows
    uf = RollbackUnionFind(g.n)
    F = 0
    for v in order:
        nb = members(rows[v] & F)
        roots = {uf.find(w) for w in nb}
        if len(roots) < len(nb):
            continue
        for w in nb:
            uf.union(v, w)
        F |= 1 << v
    return F


def heuristic_forest(g: Graph, tries: int = 24, seed: int = 0) -> int:
    """Best of several greedy passes followed by a 1-out/2-in local search."""
    rng = random.Random(seed)
    rows = g.rows
    degs = g.degrees()
    base = sorted(range(g.n), key=lambda v: (degs[v], v))
    best = greedy_forest(g, base)
    for _ in range(tries):
        order = base[:]
        rng.shuffle(order)
        order.sort(key=lambda v: degs[v] + rng.random() * 2)
        cand = _improve_forest(g, greedy_forest(g, order), rng)
        if cand.bit_count() > best.bit_count():
            best = cand
    return best


def _improve_forest(g: Graph, F: int, rng: random.Random, rounds: int = 200) -> int:
    """Swap one forest vertex out for two outside vertices while possible."""
    n = g.n
    for _ in range(rounds):
        improved = False
        inside = members(F)
        rng.shuffle(inside)
        for x in inside:
            base = F & ~(1 << x)
            outside = [v for v in range(n) if not base >> v & 1 and v != x]
            addable = [v for v in outside if is_forest(g, base | (1 << v))]
            rng.shuffle(addable)
            for u, w in itertools.combinations(addable, 2):
                trial = base | (1 << u) | (1 << w)
                if is_forest(g, trial):
                    F = greedy_forest(g, members(trial) + [v for v in addable if v not in (u, w)])
                    improved = True
                    break
            if improved:
                break
        if not improved:
            break
    return F


class ForestSearch:
    """Branch and bound over include/exclude decisions for induced forests.

    The invariant is that every candidate can individually join the current
    forest: it has at most one neighbour in each component.  Including ``v``
    merges components in a rollback union-find and evicts the candidates that
    now see a component twice.  A forest meets every clique in at most two
    vertices, which bounds what the remaining candidates can contribute.
    """

    def __init__(self, g: Graph, meter: _Meter):
        self.g = g
        self.rows = g.rows
        self.meter = meter
        self.uf = RollbackUnionFind(g.n, g.rows)

    def _include(self, F, C, v):
        rows = self.rows
        uf = self.uf
        for w in members(rows[v] & F):
            uf.union(v, w)
        T = uf.component(v)
        C &= ~(1 << v)
        for u in members(C & uf.neighbourhood(v)):
            if (rows[u] & T).bit_count() >= 2:
                C &= ~(1 << u)
        return F | (1 << v), C

    def _clique_bound(self, C, limit):
        """Sum over a greedy clique cover of min(2, |clique|), stopping at ``limit``."""
        rows = self.rows
        cliques = []
        sizes = []
        total = 0
        for u in members(C):
            ru = rows[u]
            for i, Q in enumerate(cliques):
                if ru & Q == Q:
                    cliques[i] = Q | (1 << u)
                    sizes[i] += 1
                    if sizes[i] == 2:
                        total += 1
                    break
            else:
                cliques.append(1 << u)
                sizes.append(1)
                total += 1
                if total >= limit:
                    return total
        return total

    def run(self, allowed: int, forced: int, target: int, report) -> None:
        """Visit forests F with forced <= F <= allowed and |F| >= target.

        ``report(F)`` is called once per distinct forest reached through an
        inclusion; it returns the new target (or None to stop).
        """
        rows = self.rows
        uf = self.uf
        meter = self.meter
        mark0 = uf.mark()
        F = 0
        C = allowed & ~forced
        try:
            for v in members(forced):
                if not self._can_add(F, v):
                    return
                F, _ = self._include(F, 0, v)
            C = self._valid_candidates(F, C)
            state = [target]
            if F.bit_count() >= target and F:
                new = report(F)
                if new is None:
                    return
                state[0] = new
            sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * self.g.n + 100))
            self._search(F, F.bit_count(), C, state, report)
        except _Stop:
            pass
        finally:
            uf.rollback(mark0)

    def _can_add(self, F, v):
        nb = members(self.rows[v] & F)
        return len({self.uf.find(w) for w in nb}) == len(nb)

    def _valid_candidates(self, F, C):
        out = 0
        for u in members(C):
            if self._can_add(F, u):
                out |= 1 << u
        return out

    def _search(self, F, f, C, state, report):
        rows = self.rows
        uf = self.uf
        meter = self.meter
        while C:
            need = state[0] - f
            if C.bit_count() < need:
                return
            if self._clique_bound(C, need) < need:
                return
            live = F | C
            v = max(members(C), key=lambda u: ((rows[u] & live).bit_count(), -u))
            meter.tick()
            mark = uf.mark()
            F2, C2 = self._include(F, C, v)
            if f + 1 >= state[0]:
                new = report(F2)
                if new is None:
                    raise _Stop
                state[0] = new
            self._search(F2, f + 1, C2, state, report)
            uf.rollback(mark)
            C &= ~(1 << v)


def max_induced_forest(
    g: Graph,
    budget: SearchBudget = DEFAULT_BUDGET,
    anchor: int | None = None,
    lower: int = 0,
    seed: int = 0,
) -> SolveResult:
    """Exact acyclic number with a witness forest.

    ``anchor`` may name a vertex known to lie in some maximum forest (any
    vertex of a vertex-transitive graph); the search then forces it in.
    The global cap is the smaller of the spectral and edge-counting bounds.
    """
    start = time.monotonic()
    if g.n == 0:
        return SolveResult(0, (), 0, 0.0, True)
    caps = induced_forest_caps(g)
    cap = min(caps.values())
    best = [heuristic_forest(g, seed=seed)]
    if anchor is not None and not best[0] >> anchor & 1:
        alt = greedy_forest(g, [anchor] + [v for v in range(g.n) if v != anchor])
        if alt.bit_count() >= best[0].bit_count():
            best[0] = alt
    meter = _Meter(budget)
    optimal = True

    def report(F):
        if F.bit_count() > best[0].bit_count():
            best[0] = F
        if best[0].bit_count() >= cap:
            return None
        return best[0].bit_count() + 1

    if best[0].bit_count() < cap:
        search = ForestSearch(g, meter)
        forced = 0 if anchor is None else 1 << anchor
        target = max(best[0].bit_count() + 1, lower)
        try:
            search.run(g.full_mask, forced, target, report)
        except BudgetExceeded:
            optimal = False
    F = best[0]
    assert forest_check(g, F).is_forest
    return SolveResult(F.bit_count(), tuple(members(F)), meter.nodes, time.monotonic() - start, optimal)


# -- canonical forests -----------------------------------------------------------


def is_canonical_by_deletion(g: Graph, vertices) -> bool:
    mask = as_mask(vertices)
    if not mask:
        return True
    return any(is_independent(g, mask & ~(1 << v)) for v in members(mask))


def is_canonical_by_patterns(g: Graph, vertices) -> bool:
    """No two vertex-disjoint induced edges (equivalently no induced P4 or 2K2)."""
    mask = as_mask(vertices)
    rows = g.rows
    edges = [(u, v) for u in members(mask) for v in members(rows[u] & mask) if u < v]
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        if len({a, b, c, d}) == 4:
            return False
    return True


def is_canonical_forest(g: Graph, vertices) -> bool:
    """Whether the forest is a coclique plus one vertex."""
    mask = as_mask(vertices)
    if not forest_check(g, mask).is_forest:
        raise ValueError("vertex set does not induce a forest")
    by_deletion = is_canonical_by_deletion(g, mask)
    assert by_deletion == is_canonical_by_patterns(g, mask)
    return by_deletion


def is_induced_path(g: Graph, vertices) -> bool:
    mask = as_mask(vertices)
    check = forest_check(g, mask)
    if not check.is_forest or check.components != 1:
        return False
    return all((g.rows[v] & mask).bit_count() <= 2 for v in members(mask))


def anchor_pairs(g: Graph, first_edges=None):
    """Pairs of vertex-disjoint edges joined by at most one edge.

    Every non-canonical forest contains such a pair (an induced P4 or 2K2);
    ``first_edges`` restricts the first edge of each pair, which is sound for
    edge-transitive graphs when it holds a single edge.
    """
    rows = g.rows
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    firsts = edges if first_edges is None else list(first_edges)
    for a, b in firsts:
        i = index[(min(a, b), max(a, b))]
        ab = (1 << a) | (1 << b)
        for j, (c, d) in enumerate(edges):
            if first_edges is None and j <= i:
                continue
            if c in (a, b) or d in (a, b):
                continue
            between = (rows[c] & ab).bit_count() + (rows[d] & ab).bit_count()
            if between <= 1:
                yield (a, b), (c, d)


@dataclass(frozen=True)
class NoncanonicalResult:
    value: int  # largest non-canonical forest order found (0 if none reaches the floor)
    witness: tuple[int, ...]
    pairs_examined: int
    nodes_explored: int
    optimal: bool


def max_noncanonical_forest(
    g: Graph,
    floor: int = 0,
    first_edges=None,
    budget: SearchBudget = DEFAULT_BUDGET,
    prefer=None,
    stop_at: int | None = None,
) -> NoncanonicalResult:
    """Largest non-canonical induced forest of order at least ``floor``.

    For each anchor pair of disjoint edges {a,b}, {c,d} the forest lies inside
    {a,b,c,d} plus the vertices adjacent to neither a nor b or to neither c
    nor d, so each sub-search runs on a small vertex set with the anchors
    forced in.  ``prefer(F)`` marks witnesses to keep searching for among
    forests of the best order; ``stop_at`` ends the search once reached.
    """
    rows = g.rows
    full = g.full_mask
    meter = _Meter(budget)
    search = ForestSearch(g, meter)
    best = [0, 0, False]  # order, mask, preferred
    pairs = 0

    def nn(a, b):
        return full & ~(rows[a] | rows[b] | (1 << a) | (1 << b))

    def report(F):
        size = F.bit_count()
        good = prefer(F) if prefer is not None else True
        if size > best[0] or (size == best[0] and good and not best[2]):
            best[0], best[1], best[2] = size, F, good
        if stop_at is not None and best[0] >= stop_at and best[2]:
            return None
        return best[0] if (prefer is not None and not best[2]) else best[0] + 1

    optimal = True
    try:
        for (a, b), (c, d) in anchor_pairs(g, first_edges):
            pairs += 1
            forced = (1 << a) | (1 << b) | (1 << c) | (1 << d)
            allowed = forced | nn(a, b) | nn(c, d)
            target = max(floor, best[0] if (prefer is not None and not best[2]) else best[0] + 1)
            if allowed.bit_count() < target:
                continue
            search.run(allowed, forced, target, report)
            if stop_at is not None and best[0] >= stop_at and best[2]:
                break
    except BudgetExceeded:
        optimal = False
    return NoncanonicalResult(best[0], tuple(members(best[1])), pairs, meter.nodes, optimal)


# -- brute force oracle ------------------------------------------------------------


def brute_force_oracle(g: Graph, predicate: str) -> int:
    """Maximum size of a vertex subset satisfying the predicate, by enumeration.

    Both predicates are hereditary, so sizes are tried upward and the scan
    stops at the first size with no valid subset.
    """
    if g.n > 24:
        raise ValueError("brute force oracle is limited to 24 vertices")
    if predicate == "independent":
        test = is_independent
    elif predicate == "forest":
        test = lambda graph, s: forest_check(graph, s).is_forest  # noqa: E731
    else:
        raise ValueError(f"unknown predicate {predicate!r}")
    best = 0
    for size in range(1, g.n + 1):
        if not any(test(g, as_mask(combo)) for combo in itertools.combinations(range(g.n), size)):
            break
        best = size
    return best
