"""Explicit large forests in Kneser and Paley graphs, Blokhuis cocliques, and
the scan that adds two vertices to every maximum coclique of P'(q^2).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np
import sympy

from .algebra import FiniteField, quadratic_residues
from .families import FamilyGraph, kneser_vertices, paley_graph
from .graph import ForestCheck, as_mask, forest_check, is_independent, members

# field presentations used for the small Paley examples
EXAMPLE_MODULI = {3: [1, 0, 1], 5: [1, 1, 1], 7: [1, 0, 1]}

DEFAULT_SCAN_RANGE = (3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29)
FULL_SCAN_RANGE = tuple(q for q in range(3, 68) if q % 2 and len(sympy.factorint(q)) == 1)


def _kneser_index(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(kneser_vertices(n, k))}


def kneser_odd_forest(k: int) -> int:
    """Forest of order C(2k,k) + 2k - 2 in K(2k+1, k), for k > 3.

    All k-sets avoiding 2k+1, plus gamma_i = x_i + {2k, 2k+1} where x_i is the
    run {i, ..., i+k-3} read cyclically in 1..2k-1.
    """
    if k <= 3:
        raise ValueError("the odd Kneser construction needs k > 3")
    n = 2 * k + 1
    index = _kneser_index(n, k)
    F = 0
    for s, i in index.items():
        if n not in s:
            F |= 1 << i
    for i in range(1, 2 * k - 1):
        x = {((i - 1 + j) % (2 * k - 1)) + 1 for j in range(k - 2)}
        gamma = tuple(sorted(x | {2 * k, 2 * k + 1}))
        F |= 1 << index[gamma]
    return F


def kneser_odd_gammas(k: int) -> list[int]:
    """Vertex indices of gamma_1 .. gamma_{2k-2} in K(2k+1, k)."""
    index = _kneser_index(2 * k + 1, k)
    out = []
    for i in range(1, 2 * k - 1):
        x = {((i - 1 + j) % (2 * k - 1)) + 1 for j in range(k - 2)}
        out.append(index[tuple(sorted(x | {2 * k, 2 * k + 1}))])
    return out


def k73_forest() -> int:
    """The 23 triples of {1..6} plus {1,2,7}, {1,3,7}, {2,3,7} in K(7,3)."""
    index = _kneser_index(7, 3)
    F = 0
    for s, i in index.items():
        if 7 not in s or s in ((1, 2, 7), (1, 3, 7), (2, 3, 7)):
            F |= 1 << i
    return F


def kn2_forest7(n: int) -> int:
    """{12, 34, 13, 24, 14, 23, 15}: a 7-vertex forest in K(n,2) for n >= 5."""
    if n < 5:
        raise ValueError("needs n >= 5")
    index = _kneser_index(n, 2)
    pairs = [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3), (1, 5)]
    return as_mask(index[p] for p in pairs)


def example_paley(q: int) -> FamilyGraph:
    """P'(q^2) over the field presentation used for the small examples."""
    return paley_graph(FiniteField(q, 2, EXAMPLE_MODULI[q]), complement=True)


def paley_small_tree(q: int) -> int:
    """Subfield F_q plus two extra vertices: x+1, x+2 (q=3); x+2, x+4 (q=5);
    x+2, x+5 (q=7).  Indices refer to :func:`example_paley`."""
    extras = {3: (1, 2), 5: (2, 4), 7: (2, 5)}
    if q not in extras:
        raise ValueError("small Paley trees are listed for q in {3, 5, 7} only")
    F = FiniteField(q, 2, EXAMPLE_MODULI[q])
    mask = as_mask(range(q))
    for c in extras[q]:
        mask |= 1 << F.encode([c, 1])
    return mask


def _subfield(F: FiniteField) -> list[int]:
    if F.d % 2:
        raise ValueError("need a field of square order")
    r = F.p ** (F.d // 2)
    return F.frobenius_fixed(r)


def blokhuis_independent_sets(F: FiniteField) -> list[int]:
    """All distinct sets s*F_q + e (s a nonzero square, e in F_{q^2}), as masks,
    sorted by mask value."""
    K = np.array(_subfield(F))
    squares = sorted(quadratic_residues(F))
    directions = {}
    for s in squares:
        line = np.array([F.mul(s, int(k)) for k in K])
        directions.setdefault(as_mask(line.tolist()), line)
    out = set()
    all_codes = np.arange(F.q)
    for line in directions.values():
        translated = F.difference_codes(all_codes, (F.neg_table[line]))  # e - (-l) = e + l
        for row in translated:
            out.add(as_mask(row.tolist()))
    return sorted(out)


@dataclass
class ScanHit:
    independent_set: tuple[int, ...]
    added: tuple[int, int]
    check: ForestCheck


@dataclass
class ScanReport:
    q: int
    field_presentation: list[int]
    sets_examined: int = 0
    pairs_examined: int = 0
    hits: list[ScanHit] = field(default_factory=list)
    complete: bool = False
    elapsed: float = 0.0

    def to_dict(self, labels=None) -> dict:
        def lab(v):
            return labels[v] if labels is not None else v

        return {
            "q": self.q,
            "field_presentation": self.field_presentation,
            "sets_examined": self.sets_examined,
            "pairs_examined": self.pairs_examined,
            "status": "complete" if self.complete else "incomplete",
            "hit_count": len(self.hits),
            "hits": [
                {
                    "independent_set": [lab(v) for v in h.independent_set],
                    "added": [lab(v) for v in h.added],
                    "components": h.check.components,
                }
                for h in self.hits
            ],
            "elapsed": round(self.elapsed, 3),
        }


def scan_field(q: int) -> FiniteField:
    """GF(q^2) for the scan: the example presentations for q <= 7, else the
    default modulus."""
    p, e = next(iter(sympy.factorint(q).items()))
    return FiniteField(p, 2 * e, EXAMPLE_MODULI.get(q) if e == 1 else None)


def _forest_pairs(adj: np.ndarray, A: np.ndarray, outside: np.ndarray) -> list[tuple[int, int]]:
    """Pairs {u, v} outside the coclique A with A + {u, v} acyclic.

    With A independent the only possible cycles run through both u and v:
    they share two neighbours in A, or they are adjacent and share one.
    """
    M = adj[np.ix_(outside, A)].astype(np.float32)
    common = M @ M.T
    ok = (common < 0.5) | ((common < 1.5) & ~adj[np.ix_(outside, outside)])
    iu, iv = np.nonzero(np.triu(ok, 1))
    return list(zip(outside[iu].tolist(), outside[iv].tolist()))


def paley_two_add_scan(
    q_range=DEFAULT_SCAN_RANGE,
    max_seconds: float | None = None,
    threads: int = 1,
    progress=None,
) -> list[ScanReport]:
    """For each q, every Blokhuis coclique A of P'(q^2) and every outside pair
    {u, v}: record the pairs for which A + {u, v} induces a forest."""
    reports = []
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    for q in q_range:
        if q % 2 == 0 or len(sympy.factorint(q)) != 1:
            raise ValueError(f"{q} is not an odd prime power")
        start = time.monotonic()
        F = scan_field(q)
        fg = paley_graph(F, complement=True)
        g = fg.graph
        adj = g.adjacency_matrix(bool)
        report = ScanReport(q, list(F.modulus))
        sets = blokhuis_independent_sets(F)
        everything = np.arange(g.n)

        def work(A_mask):
            A = np.array(members(A_mask))
            inside = np.zeros(g.n, dtype=bool)
            inside[A] = True
            outside = everything[~inside]
            return A_mask, len(outside) * (len(outside) - 1) // 2, _forest_pairs(adj, A, outside)

        complete = True
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            for A_mask, npairs, pairs in pool.map(work, sets):
                assert is_independent(g, A_mask) and A_mask.bit_count() == q
                report.sets_examined += 1
                report.pairs_examined += npairs
                for u, v in pairs:
                    check = forest_check(g, A_mask | (1 << u) | (1 << v))
                    assert check.is_forest
                    report.hits.append(ScanHit(tuple(members(A_mask)), (u, v), check))
                if deadline is not None and time.monotonic() > deadline:
                    complete = report.sets_examined == len(sets)
                    break
        report.complete = complete
        report.elapsed = time.monotonic() - start
        reports.append(report)
        if progress is not None:
            progress(report)
        if not complete:
            break
    return reports


def odd_kneser_order(k: int) -> int:
    return comb(2 * k, k) + 2 * k - 2
