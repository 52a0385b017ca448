"""Generators for the distance-regular families: Kneser, q-Kneser, Paley,
tensor powers of complete graphs, orthogonal-array graphs and generalized
quadrangle non-collinearity graphs.

Each generator returns a :class:`FamilyGraph`: the graph, its parameters,
whatever exact spectral data is available in closed form, and a coclique that
attains the ratio bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np
import sympy

from .algebra import FiniteField, Subspace, gaussian_binomial, quadratic_residues, subspaces
from .graph import Graph, as_mask

FAMILIES = (
    "kneser",
    "q_kneser",
    "paley",
    "paley_complement",
    "hamming_tensor",
    "oa_complement",
    "gq_noncollinearity",
)


@dataclass(frozen=True)
class FamilyGraph:
    graph: Graph
    family: str
    params: dict
    # distinct eigenvalues with multiplicities (None where not known)
    known_spectrum: tuple[tuple[Fraction, int | None], ...] | None = None
    known_lambda_min: Fraction | None = None
    coclique_witness: int | None = None
    vertex_transitive: bool = False
    arc_transitive: bool = False
    notes: tuple[str, ...] = ()

    @property
    def name(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items() if k != "modulus")
        return f"{self.family}({args})"


def _field_params(F: FiniteField) -> dict:
    return {"p": F.p, "d": F.d, "modulus": list(F.modulus)}


# -- Kneser ----------------------------------------------------------------


def kneser_vertices(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of {1..n} in colexicographic order."""
    return sorted(itertools.combinations(range(1, n + 1), k), key=lambda s: s[::-1])


def kneser_graph(n: int, k: int) -> FamilyGraph:
    if k < 1 or n < 2 * k:
        raise ValueError(f"Kneser graph needs n >= 2k >= 2, got n={n}, k={k}")
    verts = kneser_vertices(n, k)
    masks = np.array([sum(1 << (x - 1) for x in s) for s in verts], dtype=np.int64)
    adj = (masks[:, None] & masks[None, :]) == 0
    labels = ["{" + ",".join(map(str, s)) + "}" for s in verts]
    g = Graph.from_matrix(adj, labels)
    witness = as_mask(i for i, s in enumerate(verts) if 1 in s)
    return FamilyGraph(
        g,
        "kneser",
        {"n": n, "k": k},
        known_lambda_min=Fraction(-comb(n - k - 1, k - 1)),
        coclique_witness=witness,
        vertex_transitive=True,
        arc_transitive=True,
    )


# -- q-Kneser --------------------------------------------------------------


def _vector_code(v, q) -> int:
    return sum(x * q**i for i, x in enumerate(v))


def _nonzero_vector_mask(s: Subspace) -> int:
    q = s.field.q
    mask = 0
    for v in s.vectors():
        if any(v):
            mask |= 1 << _vector_code(v, q)
    return mask


def q_kneser_graph(n: int, k: int, F: FiniteField) -> FamilyGraph:
    if k < 1 or n < 2 * k:
        raise ValueError(f"q-Kneser graph needs n >= 2k >= 2, got n={n}, k={k}")
    spaces = subspaces(n, k, F)
    vmasks = [_nonzero_vector_mask(s) for s in spaces]
    N = len(spaces)
    rows = [0] * N
    for i in range(N):
        mi = vmasks[i]
        for j in range(i + 1, N):
            if not mi & vmasks[j]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    g = Graph(N, tuple(rows), tuple(s.label() for s in spaces))
    e1 = 1 << _vector_code((1,) + (0,) * (n - 1), F.q)
    witness = as_mask(i for i, m in enumerate(vmasks) if m & e1)
    return FamilyGraph(
        g,
        "q_kneser",
        {"n": n, "k": k, **_field_params(F)},
        coclique_witness=witness,
        vertex_transitive=True,
        arc_transitive=True,
    )


# -- Paley -----------------------------------------------------------------


def paley_graph(F: FiniteField, complement: bool = False) -> FamilyGraph:
    """Paley graph on F (adjacent iff the difference is a nonzero square), or
    its complement (adjacent iff the difference is a non-square)."""
    q = F.q
    if F.p == 2 or q % 4 != 1:
        raise ValueError(f"Paley graphs need q = 1 mod 4, got q={q}")
    is_square = np.zeros(q, dtype=bool)
    is_square[list(quadratic_residues(F))] = True
    target = is_square.copy()
    if complement:
        target = ~is_square
        target[0] = False
    cols = np.arange(q)
    adj = np.zeros((q, q), dtype=bool)
    step = max(1, 2_000_000 // (q * F.d))
    for start in range(0, q, step):
        rows = cols[start : start + step]
        adj[start : start + step] = target[F.difference_codes(rows, cols)]
    g = Graph.from_matrix(adj, F.labels)
    spectrum = None
    lam_min = None
    witness = None
    notes = []
    if F.d % 2 == 0:
        r = F.p ** (F.d // 2)
        spectrum = (
            (Fraction(q - 1, 2), 1),
            (Fraction(r - 1, 2), None),
            (Fraction(-(r + 1), 2), None),
        )
        lam_min = Fraction(-(r + 1), 2)
        if complement:
            witness = as_mask(F.frobenius_fixed(r))
            notes.append("Paley graphs are self-complementary")
    return FamilyGraph(
        g,
        "paley_complement" if complement else "paley",
        {**_field_params(F), "q": q},
        known_spectrum=spectrum,
        known_lambda_min=lam_min,
        coclique_witness=witness,
        vertex_transitive=True,
        arc_transitive=True,
        notes=tuple(notes),
    )


def field_for_order(q: int, modulus=None) -> FiniteField:
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, d), = factors.items()
    return FiniteField(p, d, modulus)


# -- tensor powers of K_n --------------------------------------------------


def hamming_tensor_graph(m: int, n: int) -> FamilyGraph:
    """m-fold tensor power of K_n: strings over Z_n, adjacent iff they differ
    in every coordinate."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    words = np.array(list(itertools.product(range(n), repeat=m)), dtype=np.int64)
    N = len(words)
    adj = np.ones((N, N), dtype=bool)
    for c in range(m):
        adj &= words[:, None, c] != words[None, :, c]
    labels = ["".join(map(str, w)) if n <= 10 else ",".join(map(str, w)) for w in words]
    g = Graph.from_matrix(adj, labels)
    witness = (1 << n ** (m - 1)) - 1
    return FamilyGraph(
        g,
        "hamming_tensor",
        {"m": m, "n": n},
        known_lambda_min=Fraction(-((n - 1) ** (m - 1))) if n > 1 else None,
        coclique_witness=witness,
        vertex_transitive=True,
        arc_transitive=True,
    )


# -- orthogonal arrays -----------------------------------------------------


@dataclass(frozen=True)
class OrthogonalArray:
    m: int
    n: int
    cells: np.ndarray = field(compare=False)

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.int64)
        object.__setattr__(self, "cells", cells)
        if cells.shape != (self.m, self.n**2):
            raise ValueError(f"an OA({self.m},{self.n}) has shape {self.m}x{self.n**2}")
        if cells.size and (cells.min() < 0 or cells.max() >= self.n):
            raise ValueError("entries must lie in Z_n")

    def violations(self) -> list[tuple[int, int]]:
        """Row pairs whose columns fail to show every ordered symbol pair."""
        bad = []
        n = self.n
        for r1, r2 in itertools.combinations(range(self.m), 2):
            pairs = self.cells[r1] * n + self.cells[r2]
            if len(np.unique(pairs)) != n * n:
                bad.append((r1, r2))
        return bad

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise ValueError(f"not an orthogonal array: row pairs {bad} repeat a symbol pair")

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "cells": self.cells.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "OrthogonalArray":
        oa = cls(int(data["m"]), int(data["n"]), np.array(data["cells"]))
        oa.validate()
        return oa


def cyclic_orthogonal_array(m: int, n: int) -> OrthogonalArray:
    """Rows a, b, a+b, a+2b, ... (mod n) over the columns (a, b) in lex order."""
    if not sympy.isprime(n):
        raise ValueError(f"the cyclic construction needs n prime, got {n}")
    if not 3 <= m <= n + 1:
        raise ValueError(f"need 3 <= m <= n+1, got m={m}, n={n}")
    a, b = np.divmod(np.arange(n * n), n)
    rows = [a, b] + [(a + i * b) % n for i in range(1, m - 1)]
    oa = OrthogonalArray(m, n, np.array(rows))
    oa.validate()
    return oa


def oa_block_complement_graph(O: OrthogonalArray, cyclic: bool = False) -> FamilyGraph:
    """Columns of O, adjacent iff they agree in no row."""
    O.validate()
    m, n = O.m, O.n
    agree = np.zeros((n * n, n * n), dtype=bool)
    for row in O.cells:
        agree |= row[:, None] == row[None, :]
    labels = [f"({O.cells[0, j]},{O.cells[1, j]})" for j in range(n * n)]
    g = Graph.from_matrix(~agree, labels)
    witness = as_mask(np.flatnonzero(O.cells[0] == 0).tolist())
    valency = g.degree(0)
    notes = (
        f"computed valency {valency} = (n-1)(n+1-m); the block graph itself has valency m(n-1) = {m * (n - 1)}",
    )
    return FamilyGraph(
        g,
        "oa_complement",
        {"m": m, "n": n},
        known_lambda_min=Fraction(m - n - 1),
        coclique_witness=witness,
        vertex_transitive=cyclic,
        notes=notes,
    )


# -- generalized quadrangles -----------------------------------------------


@dataclass(frozen=True)
class IncidenceStructure:
    points: int
    lines: tuple[tuple[int, ...], ...]
    s: int
    t: int
    point_labels: tuple[str, ...] | None = field(default=None, compare=False)

    def collinearity(self) -> np.ndarray:
        col = np.zeros((self.points, self.points), dtype=bool)
        for line in self.lines:
            idx = np.array(line)
            col[np.ix_(idx, idx)] = True
        np.fill_diagonal(col, False)
        return col

    def violations(self) -> list[str]:
        problems = []
        s, t = self.s, self.t
        if any(len(line) != s + 1 for line in self.lines):
            problems.append(f"a line does not have s+1={s + 1} points")
        on = np.zeros((self.points, len(self.lines)), dtype=np.int64)
        for j, line in enumerate(self.lines):
            if len(set(line)) != len(line) or min(line) < 0 or max(line) >= self.points:
                problems.append(f"line {j} is malformed")
                return problems
            on[list(line), j] = 1
        if np.any(on.sum(axis=1) != t + 1):
            problems.append(f"a point is not on t+1={t + 1} lines")
        shared = on @ on.T
        np.fill_diagonal(shared, 0)
        if shared.max(initial=0) > 1:
            problems.append("two points share more than one line")
        # each external point sees exactly one point of each line
        col = self.collinearity()
        seen = col.astype(np.int64) @ on  # points x lines: collinear points on line
        external = on == 0
        if np.any(seen[external] != 1):
            problems.append("GQ axiom fails for some antiflag")
        return problems

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise ValueError("not a generalized quadrangle: " + "; ".join(problems))

    def to_dict(self) -> dict:
        return {"points": self.points, "lines": [list(line) for line in self.lines]}

    @classmethod
    def from_dict(cls, data: dict) -> "IncidenceStructure":
        lines = tuple(tuple(int(x) for x in line) for line in data["lines"])
        points = int(data["points"])
        if not lines:
            raise ValueError("incidence structure has no lines")
        s = len(lines[0]) - 1
        t = sum(1 for line in lines if 0 in line) - 1
        gq = cls(points, lines, s, t)
        gq.validate()
        return gq


def _symplectic_form(F: FiniteField, x, y) -> int:
    a = F.sub(F.mul(x[0], y[1]), F.mul(x[1], y[0]))
    b = F.sub(F.mul(x[2], y[3]), F.mul(x[3], y[2]))
    return F.add(a, b)


def _normalize(F: FiniteField, v) -> tuple[int, ...]:
    lead = next(x for x in v if x)
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def symplectic_gq(F: FiniteField, verify: bool | None = None) -> IncidenceStructure:
    """W(q): points of PG(3,q), lines the totally isotropic lines of the
    alternating form x1y2 - x2y1 + x3y4 - x4y3."""
    q = F.q
    pts = subspaces(4, 1, F)
    index = {p.basis[0]: i for i, p in enumerate(pts)}
    lines = []
    for sp in subspaces(4, 2, F):
        if _symplectic_form(F, sp.basis[0], sp.basis[1]) != 0:
            continue
        on = sorted({index[_normalize(F, v)] for v in sp.vectors() if any(v)})
        lines.append(tuple(on))
    labels = tuple("(" + ",".join(F.label(x) for x in p.basis[0]) + ")" for p in pts)
    gq = IncidenceStructure(len(pts), tuple(lines), q, q, labels)
    if verify is None:
        verify = q <= 5
    if verify:
        gq.validate()
    elif len(lines) != len(pts) or any(len(line) != q + 1 for line in lines):
        raise ValueError("symplectic construction produced the wrong line counts")
    return gq


def gq_noncollinearity_graph(S: IncidenceStructure, params: dict | None = None) -> FamilyGraph:
    """Points of S, adjacent iff not collinear."""
    S.validate()
    col = S.collinearity()
    adj = ~col
    np.fill_diagonal(adj, False)
    g = Graph.from_matrix(adj, S.point_labels)
    s, t = S.s, S.t
    spectrum = ((Fraction(s * s * t), 1), (Fraction(t), None), (Fraction(-s), None))
    return FamilyGraph(
        g,
        "gq_noncollinearity",
        params if params is not None else {"s": s, "t": t},
        known_spectrum=spectrum,
        known_lambda_min=Fraction(-s),
        coclique_witness=as_mask(S.lines[0]),
        vertex_transitive=params is not None,
        arc_transitive=params is not None,
    )


def symplectic_gq_graph(F: FiniteField) -> FamilyGraph:
    return gq_noncollinearity_graph(symplectic_gq(F), {"s": F.q, "t": F.q, **_field_params(F)})


# -- registry --------------------------------------------------------------


def make_family(family: str, params: dict) -> FamilyGraph:
    """Regenerate a family graph from its tag and parameter record."""
    p = dict(params)
    if family == "kneser":
        return kneser_graph(int(p["n"]), int(p["k"]))
    if family == "q_kneser":
        F = FiniteField(int(p["p"]), int(p.get("d", 1)), p.get("modulus"))
        return q_kneser_graph(int(p["n"]), int(p["k"]), F)
    if family in ("paley", "paley_complement"):
        F = FiniteField(int(p["p"]), int(p.get("d", 1)), p.get("modulus"))
        return paley_graph(F, complement=family == "paley_complement")
    if family == "hamming_tensor":
        return hamming_tensor_graph(int(p["m"]), int(p["n"]))
    if family == "oa_complement":
        return oa_block_complement_graph(cyclic_orthogonal_array(int(p["m"]), int(p["n"])), cyclic=True)
    if family == "gq_noncollinearity":
        F = FiniteField(int(p["p"]), int(p.get("d", 1)), p.get("modulus"))
        return symplectic_gq_graph(F)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def expected_valency(fg: FamilyGraph) -> int:
    """Valency from the family's closed formula."""
    p = fg.params
    if fg.family == "kneser":
        return comb(p["n"] - p["k"], p["k"])
    if fg.family == "q_kneser":
        q = p["p"] ** p["d"]
        return q ** (p["k"] ** 2) * gaussian_binomial(p["n"] - p["k"], p["k"], q)
    if fg.family in ("paley", "paley_complement"):
        return (p["q"] - 1) // 2
    if fg.family == "hamming_tensor":
        return (p["n"] - 1) ** p["m"]
    if fg.family == "oa_complement":
        return (p["n"] - 1) * (p["n"] + 1 - p["m"])
    if fg.family == "gq_noncollinearity":
        return p["s"] ** 2 * p["t"]
    raise ValueError(fg.family)
