"""Spectral and counting upper bounds for cocliques and induced forests.

Bounds are exact :class:`~fractions.Fraction` values whenever the inputs are
rational.  Irrational eigenvalues (conference graphs, numeric spectra) fall
back to floats; those are floored after adding a small slack, so a value that
is an integer up to rounding error keeps that integer as its cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .graph import Graph, as_mask, eta, regularity

NUMERIC_TOL = 1e-6
FLOOR_SLACK = 1e-9

Number = Fraction | float


def _exact(x) -> bool:
    return isinstance(x, (int, Rational))


def floor_bound(x: Number) -> int:
    """Integer cap implied by the real bound ``x``.

    Float slack is added, never subtracted: a cap that is too tight would
    prune true optima.
    """
    if _exact(x):
        return math.floor(Fraction(x))
    return math.floor(x + FLOOR_SLACK)


@dataclass(frozen=True)
class SpectrumSummary:
    k: Number
    lambda2: Number | None
    lambda_min: Number
    exact: bool
    tolerance: float = 0.0


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    a: int
    c: int

    def feasible(self) -> bool:
        return self.k * (self.k - self.a - 1) == (self.n - self.k - 1) * self.c


def srg_parameters(g: Graph) -> SrgParams | None:
    """(n, k, a, c) if g is strongly regular, else None.

    Complete and edgeless graphs are not treated as strongly regular.
    """
    k = regularity(g)
    n = g.n
    if k is None or k == 0 or k == n - 1:
        return None
    rows = g.rows
    a = c = None
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            common = (ru & rows[v]).bit_count()
            if ru >> v & 1:
                if a is None:
                    a = common
                elif common != a:
                    return None
            else:
                if c is None:
                    c = common
                elif common != c:
                    return None
    return SrgParams(n, k, a, c)


def srg_spectrum(p: SrgParams) -> SpectrumSummary:
    """Closed-form eigenvalues: the non-valency ones are the roots of
    x^2 - (a-c)x - (k-c)."""
    if not p.feasible():
        raise ValueError(f"infeasible strongly regular parameters {p}")
    disc = (p.a - p.c) ** 2 + 4 * (p.k - p.c)
    root = math.isqrt(disc)
    if root * root == disc:
        theta = Fraction(p.a - p.c + root, 2)
        tau = Fraction(p.a - p.c - root, 2)
        return SpectrumSummary(Fraction(p.k), theta, tau, exact=True)
    # conference-graph case: irrational pair
    s = math.sqrt(disc)
    return SpectrumSummary(
        Fraction(p.k), (p.a - p.c + s) / 2, (p.a - p.c - s) / 2, exact=False, tolerance=1e-12
    )


def numeric_spectrum(g: Graph) -> np.ndarray:
    """All adjacency eigenvalues, descending."""
    return np.linalg.eigvalsh(g.adjacency_matrix(np.float64))[::-1]


def min_eigenvalue(g: Graph) -> SpectrumSummary:
    params = srg_parameters(g)
    if params is not None:
        return srg_spectrum(params)
    ev = numeric_spectrum(g)
    lam2 = float(ev[1]) if len(ev) > 1 else float(ev[0])
    k = regularity(g)
    return SpectrumSummary(
        Fraction(k) if k is not None else float(ev[0]),
        lam2,
        float(ev[-1]),
        exact=False,
        tolerance=NUMERIC_TOL,
    )


def family_spectrum(fg, numeric_limit: int = 2000) -> SpectrumSummary:
    """Spectrum summary for a FamilyGraph, preferring exact data.

    Order of preference: strongly regular closed form, the family's known
    spectrum, the family's known least eigenvalue (with a numeric second
    eigenvalue when the graph is small enough), a numeric eigensolve.
    """
    g = fg.graph
    params = srg_parameters(g) if g.n <= 400 else None
    if params is not None:
        return srg_spectrum(params)
    k = regularity(g)
    if fg.known_spectrum is not None:
        values = sorted((v for v, _ in fg.known_spectrum), reverse=True)
        return SpectrumSummary(values[0], values[1], values[-1], exact=True)
    if fg.known_lambda_min is not None:
        lam2 = None
        if g.n <= numeric_limit:
            ev = numeric_spectrum(g)
            if abs(ev[-1] - float(fg.known_lambda_min)) > NUMERIC_TOL:
                raise AssertionError(
                    f"{fg.name}: known least eigenvalue {fg.known_lambda_min} disagrees with {ev[-1]}"
                )
            lam2 = float(ev[1])
        if lam2 is None:
            return SpectrumSummary(Fraction(k), None, fg.known_lambda_min, exact=True)
        return SpectrumSummary(Fraction(k), lam2, fg.known_lambda_min, False, NUMERIC_TOL)
    return min_eigenvalue(g)


def ratio_bound(n, k, lambda_min) -> Number:
    """Delsarte-Hoffman bound n(-lambda)/(k - lambda) on the coclique size."""
    if k <= lambda_min:
        raise ValueError("ratio bound needs k > lambda_min")
    if _exact(lambda_min) and _exact(k):
        return Fraction(n) * -Fraction(lambda_min) / (Fraction(k) - Fraction(lambda_min))
    return n * -lambda_min / (k - lambda_min)


@dataclass(frozen=True)
class SpectralForestBound:
    """(A + sqrt(D)) / B with A = n(2-lam), D = n^2(2-lam)^2 - 8n(k-lam), B = 2(k-lam)."""

    A: Number
    D: Number
    B: Number
    weaker: Number
    valid: bool

    @property
    def exact(self) -> bool:
        return all(_exact(x) for x in (self.A, self.D, self.B))

    @property
    def value(self) -> float:
        if not self.valid:
            return float(self.weaker)
        return (float(self.A) + math.sqrt(float(self.D))) / float(self.B)

    def greater_than(self, x) -> bool:
        """Exact test of ``bound > x`` (rational inputs only)."""
        if not self.valid:
            return Fraction(self.weaker) > x
        lhs = Fraction(x) * self.B - self.A  # bound > x  <=>  sqrt(D) > lhs
        return lhs < 0 or lhs * lhs < self.D

    def less_than(self, x) -> bool:
        if not self.valid:
            return Fraction(self.weaker) < x
        lhs = Fraction(x) * self.B - self.A
        return lhs > 0 and lhs * lhs > self.D

    def floor(self) -> int:
        if not self.exact:
            return floor_bound(self.value)
        if not self.valid:
            return floor_bound(self.weaker)
        t = math.floor(self.value)
        while self.less_than(t):
            t -= 1
        while not self.less_than(t + 1):
            t += 1
        return t


def spectral_forest_bound(n, k, lambda_min) -> SpectralForestBound:
    """Interlacing bound on the order of an induced forest in a k-regular graph.

    Also carries the weaker closed form -n lam/(k-lam) + 2n/(k-lam), which the
    first expression is strictly below whenever it is defined.
    """
    if k <= lambda_min:
        raise ValueError("spectral forest bound needs k > lambda_min")
    if _exact(lambda_min) and _exact(k):
        lam, kk, nn = Fraction(lambda_min), Fraction(k), Fraction(n)
    else:
        lam, kk, nn = float(lambda_min), float(k), float(n)
    A = nn * (2 - lam)
    B = 2 * (kk - lam)
    D = A * A - 8 * nn * (kk - lam)
    weaker = -nn * lam / (kk - lam) + 2 * nn / (kk - lam)
    bound = SpectralForestBound(A, D, B, weaker, valid=D >= 0)
    if bound.valid and nn > 0:
        assert bound.value < float(weaker) or math.isclose(bound.value, float(weaker))
    return bound


def edge_forest_bound(n, k, c=1) -> Fraction:
    """Edge-counting bound (nk - 2c)/(2k - 2) for a forest with c components."""
    if k <= 1:
        raise ValueError("edge forest bound needs valency at least 2")
    if c < 1:
        raise ValueError("a nonempty forest has at least one component")
    return Fraction(n * k - 2 * c, 2 * k - 2)


def interlacing_middle(g: Graph, vertices, k) -> Fraction:
    mask = as_mask(vertices)
    n1 = mask.bit_count()
    m1 = g.induced_edge_count(mask)
    n = g.n
    return Fraction(2 * m1 * n - k * n1 * n1, n1 * (n - n1))


def interlacing_subgraph_check(g: Graph, vertices, spec: SpectrumSummary) -> bool:
    """lambda_2 >= (2m'n - k n'^2)/(n'(n - n')) >= lambda_min for the induced subgraph."""
    mask = as_mask(vertices)
    n1 = mask.bit_count()
    if n1 == 0 or n1 == g.n:
        raise ValueError("interlacing check needs a proper nonempty vertex subset")
    if spec.lambda2 is None:
        raise ValueError("interlacing check needs the second eigenvalue")
    middle = interlacing_middle(g, mask, spec.k)
    tol = spec.tolerance
    if spec.exact and tol == 0:
        return Fraction(spec.lambda2) >= middle >= Fraction(spec.lambda_min)
    mid = float(middle)
    return float(spec.lambda2) + tol >= mid >= float(spec.lambda_min) - tol


def noncanonical_forest_bound(g: Graph) -> int:
    """Any forest that is not a coclique plus one vertex has at most 2 + 2*eta vertices."""
    return 2 + 2 * eta(g).value


def srg_canonical_test(p: SrgParams, alpha: int) -> bool:
    """True when 1 + 2(n - 2k + a) < alpha: then all maximum forests are canonical."""
    return 1 + 2 * (p.n - 2 * p.k + p.a) < alpha


def induced_forest_caps(g: Graph, spec: SpectrumSummary | None = None) -> dict[str, int]:
    """Integer caps on the forest order from every applicable bound."""
    k = regularity(g)
    caps = {"trivial": g.n}
    if k is None or k == 0:
        return caps
    if spec is None:
        spec = min_eigenvalue(g)
    caps["spectral"] = spectral_forest_bound(g.n, k, spec.lambda_min).floor()
    if k >= 2:
        caps["edge"] = floor_bound(edge_forest_bound(g.n, k, 1))
    return caps

