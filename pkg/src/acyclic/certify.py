"""Certificates for the acyclic number and the canonical-forest question.

A non-canonical forest contains two disjoint edges, so its order is at most
2 + 2*eta.  When that falls below alpha + 1 every maximum forest is a coclique
plus one vertex.  When it does not, an anchored search over pairs of disjoint
edges settles the question exactly; for edge-transitive graphs one anchor edge
suffices, which keeps large instances cheap.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import asdict, dataclass, field
from math import comb

from .algebra import gaussian_binomial
from .bounds import family_spectrum, floor_bound, ratio_bound
from .graph import Graph, as_mask, eta, forest_check, is_independent, members, regularity
from .search import (
    DEFAULT_BUDGET,
    SearchBudget,
    is_canonical_forest,
    is_induced_path,
    max_independent_set,
    max_induced_forest,
    max_noncanonical_forest,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"


def witness_hash(vertices) -> str:
    return hashlib.sha256(",".join(map(str, sorted(vertices))).encode()).hexdigest()[:16]


@dataclass
class TauCertificate:
    alpha: int
    alpha_witness: tuple[int, ...]
    alpha_upper_proof: str  # exact_search | ratio_bound
    eta_value: int
    eta_edge: tuple[int, int]
    canonical_lower: int
    canonical_witness: tuple[int, ...]
    eta_bound: int  # 2 + 2*eta
    noncanonical_upper: int | None  # best proven cap on non-canonical forest order
    noncanonical_proof: str  # eta_counting | anchored_search | anchored_search_edge_transitive | none
    tau: int | None
    all_maximum_canonical: str
    no_witness: tuple[int, ...] | None = None
    graph_id: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def check_invariants(self) -> None:
        if self.all_maximum_canonical == YES:
            assert self.noncanonical_upper is not None
            assert self.noncanonical_upper < self.canonical_lower
            assert self.tau == self.canonical_lower
        if self.all_maximum_canonical == NO:
            assert self.no_witness is not None and len(self.no_witness) == self.tau
        if self.tau is not None:
            assert self.tau >= self.canonical_lower

    def to_dict(self) -> dict:
        data = asdict(self)
        data["hashes"] = {
            "alpha_witness": witness_hash(self.alpha_witness),
            "canonical_witness": witness_hash(self.canonical_witness),
        }
        if self.no_witness is not None:
            data["hashes"]["no_witness"] = witness_hash(self.no_witness)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "TauCertificate":
        data = dict(data)
        data.pop("hashes", None)
        for key in ("alpha_witness", "canonical_witness", "eta_edge"):
            data[key] = tuple(data[key])
        if data.get("no_witness") is not None:
            data["no_witness"] = tuple(data["no_witness"])
        return cls(**data)


def _canonical_witness(g: Graph, coclique: int) -> int:
    outside = g.full_mask & ~coclique
    if not outside:
        raise ValueError("coclique covers the whole graph")
    return coclique | (outside & -outside)


def family_inequality(fg) -> dict | None:
    """The counting inequality behind the family's canonical-forest result,
    evaluated exactly at this parameter point."""
    p = fg.params
    if fg.family == "kneser":
        n, k = p["n"], p["k"]
        lhs, rhs = 2 + 2 * k * k * comb(n - 2, k - 2), 1 + comb(n - 1, k - 1)
        return {"lhs": lhs, "rhs": rhs, "holds": lhs < rhs, "stated_range": n >= 2 * k**3 and k >= 2}
    if fg.family == "q_kneser":
        n, k, q = p["n"], p["k"], p["p"] ** p["d"]
        lhs = 2 + 2 * gaussian_binomial(k, 1, q) ** 2 * gaussian_binomial(n - 2, k - 2, q)
        rhs = 1 + gaussian_binomial(n - 1, k - 1, q)
        return {"lhs": lhs, "rhs": rhs, "holds": lhs < rhs, "stated_range": None}
    if fg.family == "hamming_tensor":
        m, n = p["m"], p["n"]
        if m < 2:
            return None
        proof = 1 < n ** (m - 2) * (n - 2 * m * (m - 1))
        stated = n > 2 * m * (m - 1)
        out = {
            "lhs": 2 + 2 * m * (m - 1) * n ** (m - 2),
            "rhs": n ** (m - 1) + 1,
            "holds": proof,
            "stated_range": stated,
        }
        if proof != stated:
            out["note"] = "stated threshold n > 2m(m-1) and the counting inequality disagree here"
        return out
    if fg.family == "oa_complement":
        m, n = p["m"], p["n"]
        lhs, rhs = 2 + 2 * m * (m - 1), n + 1
        return {"lhs": lhs, "rhs": rhs, "holds": lhs < rhs, "stated_range": n > 1 + 2 * m * (m - 1)}
    if fg.family == "gq_noncollinearity":
        return {"lhs": 5, "rhs": p["s"] + 2, "holds": 5 < p["s"] + 2, "stated_range": p["s"] > 3}
    return None


def classify_maximum_forests(
    g: Graph,
    budget: SearchBudget = DEFAULT_BUDGET,
    prefer_path: bool = True,
    graph_id: dict | None = None,
) -> TauCertificate:
    """Exact tau plus whether every maximum forest is canonical."""
    start = time.monotonic()
    k = regularity(g)
    if k is None or g.edge_count == 0:
        raise ValueError("classification needs a regular graph with at least one edge")
    notes = []
    mis = max_independent_set(g, budget)
    alpha, alpha_mask, alpha_proof = mis.value, mis.mask, "exact_search"
    if not mis.optimal:
        from .bounds import min_eigenvalue

        cap = floor_bound(ratio_bound(g.n, k, min_eigenvalue(g).lambda_min))
        if cap != alpha:
            return _unknown(g, mis, notes + ["coclique search exhausted its budget"], start, graph_id)
        alpha_proof = "ratio_bound"
    e = eta(g)
    eta_bound = 2 + 2 * e.value
    canon = _canonical_witness(g, alpha_mask)
    cert = dict(
        alpha=alpha,
        alpha_witness=tuple(members(alpha_mask)),
        alpha_upper_proof=alpha_proof,
        eta_value=e.value,
        eta_edge=e.witness_edge,
        canonical_lower=alpha + 1,
        canonical_witness=tuple(members(canon)),
        eta_bound=eta_bound,
        graph_id=graph_id or {},
    )
    if eta_bound < alpha + 1:
        c = TauCertificate(
            **cert, noncanonical_upper=eta_bound, noncanonical_proof="eta_counting",
            tau=alpha + 1, all_maximum_canonical=YES, notes=notes,
        )
        c.elapsed = time.monotonic() - start
        return c
    forest = max_induced_forest(g, budget)
    if not forest.optimal:
        c = TauCertificate(
            **cert, noncanonical_upper=eta_bound, noncanonical_proof="eta_counting", tau=None,
            all_maximum_canonical=UNKNOWN, notes=notes + ["forest search exhausted its budget"],
        )
        c.elapsed = time.monotonic() - start
        return c
    tau = forest.value
    prefer = (lambda F: is_induced_path(g, F)) if prefer_path else None
    nc = max_noncanonical_forest(g, floor=tau, budget=budget, prefer=prefer, stop_at=tau)
    if nc.value >= tau:
        verdict, upper, witness = NO, tau, nc.witness
    elif tau > alpha + 1:
        verdict, upper, witness = NO, tau, forest.witness
    elif nc.optimal:
        verdict, upper, witness = YES, tau - 1, None
    else:
        verdict, upper, witness = UNKNOWN, eta_bound, None
        notes.append("anchored search exhausted its budget")
    c = TauCertificate(
        **cert, noncanonical_upper=upper, noncanonical_proof="anchored_search", tau=tau,
        all_maximum_canonical=verdict, no_witness=witness, notes=notes,
    )
    c.elapsed = time.monotonic() - start
    c.check_invariants()
    return c


def _unknown(g, mis, notes, start, graph_id):
    return TauCertificate(
        alpha=mis.value, alpha_witness=mis.witness, alpha_upper_proof="none", eta_value=-1,
        eta_edge=(-1, -1), canonical_lower=mis.value + 1,
        canonical_witness=tuple(members(_canonical_witness(g, mis.mask))), eta_bound=-1,
        noncanonical_upper=None, noncanonical_proof="none", tau=None,
        all_maximum_canonical=UNKNOWN, notes=notes, graph_id=graph_id or {},
        elapsed=time.monotonic() - start,
    )


def certify_tau(fg, budget: SearchBudget = DEFAULT_BUDGET, local_search: bool = True) -> TauCertificate:
    """Certificate built from the family's ratio-tight coclique, without a
    global search.

    When 2 + 2*eta does not settle the canonical question and the family is
    edge-transitive, a single-anchor search bounds the non-canonical forests
    exactly (``local_search=False`` disables this).
    """
    start = time.monotonic()
    g = fg.graph
    if fg.coclique_witness is None:
        raise ValueError(f"{fg.name} carries no coclique witness")
    k = regularity(g)
    spec = family_spectrum(fg)
    rb = ratio_bound(g.n, k, spec.lambda_min)
    alpha_mask = fg.coclique_witness
    alpha = alpha_mask.bit_count()
    if not is_independent(g, alpha_mask):
        raise ValueError("coclique witness is not independent")
    if alpha != floor_bound(rb):
        raise ValueError(f"witness of size {alpha} does not meet the ratio bound {rb}")
    e = eta(g)
    eta_bound = 2 + 2 * e.value
    canon = _canonical_witness(g, alpha_mask)
    notes = list(fg.notes)
    ineq = family_inequality(fg)
    if ineq is not None and "note" in ineq:
        notes.append(ineq["note"])
    base = dict(
        alpha=alpha,
        alpha_witness=tuple(members(alpha_mask)),
        alpha_upper_proof="ratio_bound",
        eta_value=e.value,
        eta_edge=e.witness_edge,
        canonical_lower=alpha + 1,
        canonical_witness=tuple(members(canon)),
        eta_bound=eta_bound,
        graph_id={"family": fg.family, "params": fg.params},
    )
    if eta_bound < alpha + 1:
        cert = TauCertificate(
            **base, noncanonical_upper=eta_bound, noncanonical_proof="eta_counting",
            tau=alpha + 1, all_maximum_canonical=YES, notes=notes,
        )
    elif local_search and fg.arc_transitive:
        nc = max_noncanonical_forest(g, floor=alpha + 1, first_edges=[g.edges()[0]], budget=budget)
        if not nc.optimal:
            cert = TauCertificate(
                **base, noncanonical_upper=eta_bound, noncanonical_proof="eta_counting", tau=None,
                all_maximum_canonical=UNKNOWN, notes=notes + ["anchored search exhausted its budget"],
            )
        elif nc.value == 0:
            cert = TauCertificate(
                **base, noncanonical_upper=alpha, noncanonical_proof="anchored_search_edge_transitive",
                tau=alpha + 1, all_maximum_canonical=YES, notes=notes,
            )
        else:
            cert = TauCertificate(
                **base, noncanonical_upper=nc.value, noncanonical_proof="anchored_search_edge_transitive",
                tau=max(alpha + 1, nc.value), all_maximum_canonical=NO, no_witness=nc.witness, notes=notes,
            )
    else:
        cert = TauCertificate(
            **base, noncanonical_upper=eta_bound, noncanonical_proof="eta_counting", tau=None,
            all_maximum_canonical=UNKNOWN, notes=notes,
        )
    cert.elapsed = time.monotonic() - start
    cert.check_invariants()
    return cert


def verify_certificate(cert: TauCertificate, fg, rerun_search: bool = True) -> list[str]:
    """Re-check a certificate against a regenerated graph; returns problems found."""
    g = fg.graph
    problems = []
    A = as_mask(cert.alpha_witness)
    if A.bit_count() != cert.alpha or not is_independent(g, A):
        problems.append("alpha witness is not a coclique of the stated size")
    if cert.alpha_upper_proof == "ratio_bound":
        spec = family_spectrum(fg)
        if floor_bound(ratio_bound(g.n, regularity(g), spec.lambda_min)) != cert.alpha:
            problems.append("ratio bound does not match alpha")
    elif cert.alpha_upper_proof == "exact_search":
        if max_independent_set(g).value != cert.alpha:
            problems.append("exact coclique search disagrees with alpha")
    C = as_mask(cert.canonical_witness)
    if C.bit_count() != cert.canonical_lower or not forest_check(g, C).is_forest:
        problems.append("canonical witness is not a forest of order alpha+1")
    e = eta(g)
    if e.value != cert.eta_value:
        problems.append(f"eta recomputes to {e.value}, certificate says {cert.eta_value}")
    if cert.no_witness is not None:
        W = as_mask(cert.no_witness)
        if not forest_check(g, W).is_forest or is_canonical_forest(g, W) or W.bit_count() != cert.tau:
            problems.append("no_witness is not a non-canonical forest of order tau")
    if cert.all_maximum_canonical == YES:
        if cert.noncanonical_proof == "eta_counting" and not 2 + 2 * e.value < cert.alpha + 1:
            problems.append("eta counting does not separate the canonical forests")
        if cert.noncanonical_proof.startswith("anchored_search") and rerun_search:
            first = [g.edges()[0]] if cert.noncanonical_proof.endswith("edge_transitive") else None
            nc = max_noncanonical_forest(g, floor=cert.alpha + 1, first_edges=first)
            if nc.value:
                problems.append("anchored search finds a large non-canonical forest")
    try:
        cert.check_invariants()
    except AssertionError:
        problems.append("certificate invariants violated")
    return problems
