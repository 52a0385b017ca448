from fractions import Fraction

import networkx as nx
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from acyclic.algebra import FiniteField, gaussian_binomial
from acyclic.bounds import (
    edge_forest_bound,
    floor_bound,
    interlacing_subgraph_check,
    min_eigenvalue,
    spectral_forest_bound,
)
from acyclic.graph import Graph, as_mask, forest_check, is_independent, members
from acyclic.graph_io import from_dimacs, from_json, to_dimacs, to_json
from acyclic.search import is_canonical_by_deletion, is_canonical_by_patterns, max_independent_set, max_induced_forest
from acyclic.unionfind import RollbackUnionFind


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def graph_and_subset(draw):
    g = draw(graphs())
    subset = draw(st.sets(st.integers(0, max(g.n - 1, 0)))) if g.n else set()
    return g, as_mask(v for v in subset if v < g.n)


def nx_view(g, mask):
    G = nx.Graph()
    G.add_nodes_from(members(mask))
    G.add_edges_from((u, v) for u, v in g.edges() if mask >> u & 1 and mask >> v & 1)
    return G


@given(graph_and_subset())
def test_forest_check_agrees_with_networkx(gs):
    g, S = gs
    res = forest_check(g, S)
    G = nx_view(g, S)
    assert res.is_forest == (G.number_of_nodes() == 0 or nx.is_forest(G))
    if res.is_forest:
        assert res.components == nx.number_connected_components(G)
    else:
        u, v = res.cycle_edge
        assert g.has_edge(u, v) and S >> u & 1 and S >> v & 1


@given(graph_and_subset())
def test_forest_is_hereditary(gs):
    g, S = gs
    if forest_check(g, S).is_forest:
        for v in members(S):
            assert forest_check(g, S & ~(1 << v)).is_forest


@given(graph_and_subset())
def test_canonical_characterizations_agree(gs):
    g, S = gs
    if forest_check(g, S).is_forest:
        assert is_canonical_by_deletion(g, S) == is_canonical_by_patterns(g, S)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=11))
def test_solver_witnesses_and_sandwich(g):
    mis = max_independent_set(g)
    forest = max_induced_forest(g)
    assert is_independent(g, mis.mask) and forest_check(g, forest.mask).is_forest
    assert mis.value <= forest.value <= g.n
    if mis.value < g.n:
        assert forest.value >= mis.value + 1
    # deleting a vertex never raises tau
    if g.n:
        sub, _ = g.subgraph(g.full_mask & ~1)
        assert max_induced_forest(sub).value in (forest.value, forest.value - 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7).flatmap(lambda k: st.tuples(st.just(k), st.integers(k + 1, 14))), st.integers(0, 10**6))
def test_random_regular_graphs_obey_forest_bounds(kn, seed):
    k, n = kn
    if (n * k) % 2:
        n += 1
    G = nx.random_regular_graph(k, n, seed=seed)
    g = Graph.from_edges(n, G.edges())
    tau = max_induced_forest(g).value
    spec = min_eigenvalue(g)
    assert tau <= spectral_forest_bound(n, k, spec.lambda_min).floor()
    assert tau <= floor_bound(edge_forest_bound(n, k, 1))


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(3, 6), st.integers(0, 10**6), st.data())
def test_interlacing_on_random_regular_graphs(k, seed, data):
    n = 12
    G = nx.random_regular_graph(k, n, seed=seed)
    g = Graph.from_edges(n, G.edges())
    spec = min_eigenvalue(g)
    S = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1))
    assert interlacing_subgraph_check(g, S, spec)


@given(st.integers(1, 400), st.integers(1, 60), st.fractions(min_value=-40, max_value=-1, max_denominator=8))
def test_spectral_bound_below_weaker_form(n, k, lam):
    sb = spectral_forest_bound(n, k, lam)
    if sb.valid:
        assert sb.value <= float(sb.weaker) + 1e-9
        t = sb.floor()
        assert not sb.less_than(t) and sb.less_than(t + 1) or sb.value == t + 1


@given(st.integers(0, 12), st.integers(0, 12), st.sampled_from([2, 3, 4, 5, 7]))
def test_gaussian_binomial_identities(n, k, q):
    if k > n:
        assert gaussian_binomial(n, k, q) == 0
        return
    assert gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q)
    if 0 < k < n:
        assert gaussian_binomial(n, k, q) == gaussian_binomial(n - 1, k - 1, q) + q**k * gaussian_binomial(n - 1, k, q)


FIELDS = [FiniteField(2, 3), FiniteField(3, 2), FiniteField(5, 2), FiniteField(7), FiniteField(2, 4)]


@given(st.sampled_from(FIELDS), st.data())
def test_field_laws(F, data):
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.pow(a, F.q) == a  # Frobenius fixes the whole field
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(graphs())
def test_serialization_round_trips(g):
    assert from_dimacs(to_dimacs(g))[0] == g
    assert from_json(to_json(g)) == g


@given(st.integers(1, 12), st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=20), st.data())
def test_union_find_rollback_restores_state(n, ops, data):
    uf = RollbackUnionFind(n)
    split = data.draw(st.integers(0, len(ops)))
    for a, b in ops[:split]:
        uf.union(a % n, b % n)
    before = [uf.component(x) for x in range(n)]
    m = uf.mark()
    for a, b in ops[split:]:
        uf.union(a % n, b % n)
    uf.rollback(m)
    assert [uf.component(x) for x in range(n)] == before


@given(st.fractions(min_value=-100, max_value=100))
def test_floor_bound_exact(x):
    assert floor_bound(x) <= x < floor_bound(x) + 1
    assert floor_bound(Fraction(x)) == floor_bound(x)
