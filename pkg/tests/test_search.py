import itertools
import random

import networkx as nx
import pytest

from acyclic.graph import Graph, as_mask, forest_check, is_independent, members
from acyclic.reproduce import family, random_graph
from acyclic.search import (
    SearchBudget,
    anchor_pairs,
    brute_force_oracle,
    greedy_forest,
    heuristic_forest,
    is_canonical_by_deletion,
    is_canonical_by_patterns,
    is_canonical_forest,
    is_induced_path,
    max_independent_set,
    max_induced_forest,
    max_noncanonical_forest,
)

# (alpha, tau) computed independently with networkx (clique search on the
# complement; is_forest over every induced subgraph)
INDEPENDENT_VALUES = {
    "kneser:5,2": (4, 7),
    "kneser:6,2": (5, 7),
    "pc:3": (3, 5),
    "hamming:2,3": (3, 5),
    "hamming:2,4": (4, 5),
    "gq:2": (3, 5),
    "oa:3,3": (3, 6),
}


@pytest.mark.parametrize("key", sorted(INDEPENDENT_VALUES))
def test_family_values_against_frozen_oracle(key):
    g = family(key).graph
    a, t = INDEPENDENT_VALUES[key]
    mis = max_independent_set(g)
    forest = max_induced_forest(g)
    assert (mis.value, forest.value) == (a, t)
    assert mis.optimal and forest.optimal
    assert is_independent(g, mis.mask) and forest_check(g, forest.mask).is_forest


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def nx_tau(g):
    G = to_nx(g)
    best = 0
    for size in range(1, g.n + 1):
        if not any(nx.is_forest(G.subgraph(c)) for c in itertools.combinations(range(g.n), size)):
            break
        best = size
    return best


def test_random_graphs_against_networkx():
    rng = random.Random(7)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 11), rng.choice((0.2, 0.5, 0.8)))
        assert max_induced_forest(g).value == nx_tau(g)
        alpha = max(len(c) for c in nx.find_cliques(nx.complement(to_nx(g))))
        assert max_independent_set(g).value == alpha


def test_random_graphs_against_brute_force():
    rng = random.Random(11)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 14), rng.choice((0.15, 0.3, 0.5, 0.7)))
        assert max_independent_set(g).value == brute_force_oracle(g, "independent")
        assert max_induced_forest(g).value == brute_force_oracle(g, "forest")


def test_classic_graphs():
    cases = [(nx.cycle_graph(5), 2, 4), (nx.hypercube_graph(3), 4, 5), (nx.complete_graph(4), 1, 2),
             (nx.complete_bipartite_graph(3, 3), 3, 4), (nx.petersen_graph(), 4, 7)]
    for G, a, t in cases:
        G = nx.convert_node_labels_to_integers(G)
        g = Graph.from_edges(G.number_of_nodes(), G.edges())
        assert max_independent_set(g).value == a
        assert max_induced_forest(g).value == t


def test_empty_and_edgeless():
    assert max_induced_forest(Graph.from_edges(0, [])).value == 0
    g = Graph.from_edges(5, [])
    assert max_independent_set(g).value == 5
    assert max_induced_forest(g).value == 5


def test_anchor_does_not_change_value_on_transitive_graphs():
    for key in ("kneser:5,2", "pc:3", "hamming:2,4", "gq:2"):
        g = family(key).graph
        assert max_induced_forest(g, anchor=0).value == max_induced_forest(g).value


def test_budget_exhaustion_is_flagged():
    g = family("qkneser:4,2,2").graph
    res = max_induced_forest(g, SearchBudget(max_nodes=5, max_seconds=10))
    assert not res.optimal
    assert forest_check(g, res.mask).is_forest
    assert res.value <= 8


def test_greedy_and_heuristic_forests_are_forests():
    g = family("kneser:7,2").graph
    assert forest_check(g, greedy_forest(g, range(g.n))).is_forest
    assert forest_check(g, heuristic_forest(g, seed=3)).is_forest


def test_canonical_tests_agree():
    rng = random.Random(3)
    for _ in range(300):
        g = random_graph(rng, rng.randint(2, 9), 0.35)
        S = as_mask(rng.sample(range(g.n), rng.randint(1, g.n)))
        if forest_check(g, S).is_forest:
            assert is_canonical_by_deletion(g, S) == is_canonical_by_patterns(g, S)


def test_canonical_examples():
    path4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert not is_canonical_forest(path4, path4.full_mask)
    assert is_canonical_forest(star, star.full_mask)
    assert is_induced_path(path4, path4.full_mask) and not is_induced_path(star, star.full_mask)
    with pytest.raises(ValueError):
        is_canonical_forest(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 0b111)


def brute_noncanonical(g):
    best = 0
    for size in range(4, g.n + 1):
        for c in itertools.combinations(range(g.n), size):
            S = as_mask(c)
            if forest_check(g, S).is_forest and not is_canonical_by_deletion(g, S):
                best = size
                break
    return best


def test_anchored_noncanonical_search_matches_brute_force():
    rng = random.Random(5)
    for _ in range(40):
        g = random_graph(rng, rng.randint(4, 10), rng.choice((0.3, 0.5)))
        res = max_noncanonical_forest(g)
        assert res.optimal and res.value == brute_noncanonical(g)
        if res.value:
            W = as_mask(res.witness)
            assert forest_check(g, W).is_forest and not is_canonical_forest(g, W)


def test_anchor_pairs_cover_p4_and_2k2():
    path4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert list(anchor_pairs(path4)) == [((0, 1), (2, 3))]
    k4 = Graph.from_edges(4, list(itertools.combinations(range(4), 2)))
    assert list(anchor_pairs(k4)) == []


def test_noncanonical_prefers_paths():
    g = family("hamming:2,4").graph
    res = max_noncanonical_forest(g, floor=5, prefer=lambda F: is_induced_path(g, F), stop_at=5)
    assert res.value == 5 and is_induced_path(g, res.witness)


def test_oracle_limits():
    with pytest.raises(ValueError):
        brute_force_oracle(Graph.from_edges(25, []), "forest")
    with pytest.raises(ValueError):
        brute_force_oracle(Graph.from_edges(3, []), "clique")
    assert members(0b101) == [0, 2]
