import itertools
from math import comb

import pytest

from acyclic.algebra import FiniteField
from acyclic.constructions import (
    DEFAULT_SCAN_RANGE,
    FULL_SCAN_RANGE,
    ScanReport,
    blokhuis_independent_sets,
    k73_forest,
    kn2_forest7,
    kneser_odd_forest,
    kneser_odd_gammas,
    odd_kneser_order,
    paley_small_tree,
    paley_two_add_scan,
    example_paley,
    scan_field,
)
from acyclic.families import kneser_graph
from acyclic.graph import as_mask, forest_check, is_independent, members
from acyclic.search import is_induced_path, max_independent_set


@pytest.mark.parametrize("k", [4, 5])
def test_odd_kneser_forest(k):
    g = kneser_graph(2 * k + 1, k).graph
    F = kneser_odd_forest(k)
    assert F.bit_count() == odd_kneser_order(k) == comb(2 * k, k) + 2 * k - 2
    assert forest_check(g, F).is_forest
    assert F.bit_count() > comb(2 * k, k - 1) + 1


@pytest.mark.parametrize("k", [4, 5])
def test_odd_kneser_forest_structure(k):
    g = kneser_graph(2 * k + 1, k).graph
    gammas = kneser_odd_gammas(k)
    F1 = kneser_odd_forest(k) & ~as_mask(gammas)
    assert F1.bit_count() == comb(2 * k, k)
    # each added vertex meets at most one end of every edge inside F1
    for x in gammas:
        for u in members(F1 & g.rows[x]):
            assert not g.rows[u] & g.rows[x] & F1
    # consecutive added vertices share one neighbour in F1, others none
    for i, j in itertools.combinations(range(len(gammas)), 2):
        common = (g.rows[gammas[i]] & g.rows[gammas[j]] & F1).bit_count()
        assert common == (1 if j == i + 1 else 0)
    assert all(not g.rows[x] & as_mask(gammas) for x in gammas)


def test_odd_kneser_needs_k_above_3():
    with pytest.raises(ValueError):
        kneser_odd_forest(3)


def test_k73_forest():
    g = kneser_graph(7, 3).graph
    F = k73_forest()
    assert F.bit_count() == 23 and forest_check(g, F).is_forest
    labels = {g.labels[v] for v in members(F)}
    assert {"{1,2,7}", "{1,3,7}", "{2,3,7}"} <= labels


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_kn2_forest7(n):
    g = kneser_graph(n, 2).graph
    F = kn2_forest7(n)
    assert F.bit_count() == 7 and forest_check(g, F).is_forest
    with pytest.raises(ValueError):
        kn2_forest7(4)


@pytest.mark.parametrize("q,order", [(3, 5), (5, 7), (7, 9)])
def test_paley_small_trees(q, order):
    g = example_paley(q).graph
    T = paley_small_tree(q)
    check = forest_check(g, T)
    assert T.bit_count() == order and check.is_forest and check.components == 1
    assert members(T)[:q] == list(range(q))  # the subfield comes first


def test_p9_tree_is_a_path():
    g = example_paley(3).graph
    T = paley_small_tree(3)
    assert is_induced_path(g, T)
    assert [g.labels[v] for v in members(T)] == ["0", "1", "2", "x+1", "x+2"]


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_blokhuis_sets(q):
    F = scan_field(q)
    g = example_paley(q).graph if q <= 7 else None
    sets = blokhuis_independent_sets(F)
    assert len(sets) == q * (q + 1) // 2
    if g is not None:
        assert all(is_independent(g, s) and s.bit_count() == q for s in sets)
        assert as_mask(range(q)) in sets


def test_blokhuis_sets_are_all_maximum_cocliques_q3():
    g = example_paley(3).graph
    sets = set(blokhuis_independent_sets(FiniteField(3, 2, [1, 0, 1])))
    alpha = max_independent_set(g).value
    found = {as_mask(c) for c in itertools.combinations(range(9), alpha) if is_independent(g, as_mask(c))}
    assert alpha == 3 and found == sets


def _frobenius(F, q, v):
    return F.pow(v, q)


@pytest.mark.parametrize("q", [3, 5])
def test_scan_hits_invariant_under_frobenius(q):
    (report,) = paley_two_add_scan((q,))
    F = scan_field(q)
    hits = {(h.independent_set, tuple(sorted(h.added))) for h in report.hits}
    for A, (u, v) in hits:
        A2 = tuple(sorted(_frobenius(F, q, a) for a in A))
        pair = tuple(sorted((_frobenius(F, q, u), _frobenius(F, q, v))))
        assert (A2, pair) in hits


def test_scan_small_range():
    reports = paley_two_add_scan((3, 5, 7, 9, 11, 13))
    by_q = {r.q: r for r in reports}
    for q in (3, 5, 7):
        tree = paley_small_tree(q)
        assert any(as_mask(h.independent_set) | (1 << h.added[0]) | (1 << h.added[1]) == tree
                   for h in by_q[q].hits)
    for q in (9, 11, 13):
        assert by_q[q].hits == [] and by_q[q].complete
    assert by_q[3].sets_examined == 6 and by_q[3].pairs_examined == 6 * comb(6, 2)


def test_scan_hits_revalidate():
    (report,) = paley_two_add_scan((5,))
    g = example_paley(5).graph
    for h in report.hits:
        S = as_mask(h.independent_set) | (1 << h.added[0]) | (1 << h.added[1])
        assert forest_check(g, S).is_forest and S.bit_count() == 7


def test_scan_budget_marks_incomplete():
    reports = paley_two_add_scan((13, 17), max_seconds=0.0)
    assert not reports[0].complete and len(reports) == 1


def test_scan_report_json():
    (report,) = paley_two_add_scan((3,))
    data = report.to_dict(scan_field(3).labels)
    assert data["status"] == "complete" and data["hit_count"] == len(report.hits)
    assert ["x+1", "x+2"] in [h["added"] for h in data["hits"]]
    assert isinstance(ScanReport(3, [1, 0, 1]).to_dict(), dict)


def test_scan_ranges():
    assert DEFAULT_SCAN_RANGE == (3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29)
    assert FULL_SCAN_RANGE[-1] == 67 and 49 in FULL_SCAN_RANGE and 15 not in FULL_SCAN_RANGE
    with pytest.raises(ValueError):
        paley_two_add_scan((15,))
