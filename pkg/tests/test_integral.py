from dataclasses import replace
from fractions import Fraction

import pytest

from dstgap.families import JSetFamily, default_j_sets
from dstgap.integral import (
    brute_force_opt,
    certify_gap,
    density_bound,
    solve_structured,
)
from dstgap.model import E4, SizeCapError

from _util import toy_instance


# ---------------------------------------------------------------------------
# gap certificates

def test_certify_zk9(zk9_objects):
    cert = certify_gap(zk9_objects, default_j_sets(zk9_objects))
    assert cert.alpha == 2  # min(6/3, 4/1) = sqrt(k) - 1
    assert cert.opt_lower_bound == 2 * Fraction(126, 56) == Fraction(9, 2)
    assert cert.gap_lower_bound == 1
    assert all(js == 3 and res == 1 for _, js, res in cert.per_u)


def test_certify_zk4(zk4_objects):
    cert = certify_gap(zk4_objects, default_j_sets(zk4_objects))
    assert cert.alpha == 1
    assert cert.opt_lower_bound == Fraction(4, 3)
    assert cert.gap_lower_bound == Fraction(1, 2)


def test_certify_subset_m6(subset_m6_objects):
    cert = certify_gap(subset_m6_objects,
                       default_j_sets(subset_m6_objects, thresh=1))
    assert cert.alpha == Fraction(6, 5)
    assert cert.opt_lower_bound == Fraction(6, 5) * Fraction(15, 6) == 3
    assert all(js == 1 and res == 5 for _, js, res in cert.per_u)


def test_certify_vacuous_j_sets(zk4_objects):
    # J_u = K everywhere: residuals vanish, alpha degrades to d/k
    full = JSetFamily(tuple(frozenset(range(zk4_objects.k))
                            for _ in zk4_objects.a_labels))
    cert = certify_gap(zk4_objects, full)
    assert cert.alpha == Fraction(zk4_objects.d, zk4_objects.k) == Fraction(1, 2)
    assert all(res == 0 for _, _, res in cert.per_u)


def test_certify_rejects_wrong_length(zk4_objects):
    with pytest.raises(ValueError):
        certify_gap(zk4_objects, JSetFamily((frozenset(),)))


# ---------------------------------------------------------------------------
# density bound

def test_density_bound_zk9(zk9_objects):
    j = default_j_sets(zk9_objects)
    neighbors = sorted({b for a, b, _ in zk9_objects.edges if a == 0})
    bound, true = density_bound(zk9_objects, j, 0, neighbors[:1])
    # lemma ceiling: d'/alpha = 4/2 = 2
    assert true <= bound <= 2


def test_density_bound_full_neighborhood(zk9_objects):
    j = default_j_sets(zk9_objects)
    kv = zk9_objects.color_sets_by_b()
    neighbors = sorted({b for a, b, _ in zk9_objects.edges if a == 0})
    bound, true = density_bound(zk9_objects, j, 0, neighbors)
    covered = frozenset().union(*(kv[v] for v in neighbors))
    expected = Fraction(len(covered)) / (Fraction(126, 84) + len(neighbors))
    assert true == expected
    assert bound >= true


def test_density_bound_empty_vset(zk9_objects):
    j = default_j_sets(zk9_objects)
    _, true = density_bound(zk9_objects, j, 0, [])
    assert true == 0


def test_density_bound_rejects_non_neighbors(zk9_objects):
    j = default_j_sets(zk9_objects)
    non_nbr = next(b for b in range(zk9_objects.num_b)
                   if (0, b) not in {(a, bb) for a, bb, _ in zk9_objects.edges})
    with pytest.raises(ValueError):
        density_bound(zk9_objects, j, 0, [non_nbr])


# ---------------------------------------------------------------------------
# structured solver

def test_structured_zk4(zk4_instance):
    res = solve_structured(zk4_instance)
    assert res.optimal
    assert res.value == Fraction(8, 3)
    sol = res.solution
    assert len(sol.opened_a) == 1 and len(sol.opened_b) == 2
    assert sol.cost == Fraction(2, 3) + 2


def test_structured_zk9(zk9_instance):
    res = solve_structured(zk9_instance)
    assert res.optimal
    assert res.value == 6


def test_structured_subset_m6(subset_m6_instance):
    res = solve_structured(subset_m6_instance)
    assert res.optimal
    assert res.value == 5


def test_structured_toy():
    res = solve_structured(toy_instance())
    assert res.optimal and res.value == 2  # |B|/|A| + 1


def test_structured_assignment_valid(zk4_instance):
    res = solve_structured(zk4_instance)
    obj = zk4_instance.provenance
    edge_pairs = {(obj.a_labels[a], obj.b_labels[b]) for a, b, _ in obj.edges}
    for b_lbl, a_lbl in res.solution.assignment:
        assert (a_lbl, b_lbl) in edge_pairs
        assert a_lbl in res.solution.opened_a


def test_structured_budget_exhaustion(zk9_instance):
    res = solve_structured(zk9_instance, node_budget=5)
    assert not res.optimal
    assert res.lower_bound <= res.value


# ---------------------------------------------------------------------------
# brute-force oracle

def test_brute_zk4_matches_structured(zk4_instance):
    res = brute_force_opt(zk4_instance)
    assert res.feasible
    assert res.value == Fraction(8, 3)
    assert len(res.opened_a) == 1 and len(res.opened_b) == 2


def test_brute_toy():
    res = brute_force_opt(toy_instance())
    assert res.feasible and res.value == 2


def test_brute_agrees_on_m4(subset_m4_instance):
    b = brute_force_opt(subset_m4_instance)
    s = solve_structured(subset_m4_instance)
    assert b.feasible and s.optimal
    assert b.value == s.value == Fraction(7, 6)


def test_brute_size_cap(zk9_instance):
    with pytest.raises(SizeCapError):
        brute_force_opt(zk9_instance)  # |A| + |B| = 210


def test_brute_reports_isolated_terminal(zk4_instance):
    t = next(iter(zk4_instance.terminals))
    edges = tuple(e for e in zk4_instance.edges
                  if not (e.klass == E4 and e.head == t))
    bad = replace(zk4_instance, edges=edges)
    res = brute_force_opt(bad)
    assert not res.feasible
    assert res.value is None
    assert res.unreachable == (zk4_instance.labels[t],)
