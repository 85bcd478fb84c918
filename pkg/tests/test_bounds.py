from fractions import Fraction
from math import comb

import pytest

from dstgap.bounds import (
    RHO, THETA,
    DirectedBound,
    TailQuery,
    alpha_asymptotics,
    chernoff_lower,
    chernoff_upper,
    constant_identities,
    exp_bounds,
    frac_log,
    hypergeom_count,
    hypergeom_pmf,
    hypergeom_tail,
    ja_count,
    kb_residual_count,
    verify_ja_bound,
    verify_kb_bound,
)
from dstgap.families import SubsetFamilyParams, default_j_sets, subset_objects


# ---------------------------------------------------------------------------
# hypergeometric oracle

def test_pmf_sums_to_one():
    for pop, succ, draws in ((64, 4, 4), (8, 4, 4), (10, 3, 7), (5, 0, 2)):
        assert sum(hypergeom_pmf(pop, succ, draws)) == 1


def test_tail_closed_form_64():
    q = TailQuery(64, 4, 4, 1)
    expected = 1 - Fraction(comb(60, 4), comb(64, 4)) \
        - 4 * Fraction(comb(60, 3), comb(64, 4))
    assert hypergeom_tail(q, "above") == expected


def test_tail_17_70():
    assert hypergeom_tail(TailQuery(8, 4, 4, 1), "at_most") == Fraction(17, 70)


def test_tail_above_threshold_ge_draws():
    assert hypergeom_tail(TailQuery(10, 5, 3, 3), "above") == 0
    assert hypergeom_tail(TailQuery(10, 5, 3, 7), "above") == 0


def test_tail_complement():
    q = TailQuery(12, 5, 6, 2)
    above = hypergeom_tail(q, "above")
    at_most = hypergeom_tail(q, "at_most")
    assert above + at_most == 1


def test_count_direction_error():
    with pytest.raises(ValueError):
        hypergeom_count(8, 4, 4, 1, "below")


def test_query_validation():
    with pytest.raises(ValueError):
        TailQuery(4, 5, 2, 0)
    with pytest.raises(ValueError):
        TailQuery(4, 2, 5, 0)


# ---------------------------------------------------------------------------
# directed-rounded exponentials

def test_exp_bounds_enclose():
    one = exp_bounds(Fraction(0))
    assert one.lower <= 1 <= one.upper
    e1 = exp_bounds(Fraction(1))
    assert Fraction(27182, 10000) < e1.lower <= e1.upper < Fraction(27183, 10000)
    # reciprocal pairing: e^(-1) * e^(1) brackets 1
    em1 = exp_bounds(Fraction(-1))
    assert em1.lower * e1.lower <= 1 <= em1.upper * e1.upper
    assert Fraction(1, 2) in DirectedBound(Fraction(1, 4), Fraction(3, 4), 10)


def test_exp_bounds_tightness():
    b = exp_bounds(Fraction(3, 7), digits=30)
    assert b.upper - b.lower < Fraction(1, 10**30)
    assert b.decimal_str().startswith("1.53506")  # e^(3/7) = 1.535063...


def test_chernoff_plug_ins():
    lo = chernoff_lower(Fraction(4), Fraction(1, 2))
    ref = exp_bounds(Fraction(-1, 2))
    assert (lo.lower, lo.upper) == (ref.lower, ref.upper)
    # second-lemma instantiation: mu = rho*m/2, delta = 1/2 -> e^(-m/256)
    m = 64
    mu = RHO * m / 2
    lo = chernoff_lower(mu, Fraction(1, 2))
    ref = exp_bounds(-Fraction(m, 256))
    assert (lo.lower, lo.upper) == (ref.lower, ref.upper)


def test_chernoff_monotone_in_mu():
    delta = Fraction(1)
    assert chernoff_upper(Fraction(4), delta).upper \
        < chernoff_upper(Fraction(1), delta).lower


def test_chernoff_domains():
    with pytest.raises(ValueError):
        chernoff_upper(Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        chernoff_lower(Fraction(1), Fraction(1))
    with pytest.raises(ValueError):
        chernoff_lower(Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        chernoff_upper(Fraction(-1), Fraction(1))


def test_frac_log():
    assert frac_log(Fraction(1)) == 0
    with pytest.raises(ValueError):
        frac_log(Fraction(0))


# ---------------------------------------------------------------------------
# the two lemmas at paper constants

def test_counts_m64():
    assert ja_count(64) == 10861
    assert kb_residual_count(64) == 17


def test_regime_guard():
    for m in (65, 0, -64, 32):
        with pytest.raises(ValueError):
            verify_ja_bound(m)
        with pytest.raises(ValueError):
            verify_kb_bound(m)


def test_ja_bound_m64():
    rep = verify_ja_bound(64)
    assert rep.exact == Fraction(10861, comb(64, 4))
    assert rep.satisfied
    kd, _, ok = rep.extras["k_over_d"]
    assert ok and kd == Fraction(comb(64, 4), comb(60, 4))
    jad, _, ok = rep.extras["ja_over_d"]
    assert ok and jad == Fraction(10861, comb(60, 4))


def test_kb_bound_m64():
    rep = verify_kb_bound(64)
    assert rep.exact == Fraction(17, 70)
    assert rep.satisfied


def test_sweep_small():
    for m in (64, 128):
        assert verify_ja_bound(m).satisfied
        assert verify_kb_bound(m).satisfied


def test_alpha_m64():
    (row,) = alpha_asymptotics([64])
    assert row.alpha == Fraction(70, 17)
    assert row.dp_over_kb == Fraction(70, 17)
    assert row.d_over_ja == Fraction(comb(60, 4), 10861)
    assert row.alpha == min(row.d_over_ja, row.dp_over_kb)
    assert row.log_alpha_over_m > 0


def test_constant_identities():
    for name, (lhs, rhs) in constant_identities().items():
        assert lhs == rhs, name
    assert THETA == 4 * RHO * RHO == RHO / 4


# ---------------------------------------------------------------------------
# symmetry cross-check against the materialized family

@pytest.mark.parametrize("m,a,thresh", [(6, 2, 0), (6, 2, 1), (8, 2, 1)])
def test_j_set_sizes_match_hypergeometric_counts(m, a, thresh):
    obj = subset_objects(SubsetFamilyParams(m, a, thresh))
    j = default_j_sets(obj)
    expected_j = hypergeom_count(m, a, a, thresh, "above")
    assert all(len(js) == expected_j for js in j.j_sets)
    kv = obj.color_sets_by_b()
    expected_res = hypergeom_count(2 * a, a, a, thresh, "at_most")
    assert all(len(kv[b] - j.j_sets[u]) == expected_res
               for u, b, _ in obj.edges)
