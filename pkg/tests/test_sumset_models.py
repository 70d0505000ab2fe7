from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
import pytest

from pecldpc import (
    GF,
    EnumerationBudgetError,
    SumsetSizeModel,
    balls_dist,
    bound_dist,
    coverage_transition_matrix,
    exact_dist,
    exact_dist_rational,
    occupancy_dist,
    sumset_bounds,
    union_model_dist,
)

from oracles import brute_sumset_dist, occupancy_exact


# ---------------------------------------------------------
# Bounds
# ---------------------------------------------------------
def test_bounds_anchors():
    b = sumset_bounds([2, 2], GF(5))
    assert (b.lower, b.upper, b.forced_full) == (3, 4, False)
    b = sumset_bounds([2, 2], GF(4))  # characteristic 2 caps the lower bound
    assert (b.lower, b.upper, b.forced_full) == (2, 4, False)
    b = sumset_bounds([3, 2], GF(4))  # 3 + 2 > 4 forces full coverage
    assert (b.lower, b.upper, b.forced_full) == (4, 4, True)


def test_bounds_universe_member():
    b = sumset_bounds([4, 2], GF(4))
    assert b.lower == b.upper == 4


def test_bounds_single_set():
    b = sumset_bounds([3], GF(5))
    assert (b.lower, b.upper, b.forced_full) == (3, 3, False)


def test_bound_dists():
    f = GF(5)
    lo = bound_dist([2, 2], f, "lower")
    hi = bound_dist([2, 2], f, "upper")
    assert lo.tolist() == [0, 0, 1, 0, 0]
    assert hi.tolist() == [0, 0, 0, 1, 0]
    forced = bound_dist([3, 3], f, "lower")  # 3+3 > 5
    assert forced.tolist() == [0, 0, 0, 0, 1]
    ones = bound_dist([1, 1, 1], f, "upper")
    assert ones.tolist() == [1, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        bound_dist([2, 2], f, "middle")


# ---------------------------------------------------------
# Exact distribution
# ---------------------------------------------------------
def test_exact_gf4_pair_anchor():
    d = exact_dist_rational([2, 2], GF(4))
    assert d == (0, Fraction(1, 3), 0, Fraction(2, 3))


def test_exact_gf5_pair_support():
    d = exact_dist_rational([2, 2], GF(5))
    assert d[0] == d[1] == d[4] == 0
    assert d[2] > 0 and d[3] > 0 and sum(d) == 1


def test_exact_universe_member():
    d = exact_dist_rational([4, 2], GF(4))
    assert d == (0, 0, 0, 1)


def test_exact_matches_bruteforce():
    for q in (2, 3, 4, 5):
        f = GF(q)
        top = min(3, q)
        for j in (1, 2, 3):
            for sizes in combinations_with_replacement(range(1, top + 1), j):
                assert list(exact_dist_rational(sizes, f)) == brute_sumset_dist(
                    sizes, f
                )


def test_exact_respects_bounds_and_forced_full():
    for q in (2, 3, 4, 5):
        f = GF(q)
        for j in (1, 2, 3):
            for sizes in combinations_with_replacement(range(1, q + 1), j):
                b = sumset_bounds(sizes, f)
                d = exact_dist_rational(sizes, f)
                support = [m + 1 for m, p in enumerate(d) if p > 0]
                assert min(support) >= b.lower
                assert max(support) <= b.upper
                if b.forced_full:
                    assert support == [q]


def test_exact_budget_cap():
    with pytest.raises(EnumerationBudgetError):
        exact_dist([4, 4, 4], GF(8), work_cap=10)
    with pytest.raises(ValueError):
        exact_dist([2, 2], GF(4), method="magic")


def test_monte_carlo_close_to_exact():
    f = GF(5)
    exact = exact_dist([2, 3], f)
    mc = exact_dist(
        [2, 3], f, method="monte_carlo", samples=200_000,
        rng=np.random.default_rng(17),
    )
    assert np.abs(mc - exact).max() < 0.005
    assert mc.sum() == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------
# Coverage chain, occupancy
# ---------------------------------------------------------
def test_gamma_one_closed_form():
    for q in range(2, 17):
        g = coverage_transition_matrix(1, q)
        for i in range(1, q + 1):
            row = np.zeros(q)
            row[i - 1] = i / q
            if i < q:
                row[i] = 1 - i / q
            assert np.abs(g[i - 1] - row).max() < 1e-12


def test_gamma_rows_stochastic_triangular_absorbing():
    for q in (4, 5, 8):
        for step in range(1, q + 1):
            g = coverage_transition_matrix(step, q)
            assert np.abs(g.sum(axis=1) - 1.0).max() < 1e-12
            assert np.abs(np.tril(g, -1)).max() == 0.0
            assert g[q - 1, q - 1] == 1.0
            # powers stay stochastic
            p = np.linalg.matrix_power(g, 7)
            assert np.abs(p.sum(axis=1) - 1.0).max() < 1e-10


def test_gamma_full_step_absorbs_immediately():
    q = 5
    g = coverage_transition_matrix(q, q)
    assert (g[:, q - 1] == 1.0).all()


def test_gamma_entries_match_intersection_law():
    from pecldpc import intersection_dist

    q = 4
    g = coverage_transition_matrix(2, q)
    t = intersection_dist((2, 2), q)
    row = np.zeros(q)
    for m in range(len(t)):
        j = 2 + 2 - m
        if j <= q:
            row[j - 1] = t[m]
    assert np.abs(g[1] - row).max() < 1e-15


def test_occupancy_matches_closed_form():
    for q in range(2, 6):
        for n_balls in range(1, 7):
            got = occupancy_dist(n_balls, q)
            want = [float(p) for p in occupancy_exact(n_balls, q)]
            assert np.abs(got - np.array(want)).max() < 1e-12


# ---------------------------------------------------------
# Balls-and-bins and union models
# ---------------------------------------------------------
def test_balls_anchors():
    f = GF(5)
    assert balls_dist([1, 1, 1], f).tolist() == [1, 0, 0, 0, 0]
    assert balls_dist([2, 1], f).tolist() == [0, 1, 0, 0, 0]
    assert balls_dist([3, 3], f).tolist() == [0, 0, 0, 0, 1]  # forced full


def test_union_anchors():
    f = GF(5)
    assert union_model_dist([3], f).tolist() == [0, 0, 1, 0, 0]
    got = union_model_dist([2, 2], f)
    assert np.abs(got - np.array([0, 0, 2 / 3, 1 / 3, 0])).max() < 1e-12
    assert union_model_dist([3, 3], f).tolist() == [0, 0, 0, 0, 1]


def test_models_are_distributions():
    f = GF(5)
    for sizes in [(2, 2), (2, 3), (2, 2, 2), (4, 2)]:
        for fn in (balls_dist, union_model_dist):
            d = fn(sizes, f)
            assert d.sum() == pytest.approx(1.0, abs=1e-12)
            assert (d >= 0).all()
            b = sumset_bounds(sizes, f)
            assert d[: b.lower - 1].max(initial=0.0) == 0.0


# ---------------------------------------------------------
# Model selector
# ---------------------------------------------------------
def test_model_selector_kinds():
    f = GF(4)
    assert SumsetSizeModel.exact().distribution([2, 2], f)[1] == pytest.approx(1 / 3)
    assert SumsetSizeModel.bound_upper().distribution([2, 2], f).tolist() == [0, 0, 0, 1]
    assert SumsetSizeModel.bound_lower().distribution([2, 2], f).tolist() == [0, 1, 0, 0]
    assert SumsetSizeModel.balls().distribution([2, 2], f).sum() == pytest.approx(1.0)
    assert SumsetSizeModel.union().distribution([2, 2], f).sum() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        SumsetSizeModel("bogus")


def test_model_cache_returns_same_array():
    model = SumsetSizeModel.exact()
    f = GF(5)
    a = model.distribution([3, 2], f)
    b = model.distribution([2, 3], f)
    assert a is b


def test_exact_model_mc_fallback():
    f = GF(5)
    strict = SumsetSizeModel("exact", work_cap=10)
    with pytest.raises(EnumerationBudgetError):
        strict.distribution([2, 2], f)
    fallback = SumsetSizeModel("exact", work_cap=10, mc_samples=50_000, mc_seed=3)
    d = fallback.distribution([2, 2], f)
    want = exact_dist([2, 2], f)
    assert np.abs(d - want).max() < 0.02
