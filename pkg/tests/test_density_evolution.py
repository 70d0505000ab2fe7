import math
import warnings
from dataclasses import replace
from itertools import product

import numpy as np
import pytest

from pecldpc import (
    GF,
    DeConfig,
    DegreeDistribution,
    PartialErasureChannel,
    SumsetSizeModel,
    SymbolSet,
    check_update,
    ctv_message,
    initial_vtc_dist,
    run,
    threshold_search,
    variable_update,
)
from pecldpc.combinatorics import common_member_intersection_dist

from oracles import bec_threshold, bec_trajectory


def bec_cfg(q, eps, **kw):
    ch = PartialErasureChannel(GF(q), q, eps)
    return DeConfig(ch, DegreeDistribution.regular(3, 6), SumsetSizeModel.exact(), **kw)


# ---------------------------------------------------------
# Initial state and single updates
# ---------------------------------------------------------
def test_initial_dist():
    ch = PartialErasureChannel(GF(4), 2, 0.3)
    assert initial_vtc_dist(ch).tolist() == [0.7, 0.3, 0.0, 0.0]
    ch2 = PartialErasureChannel(GF(2), 2, 0.25)
    assert initial_vtc_dist(ch2).tolist() == [0.75, 0.25]


def test_check_update_singletons():
    f = GF(4)
    z = np.array([1.0, 0, 0, 0])
    w = check_update(z, 6, SumsetSizeModel.exact(), f, 2)
    assert w.tolist() == [1, 0, 0, 0]


def test_check_update_qec_reduction():
    # M=q: w_1 = z_1^(d_c - 1)
    f = GF(4)
    z = np.array([0.6, 0, 0, 0.4])
    for d_c in (3, 6):
        w = check_update(z, d_c, SumsetSizeModel.exact(), f, 4)
        assert w[0] == pytest.approx(0.6 ** (d_c - 1), abs=1e-15)
        assert w[1] == w[2] == 0.0
        assert w.sum() == pytest.approx(1.0, abs=1e-12)


def test_check_update_validation():
    f = GF(4)
    with pytest.raises(ValueError):
        check_update(np.array([0.5, 0.5, 0, 0]), 1, SumsetSizeModel.exact(), f, 2)
    with pytest.raises(ValueError):
        check_update(np.array([0.5, 0, 0.5, 0]), 3, SumsetSizeModel.exact(), f, 2)


def test_variable_update_trivial_cases():
    f = GF(4)
    ch0 = PartialErasureChannel(f, 2, 0.0)
    z = variable_update(np.array([0.2, 0.5, 0.2, 0.1]), 3, ch0)
    assert z.tolist() == [1, 0, 0, 0]
    ch = PartialErasureChannel(f, 2, 0.37)
    z = variable_update(np.array([1.0, 0, 0, 0]), 3, ch)
    assert z[0] == pytest.approx(1.0, abs=1e-12)


def test_variable_update_qec_reduction():
    # M=q: z_q = eps * w_q^(d_v - 1)
    f = GF(5)
    ch = PartialErasureChannel(f, 5, 0.8)
    w = np.array([0.3, 0, 0, 0, 0.7])
    for d_v in (2, 3, 4):
        z = variable_update(w, d_v, ch)
        assert z[4] == pytest.approx(0.8 * 0.7 ** (d_v - 1), rel=1e-13)
        assert z.sum() == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------
# Multiset enumeration equals ordered-tuple enumeration
# ---------------------------------------------------------
def ordered_check_update(z, d_c, model, field, M):
    q = field.q
    w = np.zeros(q)
    for tup in product(range(1, M + 1), repeat=d_c - 1):
        weight = math.prod(z[s - 1] for s in tup)
        if weight:
            w += weight * model.distribution(sorted(tup), field)
    return w


def ordered_variable_update(w, d_v, channel):
    q = channel.field.q
    z = np.zeros(q)
    z[0] = 1 - channel.epsilon
    for tup in product(range(1, q + 1), repeat=d_v - 1):
        weight = math.prod(w[s - 1] for s in tup)
        if weight:
            dist = common_member_intersection_dist(
                sorted(tup + (channel.M,)), q
            )
            z[: len(dist) - 1] += channel.epsilon * weight * dist[1:]
    return z


@pytest.mark.parametrize("q,M,d", [(4, 2, 4), (4, 3, 3), (5, 4, 3), (3, 2, 4)])
def test_multiset_equals_ordered(q, M, d):
    f = GF(q)
    rng = np.random.default_rng(q * 10 + M)
    model = SumsetSizeModel.exact()
    ch = PartialErasureChannel(f, M, 0.55)
    for _ in range(5):
        z = np.zeros(q)
        z[:M] = rng.random(M)
        z /= z.sum()
        got = check_update(z, d, model, f, M)
        want = ordered_check_update(z, d, model, f, M)
        assert np.abs(got - want).max() < 1e-12
        w = rng.random(q)
        w /= w.sum()
        got = variable_update(w, d, ch)
        want = ordered_variable_update(w, d, ch)
        assert np.abs(got - want).max() < 1e-12


# ---------------------------------------------------------
# Check update vs a decoder-semantics Monte Carlo
# ---------------------------------------------------------
def test_check_update_matches_decoder_monte_carlo():
    # one q=4, M=2, d_c=3 check node: sample incoming sets containing 0
    # with random nonzero labels and push them through ctv_message
    f = GF(4)
    z = np.array([0.5, 0.5, 0.0, 0.0])
    w = check_update(z, 3, SumsetSizeModel.exact(), f, 2)
    rng = np.random.default_rng(2024)
    samples = 120_000
    counts = np.zeros(5)
    for _ in range(samples):
        incoming = []
        for _ in range(2):
            size = 1 if rng.random() < z[0] else 2
            mask = 1
            if size == 2:
                mask |= 1 << int(rng.integers(1, 4))
            incoming.append((SymbolSet.from_mask(f, mask), int(rng.integers(1, 4))))
        out = ctv_message(incoming, int(rng.integers(1, 4)), f)
        counts[len(out)] += 1
    emp = counts[1:] / samples
    for m in range(4):
        sigma = math.sqrt(max(w[m] * (1 - w[m]), 1e-12) / samples)
        assert abs(emp[m] - w[m]) <= 3.5 * sigma + 1e-9


# ---------------------------------------------------------
# Full evolution
# ---------------------------------------------------------
def test_run_no_erasures_converges_immediately():
    r = run(bec_cfg(4, 0.0))
    assert r.converged and r.iterations == 0
    assert r.trajectory == [(0, 0.0)]


def test_run_full_erasure_pinned():
    r = run(bec_cfg(4, 1.0, max_iters=50))
    assert not r.converged
    assert all(pe == 1.0 for _, pe in r.trajectory)


def test_run_flags_clean_on_benign_input():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        r = run(bec_cfg(5, 0.4))
    assert r.monotone and r.mass_ok and r.converged


def test_bec_reduction_termwise():
    cfg = bec_cfg(2, 0.41, max_iters=200, convergence_tol=0.0, fixed_point_tol=0.0)
    r = run(cfg)
    want = bec_trajectory(0.41, 3, 6, 200)
    assert len(r.trajectory) == 201
    for (it, got), expect in zip(r.trajectory, want):
        assert abs(got - expect) < 1e-12


def test_mixture_degrees_accepted():
    # irregular mixture stays a probability distribution and converges
    # for small eps
    f = GF(4)
    ch = PartialErasureChannel(f, 2, 0.2)
    deg = DegreeDistribution({2: 0.3, 3: 0.7}, {5: 0.5, 6: 0.5})
    cfg = DeConfig(ch, deg, SumsetSizeModel.exact())
    r = run(cfg)
    assert r.converged and r.mass_ok


def test_irregular_mixture_matches_hand_mix():
    # one update step of a two-degree mixture equals the convex
    # combination of the single-degree updates
    f = GF(4)
    M = 2
    model = SumsetSizeModel.exact()
    z = np.array([0.55, 0.45, 0.0, 0.0])
    mixed = 0.25 * check_update(z, 4, model, f, M) + 0.75 * check_update(
        z, 6, model, f, M
    )
    deg = DegreeDistribution({3: 1.0}, {4: 0.25, 6: 0.75})
    ch = PartialErasureChannel(f, M, 0.5)
    cfg = DeConfig(ch, deg, model, max_iters=1, convergence_tol=0.0, fixed_point_tol=0.0)
    r = run(cfg)
    # reproduce iteration 1 by hand: z0 -> mixed w -> variable update
    z0 = initial_vtc_dist(ch)
    w = 0.25 * check_update(z0, 4, model, f, M) + 0.75 * check_update(z0, 6, model, f, M)
    w = w / w.sum()
    z1 = variable_update(w, 3, ch)
    z1 = z1 / z1.sum()
    assert r.trajectory[1][1] == pytest.approx(1 - z1[0], abs=1e-15)
    assert mixed.sum() == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------
# Threshold search
# ---------------------------------------------------------
def test_threshold_bec_anchor():
    th = threshold_search(bec_cfg(2, 0.0))
    assert abs(th - bec_threshold(3, 6)) < 2e-4
    assert abs(th - 0.4294) < 1e-3


def test_threshold_same_for_all_qec_sizes():
    # M=q: the size distribution is two-point and the recursion is the
    # same for every q
    th2 = threshold_search(bec_cfg(2, 0.0))
    th5 = threshold_search(bec_cfg(5, 0.0))
    assert th2 == pytest.approx(th5, abs=2e-4)


def test_threshold_model_ordering_single_cell():
    f = GF(4)
    deg = DegreeDistribution.regular(3, 6)
    ths = {}
    for kind in ("bound-upper", "exact", "union", "balls", "bound-lower"):
        cfg = DeConfig(
            PartialErasureChannel(f, 3, 0.0), deg, SumsetSizeModel(kind)
        )
        ths[kind] = threshold_search(cfg)
    assert ths["bound-upper"] <= ths["exact"] + 2e-4
    assert ths["exact"] <= ths["union"] + 2e-4
    assert ths["union"] <= ths["balls"] + 2e-4
    assert ths["balls"] <= ths["bound-lower"] + 2e-4


def test_threshold_monotone_check_runs_clean():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        th = threshold_search(bec_cfg(2, 0.0), tol_eps=1e-3, check_monotone=True)
    assert 0.42 < th < 0.44


def test_threshold_warns_on_non_monotone_convergence(monkeypatch):
    import pecldpc.density_evolution as de_mod

    from pecldpc.density_evolution import DeResult

    def fake_run(cfg):
        eps = cfg.channel.epsilon
        # converges on a weird island above a failing stretch
        ok = eps < 0.2 or 0.6 < eps < 0.7
        return DeResult(converged=ok, iterations=1, trajectory=[(0, eps)])

    monkeypatch.setattr(de_mod, "run", fake_run)
    with pytest.warns(UserWarning, match="not monotone"):
        th = de_mod.threshold_search(bec_cfg(2, 0.0), check_monotone=True)
    assert th > 0.0
