import math

import numpy as np
import pytest
from hypothesis import given, settings

from core.counting import (
    categoriser_valuation,
    damped_partial,
    default_max_iter,
    estimate_iterations,
    graded_counts,
    iterate_counting,
    iterate_counting_two_step,
    iteration_curve,
    max_alpha_for_budget,
    ranking_sweep,
    simple_counting,
    solve_counting,
    solve_counting_direct,
    spectral_radius,
)
from core.config import get_settings
from core.errors import ConvergenceError, CountOverflowError, EstimateError
from core.framework import ArgumentationFramework
from core.generator import generate_random
from strategies import alphas, frameworks


def test_graded_counts_sample(sample):
    m = sample.matrix
    assert graded_counts(m, 0).tolist() == [1, 1, 1, 1]
    assert graded_counts(m, 1).tolist() == [1, 2, 2, 0]
    assert graded_counts(m, 2).tolist() == [2, 2, 4, 0]
    with pytest.raises(ValueError):
        graded_counts(m, -1)


def test_simple_counting_sample(sample):
    m = sample.matrix
    assert simple_counting(m, 0).tolist() == [1, 1, 1, 1]
    assert simple_counting(m, 1).tolist() == [0, -1, -1, 1]
    assert simple_counting(m, 2).tolist() == [2, 1, 3, 1]


def test_counts_overflow_is_reported():
    # every argument attacks every argument: counts triple at each step
    af = ArgumentationFramework(("a", "b", "c"), frozenset((i, j) for i in range(3) for j in range(3)))
    assert graded_counts(af.matrix, 30).tolist() == [3**30] * 3
    with pytest.raises(CountOverflowError) as info:
        simple_counting(af.matrix, 100)
    assert info.value.length <= 100
    with pytest.raises(OverflowError):
        graded_counts(af.matrix, 100)


def test_damped_partial_sample(sample):
    m = sample.matrix
    np.testing.assert_allclose(damped_partial(m, 0.98, 1).values, [0.51, 0.02, 0.02, 1.0], atol=1e-12)
    np.testing.assert_allclose(np.round(damped_partial(m, 0.98, 2).values, 2), [0.99, 0.50, 0.98, 1.0])
    np.testing.assert_allclose(damped_partial(m, 0.98, 0).values, np.ones(4))


def test_iterate_counting_steps(sample, attack_free):
    m = sample.matrix
    one = iterate_counting(m, 0.98, np.ones(4))
    np.testing.assert_allclose(one, [0.51, 0.02, 0.02, 1.0], atol=1e-12)
    two = iterate_counting(m, 0.98, one)
    np.testing.assert_allclose(two, damped_partial(m, 0.98, 2).values, atol=1e-12)
    np.testing.assert_allclose(iterate_counting_two_step(m, 0.98, np.ones(4)), two, atol=1e-12)
    np.testing.assert_allclose(iterate_counting(attack_free.matrix, 0.5, np.array([3.0, -1.0, 0.2])), np.ones(3))


def test_iterate_counting_rejects_bad_input(sample):
    with pytest.raises(ValueError):
        iterate_counting(sample.matrix, 1.0, np.ones(4))
    with pytest.raises(ValueError):
        iterate_counting(sample.matrix, 0.5, np.ones(3))


def test_solve_counting_sample(sample):
    res = solve_counting(sample.matrix, 0.98, 1e-3)
    np.testing.assert_allclose(res.values, [0.89, 0.22, 0.60, 1.00], atol=0.005)
    assert res.iterations == len(res.changes)
    assert res.changes[-1] <= 1e-3
    assert res.as_dict(sample.arguments)["x4"] == 1.0


def test_solve_counting_direct_sample(sample):
    res = solve_counting_direct(sample.matrix, 0.98)
    np.testing.assert_allclose(res.values, [0.8942, 0.2160, 0.6001, 1.0], atol=1e-4)
    assert res.method == "direct"
    assert res.iterations == 0


def test_solve_attack_free(attack_free):
    res = solve_counting(attack_free.matrix, 0.98, 1e-3)
    assert res.iterations == 1
    assert res.values.tolist() == [1.0, 1.0, 1.0]
    assert solve_counting_direct(attack_free.matrix, 0.5).values.tolist() == [1.0, 1.0, 1.0]


def test_two_cycle_direct(two_cycle):
    res = solve_counting_direct(two_cycle.matrix, 0.5)
    np.testing.assert_allclose(res.values, [2 / 3, 2 / 3], atol=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 0.9, 0.98])
def test_twin_trees_roots_share_value(twin_trees, alpha):
    expected = 1 - alpha + alpha**2 / 2
    v = solve_counting_direct(twin_trees.matrix, alpha)
    assert abs(v[twin_trees.index_of("x1")] - expected) < 1e-9
    assert abs(v[twin_trees.index_of("y1")] - expected) < 1e-9
    it = solve_counting(twin_trees.matrix, alpha, 1e-6)
    assert abs(it[twin_trees.index_of("x1")] - expected) < 1e-5


def test_residual_and_bounds(sample):
    alpha, eps = 0.98, 1e-3
    res = solve_counting(sample.matrix, alpha, eps)
    residual = np.abs(res.values - iterate_counting(sample.matrix, alpha, res.values)).max()
    assert residual <= eps
    assert (res.values >= 1 - alpha - eps).all()
    assert (res.values <= 1.0).all()


def test_non_convergence_carries_state(sample):
    with pytest.raises(ConvergenceError) as info:
        solve_counting(sample.matrix, 0.98, 1e-9, max_iter=3)
    err = info.value
    assert err.iterations == 3
    assert err.last.shape == (4,)
    assert err.change > 1e-9


def test_default_max_iter(monkeypatch):
    # ceil(k_max) for eps=1e-3, alpha=0.98 is 342
    assert default_max_iter(1e-3, 0.98) == 3420
    assert default_max_iter(0.5, 0.5) == 1000
    monkeypatch.setenv("COUNTING_MAX_ITER", "7")
    get_settings.cache_clear()
    assert default_max_iter(1e-3, 0.98) == 7


def test_settings_drive_defaults(monkeypatch, sample):
    monkeypatch.setenv("COUNTING_ALPHA", "0.5")
    res = solve_counting_direct(sample.matrix)
    assert res.alpha == 0.5


def test_spectral_radius():
    zero = ArgumentationFramework(("a", "b"))
    assert spectral_radius(zero.matrix) == 0.0
    cycle = ArgumentationFramework.from_names(["a", "b"], [("a", "b"), ("b", "a")])
    assert spectral_radius(cycle.matrix) == pytest.approx(1.0, abs=1e-8)
    chain = ArgumentationFramework.from_names(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert spectral_radius(chain.matrix) == 0.0


def test_spectral_radius_sample(sample):
    rho = spectral_radius(sample.matrix)
    # characteristic-polynomial roots as the oracle
    roots = np.roots(np.poly(sample.matrix.normalized))
    assert 0.0 < rho <= 1.0
    assert rho == pytest.approx(float(np.abs(roots).max()), abs=1e-6)
    assert rho == pytest.approx((1 + math.sqrt(5)) / 4, abs=1e-6)


def _eig_radius(matrix):
    if matrix.n == 0 or matrix.norm == 0:
        return 0.0
    return float(np.abs(np.linalg.eigvals(matrix.normalized)).max())


@settings(max_examples=300, deadline=None)
@given(frameworks(max_n=8))
def test_spectral_radius_matches_eigenvalues(af):
    assert spectral_radius(af.matrix) == pytest.approx(_eig_radius(af.matrix), abs=1e-6)


def test_spectral_radius_random_frameworks():
    for seed in range(200):
        m = generate_random(6, 0.25, seed).matrix
        assert spectral_radius(m) == pytest.approx(_eig_radius(m), abs=1e-6), seed


def test_spectral_radius_sparse_path(monkeypatch, sample):
    monkeypatch.setenv("COUNTING_DENSE_THRESHOLD", "0")
    get_settings.cache_clear()
    af = ArgumentationFramework(sample.arguments, sample.attacks)
    assert af.matrix.is_sparse
    assert spectral_radius(af.matrix) == pytest.approx((1 + math.sqrt(5)) / 4, abs=1e-6)
    ring = ArgumentationFramework.from_names(list("abcde"), [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
    assert spectral_radius(ring.matrix) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("name", ["sample", "two_cycle"])
def test_change_rate_follows_alpha_rho(request, name):
    af = request.getfixturevalue(name)
    alpha = 0.98
    rate = alpha * spectral_radius(af.matrix)
    changes = solve_counting(af.matrix, alpha, 1e-12).changes
    # per-step contraction settles on αρ
    assert changes[40] / changes[39] == pytest.approx(rate, rel=1e-6)
    k = len(changes)
    assert changes[-1] ** (1.0 / k) == pytest.approx(rate, abs=0.01)


@pytest.mark.parametrize("alpha,expected", [(0.97, 378), (0.98, 570), (0.99, 1146)])
def test_estimate_iterations_table(alpha, expected):
    est = estimate_iterations(1e-5, alpha, 1.0)
    assert abs(est.iterations - expected) <= 1


def test_estimate_iterations_edges():
    assert estimate_iterations(1e-3, 0.98, 0.0).iterations == 1
    with pytest.raises(EstimateError):
        estimate_iterations(1e-3, 0.9, 1.5)
    with pytest.raises(EstimateError):
        estimate_iterations(0.0, 0.9, 1.0)
    with pytest.raises(ValueError):
        estimate_iterations(1e-3, 1.0, 1.0)
    # ρ of Ã never exceeds 1, even when αρ would still contract
    with pytest.raises(EstimateError):
        estimate_iterations(1e-5, 0.5, 1.5)
    with pytest.raises(EstimateError):
        max_alpha_for_budget(1e-5, 500, rho=1.5)


def test_iteration_curve_and_budget():
    curve = iteration_curve(1e-5, [0.9, 0.95, 0.97, 0.98, 0.99])
    ks = [e.k_max for e in curve]
    assert ks == sorted(ks)
    best = max_alpha_for_budget(1e-5, 500)
    assert best == pytest.approx(0.97724, abs=1e-5)
    assert best < 0.98
    assert estimate_iterations(1e-5, best, 1.0).iterations <= 500
    assert max_alpha_for_budget(1e-5, 10, rho=0.0) < 1.0


def test_ranking_sweep(sample):
    sweep = ranking_sweep(sample.matrix, [0.5, 0.98])
    assert sorted(sweep) == [0.5, 0.98]
    assert sweep[0.98].values[3] == 1.0


def test_categoriser(sample):
    single = ArgumentationFramework(("s",), frozenset({(0, 0)}))
    assert categoriser_valuation(single.matrix, 1e-10)[0] == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-8)
    v = categoriser_valuation(sample.matrix, 1e-9)
    assert v[3] == 1.0
    assert all(v[i] < v[3] for i in range(3))
    assert v.method == "categoriser"
    assert v.alpha is None


def test_categoriser_cap_from_settings(monkeypatch, sample):
    monkeypatch.setenv("COUNTING_CATEGORISER_MAX_ITER", "2")
    get_settings.cache_clear()
    with pytest.raises(ConvergenceError) as info:
        categoriser_valuation(sample.matrix, 1e-9)
    assert info.value.iterations == 2
    assert categoriser_valuation(sample.matrix, 1e-9, max_iter=500).method == "categoriser"


def test_unattacked_score_exactly_one(sample):
    assert solve_counting(sample.matrix, 0.9, 1e-6)[3] == 1.0
    assert solve_counting_direct(sample.matrix, 0.9)[3] == pytest.approx(1.0, abs=1e-12)
    assert categoriser_valuation(sample.matrix, 1e-6)[3] == 1.0


@settings(max_examples=100, deadline=None)
@given(frameworks(max_n=8), alphas())
def test_partial_sum_matches_recurrence(af, alpha):
    m = af.matrix
    v = np.ones(af.n)
    for k in range(1, 21):
        v = iterate_counting(m, alpha, v)
        np.testing.assert_allclose(damped_partial(m, alpha, k).values, v, atol=1e-12, rtol=0)


@settings(max_examples=60, deadline=None)
@given(frameworks(max_n=8), alphas(high=0.9))
def test_solver_properties(af, alpha):
    eps = 1e-4
    m = af.matrix
    res = solve_counting(m, alpha, eps)
    assert (res.values >= 1 - alpha - eps).all()
    assert (res.values <= 1.0).all()
    for prev, cur in zip(res.changes, res.changes[1:]):
        assert cur <= alpha * prev + 1e-12

    direct = solve_counting_direct(m, alpha)
    np.testing.assert_allclose(res.values, direct.values, atol=10 * eps, rtol=0)

    for i in range(af.n):
        if af.attacker_mask(i) == 0:
            assert res[i] == 1.0
        elif m.norm:
            assert direct[i] <= 1 - alpha * (1 - alpha) / m.norm + 1e-12
