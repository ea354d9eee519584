import numpy as np
import pytest

from narrativemap.shapley import coalition_values, exact_shapley, sampled_shapley

from oracles import cosine_game_value, shapley_by_subsets


def random_game(rng, n):
    """Random token weights and target components; ~30% dummy players."""
    w = rng.uniform(0.1, 2.0, size=n)
    y = rng.uniform(-1.0, 1.5, size=n)
    dummies = rng.random(n) < 0.3
    w[dummies] = 0.0
    y[dummies] = 0.0
    target_norm = float(rng.uniform(0.5, 3.0))
    return w, y, target_norm, dummies


def game_arrays(w, y):
    return w * y, w * w


def test_single_player_phi_equals_value():
    w = np.array([0.7])
    y = np.array([0.9])
    num, sq = game_arrays(w, y)
    target_norm = 1.3
    phi = exact_shapley(num, sq, target_norm)
    v_full = coalition_values(num, sq, target_norm, np.array([[1.0]]))[0]
    assert phi[0] == pytest.approx(float(v_full), abs=1e-12)


def test_exact_matches_subset_formula_oracle():
    rng = np.random.default_rng(20)
    for _ in range(10):
        n = int(rng.integers(2, 8))
        w, y, target_norm, _ = random_game(rng, n)
        num, sq = game_arrays(w, y)
        phi = exact_shapley(num, sq, target_norm)
        oracle = shapley_by_subsets(
            n, lambda s: cosine_game_value(s, w, y, target_norm)
        )
        assert np.allclose(phi, oracle, atol=1e-10)


def test_efficiency_dummy_symmetry_on_50_instances():
    rng = np.random.default_rng(21)
    for _ in range(50):
        n = int(rng.integers(2, 11))
        w, y, target_norm, dummies = random_game(rng, n)
        # plant a symmetric pair: identical weight and target component
        if n >= 2:
            w[1] = w[0]
            y[1] = y[0]
            dummies[1] = dummies[0]
        num, sq = game_arrays(w, y)
        phi = exact_shapley(num, sq, target_norm)

        v_full = coalition_values(num, sq, target_norm, np.ones((1, n)))[0]
        assert abs(phi.sum() - v_full) <= 1e-9          # efficiency
        for i in np.flatnonzero(dummies):
            assert phi[i] == pytest.approx(0.0, abs=1e-12)  # dummy
        assert phi[0] == pytest.approx(phi[1], abs=1e-10)   # symmetry


def test_monte_carlo_within_tolerance_of_exact():
    rng = np.random.default_rng(22)
    for trial in range(50):
        n = int(rng.integers(2, 11))
        w, y, target_norm, _ = random_game(rng, n)
        num, sq = game_arrays(w, y)
        exact = exact_shapley(num, sq, target_norm)
        mc = sampled_shapley(num, sq, target_norm, 500, np.random.default_rng(1000 + trial))
        assert np.max(np.abs(mc - exact)) <= 0.05, trial


def test_monte_carlo_reproducible_from_seed():
    rng = np.random.default_rng(23)
    w, y, target_norm, _ = random_game(rng, 9)
    num, sq = game_arrays(w, y)
    a = sampled_shapley(num, sq, target_norm, 100, np.random.default_rng(5))
    b = sampled_shapley(num, sq, target_norm, 100, np.random.default_rng(5))
    assert np.array_equal(a, b)


def test_all_zero_game_gives_zero_phi():
    num, sq = np.zeros(4), np.zeros(4)
    assert np.array_equal(exact_shapley(num, sq, 1.0), np.zeros(4))
