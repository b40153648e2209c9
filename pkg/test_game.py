#!/usr/bin/env python3
"""Tests for the Bayesian measurement game and payoff surfaces"""

import json
import os
import sys
import tempfile

import numpy as np
import pytest

# Add project root to path
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from src.exceptions import ConfigError, NonConstantSumError, ParameterRangeError
from src.game import (
    Priors,
    StrategyProfile,
    biased_payoffs,
    block_tables,
    build_game,
    compute_surface,
    conditional_prob,
    correlation_gap,
    deviation_gap,
    evaluate_batch,
    expected_payoff,
    explicit_payoffs,
    f_function,
    load_game_config,
    outcome_probabilities,
    save_game_config,
    standard_payoffs,
)
from src.quantum_core.angles import TWO_PI
from src.states import d2, state_zoo, werner

OUTCOME_PAIRS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def _profiles(count, seed):
    return np.random.default_rng(seed).uniform(0, TWO_PI, size=(count, 4))


def test_standard_table():
    table = standard_payoffs()
    assert table.entry('a', 'b', 1, 1, 'A') == 1.0
    assert table.entry('a', "b'", -1, 1, 'B') == 1.0
    assert table.entry("a'", "b'", 1, 1, 'A') == 0.0
    assert table.entry("a'", "b'", 1, -1, 'A') == 1.0
    assert np.allclose(table.cell_sums, 1.0)
    assert table.constant == 1.0


def test_biased_table():
    table = biased_payoffs()
    assert table.entry('a', 'b', -1, -1, 'A') == 2.0
    assert table.entry('a', 'b', -1, -1, 'B') == -1.0
    assert table.constant == 1.0
    changed = np.argwhere(table.entries != standard_payoffs().entries)
    assert {tuple(index[:4]) for index in changed} == {(0, 0, 1, 1)}


def test_explicit_payoffs():
    table = explicit_payoffs(standard_payoffs().to_list())
    assert np.array_equal(table.entries, standard_payoffs().entries)
    with pytest.raises(ConfigError):
        explicit_payoffs([[1, 0]] * 15)
    with pytest.raises(ConfigError):
        explicit_payoffs([['x', 0]] * 16)


def test_priors_validation():
    assert Priors().is_uniform
    skewed = Priors.from_dict({'a,b': 0.5, "a',b'": 0.5})
    assert skewed.p[0, 0] == 0.5 and skewed.p[1, 0] == 0.0
    with pytest.raises(ConfigError):
        Priors(np.full((2, 2), 0.3))
    with pytest.raises(ConfigError):
        Priors(np.array([[1.5, -0.5], [0.0, 0.0]]))
    with pytest.raises(ConfigError):
        Priors.from_dict({'a': 1.0})


def test_strategy_profile_range():
    with pytest.raises(ParameterRangeError):
        StrategyProfile(0.0, 7.0, 0.0, 0.0)
    profile = StrategyProfile.from_array([-0.5, 0.0, TWO_PI + 0.25, 1.0])
    assert abs(profile.theta_a - (TWO_PI - 0.5)) < 1e-12
    assert abs(profile.theta_b - 0.25) < 1e-12


def test_maximally_mixed_is_uniform():
    rho = werner(0.0).matrix
    for a, b in _profiles(100, 1)[:, :2]:
        for s, t in OUTCOME_PAIRS:
            assert abs(conditional_prob(rho, a, b, s, t) - 0.25) < 1e-12


def test_quantum_classical_closed_forms():
    grid = np.linspace(0, TWO_PI, 20)
    flat, parity = d2(0.0).matrix, d2(np.pi).matrix
    for a in grid:
        for b in grid:
            for s, t in OUTCOME_PAIRS:
                assert abs(conditional_prob(flat, a, b, s, t) - 0.25 * (1 + t * np.cos(b))) < 1e-12
                expected = 0.25 * (1 + s * t * np.cos(a) * np.cos(b))
                assert abs(conditional_prob(parity, a, b, s, t) - expected) < 1e-12


def test_singlet_correlations():
    rho = werner(1.0).matrix
    for a, b in _profiles(100, 2)[:, :2]:
        for s, t in OUTCOME_PAIRS:
            assert abs(conditional_prob(rho, a, b, s, t) - 0.25 * (1 - s * t * np.cos(a - b))) < 1e-12


def test_vectorised_probabilities_match_trace():
    rng = np.random.default_rng(3)
    for family in state_zoo():
        game = build_game(family)
        a, b = rng.uniform(0, TWO_PI, size=2)
        table = outcome_probabilities(game, a, b)
        assert abs(table.sum() - 1) < 1e-12
        for i, s in enumerate((1, -1)):
            for j, t in enumerate((1, -1)):
                assert abs(table[i, j] - conditional_prob(family.matrix, a, b, s, t)) < 1e-12


def test_constant_sum_on_every_state():
    profiles = _profiles(200, 4)
    for payoffs in ('standard', 'biased'):
        for family in state_zoo():
            game = build_game(family, payoffs)
            total = evaluate_batch(game, profiles, 'A') + evaluate_batch(game, profiles, 'B')
            assert np.max(np.abs(total - 1)) < 1e-12


def test_biased_closed_form():
    game = build_game(d2(0.0), 'biased')
    for a, a_prime, b, b_prime in _profiles(50, 5):
        profile = StrategyProfile(a, a_prime, b, b_prime)
        expected = 0.5 + (1 - np.cos(b)) / 16
        assert abs(expected_payoff(game, profile, 'A') - expected) < 1e-12
        assert abs(expected_payoff(game, profile, 'B') - (1 - expected)) < 1e-12


def test_f_function_matches_explicit_sum():
    game = build_game(werner(0.7))
    profile = StrategyProfile(0.3, 2.2, 4.0, 5.5)
    angles = profile.as_array()
    direct = 0.0
    for i in range(2):
        for j in range(2):
            for si, s in enumerate((1, -1)):
                for ti, t in enumerate((1, -1)):
                    p = conditional_prob(game.state, angles[i], angles[2 + j], s, t)
                    direct += 0.25 * standard_payoffs().entries[i, j, si, ti, 0] * p
    assert abs(f_function(game, profile) - (direct - 0.5)) < 1e-12

    gaps = correlation_gap(game, profile)
    chsh = (gaps['a,b'] + gaps["a,b'"] + gaps["a',b"] - gaps["a',b'"]) / 8
    assert abs(f_function(game, profile) - chsh) < 1e-12


def test_singlet_f_vanishes_on_aligned_profile():
    game = build_game(werner(1.0))
    assert abs(f_function(game, StrategyProfile(0.0, np.pi / 2, 0.0, np.pi / 2))) < 1e-12


def test_werner_rotational_symmetry():
    game = build_game(werner(0.6))
    profiles = _profiles(50, 6)
    shifted = np.mod(profiles + 1.234, TWO_PI)
    assert np.allclose(evaluate_batch(game, profiles, 'A'), evaluate_batch(game, shifted, 'A'), atol=1e-12)


def test_f_requires_constant_sum():
    entries = standard_payoffs().to_list()
    entries[5] = [3.0, 0.0]
    game = build_game(werner(0.5), explicit_payoffs(entries))
    with pytest.raises(NonConstantSumError):
        f_function(game, StrategyProfile(0.0, 0.0, 0.0, 0.0))


def test_deviation_gap():
    rng = np.random.default_rng(7)
    assert abs(deviation_gap(werner(0.0).matrix, 0.4, 2.5, 1.0, 1, -1)) < 1e-12
    assert abs(deviation_gap(d2(0.0).matrix, 0.4, 2.5, 1.0, -1, 1)) < 1e-12
    for family in state_zoo():
        a, a_star, b = rng.uniform(0, TWO_PI, size=3)
        assert abs(deviation_gap(family.matrix, a, a, b, 1, 1)) < 1e-12
        expected = conditional_prob(family.matrix, a, b, -1, 1) - conditional_prob(family.matrix, a_star, b, -1, 1)
        assert abs(deviation_gap(family.matrix, a, a_star, b, -1, 1) - expected) < 1e-12


def test_block_tables_sum_to_batch():
    game = build_game(d2(np.pi / 2), 'biased')
    thetas = np.linspace(0, TWO_PI, 7, endpoint=False)
    g = block_tables(game, thetas, thetas, 'A')
    i, i_prime, j, j_prime = 1, 4, 2, 6
    total = g[0, 0, i, j] + g[0, 1, i, j_prime] + g[1, 0, i_prime, j] + g[1, 1, i_prime, j_prime]
    angles = thetas[[i, i_prime, j, j_prime]]
    assert abs(total - evaluate_batch(game, angles, 'A')) < 1e-12


def test_game_config_file():
    with tempfile.TemporaryDirectory() as tmp:
        priors = Priors.from_dict({'a,b': 0.4, "a,b'": 0.1, "a',b": 0.2, "a',b'": 0.3})
        game = build_game('werner:0.5', 'biased', priors)
        path = save_game_config(game, os.path.join(tmp, 'game.json'))
        loaded = load_game_config(path)
        assert loaded.describe() == game.describe()
        assert np.allclose(loaded.state, game.state)

        broken = os.path.join(tmp, 'broken.json')
        with open(broken, 'w') as handle:
            handle.write('{"state": ')
        with pytest.raises(ConfigError):
            load_game_config(broken)

        stateless = os.path.join(tmp, 'stateless.json')
        with open(stateless, 'w') as handle:
            json.dump({'payoffs': 'standard'}, handle)
        with pytest.raises(ConfigError):
            load_game_config(stateless)

        with pytest.raises(ConfigError):
            load_game_config(os.path.join(tmp, 'missing.json'))


def test_surface_constant_sum_and_shape():
    game = build_game(d2(0.0), 'biased')
    surface_a = compute_surface(game, 'A', ('theta_b', 'theta_b_prime'),
                                {'theta_a': 0.0, 'theta_a_prime': 1.0}, resolution=21)
    surface_b = compute_surface(game, 'B', ('theta_b', 'theta_b_prime'),
                                {'theta_a': 0.0, 'theta_a_prime': 1.0}, resolution=21)
    assert surface_a.values.shape == (21, 21)
    assert np.allclose(surface_a.values + surface_b.values, 1.0, atol=1e-12)
    assert abs(surface_a.values[0, 0] - 0.5) < 1e-12
    assert abs(surface_a.values[10, 0] - 0.625) < 1e-12
    frame = surface_a.to_frame()
    assert list(frame.columns) == ['axis1', 'axis2', 'value']
    assert len(frame) == 441


def test_surface_rejects_bad_sweep():
    game = build_game(werner(0.0))
    surface = compute_surface(game, resolution=11)
    assert np.allclose(surface.values, 0.5)
    with pytest.raises(ValueError):
        compute_surface(game, 'A', ('theta_a', 'theta_a'), {'theta_b': 0.0, 'theta_b_prime': 0.0})
    with pytest.raises(ValueError):
        compute_surface(game, 'A', ('theta_a', 'theta_c'), {'theta_b': 0.0, 'theta_b_prime': 0.0})


def main():
    """Run all tests"""
    print("=" * 60)
    print("Game Tests")
    print("=" * 60)

    tests = [(name, fn) for name, fn in globals().items() if name.startswith('test_') and callable(fn)]
    results = []
    for name, fn in tests:
        try:
            fn()
            print(f"✅ {name}")
            results.append((name, True))
        except Exception as e:
            print(f"❌ {name}: {type(e).__name__}: {e}")
            results.append((name, False))

    passed = sum(1 for _, ok in results if ok)
    print("\n" + "=" * 60)
    print(f"Passed: {passed}/{len(results)}")
    print("=" * 60)
    return passed == len(results)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
