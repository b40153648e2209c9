#!/usr/bin/env python3
"""Tests for the command line: outputs, determinism and exit codes"""

import contextlib
import io
import json
import os
import sys
import tempfile

import numpy as np
import pandas as pd

# Add project root to path
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from src.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, angle_name, main, parse_fixed


def _run(argv):
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, buffer.getvalue()


def test_angle_helpers():
    assert angle_name("a'") == 'theta_a_prime'
    assert angle_name('B') == 'theta_b'
    fixed = parse_fixed('theta_a_prime=pi/2,b\'=pi/4')
    assert abs(fixed['theta_a_prime'] - np.pi / 2) < 1e-15
    assert abs(fixed['theta_b_prime'] - np.pi / 4) < 1e-15


def test_surface_csvs_are_complementary():
    with tempfile.TemporaryDirectory() as tmp:
        paths = {}
        for player in ('A', 'B'):
            paths[player] = os.path.join(tmp, f'surface_{player}.csv')
            code, _ = _run(['surface', '--state', 'd2:pi/2', '--payoffs', 'biased', '--player', player,
                            '--resolution', '15', '--out', paths[player]])
            assert code == EXIT_OK
        a = pd.read_csv(paths['A'])
        b = pd.read_csv(paths['B'])
        assert list(a.columns) == ['axis1', 'axis2', 'value']
        assert len(a) == 225
        assert np.allclose(a['value'] + b['value'], 1.0, atol=1e-10)


def test_surface_output_is_deterministic():
    with tempfile.TemporaryDirectory() as tmp:
        first, second = os.path.join(tmp, 'one.csv'), os.path.join(tmp, 'two.csv')
        for path in (first, second):
            code, _ = _run(['surface', '--state', 'werner:0.5', '--sweep', "a',b'",
                            '--fixed', 'a=0,b=pi/3', '--resolution', '9', '--out', path])
            assert code == EXIT_OK
        with open(first, 'rb') as one, open(second, 'rb') as two:
            assert one.read() == two.read()


def test_equilibria_report():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'report.json')
        code, _ = _run(['equilibria', '--state', 'werner:0', '--grid', '11', '--threads', '2', '--out', path])
        assert code == EXIT_OK
        with open(path) as handle:
            report = json.load(handle)
        assert report['verdict'] == 'weak_nash_flat'
        assert report['flat_surface'] is True


def test_equilibria_from_config():
    with tempfile.TemporaryDirectory() as tmp:
        config = os.path.join(tmp, 'game.json')
        with open(config, 'w') as handle:
            json.dump({'state': 'd2:0', 'payoffs': 'standard', 'priors': 'uniform'}, handle)
        code, output = _run(['equilibria', '--config', config, '--grid', '11', '--threads', '2'])
        assert code == EXIT_OK
        assert json.loads(output)['verdict'] == 'weak_nash_flat'


def test_discord_command():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'discord.json')
        profile = os.path.join(tmp, 'profile.csv')
        code, output = _run(['discord', '--state', 'werner:1', '--out', path, '--profile', profile])
        assert code == EXIT_OK
        assert 'discord:' in output
        with open(path) as handle:
            result = json.load(handle)
        assert abs(result['discord'] - np.log(2)) < 1e-6
        assert result['state'] == 'werner:1'
        assert len(pd.read_csv(profile)) == 721


def test_sweep_command():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'sweep.csv')
        code, _ = _run(['sweep', '--family', 'werner', '--values', '0,0.5', '--grid', '11',
                        '--threads', '2', '--out', path])
        assert code == EXIT_OK
        table = pd.read_csv(path)
        assert len(table) == 2
        assert table['verdict'].iloc[0] == 'weak_nash_flat'
        assert {'discord_B', 'discord_A', 'regime'} <= set(table.columns)


def test_verify_passes():
    code, output = _run(['verify'])
    assert code == EXIT_OK
    assert '[FAIL]' not in output


def test_verify_flags_corrupted_state():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'rho.txt')
        with open(path, 'w') as handle:
            handle.write(' '.join(['0.5', '0', '0', '0', '0', '0.5', '0', '0',
                                   '0', '0', '0.5', '0', '0', '0', '0', '0.5']))
        code, output = _run(['verify', '--state', f'custom:{path}'])
        assert code == EXIT_VERIFICATION
        assert 'density_matrices' in output.split('Failing checks:')[1]


def test_usage_errors():
    assert _run(['surface', '--state', 'ghz:1'])[0] == EXIT_USAGE
    assert _run(['surface', '--state', 'werner:3'])[0] == EXIT_USAGE
    assert _run(['surface', '--payoffs', 'nonsense'])[0] == EXIT_USAGE
    assert _run(['surface', '--sweep', 'a,a'])[0] == EXIT_USAGE
    assert _run(['equilibria', '--grid', '3'])[0] == EXIT_USAGE
    assert _run([])[0] == EXIT_USAGE


def test_unwritable_output():
    with tempfile.TemporaryDirectory() as tmp:
        blocker = os.path.join(tmp, 'blocker')
        with open(blocker, 'w') as handle:
            handle.write('not a directory')
        code, _ = _run(['surface', '--resolution', '5', '--out', os.path.join(blocker, 'surface.csv')])
        assert code == EXIT_IO


def main_runner():
    """Run all tests"""
    print("=" * 60)
    print("Command Line Tests")
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
    success = main_runner()
    sys.exit(0 if success else 1)
