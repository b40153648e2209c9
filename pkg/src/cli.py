#!/usr/bin/env python3
"""
QuantumNash command line
Payoff surfaces, equilibrium reports, discord, the analytic check suite and
parameter sweeps

Exit codes: 0 success, 1 verification failure, 2 argument/spec error,
3 I/O error.
"""

import argparse
import logging
import os
import sys
from typing import Dict, List, Optional

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import DISCORD_SETTINGS, get_settings
from src.discord import ORIENTATIONS, DiscordCalculator
from src.equilibrium import find_nash_equilibria
from src.exceptions import (
    ConfigError,
    InvalidDensityMatrixError,
    NonConstantSumError,
    ParameterRangeError,
    StateSpecError,
    StorageError,
)
from src.experiments import SWEEP_FAMILIES, ExperimentRunner
from src.game import ANGLE_NAMES, PAYOFF_TABLES, QUANTITIES, build_game, compute_surface, load_game_config
from src.quantum_core.angles import parse_angle
from src.states import parse_state_spec
from src.storage import ResultStorage
from src.verification import AnalyticChecker

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

_ANGLE_ALIASES = {
    'a': 'theta_a', "a'": 'theta_a_prime', 'a_prime': 'theta_a_prime',
    'b': 'theta_b', "b'": 'theta_b_prime', 'b_prime': 'theta_b_prime',
    'theta_a': 'theta_a', "theta_a'": 'theta_a_prime', 'theta_a_prime': 'theta_a_prime',
    'theta_b': 'theta_b', "theta_b'": 'theta_b_prime', 'theta_b_prime': 'theta_b_prime',
}


def angle_name(token: str) -> str:
    """Canonical angle name from 'a', "b'", 'theta_a_prime', ..."""
    key = token.strip().lower().replace('′', "'")
    try:
        return _ANGLE_ALIASES[key]
    except KeyError:
        raise ValueError(f"Unknown angle {token!r}; expected one of {', '.join(ANGLE_NAMES)}")


def parse_fixed(text: str) -> Dict[str, float]:
    """'theta_a_prime=pi/2,theta_b_prime=pi/4' -> {name: radians}"""
    fixed = {}
    for item in text.split(','):
        if '=' not in item:
            raise ValueError(f"Fixed angle must look like name=value, got {item!r}")
        name, value = item.split('=', 1)
        fixed[angle_name(name)] = parse_angle(value)
    return fixed


def _game_from_args(args: argparse.Namespace):
    if getattr(args, 'config', None):
        return load_game_config(args.config)
    return build_game(args.state, args.payoffs)


def cmd_surface(args: argparse.Namespace) -> int:
    """Write a two-angle surface of U_A, U_B or f as CSV"""
    game = _game_from_args(args)
    sweep = tuple(angle_name(name) for name in args.sweep.split(','))
    fixed = parse_fixed(args.fixed)
    surface = compute_surface(game, args.player, sweep, fixed, args.resolution)

    storage = ResultStorage()
    path = storage.save_surface(surface, args.out or f"surface_{args.player}.csv")
    print(f"Surface of {args.player} over ({surface.axis1}, {surface.axis2}) written to {path}")
    print(f"  range: [{surface.values.min():.12g}, {surface.values.max():.12g}]")
    return EXIT_OK


def cmd_equilibria(args: argparse.Namespace) -> int:
    """Run the equilibrium search and emit the report"""
    game = _game_from_args(args)
    report = find_nash_equilibria(game, args.grid, args.threads)

    storage = ResultStorage()
    if args.out:
        path = storage.save_report(report, args.out)
        print(f"Verdict: {report.verdict} ({len(report.critical_points)} critical points), report written to {path}")
    else:
        print(storage.format_report(report))
    return EXIT_OK


def cmd_discord(args: argparse.Namespace) -> int:
    """Print discord, optimal angle and mutual information"""
    family = parse_state_spec(args.state)
    calculator = DiscordCalculator()
    result = calculator.discord(family.matrix, args.orientation, scan_azimuth=args.scan_azimuth)

    print(f"state: {family.label}")
    print(f"orientation: {result.orientation}")
    print(f"discord: {result.discord:.12g} nats")
    print(f"optimal_theta: {result.optimal_theta:.12g}")
    if args.scan_azimuth:
        print(f"optimal_phi: {result.optimal_phi:.12g}")
    print(f"mutual_information: {result.mutual_information:.12g} nats")
    print(f"j_value: {result.j_value:.12g} nats")

    storage = ResultStorage()
    if args.out:
        storage.save_report(dict(result.to_dict(), state=family.label), args.out)
    if args.profile:
        storage.save_table(calculator.discord_profile(family.matrix, orientation=args.orientation), args.profile)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the analytic check suite; exit 1 if any check fails"""
    checker = AnalyticChecker(state_spec=args.state)
    results = checker.run_all()
    for result in results:
        print(result.line())

    summary = checker.get_summary(results)
    print(f"{summary['passed']}/{summary['total']} checks passed")
    if args.out:
        ResultStorage().save_report(summary, args.out)
    if summary['failed']:
        print(f"Failing checks: {', '.join(summary['failed'])}")
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Discord and verdict over a list of family parameters"""
    values = [parse_angle(token) for token in args.values.split(',')]
    runner = ExperimentRunner(grid=args.grid, threads=args.threads)
    table = runner.run_sweep(args.family, values, args.payoffs)

    if args.out:
        path = runner.storage.save_table(table, args.out)
        print(f"Sweep of {len(table)} states written to {path}")
    else:
        print(table.to_csv(index=False, float_format='%.12g'), end='')
    return EXIT_OK


def _add_game_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--state', default='werner:0', help="state spec, e.g. werner:0.5, d2:pi/2, custom:rho.txt")
    parser.add_argument('--payoffs', default='standard', choices=sorted(PAYOFF_TABLES), help='payoff table')
    parser.add_argument('--config', help='JSON game configuration (overrides --state/--payoffs)')


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    surface = settings['surface']

    parser = argparse.ArgumentParser(prog='quantum-nash', description='Nash equilibria of quantum Bayesian games')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', action='store_true', help='debug logging')
    verbosity.add_argument('--quiet', action='store_true', help='warnings only')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('surface', help='two-angle payoff surface as CSV')
    _add_game_arguments(p)
    p.add_argument('--player', default=surface['player'], choices=QUANTITIES, help='U_A, U_B or f')
    p.add_argument('--sweep', default=','.join(surface['sweep']), help='two swept angles, e.g. theta_a,theta_b')
    p.add_argument('--fixed', default=','.join(f"{k}={v}" for k, v in surface['fixed'].items()),
                   help='the other two angles, e.g. theta_a_prime=pi/2,theta_b_prime=pi/2')
    p.add_argument('--resolution', type=int, default=surface['resolution'], help='samples per axis')
    p.add_argument('--out', help='CSV path')
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser('equilibria', help='stationary points and Nash verdict')
    _add_game_arguments(p)
    p.add_argument('--grid', type=int, default=settings['equilibrium']['grid_resolution'], help='grid points per axis')
    p.add_argument('--threads', type=int, default=settings['threads'], help='worker threads')
    p.add_argument('--out', help='JSON report path (stdout if omitted)')
    p.set_defaults(func=cmd_equilibria)

    p = sub.add_parser('discord', help='one-way quantum discord')
    p.add_argument('--state', required=True, help='state spec')
    p.add_argument('--orientation', default=DISCORD_SETTINGS['orientation'], choices=ORIENTATIONS)
    p.add_argument('--scan-azimuth', action='store_true', help='also minimise over the azimuthal angle')
    p.add_argument('--profile', help='CSV path for I − J over the θ grid')
    p.add_argument('--out', help='JSON path')
    p.set_defaults(func=cmd_discord)

    p = sub.add_parser('verify', help='closed-form agreement checks')
    p.add_argument('--state', help='extra state spec to validate')
    p.add_argument('--out', help='JSON summary path')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('sweep', help='discord and verdict across a family parameter')
    p.add_argument('--family', required=True, choices=SWEEP_FAMILIES)
    p.add_argument('--values', required=True, help='comma-separated parameters, π fractions allowed')
    p.add_argument('--payoffs', default='standard', choices=sorted(PAYOFF_TABLES))
    p.add_argument('--grid', type=int, default=21, help='grid points per axis')
    p.add_argument('--threads', type=int, default=settings['threads'], help='worker threads')
    p.add_argument('--out', help='CSV path (stdout if omitted)')
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, configure logging and dispatch"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    level = get_settings()['log_level']
    if args.verbose:
        level = 'DEBUG'
    elif args.quiet:
        level = 'WARNING'
    logging.basicConfig(level=getattr(logging, level, logging.INFO),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    try:
        return args.func(args)
    except StorageError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except (StateSpecError, ParameterRangeError, ConfigError, InvalidDensityMatrixError,
            NonConstantSumError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
