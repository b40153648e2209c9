"""
Numerical settings for QuantumNash
Contains every tolerance, grid size and output default used by the package
"""

import os

from dotenv import load_dotenv

load_dotenv()

TOLERANCES = {
    'hermitian': 1e-12,
    'trace': 1e-12,
    'positivity': -1e-10,
    'probability': 1e-12,
    'zero_branch': 1e-12,
    'discord_floor': 1e-8,
    'constant_sum': 1e-12,
}

DISCORD_SETTINGS = {
    'grid_points': 721,
    'refine_xatol': 1e-9,
    'azimuth_points': 181,
    'orientation': 'measure_B',
}

EQUILIBRIUM_SETTINGS = {
    'grid_resolution': 41,
    'jacobian_step': 1e-4,
    'hessian_step': 1e-3,
    'stationarity_tolerance': 1e-8,
    'hessian_zero_band': 1e-6,
    'flat_probe_resolution': 11,
    'flat_tolerance': 1e-10,
    'seed_fraction': 0.25,
    'max_seeds': 256,
    'seed_blocks': 4,
    'max_iterations': 200,
    'dedup_distance': 1e-4,
    'probe_count': 360,
    'probe_slack': 1e-9,
}

SURFACE_SETTINGS = {
    'resolution': 101,
    'sweep': ('theta_a', 'theta_b'),
    'fixed': {'theta_a_prime': 'pi/2', 'theta_b_prime': 'pi/2'},
    'player': 'A',
}

OUTPUT_SETTINGS = {
    'output_dir': 'results',
    'significant_digits': 12,
}

# Environment overrides (see .env.example)
ENV_OVERRIDES = {
    'threads': 'QNASH_THREADS',
    'grid_resolution': 'QNASH_GRID',
    'output_dir': 'QNASH_OUTPUT_DIR',
    'log_level': 'LOG_LEVEL',
}


def get_settings() -> dict:
    """
    Merge the defaults above with environment overrides

    Returns:
        Dictionary with keys 'tolerances', 'discord', 'equilibrium', 'surface',
        'output', 'threads' and 'log_level'
    """
    equilibrium = dict(EQUILIBRIUM_SETTINGS)
    output = dict(OUTPUT_SETTINGS)

    grid = os.getenv(ENV_OVERRIDES['grid_resolution'])
    if grid:
        equilibrium['grid_resolution'] = int(grid)

    output_dir = os.getenv(ENV_OVERRIDES['output_dir'])
    if output_dir:
        output['output_dir'] = output_dir

    threads = os.getenv(ENV_OVERRIDES['threads'])

    return {
        'tolerances': dict(TOLERANCES),
        'discord': dict(DISCORD_SETTINGS),
        'equilibrium': equilibrium,
        'surface': dict(SURFACE_SETTINGS),
        'output': output,
        'threads': int(threads) if threads else (os.cpu_count() or 1),
        'log_level': os.getenv(ENV_OVERRIDES['log_level'], 'INFO').upper(),
    }
