#!/usr/bin/env python3
"""
Experiment Runner Script
Run this script to reproduce every scenario and the Werner/d1 sweeps
"""

import logging
import os
import sys

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Add project root to path
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from config.settings import get_settings
from src.experiments import ExperimentRunner
from src.storage import ResultStorage


def main():
    """Main function to run all experiments"""
    settings = get_settings()
    logging.basicConfig(level=getattr(logging, settings['log_level'], logging.INFO))

    grid = settings['equilibrium']['grid_resolution']
    output_dir = settings['output']['output_dir']

    print("=" * 60)
    print("QuantumNash Experiments")
    print("=" * 60)
    print(f"Grid resolution: {grid} per axis ({grid ** 4} points)")
    print(f"Threads: {settings['threads']}")
    print(f"Output directory: {output_dir}")
    print("=" * 60)
    print()

    runner = ExperimentRunner(grid=grid, threads=settings['threads'], storage=ResultStorage(output_dir))
    summary = runner.run_all(save=True)

    print("\n" + "=" * 60)
    print("Experiment Summary")
    print("=" * 60)
    print(f"Scenarios: {summary['scenario_count']}")
    print(f"Sweep points: {summary['sweep_count']}")
    print("\nVerdicts:")
    for verdict, count in summary['verdict_counts'].items():
        print(f"  - {verdict}: {count}")
    print("\nScenarios:")
    for row in summary['scenarios']:
        mark = '✅' if row['verdict'] == row['expected'] else '❌'
        print(f"  {mark} {row['scenario']:<22} {row['payoffs']:<9} {row['state']:<24} {row['verdict']}")
    print("=" * 60)

    return 1 if summary['mismatches'] else 0


if __name__ == '__main__':
    sys.exit(main())
