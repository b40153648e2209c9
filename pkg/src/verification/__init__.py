"""Closed-form agreement checks"""

from .analytic_checks import AnalyticChecker, CheckResult, run_checks

__all__ = ['AnalyticChecker', 'CheckResult', 'run_checks']
