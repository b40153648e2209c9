"""
Nash Equilibrium Search Module
Scans the four-angle torus for stationary points of f, refines them,
classifies them by the Hessian diagonal and checks every candidate against
unilateral deviations
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import ndimage
from scipy.optimize import minimize
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from config.settings import EQUILIBRIUM_SETTINGS, get_settings
from src.exceptions import ParameterRangeError
from src.game import (
    GameInstance,
    StrategyProfile,
    block_tables,
    evaluate_batch,
    require_constant_sum,
)
from src.quantum_core.angles import TWO_PI, torus_distance, wrap_angle

from .derivatives import classify, hessian, jacobian, objective_function

logger = logging.getLogger(__name__)

VERDICTS = ('strict_nash_found', 'weak_nash_found', 'weak_nash_flat', 'none')

MIN_RESOLUTION = 5


@dataclass
class CriticalPoint:
    """
    A refined stationary point of f

    Attributes:
        profile: the four angles
        jacobian_norm: ‖J‖∞ after refinement
        hessian_diag: ∂²f/∂θ_k² for k = a, a′, b, b′
        classification: final label after best-response checks
        hessian_classification: label from the diagonal-sign rule alone
        hessian: full finite-difference Hessian (diagnostic)
        u_a, u_b, f: payoffs and minimax value at the point
        gains: best unilateral improvement per coordinate
        verified: every gain within the probe slack
        multiplicity: refined points of the same critical set and label
            that this point stands for
    """
    profile: StrategyProfile
    jacobian_norm: float
    hessian_diag: Tuple[float, float, float, float]
    classification: str
    hessian_classification: str = ''
    hessian: np.ndarray = field(default_factory=lambda: np.zeros((4, 4)), repr=False)
    u_a: float = float('nan')
    u_b: float = float('nan')
    f: float = float('nan')
    gains: Tuple[float, float, float, float] = (float('nan'),) * 4
    verified: bool = False
    multiplicity: int = 1

    def to_dict(self) -> Dict:
        return {
            'profile': self.profile.to_dict(),
            'jacobian_norm': self.jacobian_norm,
            'hessian_diag': list(self.hessian_diag),
            'hessian': np.asarray(self.hessian).tolist(),
            'classification': self.classification,
            'hessian_classification': self.hessian_classification,
            'U_A': self.u_a,
            'U_B': self.u_b,
            'f': self.f,
            'gains': list(self.gains),
            'verified': self.verified,
            'multiplicity': self.multiplicity,
        }


@dataclass
class EquilibriumReport:
    """Outcome of the equilibrium search for one game"""
    game: Dict
    resolution: int
    critical_points: List[CriticalPoint]
    verdict: str
    flat_surface: bool
    seeds: int = 0

    def nash_points(self, classification: Optional[str] = None) -> List[CriticalPoint]:
        wanted = (classification,) if classification else ('strict_nash', 'weak_nash')
        return [point for point in self.critical_points if point.classification in wanted]

    def to_dict(self) -> Dict:
        return {
            'game': self.game,
            'resolution': self.resolution,
            'verdict': self.verdict,
            'flat_surface': self.flat_surface,
            'seeds': self.seeds,
            'critical_points': [point.to_dict() for point in self.critical_points],
        }


def _thread_count(threads: Optional[int]) -> int:
    return max(1, int(threads if threads else get_settings()['threads']))


def is_flat(game: GameInstance,
            resolution: int = EQUILIBRIUM_SETTINGS['flat_probe_resolution'],
            tolerance: float = EQUILIBRIUM_SETTINGS['flat_tolerance']) -> bool:
    """Peak-to-peak of f over a coarse probe grid below tolerance"""
    probes = np.linspace(0.0, TWO_PI, resolution, endpoint=False)
    g = block_tables(game, probes, probes, 'f')
    # f[i, i′, j, j′] = g_ab[i, j] + g_ab′[i, j′] + g_a′b[i′, j] + g_a′b′[i′, j′]
    surface = (g[0, 0][:, None, :, None] + g[0, 1][:, None, None, :]
               + g[1, 0][None, :, :, None] + g[1, 1][None, :, None, :])
    spread = float(np.ptp(surface))
    logger.debug(f"Flat probe on {resolution}^4 grid: peak-to-peak {spread:.3e}")
    return spread < tolerance


def jacobian_norm_grid(game: GameInstance, resolution: int, threads: Optional[int] = None,
                       step: float = EQUILIBRIUM_SETTINGS['jacobian_step']) -> Tuple[np.ndarray, np.ndarray]:
    """
    Euclidean ‖J‖ on the resolution^4 grid over [0, 2π)^4

    f splits into four two-angle blocks, so each partial derivative is a sum
    of two block-table differences; slabs along θ_a are evaluated in a
    thread pool.

    Returns:
        (thetas, norms) with norms of shape (resolution,) * 4
    """
    thetas = np.linspace(0.0, TWO_PI, resolution, endpoint=False)
    d_alpha = (block_tables(game, thetas + step, thetas) - block_tables(game, thetas - step, thetas)) / (2 * step)
    d_beta = (block_tables(game, thetas, thetas + step) - block_tables(game, thetas, thetas - step)) / (2 * step)

    def slab(rows: np.ndarray) -> np.ndarray:
        j_a = d_alpha[0, 0][rows][:, None, :, None] + d_alpha[0, 1][rows][:, None, None, :]
        j_a_prime = d_alpha[1, 0][None, :, :, None] + d_alpha[1, 1][None, :, None, :]
        j_b = d_beta[0, 0][rows][:, None, :, None] + d_beta[1, 0][None, :, :, None]
        j_b_prime = d_beta[0, 1][rows][:, None, None, :] + d_beta[1, 1][None, :, None, :]
        shape = (len(rows), resolution, resolution, resolution)
        total = np.zeros(shape)
        for component in (j_a, j_a_prime, j_b, j_b_prime):
            total += np.broadcast_to(component, shape) ** 2
        return np.sqrt(total)

    workers = _thread_count(threads)
    chunks = [chunk for chunk in np.array_split(np.arange(resolution), min(workers * 4, resolution)) if chunk.size]
    logger.info(f"Scanning {resolution ** 4} grid points on {workers} thread(s)")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        norms = np.concatenate(list(executor.map(slab, chunks)), axis=0)
    return thetas, norms


def _local_minima(norms: np.ndarray, fraction: float) -> np.ndarray:
    mask = norms <= fraction * norms.max()
    for axis in range(norms.ndim):
        for shift in (1, -1):
            mask &= norms <= np.roll(norms, shift, axis=axis)
    return mask


def label_minima(mask: np.ndarray) -> np.ndarray:
    """
    Label connected groups of candidate cells on the periodic grid

    Cells touching along any axis or diagonal share a label, including
    across the 0/2π seam. Non-candidates get 0.
    """
    structure = ndimage.generate_binary_structure(mask.ndim, mask.ndim)
    labels, count = ndimage.label(mask, structure=structure)
    if count == 0:
        return labels

    other_axes = tuple(range(mask.ndim - 1))
    pairs = [np.empty((0, 2), dtype=labels.dtype)]
    for axis in range(mask.ndim):
        last = np.take(labels, -1, axis=axis)
        first = np.take(labels, 0, axis=axis)
        for offset in itertools.product((-1, 0, 1), repeat=mask.ndim - 1):
            shifted = np.roll(first, offset, axis=other_axes)
            touching = (last > 0) & (shifted > 0)
            pairs.append(np.stack([last[touching], shifted[touching]], axis=1))
    pairs = np.unique(np.concatenate(pairs), axis=0)

    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(count + 1, count + 1))
    _, merged = connected_components(graph, directed=False)
    return np.where(labels > 0, merged[labels] + 1, 0)


def _rank_in_runs(keys: np.ndarray) -> np.ndarray:
    # position of each entry inside its run of equal keys (keys already sorted)
    positions = np.arange(keys.size)
    starts = np.r_[True, keys[1:] != keys[:-1]] if keys.size else np.empty(0, dtype=bool)
    return positions - np.maximum.accumulate(np.where(starts, positions, 0))


def _seed_indices(norms: np.ndarray, labels: np.ndarray, max_seeds: int, blocks: int) -> np.ndarray:
    """
    Flat indices of the kept seeds

    Every connected group gets one seed before any group gets a second;
    inside a group, coarse torus blocks take turns so that long critical
    sets are covered end to end. Ties go to the lower ‖J‖.
    """
    candidates = np.flatnonzero(labels)
    values = norms.ravel()[candidates]
    groups = labels.ravel()[candidates].astype(np.int64)
    coarse = tuple(c * blocks // n for c, n in zip(np.unravel_index(candidates, norms.shape), norms.shape))
    block = groups * blocks ** norms.ndim + np.ravel_multi_index(coarse, (blocks,) * norms.ndim)

    by_block = np.lexsort((values, block))
    block_rank = np.empty(candidates.size, dtype=np.int64)
    block_rank[by_block] = _rank_in_runs(block[by_block])

    by_group = np.lexsort((values, block_rank, groups))
    group_rank = np.empty(candidates.size, dtype=np.int64)
    group_rank[by_group] = _rank_in_runs(groups[by_group])

    return candidates[np.lexsort((values, group_rank))[:max_seeds]]


def select_seeds(thetas: np.ndarray, norms: np.ndarray,
                 fraction: float = EQUILIBRIUM_SETTINGS['seed_fraction'],
                 max_seeds: int = EQUILIBRIUM_SETTINGS['max_seeds'],
                 blocks: int = EQUILIBRIUM_SETTINGS['seed_blocks']) -> np.ndarray:
    """
    Grid points whose ‖J‖ is a torus local minimum below fraction × max ‖J‖

    When there are more than max_seeds such points, the kept ones are
    spread over every connected group of minima rather than taken by ‖J‖
    alone.

    Returns:
        Array (k, 4) of seed angles, k ≤ max_seeds
    """
    return _seeds_with_groups(thetas, norms, fraction, max_seeds, blocks)[0]


def _seeds_with_groups(thetas, norms, fraction, max_seeds, blocks) -> Tuple[np.ndarray, np.ndarray]:
    labels = label_minima(_local_minima(norms, fraction))
    chosen = _seed_indices(norms, labels, max_seeds, blocks)
    logger.debug(f"{np.count_nonzero(labels)} local minima of ‖J‖ in {np.unique(labels).size - 1} groups, "
                 f"keeping {chosen.size}")
    if not chosen.size:
        return np.empty((0, 4)), np.empty(0, dtype=np.int64)
    indices = np.unravel_index(chosen, norms.shape)
    return np.stack([thetas[i] for i in indices], axis=-1), labels.ravel()[chosen]


def refine_critical_point(game: GameInstance, seed,
                          tolerance: float = EQUILIBRIUM_SETTINGS['stationarity_tolerance'],
                          max_iterations: int = EQUILIBRIUM_SETTINGS['max_iterations']) -> Tuple[np.ndarray, float, bool]:
    """
    Drive the Jacobian to zero from a seed

    Damped Newton steps solve H·δ = −J in the least-squares sense and halve
    until ‖J‖ decreases, continuing below the tolerance while ‖J‖ still
    falls. If Newton stalls short of the tolerance, Powell minimises ‖J‖².

    Returns:
        (angles wrapped onto [0, 2π), ‖J‖∞, converged)
    """
    f = objective_function(game)
    x = np.asarray(seed.as_array() if isinstance(seed, StrategyProfile) else seed, dtype=float)
    grad = jacobian(f, x)
    polish = tolerance * 1e-3
    stalled = False

    for _ in range(max_iterations):
        if np.max(np.abs(grad)) < polish:
            break
        step = np.linalg.lstsq(hessian(f, x), -grad, rcond=None)[0]
        current = np.linalg.norm(grad)
        damping = 1.0
        while damping > 1e-6:
            candidate = x + damping * step
            candidate_grad = jacobian(f, candidate)
            if np.linalg.norm(candidate_grad) < current:
                x, grad = candidate, candidate_grad
                break
            damping /= 2
        else:
            stalled = True
            break

    if np.max(np.abs(grad)) >= tolerance:
        if stalled:
            logger.debug(f"Newton stalled at ‖J‖∞={np.max(np.abs(grad)):.3e}, switching to Powell")
        result = minimize(lambda y: float(np.sum(jacobian(f, y) ** 2)), x, method='Powell',
                          options={'xtol': 1e-12, 'ftol': 1e-24, 'maxfev': 20 * max_iterations})
        fallback_grad = jacobian(f, result.x)
        if np.linalg.norm(fallback_grad) < np.linalg.norm(grad):
            x, grad = result.x, fallback_grad

    norm = float(np.max(np.abs(grad)))
    return wrap_angle(x), norm, norm < tolerance


def best_response_gain(game: GameInstance, profile: StrategyProfile,
                       probe_count: int = EQUILIBRIUM_SETTINGS['probe_count']) -> np.ndarray:
    """
    Largest payoff improvement from a unilateral change of each angle

    Alice's angles are judged on U_A, Bob's on U_B. Probes are uniformly
    spaced over [0, 2π).

    Returns:
        Four gains; non-positive means no probe helps
    """
    x = profile.as_array()
    probes = np.linspace(0.0, TWO_PI, probe_count, endpoint=False)
    gains = np.empty(4)
    for k in range(4):
        player = 'A' if k < 2 else 'B'
        deviations = np.tile(x, (probe_count, 1))
        deviations[:, k] = probes
        baseline = float(evaluate_batch(game, x, player))
        gains[k] = float(np.max(evaluate_batch(game, deviations, player))) - baseline
    return gains


def verify_nash_inequalities(game: GameInstance, profile: StrategyProfile,
                             probe_count: int = EQUILIBRIUM_SETTINGS['probe_count'],
                             slack: float = EQUILIBRIUM_SETTINGS['probe_slack']) -> bool:
    """True iff no probed unilateral deviation gains more than slack"""
    return bool(np.all(best_response_gain(game, profile, probe_count) <= slack))


def describe_point(game: GameInstance, angles: np.ndarray, jacobian_norm: float,
                   probe_count: int = EQUILIBRIUM_SETTINGS['probe_count'],
                   slack: float = EQUILIBRIUM_SETTINGS['probe_slack']) -> CriticalPoint:
    """Hessian, payoffs, classification and best-response check at a point"""
    profile = StrategyProfile.from_array(angles)
    full = hessian(game, profile)
    diagonal = np.diag(full).copy()
    by_hessian = classify(diagonal)
    gains = best_response_gain(game, profile, probe_count)
    verified = bool(np.all(gains <= slack))

    label = by_hessian
    if by_hessian != 'not_nash' and not verified:
        logger.debug(f"{by_hessian} candidate at {profile.to_dict()} fails best-response probing")
        label = 'not_nash'

    x = profile.as_array()
    return CriticalPoint(
        profile=profile,
        jacobian_norm=float(jacobian_norm),
        hessian_diag=tuple(float(v) for v in diagonal),
        classification=label,
        hessian_classification=by_hessian,
        hessian=full,
        u_a=float(evaluate_batch(game, x, 'A')),
        u_b=float(evaluate_batch(game, x, 'B')),
        f=float(evaluate_batch(game, x, 'f')),
        gains=tuple(float(g) for g in gains),
        verified=verified,
    )


def deduplicate(refined, distance: float = EQUILIBRIUM_SETTINGS['dedup_distance'],
                groups=None) -> List[Tuple[np.ndarray, float, int]]:
    """
    Keep converged points that are not within distance of an earlier one

    Args:
        refined: iterable of (angles, ‖J‖∞, converged)
        distance: per-coordinate torus distance below which points merge
        groups: seed group of each refined point (all 0 when omitted)

    Returns:
        List of (angles, ‖J‖∞, group)
    """
    refined = list(refined)
    if groups is None:
        groups = np.zeros(len(refined), dtype=np.int64)
    unique: List[Tuple[np.ndarray, float, int]] = []
    for (angles, norm, converged), group in zip(refined, groups):
        if not converged:
            continue
        if any(torus_distance(angles, kept) < distance for kept, *_ in unique):
            continue
        unique.append((np.asarray(angles, dtype=float), norm, int(group)))
    return unique


def collapse_critical_sets(points: List[CriticalPoint], groups) -> List[CriticalPoint]:
    """
    One representative per seed group and classification

    Seeds from one connected group of grid minima that refine to points of
    the same label belong to the same critical set. The point with the
    lowest ‖J‖∞ is kept and its multiplicity counts the points it replaces.
    """
    kept: Dict[Tuple[int, str], CriticalPoint] = {}
    counts: Dict[Tuple[int, str], int] = {}
    for point, group in zip(points, groups):
        key = (int(group), point.classification)
        counts[key] = counts.get(key, 0) + 1
        if key not in kept or point.jacobian_norm < kept[key].jacobian_norm:
            kept[key] = point
    for key, point in kept.items():
        point.multiplicity = counts[key]
    return list(kept.values())


def _search(game: GameInstance, resolution: int, threads: Optional[int]) -> Tuple[List[CriticalPoint], int]:
    if resolution < MIN_RESOLUTION:
        raise ParameterRangeError(f"Grid resolution must be at least {MIN_RESOLUTION}, got {resolution}")
    require_constant_sum(game)

    thetas, norms = jacobian_norm_grid(game, resolution, threads)
    seeds, seed_groups = _seeds_with_groups(thetas, norms, EQUILIBRIUM_SETTINGS['seed_fraction'],
                                            EQUILIBRIUM_SETTINGS['max_seeds'], EQUILIBRIUM_SETTINGS['seed_blocks'])

    with ThreadPoolExecutor(max_workers=_thread_count(threads)) as executor:
        refined = list(executor.map(lambda seed: refine_critical_point(game, seed), seeds))

    unique = deduplicate(refined, groups=seed_groups)
    described = [describe_point(game, angles, norm) for angles, norm, _ in unique]
    points = collapse_critical_sets(described, [group for *_, group in unique])
    logger.info(f"Refined {len(seeds)} seeds into {len(unique)} critical points, "
                f"{len(points)} after collapsing connected sets")
    return points, len(seeds)


def find_stationary_points(game: GameInstance,
                           resolution: int = EQUILIBRIUM_SETTINGS['grid_resolution'],
                           threads: Optional[int] = None) -> List[CriticalPoint]:
    """
    Grid scan, seed selection, refinement and deduplication

    Args:
        game: constant-sum game
        resolution: grid points per axis, at least 5
        threads: worker threads for the scan and the refinement

    Returns:
        Deduplicated critical points with ‖J‖∞ below the stationarity tolerance
    """
    return _search(game, resolution, threads)[0]


def _verdict(points: List[CriticalPoint]) -> str:
    labels = {point.classification for point in points}
    if 'strict_nash' in labels:
        return 'strict_nash_found'
    if 'weak_nash' in labels:
        return 'weak_nash_found'
    return 'none'


def find_nash_equilibria(game: GameInstance,
                         resolution: int = EQUILIBRIUM_SETTINGS['grid_resolution'],
                         threads: Optional[int] = None) -> EquilibriumReport:
    """
    Full search: flat-surface shortcut, then stationary points and verdict

    A flat surface makes every profile a weak equilibrium; the report then
    lists the all-zero profile as its representative point.
    """
    require_constant_sum(game)
    if resolution < MIN_RESOLUTION:
        raise ParameterRangeError(f"Grid resolution must be at least {MIN_RESOLUTION}, got {resolution}")

    if is_flat(game):
        logger.info("Payoff surface is flat; every profile is a weak equilibrium")
        point = describe_point(game, np.zeros(4), float(np.max(np.abs(jacobian(game, np.zeros(4))))))
        return EquilibriumReport(game=game.describe(), resolution=resolution, critical_points=[point],
                                 verdict='weak_nash_flat', flat_surface=True)

    points, seed_count = _search(game, resolution, threads)
    verdict = _verdict(points)
    counts = {label: sum(p.classification == label for p in points) for label in ('strict_nash', 'weak_nash', 'not_nash')}
    logger.info(f"Verdict {verdict}: {counts}")
    return EquilibriumReport(game=game.describe(), resolution=resolution, critical_points=points,
                             verdict=verdict, flat_surface=False, seeds=seed_count)
