"""
paths.py - Predictor-corrector continuation along segment families.

The solution path x(t) of H(x, t) = 0 satisfies the Davidenko equation
J(x, t) dx/dt = -dH/dt. Each step integrates it with a fourth order
Runge-Kutta predictor and pulls the prediction back with Newton's method. A
step is rejected when the corrector does not contract or moves the point by
more than half of the predictor displacement.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...config.models.settings import TrackerConfig
from ...err import PreconditionError
from ..polysys.homotopy import SegmentFamily
from ..polysys.system import TorusPoint, as_array

logger = logging.getLogger(__name__)

DISTINCT_RADIUS = 1e-8


class PathStatus(str, Enum):
    SUCCESS = "success"
    DIVERGED = "diverged"
    SINGULAR = "singular"
    LEFT_TORUS = "left_torus"
    STEP_UNDERFLOW = "step_underflow"
    PATH_CROSSING = "path_crossing"


@dataclass(frozen=True, slots=True)
class PathOutcome:
    """
    Result of tracking one path.

    Attributes:
        status (PathStatus): How tracking ended.
        end (Optional[TorusPoint]): Polished end point; present on success and
            on path crossings.
        steps_taken (int): Accepted steps.
        residual (float): Relative Newton correction at the last point.
        condition (float): Condition number of the Jacobian at the last point.
        t_reached (float): Parameter value where tracking stopped.
    """

    status: PathStatus
    end: Optional[TorusPoint]
    steps_taken: int
    residual: float
    condition: float = float("nan")
    t_reached: float = float("nan")

    @property
    def ok(self) -> bool:
        return self.status is PathStatus.SUCCESS

    def serialize(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "end": self.end.serialize() if self.end is not None else None,
            "steps_taken": self.steps_taken,
            "residual": self.residual,
            "condition": self.condition,
            "t_reached": self.t_reached,
        }


class _Path:
    """Mutable state of one path; owned by a single worker."""

    def __init__(self, family: SegmentFamily, config: TrackerConfig):
        self.family = family
        self.config = config
        self.evaluator = family.target.evaluator
        self.velocity = family.velocity()

    def _system(self, x: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray]:
        coeffs = self.family.coefficients(t)
        mono = self.evaluator.monomials(x)
        return self.evaluator.values(coeffs, x, mono), self.evaluator.jacobian(coeffs, x, mono)

    def tangent(self, x: np.ndarray, t: float) -> Optional[np.ndarray]:
        coeffs = self.family.coefficients(t)
        mono = self.evaluator.monomials(x)
        jac = self.evaluator.jacobian(coeffs, x, mono)
        try:
            return -np.linalg.solve(jac, self.evaluator.values(self.velocity, x, mono))
        except np.linalg.LinAlgError:
            return None

    def predict(self, x: np.ndarray, t: float, h: float) -> Optional[np.ndarray]:
        k1 = self.tangent(x, t)
        if k1 is None:
            return None
        k2 = self.tangent(x + 0.5 * h * k1, t + 0.5 * h)
        if k2 is None:
            return None
        k3 = self.tangent(x + 0.5 * h * k2, t + 0.5 * h)
        if k3 is None:
            return None
        k4 = self.tangent(x + h * k3, t + h)
        if k4 is None:
            return None
        return x + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6

    def correct(self, x: np.ndarray, t: float, tol: float) -> Tuple[Optional[np.ndarray], float]:
        """Newton at fixed ``t``; ``(None, inf)`` when it stalls or the Jacobian is singular."""
        last = float("inf")
        for _ in range(self.config.max_newton_iters):
            values, jac = self._system(x, t)
            try:
                dx = np.linalg.solve(jac, values)
            except np.linalg.LinAlgError:
                return None, float("inf")
            size = float(np.max(np.abs(dx)))
            if size > last:
                return None, float("inf")
            x = x - dx
            last = size
            residual = size / max(1.0, float(np.max(np.abs(x))))
            if residual <= tol:
                return x, residual
        return None, float("inf")

    def finish(self, x: np.ndarray, t: float) -> Tuple[np.ndarray, float, float]:
        """Polish to ``newton_tol``; returns point, residual and condition number."""
        best, residual = x, float("inf")
        for _ in range(2 * self.config.max_newton_iters):
            values, jac = self._system(best, t)
            try:
                dx = np.linalg.solve(jac, values)
            except np.linalg.LinAlgError:
                return best, float("inf"), float("inf")
            candidate = best - dx
            step = float(np.max(np.abs(dx))) / max(1.0, float(np.max(np.abs(candidate))))
            if step > residual:
                break
            best, residual = candidate, step
            if residual <= self.config.newton_tol:
                break
        values, jac = self._system(best, t)
        try:
            residual = float(np.max(np.abs(np.linalg.solve(jac, values)))) / max(1.0, float(np.max(np.abs(best))))
        except np.linalg.LinAlgError:
            residual = float("inf")
        return best, residual, float(np.linalg.cond(jac))


def _outcome(status: PathStatus, x: Optional[np.ndarray], steps: int, residual: float, cond: float, t: float) -> PathOutcome:
    end = TorusPoint.from_array(x) if x is not None else None
    return PathOutcome(status, end, steps, residual, cond, t)


def track_segment(
    family: SegmentFamily,
    start: TorusPoint,
    from_t: float = 1.0,
    to_t: float = 0.0,
    config: Optional[TrackerConfig] = None,
) -> PathOutcome:
    """
    Continue one solution of ``family.at(from_t)`` to ``family.at(to_t)``.

    Args:
        family (SegmentFamily): The segment ``tF + (1 - t) gamma G``.
        start (TorusPoint): A solution at ``from_t``.
        from_t (float): Start parameter in ``[0, 1]``.
        to_t (float): End parameter in ``[0, 1]``.
        config (Optional[TrackerConfig]): Step control; defaults apply.

    Returns:
        PathOutcome: ``SUCCESS`` only when the polished end point meets
        ``newton_tol`` and its Jacobian condition number is below
        ``1 / newton_tol``.

    Raises:
        PreconditionError: ``not_a_solution`` when ``start`` cannot be refined
            to a solution at ``from_t``.
    """
    config = config or TrackerConfig()
    path = _Path(family, config)
    x = as_array(start).copy()
    t = float(from_t)
    goal = float(to_t)

    refined, residual = path.correct(x, t, config.corrector_tol)
    if refined is None:
        raise PreconditionError(f"Start point is not a solution at t = {t}.", code="not_a_solution")
    x = refined

    direction = 1.0 if goal > t else -1.0
    h = config.initial_step
    steps = 0
    while t != goal:
        if steps >= config.max_steps:
            logger.debug(f"Step limit reached at t = {t}")
            return _outcome(PathStatus.STEP_UNDERFLOW, None, steps, residual, float("nan"), t)
        remaining = abs(goal - t)
        size = min(h, remaining)
        t_next = goal if size >= remaining else t + direction * size
        dt = t_next - t

        predicted = path.predict(x, t, dt)
        accepted = False
        if predicted is not None and np.all(np.isfinite(predicted)):
            if float(np.max(np.abs(predicted))) > config.path_bound:
                return _outcome(PathStatus.DIVERGED, None, steps, residual, float("nan"), t)
            corrected, new_residual = path.correct(predicted, t_next, config.corrector_tol)
            if corrected is not None:
                shift = float(np.max(np.abs(corrected - predicted)))
                moved = float(np.max(np.abs(predicted - x)))
                floor = 10 * config.corrector_tol * max(1.0, float(np.max(np.abs(x))))
                accepted = shift <= max(0.5 * moved, floor)
        if accepted:
            x, t, residual = corrected, t_next, new_residual
            steps += 1
            h = min(h * config.step_expand, 1.0)
            if float(np.max(np.abs(x))) > config.path_bound:
                return _outcome(PathStatus.DIVERGED, None, steps, residual, float("nan"), t)
            if float(np.min(np.abs(x))) < config.torus_floor:
                return _outcome(PathStatus.LEFT_TORUS, None, steps, residual, float("nan"), t)
            continue

        h *= config.step_contract
        if h < config.min_step:
            _, jac = path._system(x, t)
            cond = float(np.linalg.cond(jac))
            status = PathStatus.SINGULAR if cond >= 1.0 / config.newton_tol else PathStatus.STEP_UNDERFLOW
            if float(np.min(np.abs(x))) < np.sqrt(config.torus_floor):
                status = PathStatus.LEFT_TORUS
            logger.debug(f"Step underflow at t = {t}, cond = {cond:.3e}, status {status.value}")
            return _outcome(status, None, steps, residual, cond, t)

    x, residual, cond = path.finish(x, goal)
    if not np.all(np.isfinite(x)) or float(np.max(np.abs(x))) > config.path_bound:
        return _outcome(PathStatus.DIVERGED, None, steps, residual, cond, goal)
    if float(np.min(np.abs(x))) < config.torus_floor:
        return _outcome(PathStatus.LEFT_TORUS, None, steps, residual, cond, goal)
    if cond >= 1.0 / config.newton_tol or residual > config.newton_tol:
        return _outcome(PathStatus.SINGULAR, None, steps, residual, cond, goal)
    return _outcome(PathStatus.SUCCESS, x, steps, residual, cond, goal)


def min_pairwise_distance(points: Sequence[np.ndarray]) -> float:
    if len(points) < 2:
        return float("inf")
    stack = np.array(points)
    gaps = np.max(np.abs(stack[:, None, :] - stack[None, :, :]), axis=-1)
    gaps[np.diag_indices(len(points))] = np.inf
    return float(gaps.min())


def track_set(
    family: SegmentFamily,
    starts: Sequence[TorusPoint],
    from_t: float = 1.0,
    to_t: float = 0.0,
    config: Optional[TrackerConfig] = None,
) -> List[PathOutcome]:
    """
    Track every start point independently; results keep the input order.

    Successful endpoints closer than ``1e-8`` to each other are downgraded
    to ``PATH_CROSSING`` (the end point is kept for inspection).

    Raises:
        PreconditionError: ``duplicate_start`` when two starts coincide.
    """
    config = config or TrackerConfig()
    arrays = [as_array(s) for s in starts]
    if min_pairwise_distance(arrays) <= DISTINCT_RADIUS:
        raise PreconditionError("Start points are not pairwise distinct.", code="duplicate_start")

    def run(point: TorusPoint) -> PathOutcome:
        return track_segment(family, point, from_t, to_t, config)

    if config.jobs > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(run, starts))
    else:
        outcomes = [run(s) for s in starts]

    done = [i for i, o in enumerate(outcomes) if o.ok]
    crossed = set()
    for a_pos, a in enumerate(done):
        for b in done[a_pos + 1:]:
            if np.max(np.abs(outcomes[a].end.array - outcomes[b].end.array)) <= DISTINCT_RADIUS:
                crossed.update((a, b))
    for i in sorted(crossed):
        logger.warning(f"Path {i} ended on another path's end point")
        outcomes[i] = replace(outcomes[i], status=PathStatus.PATH_CROSSING)

    failed = sum(1 for o in outcomes if not o.ok)
    logger.debug(f"Tracked {len(outcomes)} paths from t = {from_t} to t = {to_t}; {failed} failed")
    return outcomes
