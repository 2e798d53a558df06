"""
experiments.py - Batch runs of the trace tests and the solver.

Every experiment is a sequence of seeded trials. Trials that abort with a
toolkit error (path failure, refused input) go through an ExperimentRunner,
which applies the configured ErrorStrategy and keeps the failures in a bounded
dead-letter queue for inspection.
"""

from __future__ import annotations

import logging
import queue
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from ..base.polysys.system import Seed, SparseSystem, TorusPoint, random_system, rng_from
from ..base.solver.torus import SolutionSet, solve_pencil, solve_torus
from ..base.tracker.paths import min_pairwise_distance
from ..config.common.loader import fixture_path, read_json
from ..config.models.settings import SolverConfig, TraceTestConfig
from ..core.supports.lattice import SupportCollection
from ..err import SparseTraceError
from .traces import affine_fit_deviation, trace
from .tracetest import TraceReport, Verdict, constant_sparse_trace_test, sparse_trace_test

logger = logging.getLogger(__name__)

T = TypeVar("T")

TABLE_TS = (0.0, 1.0, 2.0, 3.0, 4.0, 5.0)


class ExperimentError(SparseTraceError):
    """A trial aborted while the runner was set to ``RAISE``."""


class ErrorStrategy(Enum):
    """Error handling strategies for experiment trials"""

    RAISE = "raise"  # Stop the whole experiment
    WARN = "warn"  # Log and keep going
    IGNORE = "ignore"  # Keep going silently
    CUSTOM = "custom"  # Call the given handler


class ExperimentRunner:
    """
    Run seeded trials and collect the aborted ones.

    Only ``SparseTraceError`` counts as an aborted trial; anything else is a
    bug and propagates.
    """

    def __init__(
        self,
        name: str,
        error_strategy: ErrorStrategy = ErrorStrategy.WARN,
        error_handler: Optional[Callable[[Exception, Any], None]] = None,
        max_dead_letters: int = 100,
    ):
        """
        Initialize the runner.

        Args:
            name (str): Experiment name used in log messages.
            error_strategy (ErrorStrategy): What to do with an aborted trial.
            error_handler (Optional[Callable]): Handler for ``CUSTOM``.
            max_dead_letters (int): Maximum number of aborted trials to retain.
        """
        self.name = name
        self.error_strategy = error_strategy
        self.error_handler = error_handler
        self._dead_letters: "queue.Queue[Tuple[Exception, Any]]" = queue.Queue(maxsize=max_dead_letters)
        self.aborted = 0

    def run(self, trials: Iterable[Tuple[Any, Callable[[], T]]]) -> List[Tuple[Any, Optional[T]]]:
        """
        Run ``(key, job)`` pairs in order.

        Returns:
            List[Tuple[Any, Optional[T]]]: The key with the job result, or
            ``None`` when the trial aborted.
        """
        results: List[Tuple[Any, Optional[T]]] = []
        for key, job in trials:
            try:
                results.append((key, job()))
            except SparseTraceError as e:
                self.aborted += 1
                self._handle_error(e, key)
                results.append((key, None))
        return results

    def _handle_error(self, exc: Exception, key: Any) -> None:
        try:
            self._dead_letters.put_nowait((exc, key))
        except queue.Full:
            pass

        if self.error_strategy == ErrorStrategy.CUSTOM and self.error_handler:
            try:
                self.error_handler(exc, key)
            except Exception as e:
                logger.error(f"Error handler of experiment '{self.name}' failed: {e}")
        else:
            self._default_error_handler(exc, key)

    def _default_error_handler(self, exc: Exception, key: Any) -> None:
        if self.error_strategy == ErrorStrategy.RAISE:
            raise ExperimentError(f"Trial {key!r} of experiment '{self.name}' aborted: {exc}", trial=str(key)) from exc
        elif self.error_strategy == ErrorStrategy.WARN:
            logger.warning(f"Trial {key!r} of experiment '{self.name}' aborted: {exc}")

    def get_dead_letters(self) -> List[Tuple[Exception, Any]]:
        """
        Get aborted trials for debugging.

        Returns:
            List[Tuple[Exception, Any]]: Error and trial key, oldest first.
        """
        return list(self._dead_letters.queue)

    def clear_dead_letters(self) -> None:
        while not self._dead_letters.empty():
            self._dead_letters.get_nowait()

    def dead_letter_summary(self) -> List[Dict[str, Any]]:
        return [
            {"trial": str(key), **(e.to_dict() if isinstance(e, SparseTraceError) else {"error": repr(e)})}
            for e, key in self.get_dead_letters()
        ]


def load_pencil() -> Tuple[SparseSystem, SparseSystem]:
    """The shipped target and start systems of the worked pencil."""
    target = SparseSystem.deserialize(read_json(fixture_path("pencil_target.json")))
    start = SparseSystem.deserialize(read_json(fixture_path("pencil_start.json")))
    return target, start


@dataclass(frozen=True, slots=True)
class PencilTable:
    """
    First and second coordinate traces of ``t F + (1 - t) G``.

    Attributes:
        ts (Tuple[float, ...]): Sample parameters.
        sigma1 (Tuple[complex, ...]): First coordinate traces.
        sigma2 (Tuple[complex, ...]): Second coordinate traces.
        counts (Tuple[int, ...]): Number of torus solutions found at each t.
        sigma1_deviation (float): Largest distance from the least squares line.
        sigma2_deviation (float): Same for the second coordinate.
    """

    ts: Tuple[float, ...]
    sigma1: Tuple[complex, ...]
    sigma2: Tuple[complex, ...]
    counts: Tuple[int, ...]
    mv: int
    sigma1_deviation: float
    sigma2_deviation: float

    def rows(self) -> List[Tuple[float, float, float]]:
        return [(t, s1.real, s2.real) for t, s1, s2 in zip(self.ts, self.sigma1, self.sigma2)]

    def serialize(self) -> Dict[str, Any]:
        return {
            "ts": list(self.ts),
            "sigma1": [{"re": v.real, "im": v.imag} for v in self.sigma1],
            "sigma2": [{"re": v.real, "im": v.imag} for v in self.sigma2],
            "counts": list(self.counts),
            "mv": self.mv,
            "sigma1_deviation": self.sigma1_deviation,
            "sigma2_deviation": self.sigma2_deviation,
        }


def pencil_table(
    target: Optional[SparseSystem] = None,
    start: Optional[SparseSystem] = None,
    ts: Sequence[float] = TABLE_TS,
    seed: Seed = 0,
    config: Optional[SolverConfig] = None,
) -> PencilTable:
    """
    Solve the pencil at each ``t`` and tabulate both coordinate traces.

    Defaults to the shipped pencil, where the two systems differ exactly on the
    trace-affine-linear candidate: the first row is affine in ``t`` and the
    second is not.
    """
    if target is None or start is None:
        target, start = load_pencil()
    solved = solve_pencil(target, start, ts, seed, config)
    for t, s in zip(ts, solved):
        if s.possibly_incomplete:
            logger.warning(f"Pencil at t = {t}: {s.certified_count} of {s.mv} solutions")
    sigma1 = tuple(trace(s.points, 0) for s in solved)
    sigma2 = tuple(trace(s.points, 1) for s in solved)
    table = PencilTable(
        tuple(float(t) for t in ts),
        sigma1,
        sigma2,
        tuple(len(s) for s in solved),
        solved[0].mv,
        affine_fit_deviation(ts, sigma1),
        affine_fit_deviation(ts, sigma2),
    )
    logger.info(f"Pencil table: Sigma_1 deviation {table.sigma1_deviation:.3e}, Sigma_2 deviation {table.sigma2_deviation:.3e}")
    return table


@dataclass(frozen=True, slots=True)
class VerdictTally:
    """
    Verdict counts of a batch of trace tests.

    Attributes:
        algorithm (str): ``"sparse"`` or ``"constant"``.
        runs (int): Trials attempted.
        passed (int): Trials with verdict Pass.
        failed (int): Trials with verdict Fail.
        aborted (int): Trials that raised a toolkit error.
        subset_sizes (Tuple[int, ...]): Size of the tested set per trial.
    """

    algorithm: str
    runs: int
    passed: int
    failed: int
    aborted: int
    subset_sizes: Tuple[int, ...]
    dead_letters: List[Dict[str, Any]] = field(default_factory=list)

    def serialize(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "runs": self.runs,
            "passed": self.passed,
            "failed": self.failed,
            "aborted": self.aborted,
            "subset_sizes": list(self.subset_sizes),
            "dead_letters": self.dead_letters,
        }


def _test_for(algorithm: str) -> Callable[..., TraceReport]:
    if algorithm == "sparse":
        return sparse_trace_test
    if algorithm == "constant":
        return constant_sparse_trace_test
    raise ValueError(f"Unknown trace test '{algorithm}'.")


def _tally(algorithm: str, results: List[Tuple[Any, Optional[TraceReport]]], sizes: List[int], runner: ExperimentRunner) -> VerdictTally:
    reports = [r for _, r in results if r is not None]
    return VerdictTally(
        algorithm,
        len(results),
        sum(1 for r in reports if r.verdict is Verdict.PASS),
        sum(1 for r in reports if r.verdict is Verdict.FAIL),
        runner.aborted,
        tuple(sizes),
        runner.dead_letter_summary(),
    )


def soundness_experiment(
    collection: SupportCollection,
    system: SparseSystem,
    solved: SolutionSet,
    part: Optional[SupportCollection] = None,
    runs: int = 20,
    seed: Seed = 0,
    algorithm: str = "sparse",
    config: Optional[TraceTestConfig] = None,
    runner: Optional[ExperimentRunner] = None,
) -> VerdictTally:
    """
    Run a trace test on the full solution set with ``runs`` distinct seeds.

    Every completed run should Pass.
    """
    test = _test_for(algorithm)
    runner = runner or ExperimentRunner(f"soundness/{algorithm}")
    children = np.random.SeedSequence(int(rng_from(seed).integers(2**63))).spawn(runs)
    results = runner.run(
        (k, lambda child=child: test(collection, system, solved.points, part, child, config, solved))
        for k, child in enumerate(children)
    )
    tally = _tally(algorithm, results, [len(solved)] * runs, runner)
    logger.info(f"Soundness ({algorithm}): {tally.passed} pass, {tally.failed} fail, {tally.aborted} aborted")
    return tally


def completeness_experiment(
    collection: SupportCollection,
    system: SparseSystem,
    solved: SolutionSet,
    part: Optional[SupportCollection] = None,
    runs: int = 20,
    seed: Seed = 0,
    algorithm: str = "sparse",
    config: Optional[TraceTestConfig] = None,
    runner: Optional[ExperimentRunner] = None,
) -> VerdictTally:
    """
    Run a trace test on random strict nonempty subsets of a full solution set.

    Each trial draws the subset size uniformly from ``1 .. |V| - 1`` and then
    the subset itself; every completed run should Fail.

    Raises:
        ValueError: when the solution set has fewer than two points.
    """
    if len(solved) < 2:
        raise ValueError("Strict nonempty subsets need at least two solutions.")
    test = _test_for(algorithm)
    runner = runner or ExperimentRunner(f"completeness/{algorithm}")
    rng = rng_from(seed)
    children = np.random.SeedSequence(int(rng.integers(2**63))).spawn(runs)
    subsets: List[Tuple[TorusPoint, ...]] = []
    for _ in range(runs):
        size = int(rng.integers(1, len(solved)))
        chosen = sorted(rng.choice(len(solved), size=size, replace=False).tolist())
        subsets.append(tuple(solved.points[i] for i in chosen))
    results = runner.run(
        (k, lambda child=child, subset=subset: test(collection, system, subset, part, child, config, solved))
        for k, (child, subset) in enumerate(zip(children, subsets))
    )
    tally = _tally(algorithm, results, [len(s) for s in subsets], runner)
    logger.info(f"Completeness ({algorithm}): {tally.failed} fail, {tally.passed} pass, {tally.aborted} aborted")
    return tally


@dataclass(frozen=True, slots=True)
class SolveRecord:
    """Outcome of solving one random system."""

    family: str
    seed: int
    mv: int
    found: int
    max_residual: float
    min_first_gap: float

    @property
    def matches(self) -> bool:
        return self.found == self.mv

    def serialize(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "seed": self.seed,
            "mv": self.mv,
            "found": self.found,
            "max_residual": self.max_residual,
            "min_first_gap": self.min_first_gap,
        }


def first_coordinate_gap(solved: SolutionSet) -> float:
    """Smallest distance between the first coordinates of two solutions (inf for fewer than two)."""
    if len(solved) < 2:
        return float("inf")
    return min_pairwise_distance([np.array([p.coords[0]]) for p in solved.points])


def bkk_experiment(
    collections: Dict[str, SupportCollection],
    systems_per_family: int = 6,
    seed: Seed = 0,
    config: Optional[SolverConfig] = None,
    runner: Optional[ExperimentRunner] = None,
) -> List[SolveRecord]:
    """
    Solve random systems on each collection and compare the count with MV.

    The records also carry the smallest gap between first coordinates, which
    should stay away from zero for nonlacunary nontriangular collections.
    """
    runner = runner or ExperimentRunner("bkk")
    rng = rng_from(seed)
    jobs = []
    for name, collection in collections.items():
        for _ in range(systems_per_family):
            child = int(rng.integers(2**31))
            jobs.append(((name, child), lambda c=collection, s=child, n=name: _solve_record(n, c, s, config)))
    records = [r for _, r in runner.run(jobs) if r is not None]
    agree = sum(1 for r in records if r.matches)
    logger.info(f"BKK agreement on {agree} of {len(records)} random systems")
    return records


def _solve_record(name: str, collection: SupportCollection, seed: int, config: Optional[SolverConfig]) -> SolveRecord:
    system = random_system(collection, seed)
    solved = solve_torus(system, seed, config)
    return SolveRecord(
        name,
        seed,
        solved.mv,
        len(solved),
        max(solved.residuals, default=0.0),
        first_coordinate_gap(solved),
    )
