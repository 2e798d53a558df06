"""
commands.py - Bodies of the command line subcommands.

Each command returns a CommandResult: a JSON-ready payload, the exit code and
the name of the text template that renders it. Reading inputs and writing
outputs is left to main.py.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ..base.polysys.system import SparseSystem, random_system
from ..base.solver.torus import SolutionSet, solve_torus
from ..config.common.loader import read_json
from ..config.common.standard import CommonSupportStandard
from ..config.models.settings import Settings
from ..core.mixedvol.mixed import mixed_volume
from ..core.supports.classify import (
    essential_complement,
    is_abundant,
    is_strictly_triangular,
    is_triangular,
    monodromy_outlook,
)
from ..core.supports.lattice import SupportCollection, collection_lattice
from ..core.supports.offsets import offset, tal_candidate, unnecessary_candidate
from ..err import CapacityError, ConfigError, PreconditionError
from ..logic.experiments import ExperimentRunner, bkk_experiment, pencil_table
from ..logic.gallery import run_gallery
from ..logic.tracetest import constant_sparse_trace_test, sparse_trace_test

logger = logging.getLogger(__name__)

OFFSET_LEVELS = (Fraction(0), Fraction(1, 2), Fraction(1))

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ABORT = 2


@dataclass
class CommandResult:
    """
    Outcome of one subcommand.

    Attributes:
        payload (Dict[str, Any]): JSON-ready result.
        exit_code (int): 0 pass, 1 fail, 2 abort.
        template (str): Name of the text template.
        inputs (List[Path]): Files read, for the run manifest.
    """

    payload: Dict[str, Any]
    exit_code: int = EXIT_PASS
    template: str = "generic"
    inputs: List[Path] = field(default_factory=list)


def load_collection(source: str, standard: Optional[CommonSupportStandard] = None) -> tuple[SupportCollection, List[Path]]:
    """
    Supports from a JSON file (supports or system) or a registered family name.

    Raises:
        ConfigError: when ``source`` is neither a file nor a known family.
    """
    path = Path(source)
    if path.is_file():
        payload = read_json(path)
        if isinstance(payload, dict) and "collection" in payload:
            payload = payload["collection"]
        return SupportCollection.deserialize(payload), [path]
    standard = standard or CommonSupportStandard()
    if source in standard:
        return standard.build(source), []
    raise ConfigError(f"'{source}' is neither a readable file nor a known support family.")


def load_system(source: str) -> tuple[SparseSystem, List[Path]]:
    path = Path(source)
    return SparseSystem.deserialize(read_json(path)), [path]


def _or_none(compute, *args):
    """Value of ``compute(*args)``, or the refusal code when the input is outside its contract."""
    try:
        return compute(*args)
    except PreconditionError as e:
        return {"unavailable": e.code}
    except CapacityError as e:
        return {"unavailable": "capacity", "limit": e.limit}


def analyze_collection(collection: SupportCollection) -> Dict[str, Any]:
    """Combinatorial report of a support collection."""
    info = collection_lattice(collection)
    report: Dict[str, Any] = {
        "n": collection.ambient_dim,
        "N": len(collection),
        "sizes": [len(s) for s in collection],
        "square": collection.square(),
        "lattice": info.serialize(),
        "lacunary": info.index != 1,
        "unit_in_lattice": info.contains_unit(0),
        "offsets": {
            str(k): [offset(s, k).serialize() for s in collection] for k in OFFSET_LEVELS
        },
    }
    if not collection.square():
        return report

    mv = _or_none(mixed_volume, collection)
    report["mv"] = mv
    witness = _or_none(is_triangular, collection)
    report["triangular"] = list(witness) if isinstance(witness, tuple) else witness
    if isinstance(mv, int) and mv > 0:
        strict = _or_none(is_strictly_triangular, collection)
        report["strictly_triangular"] = list(strict) if isinstance(strict, tuple) else strict
        tal = tal_candidate(collection)
        unnecessary = unnecessary_candidate(collection)
        report["tal_candidate"] = tal.serialize()
        report["tal_candidate_abundant"] = is_abundant(tal)
        report["unnecessary_candidate"] = unnecessary.serialize()
        report["unnecessary_candidate_abundant"] = is_abundant(unnecessary)
        complement = _or_none(essential_complement, collection)
        report["essential_complement"] = list(complement) if isinstance(complement, tuple) else complement
        report["monodromy_outlook"] = monodromy_outlook(collection).value
    return report


def cmd_analyze(source: str, standard: Optional[CommonSupportStandard] = None) -> CommandResult:
    collection, inputs = load_collection(source, standard)
    return CommandResult(analyze_collection(collection), EXIT_PASS, "analyze", inputs)


def cmd_mixedvol(source: str, settings: Settings, standard: Optional[CommonSupportStandard] = None) -> CommandResult:
    collection, inputs = load_collection(source, standard)
    mv = mixed_volume(collection, jobs=settings.tracker.jobs)
    return CommandResult({"mv": mv}, EXIT_PASS, "mixedvol", inputs)


def cmd_random(source: str, seed: int, standard: Optional[CommonSupportStandard] = None) -> CommandResult:
    collection, inputs = load_collection(source, standard)
    return CommandResult(random_system(collection, seed).serialize(), EXIT_PASS, "generic", inputs)


def cmd_solve(system_file: str, seed: int, settings: Settings) -> CommandResult:
    system, inputs = load_system(system_file)
    solved = solve_torus(system, seed, settings.solver)
    return CommandResult(solved.serialize(), EXIT_PASS, "solve", inputs)


def cmd_trace_test(
    system_file: str,
    solutions_file: str,
    seed: int,
    settings: Settings,
    constant: bool = False,
    b_set: Optional[str] = None,
) -> CommandResult:
    """
    Run a trace test on a solution file.

    The verdict maps to the exit code: 0 for Pass, 1 for Fail.
    """
    system, inputs = load_system(system_file)
    solved = SolutionSet.deserialize(read_json(solutions_file))
    inputs.append(Path(solutions_file))
    part = None
    if b_set is not None:
        part, extra = load_collection(b_set)
        inputs.extend(extra)
    test = constant_sparse_trace_test if constant else sparse_trace_test
    report = test(system.collection, system, solved.points, part, seed, settings.trace_test)
    return CommandResult(report.serialize(), EXIT_PASS if report.passed else EXIT_FAIL, "trace_test", inputs)


def cmd_experiments(
    which: str,
    seed: int,
    settings: Settings,
    names: Optional[Sequence[str]] = None,
    standard: Optional[CommonSupportStandard] = None,
) -> CommandResult:
    """``pencil``, ``gallery`` or ``bkk``."""
    if which == "pencil":
        table = pencil_table(seed=seed, config=settings.solver)
        return CommandResult(table.serialize(), EXIT_PASS, "pencil")
    if which == "gallery":
        entries = run_gallery(names, seed, settings.trace_test, standard)
        ok = all(e.holds for e in entries if e.asserted)
        return CommandResult({"examples": [e.serialize() for e in entries]}, EXIT_PASS if ok else EXIT_FAIL, "gallery")
    if which == "bkk":
        standard = standard or CommonSupportStandard()
        families = {f.name: f.build() for f in standard.tagged("corpus") if not names or f.name in names}
        runner = ExperimentRunner("bkk")
        records = bkk_experiment(families, seed=seed, config=settings.solver, runner=runner)
        ok = all(r.matches for r in records) and runner.aborted == 0
        payload = {"records": [r.serialize() for r in records], "aborted": runner.dead_letter_summary()}
        return CommandResult(payload, EXIT_PASS if ok else EXIT_FAIL, "generic")
    raise ConfigError(f"Unknown experiment '{which}'.")
