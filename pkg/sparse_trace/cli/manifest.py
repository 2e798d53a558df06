import hashlib
from pathlib import Path
from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict


def sha256_of(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class RunManifest(BaseModel):
    """
    Record of one command line run.

    Two runs with the same command, input digests, seed, overrides and
    version produce byte-identical outputs; ``wall_time`` is informative only.
    """

    model_config = ConfigDict(frozen=True)

    command: List[str]
    inputs: Dict[str, str]
    seed: int
    overrides: Dict[str, Any]
    version: str
    exit_code: int
    wall_time: float

    @classmethod
    def build(
        cls,
        command: List[str],
        inputs: List[Path],
        seed: int,
        overrides: Dict[str, Any],
        version: str,
        exit_code: int,
        wall_time: float,
    ) -> "RunManifest":
        digests = {str(p): sha256_of(p) for p in inputs}
        return cls(
            command=command,
            inputs=digests,
            seed=seed,
            overrides=overrides,
            version=version,
            exit_code=exit_code,
            wall_time=wall_time,
        )
