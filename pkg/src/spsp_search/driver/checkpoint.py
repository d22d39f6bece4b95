"""JSON checkpoints keyed by ``"phase:t"`` units."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from spsp_search.bigmath import Natural
from spsp_search.driver.config import SearchConfig
from spsp_search.driver.records import UnresolvedResidual

logger = logging.getLogger(__name__)


def checkpoint_path(output_path: Path) -> Path:
    return output_path.with_name(output_path.name + ".ckpt")


@dataclass
class Checkpoint:
    """Progress of a run, per unit.

    Each unit stores its outer-prime frontier, a completion flag, the candidate
    count and the residuals left unfactored, so a resumed run still knows
    which ``k`` were never settled.
    """

    bound: Natural
    m: int
    path: Path | None = None
    units: dict[str, dict[str, Any]] = field(default_factory=dict)

    @classmethod
    def for_config(cls, cfg: SearchConfig) -> Checkpoint:
        """Load ``cfg.resume_from`` if given, else start an empty checkpoint.

        Raises:
            ValueError: If the stored checkpoint belongs to a different bound
                or base count.
        """

        path = cfg.resume_from
        if path is None:
            out = cfg.output_path
            return cls(cfg.bound, cfg.m, checkpoint_path(out) if out else None)
        data = json.loads(path.read_text(encoding="utf-8"))
        if int(data["bound"]) != cfg.bound or int(data["m"]) != cfg.m:
            raise ValueError(f"Checkpoint {path} was written for another search")
        logger.info("Resuming from %s", path)
        return cls(cfg.bound, cfg.m, path, dict(data.get("units", {})))

    @staticmethod
    def unit(phase: str, t: int) -> str:
        return f"{phase}:{t}"

    def is_complete(self, unit: str) -> bool:
        return bool(self.units.get(unit, {}).get("complete", 0))

    def frontier(self, unit: str) -> Natural | None:
        entry = self.units.get(unit)
        return None if entry is None else entry.get("frontier")

    def candidates(self, unit: str) -> int:
        return int(self.units.get(unit, {}).get("candidates", 0))

    def unresolved(self, unit: str) -> list[UnresolvedResidual]:
        stored = self.units.get(unit, {}).get("unresolved", [])
        return [UnresolvedResidual(int(k), int(residual)) for k, residual in stored]

    def record(
        self,
        unit: str,
        frontier: Natural,
        candidates: int,
        unresolved: Iterable[UnresolvedResidual] = (),
    ) -> None:
        self.units[unit] = {
            "frontier": frontier,
            "complete": 0,
            "candidates": candidates,
            "unresolved": _encode(unresolved),
        }
        self.save()

    def complete(
        self,
        unit: str,
        candidates: int,
        unresolved: Iterable[UnresolvedResidual] = (),
    ) -> None:
        entry = self.units.setdefault(unit, {"frontier": 0})
        entry.update(complete=1, candidates=candidates, unresolved=_encode(unresolved))
        self.save()

    def save(self) -> None:
        if self.path is None:
            return
        payload = {"bound": str(self.bound), "m": self.m, "units": self.units}
        staged = self.path.with_name(self.path.name + ".tmp")
        staged.write_text(json.dumps(payload, indent=2), encoding="utf-8")
        staged.replace(self.path)
        logger.info("Checkpoint written to %s", self.path)


def _encode(unresolved: Iterable[UnresolvedResidual]) -> list[list[str]]:
    return [[str(item.k), str(item.residual)] for item in unresolved]


__all__ = ["Checkpoint", "checkpoint_path"]
