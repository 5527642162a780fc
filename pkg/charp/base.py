from __future__ import annotations

import os
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Literal

from dotenv import load_dotenv

load_dotenv(override=True)


@dataclass
class LabConfig:
    """Configuration of a FrobeniusLab run."""

    seed: int = int(os.getenv("CHARP_SEED", "0"))
    """Seed for equal-degree splitting in univariate factorisation."""

    order: Literal["grevlex", "lex", "block"] = os.getenv("CHARP_ORDER", "grevlex")  # type: ignore[assignment]
    """Monomial order used by ad-hoc ideal commands."""

    max_q: int = int(os.getenv("CHARP_MAX_Q", "32"))
    """Largest q = p^e a verification or sweep cell may use; larger cells are skipped."""

    jobs: int = int(os.getenv("CHARP_JOBS", "1"))
    """Number of sweep cells evaluated concurrently."""

    sweep_out: str = os.getenv("CHARP_SWEEP_OUT", "results.jsonl")
    """JSONL file receiving one SweepRecord per line."""

    variables: tuple[str, ...] = field(default=("t", "x", "y"))
    """Ring variables; t is the coefficient variable."""


@dataclass
class BaseSweepStorage(ABC):
    """Keyed, append-only persistence of sweep records."""

    namespace: str
    global_config: dict[str, Any]

    async def initialize(self):
        """Initialize the storage"""
        pass

    async def finalize(self):
        """Finalize the storage"""
        pass

    @abstractmethod
    async def filter_keys(self, keys: set[tuple[int, int, str]]) -> set[tuple[int, int, str]]:
        """Return the keys that are not stored yet."""

    @abstractmethod
    async def upsert(self, record: dict[str, Any]) -> None:
        """Store one record unless its key is already present."""

    @abstractmethod
    async def get_all(self) -> list[dict[str, Any]]:
        """All stored records in file order."""
