import asyncio
import os
from dataclasses import dataclass
from typing import Any, final

from charp.base import BaseSweepStorage
from charp.utils import append_jsonl, iter_jsonl, logger


def record_key(record: dict[str, Any]) -> tuple[int, int, str]:
    return (int(record["p"]), int(record["e"]), str(record["f_expr"]))


@final
@dataclass
class JsonlSweepStorage(BaseSweepStorage):
    """One JSON object per line; records are keyed by (p, e, f_expr).

    A single asyncio lock serialises the writer, so lines land in completion
    order and never interleave.
    """

    def __post_init__(self):
        self._file_name = self.global_config["sweep_out"]
        self._storage_lock = asyncio.Lock()
        self._keys: set[tuple[int, int, str]] = set()

    async def initialize(self):
        """Load the keys already present so a restarted sweep skips them"""
        loaded = 0
        async with self._storage_lock:
            for record in iter_jsonl(self._file_name):
                try:
                    self._keys.add(record_key(record))
                    loaded += 1
                except (KeyError, TypeError, ValueError):
                    logger.warning(f"Ignoring record without a (p, e, f_expr) key in {self._file_name}")
            self._repair_tail()
        logger.info(f"Load sweep {self.namespace} with {loaded} records from {self._file_name}")

    def _repair_tail(self) -> None:
        # an interrupted write can leave the last line without its newline
        if not os.path.exists(self._file_name) or os.path.getsize(self._file_name) == 0:
            return
        with open(self._file_name, "rb+") as f:
            f.seek(-1, os.SEEK_END)
            if f.read(1) != b"\n":
                f.write(b"\n")

    async def filter_keys(self, keys: set[tuple[int, int, str]]) -> set[tuple[int, int, str]]:
        async with self._storage_lock:
            return set(keys) - self._keys

    async def upsert(self, record: dict[str, Any]) -> None:
        key = record_key(record)
        async with self._storage_lock:
            if key in self._keys:
                logger.info(f"Sweep cell {key} already stored, skipping")
                return
            append_jsonl(record, self._file_name)
            self._keys.add(key)

    async def get_all(self) -> list[dict[str, Any]]:
        async with self._storage_lock:
            return list(iter_jsonl(self._file_name))
