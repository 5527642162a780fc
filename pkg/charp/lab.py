from __future__ import annotations

import asyncio
import importlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence, final

from .algebra.field import tau
from .algebra.multipoly import PolyRing
from .base import BaseSweepStorage, LabConfig
from .frobenius import (
    FLAGSHIP_F,
    Hypersurface,
    flagship_hypersurface,
    ge_check,
    is_flagship,
    lemma11_check,
    maximal_ass_primes,
    remark13_check,
    tau_divides_torsion,
    theorem12_check,
    torsion_elementary_divisors,
    witness_colon,
)
from .storage import STORAGES
from .types import FlagshipCheck, SweepRecord
from .utils import (
    always_get_an_event_loop,
    limit_async_func_call,
    logger,
    set_factor_seed,
)

__all__ = ["FrobeniusLab", "LabConfig"]


def _evaluate_cell(
    p: int,
    e: int,
    f_expr: str,
    split: str | None,
    seed: int,
    variables: tuple[str, ...],
) -> dict[str, Any]:
    """Compute one sweep cell; module level so worker processes can run it."""
    set_factor_seed(seed)
    start = time.perf_counter()
    ring = PolyRing(p, variables)
    F = Hypersurface.parse(ring, f_expr, split)
    q = p**e
    record: dict[str, Any] = {"p": p, "e": e, "q": q, "f_expr": f_expr}
    record["lemma11"] = lemma11_check(p, e)
    if q >= 3:
        report = theorem12_check(p, e)
        record["thm12_member_tau_g"] = report.member_tau_g
        record["thm12_not_member_g"] = report.not_member_g
        record["thm12_contraction_is_tau"] = report.contraction_equals_tau
    if F.split is not None:
        record["ge_check"] = ge_check(F, p, e)
    record["divisors"] = [str(d) for d in torsion_elementary_divisors(F, p, e).torsion]
    record["probes"] = [r.to_record() for r in maximal_ass_primes(F, p, e)]
    record["duration_ms"] = int((time.perf_counter() - start) * 1000)
    return SweepRecord(**record).model_dump()


@final
@dataclass
class FrobeniusLab:
    """Orchestrates verification runs and (p, e, F) sweeps."""

    config: LabConfig = field(default_factory=LabConfig)
    """Seed, size cap and sweep defaults."""

    sweep_storage: str = field(default="JsonlSweepStorage")
    """Storage class that persists sweep records."""

    def __post_init__(self):
        set_factor_seed(self.config.seed)

    def ring(self, p: int) -> PolyRing:
        return PolyRing(p, self.config.variables)

    def _get_storage_class(self, storage_name: str) -> type[BaseSweepStorage]:
        module = importlib.import_module(STORAGES[storage_name], package="charp")
        return getattr(module, storage_name)

    def cells(self, primes: Iterable[int], exponents: Iterable[int]) -> list[tuple[int, int]]:
        """(p, e) pairs with q = p^e within the configured cap."""
        out = []
        exponents = list(exponents)
        for p in primes:
            for e in exponents:
                if p**e > self.config.max_q:
                    logger.warning(f"Skipping p={p} e={e}: q={p**e} exceeds max_q={self.config.max_q}")
                    continue
                out.append((p, e))
        return out

    def verify_cell(self, p: int, e: int) -> FlagshipCheck:
        """Every identity asserted for the flagship hypersurface at one (p, e)."""
        start = time.perf_counter()
        q = p**e
        F = flagship_hypersurface(self.ring(p))
        degenerate = q < 3
        theorem12 = None if degenerate else theorem12_check(p, e)
        colon = None if degenerate else str(witness_colon(p, e))
        check = FlagshipCheck(
            p=p,
            e=e,
            q=q,
            degenerate=degenerate,
            lemma11=lemma11_check(p, e),
            theorem12=theorem12,
            witness_colon=colon,
            tau=str(tau(p, e)),
            tau_divides_torsion=tau_divides_torsion(F, p, e),
            remark13=remark13_check(F, p, e),
        )
        check.duration_ms = int((time.perf_counter() - start) * 1000)
        logger.info(f"verified p={p} e={e} (q={q}): {'ok' if check.passed else 'FAILED'}")
        return check

    def verify_flagship(self, primes: Sequence[int], emax: int = 1, exponents: Sequence[int] | None = None) -> list[FlagshipCheck]:
        exponents = exponents if exponents is not None else range(1, emax + 1)
        return [self.verify_cell(p, e) for p, e in self.cells(primes, exponents)]

    def is_flagship_record(self, record: SweepRecord) -> bool:
        return is_flagship(Hypersurface.parse(self.ring(record.p), record.f_expr).F)

    def _validate_inputs(self, primes: Sequence[int], f_exprs: Sequence[str], split: str | None) -> None:
        """Parse every F (and split) before any cell is submitted."""
        for p in primes:
            for f_expr in f_exprs:
                Hypersurface.parse(self.ring(p), f_expr, split)

    def run_cell(self, p: int, e: int, f_expr: str = FLAGSHIP_F, split: str | None = None) -> SweepRecord:
        return SweepRecord(**_evaluate_cell(p, e, f_expr, split, self.config.seed, self.config.variables))

    def sweep(
        self,
        primes: Sequence[int],
        emax: int,
        f_exprs: Sequence[str] = (FLAGSHIP_F,),
        out: str | None = None,
        jobs: int | None = None,
        split: str | None = None,
    ) -> list[SweepRecord]:
        """Sync sweep over primes x 1..emax x f_exprs, appending to a JSONL file."""
        loop = always_get_an_event_loop()
        return loop.run_until_complete(self.asweep(primes, emax, f_exprs, out, jobs, split))

    async def asweep(
        self,
        primes: Sequence[int],
        emax: int,
        f_exprs: Sequence[str] = (FLAGSHIP_F,),
        out: str | None = None,
        jobs: int | None = None,
        split: str | None = None,
    ) -> list[SweepRecord]:
        """Async sweep; returns the records computed by this run.

        Cells already present in the output file are skipped, so an interrupted
        sweep resumes where it stopped.
        """
        jobs = max(1, jobs or self.config.jobs)
        out = out or self.config.sweep_out
        cells = self.cells(primes, range(1, emax + 1))
        self._validate_inputs(sorted({p for p, _ in cells}), f_exprs, split)
        storage = self._get_storage_class(self.sweep_storage)(
            namespace="sweep", global_config={"sweep_out": out}
        )
        await storage.initialize()

        keys = [(p, e, f) for p, e in cells for f in f_exprs]
        todo = await storage.filter_keys(set(keys))
        pending = [key for key in keys if key in todo]
        skipped = len(keys) - len(pending)
        if skipped:
            logger.info(f"Resuming sweep: {skipped} of {len(keys)} cells already in {out}")

        loop = asyncio.get_running_loop()
        executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
        seed = self.config.seed
        variables = self.config.variables

        @limit_async_func_call(jobs)
        async def run_one(p: int, e: int, f_expr: str) -> SweepRecord:
            logger.info(f"Sweep cell p={p} e={e} F={f_expr}")
            data = await loop.run_in_executor(
                executor, _evaluate_cell, p, e, f_expr, split, seed, variables
            )
            await storage.upsert(data)
            return SweepRecord(**data)

        try:
            results = await asyncio.gather(
                *(run_one(*key) for key in pending), return_exceptions=True
            )
        finally:
            if executor is not None:
                executor.shutdown()
            await storage.finalize()

        records = [r for r in results if isinstance(r, SweepRecord)]
        errors = [(key, r) for key, r in zip(pending, results) if isinstance(r, BaseException)]
        logger.info(f"Sweep finished: {len(records)} new records in {out}")
        if errors:
            for (p, e, f_expr), exc in errors:
                logger.error(f"Sweep cell p={p} e={e} F={f_expr} failed: {exc}")
            raise errors[0][1]
        return records
