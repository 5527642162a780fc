from __future__ import annotations

from typing import Optional

from pydantic import BaseModel


class ProbeRecord(BaseModel):
    prime: str  # the polynomial pi(t) of the candidate (pi, x, y)
    associated: bool
    witness: Optional[str] = None


class Theorem12Report(BaseModel):
    p: int
    e: int
    q: int
    member_tau_g: bool
    not_member_g: bool
    contraction_equals_tau: bool
    contraction: str

    @property
    def passed(self) -> bool:
        return self.member_tau_g and self.not_member_g and self.contraction_equals_tau


class Remark13Report(BaseModel):
    p: int
    e: int
    q: int
    ge_check: bool
    probes: list[ProbeRecord] = []
    tame_probes: list[ProbeRecord] = []  # positive primes re-probed against (x,y)^q + (F)

    @property
    def probes_tame(self) -> bool:
        return not any(probe.associated for probe in self.tame_probes)

    @property
    def passed(self) -> bool:
        return self.ge_check and self.probes_tame


class Lemma10Report(BaseModel):
    p: int
    e: int
    q: int
    factors: list[str]
    substitution: dict[str, str]
    normal_form: str
    unit: int
    substitution_ok: bool
    torsion_free_before: bool
    torsion_free_after: bool

    @property
    def passed(self) -> bool:
        return self.substitution_ok and self.torsion_free_before and self.torsion_free_after


class FlagshipCheck(BaseModel):
    p: int
    e: int
    q: int
    degenerate: bool
    lemma11: bool
    theorem12: Optional[Theorem12Report] = None
    witness_colon: Optional[str] = None
    tau: str
    tau_divides_torsion: bool
    remark13: Remark13Report
    duration_ms: int = 0

    @property
    def passed(self) -> bool:
        ok = self.lemma11 and self.tau_divides_torsion and self.remark13.passed
        if not self.degenerate:
            ok = ok and self.theorem12 is not None and self.theorem12.passed
            ok = ok and self.witness_colon == self.tau
        return ok


class SweepRecord(BaseModel):
    p: int
    e: int
    q: int
    f_expr: str
    lemma11: bool
    thm12_member_tau_g: Optional[bool] = None
    thm12_not_member_g: Optional[bool] = None
    thm12_contraction_is_tau: Optional[bool] = None
    ge_check: Optional[bool] = None
    divisors: list[str] = []
    probes: list[ProbeRecord] = []
    duration_ms: int = 0

    @property
    def key(self) -> tuple[int, int, str]:
        return (self.p, self.e, self.f_expr)

    def checks_hold(self, flagship: bool) -> bool:
        """The identities asserted for every cell; ge_check only for the flagship F."""
        checks = [self.lemma11]
        checks += [
            v
            for v in (self.thm12_member_tau_g, self.thm12_not_member_g, self.thm12_contraction_is_tau)
            if v is not None
        ]
        if flagship and self.ge_check is not None:
            checks.append(self.ge_check)
        return all(checks)
