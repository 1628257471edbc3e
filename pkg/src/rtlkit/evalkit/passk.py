"""Unbiased pass@k estimation from repeated generation trials."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import DomainError


@dataclass
class TrialFlags:
    syntax_pass: bool
    functional_pass: bool

    def __post_init__(self) -> None:
        if self.functional_pass and not self.syntax_pass:
            raise DomainError("a functional pass implies a syntax pass")


@dataclass
class TrialRecord:
    problem_id: str
    trials: list[TrialFlags]
    temperature: float | None = None

    def __post_init__(self) -> None:
        if not self.trials:
            raise DomainError(f"problem {self.problem_id} has no trials")

    @property
    def n(self) -> int:
        return len(self.trials)

    def c(self, check: str = "functional") -> int:
        if check == "functional":
            return sum(t.functional_pass for t in self.trials)
        if check == "syntax":
            return sum(t.syntax_pass for t in self.trials)
        raise DomainError(f"unknown check kind: {check}")


def pass_at_k_single(n: int, c: int, k: int) -> float:
    """1 - C(n-c, k) / C(n, k), evaluated in overflow-safe product form."""
    if not 0 <= c <= n:
        raise DomainError(f"need 0 <= c <= n, got c={c}, n={n}")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n - c < k:
        return 1.0
    prod = 1.0
    for i in range(n - c + 1, n + 1):
        prod *= 1.0 - k / i
    return 1.0 - prod


def pass_at_k(records: list[TrialRecord], k: int, check: str = "functional") -> float:
    """Mean pass@k over problems; errors name any problem with n < k."""
    if not records:
        raise DomainError("no trial records")
    total = 0.0
    for rec in records:
        if rec.n < k:
            raise DomainError(f"problem {rec.problem_id}: n={rec.n} < k={k}")
        total += pass_at_k_single(rec.n, rec.c(check), k)
    return total / len(records)


def pass_at_k_report(records: list[TrialRecord], ks: list[int]) -> dict:
    """Per-temperature and best-over-temperatures pass@k, both check kinds."""

    def block(recs: list[TrialRecord]) -> dict:
        return {
            check: {f"pass@{k}": pass_at_k(recs, k, check) for k in ks}
            for check in ("syntax", "functional")
        }

    temps = sorted({rec.temperature for rec in records if rec.temperature is not None})
    report: dict = {}
    if temps:
        by_temp = {
            t: [r for r in records if r.temperature == t] for t in temps
        }
        report["by_temperature"] = {str(t): block(recs) for t, recs in by_temp.items()}
        report["best_over_temperatures"] = {
            check: {
                f"pass@{k}": max(
                    pass_at_k(recs, k, check) for recs in by_temp.values()
                )
                for k in ks
            }
            for check in ("syntax", "functional")
        }
    else:
        report.update(block(records))
    return report


def read_trials(path: str | Path) -> list[TrialRecord]:
    path = Path(path)
    if not path.is_file():
        raise DomainError(f"trials file not found: {path}")
    records = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
                records.append(
                    TrialRecord(
                        problem_id=str(raw["problem_id"]),
                        trials=[
                            TrialFlags(bool(t["syntax_pass"]), bool(t["functional_pass"]))
                            for t in raw["trials"]
                        ],
                        temperature=raw.get("temperature"),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DomainError(f"{path}:{line_no}: bad trial record: {exc}") from exc
    return records
