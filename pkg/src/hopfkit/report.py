"""Run configuration and the deterministic check-report tree.

Reports with a fixed config render byte-identically across runs: checks are
sorted by id, witnesses use the canonical element renderings, and nothing
time- or machine-dependent is emitted.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

REPORT_VERSION = "hopfkit-report v1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def default_order() -> int:
    env = os.environ.get("HOPFKIT_ORDER")
    return int(env) if env else 3


@dataclass(frozen=True)
class RunConfig:
    order: int = field(default_factory=default_order)
    degree_cap: int = 12
    qybe_order: int = 2
    pair_degree: int = 3
    samples: int = 1000
    seed: int = 0
    fuel: int = 10**6
    fmt: str = "text"

    def __post_init__(self):
        for name in ("order", "degree_cap", "qybe_order", "pair_degree", "samples", "fuel"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def with_(self, **kw) -> RunConfig:
        return replace(self, **kw)

    def render(self) -> str:
        return (
            f"N={self.order} degree_cap={self.degree_cap} qybe_order={self.qybe_order}"
            f" pair_degree={self.pair_degree} samples={self.samples} seed={self.seed}"
        )


@dataclass(frozen=True)
class Check:
    """One verification outcome.  status: pass | fail | info."""

    id: str
    status: str
    witness: str = ""
    order: int | None = None
    notes: tuple[str, ...] = ()

    @property
    def failed(self) -> bool:
        return self.status == "fail"


class Report:
    """Deterministic merge of independent checks."""

    def __init__(self, subject: str, checks: list[Check] | None = None):
        self.subject = subject
        self.checks: list[Check] = list(checks or [])

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return not any(c.failed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.failed]

    def sorted_checks(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.id)

    def annotations(self) -> list[str]:
        return [note for c in self.sorted_checks() for note in c.notes]

    # -- rendering -----------------------------------------------------------

    def render_machine(self, config: RunConfig) -> str:
        lines = [REPORT_VERSION, f"config {config.render()}", f"subject {self.subject}"]
        for check in self.sorted_checks():
            order = "" if check.order is None else f" order={check.order}"
            lines.append(f"check {check.id} {check.status}{order}")
            if check.witness:
                for wline in check.witness.splitlines():
                    lines.append(f"  witness {wline}")
            for note in check.notes:
                lines.append(f"  note {note}")
        verdict = "pass" if self.passed else "fail"
        lines.append(
            f"summary {verdict} checks={len(self.checks)} failures={len(self.failures)}"
        )
        return "\n".join(lines) + "\n"

    def render_text(self, config: RunConfig) -> str:
        lines = [f"{self.subject}  ({config.render()})"]
        for check in self.sorted_checks():
            mark = {"pass": "PASS", "fail": "FAIL", "info": "info"}[check.status]
            order = "" if check.order is None else f"  [order {check.order}]"
            lines.append(f"  [{mark}] {check.id}{order}")
            if check.witness:
                for wline in check.witness.splitlines():
                    lines.append(f"         witness: {wline}")
            for note in check.notes:
                lines.append(f"         note: {note}")
        verdict = "all checks passed" if self.passed else (
            f"{len(self.failures)} of {len(self.checks)} checks FAILED"
        )
        lines.append(f"  => {verdict}")
        return "\n".join(lines) + "\n"

    def render(self, config: RunConfig) -> str:
        if config.fmt == "machine":
            return self.render_machine(config)
        return self.render_text(config)
