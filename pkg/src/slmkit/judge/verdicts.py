"""Verdict parsing and ledger containers."""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import IncompleteLedger, NoVerdictToken
from .prompts import CRITERIA

logger = logging.getLogger(__name__)

TIE = "tie"

_TOKEN_RE = re.compile(r"\[\[(A|B|C)\]\]")
_TOKEN_WINNER = {"A": "A", "B": "B", "C": "Tie"}


@dataclass(frozen=True)
class CandidateResponse:
    system_id: str
    text: str

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError(f"candidate response for {self.system_id!r} is empty")


@dataclass(frozen=True)
class Verdict:
    """One raw judge call: winner is the slot label A/B or Tie."""

    winner: str
    rationale: str
    raw_completion: str


def parse_verdict(completion: str) -> Verdict:
    """Extract the bracketed verdict from a judge completion.

    The last [[A]] / [[B]] / [[C]] occurrence wins; earlier ones are logged
    and ignored. The rationale is the completion with the winning token
    removed, trimmed.
    """
    matches = list(_TOKEN_RE.finditer(completion))
    if not matches:
        raise NoVerdictToken("no [[A]]/[[B]]/[[C]] token in judge completion")
    if len(matches) > 1:
        logger.warning("judge completion contains %d verdict tokens; using the last", len(matches))
    last = matches[-1]
    rationale = (completion[: last.start()] + completion[last.end() :]).strip()
    return Verdict(
        winner=_TOKEN_WINNER[last.group(1)],
        rationale=rationale,
        raw_completion=completion,
    )


@dataclass(frozen=True)
class DebiasedVerdict:
    """Two order-swapped judge calls resolved into one winner.

    ``forward`` shows system 1 in slot A; ``reversed_order`` shows it in
    slot B. The resolved winner is a system id only when both orders agree;
    any disagreement, tie, or malformed completion resolves to ``tie``.
    """

    criterion: str
    forward: Verdict
    reversed_order: Verdict
    resolved_winner: str
    annotation: str = ""


@dataclass(frozen=True)
class LedgerEntry:
    prompt_id: str
    criterion: str
    verdict: DebiasedVerdict


@dataclass
class VerdictLedger:
    """Per-prompt, per-criterion debiased verdicts between two systems."""

    systems: tuple[str, str]
    entries: list[LedgerEntry] = field(default_factory=list)

    def validate_complete(self) -> list[str]:
        """Prompt ids covered, after checking one entry per (prompt, criterion).

        Raises :class:`IncompleteLedger` on duplicates or ragged coverage
        across criteria.
        """
        seen: set[tuple[str, str]] = set()
        by_criterion: dict[str, set[str]] = {}
        for entry in self.entries:
            key = (entry.prompt_id, entry.criterion)
            if key in seen:
                raise IncompleteLedger(f"duplicate ledger entry for {key}")
            seen.add(key)
            by_criterion.setdefault(entry.criterion, set()).add(entry.prompt_id)
        if not by_criterion:
            return []
        prompt_sets = list(by_criterion.values())
        first = prompt_sets[0]
        if any(s != first for s in prompt_sets[1:]):
            raise IncompleteLedger("criteria cover different prompt sets")
        return sorted(first)


def save_ledger(ledger: VerdictLedger, path: Path) -> None:
    """Write one JSON object per entry, with both raw completions kept."""
    with path.open("w", encoding="utf-8") as fh:
        for entry in ledger.entries:
            v = entry.verdict
            fh.write(
                json.dumps(
                    {
                        "prompt_id": entry.prompt_id,
                        "criterion": entry.criterion,
                        "systems": list(ledger.systems),
                        "forward_winner": v.forward.winner,
                        "forward_completion": v.forward.raw_completion,
                        "reversed_winner": v.reversed_order.winner,
                        "reversed_completion": v.reversed_order.raw_completion,
                        "resolved_winner": v.resolved_winner,
                        "annotation": v.annotation,
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                )
                + "\n"
            )


def load_ledger(path: Path) -> VerdictLedger:
    entries: list[LedgerEntry] = []
    systems: tuple[str, str] | None = None
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            systems = (row["systems"][0], row["systems"][1])
            forward = Verdict(
                winner=row["forward_winner"], rationale="", raw_completion=row["forward_completion"]
            )
            rev = Verdict(
                winner=row["reversed_winner"], rationale="", raw_completion=row["reversed_completion"]
            )
            entries.append(
                LedgerEntry(
                    prompt_id=row["prompt_id"],
                    criterion=row["criterion"],
                    verdict=DebiasedVerdict(
                        criterion=row["criterion"],
                        forward=forward,
                        reversed_order=rev,
                        resolved_winner=row["resolved_winner"],
                        annotation=row.get("annotation", ""),
                    ),
                )
            )
    if systems is None:
        raise IncompleteLedger(f"ledger file {path} is empty")
    return VerdictLedger(systems=systems, entries=entries)


__all__ = [
    "CRITERIA",
    "TIE",
    "CandidateResponse",
    "Verdict",
    "DebiasedVerdict",
    "LedgerEntry",
    "VerdictLedger",
    "parse_verdict",
    "save_ledger",
    "load_ledger",
]
