"""Order-swapped pairwise judging.

Judges prefer whichever response they see first often enough that a single
call cannot be trusted, so every comparison runs twice with the
presentation order swapped. The two calls must agree to produce a winner;
anything else resolves to a tie.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

from ..errors import MissingOutput, NoVerdictToken
from ..providers.base import ChatProvider, ChatRequest
from .prompts import CRITERIA, render_judge_prompt
from .verdicts import (
    TIE,
    CandidateResponse,
    DebiasedVerdict,
    LedgerEntry,
    Verdict,
    VerdictLedger,
    parse_verdict,
)

logger = logging.getLogger(__name__)

_ERROR_VERDICT = Verdict(winner="Tie", rationale="", raw_completion="")


def _ask(provider: ChatProvider, prompt: str) -> str:
    request = ChatRequest(
        model_id=provider.model_id,
        messages=[{"role": "user", "content": prompt}],
        temperature=0.0,
        max_tokens=512,
    )
    return provider.chat(request).text


def judge_debiased(
    provider: ChatProvider,
    query: str,
    sys1: CandidateResponse,
    sys2: CandidateResponse,
    knowledge_source: str,
    context: str,
    criterion: str,
) -> DebiasedVerdict:
    """Run both presentation orders and resolve.

    sys1 wins only if the forward call picks slot A and the reversed call
    picks slot B; symmetrically for sys2. A completion with no verdict
    token does not abort the comparison: it yields an annotated tie.
    """
    if sys1.system_id == sys2.system_id:
        raise ValueError("cannot judge a system against itself")

    forward_prompt = render_judge_prompt(query, sys1.text, sys2.text, knowledge_source, context, criterion)
    reversed_prompt = render_judge_prompt(query, sys2.text, sys1.text, knowledge_source, context, criterion)

    annotations = []
    try:
        forward = parse_verdict(_ask(provider, forward_prompt))
    except NoVerdictToken:
        forward = _ERROR_VERDICT
        annotations.append("forward completion had no verdict token")
    try:
        rev = parse_verdict(_ask(provider, reversed_prompt))
    except NoVerdictToken:
        rev = _ERROR_VERDICT
        annotations.append("reversed completion had no verdict token")

    # Map slot labels back to systems for each order.
    forward_pick = {"A": sys1.system_id, "B": sys2.system_id, "Tie": TIE}[forward.winner]
    reversed_pick = {"A": sys2.system_id, "B": sys1.system_id, "Tie": TIE}[rev.winner]
    if forward_pick == reversed_pick and forward_pick != TIE:
        resolved = forward_pick
    else:
        resolved = TIE
        if forward_pick != reversed_pick and TIE not in (forward_pick, reversed_pick) and not annotations:
            annotations.append("orders disagreed")

    return DebiasedVerdict(
        criterion=criterion,
        forward=forward,
        reversed_order=rev,
        resolved_winner=resolved,
        annotation="; ".join(annotations),
    )


def evaluate_suite(
    provider: ChatProvider,
    prompts: list[tuple[str, str]],
    outputs: dict[str, dict[str, str]],
    pair: tuple[str, str],
    knowledge_source: str,
    contexts: dict[str, str] | None = None,
    criteria: tuple[str, ...] = CRITERIA,
    max_workers: int = 1,
) -> VerdictLedger:
    """Judge every (prompt, criterion) cell for a pair of systems.

    ``prompts`` is an ordered list of (prompt_id, text); ``outputs`` maps
    system_id -> prompt_id -> response text. Missing outputs fail before
    any provider call. Entry order is prompt order crossed with the fixed
    criterion order, regardless of completion order.
    """
    criteria = tuple(c for c in CRITERIA if c in set(criteria))
    sys1_id, sys2_id = pair
    contexts = contexts or {}

    for system_id in pair:
        if system_id not in outputs:
            raise MissingOutput(f"no outputs recorded for system {system_id!r}")
        for prompt_id, _ in prompts:
            if prompt_id not in outputs[system_id]:
                raise MissingOutput(f"system {system_id!r} has no output for prompt {prompt_id!r}")

    cells = [
        (prompt_id, text, criterion)
        for prompt_id, text in prompts
        for criterion in criteria
    ]

    def run_cell(cell: tuple[str, str, str]) -> LedgerEntry:
        prompt_id, text, criterion = cell
        verdict = judge_debiased(
            provider,
            query=text,
            sys1=CandidateResponse(sys1_id, outputs[sys1_id][prompt_id]),
            sys2=CandidateResponse(sys2_id, outputs[sys2_id][prompt_id]),
            knowledge_source=knowledge_source,
            context=contexts.get(prompt_id, ""),
            criterion=criterion,
        )
        return LedgerEntry(prompt_id=prompt_id, criterion=criterion, verdict=verdict)

    if max_workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            entries = list(pool.map(run_cell, cells))
    else:
        entries = [run_cell(cell) for cell in cells]

    return VerdictLedger(systems=(sys1_id, sys2_id), entries=entries)
