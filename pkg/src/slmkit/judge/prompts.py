"""Pairwise judge prompt rendering.

The template asks the judge model to pick the better of two responses and
emit a bracketed verdict token. A single criterion sentence is appended so
each call scores exactly one of the three evaluation axes.
"""

from __future__ import annotations

from ..errors import MissingField

CRITERIA = ("knowledge", "conversational_quality", "conciseness")

CRITERION_LABELS = {
    "knowledge": "Knowledge",
    "conversational_quality": "Conversational Quality",
    "conciseness": "Conciseness",
}

JUDGE_TEMPLATE = """\
Please act as an impartial judge and evaluate the quality of the response provided by two AI assistants to the input prompt.
The responses should reflect knowledge of {knowledge_source} demonstrating specific and knowledgeable insights from {context} about the query.
Avoid positional Biasness.
Just declare which response is better and provide one statement why.
User's Query: {query}
Assistant A Response: {response_a}
Assistant B Response: {response_b}
You should choose the assistant that produces a better generation. Avoid positional biases and ensure that the order in which the responses were presented does not influence your decision. Be as objective as possible. After providing your explanation, output your final verdict strictly following this format: [[A]] if assistant A is better, [[B]] if assistant B is better, and [[C]] for a tie.
Judge on one criterion only: {criterion}."""


def render_judge_prompt(
    query: str,
    response_a: str,
    response_b: str,
    knowledge_source: str,
    context: str,
    criterion: str,
) -> str:
    """Fill the judge template. ``context`` may be empty when judging
    without retrieval; every other field must be non-empty."""
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}, expected one of {CRITERIA}")
    required = {
        "query": query,
        "response_a": response_a,
        "response_b": response_b,
        "knowledge_source": knowledge_source,
    }
    empty = sorted(name for name, value in required.items() if not value.strip())
    if empty:
        raise MissingField(f"empty judge prompt field(s): {', '.join(empty)}")
    return JUDGE_TEMPLATE.format(
        knowledge_source=knowledge_source,
        context=context,
        query=query,
        response_a=response_a,
        response_b=response_b,
        criterion=CRITERION_LABELS[criterion],
    )
