"""Deterministic offline providers.

Every mock output is a pure function of (seed, request): replaying a whole
pipeline with a fixed seed reproduces byte-identical artifacts. The chat
mock recognises the toolkit's own prompt templates and answers each kind
with a simple scripted rule; anything else gets a generic completion.
"""

from __future__ import annotations

import hashlib
import re
import threading
from collections import Counter
from typing import Sequence

import numpy as np

from ..errors import UnknownJob, ValidationError
from ..retrieval.embedding import DEFAULT_DIMS, hash_embed
from ..tokens import word_count
from .base import ChatRequest, ChatResult, FinetuneJobSpec, JobStatus
from .finetune import dataset_token_count, validate_finetune_spec

QUESTION_MARKER = "Generate one conversation initiating statement"
ANSWER_MARKER = "Give an informative response in English in 2 lines"
JUDGE_MARKER = "Please act as an impartial judge"

STARTER_ROTATION = ("why", "when", "where", "how", "what", "who")

_GENERIC_FLAVORS = (
    "People often ask about {a}, and it usually comes back to {b}.",
    "{A} is the heart of it, though {b} matters almost as much.",
    "Most accounts focus on {a} before turning to {b}.",
    "{A} and {b} are the two things worth remembering here.",
)

_CONTEXT_RE = re.compile(r"Context:\n(.*?)(?:\nBegin the question|\Z)", re.DOTALL)
_HINT_RE = re.compile(r"Begin the question with '([^']+)'")
_QUESTION_RE = re.compile(r"Question: (.*?)\nContext:\n", re.DOTALL)
_JUDGE_BODY_RE = re.compile(
    r"User's Query: (.*?)\nAssistant A Response: (.*?)\nAssistant B Response: (.*?)\nYou should choose",
    re.DOTALL,
)
_JUDGE_CONTEXT_RE = re.compile(r"insights from (.*?) about the query\.", re.DOTALL)
_WORD_RE = re.compile(r"\w+")


def stable_int(*parts) -> int:
    """Process-independent hash of the given parts."""
    joined = "\x1f".join(str(p) for p in parts)
    digest = hashlib.blake2b(joined.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _salient_words(text: str, n: int = 2) -> list[str]:
    """Most frequent words of length >= 5, ties broken by first occurrence."""
    words = [w.lower() for w in _WORD_RE.findall(text)]
    long_words = [w for w in words if len(w) >= 5] or words
    if not long_words:
        return ["this"] * n
    ranked = [w for w, _ in Counter(long_words).most_common()]
    while len(ranked) < n:
        ranked.append(ranked[-1])
    return ranked[:n]


class MockChatProvider:
    """Scripted chat completions.

    behavior:
      generator             question/answer/generic synthesis rules
      judge_position_bias   always prefers slot A
      judge_content_overlap prefers the response sharing more words with
                            the judged context and query; equal is a tie
    """

    def __init__(self, seed: int, behavior: str = "generator", model_id: str = "mock-model"):
        if behavior not in ("generator", "judge_position_bias", "judge_content_overlap"):
            raise ValueError(f"unknown mock behavior {behavior!r}")
        self.seed = seed
        self.behavior = behavior
        self.model_id = model_id

    def chat(self, request: ChatRequest) -> ChatResult:
        prompt = "\n".join(m["content"] for m in request.messages)
        if self.behavior == "judge_position_bias":
            text = "The response shown first is stronger on this criterion. [[A]]"
        elif self.behavior == "judge_content_overlap":
            text = self._judge_by_overlap(prompt)
        elif QUESTION_MARKER in prompt:
            text = self._question(prompt)
        elif ANSWER_MARKER in prompt:
            text = self._answer(prompt)
        else:
            text = self._generic(prompt, request.model_id)
        prompt_tokens = sum(word_count(m["content"]) for m in request.messages)
        return ChatResult(text=text, prompt_tokens=prompt_tokens, completion_tokens=word_count(text))

    def _question(self, prompt: str) -> str:
        context_match = _CONTEXT_RE.search(prompt)
        context = context_match.group(1) if context_match else prompt
        hint_match = _HINT_RE.search(prompt)
        first, second = _salient_words(context, 2)
        if hint_match:
            starter = hint_match.group(1)
        else:
            starter = STARTER_ROTATION[stable_int(self.seed, prompt) % len(STARTER_ROTATION)]
        return f"{starter} does {first} connect with {second} in this story?"

    def _answer(self, prompt: str) -> str:
        context_match = _CONTEXT_RE.search(prompt)
        context = context_match.group(1) if context_match else prompt
        question_match = _QUESTION_RE.search(prompt)
        question_word = _salient_words(question_match.group(1), 1)[0] if question_match else "that"
        first, second = _salient_words(context, 2)
        line1 = f"{first.capitalize()} sits at the centre of this, with {second} shaping how it unfolds."
        line2 = f"What about {question_word} would you like to explore next?"
        return f"{line1}\n{line2}"

    def _generic(self, prompt: str, model_id: str) -> str:
        first, second = _salient_words(prompt, 2)
        flavor = _GENERIC_FLAVORS[stable_int(self.seed, model_id, prompt) % len(_GENERIC_FLAVORS)]
        return flavor.format(a=first, b=second, A=first.capitalize())

    def _judge_by_overlap(self, prompt: str) -> str:
        body = _JUDGE_BODY_RE.search(prompt)
        if body is None:
            return "Neither response can be compared. [[C]]"
        query, response_a, response_b = body.groups()
        context_match = _JUDGE_CONTEXT_RE.search(prompt)
        reference = set(_WORD_RE.findall((context_match.group(1) if context_match else "").lower()))
        reference |= set(_WORD_RE.findall(query.lower()))
        score_a = len(set(_WORD_RE.findall(response_a.lower())) & reference)
        score_b = len(set(_WORD_RE.findall(response_b.lower())) & reference)
        if score_a > score_b:
            return "Assistant A grounds its answer in the source material more closely. [[A]]"
        if score_b > score_a:
            return "Assistant B grounds its answer in the source material more closely. [[B]]"
        return "Both responses draw on the material to the same degree. [[C]]"


class MockEmbedder:
    """Hashed bag-of-words vectors; see retrieval.embedding."""

    def __init__(self, dims: int = DEFAULT_DIMS):
        self.dims = dims

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        for i, text in enumerate(texts):
            if not text.strip():
                raise ValueError(f"text at position {i} is empty")
        return hash_embed(texts, self.dims)


class MockFinetuneClient:
    """Scripted fine-tune job service.

    A job runs for ``simulated_polls`` polls, then succeeds with an elapsed
    time derived from the dataset token count at ``tokens_per_second`` and
    a cost at ``cost_rate`` dollars per second.
    """

    def __init__(
        self,
        seed: int = 0,
        simulated_polls: int = 2,
        tokens_per_second: float = 86.0,
        cost_rate: float = 0.0022,
    ):
        if simulated_polls < 1:
            raise ValueError("simulated_polls must be >= 1")
        self.seed = seed
        self.simulated_polls = simulated_polls
        self.tokens_per_second = tokens_per_second
        self.cost_rate = cost_rate
        self._jobs: dict[str, dict] = {}
        self._lock = threading.Lock()

    def submit(self, spec: FinetuneJobSpec) -> str:
        validate_finetune_spec(spec)
        tokens = dataset_token_count(spec.dataset_file)
        job_id = "mock-%012x" % (
            stable_int(self.seed, spec.base_model_id, spec.dataset_file, spec.rank_r, spec.alpha, spec.dropout, spec.epochs)
            % (16**12)
        )
        with self._lock:
            self._jobs[job_id] = {"polls": 0, "tokens": tokens}
        return job_id

    def poll(self, job_id: str) -> JobStatus:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                raise UnknownJob(f"no such job {job_id!r}")
            job["polls"] += 1
            polls = job["polls"]
            tokens = job["tokens"]
        total_seconds = round(tokens / self.tokens_per_second, 2)
        if polls >= self.simulated_polls:
            return JobStatus(
                job_id=job_id,
                state="succeeded",
                elapsed_seconds=total_seconds,
                reported_cost=round(total_seconds * self.cost_rate, 4),
            )
        return JobStatus(
            job_id=job_id,
            state="running",
            elapsed_seconds=round(total_seconds * polls / self.simulated_polls, 2),
        )
