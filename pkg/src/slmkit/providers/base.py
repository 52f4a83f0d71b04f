"""Provider gateway contracts.

Chat, embedding, and fine-tune services all speak an OpenAI-compatible
wire protocol; the mock implementations satisfy the same interfaces so
every pipeline stage runs offline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, Sequence, runtime_checkable

import numpy as np

VALID_ROLES = {"system", "user", "assistant"}


@dataclass(frozen=True)
class ChatRequest:
    model_id: str
    messages: tuple[dict, ...]
    temperature: float = 0.7
    max_tokens: int = 512
    seed: int | None = None

    def __init__(
        self,
        model_id: str,
        messages: Sequence[dict],
        temperature: float = 0.7,
        max_tokens: int = 512,
        seed: int | None = None,
    ):
        if not messages:
            raise ValueError("messages must be non-empty")
        for msg in messages:
            if msg.get("role") not in VALID_ROLES:
                raise ValueError(f"invalid message role {msg.get('role')!r}")
            if "content" not in msg:
                raise ValueError("message missing content")
        object.__setattr__(self, "model_id", model_id)
        object.__setattr__(self, "messages", tuple(dict(m) for m in messages))
        object.__setattr__(self, "temperature", temperature)
        object.__setattr__(self, "max_tokens", max_tokens)
        object.__setattr__(self, "seed", seed)

    def body(self) -> dict:
        payload = {
            "model": self.model_id,
            "messages": [dict(m) for m in self.messages],
            "temperature": self.temperature,
            "max_tokens": self.max_tokens,
        }
        if self.seed is not None:
            payload["seed"] = self.seed
        return payload


@dataclass(frozen=True)
class ChatResult:
    text: str
    prompt_tokens: int = 0
    completion_tokens: int = 0


@dataclass(frozen=True)
class JobStatus:
    job_id: str
    state: str  # queued | running | succeeded | failed
    elapsed_seconds: float = 0.0
    reported_cost: float | None = None

    TERMINAL = ("succeeded", "failed")

    @property
    def is_terminal(self) -> bool:
        return self.state in self.TERMINAL


@runtime_checkable
class ChatProvider(Protocol):
    model_id: str

    def chat(self, request: ChatRequest) -> ChatResult: ...


@runtime_checkable
class EmbeddingProvider(Protocol):
    def embed(self, texts: Sequence[str]) -> list[np.ndarray]: ...


@dataclass
class FinetuneJobSpec:
    """Submission payload for a LoRA fine-tune job."""

    base_model_id: str
    dataset_file: str
    rank_r: int
    alpha: float
    dropout: float
    epochs: int = 1
    extra: dict = field(default_factory=dict)


@runtime_checkable
class FinetuneClient(Protocol):
    def submit(self, spec: FinetuneJobSpec) -> str: ...

    def poll(self, job_id: str) -> JobStatus: ...
