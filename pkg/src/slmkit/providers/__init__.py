"""Provider construction from run-config specs."""

from __future__ import annotations

from .base import (
    ChatProvider,
    ChatRequest,
    ChatResult,
    EmbeddingProvider,
    FinetuneClient,
    FinetuneJobSpec,
    JobStatus,
)
from .finetune import HttpFinetuneClient, dataset_token_count, validate_finetune_spec
from .mock import MockChatProvider, MockEmbedder, MockFinetuneClient
from .openai_compat import OpenAICompatClient
from .ratelimit import TokenBucket

DEFAULT_RATE_LIMIT_RPM = 600


def _http_client(spec: dict) -> OpenAICompatClient:
    rpm = float(spec.get("rate_limit_rpm", DEFAULT_RATE_LIMIT_RPM))
    return OpenAICompatClient(
        base_url=spec["base_url"],
        model_id=spec.get("model", ""),
        api_key_env=spec.get("api_key_env", "OPENAI_API_KEY"),
        embedding_model_id=spec.get("embedding_model", ""),
        rate_limiter=TokenBucket(rate_per_minute=rpm, capacity=rpm),
    )


def build_chat_provider(spec: dict, default_seed: int) -> ChatProvider:
    kind = spec.get("kind", "mock")
    if kind == "mock":
        return MockChatProvider(
            seed=int(spec.get("seed", default_seed)),
            behavior=spec.get("behavior", "generator"),
            model_id=spec.get("model", "mock-model"),
        )
    if kind == "openai-compat":
        return _http_client(spec)
    raise ValueError(f"unknown chat provider kind {kind!r}")


def build_embedder(spec: dict, default_seed: int) -> EmbeddingProvider:
    kind = spec.get("kind", "mock")
    if kind == "mock":
        return MockEmbedder(dims=int(spec.get("dims", 256)))
    if kind == "openai-compat":
        return _http_client(spec)
    raise ValueError(f"unknown embedding provider kind {kind!r}")


def build_finetune_client(spec: dict, default_seed: int) -> FinetuneClient:
    kind = spec.get("kind", "mock")
    if kind == "mock":
        return MockFinetuneClient(
            seed=int(spec.get("seed", default_seed)),
            simulated_polls=int(spec.get("simulated_polls", 2)),
            tokens_per_second=float(spec.get("tokens_per_second", 86.0)),
            cost_rate=float(spec.get("cost_rate", 0.0022)),
        )
    if kind == "openai-compat":
        http = _http_client(spec)
        return HttpFinetuneClient(http, spec["base_url"])
    raise ValueError(f"unknown finetune provider kind {kind!r}")


__all__ = [
    "ChatProvider",
    "ChatRequest",
    "ChatResult",
    "EmbeddingProvider",
    "FinetuneClient",
    "FinetuneJobSpec",
    "JobStatus",
    "HttpFinetuneClient",
    "MockChatProvider",
    "MockEmbedder",
    "MockFinetuneClient",
    "OpenAICompatClient",
    "TokenBucket",
    "build_chat_provider",
    "build_embedder",
    "build_finetune_client",
    "dataset_token_count",
    "validate_finetune_spec",
]
