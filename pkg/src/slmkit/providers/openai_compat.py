"""HTTP client for OpenAI-compatible chat-completion and embedding services."""

from __future__ import annotations

import logging
import os
import random
import time
from typing import Callable, Sequence

import httpx
import numpy as np

from ..errors import AuthError, MalformedResponse, RateLimited, TransportError
from .base import ChatRequest, ChatResult
from .ratelimit import TokenBucket

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 5
BACKOFF_BASE_SECONDS = 1.0
BACKOFF_FACTOR = 2.0


class OpenAICompatClient:
    """Chat + embeddings over the OpenAI wire protocol.

    Transient failures (timeouts, connection errors, 429, 5xx) retry with
    exponential backoff and full jitter, at most ``MAX_ATTEMPTS`` tries.
    Auth failures and other 4xx responses surface immediately. Every
    attempt passes through the shared rate limiter first.
    """

    def __init__(
        self,
        base_url: str,
        model_id: str,
        api_key_env: str = "OPENAI_API_KEY",
        embedding_model_id: str = "",
        timeout: float = 60.0,
        rate_limiter: TokenBucket | None = None,
        transport: httpx.BaseTransport | None = None,
        sleeper: Callable[[float], None] = time.sleep,
        rng: random.Random | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.model_id = model_id
        self.embedding_model_id = embedding_model_id or model_id
        self.api_key_env = api_key_env
        self.rate_limiter = rate_limiter or TokenBucket(rate_per_minute=600, capacity=600)
        self._client = httpx.Client(timeout=timeout, transport=transport)
        self._sleeper = sleeper
        self._rng = rng or random.Random()

    def _api_key(self) -> str:
        key = os.environ.get(self.api_key_env, "")
        if not key:
            raise AuthError(f"environment variable {self.api_key_env} is not set")
        return key

    def _request(self, method: str, url: str, body: dict | None, not_found_error=None) -> dict:
        headers = {"Authorization": f"Bearer {self._api_key()}"}
        last_error: Exception | None = None
        for attempt in range(1, MAX_ATTEMPTS + 1):
            self.rate_limiter.acquire()
            try:
                response = self._client.request(method, url, json=body, headers=headers)
            except httpx.TimeoutException as exc:
                last_error = TransportError(f"timeout calling {url}: {exc}")
            except httpx.TransportError as exc:
                last_error = TransportError(f"transport failure calling {url}: {exc}")
            else:
                if response.status_code == 200:
                    if attempt > 1:
                        logger.info("request to %s succeeded on attempt %d", url, attempt)
                    try:
                        return response.json()
                    except ValueError as exc:
                        raise MalformedResponse(f"response from {url} is not JSON: {exc}") from exc
                if response.status_code in (401, 403):
                    raise AuthError(f"{url} rejected credentials ({response.status_code})")
                if response.status_code == 404 and not_found_error is not None:
                    raise not_found_error(f"{url} not found")
                if response.status_code == 429:
                    last_error = RateLimited(f"{url} returned 429")
                elif response.status_code >= 500:
                    last_error = TransportError(f"{url} returned {response.status_code}")
                else:
                    raise TransportError(f"{url} returned {response.status_code}: {response.text[:200]}")
            if attempt < MAX_ATTEMPTS:
                delay = self._rng.uniform(0.0, BACKOFF_BASE_SECONDS * BACKOFF_FACTOR ** (attempt - 1))
                logger.warning("attempt %d/%d failed (%s); backing off %.2fs", attempt, MAX_ATTEMPTS, last_error, delay)
                self._sleeper(delay)
        assert last_error is not None
        raise last_error

    def post_json(self, url: str, body: dict) -> dict:
        return self._request("POST", url, body)

    def get_json(self, url: str, not_found_error=None) -> dict:
        return self._request("GET", url, None, not_found_error=not_found_error)

    def chat(self, request: ChatRequest) -> ChatResult:
        payload = self.post_json(f"{self.base_url}/chat/completions", request.body())
        try:
            text = payload["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise MalformedResponse(f"chat response missing first choice: {exc}") from exc
        usage = payload.get("usage") or {}
        return ChatResult(
            text=text,
            prompt_tokens=int(usage.get("prompt_tokens", 0)),
            completion_tokens=int(usage.get("completion_tokens", 0)),
        )

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        for i, text in enumerate(texts):
            if not text.strip():
                raise ValueError(f"text at position {i} is empty")
        if not texts:
            return []
        payload = self.post_json(
            f"{self.base_url}/embeddings",
            {"model": self.embedding_model_id, "input": list(texts)},
        )
        try:
            rows = sorted(payload["data"], key=lambda d: d["index"])
            vectors = [np.asarray(row["embedding"], dtype=np.float64) for row in rows]
        except (KeyError, TypeError) as exc:
            raise MalformedResponse(f"embedding response malformed: {exc}") from exc
        if len(vectors) != len(texts):
            raise MalformedResponse(f"expected {len(texts)} embeddings, got {len(vectors)}")
        return vectors
