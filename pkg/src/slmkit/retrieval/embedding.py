"""Deterministic fallback embedder.

Hashed bag-of-words: each lowercased word token is hashed with blake2b
(stable across processes, unlike the builtin salted ``hash``) and counted
into one of ``dims`` buckets. Retrieval quality is crude but the vectors
are reproducible with no provider, which is what offline tests need.
"""

from __future__ import annotations

import hashlib
import re
from typing import Sequence

import numpy as np

DEFAULT_DIMS = 256

_WORD_RE = re.compile(r"\w+")


def _bucket(token: str, dims: int) -> int:
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") % dims


def hash_embed_text(text: str, dims: int = DEFAULT_DIMS) -> np.ndarray:
    vec = np.zeros(dims, dtype=np.float64)
    for token in _WORD_RE.findall(text.lower()):
        vec[_bucket(token, dims)] += 1.0
    return vec


def hash_embed(texts: Sequence[str], dims: int = DEFAULT_DIMS) -> list[np.ndarray]:
    return [hash_embed_text(t, dims) for t in texts]
