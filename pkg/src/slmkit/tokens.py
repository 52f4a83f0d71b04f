"""Token counting.

The token counter is pluggable everywhere it is used (dataset accounting,
chunk sizing, context budgets). The default counts whitespace-delimited
words, which is deterministic and needs no model-specific vocabulary.
"""

from __future__ import annotations

from typing import Callable

TokenCounter = Callable[[str], int]


def word_count(text: str) -> int:
    """Number of whitespace-delimited words in ``text``."""
    return len(text.split())


DEFAULT_COUNTER: TokenCounter = word_count
