"""Training cost and throughput accounting."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NonPositiveDuration


def tokens_per_second(dataset_tokens: int, training_seconds: float) -> float:
    if training_seconds <= 0:
        raise NonPositiveDuration("training_seconds must be positive")
    return dataset_tokens / training_seconds


def cost_per_second(cost: float, training_seconds: float) -> float:
    if training_seconds <= 0:
        raise NonPositiveDuration("training_seconds must be positive")
    return cost / training_seconds


def estimate_training_cost(predicted_seconds: float, rate_per_second: float) -> float:
    """Projected USD cost of a run at a flat per-second GPU rate."""
    if predicted_seconds < 0 or rate_per_second < 0:
        raise ValueError("duration and rate must be nonnegative")
    return predicted_seconds * rate_per_second


@dataclass(frozen=True)
class CostRecord:
    """One fine-tuning run: token volume, wall clock, dollars, derived rates."""

    dataset_tokens: int
    training_seconds: float
    cost: float
    cost_per_second: float
    tokens_per_second: float

    @classmethod
    def from_run(cls, dataset_tokens: int, training_seconds: float, cost: float) -> "CostRecord":
        return cls(
            dataset_tokens=dataset_tokens,
            training_seconds=training_seconds,
            cost=cost,
            cost_per_second=cost_per_second(cost, training_seconds),
            tokens_per_second=tokens_per_second(dataset_tokens, training_seconds),
        )
