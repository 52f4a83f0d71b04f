"""Trainable-parameter accounting and sweep enumeration for LoRA fine-tuning.

A LoRA adapter adds two matrices of shapes (d_in, r) and (r, d_out) next to
each adapted weight matrix, so each adapted matrix contributes
r * (d_in + d_out) trainable parameters. Everything here is pure arithmetic
over a declared architecture; no weights are ever materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingAlpha

AdaptedMatrix = tuple[str, int, int]


@dataclass(frozen=True)
class ModelArchSpec:
    """Declared transformer shape: the matrices LoRA will adapt per layer."""

    name: str
    num_layers: int
    adapted_matrices: tuple[AdaptedMatrix, ...]
    base_param_count: int

    def __post_init__(self):
        if self.num_layers <= 0:
            raise ValueError("num_layers must be positive")
        if self.base_param_count <= 0:
            raise ValueError("base_param_count must be positive")
        if not self.adapted_matrices:
            raise ValueError("adapted_matrices must be non-empty")
        for label, d_in, d_out in self.adapted_matrices:
            if d_in <= 0 or d_out <= 0:
                raise ValueError(f"matrix {label!r} has non-positive dimension")


@dataclass(frozen=True)
class LoraConfig:
    rank_r: int
    alpha: float
    dropout: float = 0.0
    dataset_label: str = ""
    record_count: int = 0

    def __post_init__(self):
        if self.rank_r < 1:
            raise ValueError("rank_r must be >= 1")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must lie in [0, 1)")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.record_count < 0:
            raise ValueError("record_count must be nonnegative")


@dataclass(frozen=True)
class LoraPlan:
    """A fully costed LoRA configuration against a concrete architecture."""

    config: LoraConfig
    trainable_params: int
    total_params: int
    trainable_percent: float
    adapter_scale: float


def dim_sum(arch: ModelArchSpec) -> int:
    """Per-rank parameter constant: num_layers * sum of (d_in + d_out)."""
    per_layer = sum(d_in + d_out for _, d_in, d_out in arch.adapted_matrices)
    return arch.num_layers * per_layer


def trainable_params(arch: ModelArchSpec, rank_r: int) -> int:
    """Adapter parameter count at the given rank."""
    if rank_r < 1:
        raise ValueError("rank_r must be >= 1")
    return rank_r * dim_sum(arch)


def trainable_percent(trainable: int, total: int) -> float:
    """Trainable share of the full model, in percent."""
    if total <= 0:
        raise ValueError("total parameter count must be positive")
    return 100.0 * trainable / total


def adapter_scale(alpha: float, rank_r: int) -> float:
    """Scaling factor alpha / r applied to adapter output at inference."""
    if rank_r < 1:
        raise ValueError("rank_r must be >= 1")
    return alpha / rank_r


def build_plan(arch: ModelArchSpec, config: LoraConfig) -> LoraPlan:
    trainable = trainable_params(arch, config.rank_r)
    total = arch.base_param_count + trainable
    return LoraPlan(
        config=config,
        trainable_params=trainable,
        total_params=total,
        trainable_percent=trainable_percent(trainable, total),
        adapter_scale=adapter_scale(config.alpha, config.rank_r),
    )


def enumerate_sweep(
    arch: ModelArchSpec,
    ranks: set[int] | list[int] | tuple[int, ...],
    alphas: dict[int, float],
    dropout: float = 0.0,
) -> list[LoraPlan]:
    """One plan per rank, ordered ascending by rank.

    Alphas follow no closed-form rule, so every rank must be given one
    explicitly; a missing entry raises :class:`MissingAlpha`.
    """
    missing = sorted(r for r in ranks if r not in alphas)
    if missing:
        raise MissingAlpha(f"no alpha configured for ranks {missing}")
    plans = []
    for rank in sorted(set(ranks)):
        config = LoraConfig(rank_r=rank, alpha=alphas[rank], dropout=dropout)
        plans.append(build_plan(arch, config))
    return plans


def plan_table(plans: list[LoraPlan], fmt: str = "text") -> str:
    """Render plans as CSV or an aligned text table.

    Columns: rank, alpha, trainable, total, percentage.
    """
    header = ("rank", "alpha", "trainable_params", "total_params", "trainable_percent")
    rows = [
        (
            str(p.config.rank_r),
            f"{p.config.alpha:g}",
            str(p.trainable_params),
            str(p.total_params),
            f"{p.trainable_percent:.6f}",
        )
        for p in plans
    ]
    if fmt == "csv":
        return "\n".join([",".join(header)] + [",".join(r) for r in rows]) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown table format {fmt!r}")
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header))]
    for r in rows:
        lines.append("  ".join(r[i].rjust(widths[i]) for i in range(len(header))))
    return "\n".join(lines) + "\n"


# Reference 70B decoder: 80 layers, seven adapted projections per layer
# (attention q/k/v/o plus the gated MLP). Grouped-query attention gives the
# k/v projections their narrower 1024 output width.
LLAMA_70B_REFERENCE = ModelArchSpec(
    name="llama-70b-reference",
    num_layers=80,
    adapted_matrices=(
        ("q_proj", 8192, 8192),
        ("k_proj", 8192, 1024),
        ("v_proj", 8192, 1024),
        ("o_proj", 8192, 8192),
        ("gate_proj", 8192, 28672),
        ("up_proj", 8192, 28672),
        ("down_proj", 28672, 8192),
    ),
    base_param_count=70_553_706_496,
)

ARCH_PRESETS: dict[str, ModelArchSpec] = {
    LLAMA_70B_REFERENCE.name: LLAMA_70B_REFERENCE,
}
