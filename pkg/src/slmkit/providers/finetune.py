"""Fine-tune job submission and polling.

The job API is deliberately minimal: submit a role-records dataset plus
LoRA hyperparameters, get back an opaque job id, poll until a terminal
state. ``HttpFinetuneClient`` adapts that to an OpenAI-style REST
endpoint; the scripted mock lives in :mod:`slmkit.providers.mock`.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import MalformedResponse, UnknownJob, ValidationError
from ..tokens import word_count
from .base import FinetuneJobSpec, JobStatus


def validate_finetune_spec(spec: FinetuneJobSpec) -> None:
    """Collect every violation before raising."""
    problems: list[str] = []
    if not spec.base_model_id:
        problems.append("base_model_id is empty")
    if spec.rank_r < 1:
        problems.append("rank_r must be >= 1")
    if not 0.0 <= spec.dropout < 1.0:
        problems.append("dropout must lie in [0, 1)")
    if spec.alpha <= 0:
        problems.append("alpha must be positive")
    if spec.epochs < 1:
        problems.append("epochs must be >= 1")
    path = Path(spec.dataset_file)
    if not path.is_file():
        problems.append(f"dataset file not found: {spec.dataset_file}")
    else:
        try:
            records = _read_role_records(path)
            if not records:
                problems.append("dataset file contains no records")
        except ValueError as exc:
            problems.append(str(exc))
    if problems:
        raise ValidationError(problems)


def _read_role_records(path: Path) -> list[dict]:
    records = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"dataset line {lineno} is not valid JSON: {exc}") from exc
            messages = obj.get("messages")
            if not isinstance(messages, list) or not messages:
                raise ValueError(f"dataset line {lineno} has no messages array")
            records.append(obj)
    return records


def dataset_token_count(dataset_file: str | Path) -> int:
    """Whitespace token total over every message content in the file."""
    total = 0
    for record in _read_role_records(Path(dataset_file)):
        for message in record["messages"]:
            total += word_count(str(message.get("content", "")))
    return total


class HttpFinetuneClient:
    """REST adapter: POST /fine_tuning/jobs to submit, GET to poll."""

    def __init__(self, http, base_url: str):
        # ``http`` is an OpenAICompatClient; submission shares its retry
        # and rate-limit machinery.
        self._http = http
        self._base = base_url.rstrip("/")

    def submit(self, spec: FinetuneJobSpec) -> str:
        validate_finetune_spec(spec)
        dataset = Path(spec.dataset_file).read_text(encoding="utf-8")
        body = {
            "model": spec.base_model_id,
            "training_data": dataset,
            "hyperparameters": {
                "lora_r": spec.rank_r,
                "lora_alpha": spec.alpha,
                "lora_dropout": spec.dropout,
                "n_epochs": spec.epochs,
            },
        }
        payload = self._http.post_json(f"{self._base}/fine_tuning/jobs", body)
        job_id = payload.get("id")
        if not job_id:
            raise MalformedResponse("job submission response carries no id")
        return str(job_id)

    def poll(self, job_id: str) -> JobStatus:
        payload = self._http.get_json(f"{self._base}/fine_tuning/jobs/{job_id}", not_found_error=UnknownJob)
        state = payload.get("status")
        if state not in ("queued", "running", "succeeded", "failed"):
            raise MalformedResponse(f"unknown job state {state!r}")
        return JobStatus(
            job_id=job_id,
            state=state,
            elapsed_seconds=float(payload.get("elapsed_seconds", 0.0)),
            reported_cost=payload.get("cost"),
        )
