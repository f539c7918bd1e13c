"""Multi-object decoding: repeated resonator runs with explain-away.

Each round, a fresh resonator run extracts one object from the current
residual, the object's reconstructed compound vector is subtracted out, and
the loop continues until a run budget is exhausted or the residual energy
falls below a threshold (meaning nothing recognizable is left).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .resonator import FactorEstimate, ResonatorConfig, run
from .scene import CodebookSet, SceneDescription, encode_object

__all__ = [
    "DecodedScene",
    "MatchResult",
    "decode_scene",
    "estimate_object_count",
    "explain_away",
    "match_objects",
]

HALT_MAX_RUNS = "max-runs"
HALT_ENERGY = "energy-threshold"


@dataclass(frozen=True)
class DecodedScene:
    """Extraction results in order, with the residual energy after each run."""

    objects: tuple[FactorEstimate, ...]
    residual_energy_trace: tuple[float, ...]
    runs_executed: int
    halted_by: str

    def to_dict(self) -> dict:
        return {
            "objects": [est.to_dict() for est in self.objects],
            "residual_energy_trace": list(self.residual_energy_trace),
            "runs_executed": self.runs_executed,
            "halted_by": self.halted_by,
        }


@dataclass(frozen=True)
class MatchResult:
    """Greedy set matching of decoded objects against the ground truth."""

    per_object: tuple[bool, ...]
    matched_truth: tuple[int | None, ...]
    num_correct: int
    truth_count: int

    @property
    def all_correct(self) -> bool:
        return self.num_correct == self.truth_count


def explain_away(s: np.ndarray, est: FactorEstimate, cbs: CodebookSet) -> np.ndarray:
    """Subtract the estimate's reconstructed compound vector from ``s``."""
    return np.asarray(s) - encode_object(cbs, est.as_object())


def estimate_object_count(s: np.ndarray) -> int:
    """Rough object count from vector energy: round(||s||^2 / dim).

    Exact counts come out on clean scene vectors; additive noise biases the
    energy upward, so noisy callers should rescale first.
    """
    s = np.asarray(s, dtype=np.float64)
    energy = float(np.dot(s, s))
    return int(math.floor(energy / s.shape[0] + 0.5))


def decode_scene(s: np.ndarray, cbs: CodebookSet, cfg: ResonatorConfig | None = None,
                 max_runs: int = 3, energy_threshold: float | None = None,
                 rng: np.random.Generator | None = None) -> DecodedScene:
    """Extract up to ``max_runs`` objects from a scene vector.

    The resonator is re-initialized fresh for every run; every output is
    subtracted from the residual, right or wrong. ``energy_threshold`` (on the
    squared norm of the residual; default 0.5 * dim) stops the loop early once
    the residual looks empty.
    """
    if max_runs < 1:
        raise ValueError(f"max_runs must be >= 1, got {max_runs}")
    if energy_threshold is None:
        energy_threshold = 0.5 * cbs.dim
    if energy_threshold < 0:
        raise ValueError(f"energy_threshold must be >= 0, got {energy_threshold}")
    residual = np.asarray(s)
    objects: list[FactorEstimate] = []
    energy_trace: list[float] = []
    halted_by = HALT_MAX_RUNS
    for _ in range(max_runs):
        estimate, _ = run(residual, cbs, cfg, rng)
        objects.append(estimate)
        residual = explain_away(residual, estimate, cbs)
        energy = float(np.dot(residual, residual))
        energy_trace.append(energy)
        if energy < energy_threshold:
            halted_by = HALT_ENERGY
            break
    return DecodedScene(
        objects=tuple(objects),
        residual_energy_trace=tuple(energy_trace),
        runs_executed=len(objects),
        halted_by=halted_by,
    )


def match_objects(decoded: DecodedScene, truth: SceneDescription) -> MatchResult:
    """Score decoded objects against the ground truth as a set.

    A decoded object is correct iff its full 4-tuple equals some ground-truth
    object not already claimed by an earlier decode, so duplicate identical
    decodes match at most once.
    """
    truth_tuples = [obj.as_tuple() for obj in truth]
    claimed = [False] * len(truth_tuples)
    per_object: list[bool] = []
    matched_truth: list[int | None] = []
    for est in decoded.objects:
        candidate = est.attribute_tuple()
        hit = None
        for index, truth_tuple in enumerate(truth_tuples):
            if not claimed[index] and truth_tuple == candidate:
                hit = index
                claimed[index] = True
                break
        per_object.append(hit is not None)
        matched_truth.append(hit)
    return MatchResult(
        per_object=tuple(per_object),
        matched_truth=tuple(matched_truth),
        num_correct=sum(per_object),
        truth_count=len(truth_tuples),
    )
