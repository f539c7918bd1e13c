"""Evaluation harness: seeded trials, noise sweeps, accuracy tables.

Every trial draws a random scene, encodes it, pushes the vector through the
noise channel at the trial's target similarity, decodes with explain-away,
and scores the decoded set against the ground truth. Per-trial seeds derive
from the master seed by counter, so trials are order-independent and the
whole experiment is reproducible bit-for-bit from its config.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .codebook import derive_seed
from .decoder import DecodedScene, decode_scene, match_objects
from .ops import cosine_similarity
from .resonator import ResonatorConfig
from .scene import (
    CodebookSet,
    PAPER_SIZES,
    SceneDescription,
    encode_scene,
    noisy_scene_vector,
    random_scene,
)

__all__ = [
    "ExperimentConfig",
    "GroupAccuracy",
    "IterationStats",
    "ResultTable",
    "SimilarityBin",
    "TrialRecord",
    "conditional_accuracy",
    "run_experiment",
    "summarize",
    "write_conditional_csv",
    "write_summary_csv",
    "write_trials_jsonl",
]

# independent seed streams under one master seed
_CODEBOOK_STREAM = 0
_TRIAL_STREAM = 1

SUMMARY_COLUMNS = ("object_count", "noise_target", "runs_allowed", "k_correct",
                   "fraction", "trial_count")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs; serializes to/from a flat JSON config file.

    ``max_runs=None`` switches on the count-aware mode: the per-trial run
    budget is inferred from the noisy vector's energy, debiased by the known
    noise target.
    """

    dim: int = 1000
    codebook_sizes: tuple[int, int, int, int] = PAPER_SIZES
    object_counts: tuple[int, ...] = (1, 2, 3)
    trials: int = 1000
    noise_targets: tuple[float, ...] = (1.0,)
    max_runs: int | None = 3
    energy_threshold: float | None = None
    resonator: ResonatorConfig = field(default_factory=ResonatorConfig)
    seed: int = 0

    def validate(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if len(self.codebook_sizes) != 4 or any(k < 2 for k in self.codebook_sizes):
            raise ValueError(f"codebook_sizes must be four counts >= 2, got {self.codebook_sizes}")
        n_cells = self.codebook_sizes[2] * self.codebook_sizes[3]
        if len(self.object_counts) == 0:
            raise ValueError("object_counts must not be empty")
        if any(not 1 <= c <= n_cells for c in self.object_counts):
            raise ValueError(f"object counts must be in [1, {n_cells}], got {self.object_counts}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if len(self.noise_targets) == 0:
            raise ValueError("noise_targets must not be empty")
        if any(not 0.0 < t <= 1.0 for t in self.noise_targets):
            raise ValueError(f"noise targets must be in (0, 1], got {self.noise_targets}")
        if self.max_runs is not None and self.max_runs < 1:
            raise ValueError(f"max_runs must be >= 1 or None, got {self.max_runs}")
        if self.energy_threshold is not None and self.energy_threshold < 0:
            raise ValueError(f"energy_threshold must be >= 0, got {self.energy_threshold}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "codebook_sizes": list(self.codebook_sizes),
            "object_counts": list(self.object_counts),
            "trials": self.trials,
            "noise_targets": list(self.noise_targets),
            "max_runs": self.max_runs,
            "energy_threshold": self.energy_threshold,
            "resonator": {
                "max_iterations": self.resonator.max_iterations,
                "activation": self.resonator.activation,
                "init_mode": self.resonator.init_mode,
                "synchronous": self.resonator.synchronous,
            },
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {
            "dim", "codebook_sizes", "object_counts", "trials", "noise_targets",
            "max_runs", "energy_threshold", "resonator", "seed",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict = {}
        for key in known - {"resonator", "codebook_sizes", "object_counts", "noise_targets"}:
            if key in data:
                kwargs[key] = data[key]
        for key in ("codebook_sizes", "object_counts", "noise_targets"):
            if key in data:
                kwargs[key] = tuple(data[key])
        if "resonator" in data:
            kwargs["resonator"] = ResonatorConfig(**data["resonator"])
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg


@dataclass(frozen=True)
class TrialRecord:
    """One evaluation trial, sufficient to recompute every aggregate."""

    index: int
    seed: int
    noise_target: float
    scene: SceneDescription
    realized_similarity: float
    runs_allowed: int
    decoded: DecodedScene
    objects_correct: int
    all_correct: bool

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "seed": self.seed,
            "noise_target": self.noise_target,
            "scene": self.scene.to_dict(),
            "realized_similarity": self.realized_similarity,
            "runs_allowed": self.runs_allowed,
            "decoded": self.decoded.to_dict(),
            "objects_correct": self.objects_correct,
            "all_correct": self.all_correct,
        }


@dataclass(frozen=True)
class GroupAccuracy:
    """Fraction of trials with at least ``k_correct`` objects recovered."""

    object_count: int
    noise_target: float
    runs_allowed: int
    k_correct: int
    fraction: float
    trial_count: int


@dataclass(frozen=True)
class SimilarityBin:
    """All-correct fraction over trials whose realized similarity fell in [lo, hi)."""

    lo: float
    hi: float
    count: int
    accuracy: float | None


@dataclass(frozen=True)
class IterationStats:
    """Distribution of resonator iterations across all runs of an experiment."""

    runs: int
    mean: float
    median: float
    p95: float
    max: int


@dataclass(frozen=True)
class ResultTable:
    groups: tuple[GroupAccuracy, ...]
    conditional: tuple[SimilarityBin, ...]
    iterations: IterationStats


def conditional_accuracy(records: list[TrialRecord],
                         bin_width: float = 0.05) -> tuple[SimilarityBin, ...]:
    """Bin trials by realized similarity over [0, 1] and report per-bin accuracy.

    Empty bins carry count 0 and accuracy None; bin populations always sum to
    the record count (out-of-range values clamp into the edge bins).
    """
    if not 0.0 < bin_width <= 1.0:
        raise ValueError(f"bin_width must be in (0, 1], got {bin_width}")
    n_bins = math.ceil(round(1.0 / bin_width, 9))
    counts = [0] * n_bins
    hits = [0] * n_bins
    for record in records:
        index = int(record.realized_similarity // bin_width)
        index = min(max(index, 0), n_bins - 1)
        counts[index] += 1
        hits[index] += int(record.all_correct)
    return tuple(
        SimilarityBin(
            lo=round(i * bin_width, 10),
            hi=min(round((i + 1) * bin_width, 10), 1.0),
            count=counts[i],
            accuracy=(hits[i] / counts[i]) if counts[i] else None,
        )
        for i in range(n_bins)
    )


def summarize(records: list[TrialRecord], bin_width: float = 0.05) -> ResultTable:
    """Pure fold of the trial stream into the grouped accuracy table."""
    buckets: dict[tuple[int, float, int], list[int]] = {}
    for record in records:
        key = (len(record.scene), record.noise_target, record.runs_allowed)
        buckets.setdefault(key, []).append(record.objects_correct)
    groups: list[GroupAccuracy] = []
    for object_count, noise_target, runs_allowed in sorted(buckets):
        outcomes = buckets[(object_count, noise_target, runs_allowed)]
        n = len(outcomes)
        for k in range(1, object_count + 1):
            fraction = sum(1 for c in outcomes if c >= k) / n
            groups.append(GroupAccuracy(object_count, noise_target, runs_allowed,
                                        k, fraction, n))
    iterations = [est.iterations_used for record in records for est in record.decoded.objects]
    if iterations:
        stats = IterationStats(
            runs=len(iterations),
            mean=float(np.mean(iterations)),
            median=float(np.median(iterations)),
            p95=float(np.percentile(iterations, 95)),
            max=int(np.max(iterations)),
        )
    else:
        stats = IterationStats(runs=0, mean=0.0, median=0.0, p95=0.0, max=0)
    return ResultTable(
        groups=tuple(groups),
        conditional=conditional_accuracy(records, bin_width),
        iterations=stats,
    )


def _allowed_runs(cfg: ExperimentConfig, noisy: np.ndarray, target: float) -> int:
    if cfg.max_runs is not None:
        return cfg.max_runs
    # debias the noise energy: E||s'||^2 = ||s||^2 / target^2
    energy = float(np.dot(noisy, noisy))
    estimate = int(math.floor(target * target * energy / cfg.dim + 0.5))
    n_cells = cfg.codebook_sizes[2] * cfg.codebook_sizes[3]
    return min(max(estimate, 1), n_cells)


def _run_trial(cbs: CodebookSet, cfg: ExperimentConfig,
               target_index: int, trial_index: int) -> TrialRecord:
    target = cfg.noise_targets[target_index]
    trial_seed = derive_seed(cfg.seed, _TRIAL_STREAM, target_index, trial_index)
    rng = np.random.default_rng(trial_seed)
    count = cfg.object_counts[int(rng.integers(len(cfg.object_counts)))]
    n_colors, n_digits, n_ypos, n_xpos = cfg.codebook_sizes
    scene = random_scene(count, rng, n_colors=n_colors, n_digits=n_digits,
                         n_ypos=n_ypos, n_xpos=n_xpos)
    clean = encode_scene(cbs, scene)
    noisy = noisy_scene_vector(clean, target, rng)
    realized = cosine_similarity(noisy, clean)
    runs_allowed = _allowed_runs(cfg, noisy, target)
    decoded = decode_scene(noisy, cbs, cfg.resonator, max_runs=runs_allowed,
                           energy_threshold=cfg.energy_threshold, rng=rng)
    result = match_objects(decoded, scene)
    return TrialRecord(
        index=target_index * cfg.trials + trial_index,
        seed=trial_seed,
        noise_target=target,
        scene=scene,
        realized_similarity=realized,
        runs_allowed=runs_allowed,
        decoded=decoded,
        objects_correct=result.num_correct,
        all_correct=result.all_correct,
    )


def run_experiment(cfg: ExperimentConfig,
                   threads: int = 1) -> tuple[ResultTable, list[TrialRecord]]:
    """Run every (noise target, trial) cell and fold the records into a table.

    Deterministic for a given config: per-trial seeds are counter-derived, so
    the worker pool merge by trial index yields identical records at any
    thread count.
    """
    cfg.validate()
    cbs = CodebookSet.generate(cfg.dim, cfg.codebook_sizes,
                               seed=derive_seed(cfg.seed, _CODEBOOK_STREAM))
    tasks = [(ti, i) for ti in range(len(cfg.noise_targets)) for i in range(cfg.trials)]
    if threads <= 1:
        records = [_run_trial(cbs, cfg, ti, i) for ti, i in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda t: _run_trial(cbs, cfg, *t), tasks))
    return summarize(records), records


def write_summary_csv(table: ResultTable, path: str | Path) -> None:
    """Grouped accuracy in the fixed plottable schema, one row per k."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SUMMARY_COLUMNS)
        for g in table.groups:
            writer.writerow([g.object_count, g.noise_target, g.runs_allowed,
                             g.k_correct, g.fraction, g.trial_count])


def write_conditional_csv(table: ResultTable, path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["bin_lo", "bin_hi", "trial_count", "accuracy"])
        for b in table.conditional:
            writer.writerow([b.lo, b.hi, b.count, "" if b.accuracy is None else b.accuracy])


def write_trials_jsonl(records: list[TrialRecord], path: str | Path) -> None:
    with open(path, "w") as handle:
        for record in records:
            handle.write(json.dumps(record.to_dict(), separators=(",", ":")) + "\n")


def format_summary(table: ResultTable) -> str:
    """Human-readable digest of a result table."""
    lines = [" objects  target  runs  k  fraction  trials"]
    for g in table.groups:
        lines.append(f"{g.object_count:8d}  {g.noise_target:6.3f}  {g.runs_allowed:4d}  "
                     f"{g.k_correct}  {g.fraction:8.4f}  {g.trial_count:6d}")
    occupied = [b for b in table.conditional if b.count]
    if len(occupied) > 1:
        lines.append("conditional accuracy by realized similarity:")
        for b in occupied:
            lines.append(f"  [{b.lo:.2f}, {b.hi:.2f})  n={b.count:<6d}  acc={b.accuracy:.4f}")
    it = table.iterations
    lines.append(f"resonator runs: {it.runs}  iterations mean={it.mean:.2f} "
                 f"median={it.median:.1f} p95={it.p95:.1f} max={it.max}")
    return "\n".join(lines)
