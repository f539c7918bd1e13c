"""Four-factor resonator network.

One module per attribute class holds a high-dimensional estimate of its
factor. Each iteration, every module unbinds the scene vector with the other
three modules' current estimates, cleans the result up against its own
codebook, and the loop repeats until all four estimates stop changing. Because
superposition lets an estimate carry many candidate codewords at once, the
network searches the combinatorial space of factorizations in parallel and
settles on a consistent one.

Two dynamics details carry most of the accuracy and are therefore the
defaults. First, estimates start as the raw (unquantized) sum of all codewords
in their codebook: every candidate enters with equal weight and the first
sweep sees the full superposition signal. Second, modules update sequentially,
largest codebook first, each using the freshest peer estimates. Fully parallel
updates of bipolar states admit two-step oscillations in which pairs of
estimates flip sign together (the compound is invariant under an even number
of factor negations), and random bipolar initialization starts in the basin of
a sign-flipped or spurious solution most of the time. Both variants remain
available through the config.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .codebook import argmax_readout, cleanup
from .ops import random_bipolar
from .scene import CodebookSet, ObjectSpec

__all__ = [
    "FactorEstimate",
    "ResonatorConfig",
    "ResonatorState",
    "init_state",
    "run",
    "step",
]

ACTIVATIONS = ("sign", "normalization")
INIT_MODES = ("bundled-codewords", "random-bipolar")

# Exact float equality between consecutive normalization iterates is
# measure-zero, so that mode converges on a small absolute tolerance instead.
_NORMALIZATION_ATOL = 1e-10


@dataclass(frozen=True)
class ResonatorConfig:
    """Knobs for the iteration loop.

    ``synchronous=False`` (the default) updates modules one at a time in
    descending codebook-size order; ``True`` updates all four in parallel from
    the previous iteration's estimates.
    """

    max_iterations: int = 200
    activation: str = "sign"
    init_mode: str = "bundled-codewords"
    synchronous: bool = False

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}, got {self.activation!r}")
        if self.init_mode not in INIT_MODES:
            raise ValueError(f"init_mode must be one of {INIT_MODES}, got {self.init_mode!r}")


@dataclass(frozen=True)
class ResonatorState:
    """The four estimate vectors plus iteration bookkeeping."""

    c_hat: np.ndarray
    d_hat: np.ndarray
    v_hat: np.ndarray
    h_hat: np.ndarray
    iteration: int = 0
    converged: bool = False

    def estimates(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.c_hat, self.d_hat, self.v_hat, self.h_hat)


@dataclass(frozen=True)
class FactorEstimate:
    """Read-out attribute indices for one extracted object."""

    color: int
    digit: int
    ypos: int
    xpos: int
    iterations_used: int
    converged: bool

    def as_object(self) -> ObjectSpec:
        return ObjectSpec(color=self.color, digit=self.digit, ypos=self.ypos, xpos=self.xpos)

    def attribute_tuple(self) -> tuple[int, int, int, int]:
        return (self.color, self.digit, self.ypos, self.xpos)

    def to_dict(self) -> dict:
        return {
            "color": self.color,
            "digit": self.digit,
            "ypos": self.ypos,
            "xpos": self.xpos,
            "iterations_used": self.iterations_used,
            "converged": self.converged,
        }


def init_state(cbs: CodebookSet, cfg: ResonatorConfig,
               rng: np.random.Generator | None = None) -> ResonatorState:
    """Initial estimates: all codewords bundled, or i.i.d. random bipolar.

    Bundled mode sums each codebook's codewords without a nonlinearity (all
    guesses in superposition, deterministic); random mode draws bipolar
    estimates from ``rng``.
    """
    if cfg.init_mode == "random-bipolar":
        if rng is None:
            raise ValueError("random-bipolar initialization requires an rng")
        c, d, v, h = (random_bipolar(cbs.dim, rng) for _ in range(4))
    else:
        c, d, v, h = (cb.codewords.sum(axis=0) for cb in cbs.books())
    return ResonatorState(c_hat=c, d_hat=d, v_hat=v, h_hat=h, iteration=0, converged=False)


def _update_order(cbs: CodebookSet) -> tuple[int, ...]:
    # largest codebook first; ties keep the canonical (color, digit, y, x) order
    sizes = [cb.k for cb in cbs.books()]
    return tuple(sorted(range(4), key=lambda i: (-sizes[i], i)))


def step(s: np.ndarray, state: ResonatorState, cbs: CodebookSet,
         cfg: ResonatorConfig) -> ResonatorState:
    """One update of all four modules.

    Each module's input is the scene vector bound with the other three
    estimates, cleaned up against the module's codebook.
    """
    s = np.asarray(s)
    if s.shape != (cbs.dim,):
        raise ValueError(f"dimension mismatch: scene vector {s.shape} vs codebooks dim {cbs.dim}")
    books = cbs.books()
    estimates = list(state.estimates())

    def clean(index, current):
        others = [current[j] for j in range(4) if j != index]
        unbound = s * others[0] * others[1] * others[2]
        return cleanup(books[index], unbound, cfg.activation)

    if cfg.synchronous:
        estimates = [clean(i, state.estimates()) for i in range(4)]
    else:
        for i in _update_order(cbs):
            estimates[i] = clean(i, estimates)
    c, d, v, h = estimates
    return ResonatorState(c_hat=c, d_hat=d, v_hat=v, h_hat=h,
                          iteration=state.iteration + 1, converged=False)


def _same_estimates(a: ResonatorState, b: ResonatorState, activation: str) -> bool:
    if activation == "sign":
        return all(np.array_equal(x, y) for x, y in zip(a.estimates(), b.estimates()))
    return all(
        np.allclose(x, y, rtol=0.0, atol=_NORMALIZATION_ATOL)
        for x, y in zip(a.estimates(), b.estimates())
    )


def _codeword_similarities(cb, v: np.ndarray) -> list[float]:
    # codeword norms are exactly sqrt(dim) since codewords are bipolar
    denom = float(np.linalg.norm(np.asarray(v, dtype=np.float64))) * np.sqrt(cb.dim)
    if denom == 0.0:
        return [0.0] * cb.k
    return [float(x) for x in (cb.codewords @ v) / denom]


def _trace_row(state: ResonatorState, cbs: CodebookSet) -> dict:
    return {
        "iteration": state.iteration,
        "color": _codeword_similarities(cbs.color, state.c_hat),
        "digit": _codeword_similarities(cbs.digit, state.d_hat),
        "ypos": _codeword_similarities(cbs.ypos, state.v_hat),
        "xpos": _codeword_similarities(cbs.xpos, state.h_hat),
    }


def run(s: np.ndarray, cbs: CodebookSet, cfg: ResonatorConfig | None = None,
        rng: np.random.Generator | None = None,
        trace: list | None = None) -> tuple[FactorEstimate, ResonatorState]:
    """Iterate to a fixed point, then read out one object's attributes.

    Stops when all four estimates are unchanged between consecutive
    iterations, or at cfg.max_iterations; the ``converged`` flag reports which
    exit occurred and readout happens either way. If ``trace`` is a list, one
    row of per-codeword similarities is appended for the initial state and
    after every iteration.
    """
    if cfg is None:
        cfg = ResonatorConfig()
    state = init_state(cbs, cfg, rng)
    if trace is not None:
        trace.append(_trace_row(state, cbs))
    for _ in range(cfg.max_iterations):
        new = step(s, state, cbs, cfg)
        if trace is not None:
            trace.append(_trace_row(new, cbs))
        if _same_estimates(state, new, cfg.activation):
            state = replace(new, converged=True)
            break
        state = new
    estimate = FactorEstimate(
        color=argmax_readout(cbs.color, state.c_hat),
        digit=argmax_readout(cbs.digit, state.d_hat),
        ypos=argmax_readout(cbs.ypos, state.v_hat),
        xpos=argmax_readout(cbs.xpos, state.h_hat),
        iterations_used=state.iteration,
        converged=state.converged,
    )
    return estimate, state
