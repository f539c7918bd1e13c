"""Bipolar hypervector algebra: binding, bundling, similarity, activations.

Vectors are plain numpy arrays. Bipolar vectors hold +1/-1 entries as signed
integers; bundled vectors hold small integer sums; floating point enters only
through similarity and normalization. All functions are pure and never mutate
their arguments.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

__all__ = [
    "BIPOLAR_DTYPE",
    "bind",
    "bundle",
    "cosine_similarity",
    "normalize",
    "random_bipolar",
    "resolve_activation",
    "sign",
]

BIPOLAR_DTYPE = np.int64


def random_bipolar(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Draw one i.i.d. uniform bipolar vector of length ``dim``."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    return rng.integers(0, 2, size=dim, dtype=BIPOLAR_DTYPE) * 2 - 1


def bind(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Componentwise product of two vectors.

    On bipolar inputs the result is bipolar and the operation is self-inverse:
    bind(bind(a, b), b) == a.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a * b


def bundle(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Componentwise sum of the given vectors, without thresholding."""
    if len(vectors) == 0:
        raise ValueError("bundle() requires at least one vector")
    return np.stack([np.asarray(v) for v in vectors]).sum(axis=0)


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of the angle between two vectors, in [-1, 1]."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValueError("cosine similarity is undefined for a zero-norm vector")
    return float(np.dot(a, b) / (norm_a * norm_b))


def sign(v: np.ndarray) -> np.ndarray:
    """Sign nonlinearity with zeros tie-broken to +1; output is bipolar."""
    return np.where(np.asarray(v) < 0, -1, 1).astype(BIPOLAR_DTYPE)


def normalize(v: np.ndarray) -> np.ndarray:
    """Scale to unit Euclidean norm. The zero vector is returned unchanged."""
    v = np.asarray(v, dtype=np.float64)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        return v.copy()
    return v / norm


_ACTIVATIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sign": sign,
    "normalization": normalize,
}


def resolve_activation(name: str) -> Callable[[np.ndarray], np.ndarray]:
    """Look up an activation function by name ("sign" or "normalization")."""
    try:
        return _ACTIVATIONS[name]
    except KeyError:
        raise ValueError(
            f"unknown activation {name!r}; expected one of {sorted(_ACTIVATIONS)}"
        ) from None
