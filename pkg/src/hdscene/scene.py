"""Symbolic scenes, the compositional encoder, and the noise channel.

A scene is a set of objects, each described by four attribute indices
(color, digit, y-position, x-position). Encoding binds the four selected
codewords into one bipolar compound vector per object and sums the compounds
into a single scene vector. The noise channel degrades a scene vector to any
target cosine similarity, standing in for an upstream model that emits an
imperfect version of the encoding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .codebook import Codebook, derive_seed, generate_codebook

__all__ = [
    "CodebookSet",
    "ObjectSpec",
    "PAPER_SIZES",
    "SceneDescription",
    "encode_object",
    "encode_scene",
    "noisy_scene_vector",
    "random_scene",
]

# (colors, digits, y-positions, x-positions): 7 * 10 * 3 * 3 = 630 combinations
PAPER_SIZES = (7, 10, 3, 3)

ATTRIBUTES = ("color", "digit", "ypos", "xpos")


@dataclass(frozen=True)
class ObjectSpec:
    """Ground-truth attribute indices for one object."""

    color: int
    digit: int
    ypos: int
    xpos: int

    @property
    def cell(self) -> tuple[int, int]:
        return (self.ypos, self.xpos)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.color, self.digit, self.ypos, self.xpos)

    def to_dict(self) -> dict:
        return {"color": self.color, "digit": self.digit, "ypos": self.ypos, "xpos": self.xpos}

    @classmethod
    def from_dict(cls, data: dict) -> "ObjectSpec":
        return cls(**{name: int(data[name]) for name in ATTRIBUTES})


@dataclass(frozen=True)
class SceneDescription:
    """Ordered list of objects; no two objects may share a location cell."""

    objects: tuple[ObjectSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        if len(self.objects) == 0:
            raise ValueError("a scene needs at least one object")
        cells = [obj.cell for obj in self.objects]
        if len(set(cells)) != len(cells):
            raise ValueError("two objects share the same location cell")

    def __len__(self) -> int:
        return len(self.objects)

    def __iter__(self) -> Iterator[ObjectSpec]:
        return iter(self.objects)

    def to_dict(self) -> dict:
        return {"objects": [obj.to_dict() for obj in self.objects]}

    @classmethod
    def from_dict(cls, data: dict) -> "SceneDescription":
        return cls(objects=tuple(ObjectSpec.from_dict(o) for o in data["objects"]))


@dataclass(frozen=True)
class CodebookSet:
    """The four codebooks used jointly by the encoder and the resonator."""

    color: Codebook
    digit: Codebook
    ypos: Codebook
    xpos: Codebook

    def __post_init__(self):
        dims = {cb.dim for cb in self.books()}
        if len(dims) != 1:
            raise ValueError(f"all codebooks must share one dimension, got {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.color.dim

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return (self.color.k, self.digit.k, self.ypos.k, self.xpos.k)

    @property
    def n_cells(self) -> int:
        return self.ypos.k * self.xpos.k

    def books(self) -> tuple[Codebook, Codebook, Codebook, Codebook]:
        return (self.color, self.digit, self.ypos, self.xpos)

    @classmethod
    def generate(cls, dim: int = 1000, sizes: tuple[int, int, int, int] = PAPER_SIZES,
                 seed: int = 0) -> "CodebookSet":
        """Generate four codebooks from one master seed.

        Each codebook gets an independent child seed so the set is fully
        reproducible from (dim, sizes, seed).
        """
        books = {
            label: generate_codebook(label, k, dim, derive_seed(seed, index))
            for index, (label, k) in enumerate(zip(ATTRIBUTES, sizes))
        }
        return cls(**books)


def _check_index(value: int, limit: int, attribute: str) -> None:
    if not 0 <= value < limit:
        raise ValueError(f"{attribute} index {value} out of range [0, {limit})")


def encode_object(cbs: CodebookSet, obj: ObjectSpec) -> np.ndarray:
    """Compound vector for one object: the bind of its four attribute codewords."""
    for attribute, cb in zip(ATTRIBUTES, cbs.books()):
        _check_index(getattr(obj, attribute), cb.k, attribute)
    return (
        cbs.color.codewords[obj.color]
        * cbs.digit.codewords[obj.digit]
        * cbs.ypos.codewords[obj.ypos]
        * cbs.xpos.codewords[obj.xpos]
    )


def encode_scene(cbs: CodebookSet, scene: SceneDescription) -> np.ndarray:
    """Scene vector: the componentwise sum of all per-object compound vectors.

    No nonlinearity is applied, so an L-object scene has integer components
    in [-L, L].
    """
    compounds = [encode_object(cbs, obj) for obj in scene]
    return np.sum(compounds, axis=0)


def random_scene(num_objects: int, rng: np.random.Generator, *,
                 n_colors: int = 7, n_digits: int = 10,
                 n_ypos: int = 3, n_xpos: int = 3) -> SceneDescription:
    """Draw a uniform random scene.

    Colors and digits are i.i.d. uniform; location cells are sampled without
    replacement so no two objects overlap.
    """
    n_cells = n_ypos * n_xpos
    if not 1 <= num_objects <= n_cells:
        raise ValueError(f"num_objects must be in [1, {n_cells}], got {num_objects}")
    cells = rng.choice(n_cells, size=num_objects, replace=False)
    colors = rng.integers(0, n_colors, size=num_objects)
    digits = rng.integers(0, n_digits, size=num_objects)
    objects = tuple(
        ObjectSpec(color=int(c), digit=int(d), ypos=int(cell) // n_xpos, xpos=int(cell) % n_xpos)
        for c, d, cell in zip(colors, digits, cells)
    )
    return SceneDescription(objects=objects)


def noisy_scene_vector(s: np.ndarray, target_similarity: float,
                       rng: np.random.Generator) -> np.ndarray:
    """Degrade a scene vector to an expected cosine similarity against itself.

    Adds zero-mean i.i.d. Gaussian noise with the per-component std solved
    from  E[cos] = 1 / sqrt(1 + dim * sigma**2 / ||s||**2),  so the realized
    similarity concentrates on ``target_similarity``. A target of 1 returns
    an exact copy.
    """
    if not 0.0 < target_similarity <= 1.0:
        raise ValueError(f"target_similarity must be in (0, 1], got {target_similarity}")
    s = np.asarray(s)
    if target_similarity == 1.0:
        return s.copy()
    norm = float(np.linalg.norm(s.astype(np.float64)))
    if norm == 0.0:
        raise ValueError("cannot add calibrated noise to a zero-norm vector")
    dim = s.shape[0]
    sigma = norm / math.sqrt(dim) * math.sqrt(1.0 / target_similarity**2 - 1.0)
    return s + rng.normal(0.0, sigma, size=s.shape)
