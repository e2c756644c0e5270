"""Permutations in one-line notation acting on sequences from the right.

Conventions
-----------
A permutation ``sigma`` of length ``n`` is stored by its images
``(sigma(1), ..., sigma(n))`` (1-based).  It acts on sequences from the right,

    right_act(x, sigma)[i] = x[sigma(i)],

and composition is ordinary composition of maps, ``(sigma * tau)(i) =
sigma(tau(i))``.  With these two choices the action is a genuine right action:
``right_act(right_act(x, sigma), tau) == right_act(x, sigma * tau)``.

``block_perm(sigma, sizes)`` moves consecutive blocks of the given sizes the
way ``sigma`` moves single positions: acting on ``x = B_1 ... B_m`` it yields
``B_sigma(1) ... B_sigma(m)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, TypeVar

from .errors import LengthMismatch

T = TypeVar("T")


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation in one-line notation: {self.images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        # skips validation; only for images built by this module
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls._trusted(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int) -> Permutation:
        """The adjacent transposition swapping positions ``i`` and ``i + 1``."""
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.images)) + ")"

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, image in enumerate(self.images, start=1):
            inv[image - 1] = i
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, len(self.images) + 1))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of Sigma_n in lexicographic order of one-line notation."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation._trusted(images)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    s, t = sigma.images, tau.images
    if len(s) != len(t):
        raise LengthMismatch(f"cannot compose permutations of lengths {len(s)} and {len(t)}")
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", tuple([s[i - 1] for i in t]))
    return p


def right_act(seq: Sequence[T], sigma: Permutation) -> tuple[T, ...]:
    if len(seq) != len(sigma):
        raise LengthMismatch(f"sequence of length {len(seq)} vs permutation of length {len(sigma)}")
    return tuple(seq[i - 1] for i in sigma.images)


def _offsets(sizes: Sequence[int]) -> list[int]:
    offsets = [0]
    for k in sizes:
        offsets.append(offsets[-1] + k)
    return offsets


def block_perm(sigma: Permutation, sizes: Sequence[int]) -> Permutation:
    """The block permutation sigma<k_1, ..., k_m> for blocks of the given sizes."""
    if len(sizes) != len(sigma):
        raise LengthMismatch(f"{len(sizes)} block sizes for a permutation of length {len(sigma)}")
    if any(k < 0 for k in sizes):
        raise ValueError(f"block sizes must be non-negative: {sizes!r}")
    offsets = _offsets(sizes)
    images: list[int] = []
    for j in sigma.images:
        images.extend(range(offsets[j - 1] + 1, offsets[j] + 1))
    return Permutation._trusted(tuple(images))


def block_sum(sigmas: Sequence[Permutation]) -> Permutation:
    """sigma_1 (+) ... (+) sigma_m, acting as sigma_i inside the i-th block."""
    images: list[int] = []
    offset = 0
    for s in sigmas:
        images.extend([offset + i for i in s.images])
        offset += len(s.images)
    return Permutation._trusted(tuple(images))


def compose_family(sigma: Permutation, sigmas: Sequence[Permutation]) -> Permutation:
    """The permutation part sigma(sigma_1, ..., sigma_m) of operadic composition."""
    if len(sigmas) != len(sigma):
        raise LengthMismatch(f"{len(sigmas)} inner permutations for outer length {len(sigma)}")
    inv = sigma.inverse()
    sizes = [len(sigmas[inv(i) - 1]) for i in range(1, len(sigma) + 1)]
    return compose(block_perm(sigma, sizes), block_sum(sigmas))
