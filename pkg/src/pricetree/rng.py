"""Deterministic draw streams backed by a named, splittable generator.

Every random decision in the generator goes through a :class:`PcgStream`
so that (a) a corpus is a pure function of its seed, and (b) each instance
gets its own sub-stream derived from ``(corpus_seed, index)``, making batch
generation order-independent.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

from numpy.random import PCG64, Generator, SeedSequence

T = TypeVar("T")


class PcgStream:
    """Uniform draw helpers over one PCG64 stream."""

    def __init__(self, seed_seq: SeedSequence):
        self._gen = Generator(PCG64(seed_seq))

    @classmethod
    def from_seed(cls, seed: int) -> "PcgStream":
        return cls(SeedSequence(seed))

    def int_between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return int(self._gen.integers(lo, hi + 1))

    def pick(self, seq: Sequence[T]) -> T:
        """Uniform element of a non-empty sequence."""
        return seq[int(self._gen.integers(len(seq)))]

    def coin(self) -> bool:
        """Fair coin flip."""
        return bool(self._gen.integers(2))

    def permutation(self, n: int) -> list[int]:
        """Uniform permutation of range(n)."""
        return [int(i) for i in self._gen.permutation(n)]

    def distinct_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices drawn uniformly from range(n), in draw order."""
        return [int(i) for i in self._gen.choice(n, size=k, replace=False)]


def substream(corpus_seed: int, index: int) -> PcgStream:
    """The sub-stream owned by instance pair `index` of a corpus.

    Built directly from ``SeedSequence(corpus_seed, spawn_key=(index,))`` so
    pairs can be generated in any order, or concurrently, with identical
    results.
    """
    return PcgStream(SeedSequence(entropy=corpus_seed, spawn_key=(index,)))
