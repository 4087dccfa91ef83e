"""Seeded, splittable randomness.

Every stream is a Philox counter-based generator keyed by ``(seed, *path)``,
so trial ``i`` of a run draws the same numbers no matter which worker or in
which order it executes.
"""

from __future__ import annotations

import numpy as np


class Stream:
    def __init__(self, seed: int, *path: int):
        if seed < 0 or seed >= 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.seed = seed
        self.path = tuple(path)
        ss = np.random.SeedSequence(seed, spawn_key=self.path)
        self._gen = np.random.Generator(np.random.Philox(ss))

    def child(self, *more: int) -> Stream:
        return Stream(self.seed, *self.path, *more)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return int(self._gen.integers(lo, hi + 1))

    def choice(self, items):
        return items[self.randint(0, len(items) - 1)]

    def shuffle(self, items) -> list:
        items = list(items)
        order = self._gen.permutation(len(items))
        return [items[int(i)] for i in order]
