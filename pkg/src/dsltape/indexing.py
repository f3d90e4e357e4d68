"""Identifier management with index reuse.

Identifiers are small positive integers addressing slots of the primal and
adjoint vectors.  Id 0 is reserved for passive values and never handed out.
Released ids go to a LIFO free pool and are handed out again before the
high-water mark grows, keeping the vectors compact and cache-friendly.
"""

from __future__ import annotations


class DoubleReleaseError(RuntimeError):
    pass


class IndexManager:
    __slots__ = ("free_pool", "next_unused", "_pooled")

    def __init__(self):
        self.free_pool: list[int] = []
        self.next_unused = 1  # high-water mark: ids handed out so far are 1..next_unused-1
        self._pooled: set[int] = set()

    @property
    def high_water(self) -> int:
        """Number of distinct ids ever handed out."""
        return self.next_unused - 1

    @property
    def live_count(self) -> int:
        return self.high_water - len(self.free_pool)

    def acquire(self) -> int:
        if self.free_pool:
            idx = self.free_pool.pop()
            self._pooled.discard(idx)
            return idx
        idx = self.next_unused
        self.next_unused += 1
        return idx

    def release(self, idx: int) -> None:
        """Return a live id to the pool.  Releasing 0 is a no-op."""
        if idx == 0:
            return
        if idx >= self.next_unused or idx in self._pooled:
            raise DoubleReleaseError(f"id {idx} is not live")
        self.free_pool.append(idx)
        self._pooled.add(idx)

    def is_live(self, idx: int) -> bool:
        return 0 < idx < self.next_unused and idx not in self._pooled

    def reset(self) -> None:
        self.free_pool.clear()
        self._pooled.clear()
        self.next_unused = 1
