"""Ranking value type and the deterministic pair-block scheduler."""
from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels

DEFAULT_BLOCK = 256
DEFAULT_DENSE_LIMIT = 1 << 16


@dataclass(frozen=True)
class Ranking:
    """Attributes ordered by descending score, ties by ascending attribute id."""

    method: str
    entries: tuple[tuple[int, float], ...]

    @classmethod
    def from_scores(cls, method: str, scores: Sequence[float]) -> "Ranking":
        scores = [float(s) for s in scores]
        order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
        return cls(method, tuple((i, scores[i]) for i in order))

    @property
    def order(self) -> list[int]:
        return [i for i, _ in self.entries]

    def top(self, q: int) -> list[int]:
        return self.order[:q]

    def scores(self) -> np.ndarray:
        """Scores indexed by attribute id."""
        out = np.empty(len(self.entries))
        for i, s in self.entries:
            out[i] = s
        return out

    def __len__(self):
        return len(self.entries)


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("PAIRRANK_THREADS")
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


def pair_sums(n: int, block_fn: Callable[[int, int, int, int, np.ndarray], None],
              threads: int = 1, block: int = DEFAULT_BLOCK) -> np.ndarray:
    """Sum a symmetric pair statistic over all partners of each attribute.

    ``block_fn(i0, i1, j0, j1, out)`` fills the ``i < j`` cells of a block.
    Blocks are evaluated concurrently but folded into the sums strictly in
    lexicographic block order, so results are bit-identical for any
    ``threads``.  At most ``2 * threads`` finished blocks are held in memory.
    """
    edges = list(range(0, n, block)) + [n]
    tasks = [(edges[a], edges[a + 1], edges[b], edges[b + 1])
             for a in range(len(edges) - 1) for b in range(a, len(edges) - 1)]
    acc = np.zeros(n, dtype=np.float64)

    def run(task):
        i0, i1, j0, j1 = task
        out = np.zeros((i1 - i0, j1 - j0), dtype=np.float64)
        block_fn(i0, i1, j0, j1, out)
        return out

    if threads == 1:
        for task in tasks:
            _kernels.accumulate_block(acc, run(task), *task)
        return acc
    with ThreadPoolExecutor(max_workers=threads) as ex:
        pending = deque()
        it = iter(tasks)
        for task in it:
            pending.append((task, ex.submit(run, task)))
            if len(pending) >= 2 * threads:
                break
        while pending:
            task, fut = pending.popleft()
            _kernels.accumulate_block(acc, fut.result(), *task)
            nxt = next(it, None)
            if nxt is not None:
                pending.append((nxt, ex.submit(run, nxt)))
    return acc
