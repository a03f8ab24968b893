"""Inconsistency rate of attribute subsets and the Pairwise Consistency ranker."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .dataset import Dataset, DatasetError
from .discretize import discretize_dataset
from .ranking import DEFAULT_BLOCK, DEFAULT_DENSE_LIMIT, Ranking, pair_sums, resolve_threads

METHOD = "pairwise-consistency"


@dataclass(frozen=True)
class PatternStats:
    """Class counts per distinct pattern of the selected attributes."""

    patterns: np.ndarray      # (p, |S|) codes, lexicographic order
    class_counts: np.ndarray  # (p, s)

    @property
    def totals(self) -> np.ndarray:
        return self.class_counts.sum(axis=1)

    @property
    def majority(self) -> np.ndarray:
        return self.class_counts.max(axis=1)

    @property
    def inconsistency_counts(self) -> np.ndarray:
        return self.totals - self.majority


def inconsistency_count(class_counts) -> int:
    """Occurrences of one pattern minus those of its majority class."""
    class_counts = [int(c) for c in class_counts]
    return sum(class_counts) - max(class_counts)


def _subset(ds_disc: Dataset, subset: Iterable[int]) -> list[int]:
    attrs = sorted(set(int(a) for a in subset))
    if not attrs:
        raise ValueError("subset must be nonempty")
    if not ds_disc.is_discrete:
        raise DatasetError("dataset must be discretized first")
    for a in attrs:
        if not 0 <= a < ds_disc.n_attributes:
            raise DatasetError(f"attribute id {a} out of range")
    return attrs


def pattern_stats(ds_disc: Dataset, subset: Iterable[int]) -> PatternStats:
    attrs = _subset(ds_disc, subset)
    mat = np.stack([ds_disc.columns[a].discrete.codes for a in attrs], axis=1)
    patterns, inv = np.unique(mat, axis=0, return_inverse=True)
    s = ds_disc.n_classes
    counts = np.bincount(inv.ravel() * s + ds_disc.class_column.codes,
                         minlength=len(patterns) * s).reshape(len(patterns), s)
    return PatternStats(patterns, counts)


def inconsistency_rate(ds_disc: Dataset, subset: Iterable[int]) -> float:
    """Summed per-pattern inconsistency counts divided by the instance count."""
    stats = pattern_stats(ds_disc, subset)
    return int(stats.inconsistency_counts.sum()) / ds_disc.n_instances


def consistency_rate(ds_disc: Dataset, subset: Iterable[int]) -> float:
    return 1.0 - inconsistency_rate(ds_disc, subset)


def rank_pairwise_consistency(ds: Dataset, threads: int | None = None,
                              block: int = DEFAULT_BLOCK,
                              dense_limit: int = DEFAULT_DENSE_LIMIT) -> Ranking:
    """Score each attribute by its mean pair consistency rate with every other one."""
    n = ds.n_attributes
    if n < 2:
        raise DatasetError("pairwise consistency needs at least 2 attributes")
    threads = resolve_threads(threads)
    disc = discretize_dataset(ds, threads)
    codes = disc.code_matrix()
    cards = disc.cardinalities()
    s = disc.n_classes
    codes_y = codes.astype(np.int64) * s + disc.class_column.codes

    def fill(i0, i1, j0, j1, out):
        _kernels.consistency_block(codes, codes_y, cards, s, i0, i1, j0, j1, dense_limit, out)

    sums = pair_sums(n, fill, threads, block)
    return Ranking.from_scores(METHOD, sums / (n - 1))
