"""Baseline rankers: univariate Information Gain, Chi-Squared and Correlation,
and the multivariate ReliefF."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, DatasetError
from .discretize import discretize_dataset
from .metrics import chi_squared, class_correlation, info_gain
from .ranking import Ranking, resolve_threads

log = logging.getLogger(__name__)

UNIVARIATE = {
    "info-gain": "info_gain",
    "chi-squared": "chi_squared",
    "correlation": "correlation",
}


def rank_univariate(ds: Dataset, metric: str, threads: int | None = None) -> Ranking:
    """Score each attribute against the class alone.

    ``info_gain`` and ``chi_squared`` read the MDL-discretized data;
    ``correlation`` reads raw numeric values and scores nominal columns 0.
    """
    metric = metric.replace("-", "_")
    if metric not in ("info_gain", "chi_squared", "correlation"):
        raise ValueError(f"unknown univariate metric {metric!r}")
    if ds.n_attributes < 1:
        raise DatasetError("ranking needs at least one attribute")
    threads = resolve_threads(threads)
    cls = ds.class_column
    if metric == "correlation":
        scores = []
        for name, col in zip(ds.attribute_names, ds.columns):
            if not col.is_numeric:
                log.warning("correlation is undefined for nominal attribute %r; scored 0", name)
                scores.append(0.0)
            else:
                scores.append(class_correlation(col, cls))
    else:
        disc = discretize_dataset(ds, threads)
        fn = info_gain if metric == "info_gain" else chi_squared
        scores = [fn(c.discrete, cls) for c in disc.columns]
    return Ranking.from_scores(metric.replace("_", "-"), scores)


@dataclass(frozen=True)
class ReliefFConfig:
    k_neighbors: int = 10
    sample_size: int | None = None  # None means every instance
    rng_seed: int = 42

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise ValueError("k_neighbors must be >= 1")
        if self.sample_size is not None and self.sample_size < 1:
            raise ValueError("sample_size must be >= 1")


def _diff_matrix(ds: Dataset):
    """Per-attribute values scaled so that |a - b| is the ReliefF diff.

    Numeric columns are divided by their full-data range (zero range -> all 0).
    Nominal columns are returned separately as codes (diff is 0/1).
    """
    num_idx = [i for i, c in enumerate(ds.columns) if c.is_numeric]
    nom_idx = [i for i, c in enumerate(ds.columns) if not c.is_numeric]
    w = ds.n_instances
    num = np.zeros((w, len(num_idx)))
    for k, i in enumerate(num_idx):
        v = ds.columns[i].values
        rng = v.max() - v.min()
        if rng > 0:
            num[:, k] = (v - v.min()) / rng
    nom = np.zeros((w, len(nom_idx)), dtype=np.int32)
    for k, i in enumerate(nom_idx):
        nom[:, k] = ds.columns[i].discrete.codes
    return np.array(num_idx, dtype=np.int64), num, np.array(nom_idx, dtype=np.int64), nom


def _nearest(dist: np.ndarray, candidates: np.ndarray, k: int) -> np.ndarray:
    # stable sort keeps ascending instance index among equal distances
    order = np.argsort(dist[candidates], kind="stable")
    return candidates[order[:k]]


def rank_relieff(ds: Dataset, cfg: ReliefFConfig = ReliefFConfig(),
                 threads: int | None = None) -> Ranking:
    """ReliefF weights (Kononenko 1994) with class-prior weighted misses.

    Each sampled instance contributes ``-mean diff`` to its nearest hits and
    ``P(c) / (1 - P(class(r))) * mean diff`` to its nearest misses of every
    other class ``c``, all divided by the number of sampled instances.  Means
    run over the neighbours actually found (at most ``k_neighbors``).
    """
    w, n = ds.n_instances, ds.n_attributes
    if w < 2:
        raise DatasetError("ReliefF needs at least 2 instances")
    if ds.n_classes < 2:
        raise DatasetError("ReliefF needs at least 2 classes (no misses otherwise)")
    threads = resolve_threads(threads)
    y = ds.class_column.codes
    priors = np.bincount(y, minlength=ds.n_classes) / w
    num_idx, num, nom_idx, nom = _diff_matrix(ds)
    if cfg.sample_size is None or cfg.sample_size >= w:
        sample = np.arange(w)
    else:
        rng = np.random.default_rng(cfg.rng_seed)
        sample = np.sort(rng.choice(w, size=cfg.sample_size, replace=False))
    m = len(sample)
    by_class = [np.flatnonzero(y == c) for c in range(ds.n_classes)]
    k = cfg.k_neighbors

    def contribution(r: int) -> np.ndarray:
        dn = np.abs(num - num[r])
        dc = (nom != nom[r]).astype(np.float64)
        dist = dn.sum(axis=1) + dc.sum(axis=1)
        diffs = np.zeros((w, n))
        diffs[:, num_idx] = dn
        diffs[:, nom_idx] = dc
        out = np.zeros(n)
        cr = y[r]
        hits = by_class[cr][by_class[cr] != r]
        if hits.size:
            near = _nearest(dist, hits, k)
            out -= diffs[near].mean(axis=0)
        for c in range(ds.n_classes):
            if c == cr or by_class[c].size == 0:
                continue
            near = _nearest(dist, by_class[c], k)
            out += priors[c] / (1.0 - priors[cr]) * diffs[near].mean(axis=0)
        return out / m

    def chunk(rows):
        return np.stack([contribution(int(r)) for r in rows])

    chunks = np.array_split(sample, max(1, min(len(sample), 4 * threads)))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(chunk, chunks))
    else:
        parts = [chunk(c) for c in chunks]
    weights = np.zeros(n)
    # merge in instance order regardless of how the work was split
    for part in parts:
        for row in part:
            weights += row
    return Ranking.from_scores("relieff", weights)
