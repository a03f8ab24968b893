"""CFS subset merit and the Pairwise Correlation ranker."""
from __future__ import annotations

import itertools
import math
from typing import Iterable

import numpy as np

from . import _kernels
from .dataset import Dataset, DatasetError
from .discretize import discretize_dataset
from .metrics import entropy, symmetrical_uncertainty
from .ranking import DEFAULT_BLOCK, DEFAULT_DENSE_LIMIT, Ranking, pair_sums, resolve_threads

METHOD = "pairwise-correlation"


def _require_discrete(ds: Dataset):
    if not ds.is_discrete:
        raise DatasetError("dataset must be discretized first")


def subset_merit(ds_disc: Dataset, subset: Iterable[int]) -> float:
    """CFS merit k * mean_su_class / sqrt(k + k (k - 1) * mean_su_pairs).

    SU is the association measure throughout; with a single attribute the
    pair term is taken as 0 and the merit is that attribute's SU with the class.
    """
    attrs = sorted(set(int(a) for a in subset))
    if not attrs:
        raise ValueError("subset must be nonempty")
    _require_discrete(ds_disc)
    for a in attrs:
        if not 0 <= a < ds_disc.n_attributes:
            raise DatasetError(f"attribute id {a} out of range")
    k = len(attrs)
    cols = [ds_disc.columns[a].discrete for a in attrs]
    sigma_c = sum(symmetrical_uncertainty(c, ds_disc.class_column) for c in cols) / k
    pairs = list(itertools.combinations(cols, 2))
    sigma_f = sum(symmetrical_uncertainty(a, b) for a, b in pairs) / len(pairs) if pairs else 0.0
    return k * sigma_c / math.sqrt(k + k * (k - 1) * sigma_f)


def pair_merit(su_i_c: float, su_j_c: float, su_i_j: float) -> float:
    """Merit of a two-attribute subset from its three SU values."""
    return (su_i_c + su_j_c) / math.sqrt(2 + 2 * su_i_j)


def class_su(ds_disc: Dataset) -> np.ndarray:
    return np.array([symmetrical_uncertainty(c.discrete, ds_disc.class_column)
                     for c in ds_disc.columns])


def rank_pairwise_correlation(ds: Dataset, threads: int | None = None,
                              block: int = DEFAULT_BLOCK,
                              dense_limit: int = DEFAULT_DENSE_LIMIT) -> Ranking:
    """Score each attribute by its mean pair merit with every other attribute.

    Numeric attributes are MDL-discretized once up front.
    """
    n = ds.n_attributes
    if n < 2:
        raise DatasetError("pairwise correlation needs at least 2 attributes")
    threads = resolve_threads(threads)
    disc = discretize_dataset(ds, threads)
    codes = disc.code_matrix()
    cards = disc.cardinalities()
    h_attr = np.array([entropy(np.bincount(c, minlength=k)) for c, k in zip(codes, cards)])
    su_c = class_su(disc)

    def fill(i0, i1, j0, j1, out):
        _kernels.merit_block(codes, cards, h_attr, su_c, i0, i1, j0, j1, dense_limit, out)

    sums = pair_sums(n, fill, threads, block)
    return Ranking.from_scores(METHOD, sums / (n - 1))
