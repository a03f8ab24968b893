"""Association measures between discrete columns (and one for numeric vs class).

All entropies are in bits.  ``entropy`` evaluates ``-sum(p * log2(p))`` cell by
cell in ascending count order; the compiled pairwise kernels use the same
expression and order, so scalar and batched paths agree to the last bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import AttributeColumn, DiscreteColumn


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray  # (card_x, card_y) int64

    @classmethod
    def from_columns(cls, x: DiscreteColumn, y: DiscreteColumn) -> "ContingencyTable":
        _check_lengths(x, y)
        flat = np.bincount(x.codes.astype(np.int64) * y.cardinality + y.codes,
                           minlength=x.cardinality * y.cardinality)
        return cls(flat.reshape(x.cardinality, y.cardinality))

    @property
    def row_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _check_lengths(x, y):
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")


def entropy(counts) -> float:
    """Shannon entropy (bits) of a vector of non-negative counts.

    Cells are summed in ascending count order, which makes the result
    independent of cell order (so SU(x, y) and SU(y, x) agree exactly).
    """
    counts = sorted(int(c) for c in np.ravel(counts))
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    total = sum(counts)
    if total == 0:
        raise ValueError("entropy needs at least one positive count")
    h = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return h


def _entropies(table: ContingencyTable) -> tuple[float, float, float]:
    return (entropy(table.row_totals), entropy(table.col_totals), entropy(table.counts))


def su_from_entropies(hx: float, hy: float, hxy: float) -> float:
    denom = hx + hy
    if denom == 0.0:
        return 0.0
    return 2.0 * (hx + hy - hxy) / denom


def info_gain(x: DiscreteColumn, y: DiscreteColumn) -> float:
    """Mutual information H(x) + H(y) - H(x, y), i.e. H(y) - H(y | x)."""
    hx, hy, hxy = _entropies(ContingencyTable.from_columns(x, y))
    return hx + hy - hxy


def symmetrical_uncertainty(x: DiscreteColumn, y: DiscreteColumn) -> float:
    """2 * IG / (H(x) + H(y)); 0 when both columns are constant."""
    return su_from_entropies(*_entropies(ContingencyTable.from_columns(x, y)))


def chi_squared(x: DiscreteColumn, y: DiscreteColumn) -> float:
    t = ContingencyTable.from_columns(x, y)
    obs = t.counts.astype(np.float64)
    expected = np.outer(t.row_totals, t.col_totals) / t.total
    mask = expected > 0
    return float((((obs - expected) ** 2)[mask] / expected[mask]).sum())


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    da = a - a.mean()
    db = b - b.mean()
    sa = math.sqrt(float(da @ da))
    sb = math.sqrt(float(db @ db))
    if sa == 0.0 or sb == 0.0:
        return 0.0
    return float(da @ db) / (sa * sb)


def class_correlation(x: AttributeColumn, cls: DiscreteColumn) -> float:
    """Class-frequency weighted mean of |pearson(x, cls == c)| over classes c.

    For two classes both indicators give the same |r|, so this is plain
    |pearson(x, indicator)|.  Constant ``x`` scores 0.
    """
    if not x.is_numeric:
        raise TypeError("class_correlation needs a numeric column")
    _check_lengths(x, cls)
    vals = x.values
    w = len(vals)
    counts = np.bincount(cls.codes, minlength=cls.cardinality)
    score = 0.0
    for c in range(cls.cardinality):
        if counts[c] == 0:
            continue
        ind = (cls.codes == c).astype(np.float64)
        score += counts[c] / w * abs(_pearson(vals, ind))
    return min(score, 1.0)
