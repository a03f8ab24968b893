"""Supervised Fayyad-Irani MDL discretization."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dataset import AttributeColumn, Dataset, DiscreteColumn


@dataclass(frozen=True)
class CutPointSet:
    attribute: int
    cuts: tuple[float, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.cuts, self.cuts[1:])):
            raise ValueError("cut points must be strictly increasing")

    def bins(self, values) -> np.ndarray:
        """Bin index of each value: the number of cut points <= value."""
        return np.searchsorted(np.asarray(self.cuts, dtype=np.float64),
                               np.asarray(values, dtype=np.float64), side="right").astype(np.int32)

    @property
    def n_bins(self) -> int:
        return len(self.cuts) + 1


def _row_entropy(counts: np.ndarray) -> np.ndarray:
    """Entropy in bits of each row of a count matrix.

    Rows are sorted first so the result does not depend on class order.
    """
    counts = np.sort(counts, axis=-1)
    tot = counts.sum(axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(counts > 0, counts / np.where(tot > 0, tot, 1), 1.0)
        return -(p * np.log2(p)).sum(axis=-1)


def _mdl_accepts(total: np.ndarray, left: np.ndarray, right: np.ndarray) -> bool:
    n = float(total.sum())
    h, h1, h2 = _row_entropy(np.stack([total, left, right]))
    n1, n2 = float(left.sum()), float(right.sum())
    gain = h - (n1 * h1 + n2 * h2) / n
    k, k1, k2 = (int((v > 0).sum()) for v in (total, left, right))
    delta = math.log2(3 ** k - 2) - (k * h - k1 * h1 - k2 * h2)
    return gain > (math.log2(n - 1) + delta) / n


def _boundaries(groups: np.ndarray) -> np.ndarray:
    """Mask over gaps between consecutive value groups that are boundary points.

    A gap is skipped only when both neighbouring groups are pure in the same class.
    """
    nonzero = groups > 0
    pure = nonzero.sum(axis=1) == 1
    label = groups.argmax(axis=1)
    same = pure[:-1] & pure[1:] & (label[:-1] == label[1:])
    return ~same


def mdl_cut_points(values, labels, attribute: int = 0) -> CutPointSet:
    """Recursive minimum-entropy binary splitting with the MDLPC stopping rule.

    ``labels`` is a DiscreteColumn or an integer array of class codes.
    """
    values = np.asarray(values, dtype=np.float64)
    if isinstance(labels, DiscreteColumn):
        codes, s = labels.codes, labels.cardinality
    else:
        codes = np.asarray(labels, dtype=np.int64)
        s = int(codes.max()) + 1 if codes.size else 1
    if values.shape[0] != codes.shape[0]:
        raise ValueError("values and labels must have equal length")
    if values.size == 0:
        return CutPointSet(attribute, ())
    uniq, inv = np.unique(values, return_inverse=True)
    u = uniq.shape[0]
    if u < 2:
        return CutPointSet(attribute, ())
    groups = np.bincount(inv.ravel() * s + codes, minlength=u * s).reshape(u, s)
    cuts: list[float] = []
    stack = [(0, u)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        seg = groups[lo:hi]
        cand = np.flatnonzero(_boundaries(seg))
        if cand.size == 0:
            continue
        cum = np.cumsum(seg, axis=0)
        total = cum[-1]
        left = cum[cand]
        right = total - left
        nl = left.sum(axis=1)
        nr = right.sum(axis=1)
        ent = (nl * _row_entropy(left) + nr * _row_entropy(right)) / total.sum()
        # argmin returns the first minimum, i.e. the smallest cut value
        best = int(np.argmin(ent))
        g = int(cand[best])
        if not _mdl_accepts(total, left[best], right[best]):
            continue
        split = lo + g + 1
        cuts.append(float((uniq[split - 1] + uniq[split]) / 2.0))
        stack.append((split, hi))
        stack.append((lo, split))
    return CutPointSet(attribute, tuple(sorted(cuts)))


def _bin_labels(cuts: tuple[float, ...]) -> tuple[str, ...]:
    if not cuts:
        return ("All",)
    edges = ["-inf", *(repr(c) for c in cuts), "inf"]
    return tuple(f"({a}-{b}]" for a, b in zip(edges, edges[1:]))


def compute_cut_points(ds: Dataset, threads: int = 1) -> dict[int, CutPointSet]:
    """Cut points for every numeric attribute, keyed by attribute id."""
    ids = [i for i, c in enumerate(ds.columns) if c.is_numeric]

    def one(i):
        return mdl_cut_points(ds.columns[i].values, ds.class_column, attribute=i)

    if threads > 1 and len(ids) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            result = list(ex.map(one, ids))
    else:
        result = [one(i) for i in ids]
    return dict(zip(ids, result))


def apply_cut_points(ds: Dataset, cut_sets: dict[int, CutPointSet]) -> Dataset:
    cols = []
    for i, col in enumerate(ds.columns):
        if col.is_numeric:
            cps = cut_sets[i]
            cols.append(AttributeColumn.nominal(cps.bins(col.values), cps.n_bins,
                                                _bin_labels(cps.cuts)))
        else:
            cols.append(col)
    return Dataset(ds.name, ds.attribute_names, cols, ds.class_column, ds.class_name)


def discretize_dataset(ds: Dataset, threads: int = 1) -> Dataset:
    """Replace numeric columns by their MDL bins; nominal columns pass through.

    An attribute with no accepted cut becomes a single-bin column.
    """
    if ds.is_discrete:
        return ds
    return apply_cut_points(ds, compute_cut_points(ds, threads))
