"""Minimal classifiers for the evaluation harness.

A classifier spec is any callable ``fit(train: Dataset) -> model`` where
``model.predict(ds: Dataset)`` returns integer class codes.  Heavier learners
can be plugged in through the same contract.
"""
from __future__ import annotations

import math
from functools import partial

import numpy as np

from .dataset import Dataset

VAR_FLOOR = 1e-9


def _majority(codes: np.ndarray, s: int) -> int:
    # argmax keeps the lowest code on ties
    return int(np.argmax(np.bincount(codes, minlength=s)))


class ZeroRModel:
    def __init__(self, label: int):
        self.label = label

    def predict(self, ds: Dataset) -> np.ndarray:
        return np.full(ds.n_instances, self.label, dtype=np.int32)


def zero_r(train: Dataset) -> ZeroRModel:
    """Always predict the majority training class (lowest code on ties)."""
    return ZeroRModel(_majority(train.class_column.codes, train.n_classes))


class NaiveBayesModel:
    def __init__(self, log_prior, gauss, nominal):
        self.log_prior = log_prior
        self.gauss = gauss      # list of (attr, mean[s], var[s])
        self.nominal = nominal  # list of (attr, log_prob[s, card])

    def log_joint(self, ds: Dataset) -> np.ndarray:
        scores = np.tile(self.log_prior, (ds.n_instances, 1))
        for a, mean, var in self.gauss:
            x = ds.columns[a].values[:, None]
            scores += -0.5 * np.log(2 * math.pi * var) - (x - mean) ** 2 / (2 * var)
        for a, logp in self.nominal:
            codes = ds.columns[a].discrete.codes
            scores += logp[:, np.minimum(codes, logp.shape[1] - 1)].T
        return scores

    def predict(self, ds: Dataset) -> np.ndarray:
        return np.argmax(self.log_joint(ds), axis=1).astype(np.int32)


def naive_bayes(train: Dataset) -> NaiveBayesModel:
    """Gaussian / multinomial naive Bayes with Laplace-smoothed priors and frequencies."""
    y = train.class_column.codes
    s = train.n_classes
    counts = np.bincount(y, minlength=s)
    log_prior = np.log((counts + 1) / (len(y) + s))
    gauss, nominal = [], []
    for a, col in enumerate(train.columns):
        if col.is_numeric:
            v = col.values
            mean = np.empty(s)
            var = np.empty(s)
            for c in range(s):
                vc = v[y == c] if counts[c] else v
                mean[c] = vc.mean()
                var[c] = vc.var()
            gauss.append((a, mean, np.maximum(var, VAR_FLOOR)))
        else:
            d = col.discrete
            tab = np.bincount(y.astype(np.int64) * d.cardinality + d.codes,
                              minlength=s * d.cardinality).reshape(s, d.cardinality)
            nominal.append((a, np.log((tab + 1) / (counts[:, None] + d.cardinality))))
    return NaiveBayesModel(log_prior, gauss, nominal)


class KnnModel:
    def __init__(self, train: Dataset, k: int):
        self.k = k
        self.s = train.n_classes
        self.y = train.class_column.codes
        self.num_idx = [i for i, c in enumerate(train.columns) if c.is_numeric]
        self.nom_idx = [i for i, c in enumerate(train.columns) if not c.is_numeric]
        num = np.array([train.columns[i].values for i in self.num_idx]).reshape(
            len(self.num_idx), train.n_instances).T
        self.lo = num.min(axis=0) if num.size else np.zeros(0)
        rng = (num.max(axis=0) - self.lo) if num.size else np.zeros(0)
        self.scale = np.where(rng > 0, rng, 1.0)
        self.num = (num - self.lo) / self.scale
        self.nom = np.array([train.columns[i].discrete.codes for i in self.nom_idx],
                            dtype=np.int32).reshape(len(self.nom_idx), train.n_instances).T

    def _features(self, ds: Dataset):
        num = np.array([ds.columns[i].values for i in self.num_idx]).reshape(
            len(self.num_idx), ds.n_instances).T
        nom = np.array([ds.columns[i].discrete.codes for i in self.nom_idx],
                       dtype=np.int32).reshape(len(self.nom_idx), ds.n_instances).T
        return (num - self.lo) / self.scale, nom

    def predict(self, ds: Dataset) -> np.ndarray:
        num, nom = self._features(ds)
        k = min(self.k, len(self.y))
        out = np.empty(ds.n_instances, dtype=np.int32)
        for r in range(ds.n_instances):
            d2 = ((self.num - num[r]) ** 2).sum(axis=1) + (self.nom != nom[r]).sum(axis=1)
            near = np.argsort(d2, kind="stable")[:k]
            out[r] = _majority(self.y[near], self.s)
        return out


def knn(train: Dataset, k: int = 1) -> KnnModel:
    """k nearest neighbours, Euclidean on range-normalised numerics plus 0/1 nominal diffs.

    Distance ties go to the lower training index, vote ties to the lower class code.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return KnnModel(train, k)


CLASSIFIERS = {
    "naive-bayes": naive_bayes,
    "knn": knn,
    "zeror": zero_r,
}


def get_classifier(name: str):
    """Resolve ``name`` or ``knn:<k>`` to a fit callable."""
    if name.startswith("knn:"):
        return partial(knn, k=int(name.split(":", 1)[1]))
    try:
        return CLASSIFIERS[name]
    except KeyError:
        raise ValueError(f"unknown classifier {name!r}; choose from {sorted(CLASSIFIERS)}") from None
