"""Repeated stratified k-fold cross-validation with percent-correct scoring."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .classifiers import get_classifier
from .dataset import Dataset, DatasetError, project
from .ranking import Ranking, resolve_threads


class TrainingError(RuntimeError):
    """A classifier failed inside one CV cell."""


@dataclass(frozen=True, eq=False)
class FoldPlan:
    k: int
    repeats: int
    seed: int
    assignments: np.ndarray  # (repeats, w) fold index per instance

    @property
    def n_instances(self) -> int:
        return self.assignments.shape[1]

    @property
    def signature(self) -> tuple[int, int, int, int]:
        return (self.k, self.repeats, self.seed, self.n_instances)

    def test_rows(self, r: int, f: int) -> np.ndarray:
        return np.flatnonzero(self.assignments[r] == f)

    def train_rows(self, r: int, f: int) -> np.ndarray:
        return np.flatnonzero(self.assignments[r] != f)

    def __eq__(self, other):
        if not isinstance(other, FoldPlan):
            return NotImplemented
        return self.signature == other.signature and np.array_equal(self.assignments,
                                                                    other.assignments)


def stratified_folds(ds: Dataset, k: int = 10, repeats: int = 10, seed: int = 42) -> FoldPlan:
    """Per repeat: shuffle with a (seed, repeat) stream, sort by class, deal folds round-robin.

    Dealing the class-sorted list keeps every class within one instance of
    its proportional share per fold and keeps fold sizes balanced.
    """
    w = ds.n_instances
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > w:
        raise DatasetError(f"k={k} folds exceeds {w} instances")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    y = ds.class_column.codes
    out = np.empty((repeats, w), dtype=np.int32)
    for r in range(repeats):
        rng = np.random.default_rng([seed, r])
        perm = rng.permutation(w)
        order = perm[np.argsort(y[perm], kind="stable")]
        out[r, order] = np.arange(w) % k
    return FoldPlan(k, repeats, seed, out)


@dataclass(frozen=True, eq=False)
class CvResult:
    method: str
    classifier: str
    scores: np.ndarray  # (repeats, k) percent correct
    plan_signature: tuple = ()
    test_train_ratio: float = 0.0
    q: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def mean(self) -> float:
        return float(self.scores.mean())

    @property
    def std(self) -> float:
        return float(self.scores.std(ddof=1)) if self.scores.size > 1 else 0.0

    def __eq__(self, other):
        if not isinstance(other, CvResult):
            return NotImplemented
        return (self.method == other.method and self.classifier == other.classifier
                and self.plan_signature == other.plan_signature and self.q == other.q
                and np.array_equal(self.scores, other.scores))

    def to_dict(self) -> dict:
        return {"method": self.method, "classifier": self.classifier, "q": self.q,
                "plan": list(self.plan_signature), "test_train_ratio": self.test_train_ratio,
                "mean": self.mean, "std": self.std, "scores": self.scores.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "CvResult":
        return cls(d["method"], d["classifier"], np.asarray(d["scores"], dtype=np.float64),
                   tuple(d["plan"]), float(d["test_train_ratio"]), d.get("q"))


def _classifier(spec) -> tuple[str, Callable]:
    if isinstance(spec, str):
        return spec, get_classifier(spec)
    return getattr(spec, "__name__", repr(spec)), spec


def cross_validate(ds: Dataset, classifier, plan: FoldPlan, method: str = "",
                   threads: int | None = None, q: int | None = None) -> CvResult:
    """Percent correct for every (repeat, fold) cell; training sees out-of-fold rows only."""
    if plan.n_instances != ds.n_instances:
        raise DatasetError("fold plan was built for a different dataset")
    name, fit = _classifier(classifier)
    threads = resolve_threads(threads)
    y = ds.class_column.codes
    cells = [(r, f) for r in range(plan.repeats) for f in range(plan.k)]

    def run(cell):
        r, f = cell
        test = plan.test_rows(r, f)
        train = plan.train_rows(r, f)
        try:
            model = fit(ds.take_rows(train))
            pred = model.predict(ds.take_rows(test))
        except Exception as exc:
            raise TrainingError(f"{name} failed at repeat {r}, fold {f}: {exc}") from exc
        return 100.0 * float(np.mean(pred == y[test])), len(test), len(train)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            res = list(ex.map(run, cells))
    else:
        res = [run(c) for c in cells]
    scores = np.array([a for a, _, _ in res]).reshape(plan.repeats, plan.k)
    n_test = np.mean([t for _, t, _ in res])
    n_train = np.mean([t for _, _, t in res])
    return CvResult(method, name, scores, plan.signature, float(n_test / n_train), q)


def log2_q(n: int) -> int:
    """q for the 'log2(n)' setting: log2(n) truncated (20531 -> 14)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return max(1, int(math.floor(math.log2(n))))


def resolve_q(q, n: int) -> int:
    if isinstance(q, str):
        if q.strip().lower() in ("log2", "log2(n)", "log"):
            return log2_q(n)
        q = int(q)
    return int(q)


def evaluate_ranking(ds: Dataset, ranking: Ranking, q_list: Sequence, classifiers: Sequence,
                     k: int = 10, repeats: int = 10, seed: int = 42,
                     threads: int | None = None, plan: FoldPlan | None = None) -> list[CvResult]:
    """Cross-validate the top-q reduced dataset for every q and classifier.

    One fold plan (built on the full dataset) is shared by every row so that
    results are directly comparable across methods with the same seed.
    """
    n = ds.n_attributes
    qs = [resolve_q(q, n) for q in q_list]
    for q in qs:
        if q < 0 or q > n:
            raise DatasetError(f"q={q} outside [0, {n}]")
    plan = plan or stratified_folds(ds, k, repeats, seed)
    rows = []
    for q in qs:
        reduced = project(ds, ranking.top(q))
        for clf in classifiers:
            rows.append(cross_validate(reduced, clf, plan, ranking.method, threads, q))
    return rows
