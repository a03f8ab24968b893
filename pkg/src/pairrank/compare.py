"""Paired t-tests between CV results and wins/losses aggregation."""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from scipy import stats

from .evaluation import CvResult

A_WINS = "A_wins"
B_WINS = "B_wins"
TIE = "tie"


@dataclass(frozen=True)
class ComparisonOutcome:
    method_a: str
    method_b: str
    context: tuple
    verdict: str
    t: float
    p: float
    alpha: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["context"] = list(self.context)
        for key in ("t", "p"):
            if not math.isfinite(d[key]):
                d[key] = str(d[key])
        return d


def paired_t(a: CvResult, b: CvResult, alpha: float = 0.05, correction: str = "resampled",
             context: tuple = ()) -> ComparisonOutcome:
    """Two-sided paired t-test on the cell-wise differences b - a.

    ``correction="resampled"`` scales the variance by (1/m + n_test/n_train)
    instead of 1/m (Nadeau & Bengio), m = repeats * folds.  t is reported
    as mean(a - b) over its standard error, so t > 0 favours ``a``.
    """
    if correction not in ("none", "plain", "resampled"):
        raise ValueError(f"unknown correction {correction!r}")
    if a.scores.shape != b.scores.shape or (a.plan_signature and b.plan_signature
                                            and a.plan_signature != b.plan_signature):
        raise ValueError("CV results were produced on different fold grids")
    d = (a.scores - b.scores).ravel()
    m = d.size
    mean = float(d.mean())
    var = float(d.var(ddof=1)) if m > 1 else 0.0
    factor = 1.0 / m
    if correction == "resampled":
        factor += a.test_train_ratio
    if var == 0.0:
        if mean == 0.0:
            t, p = 0.0, 1.0
        else:
            t, p = math.copysign(math.inf, mean), 0.0
    else:
        t = mean / math.sqrt(factor * var)
        p = float(2.0 * stats.t.sf(abs(t), df=m - 1))
    if p < alpha and mean > 0:
        verdict = A_WINS
    elif p < alpha and mean < 0:
        verdict = B_WINS
    else:
        verdict = TIE
    return ComparisonOutcome(a.method, b.method, tuple(context), verdict, t, p, alpha)


@dataclass(frozen=True)
class WinsLossesRow:
    method: str
    wins: int
    losses: int
    difference: int
    rank: int


def dense_rank(values: Mapping[str, float]) -> dict[str, int]:
    """Descending dense rank: equal values share a rank, the next distinct value gets +1."""
    distinct = sorted(set(values.values()), reverse=True)
    pos = {v: k + 1 for k, v in enumerate(distinct)}
    return {m: pos[v] for m, v in values.items()}


def wins_losses(outcomes: Iterable[ComparisonOutcome], methods: Sequence[str] | None = None
                ) -> list[WinsLossesRow]:
    outcomes = list(outcomes)
    wins: dict[str, int] = defaultdict(int)
    losses: dict[str, int] = defaultdict(int)
    seen = list(methods) if methods else []
    for o in outcomes:
        for m in (o.method_a, o.method_b):
            if m not in seen:
                seen.append(m)
        if o.verdict == A_WINS:
            wins[o.method_a] += 1
            losses[o.method_b] += 1
        elif o.verdict == B_WINS:
            wins[o.method_b] += 1
            losses[o.method_a] += 1
    diff = {m: wins[m] - losses[m] for m in seen}
    ranks = dense_rank(diff)
    rows = [WinsLossesRow(m, wins[m], losses[m], diff[m], ranks[m]) for m in seen]
    return sorted(rows, key=lambda r: (r.rank, seen.index(r.method)))


def best_count(tables: Mapping[Hashable, Mapping[str, float]]) -> list[tuple[str, int, int]]:
    """(method, times best, rank) over contexts; every method tied at the top is credited."""
    if not tables:
        raise ValueError("best_count needs at least one context")
    methods: list[str] = []
    for scores in tables.values():
        for m in scores:
            if m not in methods:
                methods.append(m)
    counts = {m: 0 for m in methods}
    for scores in tables.values():
        top = max(scores.values())
        for m, v in scores.items():
            if v == top:
                counts[m] += 1
    ranks = dense_rank(counts)
    return sorted(((m, counts[m], ranks[m]) for m in methods),
                  key=lambda r: (r[2], methods.index(r[0])))


def compare_results(results: Sequence[CvResult], alpha: float = 0.05,
                    correction: str = "resampled", dataset: str = ""):
    """All-pairs paired t-tests within each (q, classifier) context.

    Returns (outcomes, wins/losses table, best-count table).
    """
    by_context: dict[tuple, dict[str, CvResult]] = defaultdict(dict)
    for r in results:
        by_context[(dataset, r.q, r.classifier)][r.method] = r
    outcomes = []
    means = {}
    methods: list[str] = []
    for r in results:
        if r.method not in methods:
            methods.append(r.method)
    for ctx, group in by_context.items():
        means[ctx] = {m: res.mean for m, res in group.items()}
        for ma, mb in itertools.combinations([m for m in methods if m in group], 2):
            outcomes.append(paired_t(group[ma], group[mb], alpha, correction, ctx))
    return outcomes, wins_losses(outcomes, methods), best_count(means)
