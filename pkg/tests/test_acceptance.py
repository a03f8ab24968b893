"""Acceptance criteria 1-9.

Each test prints one ``[PASS]`` or ``[FAIL]`` line (visible even under output
capture) so ``pytest tests/test_acceptance.py`` doubles as a checklist.
"""
import io
import time
from contextlib import contextmanager
from itertools import combinations

import numpy as np
import pytest

import oracles
from conftest import random_discrete_dataset, random_mixed_dataset
from pairrank.cli import write_ranking
from pairrank.compare import B_WINS, TIE, paired_t, wins_losses
from pairrank.consistency import inconsistency_count, inconsistency_rate, rank_pairwise_consistency
from pairrank.correlation import class_su, pair_merit, rank_pairwise_correlation, subset_merit
from pairrank.dataset import DiscreteColumn, from_arrays
from pairrank.discretize import discretize_dataset
from pairrank.evaluation import (CvResult, cross_validate, evaluate_ranking, log2_q,
                                 stratified_folds)
from pairrank.metrics import chi_squared, entropy, info_gain, symmetrical_uncertainty
from pairrank.ranking import Ranking


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(label):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\n[FAIL] {label} ({time.perf_counter() - start:.1f}s)")
            raise
        with capsys.disabled():
            print(f"\n[PASS] {label} ({time.perf_counter() - start:.1f}s)")
    return run


# class layouts of the three benchmark problems
CANCER = {"BRCA": 300, "COAD": 78, "KIRC": 146, "LUAD": 141, "PRAD": 136}
TISSUE = {"BrainAmygdala": 97, "BrainAnteriorCingulateCortex": 121, "BrainCaudateBG": 157,
          "BrainCerebellarHemisphere": 134, "BrainCerebellum": 173, "BrainCortex": 158,
          "BrainHippocampus": 123, "BrainHypothalamus": 120, "BrainNucleusAccumbensBG": 146,
          "BrainPutamenBG": 123, "BrainSpinalCordC1": 90, "BrainSubstantiaNigra": 87}
AGE = {"20-29": 59, "30-39": 35, "40-49": 165, "50-59": 478, "60-69": 705, "70-79": 87}


@pytest.mark.parametrize("layout, expected", [(CANCER, 37.45), (TISSUE, 11.31), (AGE, 46.11)],
                         ids=["cancer", "tissue", "age"])
def test_ac1_zero_r_class_layouts(criterion, layout, expected):
    with criterion(f"AC1 ZeroR {expected}"):
        start = time.perf_counter()
        y = [lab for lab, c in layout.items() for _ in range(c)]
        X = np.random.default_rng(1).normal(size=(len(y), 3))
        ds = from_arrays(X, y)
        res = cross_validate(ds, "zeror", stratified_folds(ds, 10, 10, 42))
        assert abs(res.mean - expected) <= 0.5, res.mean
        assert time.perf_counter() - start < 5


def test_ac2_worked_inconsistency_example(criterion):
    with criterion("AC2 inconsistency count 11, rate 11/47"):
        assert inconsistency_count([36, 6, 5]) == 11
        ds = from_arrays(np.zeros((47, 1), dtype=int), ["a"] * 36 + ["b"] * 6 + ["c"] * 5,
                         nominal=[0])
        assert inconsistency_rate(ds, [0]) == 11 / 47


def test_ac3_merit_identities(criterion):
    with criterion("AC3 merit k=1 == class SU; pair formula == subset merit (1000 trials)"):
        rng = np.random.default_rng(3)
        worst = 0.0
        for _ in range(1000):
            ds = random_discrete_dataset(rng, int(rng.integers(2, 6)), int(rng.integers(3, 80)),
                                         max_card=int(rng.integers(1, 7)))
            su_c = class_su(ds)
            i, j = sorted(rng.choice(ds.n_attributes, 2, replace=False).tolist())
            assert subset_merit(ds, [i]) == su_c[i]
            cols, cls = oracles.columns_of(ds)
            assert su_c[i] == oracles.su(cols[i], cls)
            su_ij = symmetrical_uncertainty(ds.columns[i].discrete, ds.columns[j].discrete)
            worst = max(worst, abs(pair_merit(su_c[i], su_c[j], su_ij) - subset_merit(ds, [i, j])))
        assert worst <= 1e-12, worst


def test_ac4_oracle_equivalence(criterion):
    with criterion("AC4 200 datasets, zero ordering mismatches vs brute force"):
        rng = np.random.default_rng(4)
        start = time.perf_counter()
        mismatches = 0
        for t in range(200):
            n, w = int(rng.integers(2, 13)), int(rng.integers(4, 101))
            ds = random_mixed_dataset(rng, n, w) if t % 2 else \
                random_discrete_dataset(rng, n, w, max_card=5)
            disc = discretize_dataset(ds)
            corr = oracles.order_of(oracles.pairwise_correlation_scores(disc))
            cons = oracles.order_of(oracles.pairwise_consistency_scores(disc))
            mismatches += rank_pairwise_correlation(ds).order != corr
            mismatches += rank_pairwise_consistency(ds).order != cons
        assert mismatches == 0
        assert time.perf_counter() - start < 60


def test_ac5_anti_monotonicity(criterion):
    with criterion("AC5 I(S) >= I(T) for every S subset of T"):
        rng = np.random.default_rng(5)
        checked = 0
        for _ in range(100):
            n, w = int(rng.integers(1, 7)), int(rng.integers(3, 41))
            ds = random_discrete_dataset(rng, n, w, max_card=3)
            subsets = [s for k in range(1, n + 1) for s in combinations(range(n), k)]
            rate = {s: inconsistency_rate(ds, s) for s in subsets}
            for s in subsets:
                for t in subsets:
                    if s != t and set(s) <= set(t):
                        assert rate[s] >= rate[t], (s, t)
                        checked += 1
        assert checked > 0


def test_ac6_metric_properties(criterion):
    with criterion("AC6 SU symmetry/range, IG bounds, chi2 = 0 on independent tables"):
        rng = np.random.default_rng(6)
        for _ in range(10_000):
            w = int(rng.integers(1, 60))
            cx, cy = int(rng.integers(1, 6)), int(rng.integers(1, 6))
            x = DiscreteColumn(rng.integers(0, cx, w), cx)
            y = DiscreteColumn(rng.integers(0, cy, w), cy)
            sxy, syx = symmetrical_uncertainty(x, y), symmetrical_uncertainty(y, x)
            assert abs(sxy - syx) <= 1e-9
            assert -1e-9 <= sxy <= 1 + 1e-9
            ig = info_gain(x, y)
            hx, hy = entropy(np.bincount(x.codes)), entropy(np.bincount(y.codes))
            assert ig >= -1e-9
            assert ig <= min(hx, hy) + 1e-9
            # every (a, b) cell holds the same count: an exactly independent table
            rx, ry, m = int(rng.integers(1, 7)), int(rng.integers(1, 7)), int(rng.integers(1, 5))
            a, b = np.meshgrid(np.arange(rx), np.arange(ry), indexing="ij")
            perm = rng.permutation(rx * ry * m)
            u = DiscreteColumn(np.repeat(a.ravel(), m)[perm], rx)
            v = DiscreteColumn(np.repeat(b.ravel(), m)[perm], ry)
            assert abs(chi_squared(u, v)) <= 1e-9


def planted(seed=7, w=200, informative=5, noise=500):
    rng = np.random.default_rng(seed)
    y = np.arange(w) % 2
    rng.shuffle(y)
    signal = 2.0 * y[:, None] + rng.normal(size=(w, informative))
    X = np.column_stack([rng.normal(size=(w, noise)), signal])
    return from_arrays(X, y, class_labels=[0, 1]), list(range(noise, noise + informative))


def test_ac7_planted_signal_recovery(criterion):
    with criterion("AC7 planted attributes in top 10; kNN q=5 >= 90%; random q=5 near ZeroR"):
        ds, informative = planted()
        plan = stratified_folds(ds, 10, 10, 42)
        for rank in (rank_pairwise_correlation, rank_pairwise_consistency):
            ranking = rank(ds)
            assert set(informative) <= set(ranking.top(10)), (rank.__name__, ranking.top(10))
            knn5 = evaluate_ranking(ds, ranking, [5], ["knn"], plan=plan)[0]
            assert knn5.mean >= 90, (rank.__name__, knn5.mean)
        scores = np.random.default_rng(77).random(ds.n_attributes)
        random5 = evaluate_ranking(ds, Ranking.from_scores("random", scores), [5], ["knn"],
                                   plan=plan)[0]
        zero = cross_validate(ds, "zeror", plan)
        assert abs(random5.mean - zero.mean) <= 5, (random5.mean, zero.mean)


@pytest.mark.slow
def test_ac8_determinism_and_runtime(criterion):
    with criterion("AC8 5000 x 500 byte-identical across 1 and 8 threads, < 120 s each"):
        rng = np.random.default_rng(8)
        w, n = 500, 5000
        y = np.arange(w) % 3
        X = np.round(rng.normal(size=(w, n)), 2)
        X[:, :100] += y[:, None] * rng.uniform(0.2, 1.5, 100)
        ds = from_arrays(X, y)
        for rank in (rank_pairwise_correlation, rank_pairwise_consistency):
            outputs = []
            for threads in (1, 8):
                start = time.perf_counter()
                ranking = rank(ds, threads=threads)
                elapsed = time.perf_counter() - start
                assert elapsed < 120, (rank.__name__, threads, elapsed)
                buf = io.StringIO()
                write_ranking(ranking, ds.attribute_names, buf)
                outputs.append(buf.getvalue().encode())
            assert outputs[0] == outputs[1], rank.__name__


def result(method, scores):
    return CvResult(method, "knn", np.asarray(scores, dtype=float).reshape(10, 10),
                    (10, 10, 42, 100), 1 / 9, 3)


def test_ac9_statistical_machinery(criterion):
    with criterion("AC9 identical -> tie t=0; +10 shift wins; sum wins == sum losses; log2 q"):
        rng = np.random.default_rng(9)
        base = rng.uniform(50, 90, 100)
        for correction in ("none", "resampled"):
            same = paired_t(result("a", base), result("b", base), correction=correction)
            assert same.verdict == TIE and same.t == 0.0
            shifted = paired_t(result("a", base), result("b", base + 10), correction=correction)
            assert shifted.verdict == B_WINS
        methods = [f"m{i}" for i in range(5)]
        for _ in range(200):
            res = [result(m, base + rng.normal(rng.uniform(-3, 3), 2, 100)) for m in methods]
            outs = [paired_t(a, b) for a, b in combinations(res, 2)]
            rows = wins_losses(outs)
            assert sum(r.wins for r in rows) == sum(r.losses for r in rows)
        assert log2_q(20531) == 14
