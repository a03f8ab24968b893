"""Rank, reduce, cross-validate and compare all six rankers on planted-signal data.

The informative block is a handful of attributes whose class-conditional means
differ; a few of them are near-copies of each other so that redundancy-aware
rankers have something to exploit. Everything else is Gaussian noise.

    python scripts/planted_signal.py --noise 500 --repeats 10
"""
import argparse
import dataclasses
import sys
import time
from dataclasses import dataclass

import numpy as np

from pairrank.cli import rank_dataset
from pairrank.compare import compare_results
from pairrank.dataset import from_arrays
from pairrank.evaluation import evaluate_ranking, stratified_folds

METHODS = ("pairwise-correlation", "pairwise-consistency", "info-gain", "chi-squared",
           "correlation", "relieff")


@dataclass
class PlantedConfig:
    instances: int = 200
    informative: int = 5
    redundant: int = 5  # noisy copies of the first informative attribute
    noise: int = 500
    classes: int = 2
    shift: float = 2.0
    seed: int = 7
    q_list: tuple = (3, "log2", 10, 50)
    classifiers: tuple = ("naive-bayes", "knn", "zeror")
    folds: int = 10
    repeats: int = 10
    threads: int = 1


def make_dataset(cfg: PlantedConfig):
    rng = np.random.default_rng(cfg.seed)
    y = np.arange(cfg.instances) % cfg.classes
    rng.shuffle(y)
    signal = cfg.shift * y[:, None] + rng.normal(size=(cfg.instances, cfg.informative))
    copies = signal[:, :1] + rng.normal(0, 0.1, size=(cfg.instances, cfg.redundant))
    X = np.column_stack([signal, copies, rng.normal(size=(cfg.instances, cfg.noise))])
    names = [f"inf{i}" for i in range(cfg.informative)] + \
        [f"dup{i}" for i in range(cfg.redundant)] + [f"noise{i}" for i in range(cfg.noise)]
    return from_arrays(X, y, names=names, name="planted", class_labels=list(range(cfg.classes)))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in dataclasses.fields(PlantedConfig):
        if f.type in (int, float, "int", "float"):
            p.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    cfg = PlantedConfig(**vars(p.parse_args(argv)))
    ds = make_dataset(cfg)
    plan = stratified_folds(ds, cfg.folds, cfg.repeats, cfg.seed)
    results = []
    for method in METHODS:
        t0 = time.perf_counter()
        ranking = rank_dataset(ds, method, cfg.threads, cfg.seed)
        top = [ds.attribute_names[i] for i in ranking.top(10)]
        print(f"{method:22s} {time.perf_counter() - t0:6.2f}s  top10: {' '.join(top)}")
        results += [dataclasses.replace(r, method=method) for r in
                    evaluate_ranking(ds, ranking, cfg.q_list, cfg.classifiers, plan=plan,
                                     threads=cfg.threads)]

    print("\nmean percent correct")
    print("q\tclassifier\t" + "\t".join(METHODS))
    grid = {(r.q, r.classifier, r.method): r.mean for r in results}
    for q in sorted({r.q for r in results}):
        for c in cfg.classifiers:
            print(f"{q}\t{c}\t" + "\t".join(f"{grid[q, c, m]:.2f}" for m in METHODS))

    _, table, best = compare_results(results, dataset=ds.name)
    print("\nwins-losses (corrected resampled t-test, alpha 0.05)")
    for row in table:
        print(f"{row.rank}\t{row.method}\t{row.wins}\t{row.losses}\t{row.difference}")
    print("\nbest-count")
    for method, count, rank in best:
        print(f"{rank}\t{method}\t{count}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
