"""Wall-clock scaling of the two pairwise rankers with the number of attributes.

Work grows with n^2 / 2 attribute pairs, each costing O(w); the table reports
seconds and nanoseconds per pair so the quadratic term is easy to read off.
"""
import argparse
import sys
import time

import numpy as np

from pairrank.consistency import rank_pairwise_consistency
from pairrank.correlation import rank_pairwise_correlation
from pairrank.dataset import from_arrays
from pairrank.discretize import discretize_dataset


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000, 5000])
    p.add_argument("--instances", type=int, default=500)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=8)
    args = p.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    y = np.arange(args.instances) % 3
    print("n\tpairs\tdiscretize_s\tcorrelation_s\tconsistency_s\tns_per_pair")
    for n in args.sizes:
        X = np.round(rng.normal(size=(args.instances, n)), 2)
        X[:, : n // 50] += y[:, None] * rng.uniform(0.2, 1.5, n // 50)
        ds = from_arrays(X, y)
        t0 = time.perf_counter()
        disc = discretize_dataset(ds, threads=args.threads)
        t1 = time.perf_counter()
        rank_pairwise_correlation(disc, threads=args.threads)
        t2 = time.perf_counter()
        rank_pairwise_consistency(disc, threads=args.threads)
        t3 = time.perf_counter()
        pairs = n * (n - 1) // 2
        print(f"{n}\t{pairs}\t{t1 - t0:.2f}\t{t2 - t1:.2f}\t{t3 - t2:.2f}\t"
              f"{1e9 * (t3 - t1) / 2 / pairs:.0f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
