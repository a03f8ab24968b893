"""Brute-force reference implementations used only by the tests.

They work on plain Python lists and dicts, recompute everything per pair and
share no code with the package beyond the Dataset container.
"""
import math
from collections import Counter, defaultdict
from itertools import combinations


def columns_of(ds_disc):
    return [list(map(int, c.discrete.codes)) for c in ds_disc.columns], \
        list(map(int, ds_disc.class_column.codes))


def h(counts):
    # ascending-count order, same float expression as the package
    counts = sorted(c for c in counts if c > 0)
    total = sum(counts)
    out = 0.0
    for c in counts:
        p = c / total
        out -= p * math.log2(p)
    return out


def su(x, y):
    hx = h(Counter(x).values())
    hy = h(Counter(y).values())
    hxy = h(Counter(zip(x, y)).values())
    if hx + hy == 0.0:
        return 0.0
    return 2.0 * (hx + hy - hxy) / (hx + hy)


def cfs_merit(cols, cls, subset):
    subset = sorted(subset)
    k = len(subset)
    sigma_c = 0.0
    for a in subset:
        sigma_c += su(cols[a], cls)
    sigma_c /= k
    pairs = list(combinations(subset, 2))
    sigma_f = 0.0
    for a, b in pairs:
        sigma_f += su(cols[a], cols[b])
    sigma_f = sigma_f / len(pairs) if pairs else 0.0
    return k * sigma_c / math.sqrt(k + k * (k - 1) * sigma_f)


def pairwise_correlation_scores(ds_disc):
    cols, cls = columns_of(ds_disc)
    n = len(cols)
    scores = []
    for i in range(n):
        acc = 0.0
        for j in range(n):
            if j != i:
                acc += cfs_merit(cols, cls, [i, j])
        scores.append(acc / (n - 1))
    return scores


def consistency_by_hashing(cols, cls, subset):
    groups = defaultdict(Counter)
    for r in range(len(cls)):
        key = "|".join(str(cols[a][r]) for a in sorted(subset))
        groups[key][cls[r]] += 1
    incons = sum(sum(c.values()) - max(c.values()) for c in groups.values())
    return 1.0 - incons / len(cls)


def pairwise_consistency_scores(ds_disc):
    cols, cls = columns_of(ds_disc)
    n = len(cols)
    scores = []
    for i in range(n):
        acc = 0.0
        for j in range(n):
            if j != i:
                acc += consistency_by_hashing(cols, cls, [i, j])
        scores.append(acc / (n - 1))
    return scores


def order_of(scores):
    return sorted(range(len(scores)), key=lambda i: (-scores[i], i))


def mdlpc_accepts(values, labels, cut):
    """Evaluate the Fayyad-Irani acceptance inequality for one cut, from scratch."""
    s1 = [l for v, l in zip(values, labels) if v <= cut]
    s2 = [l for v, l in zip(values, labels) if v > cut]
    n = len(labels)

    def ent(ls):
        return h(Counter(ls).values()) if ls else 0.0

    gain = ent(labels) - len(s1) / n * ent(s1) - len(s2) / n * ent(s2)
    k, k1, k2 = len(set(labels)), len(set(s1)), len(set(s2))
    delta = math.log2(3 ** k - 2) - (k * ent(labels) - k1 * ent(s1) - k2 * ent(s2))
    return gain > (math.log2(n - 1) + delta) / n


def relieff_weights(X, kinds, y, k):
    """Plain-loop ReliefF over every instance; kinds[i] in {'numeric', 'nominal'}."""
    w = len(y)
    n = len(kinds)
    ranges = []
    for a in range(n):
        col = [X[r][a] for r in range(w)]
        ranges.append(max(col) - min(col))

    def diff(a, r1, r2):
        if kinds[a] == "nominal":
            return 0.0 if X[r1][a] == X[r2][a] else 1.0
        return 0.0 if ranges[a] == 0 else abs(X[r1][a] - X[r2][a]) / ranges[a]

    def dist(r1, r2):
        return sum(diff(a, r1, r2) for a in range(n))

    prior = Counter(y)
    weights = [0.0] * n
    for r in range(w):
        cands = sorted((dist(r, o), o) for o in range(w) if o != r)
        hits = [o for _, o in cands if y[o] == y[r]][:k]
        for a in range(n):
            if hits:
                weights[a] -= sum(diff(a, r, o) for o in hits) / len(hits) / w
        for c in prior:
            if c == y[r]:
                continue
            misses = [o for _, o in cands if y[o] == c][:k]
            pc = prior[c] / w / (1 - prior[y[r]] / w)
            for a in range(n):
                weights[a] += pc * sum(diff(a, r, o) for o in misses) / len(misses) / w
    return weights
