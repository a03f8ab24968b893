"""Compiled per-pair statistics over integer code matrices.

Each block kernel fills ``out[a, b]`` for attribute pairs ``(i0 + a, j0 + b)``
with ``i < j``.  Kernels release the GIL so blocks can run on a thread pool.
Joint counting uses a dense array of ``card_i * card_j`` cells; tables larger
than ``dense_limit`` cells are counted by sorting joint keys instead.
"""
import math

import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def _sort_small(buf, m):
    for a in range(1, m):
        v = buf[a]
        b = a - 1
        while b >= 0 and buf[b] > v:
            buf[b + 1] = buf[b]
            b -= 1
        buf[b + 1] = v


@njit(nogil=True, cache=True)
def _entropy_of_positive(buf, m, w):
    # same expression and (ascending) order as metrics.entropy
    if m <= 32:
        _sort_small(buf, m)
    else:
        buf[:m] = np.sort(buf[:m])
    h = 0.0
    for a in range(m):
        p = buf[a] / w
        h -= p * math.log2(p)
    return h


@njit(nogil=True, cache=True)
def _su(hx, hy, hxy):
    denom = hx + hy
    if denom == 0.0:
        return 0.0
    return 2.0 * (hx + hy - hxy) / denom


@njit(nogil=True, cache=True)
def _count4(ri, rj, cj, ncell, w, cells):
    """Joint histogram into cells[:ncell].

    Four interleaved sub-histograms avoid the store/load stall when most rows
    land in the same cell; ``cells`` must hold 4 * ncell entries.
    """
    for c in range(4 * ncell):
        cells[c] = 0
    r = 0
    while r + 4 <= w:
        cells[ri[r] * cj + rj[r]] += 1
        cells[ncell + ri[r + 1] * cj + rj[r + 1]] += 1
        cells[2 * ncell + ri[r + 2] * cj + rj[r + 2]] += 1
        cells[3 * ncell + ri[r + 3] * cj + rj[r + 3]] += 1
        r += 4
    while r < w:
        cells[ri[r] * cj + rj[r]] += 1
        r += 1
    for c in range(ncell):
        cells[c] += cells[ncell + c] + cells[2 * ncell + c] + cells[3 * ncell + c]


@njit(nogil=True, cache=True)
def _joint_entropy(ri, rj, cj, ncell, w, cells, pos, keys, dense_limit):
    m = 0
    if ncell <= dense_limit:
        _count4(ri, rj, cj, ncell, w, cells)
        for c in range(ncell):
            if cells[c] > 0:
                pos[m] = cells[c]
                m += 1
    else:
        for r in range(w):
            keys[r] = ri[r] * cj + rj[r]
        keys.sort()
        run = 1
        for r in range(1, w + 1):
            if r < w and keys[r] == keys[r - 1]:
                run += 1
            else:
                pos[m] = run
                m += 1
                run = 1
    return _entropy_of_positive(pos, m, w)


@njit(nogil=True, cache=True)
def merit_block(codes, cards, h_attr, su_class, i0, i1, j0, j1, dense_limit, out):
    """Pair merit (su_i_c + su_j_c) / sqrt(2 + 2 * SU(i, j)) for a block."""
    w = codes.shape[1]
    maxcard = 1
    for a in range(cards.shape[0]):
        if cards[a] > maxcard:
            maxcard = cards[a]
    cells = np.zeros(4 * min(maxcard * maxcard, dense_limit), dtype=np.int64)
    pos = np.zeros(max(w, 1), dtype=np.int64)
    keys = np.zeros(max(w, 1), dtype=np.int64)
    for i in range(i0, i1):
        ri = codes[i]
        for j in range(max(j0, i + 1), j1):
            cj = cards[j]
            hxy = _joint_entropy(ri, codes[j], cj, cards[i] * cj, w, cells, pos, keys,
                                 dense_limit)
            su = _su(h_attr[i], h_attr[j], hxy)
            out[i - i0, j - j0] = (su_class[i] + su_class[j]) / math.sqrt(2.0 + 2.0 * su)


@njit(nogil=True, cache=True)
def consistency_block(codes, codes_y, cards, s, i0, i1, j0, j1, dense_limit, out):
    """Consistency rate 1 - I({i, j}) for a block of attribute pairs.

    ``codes_y[j] = codes[j] * s + class`` folds the class into the partner
    column, so one joint histogram holds per-pattern class counts.
    """
    w = codes.shape[1]
    maxcard = 1
    for a in range(cards.shape[0]):
        if cards[a] > maxcard:
            maxcard = cards[a]
    cells = np.zeros(4 * min(maxcard * maxcard, dense_limit) * s, dtype=np.int64)
    keys = np.zeros(max(w, 1), dtype=np.int64)
    for i in range(i0, i1):
        ri = codes[i]
        for j in range(max(j0, i + 1), j1):
            rjy = codes_y[j]
            cjy = cards[j] * s
            ncell = cards[i] * cards[j]
            kept = 0
            if ncell <= dense_limit:
                _count4(ri, rjy, cjy, ncell * s, w, cells)
                for c in range(ncell):
                    best = 0
                    base = c * s
                    for k in range(s):
                        if cells[base + k] > best:
                            best = cells[base + k]
                    kept += best
            else:
                for r in range(w):
                    keys[r] = ri[r] * cjy + rjy[r]
                keys.sort()
                # runs of equal key are (pattern, class) counts; patterns are key // s
                run = 1
                best = 0
                for r in range(1, w + 1):
                    if r < w and keys[r] == keys[r - 1]:
                        run += 1
                        continue
                    if run > best:
                        best = run
                    if r == w or keys[r] // s != keys[r - 1] // s:
                        kept += best
                        best = 0
                    run = 1
            out[i - i0, j - j0] = 1.0 - (w - kept) / w


@njit(nogil=True, cache=True)
def accumulate_block(acc, block, i0, i1, j0, j1):
    """Add a finished block into per-attribute sums, ascending partner order.

    Blocks must arrive in lexicographic (I, J) order with I <= J; then every
    attribute receives its pair terms in ascending partner index.
    """
    if i0 == j0:
        for i in range(i0, i1):
            for j in range(i0, i1):
                if j < i:
                    acc[i] += block[j - i0, i - i0]
                elif j > i:
                    acc[i] += block[i - i0, j - i0]
        return
    for i in range(i0, i1):
        for j in range(j0, j1):
            acc[i] += block[i - i0, j - j0]
    for j in range(j0, j1):
        for i in range(i0, i1):
            acc[j] += block[i - i0, j - j0]
