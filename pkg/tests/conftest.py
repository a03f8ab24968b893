import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pairrank.dataset import from_arrays  # noqa: E402


def random_discrete_dataset(rng, n, w, max_card=4, n_classes=None):
    s = n_classes or int(rng.integers(2, 4))
    y = np.arange(w) % s  # every class present
    rng.shuffle(y)
    cards = rng.integers(1, max_card + 1, size=n)
    X = np.column_stack([rng.integers(0, c, size=w) for c in cards])
    return from_arrays(X, y, nominal=range(n), class_labels=list(range(s)))


def random_mixed_dataset(rng, n, w):
    """Nominal and numeric columns; numeric ones carry some class signal."""
    s = int(rng.integers(2, 4))
    y = np.arange(w) % s
    rng.shuffle(y)
    cols, nominal = [], []
    for i in range(n):
        if rng.random() < 0.5:
            cols.append(rng.integers(0, int(rng.integers(1, 5)), size=w))
            nominal.append(i)
        else:
            cols.append(np.round(y * rng.random() * 2 + rng.normal(size=w), 1))
    return from_arrays(np.column_stack(cols), y, nominal=nominal, class_labels=list(range(s)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def toy_csv(tmp_path):
    p = tmp_path / "toy.csv"
    p.write_text("g1,g2,color,class\n"
                 "1.0,5,red,a\n"
                 "2.0,?,blue,b\n"
                 "3.0,7,?,a\n"
                 "4.0,8,red,b\n")
    return p
