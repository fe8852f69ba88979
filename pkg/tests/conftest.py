import itertools

import numpy as np
import pytest

from osp12.grassmann import GrassmannNumber


def bubble_sign(indices):
    """Sign of the permutation sorting ``indices`` by adjacent swaps; 0 on a repeat."""
    seq = list(indices)
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


def all_subsets(L):
    return [s for r in range(L + 1) for s in itertools.combinations(range(1, L + 1), r)]


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20261014))


def b(*idx, L=2, c=1, backend="exact"):
    return GrassmannNumber.monomial(idx, L, c, backend)
