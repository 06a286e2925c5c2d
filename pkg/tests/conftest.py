from fractions import Fraction

import pytest

from qmodular.qcore import QSeries


def partition_counts(allowed, order):
    """Partitions of n into parts from ``allowed`` (coin-change DP), n = 0..order."""
    counts = [1] + [0] * order
    for part in sorted(set(allowed)):
        if part < 1 or part > order:
            continue
        for n in range(part, order + 1):
            counts[n] += counts[n - part]
    return counts


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def poly(*coeffs, order=None):
    return QSeries([Fraction(c) for c in coeffs], order=order)


@pytest.fixture
def G8():
    return [1, 1, 1, 1, 2, 2, 3, 3, 4]
