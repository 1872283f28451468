"""
oracles.py
Classical partition counts computed independently of the coloured machinery,
used as reference values by the verifier.
"""

from functools import lru_cache
from typing import List, Tuple


def pentagonal(order: int) -> List[int]:
    """Coefficients of (q;q)_inf through q^order from the pentagonal number theorem."""
    coeffs = [0] * (order + 1)
    k = 0
    while True:
        sign = -1 if k % 2 else 1
        hit = False
        for j in {k, -k}:
            e = j * (3 * j - 1) // 2
            if e <= order:
                coeffs[e] += sign
                hit = True
        if not hit:
            break
        k += 1
    return coeffs


@lru_cache(maxsize=None)
def _partition_numbers(order: int) -> Tuple[int, ...]:
    p = [0] * (order + 1)
    p[0] = 1
    for m in range(1, order + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return tuple(p)


def partition_numbers(order: int) -> List[int]:
    """p(0), ..., p(order) by Euler's recurrence."""
    return list(_partition_numbers(order))


def regular_partition_counts(n: int, order: int) -> List[int]:
    """
    Number of partitions of m with no part divisible by n, m = 0..order.

    Args:
        n: Modulus (n=1 gives only the empty partition)
        order: Largest m

    Returns:
        List[int]: counts indexed by m
    """
    counts = [0] * (order + 1)
    counts[0] = 1
    for part in range(1, order + 1):
        if part % n == 0:
            continue
        for m in range(part, order + 1):
            counts[m] += counts[m - part]
    return counts


def capparelli_c_counts(order: int) -> List[int]:
    """
    Partitions into parts > 1 differing by at least 2, and by at least 4 unless
    the two consecutive parts add up to a multiple of 3.
    """
    counts = [0] * (order + 1)

    def walk(last: int, remaining: int):
        counts[order - remaining] += 1
        for part in range(2, min(remaining, last - 2) + 1):
            gap = last - part
            if gap < 4 and (last + part) % 3 != 0:
                continue
            walk(part, remaining - part)

    walk(order + 4, order)
    return counts


def capparelli_d_counts(order: int) -> List[int]:
    """Partitions into distinct parts not congruent to 1 or 5 modulo 6."""
    counts = [0] * (order + 1)
    counts[0] = 1
    for part in range(1, order + 1):
        if part % 6 in (1, 5):
            continue
        for m in range(order, part - 1, -1):
            counts[m] += counts[m - part]
    return counts


def coloured_partition_counts(colours: int, order: int) -> List[int]:
    """Coefficients of 1/(q;q)_inf^colours."""
    counts = [0] * (order + 1)
    counts[0] = 1
    for _ in range(colours):
        for part in range(1, order + 1):
            for m in range(part, order + 1):
                counts[m] += counts[m - part]
    return counts
