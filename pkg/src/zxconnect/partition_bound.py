"""Counting argument for the analytical upper bound on average circuit depth.

Rows of length ``n' = n - 1`` holding ``lam`` runs of ones are counted by
``N(n', lam) = C(n' + 1, 2 lam)``. A depth-``d`` stack is an ordered tuple of
per-row run counts ``(lam_1, ..., lam_d)`` with ``1 <= lam_i <= n // 2`` summing
to ``m``; it carries weight ``sum_i C(n, 2 lam_i)``. ``N_d`` sums those weights
over all such tuples and the bound is the ``N_d``-weighted mean depth.
"""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, TextIO

from .errors import InfeasibleError


@dataclass(frozen=True)
class PartitionBoundReport:
    n: int
    m: int
    per_depth: dict[int, int]
    mean_exact: Fraction

    @property
    def mean_depth_bound(self) -> float:
        return float(self.mean_exact)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "per_depth": {str(d): str(v) for d, v in sorted(self.per_depth.items())},
            "mean_exact": f"{self.mean_exact.numerator}/{self.mean_exact.denominator}",
            "mean": float(self.mean_exact),
        }

    def write_csv(self, fh: TextIO) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["d", "N_d"])
        for d, count in sorted(self.per_depth.items()):
            writer.writerow([d, count])


def row_count(n_prime: int, lam: int) -> int:
    """Number of 0/1 rows of length ``n_prime`` with exactly ``lam`` runs of ones."""
    if n_prime < 0 or lam < 0:
        return 0
    return comb(n_prime + 1, 2 * lam)


@lru_cache(maxsize=None)
def row_count_recurrence(n_prime: int, lam: int) -> int:
    """Same count from N(n',l) = 2 N(n'-1,l) - N(n'-2,l) + N(n'-2,l-1)."""
    if lam < 0:
        return 0
    if n_prime == 0:
        return 1 if lam == 0 else 0
    if n_prime == 1:
        return 1 if lam in (0, 1) else 0
    return (
        2 * row_count_recurrence(n_prime - 1, lam)
        - row_count_recurrence(n_prime - 2, lam)
        + row_count_recurrence(n_prime - 2, lam - 1)
    )


def row_count_table(max_n_prime: int) -> dict[int, list[int]]:
    """``{lam: [N(1, lam), ..., N(max_n_prime, lam)]}`` for every nonzero row."""
    if max_n_prime < 1:
        raise ValueError("max_n_prime must be at least 1")
    lam_max = (max_n_prime + 1) // 2
    return {lam: [row_count(n, lam) for n in range(1, max_n_prime + 1)] for lam in range(lam_max + 1)}


def restricted_compositions(m: int, d: int, lambda_max: int | None = None) -> Iterator[tuple[int, ...]]:
    """All ordered ``d``-tuples of integers in ``[1, lambda_max]`` summing to ``m``."""
    if m < 1 or d < 1:
        raise ValueError("m and d must be at least 1")
    cap = m if lambda_max is None else min(lambda_max, m)

    def rec(remaining: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            if 1 <= remaining <= cap:
                yield (remaining,)
            return
        lo = max(1, remaining - cap * (slots - 1))
        hi = min(cap, remaining - (slots - 1))
        for first in range(lo, hi + 1):
            for rest in rec(remaining - first, slots - 1):
                yield (first,) + rest

    if d * 1 <= m <= d * cap:
        yield from rec(m, d)


@lru_cache(maxsize=8)
def _composition_table(m: int, cap: int) -> tuple[tuple[int, ...], ...]:
    """``table[p][t]`` = compositions of ``t`` into ``p`` parts in ``[1, cap]``, for p, t <= m."""
    rows = [tuple([1] + [0] * m)]
    for _ in range(m):
        prev = rows[-1]
        prefix = [0] * (m + 2)
        for t in range(m + 1):
            prefix[t + 1] = prefix[t] + prev[t]
        # sum of prev[t - cap .. t - 1]
        rows.append(tuple(prefix[t] - prefix[max(0, t - cap)] for t in range(m + 1)))
    return tuple(rows)


def _lambda_max(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    return n // 2


def n_d(n: int, m: int, d: int) -> int:
    """Total weight of depth-``d`` stacks for ``m`` edges on ``n`` nodes.

    By symmetry over positions, each part value ``v`` contributes
    ``d * C(n, 2v) * #compositions(m - v into d - 1 parts)``.
    """
    cap = _lambda_max(n)
    if m < 1 or d < 1:
        return 0
    if d > m:
        return 0
    table = _composition_table(m, cap)
    return d * sum(comb(n, 2 * v) * table[d - 1][m - v] for v in range(1, min(cap, m) + 1))


def n_d_enumerated(n: int, m: int, d: int) -> int:
    """``n_d`` by streaming every restricted composition."""
    cap = _lambda_max(n)
    return sum(sum(comb(n, 2 * lam) for lam in c) for c in restricted_compositions(m, d, cap))


def partitions_with_parts(m: int, d: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``m`` into exactly ``d`` parts, each in ``[1, cap]``, non-increasing."""

    def rec(remaining: int, slots: int, largest: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(largest, remaining - (slots - 1)), 0, -1):
            if first * slots < remaining:
                break
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest

    yield from rec(m, d, cap)


def n_d_by_shapes(n: int, m: int, d: int) -> int:
    """``n_d`` from partition shapes times their number of distinct orderings."""
    cap = _lambda_max(n)
    total = 0
    for shape in partitions_with_parts(m, d, cap):
        orderings = factorial(d) // prod(factorial(c) for c in Counter(shape).values())
        total += orderings * sum(comb(n, 2 * lam) for lam in shape)
    return total


def feasible_depths(n: int, m: int) -> range:
    cap = _lambda_max(n)
    if m < 1:
        raise InfeasibleError("need at least one edge")
    return range(-(-m // cap), m + 1)


def partition_bound_report(n: int, m: int) -> PartitionBoundReport:
    try:
        depths = feasible_depths(n, m)
    except ValueError as exc:
        raise InfeasibleError(f"no feasible depth for n={n}, m={m}: {exc}") from None
    per_depth = {d: n_d(n, m, d) for d in depths}
    total = sum(per_depth.values())
    if total == 0:
        raise InfeasibleError(f"no feasible depth for n={n}, m={m}")
    mean = Fraction(sum(d * c for d, c in per_depth.items()), total)
    return PartitionBoundReport(n, m, per_depth, mean)


def mean_depth_upper_bound(n: int, m: int) -> Fraction:
    """Exact weighted mean depth; ``float()`` it for presentation."""
    return partition_bound_report(n, m).mean_exact


@lru_cache(maxsize=None)
def partitions_into_k(n: int, k: int) -> int:
    """Partitions of ``n`` into exactly ``k`` positive parts."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return partitions_into_k(n - 1, k - 1) + partitions_into_k(n - k, k)


def partition_table(max_n: int) -> dict[int, list[int]]:
    """``{n: [p_1(n), ..., p_max_n(n)]}``."""
    return {n: [partitions_into_k(n, k) for k in range(1, max_n + 1)] for n in range(1, max_n + 1)}


def write_row_count_csv(fh: TextIO, max_n_prime: int) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["lambda"] + [str(n) for n in range(1, max_n_prime + 1)])
    for lam, row in row_count_table(max_n_prime).items():
        writer.writerow([lam] + row)
    writer.writerow(["sum"] + [sum(col) for col in zip(*row_count_table(max_n_prime).values())])


def write_partition_csv(fh: TextIO, max_n: int) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["n"] + [str(k) for k in range(1, max_n + 1)])
    for n, row in partition_table(max_n).items():
        writer.writerow([n] + row)
