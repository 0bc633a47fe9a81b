"""Multiplicity vectors (n_1, ..., n_k) with n_1 + 2 n_2 + ... + k n_k = n.

Each vector records a partition of ``n`` into parts no larger than ``k``:
``mults[j-1]`` is how many parts equal ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class PartsVector:
    mults: tuple[int, ...]
    weight: int

    @property
    def k(self) -> int:
        return len(self.mults)

    def total_parts(self) -> int:
        return sum(self.mults)

    def is_consistent(self) -> bool:
        return all(m >= 0 for m in self.mults) and (
            sum(j * m for j, m in enumerate(self.mults, start=1)) == self.weight
        )


def _check(n: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")


class WeightedCompositions:
    """Restartable stream of all :class:`PartsVector` of weight ``n`` and length ``k``.

    Order is descending lexicographic on ``(n_k, ..., n_1)``: the vector with
    the most large parts comes first and ``(n, 0, ..., 0)`` comes last. Each
    iteration holds only the current vector, so memory is O(k).
    """

    def __init__(self, n: int, k: int):
        _check(n, k)
        self.n = n
        self.k = k

    def __iter__(self) -> Iterator[PartsVector]:
        n, k = self.n, self.k
        # m[j] is the multiplicity of part j; m[0] unused
        m = [0] * (k + 1)
        rest = n
        for j in range(k, 0, -1):
            m[j], rest = divmod(rest, j)
        while True:
            yield PartsVector(tuple(m[1:]), n)
            # smallest part size >= 2 that is present
            j = 2
            while j <= k and m[j] == 0:
                j += 1
            if j > k:
                return
            m[j] -= 1
            rest = j + m[1]
            for i in range(j - 1, 0, -1):
                m[i], rest = divmod(rest, i)

    def __repr__(self):
        return f"WeightedCompositions(n={self.n}, k={self.k})"


def enumerate_weighted(n: int, k: int) -> WeightedCompositions:
    return WeightedCompositions(n, k)


def count_weighted(n: int, k: int) -> int:
    """Number of partitions of ``n`` into parts of size at most ``k``.

    Table fill of p(n, k) = p(n - k, k) + p(n, k - 1); independent of the
    enumerator.
    """
    _check(n, k)
    # row[m] holds p(m, j) for the current j
    row = [1] + [0] * n
    for j in range(1, k + 1):
        for m in range(j, n + 1):
            row[m] += row[m - j]
    return row[n]
