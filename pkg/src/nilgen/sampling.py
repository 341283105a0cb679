"""Seeded random matrices for property checks and benchmarks."""

from __future__ import annotations

import random
from typing import List

from .field import Q, FieldSpec
from .matrix import Matrix, SimilarityWitness, invert


def random_matrix(n: int, rng: random.Random, field: FieldSpec = Q, bound: int = 9) -> Matrix:
    return Matrix([[field.random_element(rng, -bound, bound) for _ in range(n)] for _ in range(n)], field)


def random_traceless(n: int, rng: random.Random, field: FieldSpec = Q, bound: int = 9) -> Matrix:
    m = random_matrix(n, rng, field, bound)
    return m - Matrix.unit(n, n, n, field).scale(m.trace())


def random_witness(n: int, rng: random.Random, field: FieldSpec = Q, bound: int = 3) -> SimilarityWitness:
    """Product of random unit lower and unit upper triangular matrices."""
    def tri(lower):
        return Matrix([[1 if i == j else
                        (field.random_element(rng, -bound, bound) if (i > j) == lower else 0)
                        for j in range(n)] for i in range(n)], field)
    c = tri(True) @ tri(False)
    return SimilarityWitness(c, invert(c))


def random_partition(n: int, rng: random.Random) -> List[int]:
    """Random Jordan type of a nonzero nilpotent: parts sorted descending, first >= 2."""
    first = rng.randint(2, n)
    parts, left = [first], n - first
    while left:
        k = rng.randint(1, min(left, first))
        parts.append(k)
        left -= k
    return sorted(parts, reverse=True)


def jordan_nilpotent(parts: List[int], field: FieldSpec = Q) -> Matrix:
    n = sum(parts)
    rows = [[0] * n for _ in range(n)]
    start = 0
    for k in parts:
        for i in range(start, start + k - 1):
            rows[i][i + 1] = 1
        start += k
    return Matrix(rows, field)


def random_nilpotent(n: int, rng: random.Random, field: FieldSpec = Q, bound: int = 3) -> Matrix:
    """A nonzero nilpotent with random Jordan type in a random basis."""
    j = jordan_nilpotent(random_partition(n, rng), field)
    w = random_witness(n, rng, field, bound)
    return w.c @ j @ w.c_inv


def random_split_diagonal(n: int, rng: random.Random, field: FieldSpec = Q, bound: int = 50) -> Matrix:
    """Traceless diagonal with distinct nonzero entries (a valid split input)."""
    while True:
        d = [field.random_element(rng, -bound, bound) for _ in range(n - 1)]
        if field.is_infinite:
            d = [x / rng.randint(1, 5) for x in d]
        d.append(-sum(d, field.zero()))
        if all(d) and len(set(d)) == n:
            return Matrix.diagonal(d, field)
