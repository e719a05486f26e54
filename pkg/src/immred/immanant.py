"""Immanants: naive permutation sum, cycle-cover census, and symbolic in x."""

from __future__ import annotations

from itertools import permutations
from typing import Optional, Sequence

from .characters import chi
from .graphs import WeightedDigraph, cover_census
from .poly import UniPoly, Weight, as_poly
from .shapes import Partition, PartitionError, as_partition

NAIVE_MAX_N = 9


def _cycle_type_of(perm: Sequence[int]) -> tuple[int, ...]:
    n = len(perm)
    seen = [False] * n
    lengths = []
    for s in range(n):
        if not seen[s]:
            length = 0
            x = s
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def imm_naive(lam, matrix: Sequence[Sequence[Weight]]) -> Weight:
    """Sum over all n! permutations; capped at n = 9."""
    lam = as_partition(lam)
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if lam.size != n:
        raise PartitionError(f"size mismatch: |shape|={lam.size}, matrix is {n}x{n}")
    if n > NAIVE_MAX_N:
        raise ValueError(f"naive immanant is capped at n={NAIVE_MAX_N}, got {n}")
    chars: dict[tuple[int, ...], int] = {}
    total: Weight = 0
    for perm in permutations(range(n)):
        term: Weight = 1
        for i in range(n):
            term = term * matrix[i][perm[i]]
            if term == 0:
                break
        if term == 0:
            continue
        key = _cycle_type_of(perm)
        if key not in chars:
            chars[key] = chi(lam, Partition(key))
        if chars[key]:
            total = total + chars[key] * term
    return total


def imm_from_census(lam, census: dict[Partition, Weight], modulus: Optional[int] = None) -> Weight:
    lam = as_partition(lam)
    total: Weight = 0
    for rho, w in census.items():
        c = chi(lam, rho)
        if c:
            total = total + c * w
            if modulus is not None:
                total %= modulus
    return total


def imm_via_covers(lam, g: WeightedDigraph, modulus: Optional[int] = None) -> Weight:
    """Immanant of the adjacency matrix of ``g``, summed over its cycle covers."""
    lam = as_partition(lam)
    if lam.size != g.n:
        raise PartitionError(f"size mismatch: |shape|={lam.size}, graph has {g.n} vertices")
    return imm_from_census(lam, cover_census(g, modulus=modulus), modulus)


def imm_poly_in_x(lam, g: WeightedDigraph) -> UniPoly:
    for w in g.arcs.values():
        if isinstance(w, UniPoly) and w.degree > 1:
            raise ValueError(f"arc weight {w} is not linear in x")
    return as_poly(imm_via_covers(lam, g))


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination over the integers."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sgn = -sgn
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sgn * a[n - 1][n - 1]


def ryser_permanent(matrix: Sequence[Sequence[int]]) -> int:
    """Inclusion-exclusion over column subsets."""
    n = len(matrix)
    if n == 0:
        return 1
    total = 0
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = 1
        for row in matrix:
            s = sum(row[j] for j in cols)
            prod *= s
            if not prod:
                break
        total += -prod if (n - len(cols)) % 2 else prod
    return total
