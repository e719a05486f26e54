"""Partitions, Young and skew diagrams, and domino tilings.

Cells are ``(row, col)`` pairs, 0-based, rows counted downward and columns
rightward (English convention).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

Cell = tuple[int, int]


class PartitionError(ValueError):
    """Malformed or inconsistent partition input."""


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Doubles as a cycle type. Being a tuple, it hashes and compares like one,
    which makes it a cheap memoization key.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        if isinstance(parts, Partition):
            return parts
        parts = tuple(int(p) for p in parts)
        for p in parts:
            if p < 1:
                raise PartitionError(f"parts must be positive, got {p}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise PartitionError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_unsorted(cls, parts: Iterable[int]) -> "Partition":
        return cls(sorted(parts, reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def height(self) -> int:
        return len(self)

    @property
    def b(self) -> int:
        """Number of cells outside the first column."""
        return self.size - self.height

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def compact(self) -> str:
        """Exponent notation, e.g. ``(2^2,1^3)``."""
        chunks = []
        i = 0
        while i < len(self):
            j = i
            while j < len(self) and self[j] == self[i]:
                j += 1
            run = j - i
            chunks.append(f"{self[i]}^{run}" if run > 1 else str(self[i]))
            i = j
        return "(" + ",".join(chunks) + ")"

    def cells(self) -> list[Cell]:
        return [(r, c) for r, row in enumerate(self) for c in range(row)]

    def __repr__(self) -> str:
        return f"Partition{tuple(self)!r}"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*)?$")


def parse_partition(text: str) -> Partition:
    """Parse ``"(p1, p2, ...)"`` where each entry is ``c`` or ``c^k``.

    >>> parse_partition("(2^2,1^3)")
    Partition(2, 2, 1, 1, 1)
    """
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise PartitionError(f"expected parenthesised list, got {text!r}")
    body = s[1:-1].strip()
    if not body:
        return Partition()
    parts: list[int] = []
    for tok in body.split(","):
        m = _TOKEN.match(tok)
        if not m:
            if re.match(r"^\s*-\s*\d+", tok):
                raise PartitionError(f"negative part in {text!r}")
            raise PartitionError(f"syntax error at {tok.strip()!r} in {text!r}")
        c = int(m.group(1))
        k = int(m.group(2)) if m.group(2) is not None else 1
        if c < 1:
            raise PartitionError(f"zero part in {text!r}")
        if k < 1:
            raise PartitionError(f"zero run length in {text!r}")
        parts.extend([c] * k)
    return Partition(parts)


def as_partition(value) -> Partition:
    if isinstance(value, Partition):
        return value
    if isinstance(value, str):
        return parse_partition(value)
    return Partition(value)


def conjugate(lam: Sequence[int]) -> Partition:
    lam = as_partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def order_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff ``lam`` precedes ``mu``: every prefix sum of ``lam`` is >= that of ``mu``.

    ``(n)`` is the least element and ``(1^n)`` the greatest.
    """
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.size != mu.size:
        raise PartitionError(f"size mismatch: {lam.size} vs {mu.size}")
    length = max(len(lam), len(mu))
    a = list(accumulate(tuple(lam) + (0,) * (length - len(lam))))
    b = list(accumulate(tuple(mu) + (0,) * (length - len(mu))))
    return all(x >= y for x, y in zip(a, b))


def compose_hook_shape(w: int, lam_d: Sequence[int], n: int) -> Partition:
    """The partition ``(w, 1+lam_d, 1, ..., 1)`` of total size ``n``."""
    lam_d = as_partition(lam_d)
    if w < 1:
        raise PartitionError(f"w must be positive, got {w}")
    if lam_d and w < 1 + lam_d[0]:
        raise PartitionError(f"w={w} is smaller than 1+{lam_d[0]}; parts would not decrease")
    ones = n - w - lam_d.size - lam_d.height
    if ones < 0:
        raise PartitionError(f"n={n} is too small for w={w}, lambda_d={lam_d}")
    return Partition((w,) + tuple(1 + p for p in lam_d) + (1,) * ones)


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for p in rec(n, n):
        yield Partition(p)


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = Partition()

    def __post_init__(self):
        object.__setattr__(self, "outer", as_partition(self.outer))
        object.__setattr__(self, "inner", as_partition(self.inner))
        if len(self.inner) > len(self.outer):
            raise PartitionError(f"inner {self.inner} is taller than outer {self.outer}")
        for i, p in enumerate(self.inner):
            if p > self.outer[i]:
                raise PartitionError(f"inner {self.inner} does not fit in outer {self.outer}")

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def row_range(self, r: int) -> range:
        if r < 0 or r >= len(self.outer):
            return range(0)
        start = self.inner[r] if r < len(self.inner) else 0
        return range(start, self.outer[r])

    def __contains__(self, cell: Cell) -> bool:
        r, c = cell
        return c in self.row_range(r)

    def cells(self) -> list[Cell]:
        return [(r, c) for r in range(len(self.outer)) for c in self.row_range(r)]

    def __str__(self) -> str:
        if not self.inner:
            return str(self.outer)
        return f"{self.outer}/{self.inner}"


def as_skew(shape) -> SkewShape:
    if isinstance(shape, SkewShape):
        return shape
    return SkewShape(as_partition(shape))


@dataclass(frozen=True)
class Domino:
    cells: tuple[Cell, Cell]
    orient: str  # "H" or "V"

    def to_json(self) -> dict:
        return {"cells": [list(c) for c in self.cells], "orient": self.orient}


@dataclass(frozen=True)
class DominoTiling:
    dominoes: tuple[Domino, ...]

    @property
    def horizontal_count(self) -> int:
        return sum(1 for d in self.dominoes if d.orient == "H")

    def to_json(self) -> list:
        return [d.to_json() for d in self.dominoes]

    @classmethod
    def from_json(cls, data: list) -> "DominoTiling":
        return cls(tuple(
            Domino((tuple(d["cells"][0]), tuple(d["cells"][1])), d["orient"]) for d in data
        ))


def domino_tilings(shape) -> list[DominoTiling]:
    """Every 1x2 domino tiling of a (skew) shape.

    DFS on the first uncovered cell in row-major order, placing a horizontal
    domino before a vertical one.
    """
    shape = as_skew(shape)
    cells = shape.cells()
    if len(cells) % 2:
        return []
    free = set(cells)
    out: list[DominoTiling] = []
    placed: list[Domino] = []

    def rec(idx: int) -> None:
        while idx < len(cells) and cells[idx] not in free:
            idx += 1
        if idx == len(cells):
            out.append(DominoTiling(tuple(placed)))
            return
        r, c = cells[idx]
        for other, orient in (((r, c + 1), "H"), ((r + 1, c), "V")):
            if other in free:
                free.discard((r, c))
                free.discard(other)
                placed.append(Domino(((r, c), other), orient))
                rec(idx + 1)
                placed.pop()
                free.add((r, c))
                free.add(other)

    rec(0)
    return out


def is_domino_tilable(shape) -> bool:
    return bool(domino_tilings(shape))


def horizontal_parity(tiling: DominoTiling) -> int:
    return tiling.horizontal_count % 2
