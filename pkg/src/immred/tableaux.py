"""Border-strip tableaux and rim-hook removal."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .shapes import Cell, Partition, PartitionError, as_partition


def remove_rim_hooks(shape: tuple[int, ...], r: int) -> Iterator[tuple[tuple[int, ...], int, int]]:
    """Yield ``(smaller_shape, leg_length, row_of_top)`` for each removable rim hook of size ``r``.

    Works on beta-sets: with ``L`` rows, ``beta_i = shape_i + L - 1 - i``.
    Removing an r-rim hook slides one bead down by ``r`` onto a free
    position; the beads jumped over count the hook's leg length.
    """
    length = len(shape)
    beta = [shape[i] + length - 1 - i for i in range(length)]
    occupied = set(beta)
    for i, b in enumerate(beta):
        target = b - r
        if target < 0 or target in occupied:
            continue
        leg = sum(1 for x in beta if target < x < b)
        new_beta = sorted((target if j == i else x for j, x in enumerate(beta)), reverse=True)
        parts = [x - (length - 1 - j) for j, x in enumerate(new_beta)]
        while parts and parts[-1] == 0:
            parts.pop()
        yield tuple(parts), leg, i


def _strip_cells(big: Sequence[int], small: Sequence[int]) -> list[Cell]:
    cells = []
    for r, row in enumerate(big):
        start = small[r] if r < len(small) else 0
        cells.extend((r, c) for c in range(start, row))
    return cells


@dataclass(frozen=True)
class BorderStripTableau:
    shape: Partition
    labels: tuple[tuple[int, ...], ...]  # row-major, labels start at 1

    @cached_property
    def strips(self) -> dict[int, list[Cell]]:
        out: dict[int, list[Cell]] = {}
        for r, row in enumerate(self.labels):
            for c, lab in enumerate(row):
                out.setdefault(lab, []).append((r, c))
        return dict(sorted(out.items()))

    @property
    def height(self) -> int:
        return bst_height(self)

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "labels": [list(row) for row in self.labels]}

    @classmethod
    def from_json(cls, data: dict) -> "BorderStripTableau":
        return cls(Partition(data["shape"]), tuple(tuple(row) for row in data["labels"]))

    def pretty(self) -> str:
        width = max((len(str(x)) for row in self.labels for x in row), default=1)
        lines = []
        for row in self.labels:
            lines.append("|" + "|".join(str(x).rjust(width) for x in row) + "|")
        return "\n".join(lines)


def bst_height(t: BorderStripTableau) -> int:
    """Sum over strips of (rows spanned - 1)."""
    total = 0
    for cells in t.strips.values():
        total += len({r for r, _ in cells}) - 1
    return total


def enumerate_bst(lam, rho) -> list[BorderStripTableau]:
    """All border-strip tableaux of shape ``lam`` and type ``rho``.

    Label ``i`` fills ``rho_i`` cells with ``rho`` sorted decreasingly, so
    labels are peeled off the rim from the largest label downwards.
    """
    lam = as_partition(lam)
    rho = Partition.from_unsorted(rho)
    if lam.size != rho.size:
        raise PartitionError(f"size mismatch: |shape|={lam.size}, |type|={rho.size}")
    out: list[BorderStripTableau] = []
    grid = [[0] * row for row in lam]

    def rec(shape: tuple[int, ...], label: int) -> None:
        if label == 0:
            out.append(BorderStripTableau(lam, tuple(tuple(row) for row in grid)))
            return
        options = []
        for smaller, _leg, _row in remove_rim_hooks(shape, rho[label - 1]):
            cells = _strip_cells(shape, smaller)
            top = min(r for r, _ in cells)
            right = max(c for r, c in cells if r == top)
            options.append(((top, right), smaller, cells))
        options.sort(key=lambda o: o[0])
        for _, smaller, cells in options:
            for r, c in cells:
                grid[r][c] = label
            rec(smaller, label - 1)
        for _, _, cells in options:
            for r, c in cells:
                grid[r][c] = 0

    rec(tuple(lam), len(rho))
    return out


def validate_bst(t: BorderStripTableau, rho) -> list[str]:
    """Check the three tableau rules from scratch; return a list of violations."""
    rho = Partition.from_unsorted(rho)
    problems = []
    shape = as_partition(t.shape)
    if tuple(len(row) for row in t.labels) != tuple(shape):
        problems.append("label grid does not match shape")
        return problems
    for r, row in enumerate(t.labels):
        for c, x in enumerate(row):
            if c + 1 < len(row) and row[c + 1] < x:
                problems.append(f"row {r} decreases at column {c}")
            if r + 1 < len(t.labels) and c < len(t.labels[r + 1]) and t.labels[r + 1][c] < x:
                problems.append(f"column {c} decreases at row {r}")
    strips = t.strips
    if sorted(strips) != list(range(1, len(rho) + 1)):
        problems.append(f"labels {sorted(strips)} are not 1..{len(rho)}")
        return problems
    for lab, cells in strips.items():
        if len(cells) != rho[lab - 1]:
            problems.append(f"label {lab} has {len(cells)} cells, expected {rho[lab - 1]}")
        cellset = set(cells)
        for r, c in cells:
            if {(r, c + 1), (r + 1, c), (r + 1, c + 1)} <= cellset:
                problems.append(f"label {lab} contains a 2x2 block at {(r, c)}")
        seen = {cells[0]}
        stack = [cells[0]]
        while stack:
            r, c = stack.pop()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in cellset and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(cellset):
            problems.append(f"label {lab} is not connected")
    return problems
