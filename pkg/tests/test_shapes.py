import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from immred.shapes import (
    DominoTiling,
    Partition,
    PartitionError,
    SkewShape,
    compose_hook_shape,
    conjugate,
    domino_tilings,
    horizontal_parity,
    order_leq,
    parse_partition,
    partitions,
)


# ---------------------------------------------------------------- oracles

def pairing_count(cells):
    """Count perfect pairings of edge-adjacent cells by plain recursion."""
    cells = set(cells)
    if not cells:
        return 1
    first = min(cells)
    r, c = first
    total = 0
    for other in ((r, c + 1), (r + 1, c), (r, c - 1), (r - 1, c)):
        if other in cells:
            total += pairing_count(cells - {first, other})
    return total


def rectangle_tilings(rows, cols):
    """Transfer matrix over column profiles (bitmask of cells already filled)."""
    counts = {0: 1}
    for _ in range(cols):
        nxt = {}
        for mask, ways in counts.items():
            def fill(row, cur, out):
                if row == rows:
                    nxt[out] = nxt.get(out, 0) + ways
                    return
                if cur >> row & 1:
                    fill(row + 1, cur, out)
                    return
                fill(row + 1, cur, out | 1 << row)
                if row + 1 < rows and not cur >> (row + 1) & 1:
                    fill(row + 2, cur, out)
            fill(0, mask, 0)
        counts = nxt
    return counts.get(0, 0)


partition_st = st.lists(st.integers(1, 5), min_size=0, max_size=5).map(
    lambda xs: Partition(sorted(xs, reverse=True)))


# ---------------------------------------------------------------- parsing

def test_parse_expands_powers():
    assert parse_partition("(2^2,1^3)") == (2, 2, 1, 1, 1)
    assert parse_partition("(5,2,1)") == (5, 2, 1)
    assert parse_partition("()") == ()
    assert parse_partition(" ( 3 , 1^2 ) ") == (3, 1, 1)


@pytest.mark.parametrize("text", ["(1,2)", "(2,0)", "(3,-1)", "3,1", "(a)", "(2^0)", "(2^)"])
def test_parse_rejects(text):
    with pytest.raises(PartitionError):
        parse_partition(text)


def test_parse_error_kinds():
    with pytest.raises(PartitionError, match="decreasing"):
        parse_partition("(1,2)")
    with pytest.raises(PartitionError):
        parse_partition("(0)")


def test_partition_derived_fields():
    lam = Partition((5, 2, 1))
    assert (lam.size, lam.height, lam.b) == (8, 3, 5)
    assert Partition(()).size == 0
    assert Partition((2, 2, 1, 1, 1)).compact() == "(2^2,1^3)"
    with pytest.raises(PartitionError):
        Partition((1, 2))


def test_partition_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


# ---------------------------------------------------------------- conjugate / order

def test_conjugate_examples():
    assert conjugate((2, 1, 1)) == (3, 1)
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()


def test_conjugate_involution_exhaustive():
    for n in range(13):
        for lam in partitions(n):
            mu = conjugate(lam)
            assert mu.size == n
            assert conjugate(mu) == lam


def test_order_examples():
    assert order_leq((4,), (2, 2))
    assert not order_leq((1, 1, 1, 1), (2, 2))
    assert order_leq((3, 1), (2, 2))
    with pytest.raises(PartitionError):
        order_leq((2,), (1,))


def test_order_is_partial_order():
    for n in range(1, 9):
        parts = list(partitions(n))
        top, bottom = Partition((n,)), Partition((1,) * n)
        for a in parts:
            assert order_leq(a, a)
            assert order_leq(top, a) and order_leq(a, bottom)
            for b in parts:
                if a != b and order_leq(a, b):
                    assert not order_leq(b, a)
        for a, b, c in itertools.product(parts, repeat=3):
            if order_leq(a, b) and order_leq(b, c):
                assert order_leq(a, c)


# ---------------------------------------------------------------- hook composition

def test_compose_examples():
    assert compose_hook_shape(3, (2, 2, 2), 114) == Partition((3, 3, 3, 3) + (1,) * 102)
    assert compose_hook_shape(3, (2,), 8) == (3, 3, 1, 1)
    with pytest.raises(PartitionError):
        compose_hook_shape(2, (2,), 8)
    with pytest.raises(PartitionError):
        compose_hook_shape(3, (2,), 4)


def test_compose_empty_lambda_d_is_hook():
    assert compose_hook_shape(3, (), 5) == (3, 1, 1)


@given(st.integers(1, 6), partition_st, st.integers(0, 5))
def test_compose_size_and_tail(w, lam_d, extra):
    if lam_d and w < 1 + lam_d[0]:
        with pytest.raises(PartitionError):
            compose_hook_shape(w, lam_d, 100)
        return
    n = w + lam_d.size + lam_d.height + extra
    lam = compose_hook_shape(w, lam_d, n)
    assert lam.size == n
    assert lam[0] == w
    assert lam[1:1 + lam_d.height] == tuple(1 + x for x in lam_d)
    assert lam.count(1) >= extra


# ---------------------------------------------------------------- skew shapes

def test_skew_validation():
    s = SkewShape((3, 2), (1,))
    assert s.size == 4
    assert (0, 0) not in s and (0, 1) in s
    with pytest.raises(PartitionError):
        SkewShape((2,), (1, 1))
    with pytest.raises(PartitionError):
        SkewShape((2, 1), (3,))


# ---------------------------------------------------------------- tilings

def test_tilings_examples():
    square = domino_tilings((2, 2))
    assert len(square) == 2
    assert [t.horizontal_count for t in square] == [2, 0]
    assert [horizontal_parity(t) for t in square] == [0, 0]
    assert domino_tilings((2, 1)) == []
    three = domino_tilings((2, 2, 2))
    assert len(three) == 3
    assert sorted(t.horizontal_count for t in three) == [1, 1, 3]
    assert all(horizontal_parity(t) == 1 for t in three)


def test_tilings_cover_shape_exactly():
    shape = SkewShape((4, 4, 3, 1), (1,))
    for t in domino_tilings(shape):
        cells = [c for d in t.dominoes for c in d.cells]
        assert sorted(cells) == sorted(shape.cells())
        for d in t.dominoes:
            (r1, c1), (r2, c2) = d.cells
            assert abs(r1 - r2) + abs(c1 - c2) == 1
            assert d.orient == ("H" if r1 == r2 else "V")


def test_tilings_deterministic_and_distinct():
    a = domino_tilings((4, 4, 2, 2))
    b = domino_tilings((4, 4, 2, 2))
    assert [t.to_json() for t in a] == [t.to_json() for t in b]
    keys = {tuple(sorted(tuple(map(tuple, d["cells"])) for d in t.to_json())) for t in a}
    assert len(keys) == len(a)


def test_tiling_json_roundtrip():
    for t in domino_tilings((3, 3, 2)):
        assert DominoTiling.from_json(t.to_json()) == t


@pytest.mark.parametrize("k", range(1, 11))
def test_two_by_k_matches_transfer_matrix(k):
    assert len(domino_tilings((2,) * k)) == rectangle_tilings(2, k)


def test_transfer_matrix_wider_rectangles():
    assert len(domino_tilings((3,) * 4)) == rectangle_tilings(3, 4) == 11
    assert len(domino_tilings((4,) * 4)) == rectangle_tilings(4, 4) == 36


@settings(max_examples=60, deadline=None)
@given(partition_st, partition_st)
def test_tiling_count_matches_pairing_oracle(outer, inner):
    inner = Partition(tuple(min(a, b) for a, b in zip(inner, outer)))
    shape = SkewShape(outer, inner)
    tilings = domino_tilings(shape)
    assert len(tilings) == pairing_count(shape.cells())
    if shape.size % 2:
        assert tilings == []


def test_parity_invariant_small():
    for n in range(0, 11, 2):
        for lam in partitions(n):
            assert len({horizontal_parity(t) for t in domino_tilings(lam)}) <= 1
