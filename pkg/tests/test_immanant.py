import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from immred.gadgets import Construction2Params, build_construction2
from immred.graphs import WeightedDigraph
from immred.immanant import (
    bareiss_determinant,
    imm_naive,
    imm_poly_in_x,
    imm_via_covers,
    ryser_permanent,
)
from immred.poly import UniPoly
from immred.shapes import Partition, PartitionError, partitions


def fraction_determinant(a):
    """Plain Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(det)


def random_matrix(rng, n, lo=-4, hi=4, density=1.0):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]


def test_two_by_two_examples():
    a = [[1, 2], [3, 4]]
    assert imm_naive((1, 1), a) == -2
    assert imm_naive((2,), a) == 10
    assert imm_via_covers((1, 1), WeightedDigraph.from_matrix(a)) == -2


def test_standard_character_on_all_ones():
    assert imm_naive((2, 1), [[1] * 3] * 3) == 0


def test_errors():
    with pytest.raises(PartitionError):
        imm_naive((2,), [[1, 2, 3]] * 3)
    with pytest.raises(ValueError):
        imm_naive((2,), [[1, 2], [3]])
    with pytest.raises(ValueError):
        imm_naive((10,), [[1] * 10] * 10)
    with pytest.raises(PartitionError):
        imm_via_covers((3,), WeightedDigraph.from_matrix([[1, 1], [1, 1]]))


def test_determinant_oracles_agree():
    rng = random.Random(1)
    for _ in range(30):
        a = random_matrix(rng, rng.randint(0, 6), -9, 9)
        assert bareiss_determinant(a) == fraction_determinant(a)


def test_sign_and_trivial_immanants():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 7)
        a = random_matrix(rng, n)
        assert imm_naive((1,) * n, a) == bareiss_determinant(a)
        assert imm_naive((n,), a) == ryser_permanent(a)


def test_two_disjoint_two_cycles():
    g = WeightedDigraph(4)
    for u, v in [(0, 1), (1, 0), (2, 3), (3, 2)]:
        g.add_arc(u, v)
    assert imm_via_covers((4,), g) == 1
    assert imm_via_covers((1, 1, 1, 1), g) == 1
    assert imm_via_covers((2, 2), g) == 2


def test_covers_equal_naive_random_sparse():
    rng = random.Random(21)
    for _ in range(40):
        n = rng.randint(1, 7)
        a = random_matrix(rng, n, -2, 3, density=0.45)
        g = WeightedDigraph.from_matrix(a)
        for lam in rng.sample(list(partitions(n)), min(3, len(list(partitions(n))))):
            assert imm_via_covers(lam, g) == imm_naive(lam, a)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 4), st.randoms(use_true_random=False))
def test_row_linearity(n, r, rnd):
    r %= n
    a = random_matrix(rnd, n)
    u = [rnd.randint(-3, 3) for _ in range(n)]
    v = [rnd.randint(-3, 3) for _ in range(n)]
    au = [row[:] for row in a]
    av = [row[:] for row in a]
    auv = [row[:] for row in a]
    au[r], av[r] = u, v
    auv[r] = [x + y for x, y in zip(u, v)]
    lam = rnd.choice(list(partitions(n)))
    assert imm_naive(lam, auv) == imm_naive(lam, au) + imm_naive(lam, av)


def test_polynomial_entries():
    x = UniPoly.x()
    g = WeightedDigraph(2)
    g.add_arc(0, 1, x)
    g.add_arc(1, 0, 1)
    assert imm_poly_in_x((2,), g) == x
    assert imm_naive((2,), [[0, x], [1, 0]]) == x
    const = WeightedDigraph(2)
    const.add_arc(0, 1)
    const.add_arc(1, 0)
    assert imm_poly_in_x((2,), const) == UniPoly([1])
    assert imm_poly_in_x((2,), const).is_constant


def test_unused_x_arc_gives_constant():
    g = WeightedDigraph(3)
    for u, v in [(0, 1), (1, 2), (2, 0), (1, 0)]:
        g.add_arc(u, v)
    # using 0->2 forces 2->0 and leaves vertex 1 with no cycle
    g.add_arc(0, 2, UniPoly.x())
    assert imm_poly_in_x((3,), g) == UniPoly([1])


def test_nonlinear_weight_rejected():
    g = WeightedDigraph(2)
    g.add_arc(0, 1, UniPoly([0, 0, 1]))
    g.add_arc(1, 0)
    with pytest.raises(ValueError):
        imm_poly_in_x((2,), g)


def test_construction2_polynomial_shape(single_edge):
    g = build_construction2(single_edge, Construction2Params(4))
    lam = Partition((3, 3) + (1,) * 46)
    poly = imm_poly_in_x(lam, g)
    assert [i for i, c in enumerate(poly.coeffs) if c] == [0, 2]
    assert poly == UniPoly([32, 0, 3])
    rng = random.Random(4)
    for x0 in rng.sample(range(-20, 20), 5):
        assert poly(x0) == imm_via_covers(lam, g.substitute(x0))
