import itertools
import random
from math import comb

import pytest
from immred.characters import (
    Spectrum,
    as_cycle_type,
    cache_info,
    centralizer_size,
    char_sum_S,
    character_table,
    chi,
    chi_nonrecursive,
    k_spectrum,
    predict_vanishing,
    set_cache_size,
    sign,
)
from immred.shapes import (
    Partition,
    PartitionError,
    compose_hook_shape,
    conjugate,
    domino_tilings,
    partitions,
)
from immred.tableaux import enumerate_bst


def _power_sum_product(rho, ell):
    poly = {(0,) * ell: 1}
    for r in rho:
        nxt = {}
        for exps, c in poly.items():
            for i in range(ell):
                e = list(exps)
                e[i] += r
                e = tuple(e)
                nxt[e] = nxt.get(e, 0) + c
        poly = nxt
    return poly


def frobenius_chi(lam, rho):
    """Coefficient of x^(lam + delta) in a_delta * p_rho (Frobenius formula)."""
    ell = max(len(lam), 1)
    lam = list(lam) + [0] * (ell - len(lam))
    target = [lam[i] + ell - 1 - i for i in range(ell)]
    psum = _power_sum_product(rho, ell)
    total = 0
    for perm in itertools.permutations(range(ell)):
        inversions = sum(1 for i in range(ell) for j in range(i + 1, ell) if perm[i] > perm[j])
        need = tuple(target[i] - (ell - 1 - perm[i]) for i in range(ell))
        total += (-1) ** inversions * psum.get(need, 0)
    return total


# ---------------------------------------------------------------- examples

def test_sign_examples():
    assert sign((1, 1, 1)) == 1
    assert sign((2, 1)) == -1
    assert sign((4, 3)) == -1
    for n in range(1, 8):
        for rho in partitions(n):
            assert sign(rho) == (-1) ** (n - len(rho))


def test_nonrecursive_examples():
    assert chi_nonrecursive((5, 2, 1), (3, 3, 1, 1)) == -2
    assert chi_nonrecursive((2, 2), (2, 2)) == 2
    assert chi_nonrecursive((2, 2, 1, 1, 1), (4, 3)) == 0


def test_recursive_examples():
    assert chi((1, 1, 1, 1), (2, 1, 1)) == -1
    assert chi((4,), (2, 2)) == 1
    assert chi((3, 3, 1, 1), (8,)) == 0
    assert chi_nonrecursive((3, 3, 1, 1), (8,)) == 0
    assert chi((), ()) == 1


def test_size_mismatch():
    with pytest.raises(PartitionError):
        chi((2, 1), (2,))
    with pytest.raises(PartitionError):
        chi_nonrecursive((2, 1), (2,))


def test_cycle_type_accepts_unsorted_and_text():
    assert as_cycle_type([1, 3, 1]) == (3, 1, 1)
    assert as_cycle_type("(3,1^2)") == (3, 1, 1)
    assert chi((3, 2), [1, 2, 2]) == chi((3, 2), (2, 2, 1))


def test_double_square_identity():
    for n in (1, 2, 3):
        lam = (2,) * (2 * n)
        assert chi(lam, lam) == comb(2 * n, n)
        assert chi_nonrecursive(lam, lam) == comb(2 * n, n)


# ---------------------------------------------------------------- oracle equivalence

def test_chi_matches_frobenius_formula():
    for n in range(1, 7):
        for lam in partitions(n):
            for rho in partitions(n):
                assert chi(lam, rho) == frobenius_chi(lam, rho), (lam, rho)


def test_recursive_equals_nonrecursive_random_pairs():
    rng = random.Random(2024)
    for _ in range(200):
        n = rng.randint(1, 9)
        parts = list(partitions(n))
        lam, rho = rng.choice(parts), rng.choice(parts)
        assert chi(lam, rho) == chi_nonrecursive(lam, rho)


def test_conjugation_twist():
    for n in range(1, 8):
        for lam in partitions(n):
            mu = conjugate(lam)
            for rho in partitions(n):
                assert chi(lam, rho) == sign(rho) * chi(mu, rho)


def test_large_hook_like_shapes():
    lam = compose_hook_shape(3, (2, 2, 2), 114)
    tau = Partition((18,) * 6 + (2,) * 3)
    assert chi(lam, tau) == 3
    assert chi(lam, (114,)) == 0


def test_cache_resize_keeps_values():
    before = chi((4, 3, 1), (3, 3, 2))
    set_cache_size(16)
    try:
        assert chi((4, 3, 1), (3, 3, 2)) == before
        assert cache_info().maxsize == 16
    finally:
        set_cache_size(1 << 20)


# ---------------------------------------------------------------- spectra

def test_k_spectrum_examples():
    s = k_spectrum((3, 2, 2, 1), 3)
    assert s == Spectrum(3, (1, 2, 1)) and s.size == 8
    assert k_spectrum((8,), 4).counts == (0, 0, 0, 0) and k_spectrum((8,), 4).size == 0
    s = k_spectrum((2, 2, 2), 2)
    assert s.counts == (0, 3) and s.size == 6
    with pytest.raises(ValueError):
        k_spectrum((1,), 0)


def _first_column_groups(max_n):
    groups = {}
    for n in range(1, max_n + 1):
        for lam in partitions(n):
            groups.setdefault(tuple(x - 1 for x in lam if x > 1), []).append(lam)
    return groups


def test_spectrum_invariance_same_size():
    # same shape, two types with equal (n - h)-spectra
    for n in range(1, 9):
        for lam in partitions(n):
            k = n - lam.height
            if k == 0:
                continue
            seen = {}
            for rho in partitions(n):
                key = k_spectrum(rho, k)
                val = sign(rho) * chi(lam, rho)
                assert seen.setdefault(key, val) == val


def test_spectrum_invariance_across_first_column():
    checked = 0
    for group in _first_column_groups(8).values():
        for lam in group:
            for mu in group:
                k = lam.size - lam.height
                if k == 0 or lam == mu:
                    continue
                assert k == mu.size - mu.height
                for rho in partitions(lam.size):
                    for sigma in partitions(mu.size):
                        if k_spectrum(rho, k) == k_spectrum(sigma, k):
                            assert sign(rho) * chi(lam, rho) == sign(sigma) * chi(mu, sigma)
                            checked += 1
    assert checked > 1000


# ---------------------------------------------------------------- vanishing / non-vanishing

def test_predict_vanishing_examples():
    assert predict_vanishing(3, (2,), (8,))
    assert chi((3, 3, 1, 1), (8,)) == 0
    assert not predict_vanishing(3, (2,), (2, 2, 2, 2))
    assert not predict_vanishing(3, (2, 2, 2), (18,) * 6 + (2,) * 3)
    with pytest.raises(PartitionError):
        predict_vanishing(2, (2,), (8,))


def _composable(n):
    for lam_d_size in range(0, n):
        for lam_d in partitions(lam_d_size):
            for w in range(1 + (lam_d[0] if lam_d else 0), n + 1):
                if w + lam_d.size + lam_d.height <= n:
                    yield w, lam_d


def test_vanishing_soundness_exhaustive():
    hits = 0
    for n in range(1, 9):
        for w, lam_d in _composable(n):
            lam = compose_hook_shape(w, lam_d, n)
            for rho in partitions(n):
                if predict_vanishing(w, lam_d, rho):
                    hits += 1
                    assert chi(lam, rho) == 0, (w, lam_d, rho)
    assert hits > 0


def _nonvanishing_types(w, lam_d, n):
    """Types with |lam_d|/2 two-cycles and every other cycle of length >= w + h."""
    two = lam_d.size // 2
    rest = n - 2 * two
    low = w + lam_d.height
    def parts(rem, cap):
        if rem == 0:
            yield ()
            return
        for x in range(min(rem, cap), low - 1, -1):
            for tail in parts(rem - x, x):
                yield (x,) + tail
    for big in parts(rest, rest):
        yield Partition.from_unsorted(big + (2,) * two)


def test_nonvanishing_for_tilable_lambda_d():
    checked = 0
    for size in (2, 4, 6):
        for lam_d in partitions(size):
            if not domino_tilings(lam_d):
                continue
            for w in range(1 + lam_d[0], lam_d[0] + 3):
                n = w + lam_d.size + lam_d.height + 2
                lam = compose_hook_shape(w, lam_d, n)
                for rho in _nonvanishing_types(w, lam_d, n):
                    tabs = enumerate_bst(lam, rho)
                    assert chi(lam, rho) != 0, (w, lam_d, rho)
                    assert len({t.height % 2 for t in tabs}) == 1
                    checked += 1
    assert checked > 20


# ---------------------------------------------------------------- tables and sums

def test_character_table_small():
    shapes, table = character_table(1)
    assert shapes == [(1,)] and table == [[1]]
    shapes, table = character_table(2)
    assert shapes == [(2,), (1, 1)]
    # columns are the types (2), (1,1)
    assert table == [[1, 1], [-1, 1]]
    with pytest.raises(ValueError):
        character_table(10)


@pytest.mark.parametrize("n", range(1, 8))
def test_column_orthogonality(n):
    shapes, table = character_table(n)
    for a, rho in enumerate(shapes):
        for b, sigma in enumerate(shapes):
            s = sum(table[i][a] * table[i][b] for i in range(len(shapes)))
            assert s == (centralizer_size(rho) if a == b else 0)


def test_char_sum_examples():
    lam = Partition((3, 3) + (1,) * 46)
    from immred.reductions import rho_of
    assert char_sum_S(lam, 1, 2, 0, 4) == chi(lam, rho_of(1, 2, 0, 0, 4))
    s1 = char_sum_S(lam, 1, 2, 1, 4)
    assert s1 == chi(lam, rho_of(1, 2, 1, 0, 4)) + chi(lam, rho_of(1, 2, 1, 1, 4))
    assert s1 != 0


def test_char_sum_is_linear_in_terms():
    from immred.reductions import rho_of
    lam = Partition((2, 2) + (1,) * 24)
    for k in (0, 1):
        terms = [comb(k, m) * chi(lam, rho_of(1, 2, k, m, 1)) for m in range(k + 1)]
        assert char_sum_S(lam, 1, 2, k, 1) == sum(terms)


def test_char_sum_zero_when_terms_vanish():
    from immred.reductions import rho_of
    lam = Partition((21, 6, 1))
    assert chi(lam, rho_of(1, 2, 1, 0, 1)) == 0
    assert chi(lam, rho_of(1, 2, 1, 1, 1)) == 0
    assert char_sum_S(lam, 1, 2, 1, 1) == 0
    assert char_sum_S(lam, 1, 2, 0, 1) != 0
