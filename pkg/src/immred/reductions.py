"""End-to-end recovery pipelines for both reductions.

Construction 1: perfect matchings of a cubic bipartite graph from one
immanant and one character value.

Construction 2: every k-matching count of a graph from the immanant as a
polynomial in x, obtained symbolically, by interpolation over the
rationals, or modulo a set of primes glued together by CRT.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Optional, Sequence

from sympy import primerange
from sympy.ntheory.modular import crt

from .characters import char_sum_S, chi, sign
from .gadgets import (
    Construction1Params,
    Construction2Params,
    ConstructionError,
    build_construction1,
    build_construction2,
    pm_cover_type,
)
from .graphs import UndirectedGraph, cover_census
from .immanant import imm_from_census, imm_via_covers
from .poly import UniPoly, as_poly
from .shapes import Partition, PartitionError, as_partition, is_domino_tilable

log = logging.getLogger(__name__)


class ReductionError(ArithmeticError):
    """An identity the reduction relies on does not hold on this instance."""


class ZeroDivisorError(ReductionError):
    pass


class InsufficientPrimesError(ReductionError):
    pass


@dataclass(frozen=True)
class CensusKey:
    k: int
    m: int

    def rho(self, E: int, V: int, p: int) -> Partition:
        return rho_of(E, V, self.k, self.m, p)


def rho_of(E: int, V: int, k: int, m: int, p: int) -> Partition:
    """Cycle type of the canonical covers for a k-matching with m matched 4-cycles."""
    if not (0 <= m <= k <= V // 2):
        raise ValueError(f"need 0 <= m <= k <= floor(V/2), got k={k}, m={m}, V={V}")
    if E < k or p < 1:
        raise ValueError(f"invalid census parameters E={E}, p={p}")
    parts = ([2 * p + 5] * (V - 2 * k) + [2 * p + 2] * (4 * k) + [p + 1] * (2 * V - 4 * k)
             + [4] * m + [2] * (2 * (k - m) + E - k + 2 * k + V))
    return Partition.from_unsorted(parts)


# ---------------------------------------------------------------- perfect matchings


@dataclass
class PMResult:
    pm: int
    immanant: int
    divisor: int
    shape: Partition
    cover_type: Partition
    census: dict[Partition, int] = field(repr=False)
    nonzero_offtype: list[Partition] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "pm": self.pm,
            "immanant": self.immanant,
            "divisor": self.divisor,
            "shape": list(self.shape),
            "cover_type": list(self.cover_type),
            "census": [{"type": list(t), "covers": c, "chi": chi(self.shape, t)}
                       for t, c in self.census.items()],
            "nonzero_offtype": [list(t) for t in self.nonzero_offtype],
        }


def recover_pm_via_immanant(h: UndirectedGraph, w: int, lam_d, n: int) -> PMResult:
    """Perfect-matching count of ``h`` as Imm_lambda(A) / chi_lambda(tau).

    ``tau`` is the cycle type of the covers encoding perfect matchings. The
    divisor is checked before any enumeration.
    """
    from .shapes import compose_hook_shape

    lam_d = as_partition(lam_d)
    if lam_d.size < 2:
        raise ConstructionError("lambda_d must have at least two cells")
    params = Construction1Params(w, lam_d, n)
    lam = compose_hook_shape(w, lam_d, n)
    tau = pm_cover_type(params, h.n)
    divisor = chi(lam, tau)
    if divisor == 0:
        raise ZeroDivisorError(
            f"chi_{lam.compact()}({tau.compact()}) = 0"
            + ("" if is_domino_tilable(lam_d) else f"; {lam_d} has no domino tiling"))
    g = build_construction1(h, params)
    census = cover_census(g)
    imm = imm_from_census(lam, census)
    two_half = lam_d.size // 2
    offtype = [t for t in census if t.multiplicities().get(2, 0) < two_half and chi(lam, t) != 0]
    if offtype:
        log.warning("covers with fewer than %d 2-cycles have nonzero character: %s",
                    two_half, [t.compact() for t in offtype])
    q, r = divmod(imm, divisor)
    if r:
        raise ReductionError(f"Imm = {imm} is not divisible by chi(tau) = {divisor}")
    return PMResult(q, imm, divisor, lam, tau, census, offtype)


# ---------------------------------------------------------------- matching polynomial


def matching_shape(lam_d, n: int) -> Partition:
    """The shape (1 + lam_d, 1, ..., 1) of size ``n``."""
    lam_d = as_partition(lam_d)
    ones = n - lam_d.size - lam_d.height
    if ones < 0:
        raise PartitionError(f"n={n} is too small for lambda_d={lam_d}")
    return Partition(tuple(1 + x for x in lam_d) + (1,) * ones)


def _check_matching_args(h: UndirectedGraph, p: int, lam) -> tuple[Partition, Construction2Params]:
    params = Construction2Params(p)
    lam = as_partition(lam)
    n = params.n_for(h)
    if lam.size != n:
        raise PartitionError(f"|lambda| = {lam.size} but the gadget graph has {n} vertices")
    if lam.b > p:
        raise ValueError(f"b(lambda) = {lam.b} exceeds p = {p}; long cycles would enter the spectrum window")
    return lam, params


def matching_denominators(h: UndirectedGraph, p: int, lam) -> list[int]:
    """(-1)^(|E|-k) 2^k S_k for k = 0..floor(|V|/2)."""
    lam = as_partition(lam)
    V, E = h.n, len(h.edges)
    return [(-1) ** (E - k) * 2**k * char_sum_S(lam, E, V, k, p) for k in range(V // 2 + 1)]


def _divide_out(alphas: Sequence[int], denominators: Sequence[int]) -> list[int]:
    out = []
    for k, (a, d) in enumerate(zip(alphas, denominators)):
        if d == 0:
            raise ZeroDivisorError(f"denominator for k={k} vanishes")
        q, r = divmod(a, d)
        if r:
            raise ReductionError(f"coefficient {a} for k={k} is not divisible by {d}")
        out.append(q)
    return out


def recover_matchings_symbolic(h: UndirectedGraph, p: int, lam) -> list[int]:
    lam, params = _check_matching_args(h, p, lam)
    V = h.n
    g = build_construction2(h, params)
    poly = as_poly(imm_via_covers(lam, g))
    for i, c in enumerate(poly.coeffs):
        if c and (i > V or (V - i) % 2):
            raise ReductionError(f"unexpected monomial x^{i} with coefficient {c}")
    alphas = [poly.coefficient(V - 2 * k) for k in range(V // 2 + 1)]
    return _divide_out(alphas, matching_denominators(h, p, lam))


def _solve(matrix: list[list], rhs: list, inv) -> list:
    """Gauss-Jordan elimination; ``inv`` inverts a nonzero pivot in the field."""
    n = len(matrix)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ReductionError("singular interpolation system")
        a[col], a[piv] = a[piv], a[col]
        f = inv(a[col][col])
        a[col] = [v * f for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return [row[n] for row in a]


def default_points(V: int) -> list[int]:
    return list(range(1, V // 2 + 2))


def interpolate_alphas(values: dict[int, int], V: int) -> list[int]:
    """Coefficients of x^(V-2k), k = 0..floor(V/2), from evaluations at the given points."""
    d = V // 2
    points = sorted(values)
    if len(points) != d + 1:
        raise ValueError(f"need {d + 1} points, got {len(points)}")
    matrix = [[Fraction(x0) ** (V - 2 * k) for k in range(d + 1)] for x0 in points]
    sol = _solve(matrix, [Fraction(values[x0]) for x0 in points], lambda v: 1 / v)
    if any(s.denominator != 1 for s in sol):
        raise ReductionError(f"non-integral interpolated coefficients {sol}")
    return [int(s) for s in sol]


def _pmap(fn, items: list, workers: int) -> list:
    """Order-preserving map, in worker processes when ``workers`` > 1."""
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as ex:
        return list(ex.map(fn, items))


def _imm_at(job) -> int:
    lam, g, x0, modulus = job
    return imm_via_covers(lam, g.substitute(x0, modulus), modulus=modulus)


def recover_matchings_interpolation(h: UndirectedGraph, p: int, lam,
                                    points: Optional[Sequence[int]] = None,
                                    workers: int = 1) -> list[int]:
    lam, params = _check_matching_args(h, p, lam)
    V = h.n
    pts = list(points) if points is not None else default_points(V)
    g = build_construction2(h, params)
    evals = _pmap(_imm_at, [(lam, g, x0, None) for x0 in pts], workers)
    values = dict(zip(pts, evals))
    alphas = interpolate_alphas(values, V)
    return _divide_out(alphas, matching_denominators(h, p, lam))


@dataclass
class ModularRun:
    counts: list[int]
    primes: list[int]
    rejected: list[int]
    residues: dict[int, list[int]]

    def to_dict(self) -> dict:
        return {"counts": self.counts, "primes": self.primes, "rejected": self.rejected,
                "residues": {str(q): r for q, r in self.residues.items()}}


def matching_bound(h: UndirectedGraph) -> int:
    """Every M(h, k) is at most this: 2^|E|, or 2^(3|V|-6) if that is larger."""
    return 2 ** max(len(h.edges), 3 * h.n - 6)


def select_primes(h: UndirectedGraph, p: int, lam, candidates: Optional[Sequence[int]] = None,
                  extra: int = 1) -> tuple[list[int], list[int]]:
    """Primes usable for the modular pipeline, and the candidates rejected.

    A usable prime is odd, exceeds 2(floor(|V|/2)+1) so the interpolation
    points stay distinct up to sign, and divides no denominator. Primes are
    taken in order until their product exceeds the matching bound, then
    ``extra`` more are added as a redundancy check.
    """
    lam = as_partition(lam)
    n = lam.size
    denoms = matching_denominators(h, p, lam)
    min_q = 2 * (h.n // 2 + 1)
    pool = list(candidates) if candidates is not None else list(primerange(3, 2 * n * n + 1))
    bound = matching_bound(h)
    chosen, rejected = [], []
    product = 1
    surplus = 0
    for q in pool:
        if q % 2 == 0 or q <= min_q or any(d % q == 0 for d in denoms):
            rejected.append(q)
            continue
        chosen.append(q)
        if product > bound:
            surplus += 1
        product *= q
        if product > bound and surplus >= extra:
            break
    if product <= bound:
        raise InsufficientPrimesError(
            f"usable primes {chosen} have product {product} <= bound {bound}")
    return chosen, rejected


def _inv_mod(q: int):
    return lambda v: pow(v, -1, q)


def _residues_mod(job) -> list[int]:
    """M(h, k) mod q for every k, from one interpolation run over Z/q."""
    h, params, lam, q, denoms = job
    V = h.n
    d = V // 2
    pts = default_points(V)
    g = build_construction2(h, params, neg_one=q - 1, x_weight=UniPoly.x())
    values = [imm_via_covers(lam, g.substitute(x0, q), modulus=q) % q for x0 in pts]
    matrix = [[pow(x0, V - 2 * k, q) for k in range(d + 1)] for x0 in pts]
    alphas = [a % q for a in _solve(matrix, values, _inv_mod(q))]
    return [a * pow(den % q, -1, q) % q for a, den in zip(alphas, denoms)]


def recover_matchings_modular(h: UndirectedGraph, p: int, lam,
                              primes: Optional[Sequence[int]] = None,
                              extra: int = 1, workers: int = 1) -> ModularRun:
    """k-matching counts with the -1 weight replaced by q-1 for each prime q."""
    lam, params = _check_matching_args(h, p, lam)
    V = h.n
    d = V // 2
    chosen, rejected = select_primes(h, p, lam, primes, extra)
    denoms = matching_denominators(h, p, lam)
    per_prime = _pmap(_residues_mod, [(h, params, lam, q, denoms) for q in chosen], workers)
    residues: dict[int, list[int]] = dict(zip(chosen, per_prime))
    modulus = prod(chosen)
    counts = []
    bound = matching_bound(h)
    for k in range(d + 1):
        value, _ = crt(chosen, [residues[q][k] for q in chosen])
        value = int(value)
        if value > bound:
            raise ReductionError(f"CRT value {value} for k={k} exceeds the bound {bound} "
                                 f"(modulus {modulus}); a residue is inconsistent")
        counts.append(value)
    return ModularRun(counts, chosen, rejected, residues)


def find_matching_instance(h: UndirectedGraph, lam_d, p_min: int = 1,
                           p_max: int = 12) -> tuple[int, Partition]:
    """Smallest p in range with b(lambda) <= p, distinct census lengths and
    nonzero denominators for every k."""
    lam_d = as_partition(lam_d)
    for p in range(max(p_min, lam_d.size), p_max + 1):
        if len({2 * p + 5, 2 * p + 2, p + 1, 4, 2}) < 5:
            continue
        n = Construction2Params(p).n_for(h)
        try:
            lam = matching_shape(lam_d, n)
        except PartitionError:
            continue
        if all(matching_denominators(h, p, lam)):
            return p, lam
    raise ReductionError(f"no valid p in [{p_min}, {p_max}] for lambda_d={lam_d}")


def find_pm_instance(h: UndirectedGraph, lam_d, w: Optional[int] = None) -> tuple[int, int]:
    """Smallest w (unless given) and n = (3w+3h+1)|lambda_d| for ``h``."""
    lam_d = as_partition(lam_d)
    if w is None:
        w = 1 + lam_d[0]
    return w, (3 * w + 3 * lam_d.height + 1) * lam_d.size


def pm_divisor_sign_relation(lam, tau, lam_d) -> bool:
    """chi at the realised cover type vs chi at (n - |lam_d|, 2^(|lam_d|/2)), up to signs."""
    lam, lam_d = as_partition(lam), as_partition(lam_d)
    literal = Partition((lam.size - lam_d.size,) + (2,) * (lam_d.size // 2))
    return sign(tau) * chi(lam, tau) == sign(literal) * chi(lam, literal)
