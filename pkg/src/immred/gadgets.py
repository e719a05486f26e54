"""Gadget graph builders for the two reductions, plus structural validators.

Construction 1 turns a 3-regular bipartite graph into a 0-1 digraph whose
perfect-matching covers are separated from all others by the immanant.
Construction 2 turns any graph into a weighted digraph (weights 1, -1, x)
whose immanant is a polynomial in x carrying the k-matching counts.

A path "of length p" between two distinguished vertices is p vertices
including both ends, which makes a Construction-1 gadget 3p+4 vertices and
a Construction-2 vertex gadget 4p+7.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .graphs import (
    GraphError,
    UndirectedGraph,
    WeightedDigraph,
    _compress,
    _cover_weight,
    _cycle_lengths,
    _search,
    count_perfect_matchings,
    enumerate_cycle_covers,
    matching_counts,
)
from .poly import UniPoly, Weight, as_poly
from .shapes import Partition, as_partition


class ConstructionError(ValueError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    pass


@dataclass
class Report:
    name: str
    items: dict[str, bool] = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.items.values())

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "items": dict(self.items), "details": self.details}


# ---------------------------------------------------------------- Construction 1

@dataclass(frozen=True)
class Construction1Params:
    w: int
    lam_d: Partition
    n: int

    def __post_init__(self):
        object.__setattr__(self, "lam_d", as_partition(self.lam_d))
        if self.w < 1:
            raise ConstructionError("w must be positive")
        if not self.lam_d or self.lam_d.size % 2:
            raise ConstructionError(f"lambda_d must be non-empty of even size, got {self.lam_d}")
        if self.min_n > self.n:
            raise ConstructionError(
                f"n={self.n} is below (3w+3h+1)|lambda_d| = {self.min_n}")

    @property
    def p(self) -> int:
        return self.w + self.lam_d.height - 1

    @property
    def min_n(self) -> int:
        return (3 * self.w + 3 * self.lam_d.height + 1) * self.lam_d.size


def _check_cubic_bipartite(h: UndirectedGraph, classes: int) -> list[int]:
    for v in range(h.n):
        if h.degree(v) != 3:
            raise ConstructionError(f"vertex {v} has degree {h.degree(v)}, expected 3")
    color = h.bipartition()
    if color is None:
        raise ConstructionError("input graph is not bipartite")
    if h.n != 2 * classes or color.count(0) != classes:
        raise ConstructionError(
            f"expected {classes} vertices in each class, got {color.count(0)}/{color.count(1)}")
    return color


def build_construction1(h: UndirectedGraph, params: Construction1Params) -> WeightedDigraph:
    _check_cubic_bipartite(h, params.lam_d.size // 2)
    p = params.p
    extra = params.n - (3 * p + 4) * h.n
    g = WeightedDigraph()
    mid: dict[tuple[int, int], int] = {}
    chain_arcs: list[tuple[int, int]] = []
    for v in range(h.n):
        c = g.add_vertex(f"v{v}:c")
        minus, plus, paths = {}, {}, {}
        for i in (1, 2, 3):
            minus[i] = g.add_vertex(f"v{v}:{i}-")
            mid[(v, i)] = g.add_vertex(f"v{v}:{i}")
            plus[i] = g.add_vertex(f"v{v}:{i}+")
            interior = p - 2 + (extra if (v == 0 and i == 1) else 0)
            paths[i] = [g.add_vertex(f"v{v}:path{i}.{k}") for k in range(interior)]
        for i in (1, 2, 3):
            g.add_arc(minus[i], mid[(v, i)])
            g.add_arc(mid[(v, i)], plus[i])
            g.add_arc(minus[i], c)
            g.add_arc(c, plus[i])
            chain = [plus[i]] + paths[i] + [minus[i % 3 + 1]]
            chain_arcs.extend(zip(chain, chain[1:]))
        for a, b in chain_arcs:
            g.add_arc(a, b)
        chain_arcs.clear()
    for e, (a, b) in enumerate(h.edges):
        pa, pb = h.ports(e)
        g.add_arc(mid[(a, pa)], mid[(b, pb)])
        g.add_arc(mid[(b, pb)], mid[(a, pa)])
    if g.n != params.n:
        raise ConstructionError(f"built {g.n} vertices, expected {params.n}")
    g.meta = {"construction": 1, "p": p, "w": params.w, "lambda_d": list(params.lam_d),
              "n": params.n, "elongation": extra, "simple_input": h.is_simple()}
    return g


def pm_cover_type(params: Construction1Params, hv: int) -> Partition:
    """Cycle type of every cover that encodes a perfect matching.

    Each gadget leaves one ring cycle of 3p+3 vertices (one longer in the
    elongated gadget), and each matched edge is a 2-cycle.
    """
    ring = 3 * params.p + 3
    extra = params.n - (3 * params.p + 4) * hv
    rings = [ring + extra] + [ring] * (hv - 1)
    return Partition.from_unsorted(rings + [2] * (hv // 2))


def _short_cycles(core, choice, max_len: int) -> tuple[list[int], list[list[int]]]:
    """All cycle lengths, plus vertex lists for cycles of length <= max_len."""
    nodes, options = core.nodes, core.options
    m = len(nodes)
    seen = [False] * m
    lengths, short = [], []
    for start in range(m):
        if seen[start]:
            continue
        total, verts = 0, []
        x = start
        while not seen[x]:
            seen[x] = True
            t, length, _, path = options[x][choice[x]]
            total += length
            if total <= max_len:
                verts.append(nodes[x])
                verts.extend(path)
            x = t
        lengths.append(total)
        if total <= max_len:
            short.append(verts)
    for cyc, _ in core.fixed_cycles:
        lengths.append(len(cyc))
        if len(cyc) <= max_len:
            short.append(list(cyc))
    return lengths, short


def validate_lemma1(g: WeightedDigraph, h: UndirectedGraph, budget: Optional[int] = None) -> Report:
    """Check the four cover-structure claims over the complete cover set."""
    if g.meta.get("construction") != 1:
        raise ConstructionError("graph was not built by build_construction1")
    p = g.meta["p"]
    half = h.n // 2
    port_pairs = {}
    for e, (a, b) in enumerate(h.edges):
        pa, pb = h.ports(e)
        port_pairs[frozenset((f"v{a}:{pa}", f"v{b}:{pb}"))] = e
    item1 = item2 = item4 = True
    pm_edge_sets = []
    covers = 0
    max_two = 0
    bad: list[str] = []
    core = _compress(g)
    for choice in _search(core):
        covers += 1
        if budget is not None and covers > budget:
            raise EnumerationBudgetExceeded(f"more than {budget} cycle covers")
        lengths, twos = _short_cycles(core, choice, 2)
        two_cycles = [c for c in twos if len(c) == 2]
        if any(len(c) == 1 for c in twos):
            item2 = False
        edges = []
        for c in two_cycles:
            key = frozenset(g.labels[v] for v in c)
            if key not in port_pairs:
                item1 = False
                if len(bad) < 5:
                    bad.append(f"2-cycle on {sorted(key, key=str)}")
            else:
                edges.append(port_pairs[key])
        if any(2 < L < p + 1 for L in lengths):
            item2 = False
        max_two = max(max_two, len(two_cycles))
        if len(two_cycles) > half:
            item4 = False
        if len(two_cycles) == half:
            pm_edge_sets.append(frozenset(edges))
    pm = count_perfect_matchings(h)
    distinct = set(pm_edge_sets)
    perfect = all(
        len(s) == half and len({v for e in s for v in h.edges[e]}) == h.n for s in distinct)
    item3 = len(pm_edge_sets) == pm and len(distinct) == len(pm_edge_sets) and perfect
    return Report("lemma1", {
        "two_cycles_are_cross_pairs": item1,
        "long_cycles_at_least_p_plus_1": item2,
        "pm_covers_biject_with_perfect_matchings": item3,
        "at_most_half_two_cycles": item4,
    }, {"covers": covers, "pm_covers": len(pm_edge_sets), "perfect_matchings": pm,
        "max_two_cycles": max_two, "p": p, "violations": bad})


# ---------------------------------------------------------------- Construction 2

@dataclass(frozen=True)
class Construction2Params:
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ConstructionError(f"p must be positive, got {self.p}")

    def n_for(self, h: UndirectedGraph) -> int:
        return (4 * self.p + 7) * h.n + 2 * h.n + 2 * len(h.edges)

    @classmethod
    def from_n(cls, h: UndirectedGraph, n: int) -> "Construction2Params":
        num = n - 2 * len(h.edges) - 9 * h.n
        den = 4 * h.n
        if num <= 0 or num % den:
            raise ConstructionError(f"p = ({n} - 2|E| - 9|V|)/(4|V|) = {num}/{den} is not a positive integer")
        return cls(num // den)


def _path(g: WeightedDigraph, prefix: str, first: str, last: str, p: int) -> list[int]:
    if p == 1:
        return [g.add_vertex(f"{prefix}:{first}/{last}")]
    verts = [g.add_vertex(f"{prefix}:{first}")]
    verts += [g.add_vertex(f"{prefix}:{first}>{last}.{k}") for k in range(p - 2)]
    verts.append(g.add_vertex(f"{prefix}:{last}"))
    return verts


def build_construction2(h: UndirectedGraph, params: Construction2Params,
                        neg_one: Weight = -1, x_weight: Weight | None = None) -> WeightedDigraph:
    """Weighted digraph for k-matching recovery.

    ``neg_one`` and ``x_weight`` replace the -1 and x arc weights, which is
    how the modular and interpolation pipelines rebuild the graph.
    """
    p = params.p
    xw = UniPoly.x() if x_weight is None else x_weight
    g = WeightedDigraph()
    hv = [g.add_vertex(f"h{v}") for v in range(h.n)]
    for v in range(h.n):
        pre = f"g{v}"
        u1 = g.add_vertex(f"{pre}:u1")
        pa = _path(g, pre, "u1+", "u2-", p)
        u2 = g.add_vertex(f"{pre}:u2")
        pb = _path(g, pre, "u2+", "u1-", p)
        uc = g.add_vertex(f"{pre}:uc")
        w1 = g.add_vertex(f"{pre}:w1")
        pc = _path(g, pre, "w1+", "w2-", p)
        w2 = g.add_vertex(f"{pre}:w2")
        pd = _path(g, pre, "w2+", "w1-", p)
        wc = g.add_vertex(f"{pre}:wc")
        g.add_arc(hv[v], u1, xw)
        g.add_arc(w2, hv[v])
        for chain in ([u1] + pa + [u2], [u2] + pb + [u1], [w1] + pc + [w2], [w2] + pd + [w1]):
            for a, b in zip(chain, chain[1:]):
                g.add_arc(a, b)
        g.add_arc(u2, w1)
        g.add_arc(w1, u2)
        g.add_arc(pa[-1], uc)
        g.add_arc(pb[-1], uc)
        g.add_arc(uc, pb[0])
        g.add_arc(pd[-1], wc)
        g.add_arc(wc, pc[0])
        g.add_arc(wc, pd[0])
    for e, (s, t) in enumerate(h.edges):
        a = g.add_vertex(f"e{e}:a")
        b = g.add_vertex(f"e{e}:b")
        g.add_arc(a, b)
        g.add_arc(b, a, neg_one)
        for end in (hv[s], hv[t]):
            g.add_arc(end, a)
            g.add_arc(a, end)
            g.add_arc(end, b)
            g.add_arc(b, end)
    for k in range(h.n):
        a = g.add_vertex(f"iso{k}:a")
        b = g.add_vertex(f"iso{k}:b")
        g.add_arc(a, b)
        g.add_arc(b, a)
    expected = params.n_for(h)
    if g.n != expected:
        raise ConstructionError(f"built {g.n} vertices, expected {expected}")
    g.meta = {"construction": 2, "p": p, "V": h.n, "E": len(h.edges), "n": g.n}
    return g


def _local_census(g: WeightedDigraph) -> list[tuple[Partition, Weight]]:
    return [(c.cycle_type, c.weight) for c in enumerate_cycle_covers(g)]


def _match_gadget_piece(names: list[str], neg_one: Weight = -1,
                        stub: Optional[tuple[str, str]] = None) -> WeightedDigraph:
    """Induced match gadget on ``names`` (subset of u, a, b, v), plus an optional
    external stub vertex z with arcs ``stub[0] -> z -> stub[1]``."""
    arcs = [("a", "b", 1), ("b", "a", neg_one)]
    for end in ("u", "v"):
        for mid in ("a", "b"):
            arcs += [(end, mid, 1), (mid, end, 1)]
    all_names = names + (["z"] if stub else [])
    idx = {name: i for i, name in enumerate(all_names)}
    g = WeightedDigraph(len(all_names), all_names)
    for s, t, w in arcs:
        if s in idx and t in idx:
            g.add_arc(idx[s], idx[t], w)
    if stub:
        g.add_arc(idx[stub[0]], idx["z"])
        g.add_arc(idx["z"], idx[stub[1]])
    return g


def validate_match_gadget() -> Report:
    """Local census of the edge gadget in each boundary situation."""
    items, details = {}, {}

    both_out = _local_census(_match_gadget_piece(["a", "b"]))
    details["both_external"] = [[list(t), w] for t, w in both_out]
    items["both_external_one_completion_weight_minus_1"] = (
        len(both_out) == 1 and both_out[0][1] == -1)

    one_ok = True
    for inside in ("u", "v"):
        covers = _local_census(_match_gadget_piece([inside, "a", "b"]))
        details[f"only_{inside}_internal"] = [[list(t), w] for t, w in covers]
        one_ok &= (len(covers) == 2 and sum(w for _, w in covers) == 0
                   and covers[0][0] == covers[1][0] and covers[0][1] != 0)
    items["one_external_two_completions_cancel"] = one_ok

    internal = _local_census(_match_gadget_piece(["u", "a", "b", "v"]))
    details["all_internal"] = [[list(t), w] for t, w in internal]
    types = Counter(t for t, _ in internal)
    items["internal_four_covers_split_2_2"] = (
        len(internal) == 4 and all(w == 1 for _, w in internal)
        and types == Counter({Partition((2, 2)): 2, Partition((4,)): 2}))

    mixed_ok = True
    mixed_details = []
    for stub in (("v", "u"), ("u", "v")):
        g = _match_gadget_piece(["u", "a", "b", "v"], stub=stub)
        z = g.index_of("z")
        by_type: dict[Partition, list[Weight]] = defaultdict(list)
        for c in enumerate_cycle_covers(g):
            zcyc = next(cyc for cyc in c.cycles() if z in cyc)
            if len(zcyc) > 3:
                by_type[c.cycle_type].append(c.weight)
        mixed_details.append({str(t): ws for t, ws in by_type.items()})
        mixed_ok &= bool(by_type) and all(len(ws) == 2 and sum(ws) == 0 for ws in by_type.values())
    details["mixed"] = mixed_details
    items["mixed_cycles_pair_and_cancel"] = mixed_ok
    return Report("match_gadget", items, details)


def validate_census(g: WeightedDigraph, h: UndirectedGraph, budget: Optional[int] = None) -> Report:
    """Classify every cycle cover of a Construction-2 graph against the matching census.

    A cover is canonical when every edge gadget is either idle (its two
    interior vertices form a 2-cycle) or matched (the cycles through its
    interior vertices are exactly the gadget's four vertices). Canonical
    covers are grouped by (matching, number of 4-cycles); everything else
    must cancel per type.
    """
    from .reductions import rho_of

    if g.meta.get("construction") != 2:
        raise ConstructionError("graph was not built by build_construction2")
    p, V, E = g.meta["p"], h.n, len(h.edges)
    label_index = {lab: i for i, lab in enumerate(g.labels)}
    gadget_sets = []
    for e, (s, t) in enumerate(h.edges):
        a, b = label_index[f"e{e}:a"], label_index[f"e{e}:b"]
        gadget_sets.append((a, b, {a, b, label_index[f"h{s}"], label_index[f"h{t}"]}))
    x = UniPoly.x()

    groups: Counter = Counter()
    canon_ok_type = canon_ok_weight = True
    residual: dict[Partition, Weight] = defaultdict(int)
    covers = 0
    violations: list[str] = []
    for cover in enumerate_cycle_covers(g):
        covers += 1
        if budget is not None and covers > budget:
            raise EnumerationBudgetExceeded(f"more than {budget} cycle covers")
        succ = cover.successor
        cyc_of = {}
        for cyc in cover.cycles():
            for v in cyc:
                cyc_of[v] = cyc
        matched, m, canonical = [], 0, True
        for e, (a, b, members) in enumerate(gadget_sets):
            if succ[a] == b and succ[b] == a:
                continue
            ca, cb = cyc_of[a], cyc_of[b]
            if set(ca) | set(cb) == members:
                matched.append(e)
                if len(ca) == 4:
                    m += 1
            else:
                canonical = False
                break
        if not canonical:
            residual[cover.cycle_type] = residual[cover.cycle_type] + cover.weight
            continue
        k = len(matched)
        groups[(frozenset(matched), m)] += 1
        expected_type = rho_of(E, V, k, m, p)
        expected_weight = as_poly((-1) ** (E - k)) * _xpow(x, V - 2 * k)
        if cover.cycle_type != expected_type:
            canon_ok_type = False
            if len(violations) < 5:
                violations.append(f"matching {sorted(matched)} m={m}: type {cover.cycle_type}")
        if as_poly(cover.weight) != expected_weight:
            canon_ok_weight = False
            if len(violations) < 5:
                violations.append(f"matching {sorted(matched)} m={m}: weight {cover.weight}")

    counts_ok = all(c == 2 ** len(ms) * comb(len(ms), m) for (ms, m), c in groups.items())
    seen_matchings: dict[int, set] = defaultdict(set)
    for ms, m in groups:
        seen_matchings[len(ms)].add(ms)
        for m2 in range(len(ms) + 1):
            if (ms, m2) not in groups:
                counts_ok = False
    oracle = matching_counts(h)
    matchings_ok = all(len(seen_matchings.get(k, ())) == oracle[k] for k in range(len(oracle)))
    residual_nonzero = {str(t): str(w) for t, w in residual.items() if w != 0}
    size_ok = g.n == (4 * p + 7) * V + 2 * V + 2 * E and all(
        rho_of(E, V, k, m, p).size == g.n for k in range(V // 2 + 1) for m in range(k + 1))
    class_counts = defaultdict(int)
    for (ms, m), c in groups.items():
        class_counts[f"k={len(ms)},m={m}"] += c
    return Report("census", {
        "canonical_covers_have_predicted_type": canon_ok_type,
        "canonical_covers_have_predicted_weight": canon_ok_weight,
        "class_counts_are_2^k_C(k,m)": counts_ok,
        "matchings_of_every_size_appear": matchings_ok,
        "noncanonical_covers_cancel_per_type": not residual_nonzero,
        "vertex_count_cross_check": size_ok,
    }, {"covers": covers, "class_counts": dict(class_counts), "matching_counts": oracle,
        "residual_nonzero": residual_nonzero, "violations": violations})


def _xpow(x: UniPoly, e: int) -> UniPoly:
    out = UniPoly.const(1)
    for _ in range(e):
        out = out * x
    return out
