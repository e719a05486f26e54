"""Weighted digraphs, cycle-cover enumeration and matching counts.

Cycle covers are searched on a compressed core: every vertex with in- and
out-degree one is forced, so maximal runs of such vertices are contracted
into single arcs carrying a length and a weight product. Only the remaining
branching vertices are searched, lowest original index first, successors in
index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence

from .poly import UniPoly, Weight
from .shapes import Partition


class GraphError(ValueError):
    pass


class WeightedDigraph:
    """Directed graph with exact integer or ``UniPoly`` arc weights."""

    def __init__(self, n: int = 0, labels: Optional[Sequence[Optional[str]]] = None,
                 allow_loops: bool = False):
        self.n = n
        self.arcs: dict[tuple[int, int], Weight] = {}
        self.labels: list[Optional[str]] = list(labels) if labels is not None else [None] * n
        if len(self.labels) != n:
            raise GraphError("label count does not match vertex count")
        self.allow_loops = allow_loops
        self.meta: dict = {}

    def add_vertex(self, label: Optional[str] = None) -> int:
        self.n += 1
        self.labels.append(label)
        return self.n - 1

    def add_arc(self, u: int, v: int, weight: Weight = 1) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"arc ({u},{v}) out of range for {self.n} vertices")
        if u == v and not self.allow_loops:
            raise GraphError(f"self-loop at {u} not enabled")
        if (u, v) in self.arcs:
            raise GraphError(f"duplicate arc ({u},{v})")
        self.arcs[(u, v)] = weight

    def weight(self, u: int, v: int) -> Weight:
        return self.arcs.get((u, v), 0)

    def out_neighbors(self, u: int) -> list[int]:
        return sorted(v for (a, v) in self.arcs if a == u)

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def adjacency_matrix(self) -> list[list[Weight]]:
        a: list[list[Weight]] = [[0] * self.n for _ in range(self.n)]
        for (u, v), w in self.arcs.items():
            a[u][v] = w
        return a

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[Weight]]) -> "WeightedDigraph":
        n = len(matrix)
        g = cls(n, allow_loops=True)
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise GraphError("matrix is not square")
            for j, w in enumerate(row):
                if w != 0:
                    g.add_arc(i, j, w)
        return g

    def map_weights(self, fn: Callable[[Weight], Weight]) -> "WeightedDigraph":
        g = WeightedDigraph(self.n, self.labels, self.allow_loops)
        g.meta = dict(self.meta)
        for (u, v), w in self.arcs.items():
            g.arcs[(u, v)] = fn(w)
        return g

    def substitute(self, x0: int, modulus: Optional[int] = None) -> "WeightedDigraph":
        """Evaluate every polynomial weight at ``x = x0`` (optionally mod ``modulus``)."""
        def ev(w):
            if isinstance(w, UniPoly):
                return w(x0, modulus)
            return w % modulus if modulus is not None else w
        return self.map_weights(ev)

    def is_symbolic(self) -> bool:
        return any(isinstance(w, UniPoly) and not w.is_constant() for w in self.arcs.values())

    def __repr__(self) -> str:
        return f"WeightedDigraph(n={self.n}, arcs={len(self.arcs)})"


@dataclass
class _Core:
    graph: WeightedDigraph
    nodes: list[int]
    # per core node: (target core index, length, weight, interior vertices)
    options: list[list[tuple[int, int, Weight, tuple[int, ...]]]]
    fixed_cycles: list[tuple[tuple[int, ...], Weight]]
    feasible: bool = True


def _compress(g: WeightedDigraph) -> _Core:
    outs: list[list[tuple[int, Weight]]] = [[] for _ in range(g.n)]
    indeg = [0] * g.n
    for (u, v), w in g.arcs.items():
        outs[u].append((v, w))
        indeg[v] += 1
    for lst in outs:
        lst.sort(key=lambda t: t[0])
    interior = [len(outs[v]) == 1 and indeg[v] == 1 for v in range(g.n)]
    nodes = [v for v in range(g.n) if not interior[v]]
    index = {v: i for i, v in enumerate(nodes)}

    raw: list[list[tuple[int, int, Weight, tuple[int, ...]]]] = []
    seen_interior = [False] * g.n
    forced_in: dict[int, int] = {}
    feasible = True
    for u in nodes:
        opts = []
        for v, w in outs[u]:
            path = []
            length, weight = 1, w
            while interior[v]:
                path.append(v)
                seen_interior[v] = True
                v, w2 = outs[v][0]
                weight = weight * w2
                length += 1
            opts.append((index[v], length, weight, tuple(path)))
        chains = [o for o in opts if o[3]]
        if len(chains) > 1:
            feasible = False
        if chains:
            opts = chains
            forced_in[chains[0][0]] = forced_in.get(chains[0][0], 0) + 1
        raw.append(opts)
    if any(c > 1 for c in forced_in.values()):
        feasible = False
    options = []
    for i, opts in enumerate(raw):
        options.append([o for o in opts if o[3] or o[0] not in forced_in])

    fixed: list[tuple[tuple[int, ...], Weight]] = []
    for v in range(g.n):
        if interior[v] and not seen_interior[v]:
            cyc = []
            weight: Weight = 1
            x = v
            while not seen_interior[x]:
                seen_interior[x] = True
                cyc.append(x)
                x, w = outs[x][0]
                weight = weight * w
            if x != v:
                # an interior run fed by a vertex already on it cannot happen; defensive
                feasible = False
            fixed.append((tuple(cyc), weight))
    return _Core(g, nodes, options, fixed, feasible)


def _search(core: _Core) -> Iterator[list[int]]:
    """Yield the option index chosen at every core node, once per cycle cover.

    The same list object is yielded each time; copy it if you keep it.
    """
    if not core.feasible:
        return
    m = len(core.nodes)
    options = core.options
    choice = [-1] * m
    if m == 0:
        yield choice
        return
    pred_taken = [False] * m
    avail_pred = [0] * m
    avail_succ = [len(o) for o in options]
    in_opts: list[list[int]] = [[] for _ in range(m)]
    for s, opts in enumerate(options):
        for t, *_ in opts:
            avail_pred[t] += 1
            in_opts[t].append(s)
    if min(avail_pred) == 0 or min(avail_succ) == 0:
        return

    logs: list[Optional[tuple[list[int], list[int], int]]] = [None] * m
    next_j = [0] * m

    def apply(i: int, j: int) -> bool:
        t = options[i][j][0]
        pred_taken[t] = True
        ok = True
        dec_pred = []
        for j2, o in enumerate(options[i]):
            if j2 != j:
                t2 = o[0]
                avail_pred[t2] -= 1
                dec_pred.append(t2)
                if avail_pred[t2] == 0 and not pred_taken[t2]:
                    ok = False
        dec_succ = []
        for s in in_opts[t]:
            if s > i:
                avail_succ[s] -= 1
                dec_succ.append(s)
                if avail_succ[s] == 0:
                    ok = False
        logs[i] = (dec_pred, dec_succ, t)
        choice[i] = j
        return ok

    def undo(i: int) -> None:
        dec_pred, dec_succ, t = logs[i]
        for t2 in dec_pred:
            avail_pred[t2] += 1
        for s in dec_succ:
            avail_succ[s] += 1
        pred_taken[t] = False
        choice[i] = -1
        logs[i] = None

    i = 0
    while i >= 0:
        if i == m:
            yield choice
            i -= 1
            undo(i)
            continue
        opts = options[i]
        moved = False
        while next_j[i] < len(opts):
            j = next_j[i]
            next_j[i] += 1
            if pred_taken[opts[j][0]]:
                continue
            if apply(i, j):
                moved = True
                break
            undo(i)
        if moved:
            i += 1
            if i < m:
                next_j[i] = 0
        else:
            next_j[i] = 0
            i -= 1
            if i >= 0:
                undo(i)


@dataclass
class CycleCover:
    """One cycle cover, stored compactly against the compressed core."""

    core: _Core = field(repr=False)
    choice: tuple[int, ...]

    def _chosen(self, i: int):
        return self.core.options[i][self.choice[i]]

    @cached_property
    def successor(self) -> tuple[int, ...]:
        succ = [-1] * self.core.graph.n
        nodes = self.core.nodes
        for i, u in enumerate(nodes):
            t, _, _, path = self._chosen(i)
            chain = (u,) + path + (nodes[t],)
            for a, b in zip(chain, chain[1:]):
                succ[a] = b
        for cyc, _ in self.core.fixed_cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                succ[a] = b
        return tuple(succ)

    def cycles(self) -> list[list[int]]:
        succ = self.successor
        seen = [False] * len(succ)
        out = []
        for v in range(len(succ)):
            if not seen[v]:
                cyc = []
                x = v
                while not seen[x]:
                    seen[x] = True
                    cyc.append(x)
                    x = succ[x]
                out.append(cyc)
        return out

    @cached_property
    def cycle_type(self) -> Partition:
        return Partition.from_unsorted(_cycle_lengths(self.core, self.choice))

    @cached_property
    def weight(self) -> Weight:
        return _cover_weight(self.core, self.choice)


def _cycle_lengths(core: _Core, choice: Sequence[int]) -> list[int]:
    m = len(core.nodes)
    options = core.options
    seen = [False] * m
    lengths = []
    for start in range(m):
        if seen[start]:
            continue
        total = 0
        x = start
        while not seen[x]:
            seen[x] = True
            t, length, _, _ = options[x][choice[x]]
            total += length
            x = t
        lengths.append(total)
    lengths.extend(len(c) for c, _ in core.fixed_cycles)
    return lengths


def _cover_weight(core: _Core, choice: Sequence[int], modulus: Optional[int] = None) -> Weight:
    w: Weight = 1
    for i, j in enumerate(choice):
        w = w * core.options[i][j][2]
        if modulus is not None:
            w %= modulus
    for _, fw in core.fixed_cycles:
        w = w * fw
        if modulus is not None:
            w %= modulus
    return w


def enumerate_cycle_covers(g: WeightedDigraph) -> Iterator[CycleCover]:
    core = _compress(g)
    for choice in _search(core):
        yield CycleCover(core, tuple(choice))


def count_cycle_covers(g: WeightedDigraph) -> int:
    return sum(1 for _ in _search(_compress(g)))


def cover_census(g: WeightedDigraph, modulus: Optional[int] = None,
                 keep_zero: bool = False) -> dict[Partition, Weight]:
    """Map each cycle type to the summed weight of the covers having it.

    With ``modulus`` all weights must be integers and sums are reduced.
    Types whose total weight cancels to zero are dropped unless ``keep_zero``.
    """
    core = _compress(g)
    unit = all(w == 1 for o in core.options for *_, w, _ in o) and \
        all(w == 1 for _, w in core.fixed_cycles)
    census: dict[tuple[int, ...], Weight] = {}
    for choice in _search(core):
        key = tuple(sorted(_cycle_lengths(core, choice), reverse=True))
        w = 1 if unit else _cover_weight(core, choice, modulus)
        prev = census.get(key, 0)
        total = prev + w
        if modulus is not None:
            total %= modulus
        census[key] = total
    out = {}
    for key in sorted(census, reverse=True):
        if keep_zero or census[key] != 0:
            out[Partition(key)] = census[key]
    return out


class UndirectedGraph:
    """Undirected multigraph whose edge ends carry port numbers.

    Ports at each vertex are assigned 1, 2, ... in edge input order, so
    "the i-th neighbour of v" is the far end of the edge on port i of v.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int]] = ()):
        self.n = n
        self.edges: list[tuple[int, int]] = []
        self._ports: list[tuple[int, int]] = []
        self._deg = [0] * n
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> int:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"edge ({u},{v}) out of range for {self.n} vertices")
        if u == v:
            raise GraphError(f"loop at {u} not supported")
        self._deg[u] += 1
        self._deg[v] += 1
        self.edges.append((u, v))
        self._ports.append((self._deg[u], self._deg[v]))
        return len(self.edges) - 1

    def degree(self, v: int) -> int:
        return self._deg[v]

    def ports(self, e: int) -> tuple[int, int]:
        """Port numbers of edge ``e`` at its first and second endpoint."""
        return self._ports[e]

    def incident(self, v: int) -> list[tuple[int, int, int]]:
        """``(port, edge index, other end)`` for each edge at ``v``, by port."""
        out = []
        for e, (a, b) in enumerate(self.edges):
            pa, pb = self._ports[e]
            if a == v:
                out.append((pa, e, b))
            elif b == v:
                out.append((pb, e, a))
        return sorted(out)

    def is_simple(self) -> bool:
        return len({frozenset(e) for e in self.edges}) == len(self.edges)

    def bipartition(self) -> Optional[list[int]]:
        """0/1 colouring if bipartite, else None."""
        color = [-1] * self.n
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if color[y] < 0:
                        color[y] = 1 - color[x]
                        stack.append(y)
                    elif color[y] == color[x]:
                        return None
        return color

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, edges={self.edges})"


def count_perfect_matchings(h: UndirectedGraph) -> int:
    if h.n % 2:
        return 0
    inc = [[(e, b if a == v else a) for e, (a, b) in enumerate(h.edges) if v in (a, b)]
           for v in range(h.n)]
    matched = [False] * h.n

    def rec(v: int) -> int:
        while v < h.n and matched[v]:
            v += 1
        if v == h.n:
            return 1
        matched[v] = True
        total = 0
        for _, other in inc[v]:
            if not matched[other]:
                matched[other] = True
                total += rec(v + 1)
                matched[other] = False
        matched[v] = False
        return total

    return rec(0)


def matching_counts(h: UndirectedGraph) -> list[int]:
    """``[M(h, 0), M(h, 1), ...]`` up to ``floor(n/2)``."""
    counts = [0] * (h.n // 2 + 1)
    inc = [[(e, b if a == v else a) for e, (a, b) in enumerate(h.edges) if v in (a, b)]
           for v in range(h.n)]
    used = [False] * h.n

    def rec(v: int, k: int) -> None:
        while v < h.n and used[v]:
            v += 1
        if v == h.n:
            counts[k] += 1
            return
        used[v] = True
        rec(v + 1, k)
        for _, other in inc[v]:
            if other > v and not used[other]:
                used[other] = True
                rec(v + 1, k + 1)
                used[other] = False
        used[v] = False

    rec(0, 0)
    return counts


def count_matchings(h: UndirectedGraph, k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    counts = matching_counts(h)
    return counts[k] if k < len(counts) else 0
