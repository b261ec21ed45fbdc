"""Isomorph-free generation of connected simple cubic graphs.

Three growth operations on smaller connected cubic graphs are used:

* edge insertion (v-2): subdivide two distinct edges and join the new vertices;
* diamond insertion (v-4): put a diamond (K4 minus an edge) in series on an edge;
* pendant tetrahedron (v-6): subdivide an edge and hang a pinched K4 from it.

Edge insertion alone misses graphs where every edge is a bridge, sits next to
a triangle, or is the middle of a diamond; the other two operations reach
those.  Rings of diamonds are also seeded directly.  Children are
deduplicated by canonical form and edges are taken up to the parent's
automorphisms.

Work splits by slices of the parent list (``EnumerationCursor``); the census
is the union over any partition of slices.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import o_of
from .autgroup import (
    M_of,
    are_isomorphic,
    automorphism_group,
    canonical_graph,
    pi_of,
)
from .graph_core import Graph, complete_graph, emit_graph6, parse_graph6

log = logging.getLogger(__name__)

SOFT_LIMIT = 18

# Connected cubic graphs by vertex count, used as a completeness check.
KNOWN_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85, 14: 509, 16: 4060, 18: 41301}
WORKERS_ENV = "CUBICAUT_WORKERS"


def _check_v(v: int) -> None:
    if not isinstance(v, int) or v < 4:
        raise ValueError("vertex count must be an integer >= 4")
    if v % 2:
        raise ValueError("cubic graphs have an even number of vertices")
    if v > SOFT_LIMIT:
        log.warning("enumerating %d-vertex cubic graphs is beyond the tested range", v)


def insert_edge(G: Graph, e1, e2) -> Graph:
    """Subdivide e1 and e2 (new vertices n, n+1) and join the new vertices."""
    if e1 == e2:
        raise ValueError("edges must be distinct")
    n = G.vertex_count
    a, b = n, n + 1
    edges = [e for e in G.edges if e != e1 and e != e2]
    edges += [(e1[0], a), (a, e1[1]), (e2[0], b), (b, e2[1]), (a, b)]
    return Graph.from_edges(n + 2, edges)


def diamond_ring(k: int) -> Graph:
    """k diamonds joined in a cycle through their valence-2 corners (4k vertices)."""
    if k < 2:
        raise ValueError("a ring needs at least two diamonds")
    edges = []
    for i in range(k):
        x, y, z, w = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges += [(x, y), (x, z), (y, z), (y, w), (z, w), (w, (4 * i + 4) % (4 * k))]
    return Graph.from_edges(4 * k, edges)


def insert_diamond(G: Graph, e) -> Graph:
    """Replace edge (s, t) by s - x, diamond x,y,z,w, w - t."""
    n = G.vertex_count
    x, y, z, w = n, n + 1, n + 2, n + 3
    edges = [f for f in G.edges if f != e]
    edges += [(e[0], x), (x, y), (x, z), (y, z), (y, w), (z, w), (w, e[1])]
    return Graph.from_edges(n + 4, edges)


def hang_tetrahedron(G: Graph, e) -> Graph:
    """Subdivide e with p and join p to the root of a new pinched K4."""
    n = G.vertex_count
    p, r, a, b, c, d = range(n, n + 6)
    edges = [f for f in G.edges if f != e]
    edges += [(e[0], p), (p, e[1]), (p, r), (r, a), (r, b), (a, c), (a, d), (b, c), (b, d), (c, d)]
    return Graph.from_edges(n + 6, edges)


def edge_pair_representatives(G: Graph, generators) -> list[tuple[int, int]]:
    """One pair (i < j) of edge indices per orbit of the automorphism group."""
    E = G.edges
    m = len(E)
    index = {e: i for i, e in enumerate(E)}
    maps = []
    for perm in generators:
        img = []
        for u, v in E:
            a, b = perm[u], perm[v]
            img.append(index[(a, b) if a < b else (b, a)])
        maps.append(img)
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            x, parent[x] = parent[x], root
        return root

    for i in range(m):
        for j in range(i + 1, m):
            for img in maps:
                a, b = img[i], img[j]
                q = (a, b) if a < b else (b, a)
                ra, rb = find((i, j)), find(q)
                if ra != rb:
                    lo, hi = min(ra, rb), max(ra, rb)
                    parent[hi] = lo
    return sorted({find((i, j)) for i in range(m) for j in range(i + 1, m)})


def children(G: Graph, op: str = "edge") -> list[Graph]:
    """Canonical children of G under one growth operation, duplicates removed."""
    group = automorphism_group(G)
    seen = {}
    if op == "edge":
        made = (insert_edge(G, G.edges[i], G.edges[j])
                for i, j in edge_pair_representatives(G, group.generators))
    else:
        grow = {"diamond": insert_diamond, "tetrahedron": hang_tetrahedron}[op]
        made = (grow(G, orbit[0]) for orbit in group.edge_orbits)
    for child in made:
        child = canonical_graph(child)
        seen.setdefault(child.edges, child)
    return list(seen.values())


# parent level offset for each operation
OPERATIONS = (("edge", 2), ("diamond", 4), ("tetrahedron", 6))


@dataclass
class EnumerationCursor:
    """Work-splitting token: the slice [start, stop) of the parents of every operation.

    Indices refer to the concatenated parent lists (edge parents first, then
    diamond parents, then tetrahedron parents).  The seeds (K4 and the diamond
    ring) ride with the cursor that starts at 0.
    """

    vertex_count: int
    prefix: tuple[int, int]
    emitted: int = 0

    def to_json(self) -> dict:
        return {"vertex_count": self.vertex_count, "prefix": list(self.prefix), "emitted": self.emitted}


def _sort_key(G: Graph) -> str:
    return emit_graph6(G)


def _work(v: int) -> list[tuple[str, Graph]]:
    out = []
    for op, drop in OPERATIONS:
        if v - drop >= 4:
            out += [(op, P) for P in _census(v - drop)]
    return out


def split(v: int, parts: int) -> list[EnumerationCursor]:
    """Partition the work for v vertices into `parts` contiguous cursors."""
    _check_v(v)
    total = max(1, len(_work(v)))
    parts = max(1, min(parts, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    return [EnumerationCursor(v, (bounds[k], bounds[k + 1])) for k in range(parts)]


def _seeds(v: int) -> list[Graph]:
    if v == 4:
        return [complete_graph(4)]
    if v % 4 == 0 and v >= 8:
        return [diamond_ring(v // 4)]
    return []


def run_cursor(cursor: EnumerationCursor) -> list[Graph]:
    """Canonical graphs produced from the cursor's slice (may overlap other cursors)."""
    v = cursor.vertex_count
    start, stop = cursor.prefix
    found: dict = {}
    if start == 0:
        for seed in _seeds(v):
            G = canonical_graph(seed)
            found[G.edges] = G
    for op, P in _work(v)[start:stop]:
        for child in children(P, op):
            found.setdefault(child.edges, child)
    out = sorted(found.values(), key=_sort_key)
    cursor.emitted = len(out)
    return out


def merge(*batches) -> list[Graph]:
    """Union of cursor outputs, sorted by canonical graph6."""
    found = {}
    for batch in batches:
        for G in batch:
            found.setdefault(G.edges, G)
    return sorted(found.values(), key=_sort_key)


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, workers)


def _run_graph6(args) -> list[str]:
    v, prefix = args
    return [emit_graph6(G) for G in run_cursor(EnumerationCursor(v, prefix))]


@lru_cache(maxsize=None)
def _census(v: int, workers: int = 1) -> tuple[Graph, ...]:
    _check_v(v)
    if workers <= 1 or v <= 8:
        return tuple(run_cursor(EnumerationCursor(v, (0, max(1, len(_work(v)))))))
    cursors = split(v, workers * 4)
    with ProcessPoolExecutor(workers) as pool:
        batches = pool.map(_run_graph6, [(c.vertex_count, c.prefix) for c in cursors])
        graphs = [[parse_graph6(s) for s in b] for b in batches]
    return tuple(merge(*graphs))


def enumerate_cubic(v: int, *, workers: int | None = None) -> list[Graph]:
    """All connected simple cubic graphs on v vertices, one per class, canonically labelled."""
    _check_v(v)
    w = _workers(workers)
    if w > 1 and v > 8:
        # lower levels stay single-process, only the top level fans out
        _work(v)
        return list(_census(v, w))
    return list(_census(v))


# ---------------------------------------------------------------------------
# Statistics over a census


@dataclass
class CensusEntry:
    graph: Graph
    graph6: str
    aut_order: int
    M: int
    pi: int


@lru_cache(maxsize=None)
def census_entries(v: int) -> tuple[CensusEntry, ...]:
    out = []
    for G in enumerate_cubic(v):
        group = automorphism_group(G)
        out.append(CensusEntry(G, emit_graph6(G), group.order, M_of(G, group), pi_of(G, group)))
    return tuple(out)


def _genus_vertices(g: int) -> int:
    if g < 3:
        raise ValueError("cubic simple graphs have genus >= 3")
    v = 2 * (g - 1)
    if v > SOFT_LIMIT + 2:
        raise ValueError(f"genus {g} needs {v} vertices, beyond the feasible census")
    return v


def mu_of(g: int) -> tuple[int, list[Graph]]:
    """Largest |Aut| over connected genus-g cubic graphs, with all attaining classes."""
    entries = census_entries(_genus_vertices(g))
    best = max(e.aut_order for e in entries)
    return best, [e.graph for e in entries if e.aut_order == best]


def mu1_of(g: int) -> tuple[int, list[Graph]]:
    """Largest edge-preserving subgroup order over connected genus-g cubic graphs."""
    entries = census_entries(_genus_vertices(g))
    best = max(e.pi for e in entries)
    return best, [e.graph for e in entries if e.pi == best]


def mu_ratio(g: int) -> Fraction:
    return Fraction(mu_of(g)[0], 1 << o_of(g))


def mu1_ratio(g: int) -> Fraction:
    return Fraction(mu1_of(g)[0], 1 << o_of(g))


@dataclass
class OptimalityReport:
    genus: int
    vertex_count: int
    count: int
    max_aut: int
    winners: list[str]
    winner_M: list[int]
    matches_candidate: list[bool]
    matches_alternate: list[bool] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return len(self.winners) == 1

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "v": self.vertex_count,
            "count": self.count,
            "max_aut": str(self.max_aut),
            "winner_graph6": self.winners,
            "winner_M": self.winner_M,
            "matches_candidate": self.matches_candidate,
            "matches_alternate": self.matches_alternate,
        }


def optimality_census(g: int) -> OptimalityReport:
    """Classes attaining the largest |Aut| in genus g, compared with the candidate."""
    from .candidates import build_genus10_alternate, candidate

    v = _genus_vertices(g)
    entries = census_entries(v)
    best = max(e.aut_order for e in entries)
    winners = [e for e in entries if e.aut_order == best]
    cand = candidate(g)[0] if g >= 9 else None
    alt = build_genus10_alternate() if g == 10 else None
    return OptimalityReport(
        genus=g,
        vertex_count=v,
        count=len(entries),
        max_aut=best,
        winners=[e.graph6 for e in winners],
        winner_M=[e.M for e in winners],
        matches_candidate=[cand is not None and are_isomorphic(e.graph, cand) for e in winners],
        matches_alternate=[alt is not None and are_isomorphic(e.graph, alt) for e in winners],
    )


def census_summary(v: int) -> dict:
    entries = census_entries(v)
    best = max(e.aut_order for e in entries)
    return {
        "v": v,
        "count": len(entries),
        "max_aut": str(best),
        "winner_graph6": [e.graph6 for e in entries if e.aut_order == best],
    }
