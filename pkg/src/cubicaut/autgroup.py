"""Automorphism groups, edge orbits and canonical forms of simple graphs.

The engine is individualization-refinement: colour refinement (1-WL with a
canonical renumbering of colour classes) turns a vertex colouring into an
equitable one, and a search tree branches on the first smallest non-singleton
cell.  Two searches are built on that:

* ``automorphism_group`` walks the first path of the tree and, level by level,
  decides which vertices of the target cell lie in the orbit of the chosen base
  point.  The group order is the product of those orbit lengths.
* ``canonical_form`` explores the whole tree, pruned by trace comparison and by
  automorphisms discovered from equivalent leaves, and keeps the minimal leaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph_core import Edge, Graph, components, emit_graph6, is_connected, is_cubic

Coloring = list[int]


# ---------------------------------------------------------------------------
# Refinement primitives


def _normalize(colors: Sequence) -> Coloring:
    values = sorted(set(colors))
    index = {c: i for i, c in enumerate(values)}
    return [index[c] for c in colors]


def _refine(adj, colors: Coloring) -> tuple[Coloring, tuple]:
    """Colour refinement to the coarsest equitable refinement.

    New colours are ranks of (old colour, sorted neighbour colours), so the
    result and the returned trace are isomorphism invariant.
    """
    n = len(colors)
    k = (max(colors) + 1) if n else 0
    trace = []
    while True:
        sigs = [(colors[v], tuple(sorted([colors[u] for u in adj[v]]))) for v in range(n)]
        keys = sorted(set(sigs))
        trace.append(tuple(keys))
        if len(keys) == k:
            return colors, tuple(trace)
        index = {key: i for i, key in enumerate(keys)}
        colors = [index[s] for s in sigs]
        k = len(keys)


def _individualize(colors: Coloring, v: int) -> Coloring:
    out = [2 * c for c in colors]
    out[v] += 1
    return out


def _is_discrete(colors: Coloring) -> bool:
    return len(set(colors)) == len(colors)


def _target_cell(colors: Coloring) -> list[int]:
    """Vertices of the first smallest non-singleton colour class."""
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best or []


def vertex_invariant(G: Graph) -> list[tuple]:
    """Per-vertex BFS layer sizes and triangle count; isomorphism invariant."""
    adj = G.adjacency
    n = G.vertex_count
    inv = []
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        frontier = [s]
        layers = []
        while frontier:
            layers.append(len(frontier))
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        nb = adj[s]
        tri = sum(1 for i in range(len(nb)) for j in range(i + 1, len(nb)) if G.has_edge(nb[i], nb[j]))
        inv.append((tuple(layers), tri))
    return inv


def _initial_coloring(G: Graph, colors: Sequence | None, invariant: bool) -> Coloring:
    base = list(colors) if colors is not None else [0] * G.vertex_count
    if len(base) != G.vertex_count:
        raise ValueError("colouring length must equal the vertex count")
    base = _normalize(base)
    if invariant:
        inv = vertex_invariant(G)
        return _normalize([(c, i) for c, i in zip(base, inv)])
    return base


def _is_automorphism(G: Graph, perm: Sequence[int]) -> bool:
    es = G.edge_set
    for u, v in G.edges:
        a, b = perm[u], perm[v]
        if (a, b) not in es and (b, a) not in es:
            return False
    return True


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]

    def add_perm(self, perm: Sequence[int]) -> None:
        for x, y in enumerate(perm):
            self.union(x, y)

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())


# ---------------------------------------------------------------------------
# Automorphism group


@dataclass
class PermutationGroup:
    degree: int
    generators: list[tuple[int, ...]]
    order: int
    vertex_orbits: list[list[int]]
    edge_orbits: list[list[Edge]]
    base: list[int] = field(default_factory=list)
    basic_orbit_lengths: list[int] = field(default_factory=list)

    def orbit_of_edge(self, e: Edge) -> list[Edge]:
        e = (min(e), max(e))
        for orb in self.edge_orbits:
            if e in orb:
                return orb
        raise ValueError(f"edge {e} not in graph")


def _edge_orbits(G: Graph, generators: Sequence[Sequence[int]]) -> list[list[Edge]]:
    index = {e: i for i, e in enumerate(G.edges)}
    uf = _UnionFind(len(G.edges))
    for perm in generators:
        for i, (u, v) in enumerate(G.edges):
            a, b = perm[u], perm[v]
            uf.union(i, index[(a, b) if a < b else (b, a)])
    return sorted([[G.edges[i] for i in cls] for cls in uf.classes()], key=lambda o: (len(o), o))


def _find_iso(G: Graph, adj, path, level: int, c2: Coloring, first_guess: Sequence[int]):
    """Search for an automorphism taking the first-path node at `level` to c2.

    `path[level]` is (colouring, trace, chosen vertex); the last entry holds
    the discrete leaf.  Returns a permutation or None.
    """
    c1, _, v1 = path[level]
    if v1 is None:
        inv2 = [0] * len(c2)
        for v, c in enumerate(c2):
            inv2[c] = v
        perm = [inv2[c] for c in c1]
        return perm if _is_automorphism(G, perm) else None
    target = c1[v1]
    cands = [w for w, c in enumerate(c2) if c == target]
    guess = first_guess[level]
    if guess in cands:
        cands.remove(guess)
        cands.insert(0, guess)
    want = path[level + 1][1]
    for w in cands:
        cw, tw = _refine(adj, _individualize(c2, w))
        if tw != want:
            continue
        perm = _find_iso(G, adj, path, level + 1, cw, first_guess)
        if perm is not None:
            return perm
    return None


def automorphism_group(G: Graph, colors: Sequence | None = None, *, invariant: bool = True) -> PermutationGroup:
    """Automorphism group of G (optionally of a vertex-coloured G).

    Colours are arbitrary comparable labels; automorphisms must preserve them.
    """
    n = G.vertex_count
    adj = G.adjacency
    c, t = _refine(adj, _initial_coloring(G, colors, invariant))
    path = []
    while not _is_discrete(c):
        v = _target_cell(c)[0]
        path.append((c, t, v))
        c, t = _refine(adj, _individualize(c, v))
    path.append((c, t, None))

    base = [v for _, _, v in path[:-1]]
    uf = _UnionFind(n)
    gens: list[tuple[int, ...]] = []
    lengths = []
    for level in range(len(path) - 2, -1, -1):
        c, _, v = path[level]
        cell = [w for w, col in enumerate(c) if col == c[v]]
        want = path[level + 1][1]
        for w in cell:
            if uf.find(w) == uf.find(v):
                continue
            cw, tw = _refine(adj, _individualize(c, w))
            if tw != want:
                continue
            perm = _find_iso(G, adj, path, level + 1, cw, base + [None])
            if perm is not None:
                gens.append(tuple(perm))
                uf.add_perm(perm)
        lengths.append(uf.size[uf.find(v)])
    lengths.reverse()
    order = 1
    for x in lengths:
        order *= x
    return PermutationGroup(
        degree=n,
        generators=gens,
        order=order,
        vertex_orbits=uf.classes(),
        edge_orbits=_edge_orbits(G, gens),
        base=base,
        basic_orbit_lengths=lengths,
    )


def aut_order(G: Graph) -> int:
    return automorphism_group(G).order


# ---------------------------------------------------------------------------
# Canonical form


def canonical_labeling(G: Graph, colors: Sequence | None = None, *, invariant: bool = True) -> list[int]:
    """A relabelling perm (old -> new) such that G.relabel(perm) is canonical."""
    n = G.vertex_count
    adj = G.adjacency
    base = _normalize(list(colors)) if colors is not None else [0] * n
    c0, t0 = _refine(adj, _initial_coloring(G, colors, invariant))
    edges = G.edges
    es = G.edge_set

    state = {"best_key": None, "best_trace": None, "best_cert": None, "best_lab": None, "best_path": None}
    auts: list[list[int]] = []

    def cert_of(lab):
        ce = sorted((lab[u], lab[v]) if lab[u] < lab[v] else (lab[v], lab[u]) for u, v in edges)
        cols = [0] * n
        for v in range(n):
            cols[lab[v]] = base[v]
        return (tuple(cols), tuple(ce))

    def orbit_pruned(w, tried, prefix):
        if not tried:
            return False
        uf = _UnionFind(n)
        for a in auts:
            if all(a[p] == p for p in prefix):
                uf.add_perm(a)
        rw = uf.find(w)
        return any(uf.find(x) == rw for x in tried)

    # Returns the depth to which the search should unwind (for the jump back
    # after an automorphism that maps the best path onto the current one).
    def dfs(c, traces, prefix, cmp_state):
        # cmp_state: 0 equal so far with best path, -1 already smaller (new best coming)
        bt = state["best_trace"]
        if bt is not None and cmp_state == 0:
            d = len(traces) - 1
            if d < len(bt):
                if traces[d] > bt[d]:
                    return None
                if traces[d] < bt[d]:
                    cmp_state = -1
            else:
                return None
        if _is_discrete(c):
            lab = c
            cert = cert_of(lab)
            key = (tuple(traces), cert)
            if state["best_key"] is None or key < state["best_key"]:
                state.update(best_key=key, best_trace=tuple(traces), best_cert=cert,
                             best_lab=list(lab), best_path=list(prefix))
                return None
            if key == state["best_key"]:
                inv = [0] * n
                for v in range(n):
                    inv[lab[v]] = v
                best_lab = state["best_lab"]
                perm = [inv[best_lab[v]] for v in range(n)]
                if _is_automorphism(G, perm):
                    auts.append(perm)
                    # jump back to where this path leaves the best path
                    bp = state["best_path"]
                    k = 0
                    while k < len(prefix) and k < len(bp) and prefix[k] == bp[k]:
                        k += 1
                    return k
            return None
        cell = _target_cell(c)
        tried = []
        for w in cell:
            if orbit_pruned(w, tried, prefix):
                continue
            tried.append(w)
            cw, tw = _refine(adj, _individualize(c, w))
            jump = dfs(cw, traces + [tw], prefix + [w], cmp_state)
            if jump is not None and jump < len(prefix):
                return jump
            # a fresh best may have been installed below; compare again
            if state["best_path"] is not None and state["best_path"][:len(prefix)] == prefix:
                cmp_state = 0
        return None

    dfs(c0, [t0], [], 0)
    return state["best_lab"]


def canonical_form(G: Graph, colors: Sequence | None = None) -> str:
    """graph6 string of the canonical relabelling; equal iff isomorphic.

    With a colouring the colour ranks, read in canonical vertex order, are
    appended after a semicolon.
    """
    lab = canonical_labeling(G, colors)
    g6 = emit_graph6(G.relabel(lab))
    if colors is None:
        return g6
    ranks = _normalize(list(colors))
    by_label = [0] * G.vertex_count
    for v, new in enumerate(lab):
        by_label[new] = ranks[v]
    return g6 + ";" + ",".join(map(str, by_label))


def canonical_graph(G: Graph) -> Graph:
    return G.relabel(canonical_labeling(G))


def are_isomorphic(G: Graph, H: Graph) -> bool:
    if G.vertex_count != H.vertex_count or G.edge_count != H.edge_count:
        return False
    if sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(G) == canonical_form(H)


# ---------------------------------------------------------------------------
# Orbit statistics


def wormald_bound(G: Graph) -> int:
    """3n * 2^n for a cubic graph on 2n vertices."""
    n = G.vertex_count // 2
    return 3 * n * (1 << n)


def group_order_divides_wormald(G: Graph, group: PermutationGroup | None = None) -> bool:
    if not is_cubic(G):
        raise ValueError("Wormald divisibility is stated for cubic graphs")
    order = (group or automorphism_group(G)).order
    return wormald_bound(G) % order == 0


def edge_orbits(G: Graph, group: PermutationGroup | None = None) -> list[list[Edge]]:
    return (group or automorphism_group(G)).edge_orbits


def M_of(G: Graph, group: PermutationGroup | None = None) -> int:
    """Number of edges in a smallest edge orbit."""
    orbits = edge_orbits(G, group)
    if not orbits:
        raise ValueError("graph has no edges")
    return min(len(o) for o in orbits)


def is_edge_transitive(G: Graph, group: PermutationGroup | None = None) -> bool:
    return G.edge_count > 0 and len(edge_orbits(G, group)) == 1


def edge_transitive_bound(g: int) -> int:
    """Largest automorphism group an edge-transitive cubic graph of genus g can have."""
    if g < 2:
        raise ValueError("bound stated for g >= 2")
    return 384 * (g - 1)


def edge_preserving_order(G: Graph, e: Edge) -> int:
    """Order of the subgroup preserving {u, v} setwise, by colouring u and v."""
    u, v = e
    if not G.has_edge(u, v):
        raise ValueError(f"edge {e} not in graph")
    colors = [0] * G.vertex_count
    colors[u] = colors[v] = 1
    return automorphism_group(G, colors).order


def pi_of(G: Graph, group: PermutationGroup | None = None) -> int:
    """max over edges of |Aut'_e| = |Aut| / (smallest edge orbit)."""
    group = group or automorphism_group(G)
    return group.order // M_of(G, group)


def mu_ratio(order: int, o: int) -> Fraction:
    return Fraction(order, 1 << o)


# ---------------------------------------------------------------------------
# Minimal orbit structure


WHOLE_GRAPH = "whole_graph"
DISJOINT_STARS = "disjoint_stars"
DISJOINT_EDGES = "disjoint_edges"
DISJOINT_CYCLES = "disjoint_cycles"


@dataclass
class OrbitClassification:
    kind: str
    orbit: list[Edge]
    star_count: int = 0
    edge_count: int = 0
    cycle_lengths: list[int] = field(default_factory=list)


class OrbitStructureError(RuntimeError):
    """A minimal edge orbit outside the four possible shapes."""


def classify_minimal_orbit(G: Graph, group: PermutationGroup | None = None) -> OrbitClassification:
    if not (is_cubic(G) and is_connected(G)):
        raise ValueError("classification is defined for connected cubic graphs")
    group = group or automorphism_group(G)
    orbit = min(group.edge_orbits, key=lambda o: (len(o), o))
    if len(orbit) == G.edge_count:
        return OrbitClassification(WHOLE_GRAPH, orbit)
    verts = sorted({x for e in orbit for x in e})
    local = {v: i for i, v in enumerate(verts)}
    sub = Graph(len(verts), tuple((local[u], local[v]) for u, v in orbit))
    comps = components(sub)
    degs = sub.degrees()
    shapes = []
    for comp in comps:
        cd = sorted(degs[v] for v in comp)
        ne = sum(degs[v] for v in comp) // 2
        if cd == [1, 1]:
            shapes.append(("edge", len(comp)))
        elif cd == [1, 1, 1, 3]:
            shapes.append(("star", len(comp)))
        elif all(d == 2 for d in cd) and ne == len(comp):
            shapes.append(("cycle", len(comp)))
        else:
            shapes.append(("other", len(comp)))
    kinds = {s for s, _ in shapes}
    if kinds == {"star"}:
        return OrbitClassification(DISJOINT_STARS, orbit, star_count=len(shapes))
    if kinds == {"edge"}:
        return OrbitClassification(DISJOINT_EDGES, orbit, edge_count=len(shapes))
    if kinds == {"cycle"}:
        comp_of = {}
        for i, comp in enumerate(comps):
            for v in comp:
                comp_of[verts[v]] = i
        for u, v in G.edges:
            if u in comp_of and v in comp_of and comp_of[u] != comp_of[v]:
                raise OrbitStructureError(f"cycles of the minimal orbit are adjacent via {(u, v)}")
        return OrbitClassification(DISJOINT_CYCLES, orbit, cycle_lengths=sorted(n for _, n in shapes))
    raise OrbitStructureError(f"minimal orbit has component shapes {shapes}")


def group_report(G: Graph, group: PermutationGroup | None = None) -> dict:
    """JSON-ready summary used by the command line."""
    group = group or automorphism_group(G)
    return {
        "graph6": emit_graph6(G),
        "aut_order": str(group.order),
        "vertex_orbits": group.vertex_orbits,
        "edge_orbits": [[list(e) for e in o] for o in group.edge_orbits],
        "M": M_of(G, group) if G.edge_count else 0,
        "pi": str(pi_of(G, group)) if G.edge_count else str(group.order),
        "edge_transitive": is_edge_transitive(G, group),
    }
