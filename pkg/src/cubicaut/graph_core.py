"""Immutable simple graphs and the structural operations used to build cubic
graphs: genus, pinching, stabilization, tree roots, attachment, pseudocycles,
and graph6 / DOT I/O.

Vertices are the integers 0..n-1 and edges are stored as sorted (u, v) pairs
with u < v, so two graphs with the same labelled structure compare equal.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

Edge = tuple[int, int]
Root = Union[int, Edge]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.vertex_count} vertices")
            norm.append(_norm(u, v))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(vertex_count, tuple((int(u), int(v)) for u, v in edges))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edge_set

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]."""
        if sorted(perm) != list(range(self.vertex_count)):
            raise ValueError("relabel needs a permutation of the vertices")
        return Graph(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={len(self.edges)}, g6={emit_graph6(self)!r})"


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.vertex_count
    return Graph(offset, tuple(edges))


# ---------------------------------------------------------------------------
# Basic predicates


def genus(G: Graph) -> int:
    """Arithmetic genus e - v + 1 (connectivity not required)."""
    return G.edge_count - G.vertex_count + 1


def is_cubic(G: Graph) -> bool:
    return all(len(a) == 3 for a in G.adjacency)


def components(G: Graph) -> list[list[int]]:
    seen = [False] * G.vertex_count
    comps = []
    for s in range(G.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return G.vertex_count <= 1 or len(components(G)) == 1


def is_simple_by_construction(G: Graph) -> bool:
    """Always true: Graph rejects loops and repeated edges on construction."""
    return True


def bfs_order(G: Graph, start: int = 0) -> list[int]:
    """Vertices in BFS order from `start`, then any unreached ones by component."""
    seen = [False] * G.vertex_count
    order = []
    for s in [start] + list(range(G.vertex_count)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def bfs_relabel(G: Graph, start: int = 0) -> Graph:
    order = bfs_order(G, start)
    perm = [0] * G.vertex_count
    for new, old in enumerate(order):
        perm[old] = new
    return G.relabel(perm)


# ---------------------------------------------------------------------------
# Pinching, stabilization, roots, attachment


def pinch(G: Graph, e: Edge) -> Graph:
    """Subdivide edge e once; the new vertex (label n) has valence 2."""
    u, v = _norm(*e)
    if (u, v) not in G.edge_set:
        raise ValueError(f"edge {e} is not in the graph")
    w = G.vertex_count
    edges = [x for x in G.edges if x != (u, v)] + [(u, w), (w, v)]
    return Graph(G.vertex_count + 1, tuple(edges))


@dataclass
class StabilizationReport:
    """Result of contracting every maximal path through valence-2 vertices.

    The result may be a multigraph, so it is kept as an edge list (with
    repeats) plus loops rather than as a Graph.  Components that are bare
    cycles cannot be stabilized; they are counted and dropped.
    """

    vertex_count: int
    edges: list[Edge]
    loops: list[int]
    created_loops: int
    created_parallel_edges: int
    cycle_components: int
    vertex_map: dict[int, int] = field(default_factory=dict)

    @property
    def is_simple(self) -> bool:
        return self.created_loops == 0 and self.created_parallel_edges == 0

    @property
    def genus(self) -> int:
        return len(self.edges) + len(self.loops) - self.vertex_count + 1

    def as_graph(self) -> Graph:
        if not self.is_simple:
            raise ValueError("stabilization produced loops or parallel edges")
        return Graph(self.vertex_count, tuple(self.edges))


def stabilize(G: Graph) -> StabilizationReport:
    adj = G.adjacency
    if any(len(a) <= 1 for a in adj):
        bad = [v for v, a in enumerate(adj) if len(a) <= 1]
        raise ValueError(f"stabilization needs valence >= 2 everywhere; low-valence vertices {bad}")
    stable = [v for v in range(G.vertex_count) if len(adj[v]) >= 3]
    index = {v: i for i, v in enumerate(stable)}

    cycles = sum(1 for comp in components(G) if all(len(adj[v]) == 2 for v in comp))

    used = set()
    multi = []
    loops = []
    for u in stable:
        for first in adj[u]:
            if _norm(u, first) in used:
                continue
            used.add(_norm(u, first))
            prev, cur = u, first
            while len(adj[cur]) == 2:
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                used.add(_norm(cur, nxt))
                prev, cur = cur, nxt
            if cur == u:
                loops.append(index[u])
            else:
                multi.append(_norm(index[u], index[cur]))
    counts = Counter(multi)
    parallel = sum(c - 1 for c in counts.values())
    return StabilizationReport(
        vertex_count=len(stable),
        edges=sorted(multi),
        loops=sorted(loops),
        created_loops=len(loops),
        created_parallel_edges=parallel,
        cycle_components=cycles,
        vertex_map=index,
    )


def tree_root(T: Graph) -> Root:
    """Centre of a tree: a vertex, or an edge when the longest paths have odd length."""
    if T.vertex_count == 0 or T.edge_count != T.vertex_count - 1 or not is_connected(T):
        raise ValueError("tree_root needs a nonempty tree")
    if T.vertex_count == 1:
        return 0
    deg = T.degrees()
    alive = T.vertex_count
    layer = [v for v in range(T.vertex_count) if deg[v] == 1]
    removed = [False] * T.vertex_count
    while alive > 2:
        nxt = []
        for v in layer:
            removed[v] = True
            alive -= 1
            for w in T.adjacency[v]:
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    rest = [v for v in range(T.vertex_count) if not removed[v]]
    return rest[0] if len(rest) == 1 else (rest[0], rest[1])


def attach_at_root(core: Graph, core_vertex: int, appendage: Graph, appendage_root: Root) -> Graph:
    """Attach `appendage` to `core` at `core_vertex`.

    An edge root is pinched first and the new vertex becomes the point of
    attachment.  The two attachment vertices are identified when their valences
    sum to at most 3; otherwise they are joined by a new edge, which needs
    both to have valence at most 2.  Core labels are kept; appendage vertices
    follow them.
    """
    if isinstance(appendage_root, tuple):
        appendage = pinch(appendage, appendage_root)
        root = appendage.vertex_count - 1
    else:
        root = appendage_root
    if not 0 <= core_vertex < core.vertex_count:
        raise ValueError(f"core vertex {core_vertex} out of range")
    if not 0 <= root < appendage.vertex_count:
        raise ValueError(f"appendage root {root} out of range")
    dc, dr = core.degree(core_vertex), appendage.degree(root)
    n = core.vertex_count
    if dc + dr <= 3:
        perm = {}
        nxt = n
        for v in range(appendage.vertex_count):
            if v == root:
                perm[v] = core_vertex
            else:
                perm[v] = nxt
                nxt += 1
        edges = list(core.edges) + [(perm[u], perm[v]) for u, v in appendage.edges]
        return Graph(nxt, tuple(edges))
    if dc <= 2 and dr <= 2:
        edges = list(core.edges) + [(u + n, v + n) for u, v in appendage.edges]
        edges.append((core_vertex, root + n))
        return Graph(n + appendage.vertex_count, tuple(edges))
    raise ValueError(
        f"attachment would give valence > 3 (core vertex valence {dc}, root valence {dr})"
    )


def pseudocycle(H: Graph, u: int, w: int, length: int) -> Graph:
    """`length` copies of H in a ring, copy i's w joined to copy i+1's u."""
    if length < 3:
        raise ValueError("a pseudocycle needs length >= 3")
    if u == w:
        raise ValueError("u and w must differ")
    for v in range(H.vertex_count):
        want = 2 if v in (u, w) else 3
        if H.degree(v) != want:
            raise ValueError(f"H must be cubic except u, w of valence 2 (vertex {v} has {H.degree(v)})")
    k = H.vertex_count
    edges = []
    for i in range(length):
        off = i * k
        edges.extend((a + off, b + off) for a, b in H.edges)
        edges.append((w + off, u + ((i + 1) % length) * k))
    return Graph(k * length, tuple(edges))


# ---------------------------------------------------------------------------
# Small named graphs


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def prism(k: int = 3) -> Graph:
    edges = []
    for i in range(k):
        edges += [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]
    return Graph(2 * k, tuple(edges))


def cube() -> Graph:
    return Graph(8, tuple((i, i ^ (1 << b)) for i in range(8) for b in range(3) if i < i ^ (1 << b)))


def petersen() -> Graph:
    edges = []
    for i in range(5):
        edges += [(i, (i + 1) % 5), (i, 5 + i), (5 + i, 5 + (i + 2) % 5)]
    return Graph(10, tuple(edges))


def lcf(n: int, jumps: Sequence[int], repeats: int) -> Graph:
    """Hamiltonian cubic graph from LCF notation."""
    edges = {_norm(i, (i + 1) % n) for i in range(n)}
    seq = list(jumps) * repeats
    for i, j in enumerate(seq):
        edges.add(_norm(i, (i + j) % n))
    return Graph(n, tuple(edges))


def heawood() -> Graph:
    return lcf(14, [5, -5], 7)


# ---------------------------------------------------------------------------
# graph6 / DOT

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"vertex count {n} too large for graph6")


def emit_graph6(G: Graph) -> str:
    n = G.vertex_count
    bits = []
    es = G.edge_set
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in es else 0)
    bits += [0] * (-len(bits) % 6)
    out = [_encode_n(n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise ValueError(f"invalid graph6 character in {text!r}")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    elif len(data) >= 8 and data[1] == 63:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8
    else:
        raise ValueError(f"truncated graph6 size field in {text!r}")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = data[pos:]
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    for k2 in range(nbits, need * 6):
        if (body[k2 // 6] >> (5 - k2 % 6)) & 1:
            raise ValueError("nonzero padding bits in graph6 body")
    return Graph(n, tuple(edges))


def parse_graph6_stream(text: str) -> list[Graph]:
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def emit_graph6_stream(graphs: Iterable[Graph]) -> str:
    return "".join(emit_graph6(g) + "\n" for g in graphs)


def emit_dot(G: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(G.vertex_count)]
    lines += [f"  {u} -- {v};" for u, v in G.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
