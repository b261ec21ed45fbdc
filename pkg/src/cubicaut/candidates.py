"""Candidate extremal cubic graphs C_g and the sharp bound on |Aut|.

Every candidate is a small core (star, triangle, K_{2,3}, square, 5-cycle, a
path, or nothing) with rooted quasi-trees hung off it.  The quasi-trees are

* A_m: complete binary tree with 2^m leaves, a pinched tetrahedron glued to
  each leaf; genus 3*2^m, 2^(genus-1) automorphisms, valence-2 root.
* B_m (m >= 2): the same with 2^(m-2) pinched K_{3,3}; genus 2^m.

``candidate(g)`` evaluates every construction that applies to g, predicts its
group order in closed form and keeps the largest (first listed wins ties).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import greedy_pairing, l_of, o_of
from .graph_core import Graph, bfs_relabel, complete_bipartite, pseudocycle

BRANCHES = (
    "A_stab",
    "B_stab",
    "three_B_star",
    "three_B_triangle",
    "three_A_star",
    "three_A_triangle",
    "K23_core_B",
    "K23_core_A",
    "paired_A_mp",
    "square_four_B",
    "five_cycle_B",
    "five_cycle_A",
    "C7_special",
    "general_case",
)

SHARP_COEFFICIENTS = (Fraction(3), Fraction(3, 2), Fraction(5, 4), Fraction(1))

# Optimal orders for genus 3..8, with the graphs that attain them.
SMALL_GENUS_TABLE = {
    3: (24, "tetrahedron"),
    4: (72, "K33"),
    5: (48, "cube"),
    6: (120, "Petersen"),
    7: (64, "two copies of K33 minus an edge, joined at their valence-2 vertices"),
    8: (336, "Heawood"),
}

# |Aut C_g| for the first candidates, the column verify-tables reproduces.
CANDIDATE_COLUMN = {9: 384, 10: 384, 11: 768, 12: 3072, 13: 3072, 14: 6144, 15: 8192, 16: 32768}


@dataclass(frozen=True)
class CandidateSpec:
    genus: int
    branch: str
    params: dict = field(default_factory=dict)
    predicted_aut: int = 0
    predicted_pi: int | None = None

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise ValueError(f"unknown branch {self.branch!r}")

    @property
    def predicted_coefficient(self) -> Fraction:
        return Fraction(self.predicted_aut, 1 << o_of(self.genus))

    def to_json(self) -> dict:
        c = self.predicted_coefficient
        return {
            "genus": self.genus,
            "branch": self.branch,
            "params": self.params,
            "o": o_of(self.genus),
            "predicted_aut": str(self.predicted_aut),
            "predicted_coefficient": {"num": c.numerator, "den": c.denominator},
            "predicted_pi": None if self.predicted_pi is None else str(self.predicted_pi),
        }


# ---------------------------------------------------------------------------
# Assembly


class _Builder:
    """Accumulates vertices and edges; gadgets return their root vertex."""

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def neighbours(self, v: int) -> list[int]:
        return [b if a == v else a for a, b in self.edges if v in (a, b)]

    def drop_edge(self, u: int, v: int) -> None:
        self.edges.remove((u, v) if (u, v) in self.edges else (v, u))

    def pinched_tetrahedron(self) -> int:
        r, a, b, c, d = (self.vertex() for _ in range(5))
        for u, v in ((a, c), (a, d), (b, c), (b, d), (c, d), (r, a), (r, b)):
            self.edge(u, v)
        return r

    def pinched_k33(self) -> int:
        r = self.vertex()
        left = [self.vertex() for _ in range(3)]
        right = [self.vertex() for _ in range(3)]
        for u in left:
            for v in right:
                if (u, v) != (left[0], right[0]):
                    self.edge(u, v)
        self.edge(r, left[0])
        self.edge(r, right[0])
        return r

    def tree(self, depth: int, leaf: Callable[[], int]) -> int:
        if depth == 0:
            return leaf()
        r = self.vertex()
        self.edge(r, self.tree(depth - 1, leaf))
        self.edge(r, self.tree(depth - 1, leaf))
        return r

    def A(self, m: int) -> int:
        return self.tree(m, self.pinched_tetrahedron)

    def B(self, m: int) -> int:
        return self.tree(m - 2, self.pinched_k33)

    def part(self, coeff: int, exp: int) -> int:
        return self.A(exp) if coeff == 3 else self.B(exp)

    def root_to_triangle(self, r: int) -> int:
        """Replace valence-2 root r by a triangle; r stays as the free corner."""
        c1, c2 = self.neighbours(r)
        self.drop_edge(r, c1)
        self.drop_edge(r, c2)
        t1, t2 = self.vertex(), self.vertex()
        for u, v in ((t1, c1), (t2, c2), (t1, t2), (t1, r), (t2, r)):
            self.edge(u, v)
        return r

    def diamond(self) -> tuple[int, int]:
        """K4 minus an edge; returns its two valence-2 corners."""
        x, y, z, w = (self.vertex() for _ in range(4))
        for u, v in ((x, y), (x, z), (y, z), (y, w), (z, w)):
            self.edge(u, v)
        return x, w

    def graph(self, start: int = 0) -> Graph:
        return bfs_relabel(Graph.from_edges(self.n, self.edges), start)


def _rooted(build: Callable[[_Builder], int]) -> Graph:
    b = _Builder()
    root = build(b)
    return b.graph(root)


def build_A(m: int) -> Graph:
    """A_m with its root relabelled to vertex 0."""
    if m < 0:
        raise ValueError("A_m needs m >= 0")
    return _rooted(lambda b: b.A(m))


def build_B(m: int) -> Graph:
    """B_m with its root relabelled to vertex 0."""
    if m < 2:
        raise ValueError("B_m needs m >= 2")
    return _rooted(lambda b: b.B(m))


def pinched_tetrahedron() -> Graph:
    return build_A(0)


def pinched_k33() -> Graph:
    return build_B(2)


def _stab(b: _Builder, half: Callable[[], int]) -> int:
    c1, c2 = half(), half()
    b.edge(c1, c2)
    return c1


def _star(b: _Builder, roots: list[int]) -> int:
    c = b.vertex()
    for r in roots:
        b.edge(c, r)
    return c


def _ring(b: _Builder, roots: list[int]) -> int:
    ring = [b.vertex() for _ in roots]
    for i, (v, r) in enumerate(zip(ring, roots)):
        b.edge(v, ring[(i + 1) % len(ring)])
        b.edge(v, r)
    return ring[0]


def _k23(b: _Builder, roots: list[int]) -> int:
    x, y = b.vertex(), b.vertex()
    for r in roots:
        v = b.vertex()
        b.edge(x, v)
        b.edge(y, v)
        b.edge(v, r)
    return x


def _core(s: int):
    return {0: _star, 1: _ring, 2: _k23}[s]


def _three(b: _Builder, make: Callable[[], int], s: int) -> int:
    return _core(s)(b, [make() for _ in range(3)])


def _general(b: _Builder, g: int) -> int:
    groups = greedy_pairing(g)
    parts = [(c, e) for c, e in groups if (c, e) not in ((1, 0), (1, 1))]
    leftover = [(c, e) for c, e in groups if (c, e) in ((1, 0), (1, 1))]
    if not parts:
        raise ValueError(f"genus {g} has no quasi-tree part")
    roots = [b.part(c, e) for c, e in parts]
    one = (1, 0) in leftover
    two = (1, 1) in leftover
    if one:
        roots[0] = b.root_to_triangle(roots[0])
    k = len(roots)
    if k == 1:
        if one:
            raise ValueError(f"genus {g}: a lone part with a leftover 1 is not cubic")
        if not two:
            raise ValueError(f"genus {g}: a lone part is handled by the stabilized branches")
        # diamond between the two halves of the only part; r becomes a corner
        r = roots[0]
        _, c2 = b.neighbours(r)
        b.drop_edge(r, c2)
        y, z, w = b.vertex(), b.vertex(), b.vertex()
        for u, v in ((r, y), (r, z), (y, z), (y, w), (z, w), (w, c2)):
            b.edge(u, v)
        return r
    if k == 2:
        anchor, hub = roots[0], roots[0]
    else:
        path = [b.vertex() for _ in range(k - 2)]
        for u, v in zip(path, path[1:]):
            b.edge(u, v)
        b.edge(path[0], roots[0])
        for j, p in enumerate(path):
            b.edge(p, roots[j + 1])
        anchor, hub = path[-1], path[0]
    last = roots[-1]
    if two:
        x, w = b.diamond()
        b.edge(last, x)
        b.edge(w, anchor)
    else:
        b.edge(last, anchor)
    return hub


# ---------------------------------------------------------------------------
# Branch catalogue


def _exp2(x: int) -> int | None:
    """m with x == 2^m, else None."""
    if x >= 1 and x & (x - 1) == 0:
        return x.bit_length() - 1
    return None


def _match(g: int, a: int, s: int, m_min: int) -> int | None:
    if (g - s) % a:
        return None
    m = _exp2((g - s) // a)
    return m if m is not None and m >= m_min else None


def _paired_params(g: int) -> tuple[int, int, int] | None:
    for s in (0, 1, 2):
        if (g - s) % 9:
            continue
        h = (g - s) // 9
        if h.bit_count() == 2:
            m = h.bit_length() - 1
            p = (h & -h).bit_length() - 1
            if m - p >= 5:
                return m, p, s
    return None


def _triangle_factor(s: int) -> int:
    return {0: 6, 1: 6, 2: 12}[s]


def _options(g: int) -> list[tuple[CandidateSpec, Callable[[_Builder], int]]]:
    """All constructions applicable to genus g, with predicted orders."""
    out = []
    o = o_of(g)
    P = 1 << o

    def add(branch, params, aut, build, pi=None):
        out.append((CandidateSpec(g, branch, params, aut, pi), build))

    if (m := _match(g, 3, 0, 1)) is not None:
        add("A_stab", {"m": m}, 1 << (g - 1), lambda b, m=m: _stab(b, lambda: b.A(m - 1)), P)
    if (m := _match(g, 1, 0, 3)) is not None:
        add("B_stab", {"m": m}, 1 << (g - 1), lambda b, m=m: _stab(b, lambda: b.B(m - 1)), P)
    for s in (0, 1):
        if (m := _match(g, 3, s, 2)) is not None:
            branch = "three_B_star" if s == 0 else "three_B_triangle"
            aut = 6 * (1 << (3 * ((1 << m) - 1)))
            pi = None if s == 0 else aut // 3
            add(branch, {"m": m, "s": s}, aut, lambda b, m=m, s=s: _three(b, lambda: b.B(m), s), pi)
    for s in (0, 1):
        if (m := _match(g, 9, s, 0)) is not None:
            branch = "three_A_star" if s == 0 else "three_A_triangle"
            aut = 6 * (1 << (3 * (3 * (1 << m) - 1)))
            pi = None if s == 0 else aut // 3
            add(branch, {"m": m, "s": s}, aut, lambda b, m=m, s=s: _three(b, lambda: b.A(m), s), pi)
    if (m := _match(g, 3, 2, 2)) is not None:
        aut = 12 * (1 << (3 * ((1 << m) - 1)))
        add("K23_core_B", {"m": m, "s": 2}, aut, lambda b, m=m: _three(b, lambda: b.B(m), 2))
    if (m := _match(g, 9, 2, 0)) is not None:
        aut = 12 * (1 << (3 * (3 * (1 << m) - 1)))
        add("K23_core_A", {"m": m, "s": 2}, aut, lambda b, m=m: _three(b, lambda: b.A(m), 2), aut // 3)
    if (mps := _paired_params(g)) is not None:
        m, p, s = mps
        copy_aut = 1 << (3 * (1 << m) - 1 + 3 * (1 << p) - 1)
        aut = _triangle_factor(s) * copy_aut**3

        def paired(b, m=m, p=p, s=s):
            def copy():
                q = b.vertex()
                b.edge(q, b.A(m))
                b.edge(q, b.A(p))
                return q
            return _three(b, copy, s)

        add("paired_A_mp", {"m": m, "p": p, "s": s}, aut, paired, aut // 3 if s == 0 else None)
    if (m := _match(g, 1, 1, 4)) is not None:
        aut = 8 * (1 << (4 * ((1 << (m - 2)) - 1)))
        add("square_four_B", {"m": m}, aut,
            lambda b, m=m: _ring(b, [b.B(m - 2) for _ in range(4)]), aut // 4)
    if (m := _match(g, 5, 1, 2)) is not None:
        aut = 10 * (1 << (5 * ((1 << m) - 1)))
        add("five_cycle_B", {"m": m}, aut, lambda b, m=m: _ring(b, [b.B(m) for _ in range(5)]))
    if (m := _match(g, 15, 1, 0)) is not None:
        aut = 10 * (1 << (5 * (3 * (1 << m) - 1)))
        add("five_cycle_A", {"m": m}, aut, lambda b, m=m: _ring(b, [b.A(m) for _ in range(5)]))
    if g == 7:
        add("C7_special", {}, 32, _c7)
    if _general_applicable(g):
        add("general_case", {"parts": [list(t) for t in greedy_pairing(g)]}, P, lambda b: _general(b, g))
    return out


def _c7(b: _Builder) -> int:
    r = b.pinched_tetrahedron()
    b.edge(r, b.pinched_k33())
    return r


def _general_applicable(g: int) -> bool:
    groups = greedy_pairing(g)
    parts = [t for t in groups if t not in ((1, 0), (1, 1))]
    if not parts:
        return False
    if len(parts) == 1:
        return groups[-1] == (1, 1) and parts[0][0] == 1 and parts[0][1] >= 3
    return True


def branch_options(g: int) -> list[CandidateSpec]:
    return [spec for spec, _ in _options(g)]


def _select(g: int):
    opts = _options(g)
    if not opts:
        raise ValueError(f"no construction applies to genus {g}")
    best = opts[0]
    for opt in opts[1:]:
        if opt[0].predicted_aut > best[0].predicted_aut:
            best = opt
    return best


def candidate_spec(g: int) -> CandidateSpec:
    if g < 9:
        raise ValueError("candidates are defined for genus >= 9; see small_genus_optimum")
    return _select(g)[0]


def candidate(g: int) -> tuple[Graph, CandidateSpec]:
    """The candidate graph of genus g >= 9 and its predicted statistics."""
    if g < 9:
        raise ValueError("candidates are defined for genus >= 9; see small_genus_optimum")
    spec, build = _select(g)
    b = _Builder()
    start = build(b)
    return b.graph(start), spec


def build_branch(g: int, branch: str) -> tuple[Graph, CandidateSpec]:
    """Build a specific (possibly non-winning) construction for genus g."""
    for spec, build in _options(g):
        if spec.branch == branch:
            b = _Builder()
            start = build(b)
            return b.graph(start), spec
    raise ValueError(f"branch {branch} does not apply to genus {g}")


# ---------------------------------------------------------------------------
# Bound and related constructions


def bound(g: int) -> int:
    """Sharp upper bound on |Aut G| over simple cubic graphs of genus g."""
    if g < 3:
        raise ValueError("bound defined for g >= 3")
    if g <= 8:
        return SMALL_GENUS_TABLE[g][0]
    P = 1 << o_of(g)
    coeff = bound_coefficient(g)
    return coeff.numerator * P // coeff.denominator


def bound_coefficient(g: int) -> Fraction:
    if g < 9:
        raise ValueError("coefficient form holds for g >= 9")
    if g in (10, 11, 19, 20, 38):
        return Fraction(3, 2)
    if any(_match(g, 9, s, 0) is not None for s in (0, 1, 2)):
        return Fraction(3)
    if any(_match(g, 3, s, 2) is not None for s in (0, 1, 2)):
        return Fraction(3, 2)
    mps = _paired_params(g)
    if mps is not None and mps[2] == 0:
        return Fraction(3, 2)
    if _match(g, 5, 1, 2) is not None or _match(g, 15, 1, 1) is not None:
        return Fraction(5, 4)
    return Fraction(1)


def small_genus_optimum(g: int) -> Graph:
    """The optimal graph for 3 <= g <= 8."""
    from .graph_core import complete_graph, cube, heawood, petersen

    table = {
        3: lambda: complete_graph(4),
        4: lambda: complete_bipartite(3, 3),
        5: cube,
        6: petersen,
        7: _double_k33_minus_edge,
        8: heawood,
    }
    if g not in table:
        raise ValueError("small genus table covers 3..8")
    return table[g]()


def _k33_minus_edge() -> Graph:
    k33 = complete_bipartite(3, 3)
    return Graph(6, tuple(e for e in k33.edges if e != (0, 3)))


def _double_k33_minus_edge() -> Graph:
    H = _k33_minus_edge()
    edges = list(H.edges) + [(u + 6, v + 6) for u, v in H.edges] + [(0, 6), (3, 9)]
    return Graph.from_edges(12, edges)


def build_genus10_alternate() -> Graph:
    """Length-3 pseudocycle of K_{3,3} with one edge removed."""
    return bfs_relabel(pseudocycle(_k33_minus_edge(), 0, 3, 3))


def linked_B(m: int) -> Graph:
    """B_{m+1} and B_m with their roots joined by an edge (genus 3*2^m).

    The root of B_{m+1} then carries three copies of B_m, so this is the same
    graph as the three-B_m star.
    """
    if m < 2:
        raise ValueError("needs m >= 2")

    def build(b):
        r = b.B(m + 1)
        b.edge(r, b.B(m))
        return r

    return _rooted(build)


@dataclass
class GrowthReport:
    g_max: int
    step_one_violations: list[int]
    step_two_violations: list[int]
    expected_exceptions: list[int]

    @property
    def holds(self) -> bool:
        return not self.step_two_violations and self.step_one_violations == self.expected_exceptions

    def to_json(self) -> dict:
        return {
            "g_max": self.g_max,
            "holds": self.holds,
            "step_one_violations": self.step_one_violations,
            "step_two_violations": self.step_two_violations,
            "expected_exceptions": self.expected_exceptions,
        }


def growth_exceptions(g_max: int) -> list[int]:
    """Genera 9 <= g < g_max of the form 9*2^m+2 (m >= 1) or 9(2^m+2^p)+2, |m-p| >= 5."""
    out = []
    for g in range(9, g_max):
        if _match(g, 9, 2, 1) is not None:
            out.append(g)
        elif (mps := _paired_params(g)) is not None and mps[2] == 2:
            out.append(g)
    return out


def check_growth(g_max: int) -> GrowthReport:
    """Compare predicted |Aut C_g| for consecutive genera 9 <= g < g_max."""
    if g_max < 11:
        raise ValueError("g_max must be at least 11")
    aut = {g: candidate_spec(g).predicted_aut for g in range(9, g_max + 2)}
    one = [g for g in range(9, g_max) if aut[g + 1] < aut[g]]
    two = [g for g in range(9, g_max) if aut[g + 2] <= aut[g]]
    return GrowthReport(g_max, one, two, growth_exceptions(g_max))


def edge_transitive_dominance(g_lo: int = 16, g_hi: int = 2048) -> list[int]:
    """Genera in [g_lo, g_hi] where 2^o(g) fails to exceed 384(g-1)."""
    return [g for g in range(g_lo, g_hi + 1) if (1 << o_of(g)) <= 384 * (g - 1)]


def tutte_column(g: int) -> int:
    """Edge-transitive comparison column: 48(g-1), or 24(g-1) for 9 <= g <= 12."""
    return 24 * (g - 1) if 9 <= g <= 12 else 48 * (g - 1)


__all__ = [
    "BRANCHES",
    "CANDIDATE_COLUMN",
    "CandidateSpec",
    "SHARP_COEFFICIENTS",
    "SMALL_GENUS_TABLE",
    "GrowthReport",
    "bound",
    "bound_coefficient",
    "branch_options",
    "build_A",
    "build_B",
    "build_branch",
    "build_genus10_alternate",
    "candidate",
    "candidate_spec",
    "check_growth",
    "edge_transitive_dominance",
    "growth_exceptions",
    "l_of",
    "linked_B",
    "pinched_k33",
    "pinched_tetrahedron",
    "small_genus_optimum",
    "tutte_column",
]
