"""Decomposition length l(g), deficiency o(g) and checks of the inequalities
built on them.

A genus g is written as a sum of terms a * 2**n with a in {1, 3}; l(g) is the
fewest terms needed and o(g) = g - l(g).  The exact value comes from a parity
recurrence (the source of truth); the left-to-right binary pairing is kept as a
separate routine and cross-checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable


@dataclass(frozen=True)
class GenusDecomposition:
    value: int
    parts: tuple[tuple[int, int], ...]  # (coefficient, exponent), exponents decreasing

    def __post_init__(self):
        if sum(a << n for a, n in self.parts) != self.value:
            raise ValueError(f"parts {self.parts} do not sum to {self.value}")
        exps = [n for _, n in self.parts]
        if any(x <= y for x, y in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly decreasing")
        if any(a not in (1, 3) for a, _ in self.parts):
            raise ValueError("coefficients must be 1 or 3")

    @property
    def length(self) -> int:
        return len(self.parts)

    def terms(self) -> list[int]:
        return [a << n for a, n in self.parts]


def _check_positive(g: int) -> None:
    if not isinstance(g, int) or isinstance(g, bool):
        raise TypeError(f"expected an int, got {type(g).__name__}")
    if g < 1:
        raise ValueError(f"l is defined for g >= 1, got {g}")


@lru_cache(maxsize=None)
def _length(g: int) -> int:
    # An even g never uses exponent 0 in a minimal witness (two odd terms at 2**0
    # merge into one), so l(g) = l(g/2).  An odd g uses exactly one of 1 or 3.
    if g == 0:
        return 0
    if g % 2 == 0:
        return _length(g // 2)
    best = _length(g - 1)
    if g >= 3:
        best = min(best, _length(g - 3))
    return 1 + best


def l_of(g: int) -> int:
    """Minimum number of terms a*2**n (a in {1, 3}) summing to g."""
    _check_positive(g)
    return _length(g)


def o_of(g: int) -> int:
    """Deficiency o(g) = g - l(g)."""
    return g - l_of(g)


def length_table(n_max: int) -> list[int]:
    """l(g) for 0 <= g <= n_max (entry 0 is 0), filled by the parity recurrence."""
    table = [0] * (n_max + 1)
    for g in range(1, n_max + 1):
        if g % 2 == 0:
            table[g] = table[g // 2]
        else:
            best = table[g - 1]
            if g >= 3 and table[g - 3] < best:
                best = table[g - 3]
            table[g] = best + 1
    return table


def greedy_pairing(g: int) -> list[tuple[int, int]]:
    """Read the binary expansion left to right, grouping '10' and '11'.

    Returns the (coefficient, exponent) parts in the order they are read;
    a trailing unpaired 1 becomes the part (1, 0).
    """
    _check_positive(g)
    bits = bin(g)[2:]
    width = len(bits)
    parts = []
    i = 0
    while i < width:
        if bits[i] == "0":
            i += 1
            continue
        pos = width - 1 - i
        if i + 1 < width:
            if bits[i + 1] == "1":
                parts.append((3, pos - 1))
            else:
                parts.append((1, pos))
            i += 2
        else:
            parts.append((1, 0))
            i += 1
    return parts


def greedy_length(g: int) -> int:
    return len(greedy_pairing(g))


def decompose(g: int) -> GenusDecomposition:
    """Minimal witness for l(g); ties go to the larger leading term.

    Among all minimal witnesses the one whose term values, read in decreasing
    order, are lexicographically largest is returned (57 -> 48 + 8 + 1).
    """
    k = l_of(g)
    parts = []
    rest = g
    while rest:
        top = rest.bit_length()
        candidates = sorted(
            {(a << n, a, n) for n in range(top) for a in (1, 3) if a << n <= rest},
            reverse=True,
        )
        for term, a, n in candidates:
            remaining = rest - term
            if (_length(remaining) if remaining else 0) == k - 1:
                parts.append((a, n))
                rest = remaining
                k -= 1
                break
        else:  # pragma: no cover - l_of guarantees a witness exists
            raise AssertionError(f"no witness found for {g}")
    return GenusDecomposition(g, tuple(parts))


def quantity_B(s: int, h: int) -> int:
    """s*l(h) - l(s*h)."""
    _check_positive(s)
    _check_positive(h)
    return s * l_of(h) - l_of(s * h)


def quantity_A(s: int, h: int) -> int:
    """s*l(h) - l(s*h) - floor((s-1)/2)."""
    return quantity_B(s, h) - (s - 1) // 2


# ---------------------------------------------------------------------------
# Finite-range verification of the inequality machinery.

STRICT, EQUALITY, FAILS = "strict", "equality", "fails"


@dataclass
class InequalityReport:
    statement_id: str
    statement: str
    checked_range: list[tuple[int, int]]
    holds: bool
    counts: dict[str, int]
    equality_points: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    valid_from: int | None = None
    notes: str = ""

    def __post_init__(self):
        if bool(self.counterexamples) == self.holds:
            raise ValueError(f"{self.statement_id}: counterexamples must be nonempty iff holds is false")

    def to_json(self) -> dict:
        return {
            "statement_id": self.statement_id,
            "statement": self.statement,
            "range": [list(r) for r in self.checked_range],
            "holds": self.holds,
            "counts": dict(self.counts),
            "equality_points": [_jsonable(p) for p in self.equality_points],
            "counterexamples": [_jsonable(p) for p in self.counterexamples],
            "valid_from": self.valid_from,
            "notes": self.notes,
        }


def _jsonable(point):
    return list(point) if isinstance(point, tuple) else point


def _cmp(lhs: int, rhs: int) -> str:
    if lhs < rhs:
        return STRICT
    if lhs == rhs:
        return EQUALITY
    return FAILS


def _lt_pow2(k: int, x: int) -> str:
    """Compare k against 2**x without building huge powers when x is large."""
    if x < 0:
        return FAILS if k > 0 else _cmp(k, 0)
    if k.bit_length() <= x - 1:
        return STRICT
    return _cmp(k, 1 << x)


def _sweep(
    statement_id: str,
    statement: str,
    points: Iterable,
    status: Callable[[object], str],
    lo: int,
    hi: int,
    *,
    strict: bool = False,
    expected_equality: set | None = None,
    record_equality: bool = True,
) -> InequalityReport:
    """Evaluate `status` on every point and compare with the claimed strictness.

    `strict` claims no equality anywhere; `expected_equality` claims the exact
    set of equality points.  `valid_from` is the smallest start from which the
    claim holds through the end of the range (points are assumed ordered).
    """
    counts = {STRICT: 0, EQUALITY: 0, FAILS: 0}
    equality_points = []
    bad = []
    for p in points:
        st = status(p)
        counts[st] += 1
        if st == EQUALITY:
            if record_equality:
                equality_points.append(p)
            if strict or (expected_equality is not None and p not in expected_equality):
                bad.append(p)
        elif st == FAILS:
            bad.append(p)
    if expected_equality is not None:
        missing = sorted(expected_equality - set(equality_points))
        missing = [p for p in missing if lo <= (p if isinstance(p, int) else p[0]) <= hi]
        bad.extend(missing)
    valid_from = lo
    if bad:
        ints = [p for p in bad if isinstance(p, int)]
        valid_from = max(ints) + 1 if len(ints) == len(bad) else None
    return InequalityReport(
        statement_id=statement_id,
        statement=statement,
        checked_range=[(lo, hi)],
        holds=not bad,
        counts=counts,
        equality_points=equality_points,
        counterexamples=bad,
        valid_from=valid_from,
    )


def _identity(ok: bool) -> str:
    return EQUALITY if ok else FAILS


def _daily_reports(max_k: int, table: list[int]) -> list[InequalityReport]:
    def o(x: int) -> int:
        return x - table[x]

    ks = range(1, max_k + 1)
    reports = [
        _sweep(
            "daily.1", "3/2 k < 2^o(k+1)", ks,
            lambda k: _lt_pow2(3 * k, o(k + 1) + 1), 1, max_k, strict=True,
        ),
        _sweep(
            "daily.2", "k < 2^(2 + o(ceil(k/6) + 1)), k >= 1", ks,
            lambda k: _lt_pow2(k, 2 + o(-(-k // 6) + 1)), 1, max_k, strict=True,
        ),
        _sweep(
            "daily.3", "k < 2^o(ceil(2k/3) + 1)", ks,
            lambda k: _lt_pow2(k, o(-(-2 * k // 3) + 1)), 1, max_k, strict=True,
        ),
        _sweep(
            "daily.4", "3k < 2^o(2k - 2), k >= 4", range(4, max_k + 1),
            lambda k: _lt_pow2(3 * k, o(2 * k - 2)), 4, max_k, strict=True,
        ),
        _sweep(
            "daily.5", "k <= 2^o(k-1), k >= 4, strict for k >= 5", range(4, max_k + 1),
            lambda k: _lt_pow2(k, o(k - 1)), 4, max_k, expected_equality={4},
        ),
        _sweep(
            "daily.6", "k <= 2^floor((k+1)/2), strict for k != 2, 4", ks,
            lambda k: _lt_pow2(k, (k + 1) // 2), 1, max_k, expected_equality={2, 4},
        ),
        _sweep(
            "daily.7", "o(ceil(k/2)+1) - floor(k/6) >= o(ceil(k/8)+1)", ks,
            lambda k: _cmp(o(-(-k // 8) + 1), o(-(-k // 2) + 1) - k // 6), 1, max_k,
        ),
        _sweep(
            "daily.8", "k <= 2^o(ceil(k/2)+1), strict for k != 2, 4, 8", ks,
            lambda k: _lt_pow2(k, o(-(-k // 2) + 1)), 1, max_k, expected_equality={2, 4, 8},
        ),
    ]
    return reports


def _ceil_half_log2(a: int) -> int:
    """ceil(log2(a) / 2) computed exactly: the least t with 4**t >= a."""
    t = 0
    while (1 << (2 * t)) < a:
        t += 1
    return t


def _l_function_reports(max_h: int, table: list[int]) -> list[InequalityReport]:
    def o(x: int) -> int:
        return x - table[x]

    def single_term(a: int) -> bool:
        while a % 2 == 0:
            a //= 2
        return a in (1, 3)

    aa = range(1, max_h + 1)
    reports = [
        _sweep(
            "lfun.1", "l(a) = 1 iff a = 2^m or 3*2^m", aa,
            lambda a: _identity((table[a] == 1) == single_term(a)), 1, max_h, record_equality=False,
        ),
        _sweep(
            "lfun.2", "l(a) <= ceil(log2(a)/2), a >= 2", range(2, max_h + 1),
            lambda a: _cmp(table[a], _ceil_half_log2(a)), 2, max_h, record_equality=False,
        ),
    ]
    reports[-1].notes = "a = 1 excluded: ceil(log2(1)/2) = 0 < l(1) = 1"

    # l(ab) <= 2 l(a) l(b) over every factor pair with ab <= max_h.
    counts = {STRICT: 0, EQUALITY: 0, FAILS: 0}
    bad, eq = [], []
    for a in range(1, max_h + 1):
        la = table[a]
        for b in range(a, max_h // a + 1):
            st = _cmp(table[a * b], 2 * la * table[b])
            counts[st] += 1
            if st == FAILS:
                bad.append((a, b))
            elif st == EQUALITY:
                eq.append((a, b))
    reports.append(InequalityReport(
        "lfun.3", "l(ab) <= 2 l(a) l(b)", [(1, max_h)], not bad, counts, eq, bad,
        notes="pairs a <= b with ab <= max_h",
    ))

    reports += [
        _sweep("lfun.4", "l(2a) = l(a)", aa,
               lambda a: _identity(table[2 * a] == table[a]), 1, max_h, record_equality=False),
        _sweep("lfun.5", "o(2a) = o(a) + a", aa,
               lambda a: _identity(o(2 * a) == o(a) + a), 1, max_h, record_equality=False),
        _sweep("lfun.6", "l(3a) <= 2 l(a)", aa,
               lambda a: _cmp(table[3 * a], 2 * table[a]), 1, max_h),
        _sweep("lfun.7", "l(a+1) <= l(a) + 1", aa,
               lambda a: _cmp(table[a + 1], table[a] + 1), 1, max_h, record_equality=False),
        _sweep("lfun.8", "o(a) = 1 iff a = 2; o(a) >= 2 for a >= 3", aa,
               lambda a: _identity((o(a) == 1) == (a == 2) and (a < 3 or o(a) >= 2)),
               1, max_h, record_equality=False),
        _sweep("lfun.9", "2^l(a) <= 2 sqrt(a), strict for a > 1", aa,
               # 2^l <= 2 sqrt(a)  <=>  4^(l-1) <= a
               lambda a: _cmp(1 << (2 * (table[a] - 1)), a), 1, max_h, expected_equality={1}),
    ]

    far_pairs = set()
    for m in range(0, max_h.bit_length() + 1):
        for p in range(m + 5, max_h.bit_length() + 1):
            v = 3 * ((1 << m) + (1 << p))
            if v <= max_h:
                far_pairs.add(v)
    reports.append(_sweep(
        "lfun.10", "l(a) = 2 and l(3a) = 4 iff a = 3(2^m + 2^p), |m-p| >= 5", aa,
        lambda a: _identity((table[a] == 2 and table[3 * a] == 4) == (a in far_pairs)),
        1, max_h, record_equality=False,
    ))
    return reports


# Rows of the s <= 15 table: (relation, coefficient of l(h), comment kind).
# comment kinds: "false" always fails, "strict" always strict, "lh1" strict
# unless l(h) = 1, "lh3" strict once l(h) >= 3.
LONG_TABLE = {
    1: ("=", 0, "false"),
    2: ("=", 1, "lh1"),
    3: (">=", 1, "lh3"),
    4: ("=", 3, "strict"),
    5: (">=", 3, "lh1"),
    6: (">=", 4, "strict"),
    7: (">=", 4, "lh1"),
    8: ("=", 7, "strict"),
    9: (">=", 7, "strict"),
    10: (">=", 8, "strict"),
    11: (">=", 8, "strict"),
    12: (">=", 10, "strict"),
    13: (">=", 10, "strict"),
    14: (">=", 11, "strict"),
    15: (">=", 11, "strict"),
}


def main_status(s: int, h: int, table: list[int]) -> str:
    """Compare B(s, h) with floor((s+1)/2)."""
    b = s * table[h] - table[s * h]
    return _cmp((s + 1) // 2, b)


def _main_reports(max_s: int, max_h: int, table: list[int]) -> list[InequalityReport]:
    grid = {}
    for s in range(1, max_s + 1):
        for h in range(1, max_h + 1):
            grid[s, h] = main_status(s, h, table)
    rng = [(1, max_s), (1, max_h)]

    def report(sid, text, cells, want, notes=""):
        counts = {STRICT: 0, EQUALITY: 0, FAILS: 0}
        bad = []
        eq = []
        for c in cells:
            st = grid[c]
            counts[st] += 1
            if st == EQUALITY:
                eq.append(c)
            if st not in want:
                bad.append(c)
        return InequalityReport(sid, text, rng, not bad, counts, eq, bad, notes=notes)

    def cls(pred):
        return [c for c in grid if pred(*c)]

    lh = table
    reports = [
        report("main.1", "strict for any h if s = 4, 6 or s >= 8",
               cls(lambda s, h: s in (4, 6) or s >= 8), {STRICT}),
        report("main.2", "strict for l(h) >= 2 and s >= 2, s != 3",
               cls(lambda s, h: lh[h] >= 2 and s >= 2 and s != 3), {STRICT}),
        report("main.3", "strict for l(h) >= 3 and s = 3",
               cls(lambda s, h: lh[h] >= 3 and s == 3), {STRICT}),
    ]

    # "equality for l(h)=1 and s=2,5,7, or l(h)=2 and s=3": read as the
    # inequality holding with equality attained in each class (the table's
    # "not strict" comments).  Strict cells inside a class are counted, not failed.
    classes = {
        "l(h)=1,s=2": cls(lambda s, h: lh[h] == 1 and s == 2),
        "l(h)=1,s=5": cls(lambda s, h: lh[h] == 1 and s == 5),
        "l(h)=1,s=7": cls(lambda s, h: lh[h] == 1 and s == 7),
        "l(h)=2,s=3": cls(lambda s, h: lh[h] == 2 and s == 3),
    }
    counts = {STRICT: 0, EQUALITY: 0, FAILS: 0}
    bad, eq = [], []
    strict_in = {}
    for name, cells in classes.items():
        sts = [grid[c] for c in cells]
        for c, st in zip(cells, sts):
            counts[st] += 1
            if st == FAILS:
                bad.append(c)
            elif st == EQUALITY:
                eq.append(c)
        if cells and EQUALITY not in sts:
            bad.append(name)
        strict_in[name] = sts.count(STRICT)
    reports.append(InequalityReport(
        "main.4", "equality for l(h)=1 and s=2,5,7, or l(h)=2 and s=3",
        rng, not bad, counts, eq, bad,
        notes="holds with equality attained in every class; strict cells per class: "
        + ", ".join(f"{k}: {v}" for k, v in strict_in.items()),
    ))

    # "false for s=1 or l(h)=1 and s=3": s=1 fails everywhere; for l(h)=1, s=3
    # the inequality fails for some h (h = 3*2^m) and is an equality otherwise.
    s1 = cls(lambda s, h: s == 1)
    s3 = cls(lambda s, h: lh[h] == 1 and s == 3)
    bad = [c for c in s1 if grid[c] != FAILS]
    if s3 and FAILS not in (grid[c] for c in s3):
        bad.append("l(h)=1,s=3")
    bad += [c for c in s3 if grid[c] == STRICT]
    counts = {st: sum(1 for c in s1 + s3 if grid[c] == st) for st in (STRICT, EQUALITY, FAILS)}
    eq = [c for c in s3 if grid[c] == EQUALITY]
    reports.append(InequalityReport(
        "main.5", "false for s=1, or l(h)=1 and s=3", rng, not bad, counts, eq, bad,
        notes="s=1 fails for every h; l(h)=1, s=3 fails exactly when l(3h)=2, else equality",
    ))

    for s, (rel, coef, kind) in LONG_TABLE.items():
        if s > max_s:
            break
        counts = {STRICT: 0, EQUALITY: 0, FAILS: 0}
        bad, eq = [], []
        for h in range(1, max_h + 1):
            b = s * table[h] - table[s * h]
            target = coef * table[h]
            if (rel == "=" and b != target) or (rel == ">=" and b < target):
                bad.append((s, h))
            st = grid[s, h]
            counts[st] += 1
            if st == EQUALITY:
                eq.append((s, h))
            if kind == "false" and st != FAILS:
                bad.append((s, h))
            if kind == "strict" and st != STRICT:
                bad.append((s, h))
            if kind == "lh1" and (st == FAILS or (table[h] >= 2 and st != STRICT)):
                bad.append((s, h))
            if kind == "lh3" and table[h] >= 3 and st != STRICT:
                bad.append((s, h))
        reports.append(InequalityReport(
            f"long_table.s={s}", f"B({s},h) {rel} {coef} l(h), comment: {kind}",
            [(s, s), (1, max_h)], not bad, counts, eq, bad,
        ))

    if max_s >= 16:
        reports.append(report(
            "main.s>=16", "strict for every s >= 16",
            cls(lambda s, h: s >= 16), {STRICT},
        ))

    # A(s,h) >= 1 exactly when B(s,h) >= floor((s+1)/2): the floor in the
    # B-inequality and the one in the definition of A differ by one.
    bad = []
    for (s, h), st in grid.items():
        a_val = s * table[h] - table[s * h] - (s - 1) // 2
        if (a_val >= 1) != (st != FAILS) or (a_val >= 2) != (st == STRICT):
            bad.append((s, h))
    reports.append(InequalityReport(
        "main.A_vs_B", "A(s,h) >= 1 iff B(s,h) >= floor((s+1)/2); A >= 2 iff strict",
        rng, not bad, {STRICT: 0, EQUALITY: len(grid) - len(bad), FAILS: len(bad)}, [], bad,
    ))
    return reports


def verify_section2(
    max_k: int = 10_000,
    max_h: int = 100_000,
    *,
    main_s: int = 64,
    main_h: int = 1000,
) -> list[InequalityReport]:
    """Check every bullet of the l/o inequality results over finite ranges.

    The two-parameter inequality on B(s, h) is swept over s <= min(max_k, main_s)
    and h <= min(max_h, main_h); the one-parameter statements use the full
    max_k / max_h ranges.
    """
    if max_k < 16 or max_h < 16:
        raise ValueError("max_k and max_h must be at least 16")
    max_s = min(max_k, main_s)
    max_hm = min(max_h, main_h)
    n_max = max(3 * max_h + 3, 2 * max_k + 2, max_s * max_hm + 1)
    table = length_table(n_max)
    return (
        _daily_reports(max_k, table)
        + _l_function_reports(max_h, table)
        + _main_reports(max_s, max_hm, table)
    )


def pow2_times(coefficient, exponent: int) -> int:
    """Exact integer value of a rational coefficient times 2**exponent."""
    num, den = coefficient.numerator, coefficient.denominator
    value = num << exponent
    if value % den:
        raise ValueError(f"{coefficient} * 2^{exponent} is not an integer")
    return value // den


def log2_exact(x: int) -> int | None:
    """Return n if x == 2**n, else None."""
    if x > 0 and x & (x - 1) == 0:
        return x.bit_length() - 1
    return None


__all__ = [
    "GenusDecomposition",
    "InequalityReport",
    "l_of",
    "o_of",
    "length_table",
    "greedy_pairing",
    "greedy_length",
    "decompose",
    "quantity_A",
    "quantity_B",
    "verify_section2",
    "pow2_times",
    "log2_exact",
]
