"""Command-line entry point: ``python -m cubicaut <command> ...``.

Every command prints one JSON report (schema ``schemas/report-1.json``) unless
another output format is asked for.  Exit status is 0 when every checked claim
holds, 1 when one fails and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arith import o_of, verify_section2
from .autgroup import (
    OrbitStructureError,
    automorphism_group,
    classify_minimal_orbit,
    group_order_divides_wormald,
    group_report,
)
from .candidates import (
    CANDIDATE_COLUMN,
    SMALL_GENUS_TABLE,
    bound,
    candidate,
    check_growth,
    edge_transitive_dominance,
    small_genus_optimum,
    tutte_column,
)
from .enumeration import KNOWN_COUNTS, WORKERS_ENV, census_entries, enumerate_cubic, optimality_census
from .graph_core import Graph, emit_dot, emit_graph6, emit_graph6_stream, is_connected, is_cubic, parse_graph6

SCHEMA_VERSION = 1
COMMANDS = ("bound", "build", "aut", "orbits", "enumerate", "verify-tables", "verify-arith", "verify-growth", "census")
FORMATS = ("json", "graph6", "dot", "text")

# Largest census run without --slow: 16 vertices (genus 9).
FAST_VERTEX_LIMIT = 16

MU_COLUMN = {3: Fraction(6), 4: Fraction(9), 5: Fraction(6), 6: Fraction(15, 4), 7: Fraction(2), 8: Fraction(21, 8)}


class UsageError(Exception):
    pass


@dataclass
class VerificationRunConfig:
    command: str
    genera: list[int] = field(default_factory=list)
    vertex_count: int | None = None
    output_format: str = "json"
    slow_suites: bool = False
    workers: int = 1
    input_path: str | None = None
    out_dir: str | None = None
    check: bool = False
    max_genus: int | None = None
    max_k: int = 10_000
    max_h: int = 100_000
    dominance_max: int = 2048

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise UsageError(f"unknown format {self.output_format!r}")
        if self.workers < 1:
            raise UsageError("worker count must be positive")


@dataclass
class Report:
    command: str
    config: dict
    checks: list[dict] = field(default_factory=list)
    results: list[dict] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    def claim(self, name: str, holds: bool, detail: str = "") -> None:
        entry = {"claim": name, "holds": bool(holds)}
        if detail:
            entry["detail"] = detail
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["holds"] for c in self.checks)

    @property
    def first_violation(self) -> dict | None:
        return next((c for c in self.checks if not c["holds"]), None)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "ok": self.ok,
            "first_violation": self.first_violation,
            "checks": self.checks,
            "results": self.results,
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }


def load_schema() -> dict:
    return json.loads(resources.files("cubicaut").joinpath(f"schemas/report-{SCHEMA_VERSION}.json").read_text())


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


# ---------------------------------------------------------------------------
# Commands


def _need_genus(g: int, lo: int = 3) -> None:
    if g < lo:
        raise UsageError(f"genus must be at least {lo}, got {g}")


def _bound(cfg, rep):
    for g in cfg.genera:
        _need_genus(g)
        b = bound(g)
        rep.results.append({
            "genus": g,
            "o": o_of(g),
            "bound": str(b),
            "coefficient": rational(Fraction(b, 1 << o_of(g))),
        })
        rep.text.append(f"g={g} bound={b} = {Fraction(b, 1 << o_of(g))} * 2^{o_of(g)}")


def _build_one(g: int) -> tuple[Graph, dict]:
    _need_genus(g)
    if g < 9:
        G = small_genus_optimum(g)
        order = SMALL_GENUS_TABLE[g][0]
        return G, {
            "genus": g,
            "branch": "small_genus_table",
            "params": {},
            "o": o_of(g),
            "predicted_aut": str(order),
            "predicted_coefficient": rational(Fraction(order, 1 << o_of(g))),
            "predicted_pi": None,
        }
    G, spec = candidate(g)
    return G, spec.to_json()


def _build(cfg, rep):
    graphs = []
    for g in cfg.genera:
        G, spec = _build_one(g)
        spec.update(v=G.vertex_count, graph6=emit_graph6(G))
        if cfg.check:
            order = automorphism_group(G).order
            spec["aut_order"] = str(order)
            rep.claim(f"build.g={g}.aut_matches_prediction", str(order) == spec["predicted_aut"], f"engine {order}")
        rep.results.append(spec)
        graphs.append((g, G))
        if cfg.out_dir:
            out = Path(cfg.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"g{g}.g6").write_text(emit_graph6(G) + "\n")
            (out / f"g{g}.dot").write_text(emit_dot(G, f"C{g}"))
            (out / f"g{g}.json").write_text(json.dumps(spec, indent=2) + "\n")
        rep.text.append(f"g={g} branch={spec['branch']} v={G.vertex_count} predicted_aut={spec['predicted_aut']}")
    return graphs


def _read_graphs(cfg) -> list[Graph]:
    if cfg.input_path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(cfg.input_path).read_text()
        except OSError as exc:
            raise UsageError(str(exc)) from None
    try:
        graphs = [parse_graph6(line) for line in text.splitlines() if line.strip()]
    except ValueError as exc:
        raise UsageError(f"bad graph6 input: {exc}") from None
    if not graphs:
        raise UsageError("no graphs on input")
    return graphs


def _aut(cfg, rep):
    for i, G in enumerate(_read_graphs(cfg)):
        group = automorphism_group(G)
        rep.results.append(group_report(G, group))
        if is_cubic(G):
            rep.claim(f"aut.{i}.wormald_divisibility", group_order_divides_wormald(G, group))
        rep.text.append(f"{emit_graph6(G)} {group.order}")


def _orbits(cfg, rep):
    for i, G in enumerate(_read_graphs(cfg)):
        group = automorphism_group(G)
        res = group_report(G, group)
        if is_cubic(G) and is_connected(G):
            try:
                c = classify_minimal_orbit(G, group)
            except OrbitStructureError as exc:
                rep.claim(f"orbits.{i}.minimal_orbit_shape", False, str(exc))
            else:
                rep.claim(f"orbits.{i}.minimal_orbit_shape", True)
                res["minimal_orbit"] = {
                    "kind": c.kind,
                    "edges": [list(e) for e in c.orbit],
                    "star_count": c.star_count,
                    "edge_count": c.edge_count,
                    "cycle_lengths": c.cycle_lengths,
                }
        rep.results.append(res)
        rep.text.append(f"{res['graph6']} M={res['M']} orbits={[len(o) for o in group.edge_orbits]}")


def _need_census(v: int, cfg) -> None:
    if v > FAST_VERTEX_LIMIT and not cfg.slow_suites:
        raise UsageError(f"a {v}-vertex census is slow; pass --slow to run it")


def _enumerate(cfg, rep):
    v = cfg.vertex_count
    if v is None or v < 4 or v % 2:
        raise UsageError("vertex count must be even and at least 4")
    _need_census(v, cfg)
    graphs = enumerate_cubic(v, workers=cfg.workers)
    if v in KNOWN_COUNTS:
        rep.claim(f"enumerate.v={v}.count", len(graphs) == KNOWN_COUNTS[v], f"{len(graphs)} classes")
    rep.results.append({"v": v, "count": len(graphs), "graph6_list": [emit_graph6(G) for G in graphs]})
    rep.text.append(f"v={v} count={len(graphs)}")
    return graphs


def _census_row(g: int) -> dict:
    v = 2 * (g - 1)
    entries = census_entries(v)
    max_aut = max(e.aut_order for e in entries)
    max_pi = max(e.pi for e in entries)
    P = 1 << o_of(g)
    return {
        "genus": g,
        "v": v,
        "count": len(entries),
        "max_aut": str(max_aut),
        "max_pi": str(max_pi),
        "mu": rational(Fraction(max_aut, P)),
        "mu1": rational(Fraction(max_pi, P)),
        "winner_graph6": [e.graph6 for e in entries if e.aut_order == max_aut],
    }


def _candidate_row(g: int) -> dict:
    G, spec = candidate(g)
    order = automorphism_group(G).order
    return {"genus": g, "branch": spec.branch, "aut_order": str(order), "bound": str(bound(g)), "tutte": str(tutte_column(g))}


def _fan_out(fn, items, workers):
    # ordered by input, never by completion
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _verify_tables(cfg, rep):
    max_genus = cfg.max_genus or 8
    if max_genus < 3:
        raise UsageError("max genus must be at least 3")
    _need_census(2 * (max_genus - 1), cfg)
    for row in _fan_out(_census_row, list(range(3, max_genus + 1)), cfg.workers):
        g = row["genus"]
        rep.results.append(row)
        if g in SMALL_GENUS_TABLE:
            want = SMALL_GENUS_TABLE[g][0]
            rep.claim(f"tables.g={g}.max_aut", row["max_aut"] == str(want), f"census {row['max_aut']}, table {want}")
            rep.claim(f"tables.g={g}.mu", row["mu"] == rational(MU_COLUMN[g]), f"mu {row['mu']}")
            rep.claim(f"tables.g={g}.mu1", row["mu1"] == rational(1), f"mu1 {row['mu1']}")
        rep.text.append(f"g={g} v={row['v']} count={row['count']} max_aut={row['max_aut']} "
                        f"mu={Fraction(row['mu']['num'], row['mu']['den'])} "
                        f"mu1={Fraction(row['mu1']['num'], row['mu1']['den'])}")
    for row in _fan_out(_candidate_row, sorted(CANDIDATE_COLUMN), cfg.workers):
        g = row["genus"]
        rep.results.append(row)
        want = CANDIDATE_COLUMN[g]
        rep.claim(f"tables.g={g}.candidate_aut", row["aut_order"] == row["bound"] == str(want),
                  f"engine {row['aut_order']}, bound {row['bound']}, table {want}")
        rep.claim(f"tables.g={g}.beats_edge_transitive", int(row["aut_order"]) > int(row["tutte"]))
        rep.text.append(f"g={g} candidate={row['aut_order']} bound={row['bound']} tutte={row['tutte']}")


def _verify_arith(cfg, rep):
    if cfg.max_k < 16 or cfg.max_h < 16:
        raise UsageError("max-k and max-h must be at least 16")
    for r in verify_section2(cfg.max_k, cfg.max_h):
        rep.results.append(r.to_json())
        rep.claim(f"arith.{r.statement_id}", r.holds)
        rep.text.append(f"{r.statement_id}: {'holds' if r.holds else 'FAILS'}  equality at {r.equality_points[:8]}")


def _verify_growth(cfg, rep):
    g_max = cfg.max_genus or 200
    if g_max < 11:
        raise UsageError("max genus must be at least 11")
    growth = check_growth(g_max)
    rep.results.append(growth.to_json())
    rep.claim("growth.one_step_exceptions", growth.step_one_violations == growth.expected_exceptions,
              f"violations {growth.step_one_violations}")
    rep.claim("growth.two_step_strict", not growth.step_two_violations)
    failing = edge_transitive_dominance(16, cfg.dominance_max)
    rep.results.append({"dominance_range": [16, cfg.dominance_max], "failing_genera": failing})
    rep.claim("growth.edge_transitive_dominance", not failing)
    rep.text.append(f"growth to {g_max}: one-step violations {growth.step_one_violations}, "
                    f"two-step {growth.step_two_violations}; dominance failures {failing}")


def _census(cfg, rep):
    for g in cfg.genera:
        _need_genus(g)
        _need_census(2 * (g - 1), cfg)
        r = optimality_census(g)
        row = r.to_json()
        rep.results.append(row)
        P = 1 << o_of(g)
        if g in SMALL_GENUS_TABLE:
            rep.claim(f"census.g={g}.max_aut", r.max_aut == SMALL_GENUS_TABLE[g][0])
        if g == 9:
            rep.claim("census.g=9.unique_optimum", r.unique and all(r.matches_candidate),
                      f"{len(r.winners)} optimal classes")
        if g == 10:
            rep.claim("census.g=10.two_optima", len(r.winners) == 2 and sorted(
                (c, a) for c, a in zip(r.matches_candidate, r.matches_alternate)) == [(False, True), (True, False)],
                      f"{len(r.winners)} optimal classes")
        if r.max_aut > P:
            rep.claim(f"census.g={g}.large_optimum_orbits", all(m >= 3 for m in r.winner_M), f"M {r.winner_M}")
        rep.text.append(f"g={g} v={r.vertex_count} count={r.count} max_aut={r.max_aut} winners={len(r.winners)}")


HANDLERS = {
    "bound": _bound,
    "build": _build,
    "aut": _aut,
    "orbits": _orbits,
    "enumerate": _enumerate,
    "verify-tables": _verify_tables,
    "verify-arith": _verify_arith,
    "verify-growth": _verify_growth,
    "census": _census,
}


def run(cfg: VerificationRunConfig) -> tuple[int, Report, object]:
    """Execute one command.  Returns (exit status, report, graphs produced if any)."""
    config = {k: v for k, v in asdict(cfg).items() if v not in (None, [], False) or k == "slow_suites"}
    config.pop("workers", None)  # parallelism never changes the output
    rep = Report(cfg.command, config)
    graphs = HANDLERS[cfg.command](cfg, rep)
    return (0 if rep.ok else 1), rep, graphs


# ---------------------------------------------------------------------------
# Argument parsing


def _positive_int(s: str) -> int:
    try:
        x = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {s}")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubicaut", description="Automorphism groups of cubic graphs by genus.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="json")
    common.add_argument("--slow", dest="slow_suites", action="store_true", help="allow censuses beyond 16 vertices")
    common.add_argument("--workers", type=_positive_int, default=None,
                        help=f"worker processes (default: ${WORKERS_ENV} or 1)")
    common.add_argument("--report", help="also write the JSON report to this file")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bound", parents=[common], help="sharp |Aut| bound for genus g")
    s.add_argument("genera", type=_positive_int, nargs="+")
    s = sub.add_parser("build", parents=[common], help="build the candidate graph of genus g")
    s.add_argument("genera", type=_positive_int, nargs="+")
    s.add_argument("--out", dest="out_dir", help="write g<g>.g6, g<g>.dot and g<g>.json here")
    s.add_argument("--check", action="store_true", help="confirm the predicted order with the engine")
    for name, help_ in (("aut", "automorphism group of graph6 input"), ("orbits", "edge orbits of graph6 input")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("input_path", nargs="?", default="-", help="graph6 file, one graph per line (default stdin)")
    s = sub.add_parser("enumerate", parents=[common], help="all connected cubic graphs on v vertices")
    s.add_argument("vertex_count", type=_positive_int)
    s = sub.add_parser("verify-tables", parents=[common], help="recompute the small-genus tables")
    s.add_argument("--max-genus", type=_positive_int, default=8)
    s = sub.add_parser("verify-arith", parents=[common], help="check the length-function inequalities")
    s.add_argument("--max-k", type=_positive_int, default=10_000)
    s.add_argument("--max-h", type=_positive_int, default=100_000)
    s = sub.add_parser("verify-growth", parents=[common], help="growth of |Aut C_g| and edge-transitive dominance")
    s.add_argument("--max-genus", type=_positive_int, default=200)
    s.add_argument("--dominance-max", type=_positive_int, default=2048)
    s = sub.add_parser("census", parents=[common], help="optimal classes of genus g by exhaustive census")
    s.add_argument("genera", type=_positive_int, nargs="+")
    return p


def _config_from_args(ns) -> VerificationRunConfig:
    workers = ns.workers
    if workers is None:
        env = os.environ.get(WORKERS_ENV, "1")
        try:
            workers = int(env)
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
    kw = {k: v for k, v in vars(ns).items() if k in VerificationRunConfig.__dataclass_fields__}
    kw["workers"] = workers
    return VerificationRunConfig(**kw)


def _render(cfg, rep, graphs) -> str:
    fmt = cfg.output_format
    if fmt == "json":
        return json.dumps(rep.to_json(), indent=2) + "\n"
    if fmt == "text":
        return "".join(line + "\n" for line in rep.text) + ("ok\n" if rep.ok else f"FAILED {rep.first_violation['claim']}\n")
    if graphs is None:
        raise UsageError(f"--format {fmt} only applies to build and enumerate")
    if cfg.command == "build":
        graphs = [G for _, G in graphs]
    if fmt == "graph6":
        return emit_graph6_stream(graphs)
    return "".join(emit_dot(G, f"G{i}") for i, G in enumerate(graphs))


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config_from_args(ns)
        status, rep, graphs = run(cfg)
        sys.stdout.write(_render(cfg, rep, graphs))
    except UsageError as exc:
        print(f"cubicaut: error: {exc}", file=sys.stderr)
        return 2
    if ns.report:
        Path(ns.report).write_text(json.dumps(rep.to_json(), indent=2) + "\n")
    if status:
        print(f"cubicaut: claim violated: {rep.first_violation['claim']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
