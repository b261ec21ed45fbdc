import io
import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from cubicaut import cli
from cubicaut.graph_core import emit_graph6, parse_graph6, parse_graph6_stream, petersen

SCHEMA = cli.load_schema()


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def report(capsys, *argv, **kw):
    status, out, _ = run(capsys, *argv, **kw)
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return status, rep


def _max_json_int(x):
    if isinstance(x, bool):
        return 0
    if isinstance(x, int):
        return abs(x)
    if isinstance(x, dict):
        return max((_max_json_int(v) for v in x.values()), default=0)
    if isinstance(x, list):
        return max((_max_json_int(v) for v in x), default=0)
    return 0


def test_bound_38(capsys):
    status, rep = report(capsys, "bound", "38", "57")
    assert status == 0 and rep["ok"]
    r38, r57 = rep["results"]
    assert r38["coefficient"] == {"num": 3, "den": 2}
    assert r38["bound"] == str(3 * 2 ** 35)
    assert r57["bound"] == str(2 ** 54)
    assert _max_json_int(rep) < 2 ** 53


def test_aut_petersen_from_stdin(capsys, monkeypatch):
    status, rep = report(capsys, "aut", stdin=emit_graph6(petersen()) + "\n", monkeypatch=monkeypatch)
    assert status == 0
    assert rep["results"][0]["aut_order"] == "120"
    assert rep["checks"] == [{"claim": "aut.0.wormald_divisibility", "holds": True}]


def test_aut_from_file(capsys, tmp_path):
    f = tmp_path / "in.g6"
    f.write_text("C~\nIheA@GUAo\n")
    status, rep = report(capsys, "aut", str(f))
    assert [r["aut_order"] for r in rep["results"]] == ["24", "120"]


def test_orbits(capsys, monkeypatch):
    status, rep = report(capsys, "orbits", stdin="C~\n", monkeypatch=monkeypatch)
    assert status == 0
    assert rep["results"][0]["minimal_orbit"]["kind"] == "whole_graph"


def test_verify_tables(capsys):
    status, rep = report(capsys, "verify-tables", "--max-genus", "8")
    assert status == 0 and rep["first_violation"] is None
    rows = [r for r in rep["results"] if "mu" in r]
    mus = [Fraction(r["mu"]["num"], r["mu"]["den"]) for r in rows]
    assert mus == [6, 9, 6, Fraction(15, 4), 2, Fraction(21, 8)]
    assert all(r["mu1"] == {"num": 1, "den": 1} for r in rows)
    cands = {r["genus"]: r["aut_order"] for r in rep["results"] if "tutte" in r}
    assert cands[16] == "32768"


def test_violated_claim_exits_one(capsys, monkeypatch):
    monkeypatch.setitem(cli.MU_COLUMN, 4, Fraction(8))
    status, out, err = run(capsys, "verify-tables", "--max-genus", "5")
    rep = json.loads(out)
    assert status == 1 and not rep["ok"]
    assert rep["first_violation"]["claim"] == "tables.g=4.mu"
    assert "tables.g=4.mu" in err


def test_build_writes_three_files(capsys, tmp_path):
    status, rep = report(capsys, "build", "12", "--out", str(tmp_path), "--check")
    assert status == 0
    assert rep["checks"][0]["claim"] == "build.g=12.aut_matches_prediction"
    spec = json.loads((tmp_path / "g12.json").read_text())
    assert spec["branch"] == "three_B_star" and spec["aut_order"] == "3072"
    G = parse_graph6((tmp_path / "g12.g6").read_text())
    assert G.vertex_count == 22
    assert (tmp_path / "g12.dot").read_text().count("--") == 33


def test_build_small_genus(capsys):
    status, rep = report(capsys, "build", "7", "--check")
    assert status == 0 and rep["results"][0]["aut_order"] == "64"


def test_enumerate_graph6(capsys):
    status, out, _ = run(capsys, "enumerate", "8", "--format", "graph6")
    assert status == 0 and len(parse_graph6_stream(out)) == 5


def test_enumerate_workers_do_not_change_output(capsys, monkeypatch):
    _, one, _ = run(capsys, "enumerate", "12", "--format", "graph6", "--workers", "1")
    monkeypatch.setenv("CUBICAUT_WORKERS", "2")
    _, two, _ = run(capsys, "enumerate", "12", "--format", "graph6")
    assert one == two


def test_reproducible_modulo_timestamp(capsys):
    reps = []
    for _ in range(2):
        _, rep = report(capsys, "verify-growth", "--max-genus", "100")
        rep.pop("generated_at")
        reps.append(json.dumps(rep))
    assert reps[0] == reps[1]


def test_verify_arith_small(capsys):
    status, rep = report(capsys, "verify-arith", "--max-k", "300", "--max-h", "3000")
    assert status == 0
    assert {c["claim"] for c in rep["checks"]} >= {"arith.daily.5", "arith.main.A_vs_B"}


def test_census_small(capsys):
    status, rep = report(capsys, "census", "6")
    assert status == 0 and rep["results"][0]["max_aut"] == "120"


@pytest.mark.parametrize(
    "argv",
    [["enumerate", "18"], ["census", "10"], ["enumerate", "7"], ["bound", "2"], ["verify-tables", "--max-genus", "10"]],
)
def test_usage_errors_exit_two(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 2 and out == "" and "error" in err


def test_bad_graph6_exits_two(capsys, monkeypatch):
    status, _, err = run(capsys, "aut", stdin="C\n", monkeypatch=monkeypatch)
    assert status == 2 and "graph6" in err


def test_bad_worker_env(capsys, monkeypatch):
    monkeypatch.setenv("CUBICAUT_WORKERS", "many")
    status, _, _ = run(capsys, "bound", "9")
    assert status == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        cli.main(["bound", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_text_format(capsys):
    status, out, _ = run(capsys, "bound", "10", "--format", "text")
    assert out.splitlines() == ["g=10 bound=384 = 3/2 * 2^8", "ok"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cubicaut", "bound", "9"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["results"][0]["bound"] == "384"


def test_schema_rejects_bare_big_integers():
    rep = {
        "schema_version": 1, "command": "aut", "config": {}, "ok": True, "first_violation": None,
        "checks": [], "results": [{"aut_order": 2 ** 60}], "generated_at": "",
    }
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(rep, SCHEMA)
