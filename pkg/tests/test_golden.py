import json
from pathlib import Path

import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from cubicaut.autgroup import automorphism_group, canonical_form
from cubicaut.candidates import bound, candidate
from cubicaut.graph_core import parse_graph6
from oracles import to_nx

GOLDEN = json.loads((Path(__file__).parent / "golden" / "candidates.json").read_text())


@pytest.mark.parametrize("row", GOLDEN, ids=lambda r: f"g{r['genus']}")
def test_candidate_matches_frozen(row):
    G, spec = candidate(row["genus"])
    assert spec.branch == row["branch"]
    assert canonical_form(G) == row["canonical_graph6"]
    assert automorphism_group(parse_graph6(row["canonical_graph6"])).order == int(row["aut_order"])
    assert int(row["aut_order"]) == bound(row["genus"])


@pytest.mark.parametrize("row", [r for r in GOLDEN if int(r["aut_order"]) <= 8192], ids=lambda r: f"g{r['genus']}")
def test_frozen_orders_by_vf2(row):
    H = to_nx(parse_graph6(row["canonical_graph6"]))
    assert sum(1 for _ in GraphMatcher(H, H).isomorphisms_iter()) == int(row["aut_order"])
