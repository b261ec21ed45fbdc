"""Regenerate tests/golden/candidates.json (canonical graph6 + engine order for g = 9..24)."""

import json
import sys
from pathlib import Path

from cubicaut.autgroup import automorphism_group, canonical_form
from cubicaut.candidates import candidate

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden" / "candidates.json"


def main(lo=9, hi=24):
    rows = []
    for g in range(lo, hi + 1):
        G, spec = candidate(g)
        rows.append({
            "genus": g,
            "branch": spec.branch,
            "canonical_graph6": canonical_form(G),
            "aut_order": str(automorphism_group(G).order),
        })
        print(g, spec.branch, rows[-1]["aut_order"], file=sys.stderr)
    OUT.write_text(json.dumps(rows, indent=1) + "\n")


if __name__ == "__main__":
    main(*map(int, sys.argv[1:]))
