import json
from pathlib import Path

from frattini.perm import PermGroup, perm_from_cycles

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(criterion, ok, detail):
    """One pass/fail line per criterion, repeated in the terminal summary."""
    line = f"criterion {criterion:<3} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def load_fixture(name):
    """(group spec, list of subgroups) from a witness fixture file."""
    data = json.loads((FIXTURES / name).read_text())
    n = data["degree"]
    subs = [PermGroup([perm_from_cycles(g, n) for g in gens], n) for gens in data["subgroups"]]
    return data["group"], subs


def load_generators(name):
    """(parent group, generator lists) from a witness fixture file."""
    from frattini.catalog import build
    data = json.loads((FIXTURES / name).read_text())
    n = data["degree"]
    if "parent" in data:
        G = PermGroup([perm_from_cycles(g, n) for g in data["parent"]], n)
    else:
        G = build(data["group"])
    return G, [[perm_from_cycles(g, n) for g in gens] for gens in data["subgroups"]]
