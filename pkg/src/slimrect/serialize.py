"""JSON interchange for lattices, scripts, diagrams, and universes.

Lattice files (version 1) carry named elements level by level plus named
cover pairs; scripts carry grid dimensions and stable cell references.
Serialization is deterministic: fixed key order, sorted covers, no
timestamps, so identical values produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from slimrect.codes import canonical_code, code_key
from slimrect.core import validate
from slimrect.errors import SchemaError
from slimrect.fork import CellRef, ForkScript
from slimrect.universe import Member, Universe

LATTICE_VERSION = 1
SCRIPT_VERSION = 1


def dumps(payload):
    return json.dumps(payload, indent=2) + "\n"


def _names(L):
    if L.labels is not None:
        return list(L.labels)
    return [f"n{x}" for x in L.elements()]


def lattice_payload(L, meta=None):
    names = _names(L)
    covers = sorted(
        ((L.height(a), L.pos(a), L.pos(b)), [names[a], names[b]])
        for a, b in L.cover_pairs()
    )
    return {
        "version": LATTICE_VERSION,
        "levels": [[names[x] for x in lv] for lv in L.levels],
        "covers": [pair for _, pair in covers],
        "meta": dict(meta or {}),
    }


def _expect(cond, path, message):
    if not cond:
        raise SchemaError(path, message)


def load_lattice(payload):
    """Validate a lattice file payload; returns (lattice, meta)."""
    _expect(isinstance(payload, dict), "$", "expected a JSON object")
    _expect(payload.get("version") == LATTICE_VERSION, "version", "expected 1")
    levels = payload.get("levels")
    _expect(isinstance(levels, list) and levels, "levels", "expected a non-empty list")
    ids = {}
    id_levels = []
    for h, lv in enumerate(levels):
        _expect(isinstance(lv, list) and lv, f"levels[{h}]", "expected a non-empty list")
        row = []
        for k, name in enumerate(lv):
            _expect(isinstance(name, str), f"levels[{h}][{k}]", "expected a name string")
            _expect(name not in ids, f"levels[{h}][{k}]", f"duplicate name {name!r}")
            ids[name] = len(ids)
            row.append(ids[name])
        id_levels.append(row)
    covers_field = payload.get("covers")
    _expect(isinstance(covers_field, list), "covers", "expected a list")
    covers = []
    for k, pair in enumerate(covers_field):
        _expect(
            isinstance(pair, list) and len(pair) == 2,
            f"covers[{k}]",
            "expected [lowerName, upperName]",
        )
        lo, hi = pair
        _expect(lo in ids, f"covers[{k}]", f"unknown element {lo!r}")
        _expect(hi in ids, f"covers[{k}]", f"unknown element {hi!r}")
        covers.append((ids[lo], ids[hi]))
    meta = payload.get("meta", {})
    _expect(isinstance(meta, dict), "meta", "expected an object")
    names = [None] * len(ids)
    for name, x in ids.items():
        names[x] = name
    return validate(id_levels, covers, names), meta


def script_payload(script):
    return {
        "version": SCRIPT_VERSION,
        "grid": list(script.grid),
        "steps": [
            {"o_height": s.o_height, "o_index": s.o_index, "c_index": s.c_index}
            for s in script.steps
        ],
    }


def load_script(payload):
    _expect(isinstance(payload, dict), "$", "expected a JSON object")
    _expect(payload.get("version") == SCRIPT_VERSION, "version", "expected 1")
    dims = payload.get("grid")
    _expect(
        isinstance(dims, list) and len(dims) == 2,
        "grid",
        "expected [p, q]",
    )
    p, q = dims
    _expect(
        isinstance(p, int) and isinstance(q, int) and p >= 2 and q >= 2,
        "grid",
        "chain lengths must be integers >= 2",
    )
    steps_field = payload.get("steps")
    _expect(isinstance(steps_field, list), "steps", "expected a list")
    steps = []
    for k, step in enumerate(steps_field):
        _expect(isinstance(step, dict), f"steps[{k}]", "expected an object")
        ref = {}
        for field in ("o_height", "o_index", "c_index"):
            value = step.get(field)
            _expect(
                isinstance(value, int) and value >= 0,
                f"steps[{k}].{field}",
                "expected a non-negative integer",
            )
            ref[field] = value
        steps.append(CellRef(**ref))
    return ForkScript(grid=(p, q), steps=tuple(steps))


def _fraction_str(fr):
    return f"{fr.numerator}/{fr.denominator}"


def diagram_payload(D):
    """Exact-rational diagram dump; coordinates as num/den strings."""
    return {
        "version": 1,
        "points": {
            name: [_fraction_str(x), _fraction_str(y)]
            for name, (x, y) in zip(D.names, D.points)
        },
        "edges": [[D.names[a], D.names[b]] for a, b in D.edges],
    }


def step_payload(ref):
    return {"o_height": ref.o_height, "o_index": ref.o_index, "c_index": ref.c_index}


# -- universe persistence ----------------------------------------------------


def save_universe(universe, directory):
    """One lattice file per member keyed by code hash, plus an index file."""
    root = Path(directory)
    (root / "lattices").mkdir(parents=True, exist_ok=True)
    index_members = []
    for code in universe.codes():
        member = universe.members[code]
        key = code_key(code)
        rel = f"lattices/{key}.json"
        payload = lattice_payload(member.lattice, meta={"rank": member.rank})
        (root / rel).write_text(dumps(payload))
        index_members.append(
            {
                "code_sha": key,
                "file": rel,
                "elements": member.lattice.n,
                "rank": member.rank,
                "script": script_payload(member.script),
            }
        )
    index = {
        "version": 1,
        "params": {
            "max_p": universe.max_p,
            "max_q": universe.max_q,
            "max_rank": universe.max_rank,
        },
        "members": index_members,
    }
    (root / "index.json").write_text(dumps(index))
    return root / "index.json"


def load_universe(directory):
    root = Path(directory)
    index = json.loads((root / "index.json").read_text())
    _expect(index.get("version") == 1, "version", "expected 1")
    members = {}
    for k, entry in enumerate(index["members"]):
        lattice, _ = load_lattice(json.loads((root / entry["file"]).read_text()))
        script = load_script(entry["script"])
        members[canonical_code(lattice)] = Member(
            lattice=lattice, script=script, rank=entry["rank"]
        )
    params = index["params"]
    return Universe(
        max_p=params["max_p"],
        max_q=params["max_q"],
        max_rank=params["max_rank"],
        members=members,
    )
