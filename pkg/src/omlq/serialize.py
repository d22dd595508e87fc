"""JSON file formats and DOT emission.

Structures are exchanged as JSON objects distinguished by their keys:

  lattice   {"elements": [...], "leq": [["x","y"], ...]}
  oml       lattice keys plus {"ortho": {"x": "x'", ...}}
  map       {"dom": <oml-or-catalog-or-path>, "cod": ..., "values": {...}}
  quantale  {"elements": [...], "leq": [...], "mult": [[...]],
             "star": {...}, "unit": "e"}
  foulis    quantale keys plus {"sai": {...}}
  module    {"quantale": <inline-or-path>, "lattice": <inline-or-path>,
             "action": [[...]]}

"covers" is accepted in place of "leq"; the reflexive-transitive closure
is always recomputed, so either the covering relation or the full order
may be supplied.  Emission writes elements in index order and the full
strict order under "leq", so parse(emit(x)) reproduces x exactly.

String specifications resolve catalog-first, then as file paths.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .catalog import catalog
from .errors import FormatError, UnknownCatalogEntry
from .foulis import FoulisQuantale
from .lattice import FiniteLattice, FiniteOML, build_lattice
from .linmap import LinMap
from .qmodule import ModuleAction
from .quantale import FinQuantale


def dump_json(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# emission

def _strict_pairs(lat: FiniteLattice) -> list[list[str]]:
    out = np.argwhere(lat.leq_mat & ~np.eye(lat.n, dtype=bool))
    return [[lat.label(int(i)), lat.label(int(j))] for i, j in out]


def lattice_to_dict(lat: FiniteLattice) -> dict:
    return {"elements": list(lat.labels), "leq": _strict_pairs(lat)}


def oml_to_dict(oml: FiniteOML) -> dict:
    d = lattice_to_dict(oml.lattice)
    d["ortho"] = {
        oml.label(i): oml.label(oml.orthoc(i))
        for i in range(oml.n)
        if i <= oml.orthoc(i)
    }
    return d


def linmap_to_dict(f: LinMap) -> dict:
    return {
        "dom": oml_to_dict(f.dom),
        "cod": oml_to_dict(f.cod),
        "values": {f.dom.label(x): f.cod.label(f.values[x]) for x in range(f.dom.n)},
    }


def quantale_to_dict(q: FinQuantale) -> dict:
    mult = q.dense_mult()
    star = q.dense_star()
    return {
        "elements": list(q.carrier.labels),
        "leq": _strict_pairs(q.carrier),
        "mult": [[q.label(int(v)) for v in row] for row in mult],
        "star": {q.label(i): q.label(int(star[i])) for i in range(q.n)},
        "unit": q.label(q.unit),
    }


def foulis_to_dict(f: FoulisQuantale) -> dict:
    d = quantale_to_dict(f.base)
    d["sai"] = {f.label(i): f.label(int(f.sai[i])) for i in range(f.n)}
    return d


def module_to_dict(m: ModuleAction) -> dict:
    return {
        "quantale": quantale_to_dict(m.quantale),
        "lattice": lattice_to_dict(m.lattice),
        "action": [[m.lattice.label(int(v)) for v in row] for row in m.table],
    }


def structure_to_dict(obj) -> dict:
    if isinstance(obj, FoulisQuantale):
        return foulis_to_dict(obj)
    if isinstance(obj, FinQuantale):
        return quantale_to_dict(obj)
    if isinstance(obj, ModuleAction):
        return module_to_dict(obj)
    if isinstance(obj, LinMap):
        return linmap_to_dict(obj)
    if isinstance(obj, FiniteOML):
        return oml_to_dict(obj)
    if isinstance(obj, FiniteLattice):
        return lattice_to_dict(obj)
    raise FormatError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# parsing

def _order_pairs(d: dict):
    if "leq" in d and "covers" in d:
        raise FormatError('give either "leq" or "covers", not both')
    if "leq" in d:
        pairs = d["leq"]
    elif "covers" in d:
        pairs = d["covers"]
    else:
        raise FormatError('missing "leq" (or "covers") relation')
    if not isinstance(pairs, list):
        raise FormatError("order relation must be a list of pairs")
    return pairs


def parse_lattice(d: dict) -> FiniteLattice:
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    elements = d.get("elements")
    if not isinstance(elements, list) or not all(
        isinstance(e, str) for e in elements
    ):
        raise FormatError('"elements" must be a list of names')
    return build_lattice(elements, _order_pairs(d))


def parse_oml(d: dict) -> FiniteOML:
    lat = parse_lattice(d)
    ortho = d.get("ortho")
    if not isinstance(ortho, dict):
        raise FormatError('missing "ortho" complement map')
    return FiniteOML(lat, ortho)


def parse_oml_or_lattice(d: dict):
    return parse_oml(d) if "ortho" in d else parse_lattice(d)


def _label_array(lat, mapping, what) -> np.ndarray:
    if not isinstance(mapping, dict):
        raise FormatError(f'"{what}" must be a label dictionary')
    out = np.empty(lat.n, dtype=np.int32)
    seen = [False] * lat.n
    for x, y in mapping.items():
        i = lat.index(x)
        out[i] = lat.index(y)
        seen[i] = True
    if not all(seen):
        missing = [lat.label(i) for i, s in enumerate(seen) if not s]
        raise FormatError(f'"{what}" misses elements {missing!r}')
    return out


def parse_quantale(d: dict):
    """A quantale table file; returns FoulisQuantale when "sai" is present."""
    lat = parse_lattice(d)
    n = lat.n
    mult_rows = d.get("mult")
    if not isinstance(mult_rows, list) or len(mult_rows) != n:
        raise FormatError('"mult" must be an n-by-n label table')
    mult = np.empty((n, n), dtype=np.int32)
    for i, row in enumerate(mult_rows):
        if not isinstance(row, list) or len(row) != n:
            raise FormatError('"mult" must be an n-by-n label table')
        for j, lab in enumerate(row):
            mult[i, j] = lat.index(lab)
    star = _label_array(lat, d.get("star"), "star")
    if "unit" not in d:
        raise FormatError('missing "unit"')
    unit = lat.index(d["unit"])
    base = FinQuantale(lat, mult, star, unit)
    if "sai" in d:
        return FoulisQuantale(base, _label_array(lat, d["sai"], "sai"))
    return base


def parse_module(d: dict, base_dir=None) -> ModuleAction:
    if not isinstance(d, dict) or "quantale" not in d or "lattice" not in d:
        raise FormatError('module files need "quantale", "lattice", "action"')
    q = resolve_quantale(d["quantale"], base_dir)
    if isinstance(q, FoulisQuantale):
        q = q.base
    lat = resolve_lattice(d["lattice"], base_dir)
    if isinstance(lat, FiniteOML):
        lat = lat.lattice
    rows = d.get("action")
    if not isinstance(rows, list) or len(rows) != q.n:
        raise FormatError('"action" must be a |Q|-by-|A| label table')
    table = np.empty((q.n, lat.n), dtype=np.int32)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != lat.n:
            raise FormatError('"action" must be a |Q|-by-|A| label table')
        for j, lab in enumerate(row):
            table[i, j] = lat.index(lab)
    return ModuleAction(q, lat, table)


def parse_structure(d: dict, base_dir=None):
    """Dispatch a JSON object to its structure by discriminating keys."""
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    if "action" in d:
        return parse_module(d, base_dir)
    if "mult" in d:
        return parse_quantale(d)
    if "values" in d:
        return parse_linmap(d, base_dir)
    if "ortho" in d:
        return parse_oml(d)
    if "elements" in d:
        return parse_lattice(d)
    raise FormatError("object matches no known structure format")


def parse_linmap(d: dict, base_dir=None) -> LinMap:
    if "dom" not in d:
        raise FormatError('map files need "dom" and "values"')
    dom = resolve_oml(d["dom"], base_dir)
    cod = resolve_oml(d["cod"], base_dir) if "cod" in d else dom
    values_map = d.get("values")
    if not isinstance(values_map, dict):
        raise FormatError('"values" must be a label dictionary')
    vals = [None] * dom.n
    for x, y in values_map.items():
        vals[dom.index(x)] = cod.index(y)
    missing = [dom.label(i) for i, v in enumerate(vals) if v is None]
    if missing:
        raise FormatError(f'"values" misses elements {missing!r}')
    return LinMap(dom, cod, vals)


# ---------------------------------------------------------------------------
# resolution of string/inline specifications

def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: {e}") from None


def _resolve(spec, base_dir, want, parser):
    if isinstance(spec, dict):
        return parser(spec)
    if not isinstance(spec, str):
        raise FormatError(f"expected an inline object or a string, got {spec!r}")
    if want == "oml":
        try:
            return catalog(spec)
        except UnknownCatalogEntry:
            pass
    path = spec if base_dir is None else os.path.join(base_dir, spec)
    try:
        d = load_json(path)
    except FileNotFoundError:
        raise FormatError(
            f"{spec!r} is neither a catalog entry nor a readable file"
        ) from None
    return parser(d)


def resolve_oml(spec, base_dir=None) -> FiniteOML:
    out = _resolve(spec, base_dir, "oml", parse_oml)
    if not isinstance(out, FiniteOML):
        raise FormatError("structure has no complement map")
    return out


def resolve_lattice(spec, base_dir=None):
    return _resolve(spec, base_dir, "oml", parse_oml_or_lattice)


def resolve_quantale(spec, base_dir=None):
    return _resolve(spec, base_dir, "quantale", parse_quantale)


def resolve_structure(spec, base_dir=None):
    """Catalog-first, then file; inline objects parse directly."""
    return _resolve(spec, base_dir, "oml", parse_structure)


# ---------------------------------------------------------------------------
# DOT emission

def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(obj) -> str:
    """Hasse diagram: covering edges upward, complement pairs dashed.

    Complement links never constrain the layout; a same-rank group is
    added for pairs the order leaves incomparable.
    """
    if isinstance(obj, FoulisQuantale):
        obj = obj.base
    if isinstance(obj, FinQuantale):
        obj = obj.carrier
    if isinstance(obj, ModuleAction):
        obj = obj.lattice
    if isinstance(obj, LinMap):
        obj = obj.dom
    ortho = obj.ortho if isinstance(obj, FiniteOML) else None
    lat = obj.lattice if isinstance(obj, FiniteOML) else obj
    if not isinstance(lat, FiniteLattice):
        raise FormatError(f"cannot draw {type(obj).__name__}")

    def q(i):
        return f'"{_dot_escape(lat.label(i))}"'

    lines = ["digraph {", "  rankdir=BT;"]
    for i in range(lat.n):
        lines.append(f"  {q(i)};")
    for i, j in lat.covers():
        lines.append(f"  {q(i)} -> {q(j)};")
    if ortho is not None:
        pairs = [(i, int(ortho[i])) for i in range(lat.n) if i < ortho[i]]
        if pairs:
            lines.append("  edge [style=dashed, constraint=false, dir=none];")
            for i, j in pairs:
                lines.append(f"  {q(i)} -> {q(j)};")
            for i, j in pairs:
                if not lat.le(i, j) and not lat.le(j, i):
                    lines.append(f"  {{rank=same; {q(i)}; {q(j)};}}")
    lines.append("}")
    return "\n".join(lines) + "\n"
