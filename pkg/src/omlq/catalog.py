"""Built-in lattice catalog.

Spec strings name an entry plus parameters: "boolean:3", "mo:2", "benzene",
"zero", and the combinators "product(boolean:2,mo:1)" and
"horizontal_sum(boolean:2,boolean:2)" which nest arbitrarily.
"""

from __future__ import annotations

from .errors import ParamOutOfRange, UnknownCatalogEntry
from .lattice import FiniteOML, build_lattice

_ATOM_LETTERS = "abcd"
MAX_RANK = 4


def boolean_oml(n: int) -> FiniteOML:
    """Boolean algebra on n atoms, labeled by atom-letter subsets."""
    if not 1 <= n <= MAX_RANK:
        raise ParamOutOfRange(f"boolean:{n}", f"rank must be 1..{MAX_RANK}")

    def name(mask):
        if mask == 0:
            return "0"
        if mask == (1 << n) - 1:
            return "1"
        return "".join(_ATOM_LETTERS[b] for b in range(n) if mask >> b & 1)

    masks = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), name(m)))
    labels = [name(m) for m in masks]
    pairs = [
        (name(a), name(b)) for a in masks for b in masks if a & b == a
    ]
    ortho = {name(m): name(m ^ ((1 << n) - 1)) for m in masks}
    return FiniteOML(build_lattice(labels, pairs), ortho)


def mo_oml(n: int) -> FiniteOML:
    """Horizontal stack of n complement pairs of atoms: the lattice MO_n."""
    if not 1 <= n <= MAX_RANK:
        raise ParamOutOfRange(f"mo:{n}", f"pair count must be 1..{MAX_RANK}")
    atoms = []
    for k in range(n):
        atoms += [_ATOM_LETTERS[k], _ATOM_LETTERS[k] + "'"]
    labels = ["0"] + atoms + ["1"]
    pairs = [("0", x) for x in atoms] + [(x, "1") for x in atoms]
    ortho = {"0": "1"}
    for k in range(n):
        ortho[_ATOM_LETTERS[k]] = _ATOM_LETTERS[k] + "'"
    return FiniteOML(build_lattice(labels, pairs), ortho)


def benzene_oml() -> FiniteOML:
    """The benzene ring O6: an ortholattice that breaks the orthomodular law."""
    labels = ["0", "x", "y", "x'", "y'", "1"]
    pairs = [("0", "x"), ("x", "y'"), ("y'", "1"), ("0", "y"), ("y", "x'"), ("x'", "1")]
    ortho = {"0": "1", "x": "x'", "y": "y'"}
    return FiniteOML(build_lattice(labels, pairs), ortho)


def zero_oml() -> FiniteOML:
    """The one-element lattice; its single element is its own complement."""
    return FiniteOML(build_lattice(["0"], []), {"0": "0"})


def product_oml(a: FiniteOML, b: FiniteOML) -> FiniteOML:
    """Componentwise order and complement on pairs."""
    labels = [
        f"({a.label(i)},{b.label(j)})" for i in range(a.n) for j in range(b.n)
    ]
    pairs = []
    for i1 in range(a.n):
        for j1 in range(b.n):
            for i2 in range(a.n):
                for j2 in range(b.n):
                    if a.le(i1, i2) and b.le(j1, j2):
                        pairs.append(
                            (labels[i1 * b.n + j1], labels[i2 * b.n + j2])
                        )
    ortho = {
        labels[i * b.n + j]: labels[a.orthoc(i) * b.n + b.orthoc(j)]
        for i in range(a.n)
        for j in range(b.n)
    }
    return FiniteOML(build_lattice(labels, pairs), ortho)


def horizontal_sum_oml(a: FiniteOML, b: FiniteOML) -> FiniteOML:
    """Glue two OMLs at shared bottom and top; interiors stay incomparable.

    Interior labels are prefixed with their side so the two copies never
    collide.
    """
    def interior(m: FiniteOML, side: str):
        return [
            (i, f"{side}.{m.label(i)}")
            for i in range(m.n)
            if i not in (m.bottom, m.top)
        ]

    left, right = interior(a, "l"), interior(b, "r")
    labels = ["0"] + [lab for _, lab in left] + [lab for _, lab in right] + ["1"]
    pairs = []
    for m, src in ((a, left), (b, right)):
        for i, li in src:
            for j, lj in src:
                if m.le(i, j):
                    pairs.append((li, lj))
        for i, li in src:
            pairs.append(("0", li))
            pairs.append((li, "1"))
    pairs.append(("0", "1"))
    ortho = {"0": "1"}
    for m, src in ((a, left), (b, right)):
        local = {i: lab for i, lab in src}
        for i, li in src:
            o = m.orthoc(i)
            if o in local:
                ortho[li] = local[o]
    return FiniteOML(build_lattice(labels, pairs), ortho)


def _split_args(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise UnknownCatalogEntry(body)
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise UnknownCatalogEntry(body)
    parts.append("".join(cur))
    return parts


def catalog(spec: str) -> FiniteOML:
    """Resolve a catalog spec string to an OML."""
    spec = spec.strip()
    for comb, fn in (("product", product_oml), ("horizontal_sum", horizontal_sum_oml)):
        if spec.startswith(comb + "(") and spec.endswith(")"):
            args = _split_args(spec[len(comb) + 1 : -1])
            if len(args) != 2:
                raise ParamOutOfRange(spec, "combinator takes two entries")
            return fn(catalog(args[0]), catalog(args[1]))
    name, _, param = spec.partition(":")
    name = name.strip()
    if name == "boolean" or name == "mo":
        try:
            k = int(param)
        except ValueError:
            raise ParamOutOfRange(spec, "integer parameter required") from None
        return boolean_oml(k) if name == "boolean" else mo_oml(k)
    if param:
        raise UnknownCatalogEntry(spec)
    if name == "benzene":
        return benzene_oml()
    if name == "zero":
        return zero_oml()
    raise UnknownCatalogEntry(spec)


def catalog_names() -> list[str]:
    """Entries the catalog understands, for listings and help text."""
    fixed = ["benzene", "zero"]
    ranked = [f"boolean:{k}" for k in range(1, MAX_RANK + 1)]
    ranked += [f"mo:{k}" for k in range(1, MAX_RANK + 1)]
    return ranked + fixed + ["product(<entry>,<entry>)", "horizontal_sum(<entry>,<entry>)"]
