"""Finite bounded lattices and orthomodular lattices as dense tables.

Elements are indexed 0..n-1 in input order.  The order relation is kept as
a dense boolean matrix and the binary join/meet tables are precomputed at
construction, so law checking and Sasaki arithmetic reduce to table
lookups.  Input relations may list covering pairs or the full order; the
reflexive-transitive closure is always recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormatError, NotALattice, NotAPoset
from .scan import first_hit


# ---------------------------------------------------------------------------
# check reports

@dataclass(frozen=True)
class Violation:
    """One failed law together with its least witness, as element labels."""

    axiom: str
    witness: tuple[str, ...]


@dataclass(frozen=True)
class CheckReport:
    subject: str
    violations: tuple[Violation, ...] = ()
    axioms: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def witness(self, axiom: str):
        for v in self.violations:
            if v.axiom == axiom:
                return v.witness
        return None

    def to_dict(self) -> dict:
        d = {
            "subject": self.subject,
            "passed": self.passed,
            "violations": [
                {"axiom": v.axiom, "witness": list(v.witness)}
                for v in self.violations
            ],
        }
        if self.axioms:
            failed = {v.axiom: list(v.witness) for v in self.violations}
            d["axioms"] = {
                a: {"passed": a not in failed, "witness": failed.get(a)}
                for a in self.axioms
            }
        return d

    def __str__(self) -> str:
        if self.passed:
            return f"{self.subject}: PASS"
        parts = ", ".join(
            f"{v.axiom} at ({', '.join(v.witness)})" for v in self.violations
        )
        return f"{self.subject}: FAIL [{parts}]"


def make_report(subject, axiom_hits) -> CheckReport:
    """Assemble a report from (axiom, witness-or-None) pairs."""
    violations = tuple(
        Violation(axiom, tuple(witness))
        for axiom, witness in axiom_hits
        if witness is not None
    )
    return CheckReport(subject, violations, tuple(a for a, _ in axiom_hits))


# ---------------------------------------------------------------------------
# lattices

class FiniteLattice:
    """Finite bounded lattice with precomputed join/meet tables.

    Not constructed directly in normal use; see build_lattice and
    lattice_from_leq.
    """

    def __init__(self, labels, leq, join_tab, meet_tab, bottom, top):
        self.labels = tuple(labels)
        self.leq_mat = leq
        self.join_tab = join_tab
        self.meet_tab = meet_tab
        self.bottom = int(bottom)
        self.top = int(top)
        self._idx = {lab: i for i, lab in enumerate(self.labels)}
        for arr in (self.leq_mat, self.join_tab, self.meet_tab):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._idx[label]
        except KeyError:
            raise FormatError(f"unknown element {label!r}") from None

    def label(self, i) -> str:
        return self.labels[i]

    def le(self, i, j) -> bool:
        return bool(self.leq_mat[i, j])

    def join(self, i, j) -> int:
        return int(self.join_tab[i, j])

    def meet(self, i, j) -> int:
        return int(self.meet_tab[i, j])

    def join_set(self, items) -> int:
        """Least upper bound of a finite family; empty family gives bottom."""
        out = self.bottom
        for i in items:
            out = int(self.join_tab[out, i])
        return out

    def meet_set(self, items) -> int:
        """Greatest lower bound of a finite family; empty family gives top."""
        out = self.top
        for i in items:
            out = int(self.meet_tab[out, i])
        return out

    def downset(self, i) -> list[int]:
        return [int(j) for j in np.nonzero(self.leq_mat[:, i])[0]]

    def atoms(self) -> list[int]:
        return [j for (i, j) in self.covers() if i == self.bottom]

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j) with i < j and nothing strictly between."""
        strict = self.leq_mat & ~np.eye(self.n, dtype=bool)
        # z strictly between i and j iff strict[i,z] and strict[z,j]
        between = strict @ strict
        out = np.argwhere(strict & ~between)
        return [(int(i), int(j)) for i, j in out]

    def join_irreducibles(self) -> list[int]:
        """Elements with exactly one lower cover; every element is a join of these."""
        lower = [0] * self.n
        for _, j in self.covers():
            lower[j] += 1
        return [i for i in range(self.n) if lower[i] == 1]

    @property
    def signature(self):
        sig = getattr(self, "_sig", None)
        if sig is None:
            sig = (self.labels, self.leq_mat.tobytes())
            self._sig = sig
        return sig

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, bottom={self.labels[self.bottom]!r}, top={self.labels[self.top]!r})"


def _order_tables(labels, leq):
    """Join/meet tables from a validated order matrix.

    The least upper bound of i and j, when it exists, is the unique element
    whose up-set is the intersection of the two up-sets; the tables are
    filled by looking the intersection up in a row-content dictionary.
    """
    n = leq.shape[0]
    up_id = {leq[i].tobytes(): i for i in range(n)}
    down = np.ascontiguousarray(leq.T)
    down_id = {down[i].tobytes(): i for i in range(n)}
    join_tab = np.empty((n, n), dtype=np.int32)
    meet_tab = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        ui = leq[i]
        di = down[i]
        for j in range(n):
            k = up_id.get((ui & leq[j]).tobytes())
            if k is None:
                raise NotALattice("join", labels[i], labels[j])
            join_tab[i, j] = k
            k = down_id.get((di & down[j]).tobytes())
            if k is None:
                raise NotALattice("meet", labels[i], labels[j])
            meet_tab[i, j] = k
    return join_tab, meet_tab


def lattice_from_leq(labels, leq) -> FiniteLattice:
    """Build a lattice from an already reflexive-transitive order matrix."""
    labels = tuple(labels)
    leq = np.array(leq, dtype=bool)
    n = len(labels)
    if leq.shape != (n, n):
        raise FormatError("order matrix shape does not match element count")
    if not leq.diagonal().all():
        raise FormatError("order relation is not reflexive")
    bad = leq & leq.T & ~np.eye(n, dtype=bool)
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise NotAPoset(labels[i], labels[j])
    closed = leq @ leq
    if (closed & ~leq).any():
        raise FormatError("order relation is not transitive")
    join_tab, meet_tab = _order_tables(labels, leq)
    bottoms = [i for i in range(n) if leq[i].all()]
    tops = [i for i in range(n) if leq[:, i].all()]
    if len(bottoms) != 1 or len(tops) != 1:
        raise NotALattice("bound", labels[0], labels[-1])
    return FiniteLattice(labels, leq, join_tab, meet_tab, bottoms[0], tops[0])


def build_lattice(labels, leq_pairs) -> FiniteLattice:
    """Lattice from labels and order pairs (covers or full order).

    Raises NotAPoset when the closure breaks antisymmetry and NotALattice
    when some pair has no least upper or greatest lower bound.
    """
    labels = tuple(labels)
    if not labels:
        raise FormatError("no elements")
    if len(set(labels)) != len(labels):
        raise FormatError("element labels are not distinct")
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    leq = np.eye(n, dtype=bool)
    for pair in leq_pairs:
        if len(pair) != 2:
            raise FormatError(f"order pair {pair!r} is not a pair")
        x, y = pair
        if x not in idx or y not in idx:
            raise FormatError(f"order pair ({x!r}, {y!r}) names unknown elements")
        leq[idx[x], idx[y]] = True
    while True:
        closed = leq | (leq @ leq)
        if (closed == leq).all():
            break
        leq = closed
    return lattice_from_leq(labels, leq)


# ---------------------------------------------------------------------------
# orthomodular lattices

class FiniteOML:
    """A finite lattice carrying an orthocomplement candidate.

    The constructor only requires the complement map to be total and
    in-range; the laws themselves (involution, antitonicity, x meet x' = 0,
    orthomodularity) are the business of check_oml, so structures that fail
    them, like the benzene ring, are still representable.
    """

    def __init__(self, lattice: FiniteLattice, ortho):
        self.lattice = lattice
        ortho = normalize_ortho(lattice, ortho)
        self.ortho = ortho
        self.ortho.setflags(write=False)

    # delegation
    @property
    def n(self):
        return self.lattice.n

    @property
    def labels(self):
        return self.lattice.labels

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    def index(self, label):
        return self.lattice.index(label)

    def label(self, i):
        return self.lattice.label(i)

    def le(self, i, j):
        return self.lattice.le(i, j)

    def join(self, i, j):
        return self.lattice.join(i, j)

    def meet(self, i, j):
        return self.lattice.meet(i, j)

    def join_set(self, items):
        return self.lattice.join_set(items)

    def meet_set(self, items):
        return self.lattice.meet_set(items)

    def downset(self, i):
        return self.lattice.downset(i)

    def atoms(self):
        return self.lattice.atoms()

    def covers(self):
        return self.lattice.covers()

    def orthoc(self, i) -> int:
        return int(self.ortho[i])

    @property
    def signature(self):
        sig = getattr(self, "_sig", None)
        if sig is None:
            sig = (self.lattice.signature, self.ortho.tobytes())
            self._sig = sig
        return sig

    def __eq__(self, other):
        if not isinstance(other, FiniteOML):
            return NotImplemented
        return self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return f"FiniteOML(n={self.n})"


def normalize_ortho(lattice: FiniteLattice, ortho) -> np.ndarray:
    """Accept a label dictionary or an index sequence; return an index array.

    Label dictionaries may omit one direction of a pair; the symmetric
    closure is taken before totality is enforced.
    """
    n = lattice.n
    if isinstance(ortho, dict):
        table = {}
        for x, y in ortho.items():
            i, j = lattice.index(x), lattice.index(y)
            for a, b in ((i, j), (j, i)):
                if table.get(a, b) != b:
                    raise FormatError(
                        f"conflicting complements for {lattice.label(a)!r}"
                    )
                table[a] = b
        missing = [lattice.label(i) for i in range(n) if i not in table]
        if missing:
            raise FormatError(f"complement map misses elements {missing!r}")
        arr = np.array([table[i] for i in range(n)], dtype=np.int32)
    else:
        arr = np.array([int(i) for i in ortho], dtype=np.int32)
        if arr.shape != (n,):
            raise FormatError("complement map has the wrong length")
        if arr.min(initial=0) < 0 or (n and arr.max(initial=0) >= n):
            raise FormatError("complement map points outside the lattice")
    return arr


def _coerce_oml(subject_or_oml, ortho):
    if isinstance(subject_or_oml, FiniteOML):
        if ortho is not None:
            raise ValueError("ortho given twice")
        return subject_or_oml.lattice, subject_or_oml.ortho
    lattice = subject_or_oml
    return lattice, normalize_ortho(lattice, ortho)


def check_oml(lattice_or_oml, ortho=None, subject="oml", workers=1) -> CheckReport:
    """Check the ortholattice laws and the orthomodular law.

    One least witness is reported per violated law: involution (x'' = x),
    antitonicity (x <= y implies y' <= x'), complement (x meet x' = 0) and
    orthomodular (x <= y implies y = x join (x' meet y)).
    """
    lat, ortho = _coerce_oml(lattice_or_oml, ortho)
    n = lat.n
    leq = lat.leq_mat
    jt, mt = lat.join_tab, lat.meet_tab
    ar = np.arange(n)

    def involution(lo, hi):
        bad = np.nonzero(ortho[ortho[lo:hi]] != ar[lo:hi])[0]
        return (lo + int(bad[0]),) if bad.size else None

    def antitone(lo, hi):
        for i in range(lo, hi):
            ok = leq[ortho, ortho[i]]  # entry j: ortho(j) <= ortho(i)
            bad = np.nonzero(leq[i] & ~ok)[0]
            if bad.size:
                return (i, int(bad[0]))
        return None

    def complement(lo, hi):
        bad = np.nonzero(mt[ar[lo:hi], ortho[lo:hi]] != lat.bottom)[0]
        return (lo + int(bad[0]),) if bad.size else None

    def orthomodular(lo, hi):
        for i in range(lo, hi):
            rebuilt = jt[i, mt[ortho[i]]]  # entry j: i join (i' meet j)
            bad = np.nonzero(leq[i] & (rebuilt != ar))[0]
            if bad.size:
                return (i, int(bad[0]))
        return None

    hits = [
        ("involution", first_hit(involution, n, workers)),
        ("antitone", first_hit(antitone, n, workers)),
        ("complement", first_hit(complement, n, workers)),
        ("orthomodular", first_hit(orthomodular, n, workers)),
    ]
    named = [
        (axiom, None if w is None else tuple(lat.label(i) for i in w))
        for axiom, w in hits
    ]
    return make_report(subject, named)


def sasaki_apply(oml: FiniteOML, a: int, y: int) -> int:
    """Sasaki projection of y onto a: a meet (a' join y)."""
    return oml.meet(a, oml.join(oml.orthoc(a), y))


def ortho_pair(oml: FiniteOML, x: int, y: int) -> bool:
    """Orthogonality: x below the complement of y."""
    return oml.le(x, oml.orthoc(y))


class SubOML:
    """Principal downset of an OML with the relative complement y -> a meet y'.

    Local elements are indexed 0..m-1 in ascending parent order; members
    maps local indices back to the parent.
    """

    def __init__(self, parent: FiniteOML, a: int):
        self.parent = parent
        self.a = int(a)
        members = tuple(parent.downset(a))
        self.members = members
        local = {p: i for i, p in enumerate(members)}
        self._local = local
        m = len(members)
        sel = np.array(members, dtype=np.int32)
        leq = parent.lattice.leq_mat[np.ix_(sel, sel)].copy()
        join_tab = np.empty((m, m), dtype=np.int32)
        meet_tab = np.empty((m, m), dtype=np.int32)
        for i, p in enumerate(members):
            for j, q in enumerate(members):
                join_tab[i, j] = local[parent.join(p, q)]
                meet_tab[i, j] = local[parent.meet(p, q)]
        labels = tuple(parent.label(p) for p in members)
        lat = FiniteLattice(
            labels, leq, join_tab, meet_tab, local[parent.bottom], local[self.a]
        )
        rel = [local[parent.meet(self.a, parent.orthoc(p))] for p in members]
        self.oml = FiniteOML(lat, rel)

    def to_parent(self, i: int) -> int:
        return self.members[i]

    def from_parent(self, p: int) -> int:
        return self._local[p]


def downset_oml(oml: FiniteOML, a: int) -> SubOML:
    """The downset of a as an OML in its own right."""
    return SubOML(oml, a)
