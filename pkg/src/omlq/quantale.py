"""Finite unital involutive quantales over an explicit carrier lattice.

The central instance is the endomorphism quantale of an OML: all
join-preserving endomaps under pointwise order, with composition as
multiplication and the adjoint as the involution.  Carrier joins of maps
are pointwise; carrier meets are joins of lower bounds and are read off
the order, never computed pointwise.

The defined relations

    s <= t  iff  s = t * s          (leq_by_mult)
    s perp t  iff  star(s) * t = 0  (perp_by_star)

live on the quantale and are distinct from the carrier order.
"""

from __future__ import annotations

import numpy as np

from .errors import FormatError
from .lattice import (
    CheckReport,
    FiniteLattice,
    FiniteOML,
    lattice_from_leq,
    make_report,
)
from .linmap import (
    LinMap,
    bottom_map,
    dagger,
    enumerate_lin,
    identity_map,
    vector_label,
)
from .scan import first_hit

EAGER_LIMIT = 2048


class _LazyTable:
    """Memoized table filled on demand.

    dict writes are atomic and setdefault keeps the first stored value, so
    concurrent readers observe at most one initialization per cell.
    """

    def __init__(self, fill):
        self._fill = fill
        self._cache = {}

    def __getitem__(self, key):
        v = self._cache.get(key)
        if v is None:
            v = self._cache.setdefault(key, self._fill(key))
        return v


class FinQuantale:
    """Carrier lattice plus multiplication, involution, and unit.

    mult and star may be dense arrays or on-demand tables; dense_mult and
    dense_star materialize them, which the exhaustive checkers rely on.
    The zero element is the carrier bottom (the empty join).
    """

    def __init__(self, carrier: FiniteLattice, mult, star, unit: int):
        self.carrier = carrier
        self._mult = mult
        self._star = star
        self.unit = int(unit)
        self.zero = carrier.bottom

    @property
    def n(self) -> int:
        return self.carrier.n

    @property
    def labels(self):
        return self.carrier.labels

    def label(self, i) -> str:
        return self.carrier.label(i)

    def index(self, label) -> int:
        return self.carrier.index(label)

    def times(self, i, j) -> int:
        return int(self._mult[i, j])

    def star_of(self, i) -> int:
        return int(self._star[i])

    def join(self, i, j) -> int:
        return self.carrier.join(i, j)

    def le(self, i, j) -> bool:
        return self.carrier.le(i, j)

    @property
    def is_lazy(self) -> bool:
        return not isinstance(self._mult, np.ndarray)

    def dense_mult(self) -> np.ndarray:
        if isinstance(self._mult, np.ndarray):
            return self._mult
        n = self.n
        out = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            for j in range(n):
                out[i, j] = self._mult[i, j]
        out.setflags(write=False)
        self._mult = out
        return out

    def dense_star(self) -> np.ndarray:
        if isinstance(self._star, np.ndarray):
            return self._star
        out = np.array([self._star[i] for i in range(self.n)], dtype=np.int32)
        out.setflags(write=False)
        self._star = out
        return out


class QElementView:
    """Order-preserving bijection between quantale indices and map tables."""

    def __init__(self, maps):
        self.maps = tuple(maps)
        self._by_values = {m.values: i for i, m in enumerate(self.maps)}

    @property
    def n(self) -> int:
        return len(self.maps)

    def map_at(self, i) -> LinMap:
        return self.maps[i]

    def index_of(self, values) -> int:
        if isinstance(values, LinMap):
            values = values.values
        try:
            return self._by_values[tuple(values)]
        except KeyError:
            raise FormatError(f"value table {values!r} is not a quantale element") from None

    def __contains__(self, values) -> bool:
        if isinstance(values, LinMap):
            values = values.values
        return tuple(values) in self._by_values


def leq_by_mult(q: FinQuantale, s: int, t: int) -> bool:
    """The defined order: s below t iff t * s = s."""
    return q.times(t, s) == s


def perp_by_star(q: FinQuantale, s: int, t: int) -> bool:
    """The defined orthogonality: star(s) * t = 0."""
    return q.times(q.star_of(s), t) == q.zero


def leq_by_mult_matrix(q: FinQuantale) -> np.ndarray:
    """Dense matrix of the defined order; entry (s, t) is s <= t."""
    m = q.dense_mult()
    return m.T == np.arange(q.n, dtype=m.dtype)[:, None]


def lin_quantale(
    oml: FiniteOML,
    cap: int | None = None,
    force_lazy: bool = False,
    workers: int = 1,
):
    """The endomorphism quantale of an OML, with its element view.

    Elements are all join-preserving endomaps in canonical (value vector)
    order.  Multiplication of i and j composes map i after map j.  Tables
    are materialized eagerly up to EAGER_LIMIT elements and filled on
    demand beyond that (or when force_lazy is set); both routes compute the
    same entries.
    """
    maps = enumerate_lin(oml, oml, cap=cap, workers=workers)
    k = len(maps)
    values = np.array([m.values for m in maps], dtype=np.int32).reshape(k, oml.n)
    labels = [vector_label(m) for m in maps]
    pointwise = np.empty((k, k), dtype=bool)
    leq = oml.lattice.leq_mat
    for lo in range(0, k, 256):
        hi = min(lo + 256, k)
        pointwise[lo:hi] = leq[values[lo:hi, None, :], values[None, :, :]].all(axis=2)
    carrier = lattice_from_leq(labels, pointwise)
    view = QElementView(maps)
    row_index = {values[i].tobytes(): i for i in range(k)}

    def compose_idx(i, j):
        return row_index[np.ascontiguousarray(values[i][values[j]]).tobytes()]

    unit = view.index_of(identity_map(oml))
    zero = view.index_of(bottom_map(oml))
    if zero != carrier.bottom:
        raise FormatError("bottom map is not the carrier bottom")

    if force_lazy or k > EAGER_LIMIT:
        mult = _LazyTable(lambda key: compose_idx(*key))
        star = _LazyTable(lambda key: view.index_of(dagger(maps[key])))
    else:
        mult = np.empty((k, k), dtype=np.int32)
        for i in range(k):
            comp = values[i][values]  # row j: map i after map j
            mult[i] = [row_index[np.ascontiguousarray(row).tobytes()] for row in comp]
        mult.setflags(write=False)
        star = np.array([view.index_of(dagger(m)) for m in maps], dtype=np.int32)
        star.setflags(write=False)
    return FinQuantale(carrier, mult, star, unit), view


# ---------------------------------------------------------------------------
# law checking

def check_quantale(q: FinQuantale, subject="quantale", workers=1) -> CheckReport:
    """Associativity, unit, zero annihilation, and join distributivity.

    Distributivity over arbitrary joins reduces to the binary case plus the
    empty case (zero annihilation) in a finite quantale.
    """
    m = q.dense_mult()
    j = q.carrier.join_tab
    n = q.n
    ar = np.arange(n)

    def assoc(lo, hi):
        for a in range(lo, hi):
            bad = np.argwhere(m[m[a]] != m[a][m])
            if bad.size:
                b, c = map(int, bad[0])
                return (a, b, c)
        return None

    def unit_left(lo, hi):
        bad = np.nonzero(m[q.unit][lo:hi] != ar[lo:hi])[0]
        return (lo + int(bad[0]),) if bad.size else None

    def unit_right(lo, hi):
        bad = np.nonzero(m[lo:hi, q.unit] != ar[lo:hi])[0]
        return (lo + int(bad[0]),) if bad.size else None

    def zero_left(lo, hi):
        bad = np.nonzero(m[q.zero][lo:hi] != q.zero)[0]
        return (lo + int(bad[0]),) if bad.size else None

    def zero_right(lo, hi):
        bad = np.nonzero(m[lo:hi, q.zero] != q.zero)[0]
        return (lo + int(bad[0]),) if bad.size else None

    def dist_left(lo, hi):
        # x * (y join z) = (x * y) join (x * z), witness (x, y, z)
        for x in range(lo, hi):
            row = m[x]
            bad = np.argwhere(row[j] != j[row[:, None], row[None, :]])
            if bad.size:
                y, z = map(int, bad[0])
                return (x, y, z)
        return None

    def dist_right(lo, hi):
        # (y join z) * x = (y * x) join (z * x), witness (x, y, z)
        for x in range(lo, hi):
            col = m[:, x]
            bad = np.argwhere(col[j] != j[col[:, None], col[None, :]])
            if bad.size:
                y, z = map(int, bad[0])
                return (x, y, z)
        return None

    hits = [
        ("associativity", first_hit(assoc, n, workers)),
        ("unit-left", first_hit(unit_left, n, workers)),
        ("unit-right", first_hit(unit_right, n, workers)),
        ("zero-left", first_hit(zero_left, n, workers)),
        ("zero-right", first_hit(zero_right, n, workers)),
        ("distributes-left", first_hit(dist_left, n, workers)),
        ("distributes-right", first_hit(dist_right, n, workers)),
    ]
    named = [
        (ax, None if w is None else tuple(q.label(i) for i in w)) for ax, w in hits
    ]
    return make_report(subject, named)


def check_involutive(q: FinQuantale, subject="involutive", workers=1) -> CheckReport:
    """Involution laws: period two, antihomomorphism, join and unit preservation."""
    m = q.dense_mult()
    s = q.dense_star()
    j = q.carrier.join_tab
    n = q.n
    ar = np.arange(n)

    def involution(lo, hi):
        bad = np.nonzero(s[s[lo:hi]] != ar[lo:hi])[0]
        return (lo + int(bad[0]),) if bad.size else None

    def antihom(lo, hi):
        # star(a * b) = star(b) * star(a), witness (a, b)
        for a in range(lo, hi):
            bad = np.nonzero(s[m[a]] != m[s, s[a]])[0]
            if bad.size:
                return (a, int(bad[0]))
        return None

    def star_join(lo, hi):
        # star(a join b) = star(a) join star(b), witness (a, b)
        for a in range(lo, hi):
            bad = np.nonzero(s[j[a]] != j[s[a]][s])[0]
            if bad.size:
                return (a, int(bad[0]))
        return None

    hits = [
        ("star-involution", first_hit(involution, n, workers)),
        ("star-antihomomorphism", first_hit(antihom, n, workers)),
        ("star-join", first_hit(star_join, n, workers)),
        ("star-zero", None if s[q.zero] == q.zero else (q.zero,)),
        ("unit-self-adjoint", None if s[q.unit] == q.unit else (q.unit,)),
    ]
    named = [
        (ax, None if w is None else tuple(q.label(i) for i in w)) for ax, w in hits
    ]
    return make_report(subject, named)
