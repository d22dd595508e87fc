"""Annihilator projections on involutive quantales.

A Foulis structure assigns to every element s a self-adjoint idempotent
sai(s) whose left multiples are exactly the right annihilator of s:

    (a) sai(s) * sai(s) = sai(s) = star(sai(s))
    (b) sai(unit) = 0
    (c) s * x = 0  iff  x = sai(s) * y for some y

The derived complement is perp(t) = sai(star(t)).  Axiom (c) routed
through perp reads: star(s) * x = 0 iff x = perp(s) * y for some y, which
is the orthogonality relation of the quantale against s.  The image of sai
carries an orthomodular lattice under the defined order s <= t iff s = t*s,
reconstructed and cross-checked here, with the induced action u . k =
perp(perp(u * k)) turning it into a module over the quantale.

On the endomorphism quantale of an OML the closed form is
sai(s) = the Sasaki projection at complement(dagger(s)(top)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousSai, NotALattice, NotFoulis, StructureViolation
from .lattice import (
    CheckReport,
    FiniteOML,
    check_oml,
    lattice_from_leq,
    make_report,
    sasaki_apply,
)
from .linmap import LinMap, dagger, vector_label
from .quantale import (
    FinQuantale,
    QElementView,
    leq_by_mult_matrix,
    lin_quantale,
)
from .scan import first_hit


class FoulisQuantale:
    """A quantale together with its annihilator projection table."""

    def __init__(self, base: FinQuantale, sai):
        self.base = base
        sai = np.asarray(sai, dtype=np.int32)
        if sai.shape != (base.n,):
            raise StructureViolation("sai-table-shape")
        self.sai = sai
        self.sai.setflags(write=False)

    @property
    def n(self) -> int:
        return self.base.n

    def label(self, i) -> str:
        return self.base.label(i)

    def sai_of(self, s: int) -> int:
        return int(self.sai[s])

    def perp(self, t: int) -> int:
        return int(self.sai[self.base.star_of(t)])

    def members(self) -> list[int]:
        """The projection image, ascending by quantale index."""
        return sorted(int(k) for k in set(self.sai.tolist()))


def derive_sai(q: FinQuantale) -> np.ndarray:
    """Search the annihilator generator for every element.

    Assumes q passes check_quantale and check_involutive.  Raises NotFoulis
    when some annihilator is generated by no self-adjoint idempotent and
    AmbiguousSai when two generate the same one (impossible in a lawful
    involutive quantale, so it signals corrupt tables).
    """
    m = q.dense_mult()
    s = q.dense_star()
    n = q.n
    sa_idem = [p for p in range(n) if m[p, p] == p and s[p] == p]
    generated = {}
    for p in sa_idem:
        generated.setdefault(frozenset(m[p].tolist()), []).append(p)
    sai = np.empty(n, dtype=np.int32)
    for t in range(n):
        ann = frozenset(np.nonzero(m[t] == q.zero)[0].tolist())
        candidates = generated.get(ann, [])
        if not candidates:
            raise NotFoulis(q.label(t))
        if len(candidates) > 1:
            raise AmbiguousSai(
                q.label(t), q.label(candidates[0]), q.label(candidates[1])
            )
        sai[t] = candidates[0]
    return sai


def foulis_from_lin(
    oml: FiniteOML,
    cap: int | None = None,
    force_lazy: bool = False,
    workers: int = 1,
):
    """Endomorphism quantale with the closed-form projection table.

    sai(s) is the Sasaki projection at the complement of dagger(s)(top);
    derive_sai recovers the same table by annihilator search.
    """
    q, view = lin_quantale(oml, cap=cap, force_lazy=force_lazy, workers=workers)
    proj_idx = np.empty(oml.n, dtype=np.int32)
    for a in range(oml.n):
        row = tuple(sasaki_apply(oml, a, y) for y in range(oml.n))
        proj_idx[a] = view.index_of(row)
    star = q.dense_star()
    values = np.array([f.values for f in view.maps], dtype=np.int32)
    adjoint_tops = values[star, oml.top]
    sai = proj_idx[oml.ortho[adjoint_tops]]
    if set(sai.tolist()) != set(proj_idx.tolist()):
        raise StructureViolation("projection-image-mismatch")
    return FoulisQuantale(q, sai), view


def sasaki_projection_index(view: QElementView, oml: FiniteOML, a: int) -> int:
    """Quantale index of the Sasaki projection at a."""
    return view.index_of(tuple(sasaki_apply(oml, a, y) for y in range(oml.n)))


# ---------------------------------------------------------------------------
# law checking

def check_foulis(f: FoulisQuantale, subject="foulis", workers=1) -> CheckReport:
    """Projection axioms plus their restatement through perp.

    The annihilator axioms compare the set {x | s*x = 0} with the set of
    left multiples of the projection; a witness is the offending s paired
    with the least element on which the two sets differ.
    """
    q = f.base
    m = q.dense_mult()
    s = q.dense_star()
    sai = f.sai
    perp = sai[s]
    n = q.n

    def idem(table):
        def scan(lo, hi):
            t = table[lo:hi]
            bad = np.nonzero(m[t, t] != t)[0]
            return (lo + int(bad[0]),) if bad.size else None

        return scan

    def selfadj(table):
        def scan(lo, hi):
            t = table[lo:hi]
            bad = np.nonzero(s[t] != t)[0]
            return (lo + int(bad[0]),) if bad.size else None

        return scan

    def annihilator(source):
        # source maps s to the element whose annihilator must be generated
        def scan(lo, hi):
            for t in range(lo, hi):
                ann = set(np.nonzero(m[source[t]] == q.zero)[0].tolist())
                gen = set(m[sai[source[t]]].tolist())
                if ann != gen:
                    return (t, min(ann ^ gen))
            return None

        return scan

    identity = np.arange(n)
    hits = [
        ("sai-idempotent", first_hit(idem(sai), n, workers)),
        ("sai-self-adjoint", first_hit(selfadj(sai), n, workers)),
        ("sai-unit", None if sai[q.unit] == q.zero else (q.unit,)),
        ("sai-annihilator", first_hit(annihilator(identity), n, workers)),
        ("perp-idempotent", first_hit(idem(perp), n, workers)),
        ("perp-self-adjoint", first_hit(selfadj(perp), n, workers)),
        ("perp-unit", None if perp[q.unit] == q.zero else (q.unit,)),
        ("perp-annihilator", first_hit(annihilator(s), n, workers)),
    ]
    named = [
        (ax, None if w is None else tuple(q.label(i) for i in w)) for ax, w in hits
    ]
    return make_report(subject, named)


def check_star_props(f: FoulisQuantale, subject="star-props", workers=1) -> CheckReport:
    """Derived laws of the projection complement under the defined order.

    fixed-point: star(r) * t = 0 iff t = sai(star(r)) * t, all pairs (r, t).
    perp-antitone: t <= r implies perp(r) <= perp(t), with <= the defined
    order, plus perp(perp(k)) = k on the projection image.
    perp-galois: t <= perp(r) iff r <= perp(t), all pairs.
    """
    q = f.base
    m = q.dense_mult()
    s = q.dense_star()
    sai = f.sai
    perp = sai[s]
    n = q.n
    lem = leq_by_mult_matrix(q)  # entry (s, t): s = t * s
    ar = np.arange(n)

    def fixed_point(lo, hi):
        for r in range(lo, hi):
            lhs = m[s[r]] == q.zero
            rhs = m[sai[s[r]]] == ar
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                return (r, int(bad[0]))
        return None

    perp_rows = lem[perp]

    def antitone(lo, hi):
        for t in range(lo, hi):
            required = perp_rows[:, perp[t]]  # entry r: perp(r) <= perp(t)
            bad = np.nonzero(lem[t] & ~required)[0]
            if bad.size:
                return (t, int(bad[0]))
        return None

    members = np.array(f.members(), dtype=np.int32)

    def double_perp(lo, hi):
        ks = members[lo:hi]
        bad = np.nonzero(perp[perp[ks]] != ks)[0]
        return (int(members[lo + int(bad[0])]),) if bad.size else None

    def galois(lo, hi):
        for t in range(lo, hi):
            lhs = lem[t][perp]        # entry r: t <= perp(r)
            rhs = lem[:, perp[t]]     # entry r: r <= perp(t)
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                return (t, int(bad[0]))
        return None

    hits = [
        ("fixed-point", first_hit(fixed_point, n, workers)),
        ("perp-antitone", first_hit(antitone, n, workers)),
        ("double-perp", first_hit(double_perp, len(members), workers)),
        ("perp-galois", first_hit(galois, n, workers)),
    ]
    named = [
        (ax, None if w is None else tuple(q.label(i) for i in w)) for ax, w in hits
    ]
    return make_report(subject, named)


# ---------------------------------------------------------------------------
# the projection lattice

class SasakiOML:
    """The projection image as an OML under the defined order.

    members are quantale indices ascending; oml is the local structure
    with complement k -> sai(k) and top sai(0).
    """

    def __init__(self, host: FoulisQuantale, members, oml: FiniteOML):
        self.host = host
        self.members = tuple(int(k) for k in members)
        self.oml = oml
        self._local = {k: i for i, k in enumerate(self.members)}

    def to_host(self, i: int) -> int:
        return self.members[i]

    def from_host(self, k: int) -> int:
        return self._local[k]


def sasaki_oml(f: FoulisQuantale) -> SasakiOML:
    """Reconstruct the projection lattice and cross-check its arithmetic.

    The order comes from s <= t iff s = t * s; the complement is sai
    itself; top must be sai(0).  The meet and join closed forms

        meet(k1, k2) = perp(perp(k1 * sai(sai(k2) * k1)))
        join(S) = sai(sai(carrier join of S))

    are compared against the bounds the order determines.  Any mismatch,
    and any failure of the orthomodular laws, raises StructureViolation.
    """
    q = f.base
    m = q.dense_mult()
    s = q.dense_star()
    sai = f.sai
    zero = q.zero
    members = f.members()
    sel = np.array(members, dtype=np.int32)
    local_labels = tuple(q.label(k) for k in members)
    lem = leq_by_mult_matrix(q)
    order = lem[np.ix_(sel, sel)]

    def lab(i):
        return local_labels[i]

    k = len(members)
    if not order.diagonal().all():
        i = int(np.nonzero(~order.diagonal())[0][0])
        raise StructureViolation("projection-order-reflexive", (lab(i),))
    bad = order & order.T & ~np.eye(k, dtype=bool)
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise StructureViolation("projection-order-antisymmetric", (lab(i), lab(j)))
    closure = order @ order
    if (closure & ~order).any():
        i, j = map(int, np.argwhere(closure & ~order)[0])
        raise StructureViolation("projection-order-transitive", (lab(i), lab(j)))
    try:
        lat = lattice_from_leq(local_labels, order)
    except NotALattice as e:
        raise StructureViolation(f"projection-{e.kind}-exists", e.witness) from None

    local = {q_idx: i for i, q_idx in enumerate(members)}
    if lat.top != local[int(sai[zero])]:
        raise StructureViolation("top-is-sai-of-zero", (lab(lat.top),))
    ortho = [local[int(sai[q_idx])] for q_idx in members]
    oml = FiniteOML(lat, ortho)

    report = check_oml(oml, subject="projection-lattice")
    if not report.passed:
        v = report.violations[0]
        raise StructureViolation(f"projection-{v.axiom}", v.witness)

    def perp(t):
        return int(sai[s[t]])

    jq = q.carrier.join_tab
    for i, k1 in enumerate(members):
        for j, k2 in enumerate(members):
            inner = int(sai[m[int(sai[k2]), k1]])
            formula_meet = perp(perp(m[k1, inner]))
            if local[formula_meet] != lat.meet(i, j):
                raise StructureViolation("meet-formula", (lab(i), lab(j)))
            formula_join = int(sai[sai[jq[k1, k2]]])
            if local[formula_join] != lat.join(i, j):
                raise StructureViolation("join-formula", (lab(i), lab(j)))
    if local[int(sai[sai[zero]])] != lat.bottom:
        raise StructureViolation("empty-join-formula", (lab(lat.bottom),))
    return SasakiOML(f, members, oml)


def sasaki_oml_report(f: FoulisQuantale, subject="sasaki-oml", workers=1):
    """Reporting wrapper: construction failures become a failing report."""
    try:
        sub = sasaki_oml(f)
    except StructureViolation as e:
        report = make_report(subject, [(e.formula, tuple(str(w) for w in e.witness))])
        return None, report
    oml_report = check_oml(sub.oml, subject=subject, workers=workers)
    axioms = ("construction",) + oml_report.axioms
    return sub, CheckReport(subject, oml_report.violations, axioms)


# ---------------------------------------------------------------------------
# module action and the representation homomorphism

def module_action(f: FoulisQuantale, u: int, k: int) -> int:
    """u . k = perp(perp(u * k)); lands in the projection image."""
    return f.perp(f.perp(f.base.times(u, k)))


def sasaki_action(f: FoulisQuantale, u: int, sub: SasakiOML | None = None) -> LinMap:
    """The action of u on the projection lattice, as a value table."""
    if sub is None:
        sub = sasaki_oml(f)
    vals = [sub.from_host(module_action(f, u, k)) for k in sub.members]
    return LinMap(sub.oml, sub.oml, vals)


@dataclass(frozen=True)
class FoulisHom:
    """The representation of a Foulis quantale on its projection lattice.

    table maps source indices to element indices of the endomorphism
    quantale of the projection lattice.
    """

    source: FoulisQuantale
    target: FoulisQuantale
    target_view: QElementView
    sub: SasakiOML
    table: tuple[int, ...]

    @property
    def injective(self) -> bool:
        return len(set(self.table)) == len(self.table)


def hom_h(
    f: FoulisQuantale,
    cap: int | None = None,
    workers: int = 1,
    sub: SasakiOML | None = None,
) -> FoulisHom:
    """Represent every element by its action on the projection lattice."""
    if sub is None:
        sub = sasaki_oml(f)
    target, tview = foulis_from_lin(sub.oml, cap=cap, workers=workers)
    table = []
    for u in range(f.n):
        act = sasaki_action(f, u, sub)
        if act.values not in tview:
            raise StructureViolation("action-not-join-preserving", (f.label(u),))
        table.append(tview.index_of(act.values))
    return FoulisHom(f, target, tview, sub, tuple(table))


def check_hom(h: FoulisHom, subject="hom", workers=1) -> CheckReport:
    """Structure preservation of the representation.

    Joins (binary and empty), multiplication, unit, involution, and the
    derived complement; plus the closed form of the complement on the
    target side: perp of the image map is the Sasaki projection at the
    complement of its value at the top.
    """
    f, t = h.source, h.target
    tb = np.array(h.table, dtype=np.int32)
    ms, mt = f.base.dense_mult(), t.base.dense_mult()
    js, jt = f.base.carrier.join_tab, t.base.carrier.join_tab
    ss, st = f.base.dense_star(), t.base.dense_star()
    perp_s = f.sai[ss]
    perp_t = t.sai[st]
    n = f.n
    sub_oml = h.sub.oml

    def joins(lo, hi):
        for u in range(lo, hi):
            bad = np.nonzero(tb[js[u]] != jt[tb[u]][tb])[0]
            if bad.size:
                return (u, int(bad[0]))
        return None

    def mults(lo, hi):
        for u in range(lo, hi):
            bad = np.nonzero(tb[ms[u]] != mt[tb[u]][tb])[0]
            if bad.size:
                return (u, int(bad[0]))
        return None

    def stars(lo, hi):
        bad = np.nonzero(tb[ss[lo:hi]] != st[tb[lo:hi]])[0]
        return (lo + int(bad[0]),) if bad.size else None

    def perps(lo, hi):
        bad = np.nonzero(tb[perp_s[lo:hi]] != perp_t[tb[lo:hi]])[0]
        return (lo + int(bad[0]),) if bad.size else None

    def perp_closed_form(lo, hi):
        for u in range(lo, hi):
            img = h.target_view.map_at(tb[u])
            at = sub_oml.orthoc(img.values[sub_oml.top])
            proj = tuple(sasaki_apply(sub_oml, at, y) for y in range(sub_oml.n))
            if h.target_view.index_of(proj) != perp_t[tb[u]]:
                return (u,)
        return None

    hits = [
        ("preserves-join", first_hit(joins, n, workers)),
        ("preserves-zero", None if tb[f.base.zero] == t.base.zero else (f.base.zero,)),
        ("preserves-mult", first_hit(mults, n, workers)),
        ("preserves-unit", None if tb[f.base.unit] == t.base.unit else (f.base.unit,)),
        ("preserves-star", first_hit(stars, n, workers)),
        ("preserves-perp", first_hit(perps, n, workers)),
        ("perp-closed-form", first_hit(perp_closed_form, n, workers)),
    ]
    named = [
        (ax, None if w is None else tuple(f.label(i) for i in w)) for ax, w in hits
    ]
    return make_report(subject, named)


def roundtrip_iso(
    oml: FiniteOML,
    cap: int | None = None,
    workers: int = 1,
    subject="roundtrip",
    built=None,
) -> CheckReport:
    """a -> Sasaki projection at a, as an isomorphism onto the projection
    lattice of the endomorphism quantale.

    built, when given, is a prebuilt (FoulisQuantale, QElementView) pair
    for this lattice, saving a re-enumeration.
    """
    if built is None:
        built = foulis_from_lin(oml, cap=cap, workers=workers)
    f, view = built
    sub = sasaki_oml(f)
    cand = [
        sub.from_host(sasaki_projection_index(view, oml, a)) for a in range(oml.n)
    ]
    n = oml.n
    sub_oml = sub.oml

    bijection = None
    if len(set(cand)) != n:
        seen = {}
        for a, c in enumerate(cand):
            if c in seen:
                bijection = (oml.label(seen[c]), oml.label(a))
                break
            seen[c] = a
    elif len(sub.members) != n:
        bijection = (str(n), str(len(sub.members)))

    def order(lo, hi):
        for a in range(lo, hi):
            for b in range(n):
                if oml.le(a, b) != sub_oml.le(cand[a], cand[b]):
                    return (a, b)
        return None

    def complement(lo, hi):
        for a in range(lo, hi):
            if cand[oml.orthoc(a)] != sub_oml.orthoc(cand[a]):
                return (a,)
        return None

    def meets(lo, hi):
        for a in range(lo, hi):
            for b in range(n):
                if cand[oml.meet(a, b)] != sub_oml.meet(cand[a], cand[b]):
                    return (a, b)
        return None

    def joins(lo, hi):
        for a in range(lo, hi):
            for b in range(n):
                if cand[oml.join(a, b)] != sub_oml.join(cand[a], cand[b]):
                    return (a, b)
        return None

    hits = [
        ("order-isomorphism", first_hit(order, n, workers)),
        ("complement-preserved", first_hit(complement, n, workers)),
        ("meet-preserved", first_hit(meets, n, workers)),
        ("join-preserved", first_hit(joins, n, workers)),
    ]
    named = [("bijection", bijection)] + [
        (ax, None if w is None else tuple(oml.label(i) for i in w)) for ax, w in hits
    ]
    return make_report(subject, named)
