"""End-to-end verification pipelines over a single input lattice.

Each selector names one battery of checks:

  sasaki-facts   the four Sasaki projection laws over all element tuples
  dagger-kernel  kernel extraction and factorization for every endomap
  quantale       quantale laws of the endomorphism quantale
  involutive     involution laws of the endomorphism quantale
  foulis         annihilator projection axioms
  star-props     derived complement laws (fixed point, antitone, Galois)
  sasaki-oml     reconstruction of the projection lattice as an OML
  modules        left module laws for both canonical actions + 2-module
  hom            the representation homomorphism onto the projection lattice
  roundtrip      the isomorphism between the input and its projection lattice

Every pipeline is gated on the input passing the OML laws; selectors with
failing prerequisites are refused (when the prerequisite was not itself
selected) or marked skipped (when it was selected and its failure is
already in the payload).  Payloads contain no machine-dependent data, so
reports are byte-identical across worker counts.
"""

from __future__ import annotations

import numpy as np

from .foulis import (
    check_foulis,
    check_star_props,
    check_hom,
    foulis_from_lin,
    hom_h,
    roundtrip_iso,
    sasaki_oml_report,
)
from .lattice import FiniteOML, check_oml, make_report, sasaki_apply
from .linmap import dagger, enumerate_lin, vector_label
from .qmodule import (
    check_left_module,
    check_right_two_module,
    lin_module,
    sasaki_module,
)
from .quantale import check_involutive, check_quantale
from .scan import first_hit

SELECTORS = (
    "sasaki-facts",
    "dagger-kernel",
    "quantale",
    "involutive",
    "foulis",
    "star-props",
    "sasaki-oml",
    "modules",
    "hom",
    "roundtrip",
)

_PREREQS = {
    "sasaki-facts": (),
    "dagger-kernel": (),
    "quantale": (),
    "involutive": (),
    "foulis": ("quantale", "involutive"),
    "star-props": ("foulis",),
    "sasaki-oml": ("foulis",),
    "modules": ("foulis", "sasaki-oml"),
    "hom": ("foulis", "sasaki-oml"),
    "roundtrip": ("foulis", "sasaki-oml"),
}


# ---------------------------------------------------------------------------
# aggregate report builders

def _sasaki_table(oml: FiniteOML) -> np.ndarray:
    """Row a holds the value table of the Sasaki projection at a."""
    jt, mt = oml.lattice.join_tab, oml.lattice.meet_tab
    return mt[np.arange(oml.n)[:, None], jt[oml.ortho]]


def sasaki_facts_report(oml: FiniteOML, subject="sasaki-facts", workers=1):
    """The four projection laws, scanned over every (a, y[, z]).

    fixed-below   y <= a  iff  the projection at a fixes y
    interior      projecting the complement of the projection of the
                  complement lands below y
    annihilates   the projection of y at a is 0  iff  y <= complement(a)
    adjoint-swap  proj_a(y) orthogonal to z  iff  y orthogonal to proj_a(z)
    """
    n = oml.n
    leq = oml.lattice.leq_mat
    ortho = oml.ortho
    S = _sasaki_table(oml)
    ar = np.arange(n)

    def fixed_below(lo, hi):
        for a in range(lo, hi):
            bad = np.nonzero(leq[:, a] != (S[a] == ar))[0]
            if bad.size:
                return (a, int(bad[0]))
        return None

    def interior(lo, hi):
        for a in range(lo, hi):
            v = S[a, ortho[S[a, ortho]]]
            bad = np.nonzero(~leq[v, ar])[0]
            if bad.size:
                return (a, int(bad[0]))
        return None

    def annihilates(lo, hi):
        for a in range(lo, hi):
            bad = np.nonzero((S[a] == oml.bottom) != leq[:, ortho[a]])[0]
            if bad.size:
                return (a, int(bad[0]))
        return None

    def adjoint_swap(lo, hi):
        for a in range(lo, hi):
            lhs = leq[S[a]][:, ortho]
            rhs = leq[:, ortho[S[a]]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                y, z = map(int, bad[0])
                return (a, y, z)
        return None

    hits = [
        ("fixed-below", first_hit(fixed_below, n, workers)),
        ("interior", first_hit(interior, n, workers)),
        ("annihilates", first_hit(annihilates, n, workers)),
        ("adjoint-swap", first_hit(adjoint_swap, n, workers)),
    ]
    named = [
        (ax, None if w is None else tuple(oml.label(i) for i in w)) for ax, w in hits
    ]
    return make_report(subject, named)


def dagger_kernel_report(
    oml: FiniteOML, cap=None, workers=1, subject="dagger-kernel", maps=None
):
    """Kernel structure of every endomap.

    For each map f with kernel element k = complement(dagger(f)(top)):
    the set f sends to 0 is exactly the downset of k; f kills the kernel
    embedding; the embedding splits to the projection at k and normalizes
    to the identity; the embedding is a dagger mono whose dagger is the
    coembedding; and every m with f o m = 0 factors: proj_k o m = m.
    """
    from .linmap import _sasaki_split, compose, identity_map

    if maps is None:
        maps = enumerate_lin(oml, cap=cap, workers=workers)
    values = np.array([f.values for f in maps], dtype=np.int32)
    leq = oml.lattice.leq_mat
    S = _sasaki_table(oml)
    n = oml.n
    kcount = len(maps)

    def per_map(fi):
        f = maps[fi]
        fstar = dagger(f)
        k = oml.orthoc(fstar.values[oml.top])
        sub, coembed, embed = _sasaki_split(oml, k)
        issues = {}
        zero_set = values[fi] == oml.bottom
        bad = np.nonzero(zero_set != leq[:, k])[0]
        if bad.size:
            issues["kernel-downset"] = (vector_label(f), oml.label(int(bad[0])))
        killed = compose(f, embed)
        if any(v != oml.bottom for v in killed.values):
            issues["kills-kernel"] = (vector_label(f),)
        split = compose(embed, coembed)
        if split.values != tuple(int(v) for v in S[k]):
            issues["splits-projection"] = (vector_label(f),)
        normalized = compose(coembed, embed)
        if normalized != identity_map(sub.oml):
            issues["normalized"] = (vector_label(f),)
        if dagger(embed) != coembed:
            issues["embed-dagger-of-coembed"] = (vector_label(f),)
        if compose(dagger(embed), embed) != identity_map(sub.oml):
            issues["embed-dagger-mono"] = (vector_label(f),)
        ann = np.nonzero((values[fi][values] == oml.bottom).all(axis=1))[0]
        if ann.size:
            mv = values[ann]
            bad = np.nonzero((S[k][mv] != mv).any(axis=1))[0]
            if bad.size:
                issues["weak-kernel"] = (
                    vector_label(f),
                    vector_label(maps[int(ann[bad[0]])]),
                )
        return issues

    axioms = (
        "kernel-downset",
        "kills-kernel",
        "splits-projection",
        "normalized",
        "embed-dagger-of-coembed",
        "embed-dagger-mono",
        "weak-kernel",
    )
    found = {}

    def scan_for(axiom):
        def scan(lo, hi):
            for fi in range(lo, hi):
                cached = found.get(fi)
                if cached is None:
                    cached = per_map(fi)
                    found[fi] = cached
                if axiom in cached:
                    return (fi,)
            return None

        return scan

    hits = []
    for axiom in axioms:
        w = first_hit(scan_for(axiom), kcount, workers)
        hits.append((axiom, None if w is None else found[w[0]][axiom]))
    return make_report(subject, hits)


# ---------------------------------------------------------------------------
# the pipeline

class _Ctx:
    """Lazily built shared structures for one verification run."""

    def __init__(self, oml: FiniteOML, cap, workers):
        self.oml = oml
        self.cap = cap
        self.workers = workers
        self._built = {}

    def maps(self):
        if "maps" not in self._built:
            self._built["maps"] = enumerate_lin(
                self.oml, cap=self.cap, workers=self.workers
            )
        return self._built["maps"]

    def foulis(self):
        if "foulis" not in self._built:
            self._built["foulis"] = foulis_from_lin(
                self.oml, cap=self.cap, workers=self.workers
            )
        return self._built["foulis"]

    def sub_report(self):
        if "sub" not in self._built:
            f, _ = self.foulis()
            self._built["sub"] = sasaki_oml_report(f, workers=self.workers)
        return self._built["sub"]


def _run_selector(sel: str, ctx: _Ctx):
    """Evaluate one selector; returns (reports, extra-dict)."""
    w = ctx.workers
    if sel == "sasaki-facts":
        return [sasaki_facts_report(ctx.oml, workers=w)], {}
    if sel == "dagger-kernel":
        return [
            dagger_kernel_report(ctx.oml, cap=ctx.cap, workers=w, maps=ctx.maps())
        ], {}
    if sel == "quantale":
        f, _ = ctx.foulis()
        return [check_quantale(f.base, workers=w)], {}
    if sel == "involutive":
        f, _ = ctx.foulis()
        return [check_involutive(f.base, workers=w)], {}
    if sel == "foulis":
        f, _ = ctx.foulis()
        return [check_foulis(f, workers=w)], {}
    if sel == "star-props":
        f, _ = ctx.foulis()
        return [check_star_props(f, workers=w)], {}
    if sel == "sasaki-oml":
        _, report = ctx.sub_report()
        return [report], {}
    if sel == "modules":
        f, view = ctx.foulis()
        sub, _ = ctx.sub_report()
        lm = lin_module(ctx.oml, f.base, view)
        sm = sasaki_module(f, sub)
        return [
            check_left_module(lm, subject="lin-module", workers=w),
            check_left_module(sm, subject="sasaki-module", workers=w),
            check_right_two_module(
                ctx.oml.lattice, left=lm, subject="two-module", workers=w
            ),
            check_right_two_module(
                sub.oml.lattice, left=sm, subject="projection-two-module", workers=w
            ),
        ], {}
    if sel == "hom":
        f, _ = ctx.foulis()
        sub, _ = ctx.sub_report()
        h = hom_h(f, cap=ctx.cap, workers=w, sub=sub)
        return [check_hom(h, workers=w)], {"injective": h.injective}
    if sel == "roundtrip":
        return [
            roundtrip_iso(ctx.oml, cap=ctx.cap, workers=w, built=ctx.foulis())
        ], {}
    raise ValueError(f"unknown selector {sel!r}")


def run_verify(oml: FiniteOML, selectors, subject="input", cap=None, workers=1):
    """Run the selected pipelines; returns (payload, exit_code).

    Exit 0 when everything selected ran and passed; 1 when a law failed
    (including dependents skipped because a selected prerequisite failed);
    2 when the pipeline refused because the input fails the OML laws or an
    unselected prerequisite fails.
    """
    if any(s not in SELECTORS and s != "all" for s in selectors):
        bad = [s for s in selectors if s not in SELECTORS and s != "all"]
        raise ValueError(f"unknown selector {bad[0]!r}")
    run_all = "all" in selectors
    requested = list(SELECTORS) if run_all else [
        s for s in SELECTORS if s in set(selectors)
    ]
    gate = check_oml(oml, subject="check-oml", workers=workers)
    payload = {
        "input": subject,
        "selected": requested,
        "gate": gate.to_dict(),
        "refused": False,
        "results": {},
    }
    if not gate.passed:
        if not run_all:
            payload["refused"] = True
            payload["passed"] = False
            return payload, 2
        for sel in requested:
            payload["results"][sel] = {
                "skipped": True,
                "reason": "input fails the OML laws",
                "passed": None,
            }
        payload["passed"] = False
        return payload, 1

    ctx = _Ctx(oml, cap, workers)
    status: dict[str, bool] = {}
    outputs: dict[str, tuple] = {}

    def ensure(sel):
        if sel in status:
            return status[sel]
        for pre in _PREREQS[sel]:
            if not ensure(pre):
                status[sel] = False
                outputs[sel] = ("blocked", pre)
                return False
        reports, extra = _run_selector(sel, ctx)
        ok = all(r.passed for r in reports)
        status[sel] = ok
        outputs[sel] = ("ran", reports, extra)
        return ok

    refused = False
    for sel in requested:
        ensure(sel)
        out = outputs[sel]
        if out[0] == "blocked":
            pre = out[1]
            entry = {
                "skipped": True,
                "reason": f"prerequisite '{pre}' failed",
                "passed": None,
            }
            if pre not in requested:
                refused = True
        else:
            _, reports, extra = out
            entry = {
                "skipped": False,
                "passed": all(r.passed for r in reports),
                "reports": [r.to_dict() for r in reports],
            }
            entry.update(extra)
        payload["results"][sel] = entry

    all_pass = all(
        payload["results"][s].get("passed") is True for s in requested
    )
    payload["passed"] = all_pass
    if refused:
        payload["refused"] = True
        return payload, 2
    return payload, 0 if all_pass else 1


def verify_text(payload: dict) -> str:
    """Human-readable rendering of a verification payload."""
    lines = [f"input: {payload['input']}"]
    gate = payload["gate"]
    lines.append(f"check-oml: {'PASS' if gate['passed'] else 'FAIL'}")
    if not gate["passed"]:
        for v in gate["violations"]:
            lines.append(f"  {v['axiom']} at ({', '.join(v['witness'])})")
    if payload["refused"]:
        lines.append("refused: prerequisite checks failed; nothing verified")
    for sel in payload["selected"]:
        entry = payload["results"].get(sel)
        if entry is None:
            continue
        if entry.get("skipped"):
            lines.append(f"{sel}: SKIP ({entry['reason']})")
            continue
        lines.append(f"{sel}: {'PASS' if entry['passed'] else 'FAIL'}")
        for rep in entry["reports"]:
            for v in rep["violations"]:
                lines.append(
                    f"  {rep['subject']}: {v['axiom']} at ({', '.join(v['witness'])})"
                )
        if "injective" in entry:
            lines.append(f"  injective: {entry['injective']}")
    lines.append(f"overall: {'PASS' if payload.get('passed') else 'FAIL'}")
    return "\n".join(lines) + "\n"
