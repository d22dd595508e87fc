"""Annihilator projections, the projection lattice, module actions on it,
and the representation homomorphism.

Key cross-checks:

* the projection table recovered from annihilators alone (derive_sai)
  agrees with the closed form used when the quantale comes from an OML's
  endomorphisms;
* the projection lattice rebuilt from a host OML is isomorphic to that
  host, label by label;
* a lawful involutive quantale whose annihilators are not generated by
  projections is rejected with the offending element named.
"""

import numpy as np
import pytest

from omlq import (
    AmbiguousSai,
    FoulisQuantale,
    NotFoulis,
    StructureViolation,
    catalog,
    check_foulis,
    check_hom,
    check_oml,
    check_star_props,
    derive_sai,
    foulis_from_lin,
    hom_h,
    identity_map,
    leq_by_mult,
    module_action,
    roundtrip_iso,
    sasaki_action,
    sasaki_apply,
    sasaki_oml,
    sasaki_oml_report,
    sasaki_projection_index,
)

from conftest import make_nilpotent_chain_quantale, make_two_chain_quantale


# ---------------------------------------------------------------------------
# The projection table.
# ---------------------------------------------------------------------------


def test_derived_table_matches_closed_form(fq_b1, fq_b2, fq_b3, fq_mo2):
    for f, _ in (fq_b1, fq_b2, fq_b3, fq_mo2):
        assert np.array_equal(derive_sai(f.base), f.sai)


def test_two_element_quantale_projections():
    q = make_two_chain_quantale()
    sai = derive_sai(q)
    # the annihilator of the unit is {0}, generated by 0; the annihilator
    # of 0 is everything, generated by the unit
    assert sai[q.unit] == q.zero
    assert sai[q.zero] == q.unit
    f = FoulisQuantale(q, sai)
    assert check_foulis(f).passed
    assert check_star_props(f).passed


def test_identity_and_bottom_projections(fq_b2):
    f, view = fq_b2
    q = f.base
    assert f.sai_of(q.unit) == q.zero
    assert f.sai_of(q.zero) == q.unit


def test_projection_of_projection_is_complement(fq_b2, b2, fq_mo2, mo2):
    for (f, view), oml in ((fq_b2, b2), (fq_mo2, mo2)):
        for a in range(oml.n):
            pa = sasaki_projection_index(view, oml, a)
            pa_perp = sasaki_projection_index(view, oml, oml.orthoc(a))
            assert f.sai_of(pa) == pa_perp


def test_members_are_exactly_the_projections(fq_mo2, mo2):
    f, view = fq_mo2
    projections = {
        sasaki_projection_index(view, mo2, a) for a in range(mo2.n)
    }
    assert set(f.members()) == projections


def test_nilpotent_chain_has_no_projection_table():
    q = make_nilpotent_chain_quantale()
    with pytest.raises(NotFoulis) as exc:
        derive_sai(q)
    assert "'m'" in str(exc.value)


def test_foulis_laws_hold(fq_b1, fq_b2, fq_b3, fq_mo2):
    for f, _ in (fq_b1, fq_b2, fq_b3, fq_mo2):
        assert check_foulis(f).passed


def test_foulis_axiom_names(fq_b2):
    report = check_foulis(fq_b2[0])
    assert set(report.axioms) == {
        "sai-idempotent", "sai-self-adjoint", "sai-unit", "sai-annihilator",
        "perp-idempotent", "perp-self-adjoint", "perp-unit", "perp-annihilator",
    }


def test_corrupted_projection_table_is_caught(fq_b2):
    f, view = fq_b2
    sai = f.sai.copy()
    sai[f.base.unit] = f.base.unit  # the unit's projection must be 0
    report = check_foulis(FoulisQuantale(f.base, sai))
    assert not report.passed
    assert report.witness("sai-unit") is not None


def test_non_idempotent_projection_entry_is_caught(fq_b2, b2):
    f, view = fq_b2
    sai = f.sai.copy()
    # point some projection at a non-idempotent element
    non_idem = next(
        s for s in range(f.n) if f.base.times(s, s) != s
    )
    sai[f.base.unit] = non_idem
    report = check_foulis(FoulisQuantale(f.base, sai))
    assert not report.passed
    failing = {v.axiom for v in report.violations}
    assert failing & {"sai-idempotent", "sai-unit", "sai-annihilator"}


# ---------------------------------------------------------------------------
# Star properties over the projection table.
# ---------------------------------------------------------------------------


def test_star_props_hold(fq_b1, fq_b2, fq_b3, fq_mo2):
    for f, _ in (fq_b1, fq_b2, fq_b3, fq_mo2):
        assert check_star_props(f).passed


def test_star_props_axiom_names(fq_b2):
    report = check_star_props(fq_b2[0])
    assert set(report.axioms) == {
        "fixed-point", "perp-antitone", "double-perp", "perp-galois",
    }


def test_star_props_catch_swapped_projections(fq_b2):
    f, view = fq_b2
    members = f.members()
    interior = [k for k in members if k not in (f.base.zero, f.base.unit)]
    sai = f.sai.copy()
    a, b = interior[0], interior[1]
    sai[a], sai[b] = sai[b], sai[a]
    broken = FoulisQuantale(f.base, sai)
    assert not (
        check_foulis(broken).passed and check_star_props(broken).passed
    )


# ---------------------------------------------------------------------------
# The projection lattice.
# ---------------------------------------------------------------------------


def test_projection_lattice_of_two_element_quantale():
    q = make_two_chain_quantale()
    f = FoulisQuantale(q, derive_sai(q))
    sub = sasaki_oml(f)
    assert len(sub.members) == 2
    assert sub.oml.label(sub.oml.top) == q.label(q.unit)
    assert check_oml(sub.oml).passed


def test_projection_lattice_top_is_projection_of_zero(fq_b2, fq_mo2):
    for f, _ in (fq_b2, fq_mo2):
        sub = sasaki_oml(f)
        assert sub.to_host(sub.oml.top) == f.sai_of(f.base.zero)
        assert sub.to_host(sub.oml.bottom) == f.base.zero


def test_projection_lattice_is_an_oml(fq_b1, fq_b2, fq_b3, fq_mo2):
    for f, _ in (fq_b1, fq_b2, fq_b3, fq_mo2):
        sub, report = sasaki_oml_report(f)
        assert sub is not None
        assert report.passed, str(report)


def test_projection_lattice_complement_is_projection_table(fq_mo2):
    f, _ = fq_mo2
    sub = sasaki_oml(f)
    for i, k in enumerate(sub.members):
        assert sub.to_host(sub.oml.orthoc(i)) == f.sai_of(k)


def test_projection_order_is_defined_order(fq_b2):
    f, _ = fq_b2
    q = f.base
    sub = sasaki_oml(f)
    for i, k1 in enumerate(sub.members):
        for j, k2 in enumerate(sub.members):
            assert sub.oml.le(i, j) == leq_by_mult(q, k1, k2)


def test_corrupted_table_fails_construction(fq_b2):
    f, _ = fq_b2
    sai = f.sai.copy()
    sai[f.base.zero] = f.base.zero  # projection of 0 must be the top, not 0
    broken = FoulisQuantale(f.base, sai)
    with pytest.raises(StructureViolation):
        sasaki_oml(broken)
    sub, report = sasaki_oml_report(broken)
    assert sub is None
    assert not report.passed


# ---------------------------------------------------------------------------
# Module action of the quantale on its projection lattice.
# ---------------------------------------------------------------------------


def test_action_of_unit_and_zero(fq_b2):
    f, _ = fq_b2
    q = f.base
    for k in f.members():
        assert module_action(f, q.unit, k) == k
        assert module_action(f, q.zero, k) == q.zero


def test_action_restricted_to_projections_is_sasaki(fq_b2, b2):
    f, view = fq_b2
    proj = {a: sasaki_projection_index(view, b2, a) for a in range(b2.n)}
    for a in range(b2.n):
        for y in range(b2.n):
            acted = module_action(f, proj[a], proj[y])
            assert acted == proj[sasaki_apply(b2, a, y)]


def test_sasaki_action_maps(fq_b2, fq_mo2):
    for f, _ in (fq_b2, fq_mo2):
        q = f.base
        sub = sasaki_oml(f)
        assert sasaki_action(f, q.unit, sub) == identity_map(sub.oml)
        zero_act = sasaki_action(f, q.zero, sub)
        assert all(v == sub.oml.bottom for v in zero_act.values)


def test_sasaki_action_of_projection_is_local_projection(fq_b2):
    f, _ = fq_b2
    sub = sasaki_oml(f)
    for k in sub.members:
        act = sasaki_action(f, k, sub)
        i = sub.from_host(k)
        expected = [
            sasaki_apply(sub.oml, i, y) for y in range(sub.oml.n)
        ]
        assert list(act.values) == expected


# ---------------------------------------------------------------------------
# The representation homomorphism.
# ---------------------------------------------------------------------------


def test_hom_laws_hold(fq_b1, fq_b2, fq_mo2):
    for f, _ in (fq_b1, fq_b2, fq_mo2):
        h = hom_h(f)
        assert check_hom(h).passed


def test_hom_axiom_names(fq_b2):
    h = hom_h(fq_b2[0])
    report = check_hom(h)
    assert set(report.axioms) == {
        "preserves-join", "preserves-zero", "preserves-mult", "preserves-unit",
        "preserves-star", "preserves-perp", "perp-closed-form",
    }


def test_hom_unit_goes_to_identity(fq_b2):
    f, _ = fq_b2
    h = hom_h(f)
    assert h.table[f.base.unit] == h.target.base.unit


def test_hom_on_two_element_host_is_a_bijection(fq_b1):
    f, _ = fq_b1
    h = hom_h(f)
    assert h.injective
    assert len(set(h.table)) == h.target.n


def test_hom_injective_on_tested_hosts(fq_b2, fq_mo2):
    for f, _ in (fq_b2, fq_mo2):
        assert hom_h(f).injective


# ---------------------------------------------------------------------------
# Round trip: host -> endomorphisms -> projection lattice -> host.
# ---------------------------------------------------------------------------


def test_roundtrip_iso_on_catalog_hosts(b1, b2, b3, mo2, zero_l,
                                        fq_b1, fq_b2, fq_b3, fq_mo2):
    for oml, built in (
        (b1, fq_b1), (b2, fq_b2), (b3, fq_b3), (mo2, fq_mo2),
    ):
        report = roundtrip_iso(oml, built=built)
        assert report.passed, str(report)
    assert roundtrip_iso(zero_l).passed


def test_roundtrip_axiom_names(b2, fq_b2):
    report = roundtrip_iso(b2, built=fq_b2)
    assert set(report.axioms) == {
        "bijection", "order-isomorphism", "complement-preserved",
        "meet-preserved", "join-preserved",
    }


def test_projection_lattice_of_b2_has_expected_labels(fq_b2):
    sub = sasaki_oml(fq_b2[0])
    labels = sorted(sub.oml.labels)
    assert labels == sorted(["[0,0,0,0]", "[0,0,b,b]", "[0,a,0,a]", "[0,a,b,1]"])
