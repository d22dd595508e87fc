"""Module actions: the endomorphism quantale on its own lattice, a Foulis
quantale on its projection lattice, and the canonical right action of the
two-element quantale on any complete lattice."""

import numpy as np
import pytest

from omlq import (
    ModuleAction,
    StructureViolation,
    catalog,
    check_left_module,
    check_right_two_module,
    lin_module,
    module_action,
    sasaki_action,
    sasaki_apply,
    sasaki_module,
    sasaki_oml,
)


# ---------------------------------------------------------------------------
# Application action of the endomorphism quantale.
# ---------------------------------------------------------------------------


def test_lin_module_rows_are_value_tables(fq_b2, b2):
    f, view = fq_b2
    mod = lin_module(b2, q=f.base, view=view)
    for s in range(f.n):
        assert tuple(mod.table[s]) == view.map_at(s).values
        for a in range(b2.n):
            assert mod.act(s, a) == view.map_at(s)(a)


def test_lin_module_laws(fq_b1, fq_b2, fq_mo2, b1, b2, mo2):
    for (f, view), oml in ((fq_b1, b1), (fq_b2, b2), (fq_mo2, mo2)):
        mod = lin_module(oml, q=f.base, view=view)
        report = check_left_module(mod)
        assert report.passed, str(report)


def test_lin_module_axiom_names(fq_b2, b2):
    f, view = fq_b2
    report = check_left_module(lin_module(b2, q=f.base, view=view))
    assert set(report.axioms) == {
        "act-join", "act-bottom", "join-act", "zero-act", "assoc-act",
        "unit-act",
    }


def test_unit_and_zero_rows(fq_b2, b2):
    f, view = fq_b2
    mod = lin_module(b2, q=f.base, view=view)
    assert list(mod.table[f.base.unit]) == list(range(b2.n))
    assert all(v == b2.bottom for v in mod.table[f.base.zero])


def test_projection_rows_are_sasaki_application(fq_mo2, mo2):
    f, view = fq_mo2
    mod = lin_module(mo2, q=f.base, view=view)
    for a in range(mo2.n):
        s = view.index_of([sasaki_apply(mo2, a, y) for y in range(mo2.n)])
        assert list(mod.table[s]) == [
            sasaki_apply(mo2, a, y) for y in range(mo2.n)
        ]


# ---------------------------------------------------------------------------
# Action on the projection lattice.
# ---------------------------------------------------------------------------


def test_sasaki_module_laws(fq_b1, fq_b2, fq_b3, fq_mo2):
    for f, _ in (fq_b1, fq_b2, fq_b3, fq_mo2):
        report = check_left_module(sasaki_module(f))
        assert report.passed, str(report)


def test_sasaki_module_rows_match_action_maps(fq_b2):
    f, _ = fq_b2
    sub = sasaki_oml(f)
    mod = sasaki_module(f, sub)
    for u in range(f.n):
        act = sasaki_action(f, u, sub)
        assert tuple(mod.table[u]) == act.values


def test_sasaki_module_agrees_with_elementwise_action(fq_b2):
    f, _ = fq_b2
    sub = sasaki_oml(f)
    mod = sasaki_module(f, sub)
    for u in range(f.n):
        for i, k in enumerate(sub.members):
            assert sub.to_host(mod.act(u, i)) == module_action(f, u, k)


# ---------------------------------------------------------------------------
# The right action of the two-element quantale.
# ---------------------------------------------------------------------------


def test_right_two_module_on_catalog_lattices():
    names = (
        "boolean:1", "boolean:2", "boolean:3", "boolean:4",
        "mo:1", "mo:2", "mo:3", "mo:4", "benzene", "zero",
        "product(boolean:2,mo:2)",
    )
    for name in names:
        report = check_right_two_module(catalog(name).lattice, subject=name)
        assert report.passed, str(report)


def test_right_two_module_axiom_names(b2):
    report = check_right_two_module(b2.lattice)
    assert set(report.axioms) == {
        "two-unit-act", "two-zero-act", "two-join-act", "act-two-join",
        "two-assoc",
    }


def test_right_two_module_compatible_with_left_action(fq_b2, b2):
    f, view = fq_b2
    left = lin_module(b2, q=f.base, view=view)
    report = check_right_two_module(b2.lattice, left=left)
    assert report.passed, str(report)
    assert "bimodule-compat" in report.axioms


def test_right_two_module_rejects_mismatched_left(fq_b2, mo2):
    f, view = fq_b2
    left = lin_module(catalog("boolean:2"), q=f.base, view=view)
    with pytest.raises(StructureViolation):
        check_right_two_module(mo2.lattice, left=left)


# ---------------------------------------------------------------------------
# Perturbations.
# ---------------------------------------------------------------------------


def test_action_table_shape_is_validated(fq_b2, b2):
    f, _ = fq_b2
    with pytest.raises(StructureViolation):
        ModuleAction(f.base, b2.lattice, np.zeros((3, 3), dtype=np.int32))


def test_perturbed_unit_row_is_caught(fq_b2, b2):
    f, view = fq_b2
    mod = lin_module(b2, q=f.base, view=view)
    table = mod.table.copy()
    table[f.base.unit, b2.top] = b2.bottom
    report = check_left_module(ModuleAction(f.base, b2.lattice, table))
    assert not report.passed
    assert report.witness("unit-act") == ("1",)


def test_perturbed_interior_entry_is_caught(fq_b2, b2):
    f, view = fq_b2
    mod = lin_module(b2, q=f.base, view=view)
    # flip one non-unit, non-zero row entry
    s = next(
        i for i in range(f.n) if i not in (f.base.unit, f.base.zero)
    )
    table = mod.table.copy()
    a = b2.index("a")
    table[s, a] = (table[s, a] + 1) % b2.n
    report = check_left_module(ModuleAction(f.base, b2.lattice, table))
    assert not report.passed
    assert report.violations[0].witness


def test_perturbed_composition_yields_assoc_witness(fq_b2, b2):
    f, view = fq_b2
    mod = lin_module(b2, q=f.base, view=view)
    # replace a whole row by another row: unit laws survive, composition
    # with the mutated element cannot
    rows = mod.table.copy()
    s, t = sorted(
        i for i in range(f.n) if i not in (f.base.unit, f.base.zero)
    )[:2]
    rows[s] = rows[t]
    report = check_left_module(ModuleAction(f.base, b2.lattice, rows))
    assert not report.passed
    failing = {v.axiom for v in report.violations}
    assert "assoc-act" in failing
