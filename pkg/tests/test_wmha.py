from __future__ import annotations

from dataclasses import replace

import pytest

from conftest import structure
from qgroupoid.linalg import SparseVector, tensor
from qgroupoid.wmha import AXIOMS, FIELDS, cop, mutate, run_axiom_suite, run_lazy_suite

FINITE = ["CZ1", "CZ2", "CZ3", "CP2", "KP2", "KZ2", "KZ3", "CP2⊔CZ3"]


def _e(x):
    return SparseVector.basis(x)


@pytest.mark.parametrize("name", FINITE)
def test_axiom_suite_passes(name):
    rep = run_axiom_suite(structure(name))
    assert rep.failing() == []
    assert [r.axiom for r in rep.results] == list(AXIOMS)


@pytest.mark.parametrize("name", ["CP2", "KP2", "CZ3"])
def test_opposite_structure_passes(name):
    assert run_axiom_suite(cop(structure(name))).ok


def test_every_check_declares_fields_it_reads():
    rep = run_axiom_suite(structure("CZ2"))
    for r in rep.results:
        assert r.reads and set(r.reads) <= set(FIELDS)


def test_canonical_idempotent_of_CP2():
    w = structure("CP2")
    assert w.E == tensor(_e("λ[p1_1]"), _e("λ[p1_1]")) + tensor(_e("λ[p2_2]"), _e("λ[p2_2]"))


def test_source_and_target_maps_of_CP2():
    w = structure("CP2")
    g = w.extras["groupoid"]
    for p in g.morphisms:
        lp = _e(f"λ[{p}]")
        assert w.eps_t(lp) == _e(f"λ[{g.identity(g.target(p))}]")
        assert w.eps_s(lp) == _e(f"λ[{g.identity(g.source(p))}]")
        assert w.S(lp) == _e(f"λ[{g.inverse(p)}]")
        assert w.eps(lp) == 1


def test_base_algebras_dimensions():
    assert len(structure("CP2").source_algebra()) == 2
    assert len(structure("CP2").target_algebra()) == 2
    assert len(structure("CZ3").target_algebra()) == 1
    assert len(structure("CP2⊔CZ3").target_algebra()) == 3


def test_function_algebra_counit_and_E():
    w = structure("KP2")
    assert w.eps(_e("δ[p1_1]")) == 1 and w.eps(_e("δ[p1_2]")) == 0
    assert len(w.E) == 8
    u = w.unit()
    assert w.E != tensor(u, u)


def test_hopf_fixture_has_trivial_E():
    w = structure("CZ2")
    u = w.unit()
    assert w.E == tensor(u, u)


def test_opposite_coproduct_swaps_legs():
    w = structure("KP2")
    c = cop(w)
    d = w.delta(_e("δ[p1_2]"))
    assert c.delta(_e("δ[p1_2]")) == SparseVector({(b, a): k for (a, b), k in d.items()})
    assert c.S(w.S(_e("δ[p1_2]"))) == _e("δ[p1_2]")


def test_restricting_coproduct_to_a_summand_breaks_fullness():
    w = structure("CP2⊔CZ3")
    keep = {b for b in w.basis if "p" in b}
    T1, T2 = w.T1, w.T2
    bad = replace(
        w,
        T1=lambda a, b: T1(a, b) if a in keep else SparseVector(),
        T2=lambda a, b: T2(a, b) if b in keep else SparseVector(),
    )
    rep = run_axiom_suite(bad)
    assert "fullness" in rep.failing()


def test_regularity_needs_the_opposite_data():
    w = replace(structure("CZ2"), T3=None)
    assert not w.regular
    rep = run_axiom_suite(w, only=["regularity"])
    assert rep["regularity"].witnesses[0].startswith("precondition")
    with pytest.raises(ValueError):
        cop(w)


def test_mutate_replaces_one_entry_only():
    w = structure("CZ2")
    m = mutate(w, "counit", "λ[g0]", 0)
    assert m.eps(_e("λ[g0]")) == 0 and m.eps(_e("λ[g1]")) == w.eps(_e("λ[g1]"))
    assert w.eps(_e("λ[g0]")) == 1
    m = mutate(w, "T1", ("λ[g0]", "λ[g1]"), {})
    assert not m.tt(1, _e("λ[g0]"), _e("λ[g1]")) and w.tt(1, _e("λ[g0]"), _e("λ[g1]"))


def test_finite_suite_rejects_lazy_backend():
    with pytest.raises(ValueError):
        run_axiom_suite(structure("lazy-pairN"))


def test_lazy_suite_is_seeded_and_green():
    w = structure("lazy-pairN")
    r1 = run_lazy_suite(w, budget=60, seed=3)
    r2 = run_lazy_suite(w, budget=60, seed=3)
    assert r1.ok and r1.to_json() == r2.to_json()
    assert {r.status for r in r1.results} == {"sampled-pass"}
