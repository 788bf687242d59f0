from __future__ import annotations

import pytest

from conftest import module, structure
from qgroupoid.constructions import (
    adjoint_module_algebra,
    centralizer_of_source,
    check_adjoint,
    delta_label,
    function_algebra,
    groupoid_algebra,
    groupoid_pairing,
    lam,
    lazy_groupoid_algebra,
    object_action,
    set_action_module_algebra,
)
from qgroupoid.duality import check_pairing
from qgroupoid.groupoid import GroupoidAction, cyclic_group, lazy_pair_groupoid, pair_groupoid
from qgroupoid.linalg import SparseVector, span_equal, tensor


def _e(x):
    return SparseVector.basis(x)


def test_labels():
    assert lam("p1_2") == "λ[p1_2]" and delta_label("g0") == "δ[g0]"


def test_groupoid_algebra_product_is_composition():
    w = structure("CP2")
    assert w.mul(_e("λ[p2_1]"), _e("λ[p1_2]")) == _e("λ[p1_1]")
    assert not w.mul(_e("λ[p1_2]"), _e("λ[p1_2]"))
    assert w.delta(_e("λ[p1_2]")) == tensor(_e("λ[p1_2]"), _e("λ[p1_2]"))


def test_function_algebra_coproduct_sums_factorizations():
    w = structure("KP2")
    d = w.delta(_e("δ[p1_2]"))
    assert len(d) == 2
    assert d == tensor(_e("δ[p1_2]"), _e("δ[p1_1]")) + tensor(_e("δ[p2_2]"), _e("δ[p1_2]"))
    assert w.mul(_e("δ[p1_2]"), _e("δ[p1_2]")) == _e("δ[p1_2]")
    assert not w.mul(_e("δ[p1_2]"), _e("δ[p2_1]"))


def test_groupoid_algebra_rejects_invalid_groupoid():
    from dataclasses import replace

    g = pair_groupoid(2)
    t = dict(g.table)
    t["p1_2", "p1_1"] = "p2_2"
    with pytest.raises(ValueError):
        groupoid_algebra(replace(g, table=t))


def test_centralizer_of_source_for_CP2():
    w = structure("CP2")
    assert span_equal(centralizer_of_source(w), [_e("λ[p1_1]"), _e("λ[p2_2]")])
    assert check_adjoint(w).ok


def test_set_action_moves_points():
    m = module("P2-set-action")
    assert m.act_basis("λ[p1_2]", "δ[1]") == _e("δ[2]")
    assert not m.act_basis("λ[p1_1]", "δ[2]")
    assert not m.act_basis("λ[p1_2]", "δ[2]")
    assert m.act_basis("λ[p2_2]", "δ[2]") == _e("δ[2]")


def test_trivial_action_on_target_algebra():
    m = module("trivial-action")
    R = m.R
    by_vec = {tuple(R.vectors[t].items()): t for t in R.basis}
    t1 = by_vec[tuple(_e("λ[p1_1]").items())]
    t2 = by_vec[tuple(_e("λ[p2_2]").items())]
    assert R.embed(m.act_basis("λ[p1_2]", t1)) == _e("λ[p2_2]")
    assert m.act_basis("λ[p1_2]", t2) == SparseVector()
    assert m.act_basis("λ[p2_2]", t2) == SparseVector.basis(t2)


def test_adjoint_action_dimension():
    m = adjoint_module_algebra(structure("CP2"))
    assert m.R.dim == 2


def test_invalid_action_is_rejected():
    g = pair_groupoid(2)
    w = groupoid_algebra(g)
    a = object_action(g)
    broken = GroupoidAction(g, a.points, a.domain, {**a.maps, "p1_2": {"1": "1"}})
    with pytest.raises(ValueError):
        set_action_module_algebra(w, broken)


def test_set_actions_need_groupoid_algebra():
    g = pair_groupoid(2)
    with pytest.raises(ValueError):
        set_action_module_algebra(function_algebra(g), object_action(g))


def test_groupoid_pairing_is_delta_pairing():
    P = groupoid_pairing(pair_groupoid(2))
    assert P.pair(_e("λ[p1_2]"), _e("δ[p1_2]")) == 1
    assert P.pair(_e("λ[p1_2]"), _e("δ[p2_1]")) == 0
    assert check_pairing(P).ok
    assert check_pairing(groupoid_pairing(cyclic_group(3))).ok


def test_pairing_transposes_product_and_coproduct():
    g = pair_groupoid(2)
    P = groupoid_pairing(g)
    A, B = P.A, P.B
    for x in A.basis:
        for y in A.basis:
            for b in B.basis:
                lhs = P.pair(A.mul(_e(x), _e(y)), _e(b))
                rhs = P.pair2(tensor(_e(x), _e(y)), B.delta(_e(b)))
                assert lhs == rhs


def test_lazy_groupoid_algebra_products():
    w = lazy_groupoid_algebra(lazy_pair_groupoid())
    assert not w.finite and w.E is None
    assert w.algebra.mul_basis((5, 9), (1, 5)) == _e((1, 9))
    assert not w.algebra.mul_basis((1, 5), (5, 9))
    assert w.tt(1, _e((1, 5)), _e((2, 1))) == tensor(_e((1, 5)), _e((2, 5)))
    same_target = tensor(_e((3, 4)), _e((6, 4)))
    assert w.E_mult.left(same_target) == same_target
    assert w.E_mult.left(tensor(_e((3, 4)), _e((3, 7)))) == SparseVector()
