from __future__ import annotations

import pytest

from conftest import dual, structure
from qgroupoid.constructions import function_algebra, groupoid_pairing
from qgroupoid.duality import (
    DualityError,
    Pairing,
    bidual_map,
    check_faithful,
    check_pairing,
    check_wmha_isomorphism,
    delta_identification,
    dual_wmha,
    find_integrals,
    is_integral,
    resolve_integral,
)
from qgroupoid.groupoid import pair_groupoid
from qgroupoid.linalg import SparseVector, span_equal
from qgroupoid.wmha import run_axiom_suite

FINITE = ["CZ1", "CZ2", "CZ3", "CP2", "KP2", "KZ2", "KZ3", "CP2⊔CZ3"]


def _e(x):
    return SparseVector.basis(x)


def test_integrals_of_CP2_are_supported_on_units():
    w = structure("CP2")
    for side in ("left", "right"):
        assert span_equal(find_integrals(w, side), [_e("λ[p1_1]"), _e("λ[p2_2]")])
    phi = resolve_integral(w, "unit-indicator")
    assert is_integral(w, phi, "left") and is_integral(w, phi, "right")
    assert check_faithful(w, [phi])
    assert not check_faithful(w, [_e("λ[p1_1]")])


def test_integrals_of_function_algebra_are_constant_on_source_fibres():
    w = structure("KP2")
    fibres = [SparseVector({"δ[p1_1]": 1, "δ[p1_2]": 1}), SparseVector({"δ[p2_1]": 1, "δ[p2_2]": 1})]
    assert span_equal(find_integrals(w), fibres)
    assert check_faithful(w, [resolve_integral(w, "counting")])


@pytest.mark.parametrize("spec", ["nope", "7", "unit-indicator"])
def test_bad_integral_selection(spec):
    with pytest.raises(DualityError):
        resolve_integral(structure("KP2"), spec)


def test_unfaithful_integral_is_refused():
    w = structure("CP2")
    with pytest.raises(DualityError):
        dual_wmha(w, resolve_integral(w, 0))


@pytest.mark.parametrize("name", FINITE)
def test_dual_is_a_wmha_and_pairs_well(name):
    D = dual(name)
    assert run_axiom_suite(D.structure).ok
    assert check_pairing(D.pairing).ok
    assert len(D.labels) == len(structure(name).basis)


@pytest.mark.parametrize("name", ["CZ2", "CZ3", "CP2", "CP2⊔CZ3"])
def test_dual_of_groupoid_algebra_is_function_algebra(name):
    D = dual(name)
    K = function_algebra(structure(name).extras["groupoid"])
    assert check_wmha_isomorphism(K, D.structure, delta_identification(D, K)).ok


@pytest.mark.parametrize("name", ["CP2", "KP2"])
def test_bidual_is_canonically_isomorphic(name):
    D = dual(name)
    DD = dual_wmha(D.structure, resolve_integral(D.structure))
    assert check_wmha_isomorphism(structure(name), DD.structure, bidual_map(D, DD)).ok


def test_wrong_identification_is_rejected():
    D = dual("CP2")
    K = function_algebra(pair_groupoid(2))
    f = delta_identification(D, K)
    f = {**f, "δ[p1_2]": f["δ[p2_1]"], "δ[p2_1]": f["δ[p1_2]"]}
    assert not check_wmha_isomorphism(K, D.structure, f).ok


def test_corrupted_pairing_is_detected():
    P = groupoid_pairing(pair_groupoid(2))
    table = dict(P.table)
    table["λ[p1_2]", "δ[p1_2]"] = 2
    bad = Pairing(P.A, P.B, table)
    rep = check_pairing(bad)
    assert not rep.ok


def test_pairing_surjectivity_flags():
    P = dual("KP2").pairing
    assert P.surjectivity() == {"A▷B": True, "B◁A": True, "B▷A": True, "A◁B": True}
    zero = Pairing(P.A, P.B, {})
    assert not any(zero.surjectivity().values())


def test_unit_value_routes_agree():
    P = dual("CP2").pairing
    for side in ("A", "B"):
        assert P.unit_value(side, "◁") == P.unit_value(side, "▷")
    assert P.unit_value("A", "◁") == {x: structure("CP2").eps(_e(x)) for x in P.A.basis}


def test_omega_values():
    D = dual("CP2")
    w = structure("CP2")
    om = D.omega(_e("λ[p2_1]"))
    # φ(λ_{p2_1}·) is the indicator of the inverse morphism
    assert D.value(om, _e("λ[p1_2]")) == 1
    assert D.value(om, _e("λ[p2_1]")) == 0
    assert D.value(D.omega(w.unit()), _e("λ[p1_1]")) == 1
