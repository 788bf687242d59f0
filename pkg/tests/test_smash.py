from __future__ import annotations

import pytest

from conftest import module, structure
from qgroupoid.linalg import SparseVector, span_rank
from qgroupoid.smash import (
    ModuleAlgebra,
    check_base_identities,
    check_covariant,
    check_module_algebra,
    check_MR_extension,
    check_multiplier_extension,
    check_pi_maps,
    check_smash,
    covariant_correspondence,
    left_regular_smash_module,
    regular_covariant_module,
    smash_product,
    smash_t,
)

MODULES = ["trivial-action", "P2-set-action", "adjoint-action", "Z2-translation"]


def _e(x):
    return SparseVector.basis(x)


@pytest.mark.parametrize("name", MODULES)
@pytest.mark.parametrize("check", [check_module_algebra, check_base_identities, check_multiplier_extension,
                                   check_MR_extension])
def test_module_algebra_layer(name, check):
    rep = check(module(name))
    assert rep.ok, rep.failing()


@pytest.mark.parametrize("name", MODULES)
def test_smash_layer(name):
    s = smash_product(module(name))
    for rep in (check_smash(s), smash_t(s).report, check_pi_maps(s)):
        assert rep.ok, (rep.title, rep.failing())


def test_smash_dimensions_for_set_action():
    s = smash_product(module("P2-set-action"))
    # R#A = E▷(R⊗A): δ_x⊗λ_p survives iff x is the target of p
    assert s.dim == 4
    assert smash_t(s).report.info["dim quotient"] == 4


def test_smash_basis_elements_multiply_like_matrix_units():
    s = smash_product(module("P2-set-action"))
    z = s.sharp(_e("δ[2]"), _e("λ[p1_2]"))
    w = s.sharp(_e("δ[1]"), _e("λ[p2_1]"))
    assert z and w
    assert s.mul(z, w) == s.sharp(_e("δ[2]"), _e("λ[p2_2]"))
    assert not s.mul(z, z)


def test_smash_of_trivial_action_is_the_algebra():
    s = smash_product(module("trivial-action"))
    assert s.dim == structure("CP2").algebra.dim


@pytest.mark.parametrize("name", ["P2-set-action", "Z2-translation"])
def test_covariant_correspondence_round_trips(name):
    m = module(name)
    s = smash_product(m)
    V = regular_covariant_module(m)
    assert check_covariant(m, V).ok
    for mod in (V, left_regular_smash_module(s)):
        _, rep = covariant_correspondence(s, mod)
        assert rep.ok, rep.failing()
        assert rep["round-trip"].ok


def test_broken_module_law_is_detected():
    m = module("P2-set-action")
    bad = ModuleAlgebra(m.R, m.A, lambda a, r: m.act_basis(a, r) if a != "λ[p1_2]" else _e(r), "broken")
    assert not check_module_algebra(bad).ok


def test_non_unital_action_is_detected():
    m = module("P2-set-action")
    bad = ModuleAlgebra(m.R, m.A, lambda a, r: SparseVector(), "zero action")
    rep = check_module_algebra(bad)
    assert not rep.ok


def test_smash_span_rank_matches_projector():
    s = smash_product(module("adjoint-action"))
    rep = check_smash(s)
    assert rep.info["rank projector"] == s.dim
    assert span_rank(s.embed(_e(b)) for b in s.basis) == s.dim
