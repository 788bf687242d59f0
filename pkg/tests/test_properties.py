"""Randomized invariants over the fixture structures."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dual, module, structure
from qgroupoid.constructions import function_algebra, groupoid_algebra
from qgroupoid.groupoid import cyclic_group, disjoint_union, pair_groupoid, parse, render, validate
from qgroupoid.linalg import SparseVector, tensor
from qgroupoid.smash import smash_product
from qgroupoid.wmha import run_lazy_suite, tensor_mul

NAMES = ["CZ2", "CZ3", "CP2", "KP2", "CP2⊔CZ3"]
coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
settings.register_profile("algebra", max_examples=40, deadline=None)
settings.load_profile("algebra")


def elements(w):
    return st.dictionaries(st.sampled_from(w.basis), coeffs, max_size=4).map(SparseVector)


def tensors(w):
    return st.dictionaries(st.tuples(st.sampled_from(w.basis), st.sampled_from(w.basis)), coeffs,
                           max_size=4).map(SparseVector)


@st.composite
def structure_and_elements(draw, k=2):
    w = structure(draw(st.sampled_from(NAMES)))
    return (w, *[draw(elements(w)) for _ in range(k)])


@given(structure_and_elements(2))
def test_coproduct_is_multiplicative(args):
    w, a, b = args
    assert w.delta(w.mul(a, b)) == tensor_mul(w.algebra, w.delta(a), w.delta(b))


@given(structure_and_elements(2))
def test_antipode_reverses_products(args):
    w, a, b = args
    assert w.S(w.mul(a, b)) == w.mul(w.S(b), w.S(a))
    assert w.Sinv(w.S(a)) == a


@given(structure_and_elements(1))
def test_counit_on_either_leg(args):
    w, a = args
    d = w.delta(a)
    assert w.eps_leg(d, 0) == a == w.eps_leg(d, 1)


@given(st.sampled_from(NAMES).flatmap(lambda n: st.tuples(st.just(structure(n)), tensors(structure(n)))))
def test_E_is_idempotent_and_absorbs_T1(args):
    w, v = args
    ev = w.E_left(v)
    assert w.E_left(ev) == ev
    assert w.E_right(w.E_right(v)) == w.E_right(v)
    t1 = w.t(1, v)
    assert w.E_left(t1) == t1


@given(structure_and_elements(1))
def test_source_and_target_maps_are_idempotent(args):
    w, a = args
    assert w.eps_t(w.eps_t(a)) == w.eps_t(a)
    assert w.eps_s(w.eps_s(a)) == w.eps_s(a)


@given(st.sampled_from(["CP2", "KP2", "CZ3"]).flatmap(
    lambda n: st.tuples(st.just(n), elements(structure(n)), elements(structure(n)), elements(dual(n).structure))))
def test_pairing_transposes_product(args):
    n, a, b, f = args
    P = dual(n).pairing
    assert P.pair(P.A.mul(a, b), f) == P.pair2(tensor(a, b), P.B.delta(f))


@given(st.sampled_from(["P2-set-action", "adjoint-action", "Z2-translation"]).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.sampled_from(smash_product(module(n)).basis), min_size=3, max_size=3))))
def test_smash_product_is_associative(args):
    n, (x, y, z) = args
    s = smash_product(module(n))
    e = SparseVector.basis
    assert s.mul(s.mul(e(x), e(y)), e(z)) == s.mul(e(x), s.mul(e(y), e(z)))


@st.composite
def groupoids(draw):
    parts = draw(st.lists(st.one_of(st.integers(1, 3).map(pair_groupoid), st.integers(1, 4).map(cyclic_group)),
                          min_size=1, max_size=2))
    g = parts[0]
    for h in parts[1:]:
        g = disjoint_union(g, h)
    return g


@settings(max_examples=15)
@given(groupoids())
def test_generated_groupoids_round_trip_and_validate(g):
    assert validate(g) == []
    assert render(parse(render(g))) == render(g)


@settings(max_examples=6)
@given(groupoids())
def test_groupoid_constructions_pass_sampled_laws(g):
    for w in (groupoid_algebra(g), function_algebra(g)):
        a = SparseVector.basis(w.basis[0])
        b = SparseVector.basis(w.basis[-1])
        assert w.delta(w.mul(a, b)) == tensor_mul(w.algebra, w.delta(a), w.delta(b))
        assert w.eps_leg(w.delta(b), 0) == b


@settings(max_examples=5)
@given(st.integers(0, 10_000))
def test_lazy_suite_green_for_any_seed(seed):
    assert run_lazy_suite(structure("lazy-pairN"), budget=40, seed=seed).ok
