from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgroupoid.algebra import (
    Algebra,
    AlgebraError,
    Multiplier,
    annihilators,
    check_associative,
    check_idempotent,
    check_multiplier,
    check_nondegenerate,
    find_local_unit,
    matrix_algebra,
    multiplier_eq,
    multiplier_from_element,
    multiplier_mul,
    parse_algebra,
    render_algebra,
    subalgebra,
    tensor_algebra,
)
from qgroupoid.linalg import SparseVector

M2 = matrix_algebra(["1", "2"], "M2")


def _e(x):
    return SparseVector.basis(x)


def direct_sum_of_units(n: int) -> Algebra:
    """Direct sum of n copies of the rationals, spanned by orthogonal idempotents."""
    return Algebra([f"e{i}" for i in range(n)], lambda a, b: {a: 1} if a == b else {})


def test_matrix_algebra_units_and_laws():
    assert M2.dim == 4
    assert check_associative(M2) == []
    assert check_nondegenerate(M2) and check_idempotent(M2)
    assert M2.unit() == SparseVector({("1", "1"): 1, ("2", "2"): 1})


def test_degenerate_and_non_idempotent_examples():
    nil = Algebra(["x", "y"], {("x", "x"): {"y": 1}})
    left, right = annihilators(nil)
    assert SparseVector({"y": 1}) in left and SparseVector({"y": 1}) in right
    assert not check_nondegenerate(nil)
    assert not check_idempotent(nil)
    assert nil.unit() is None


def test_non_associative_table_is_rejected():
    with pytest.raises(AlgebraError):
        Algebra(["a", "b"], {("a", "a"): {"b": 1}, ("a", "b"): {"a": 1}, ("b", "a"): {"b": 1}})


def test_product_must_stay_in_basis():
    with pytest.raises(AlgebraError):
        Algebra(["a"], {("a", "a"): {"z": 1}})


def test_local_units_in_a_sum_of_fields():
    A = direct_sum_of_units(5)
    e = find_local_unit(A, [_e("e1"), _e("e3") * 2])
    assert A.mul(e, _e("e1")) == _e("e1")
    assert A.mul(_e("e3"), e) == _e("e3")
    strict = find_local_unit(A, [SparseVector()])
    assert strict == SparseVector()


def test_local_unit_absent_for_nilpotent():
    nil = Algebra(["x", "y"], {("x", "x"): {"y": 1}})
    assert find_local_unit(nil, [_e("x")]) is None


def test_multiplier_from_element_and_product():
    a = SparseVector({("1", "2"): 1})
    b = SparseVector({("2", "1"): 1})
    ma, mb = multiplier_from_element(M2, a), multiplier_from_element(M2, b)
    ab = multiplier_mul(ma, mb, M2)
    assert ab.element == M2.mul(a, b)
    wit = [_e(x) for x in M2.basis]
    assert multiplier_eq(ab, multiplier_from_element(M2, M2.mul(a, b)), wit)
    assert check_multiplier(M2, ab, wit) == []


def test_bad_multiplier_detected():
    wit = [_e(x) for x in M2.basis]
    twist = Multiplier(lambda y: M2.mul(_e(("1", "1")), y), lambda y: M2.mul(y, _e(("2", "2"))))
    assert check_multiplier(M2, twist, wit)


def test_tensor_and_subalgebra():
    T = tensor_algebra(M2, direct_sum_of_units(2))
    assert T.dim == 8 and check_associative(T) == []
    D = subalgebra(M2, [_e(("1", "1")), _e(("2", "2"))], "d")
    assert D.dim == 2
    z = D.coords(_e(("2", "2")))
    assert D.embed(z) == _e(("2", "2"))
    with pytest.raises(AlgebraError):
        subalgebra(M2, [_e(("1", "2")), _e(("2", "1"))])


def test_parse_algebra_round_trip():
    text = "basis: e f\nmul: e.e = e\nmul: f.f = f  # idempotents\nmul: e.f = 0\n"
    alg = parse_algebra(text)
    assert alg.unit() == SparseVector({"e": 1, "f": 1})
    again = parse_algebra(render_algebra(alg))
    assert again.table == alg.table


def test_parse_algebra_coefficients():
    alg = parse_algebra("basis: u x\nmul: u.u = u\nmul: u.x = x\nmul: x.u = x\nmul: x.x = -1/2*u\n")
    assert alg.mul_basis("x", "x") == SparseVector({"u": Fraction(-1, 2)})


@pytest.mark.parametrize("text", [
    "",
    "basis: a a\n",
    "basis: a\nmul: a.b = a\n",
    "basis: a\nmul: a.a = 2*z\n",
    "basis: a\nmul: a.a = a\nmul: a.a = a\n",
    "basis: a\nfoo: bar\n",
    "basis: a\nmul a.a = a\n",
])
def test_parse_algebra_errors(text):
    with pytest.raises(AlgebraError):
        parse_algebra(text)


entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)
elements = st.dictionaries(st.sampled_from(M2.basis), entries).map(SparseVector)


@settings(max_examples=50, deadline=None)
@given(elements, elements, elements)
def test_matrix_product_associative_and_distributive(x, y, z):
    assert M2.mul(M2.mul(x, y), z) == M2.mul(x, M2.mul(y, z))
    assert M2.mul(x, y + z) == M2.mul(x, y) + M2.mul(x, z)
    u = M2.unit()
    assert M2.mul(u, x) == x == M2.mul(x, u)
