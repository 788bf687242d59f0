from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qgroupoid.constructions import groupoid_algebra
from qgroupoid.groupoid import pair_groupoid
from qgroupoid.linalg import (
    LinearMap,
    Solver,
    SparseMatrix,
    SparseVector,
    in_span,
    kernel_basis,
    rank,
    solve_linear,
    span_basis,
    span_equal,
    span_rank,
    tensor,
)

COLS = ("a", "b", "c", "d")
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
vectors = st.dictionaries(st.sampled_from(COLS), fractions, max_size=4).map(SparseVector)
matrices = st.lists(vectors, min_size=0, max_size=5)


def t1_matrix_cp2():
    w = groupoid_algebra(pair_groupoid(2))
    pairs = [(a, b) for a in w.basis for b in w.basis]
    cols = [w.t(1, SparseVector.basis(p)) for p in pairs]
    rows = [SparseVector({p: c[q] for p, c in zip(pairs, cols) if q in c}) for q in pairs]
    return SparseMatrix(rows, pairs, pairs)


def test_rank_identity_and_zero():
    assert rank(SparseMatrix.identity(["x", "y", "z"])) == 3
    assert rank(SparseMatrix.zeros(2, ["x", "y"])) == 0


def test_rank_and_kernel_of_T1_on_CP2():
    m = t1_matrix_cp2()
    assert m.shape == (16, 16)
    assert rank(m) == 8
    assert len(kernel_basis(m)) == 8


def test_kernel_examples():
    assert kernel_basis(SparseMatrix.identity(["x", "y"])) == []
    assert len(kernel_basis(SparseMatrix.zeros(2, ["x", "y"]))) == 2


def test_solve_examples():
    v = SparseVector({"x": Fraction(2, 3), "y": -1})
    assert solve_linear(SparseMatrix.identity(["x", "y"]), v) == v
    assert solve_linear(SparseMatrix.zeros(2, ["x", "y"]), SparseVector({0: 1})) is None


def test_span_equal_examples():
    e1, e2 = SparseVector.basis("a"), SparseVector.basis("b")
    assert span_equal([e1], [e1])
    assert not span_equal([e1], [e2])
    assert span_equal([e1, e2], [e1 + e2, e1 - e2])


def test_span_equal_T1_image_is_E_image_on_CP2():
    w = groupoid_algebra(pair_groupoid(2))
    pairs = [(a, b) for a in w.basis for b in w.basis]
    t1 = [w.t(1, SparseVector.basis(p)) for p in pairs]
    e = [w.E_left(SparseVector.basis(p)) for p in pairs]
    assert span_equal(t1, e)
    lab = w.extras["label_of"]
    g = w.extras["groupoid"]
    direct = [SparseVector.basis((r, s)) for r, s in pairs if g.target(lab[r]) == g.target(lab[s])]
    assert span_equal(t1, direct) and len(direct) == 8


def test_no_stored_zeros():
    v = SparseVector({"a": 0, "b": Fraction(1, 2)})
    assert dict(v) == {"b": Fraction(1, 2)}
    assert not (v - v)


def test_tensor_labels_are_tuples():
    v = tensor(SparseVector.basis("a"), SparseVector({"b": 2, "c": 1}))
    assert dict(v) == {("a", "b"): 2, ("a", "c"): 1}


def test_solver_express_and_relations():
    s = Solver({"u": SparseVector({"a": 1, "b": 1}), "v": SparseVector({"a": 1, "b": -1}), "w": SparseVector({"a": 2})})
    assert s.rank == 2
    assert len(s.relations) == 1
    x = s.express(SparseVector({"b": 2}))
    assert x is not None
    back = sum((c * s_vec for c, s_vec in [(x.get("u", 0), SparseVector({"a": 1, "b": 1})),
                                          (x.get("v", 0), SparseVector({"a": 1, "b": -1})),
                                          (x.get("w", 0), SparseVector({"a": 2}))]), SparseVector())
    assert back == SparseVector({"b": 2})
    assert s.express(SparseVector({"c": 1})) is None


def test_linear_map_rank_and_compose():
    f = LinearMap(("x", "y"), {"x": SparseVector.basis("y"), "y": SparseVector()}, ("x", "y"))
    assert f.rank() == 1
    assert not f.compose(f)(SparseVector.basis("x"))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_plus_nullity(rows):
    m = SparseMatrix(rows, COLS)
    assert rank(m) + len(kernel_basis(m)) == len(COLS)
    for k in kernel_basis(m):
        assert all(not r.dot(k) for r in m.rows)


@settings(max_examples=60, deadline=None)
@given(matrices, vectors)
def test_solve_is_exact(rows, x):
    m = SparseMatrix(rows, COLS)
    target = m @ x
    sol = solve_linear(m, target)
    assert sol is not None
    assert m @ sol == target


@given(fractions, fractions, fractions)
def test_scalar_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(matrices, matrices, matrices)
def test_span_equal_is_an_equivalence(u, v, w):
    assert span_equal(u, u)
    assert span_equal(u, v) == span_equal(v, u)
    if span_equal(u, v) and span_equal(v, w):
        assert span_equal(u, w)


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_span_basis_spans(rows):
    b = span_basis(rows)
    assert len(b) == span_rank(rows)
    assert all(in_span(b, r) for r in rows)
