"""Weak multiplier Hopf algebras built from groupoids.

* :func:`groupoid_algebra`: the convolution algebra ℂG with Δ(λ_p) = λ_p⊗λ_p;
* :func:`function_algebra`: functions on G with the coproduct dual to composition;
* :func:`lazy_groupoid_algebra`: ℂG for a lazily presented groupoid;
* module algebras: the trivial action on ε_t(A), functions on a set acted
  on by a groupoid, and the adjoint action on A₀.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Algebra, LazyAlgebra, Multiplier, SubAlgebra
from .groupoid import Groupoid, GroupoidAction, LazyGroupoid, validate, validate_action
from .linalg import SparseMatrix, SparseVector, kernel_basis, linear_combination, span_basis, span_equal
from .duality import Pairing
from .report import Report, run_check
from .smash import ModuleAlgebra
from .wmha import WmhaStructure

__all__ = [
    "groupoid_algebra",
    "function_algebra",
    "lazy_groupoid_algebra",
    "groupoid_pairing",
    "lam",
    "delta_label",
    "object_action",
    "trivial_module_algebra",
    "set_action_module_algebra",
    "centralizer_of_source",
    "adjoint_module_algebra",
    "check_adjoint",
]

ONE = Fraction(1)
ZERO_VEC = SparseVector()


def lam(p) -> str:
    """Basis label of λ_p in ℂG."""
    return f"λ[{p}]"


def delta_label(p) -> str:
    """Basis label of δ_p in K(G)."""
    return f"δ[{p}]"


def _vec(*pairs):
    return SparseVector._wrap({k: ONE for k in pairs})


def groupoid_algebra(g: Groupoid | LazyGroupoid, name: str | None = None) -> WmhaStructure:
    if isinstance(g, LazyGroupoid):
        return lazy_groupoid_algebra(g, name)
    problems = validate(g)
    if problems:
        raise ValueError(f"invalid groupoid: {problems[0]}")
    m = {lam(p): p for p in g.morphisms}
    basis = [lam(p) for p in g.morphisms]

    def prod(a, b):
        r = g.compose(m[a], m[b])
        return _vec(lam(r)) if r is not None else ZERO_VEC

    alg = Algebra(basis, prod, name or f"C[{g.name}]", check=False)

    def comp(p, q):
        return g.compose(m[p], m[q])

    def T1(a, b):  # λ_p⊗λ_pλ_q
        r = comp(a, b)
        return _vec((a, lam(r))) if r is not None else ZERO_VEC

    def T2(a, b):  # λ_pλ_q⊗λ_q
        r = comp(a, b)
        return _vec((lam(r), b)) if r is not None else ZERO_VEC

    def T3(a, b):  # λ_p⊗λ_qλ_p
        r = comp(b, a)
        return _vec((a, lam(r))) if r is not None else ZERO_VEC

    def T4(a, b):  # λ_qλ_p⊗λ_q
        r = comp(b, a)
        return _vec((lam(r), b)) if r is not None else ZERO_VEC

    S = lambda a: _vec(lam(g.inverse(m[a])))
    E = _vec(*((lam(e), lam(e)) for e in g.units))
    return WmhaStructure(alg, T1, T2, T3, T4, lambda a: ONE, S, S, E=E, name=name or f"C[{g.name}]",
                         extras={"groupoid": g, "kind": "groupoid-algebra", "label_of": m})


def function_algebra(g: Groupoid, name: str | None = None) -> WmhaStructure:
    problems = validate(g)
    if problems:
        raise ValueError(f"invalid groupoid: {problems[0]}")
    m = {delta_label(p): p for p in g.morphisms}
    basis = [delta_label(p) for p in g.morphisms]
    alg = Algebra(basis, lambda a, b: _vec(a) if a == b else ZERO_VEC, name or f"K[{g.name}]", check=False)
    d = delta_label

    def T1(a, b):  # Σ_{uv=p} δ_u⊗δ_vδ_q = δ_{pq⁻¹}⊗δ_q
        p, q = m[a], m[b]
        r = g.compose(p, g.inverse(q))
        return _vec((d(r), b)) if r is not None else ZERO_VEC

    def T2(a, b):  # δ_p⊗δ_{p⁻¹q}
        p, q = m[a], m[b]
        r = g.compose(g.inverse(p), q)
        return _vec((a, d(r))) if r is not None else ZERO_VEC

    E = _vec(*((d(u), d(v)) for u in g.morphisms for v in g.morphisms if g.composable(u, v)))
    S = lambda a: _vec(d(g.inverse(m[a])))
    eps = lambda a: ONE if g.is_unit(m[a]) else Fraction(0)
    return WmhaStructure(alg, T1, T2, T1, T2, eps, S, S, E=E, name=name or f"K[{g.name}]",
                         extras={"groupoid": g, "kind": "function-algebra", "label_of": m})


def groupoid_pairing(g: Groupoid) -> Pairing:
    """⟨λ_p, δ_q⟩ = [p = q] between ℂG and K(G)."""
    A, B = groupoid_algebra(g), function_algebra(g)
    return Pairing(A, B, lambda a, b: ONE if a[2:-1] == b[2:-1] else 0)


def lazy_groupoid_algebra(g: LazyGroupoid, name: str | None = None, n_objects: int = 50) -> WmhaStructure:
    """ℂG on the lazy backend.  Basis labels are the morphisms themselves.

    The unit Σ_e λ_e does not exist in A, and E = Σ_e λ_e⊗λ_e is a proper
    multiplier of A⊗A given by its two actions.
    """

    def prod(a, b):
        r = g.compose(a, b)
        return _vec(r) if r is not None else ZERO_VEC

    def sampler(rng: random.Random, k: int):
        return g.sample(rng, n_objects, k)

    alg = LazyAlgebra(prod, g.contains, sampler, name or f"C[{g.name}]")

    def T1(a, b):
        r = g.compose(a, b)
        return _vec((a, r)) if r is not None else ZERO_VEC

    def T2(a, b):
        r = g.compose(a, b)
        return _vec((r, b)) if r is not None else ZERO_VEC

    def T3(a, b):
        r = g.compose(b, a)
        return _vec((a, r)) if r is not None else ZERO_VEC

    def T4(a, b):
        r = g.compose(b, a)
        return _vec((r, b)) if r is not None else ZERO_VEC

    def E_left(v):
        # Σ_e λ_eλ_r⊗λ_eλ_s = λ_r⊗λ_s iff target(r) = target(s)
        return SparseVector((k, c) for k, c in v.items() if g.target(k[0]) == g.target(k[1]))

    def E_right(v):
        return SparseVector((k, c) for k, c in v.items() if g.source(k[0]) == g.source(k[1]))

    E = Multiplier(E_left, E_right, None, "Σ_e λ_e⊗λ_e")
    S = lambda a: _vec(g.inverse(a))
    return WmhaStructure(alg, T1, T2, T3, T4, lambda a: ONE, S, S, E=None, E_mult=E,
                         name=name or f"C[{g.name}]", extras={"groupoid": g, "kind": "lazy-groupoid-algebra"})


# ====================================================================== module algebras


def object_action(g: Groupoid) -> GroupoidAction:
    """G acting on its objects: X_p = {source(p)} and α_p(source(p)) = target(p)."""
    dom = {p: frozenset([g.source(p)]) for p in g.morphisms}
    maps = {p: {g.source(p): g.target(p)} for p in g.morphisms}
    return GroupoidAction(g, tuple(g.objects), dom, maps)


def trivial_module_algebra(w: WmhaStructure, name: str = "") -> ModuleAlgebra:
    """R = ε_t(A) with a▷y = ε_t(ay)."""
    R = SubAlgebra(w.algebra, w.target_algebra(), "t", f"εt({w.name})")

    def act(a, t):
        return R.coords(w.eps_t(w.mul({a: ONE}, R.vectors[t])))

    return ModuleAlgebra(R, w, act, name or f"trivial action on εt({w.name})")


def set_action_module_algebra(w: WmhaStructure, action: GroupoidAction, name: str = "") -> ModuleAlgebra:
    """K(X) for a true action of G on X; λ_p▷δ_z = Σ δ_x over x ∈ X_{p⁻¹} with α_{p⁻¹}(x) = z."""
    g = w.extras.get("groupoid")
    if w.extras.get("kind") != "groupoid-algebra" or g is None:
        raise ValueError("set actions need a groupoid algebra")
    problems = validate_action(action)
    if problems:
        raise ValueError(f"invalid action: {problems[0]}")
    pts = {f"δ[{x}]": x for x in action.points}
    R = Algebra(list(pts), lambda a, b: _vec(a) if a == b else ZERO_VEC, f"K({','.join(map(str, action.points))})",
                check=False)
    label_of = w.extras["label_of"]
    inv_img: dict = {}
    for p in g.morphisms:
        q = g.inverse(p)
        for x in action.domain.get(q, ()):
            inv_img.setdefault((p, action.maps[q][x]), []).append(x)

    def act(a, r):
        p, z = label_of[a], pts[r]
        return _vec(*(f"δ[{x}]" for x in inv_img.get((p, z), ())))

    return ModuleAlgebra(R, w, act, name or f"K(X) over {w.name}")


def centralizer_of_source(w: WmhaStructure) -> list[SparseVector]:
    """Basis of {a : ay = ya for y in ε_s(A)}."""
    B = w.basis
    rows: dict = {}
    for i, y in enumerate(w.source_algebra()):
        for b in B:
            for k, c in (w.mul({b: ONE}, y) - w.mul(y, {b: ONE})).items():
                rows.setdefault((i, k), {})[b] = c
    return span_basis(kernel_basis(SparseMatrix(list(rows.values()), B)), B)


def _conditional_expectation(w: WmhaStructure, x) -> SparseVector:
    """π(x) = Σ E(1) x S(E(2))."""
    return linear_combination((c, w.mul(w.mul({e1: ONE}, x), w.S({e2: ONE}))) for (e1, e2), c in w.E.items())


def _adjoint(w: WmhaStructure, a, x) -> SparseVector:
    """Σ a(1) x S(a(2))."""
    return linear_combination((c, w.mul(w.mul({u: ONE}, x), w.S({v: ONE}))) for (u, v), c in w.delta(a).items())


def adjoint_module_algebra(w: WmhaStructure, name: str = "") -> ModuleAlgebra:
    """A₀ = centralizer of ε_s(A) with α_a(x) = Σ a(1) x S(a(2))."""
    R = SubAlgebra(w.algebra, centralizer_of_source(w), "z", f"A0({w.name})")

    def act(a, z):
        v = R.coords(_adjoint(w, {a: ONE}, R.vectors[z]))
        if v is None:
            raise ValueError(f"adjoint action leaves A0 at {a}, {z}")
        return v

    return ModuleAlgebra(R, w, act, name or f"adjoint action on A0({w.name})")


def check_adjoint(w: WmhaStructure) -> Report:
    """A₀ and the conditional expectation π(a) = Σ E(1) a S(E(2))."""
    B = w.basis
    e = lambda b: SparseVector.basis(b)
    A0 = centralizer_of_source(w)
    pis = {b: _conditional_expectation(w, e(b)) for b in B}

    def spans():
        bad = []
        if not span_equal(A0, list(pis.values())):
            bad.append("centralizer ≠ span π(A)")
        ad = [_adjoint(w, e(a), e(x)) for a in B for x in B]
        if not span_equal(A0, ad):
            bad.append("centralizer ≠ span α_a(x)")
        return bad

    def idempotent():
        for a in B:
            for b in B:
                if w.mul(pis[a], pis[b]) != _conditional_expectation(w, w.mul(pis[a], e(b))):
                    yield (a, b)

    def absorbs():
        full = [e(b) for b in B]
        left = [w.mul(x, e(b)) for x in A0 for b in B]
        right = [w.mul(e(b), x) for x in A0 for b in B]
        bad = []
        if not span_equal(left, full):
            bad.append("A0·A ≠ A")
        if not span_equal(right, full):
            bad.append("A·A0 ≠ A")
        return bad

    def commutes():
        for y in w.source_algebra():
            for a in B:
                if w.mul(y, pis[a]) != w.mul(pis[a], y):
                    yield (y, a)

    def expectation():
        for x in A0:
            if _conditional_expectation(w, x) != x:
                yield ("fixed", x)
            for b in B:
                if _conditional_expectation(w, w.mul(x, e(b))) != w.mul(x, pis[b]):
                    yield ("left", x, b)
                if _conditional_expectation(w, w.mul(e(b), x)) != w.mul(pis[b], x):
                    yield ("right", x, b)

    rep = Report(f"adjoint data {w.name}", info={"dim A0": len(A0)})
    rep.results = [
        run_check("A0-spans", spans),
        run_check("expectation-product", idempotent),
        run_check("A0-absorbs", absorbs),
        run_check("expectation-commutes-source", commutes),
        run_check("expectation-bimodule", expectation),
    ]
    return rep
