"""Module algebras over a weak multiplier Hopf algebra and their smash products.

A :class:`ModuleAlgebra` bundles an algebra R, a structure A and the action
``a ▷ r`` on basis labels.  :class:`SmashProduct` realizes R#_E A as the
image of the E-projector on R⊗A, with canonical coordinates on a computed
basis.  Everything here works on the finite backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import Algebra, Multiplier, SubAlgebra, annihilators, check_associative, check_multiplier
from .linalg import (
    LinearMap,
    RowReducer,
    Solver,
    SparseMatrix,
    SparseVector,
    kernel_basis,
    linear_combination,
    span_basis,
    span_equal,
    span_rank,
    tensor,
)
from .report import Report, run_check
from .wmha import WmhaStructure

__all__ = [
    "ModuleAlgebra",
    "MultiplierExtension",
    "SmashProduct",
    "BalancedTensor",
    "CovariantModule",
    "SmashModule",
    "check_module_algebra",
    "check_base_identities",
    "extend_to_multiplier_module",
    "extend_action_to_MR",
    "check_MR_extension",
    "check_multiplier_extension",
    "smash_product",
    "check_smash",
    "smash_t",
    "pi_maps",
    "check_pi_maps",
    "check_universal_property",
    "universal_map",
    "check_covariant",
    "covariant_to_smash_module",
    "smash_module_to_covariant",
    "covariant_correspondence",
    "regular_covariant_module",
    "left_regular_smash_module",
]

Vec = SparseVector
ONE = Fraction(1)


def _e(label) -> Vec:
    return SparseVector.basis(label)


def _squares_span(R: Algebra) -> bool:
    return span_rank(R.table.values()) == R.dim


class ModuleAlgebra:
    """Left A-module algebra R.  ``act(a, r)`` acts on basis labels."""

    def __init__(self, R: Algebra, A: WmhaStructure, act: Callable[[object, object], Mapping], name: str = ""):
        self.R = R
        self.A = A
        self._act = act
        self._table: dict = {}
        self.name = name or f"{R.name} over {A.name}"

    def __repr__(self) -> str:
        return f"ModuleAlgebra({self.name})"

    def act_basis(self, a, r) -> Vec:
        key = (a, r)
        v = self._table.get(key)
        if v is None:
            v = self._act(a, r)
            v = v if isinstance(v, SparseVector) else SparseVector(v)
            self._table[key] = v
        return v

    def act(self, x: Mapping, y: Mapping) -> Vec:
        """``x ▷ y`` for x in A and y in R."""
        return linear_combination((cx * cy, self.act_basis(a, r)) for a, cx in x.items() for r, cy in y.items())

    def act_tensor(self, v: Mapping, w: Mapping) -> Vec:
        """Diagonal action of A⊗A on R⊗R."""
        terms = []
        for (a, b), c in v.items():
            for (r, s), d in w.items():
                x, y = self.act_basis(a, r), self.act_basis(b, s)
                if x and y:
                    terms.append((c * d, tensor(x, y)))
        return linear_combination(terms)

    def delta_act(self, a: Mapping, x: Mapping, y: Mapping) -> Vec:
        """``m(Δ(a) ▷ (x⊗y)) = Σ (a(1)▷x)(a(2)▷y)``."""
        R = self.R
        d = self.A.delta(a)
        return linear_combination(
            (c, R.mul(self.act(_e(u), x), self.act(_e(v), y))) for (u, v), c in d.items()
        )

    def E_act(self, w: Mapping) -> Vec:
        """``E ▷ w`` for w in R⊗R."""
        return self.act_tensor(self.A.E, w)

    def unit_R(self) -> Vec | None:
        return self.R.unit()


# ====================================================================== checks


def check_module_algebra(m: ModuleAlgebra) -> Report:
    R, A = m.R, m.A
    RB, AB = R.basis, A.basis

    def r_assoc():
        return check_associative(R, limit=5)

    def r_nondeg():
        left, right = annihilators(R)
        return [("left", v) for v in left] + [("right", v) for v in right]

    def mod_assoc():
        for a in AB:
            for b in AB:
                ab = A.algebra.mul_basis(a, b)
                for r in RB:
                    if m.act(ab, _e(r)) != m.act(_e(a), m.act_basis(b, r)):
                        yield (a, b, r)

    def unital():
        rk = span_rank(m.act_basis(a, r) for a in AB for r in RB)
        return ([] if rk == R.dim else [f"span of A▷R has rank {rk} < {R.dim}"]), {"rank": rk}

    def nondeg():
        rows = {}
        for a in AB:
            for r in RB:
                for k, c in m.act_basis(a, r).items():
                    rows.setdefault((a, k), {})[r] = c
        ker = kernel_basis(SparseMatrix(list(rows.values()), RB))
        return ker

    def law():
        for a in AB:
            for x in RB:
                for y in RB:
                    lhs = m.act(_e(a), R.mul_basis(x, y))
                    if lhs != m.delta_act(_e(a), _e(x), _e(y)):
                        yield (a, x, y)

    rep = Report(f"module algebra {m.name}", info={"dim R": R.dim, "dim A": A.algebra.dim})
    rep.results = [
        run_check("R-associative", r_assoc, ("R",)),
        run_check("R-nondegenerate", r_nondeg, ("R",)),
        run_check("module-associative", mod_assoc, ("action", "product")),
        run_check("module-unital", unital, ("action",)),
        run_check("module-nondegenerate", nondeg, ("action",)),
        run_check("module-algebra-law", law, ("action", "R", "T1")),
    ]
    return rep


def check_base_identities(m: ModuleAlgebra) -> Report:
    """E-multiplication, source exchange, unit action and the two covering identities."""
    R, A = m.R, m.A
    RB, AB = R.basis, A.basis
    unit = R.unit()

    def e_mult():
        for r in RB:
            for s in RB:
                lhs = linear_combination((c, R.mul_basis(*k)) for k, c in m.E_act(tensor(_e(r), _e(s))).items())
                if lhs != R.mul_basis(r, s):
                    yield (r, s)

    def exchange():
        for y in A.source_algebra():
            Sy = A.S(y)
            for r in RB:
                for s in RB:
                    if R.mul(m.act(y, _e(r)), _e(s)) != R.mul(_e(r), m.act(Sy, _e(s))):
                        yield (y, r, s)

    def unit_action():
        if unit is None:
            return [], {"skipped": "R has no unit"}
        return [a for a in AB if m.act(_e(a), unit) != m.act(A.eps_t(_e(a)), unit)]

    def cover_left():
        # (a▷r)r' = Σ a(1)▷(r(S(a(2))▷r'))
        for a in AB:
            d = A.delta(_e(a))
            for r in RB:
                for s in RB:
                    lhs = R.mul(m.act_basis(a, r), _e(s))
                    rhs = linear_combination(
                        (c, m.act(_e(u), R.mul(_e(r), m.act(A.S(_e(v)), _e(s))))) for (u, v), c in d.items()
                    )
                    if lhs != rhs:
                        yield (a, r, s)

    def cover_right():
        # r(a▷r') = Σ a(2)▷((S⁻¹(a(1))▷r)r')
        for a in AB:
            d = A.delta(_e(a))
            for r in RB:
                for s in RB:
                    lhs = R.mul(_e(r), m.act_basis(a, s))
                    rhs = linear_combination(
                        (c, m.act(_e(v), R.mul(m.act(A.Sinv(_e(u)), _e(r)), _e(s)))) for (u, v), c in d.items()
                    )
                    if lhs != rhs:
                        yield (a, r, s)

    rep = Report(f"base identities {m.name}")
    rep.results = [
        run_check("E-multiplication", e_mult, ("action", "E")),
        run_check("source-exchange", exchange, ("action", "antipode")),
        run_check("unit-action", unit_action, ("action",)),
        run_check("covering-left", cover_left, ("action", "antipode")),
        run_check("covering-right", cover_right, ("action", "antipode_inv")),
    ]
    return rep


# ====================================================================== multiplier extensions


class MultiplierExtension:
    """Extension of a unital module over an algebra to its multiplier algebra.

    For ``v = Σ a_i·x_i`` the extended action is ``μ·v = Σ (μ a_i)·x_i``.
    ``act_vec(a, x)`` acts with an algebra element on a module basis label.
    """

    def __init__(self, acting_basis: Sequence, act_vec: Callable[[Mapping, object], Vec], module_basis: Sequence):
        self.acting_basis = tuple(acting_basis)
        self.module_basis = tuple(module_basis)
        self.act_vec = act_vec
        cols = {(a, x): act_vec(_e(a), x) for a in self.acting_basis for x in self.module_basis}
        self.solver = Solver(cols)
        self.unital = self.solver.rank == len(self.module_basis)

    def decompose(self, v: Mapping) -> Vec:
        c = self.solver.express(v)
        if c is None:
            raise ValueError("element is not in the span of the action; module not unital")
        return c

    def _apply(self, mu: Multiplier, coeffs: Mapping) -> Vec:
        return linear_combination((c, self.act_vec(mu.left(_e(a)), x)) for (a, x), c in coeffs.items())

    def __call__(self, mu: Multiplier, v: Mapping) -> Vec:
        return self._apply(mu, self.decompose(v))

    def ill_defined(self, mu: Multiplier) -> list:
        """Relations Σ c a_i·x_i = 0 whose image under μ is nonzero."""
        return [rel for rel in self.solver.relations if self._apply(mu, rel)]


def extend_to_multiplier_module(m: ModuleAlgebra) -> MultiplierExtension:
    return MultiplierExtension(m.A.basis, lambda a, r: m.act(a, _e(r)), m.R.basis)


def _element_multiplier(alg, x: Mapping, label: str = "") -> Multiplier:
    return Multiplier(lambda y: alg.mul(x, y), lambda y: alg.mul(y, x), SparseVector(x), label)


def check_multiplier_extension(m: ModuleAlgebra) -> Report:
    """Extension of the A-action to M(A), and of the A⊗A-action on R⊗R to E."""
    A, R = m.A, m.R
    ext = extend_to_multiplier_module(m)
    alg = A.algebra
    unit = A.unit()
    one = Multiplier(lambda y: SparseVector(y), lambda y: SparseVector(y), unit, "1")

    def well_defined():
        mus = [one] + [_element_multiplier(alg, _e(a), a) for a in A.basis]
        return [(mu.label, rel) for mu in mus for rel in ext.ill_defined(mu)]

    def unit_acts():
        return [r for r in R.basis if ext(one, _e(r)) != _e(r)]

    def element_agrees():
        for a in A.basis:
            mu = _element_multiplier(alg, _e(a))
            for r in R.basis:
                if ext(mu, _e(r)) != m.act_basis(a, r):
                    yield (a, r)

    def e_on_tensor():
        pairs = [(x, y) for x in A.basis for y in A.basis]
        rpairs = [(r, s) for r in R.basis for s in R.basis]
        ext2 = MultiplierExtension(pairs, lambda v, rs: m.act_tensor(v, _e(rs)), rpairs)
        Em = Multiplier(A.E_left, A.E_right, A.E, "E")
        bad = [("ill-defined", rel) for rel in ext2.ill_defined(Em)]
        bad += [rs for rs in rpairs if ext2(Em, _e(rs)) != m.E_act(_e(rs))]
        return bad

    rep = Report(f"multiplier extension {m.name}", info={"unital": ext.unital})
    rep.results = [
        run_check("extension-well-defined", well_defined, ("action",)),
        run_check("extension-unit", unit_acts, ("action",)),
        run_check("extension-element", element_agrees, ("action",)),
        run_check("extension-E-on-tensor", e_on_tensor, ("action", "E")),
    ]
    return rep


def extend_action_to_MR(m: ModuleAlgebra) -> Callable[[Mapping, Multiplier], Multiplier]:
    """A acting on multipliers of R.

    (a▷μ)r = Σ a(1)▷(μ(S(a(2))▷r)) and r(a▷μ) = Σ a(2)▷((S⁻¹(a(1))▷r)μ).
    """
    A = m.A

    def act(a: Mapping, mu: Multiplier) -> Multiplier:
        d = A.delta(a)
        legs = [(c, _e(u), _e(v)) for (u, v), c in d.items()]

        def left(r):
            return linear_combination((c, m.act(u, mu.left(m.act(A.S(v), r)))) for c, u, v in legs)

        def right(r):
            return linear_combination((c, m.act(v, mu.right(m.act(A.Sinv(u), r)))) for c, u, v in legs)

        return Multiplier(left, right, None, f"a▷{mu.label}")

    return act


def check_MR_extension(m: ModuleAlgebra) -> Report:
    A, R = m.A, m.R
    act = extend_action_to_MR(m)
    wit = [_e(r) for r in R.basis]
    one = Multiplier(lambda y: SparseVector(y), lambda y: SparseVector(y), R.unit(), "1")
    mus = [one] + [_element_multiplier(R, _e(r), r) for r in R.basis]

    def same(m1: Multiplier, m2: Multiplier) -> bool:
        return all(m1.left(w) == m2.left(w) and m1.right(w) == m2.right(w) for w in wit)

    def module_law():
        for a in A.basis:
            for b in A.basis:
                ab = A.algebra.mul_basis(a, b)
                for mu in mus:
                    if not same(act(ab, mu), act(_e(a), act(_e(b), mu))):
                        yield (a, b, mu.label)

    def lands_in_MR():
        for a in A.basis:
            for mu in mus:
                bad = check_multiplier(R, act(_e(a), mu), wit)
                if bad:
                    yield (a, mu.label, bad[0][0])

    def unit_target():
        # a▷1 acts as ε_t(a)▷ from the left and as ε'_s(a)▷ from the right
        for a in A.basis:
            am = act(_e(a), one)
            et, es = A.eps_t(_e(a)), A.eps_s_prime(_e(a))
            for w in wit:
                if am.left(w) != m.act(et, w) or am.right(w) != m.act(es, w):
                    yield (a, w)
            u = R.unit()
            if u is not None and am.left(u) != m.act(et, u):
                yield (a, "unit")

    def element_case():
        # a▷x as multiplier equals multiplication by the element a▷x
        for a in A.basis:
            for r in R.basis:
                if not same(act(_e(a), _element_multiplier(R, _e(r))), _element_multiplier(R, m.act_basis(a, r))):
                    yield (a, r)

    rep = Report(f"action on M(R) {m.name}")
    rep.results = [
        run_check("MR-module-law", module_law, ("action",)),
        run_check("MR-multiplier", lands_in_MR, ("action",)),
        run_check("MR-unit-target", unit_target, ("action",)),
        run_check("MR-element", element_case, ("action",)),
    ]
    return rep


# ====================================================================== smash product


class SmashProduct:
    """R#_E A as the E-projected subspace of R⊗A with the smash product."""

    def __init__(self, m: ModuleAlgebra, prefix: str = "s", name: str = ""):
        self.module = m
        R, A = m.R, m.A
        if not A.finite:
            raise ValueError("smash products need the finite backend")
        self.pairs = tuple((r, a) for r in R.basis for a in A.basis)
        self.name = name or f"{R.name}#{A.name}"
        self.ambient = Algebra(self.pairs, self._ambient_product, f"{R.name}⊗{A.name}", check=False)
        self.projector = LinearMap(self.pairs, {p: self._project_basis(*p) for p in self.pairs}, self.pairs)
        self.generators = span_basis(self.projector.images.values(), self.pairs)
        self.carrier = SubAlgebra(self.ambient, self.generators, prefix, self.name)

    # products on R⊗A
    def _ambient_product(self, x, y) -> Vec:
        (r, a), (s, b) = x, y
        m = self.module
        R = m.R
        terms = []
        for (u, v), c in m.A.t(1, {(a, b): ONE}).items():
            left = R.mul(_e(r), m.act_basis(u, s))
            for k, d in left.items():
                terms.append((c * d, _e((k, v))))
        return linear_combination(terms)

    def _project_basis(self, r, a) -> Vec:
        m = self.module
        terms = []
        for (e1, e2), c in m.A.E.items():
            x = m.act_basis(e1, r)
            y = m.A.algebra.mul_basis(e2, a)
            if x and y:
                terms.append((c, tensor(x, y)))
        return linear_combination(terms)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def basis(self) -> tuple:
        return self.carrier.basis

    def project(self, v: Mapping) -> Vec:
        return self.projector(v)

    def pure(self, r: Mapping, a: Mapping) -> Vec:
        """r⊗a inside R⊗A."""
        return tensor(r, a)

    def sharp(self, r: Mapping, a: Mapping) -> Vec:
        """Carrier coordinates of r#_E a = E▷(r⊗a)."""
        return self.coords(self.project(tensor(r, a)))

    def coords(self, v: Mapping) -> Vec:
        c = self.carrier.coords(v)
        if c is None:
            raise ValueError("element is not in the smash carrier")
        return c

    def embed(self, z: Mapping) -> Vec:
        return self.carrier.embed(z)

    def mul(self, z: Mapping, w: Mapping) -> Vec:
        return self.carrier.mul(z, w)


def smash_product(m: ModuleAlgebra, prefix: str = "s", name: str = "") -> SmashProduct:
    return SmashProduct(m, prefix, name)


def check_smash(s: SmashProduct) -> Report:
    m = s.module
    R, A = m.R, m.A
    amb = s.ambient
    P = s.project
    gens = [_e(p) for p in s.pairs]

    def assoc():
        return check_associative(amb, limit=5)

    def idem():
        return [p for p in s.pairs if P(s.projector.images[p]) != s.projector.images[p]]

    def absorb_left():
        for x in gens:
            px = P(x)
            for y in gens:
                if amb.mul(px, y) != amb.mul(x, y):
                    yield (x, y)

    def absorb_right():
        for x in gens:
            for y in gens:
                if amb.mul(x, P(y)) != amb.mul(x, y):
                    yield (x, y)

    def right_ideal():
        for x in gens:
            px = P(x)
            for y in gens:
                if P(amb.mul(x, y)) != amb.mul(px, y):
                    yield (x, y)

    def ideal_closure():
        # the carrier is a right ideal of R⊗A and closed under products
        sol = s.carrier._solver
        for z in s.generators:
            for y in gens:
                if sol.express(amb.mul(z, y)) is None:
                    yield (z, y)

    def nondeg():
        left, right = annihilators(s.carrier)
        return [("left", v) for v in left] + [("right", v) for v in right]

    def carrier_assoc():
        return check_associative(s.carrier, limit=5)

    def unit_embedding():
        u = R.unit()
        if u is None:
            return [], {"skipped": "R has no unit"}
        bad = []
        for a in A.basis:
            for b in A.basis:
                lhs = amb.mul(P(tensor(u, _e(a))), P(tensor(u, _e(b))))
                if lhs != P(tensor(u, A.algebra.mul_basis(a, b))):
                    bad.append((a, b))
        return bad

    def R_embedding():
        # r ↦ r#_E 1 is multiplicative
        one = A.unit()
        if one is None:
            return [], {"skipped": "A has no unit"}
        bad = []
        for r in R.basis:
            for t in R.basis:
                if amb.mul(P(tensor(_e(r), one)), P(tensor(_e(t), one))) != P(tensor(R.mul_basis(r, t), one)):
                    bad.append((r, t))
        return bad

    rep = Report(f"smash product {s.name}", info={"dim R⊗A": len(s.pairs), "dim carrier": s.dim, "rank projector": s.projector.rank()})
    rep.results = [
        run_check("smash-associative", assoc, ("action", "T1")),
        run_check("E-projector-idempotent", idem, ("action", "E")),
        run_check("E-absorbs-left", absorb_left, ("action", "E", "T1")),
        run_check("E-absorbs-right", absorb_right, ("action", "E", "T1")),
        run_check("E-right-ideal", right_ideal, ("action", "E", "T1")),
        run_check("carrier-right-ideal", ideal_closure, ("action", "E", "T1")),
        run_check("carrier-associative", carrier_assoc, ("action", "T1")),
        run_check("smash-nondegenerate", nondeg, ("action", "E", "T1")),
        run_check("unit-embedding", unit_embedding, ("action", "E", "T1")),
        run_check("R-embedding", R_embedding, ("action", "T1")),
    ]
    return rep


# ---------------------------------------------------------------- balanced tensor


@dataclass
class BalancedTensor:
    """R⊗_t A as a quotient of R⊗A, with the comparison map into R#_E A."""

    smash: SmashProduct
    relations: list
    reducer: RowReducer
    algebra: Algebra
    f: LinearMap
    report: Report

    def normal_form(self, v: Mapping) -> Vec:
        return SparseVector(self.reducer.reduce(v))


def smash_t(s: SmashProduct) -> BalancedTensor:
    """Balanced tensor product over ε_t(A) and the map r⊗a ↦ E▷(r⊗a)."""
    m = s.module
    R, A = m.R, m.A
    amb = s.ambient
    AB = A.basis
    targets = [A.eps_t(_e(a)) for a in AB]

    def r_dot(r: Mapping, a) -> Vec:
        # r·ε_t(a) = ε'_s(a)▷r
        return m.act(A.eps_s_prime(_e(a)), r)

    rels = []
    for r in R.basis:
        for a in AB:
            x = targets[AB.index(a)]
            for b in AB:
                rels.append(tensor(r_dot(_e(r), a), _e(b)) - tensor(_e(r), A.algebra.mul(x, _e(b))))
    rr = RowReducer(s.pairs)
    for v in rels:
        rr.add(v)
    qbasis = tuple(p for p in s.pairs if p not in rr.pivots)

    def nf(v) -> Vec:
        return SparseVector(rr.reduce(v))

    def prod(x, y):
        return nf(amb.mul_basis(x, y))

    alg = Algebra(qbasis, prod, f"{R.name}⊗_t{A.name}", check=False)
    f = LinearMap(qbasis, {q: s.coords(s.project(_e(q))) for q in qbasis}, s.basis)
    rel_basis = [SparseVector(r) for r in rr.pivots.values()]

    def lemma():
        # S⁻¹(ε_t(a)) = ε'_s(a), so the right module is the one induced by S⁻¹
        for a in AB:
            if A.Sinv(targets[AB.index(a)]) != A.eps_s_prime(_e(a)):
                yield a

    def right_module():
        for r in R.basis:
            for a in AB:
                for b in AB:
                    lhs = r_dot(r_dot(_e(r), a), b)
                    xy = A.algebra.mul(targets[AB.index(a)], targets[AB.index(b)])
                    rhs = m.act(A.Sinv(xy), _e(r))
                    if lhs != rhs:
                        yield (r, a, b)

    def well_defined():
        for k in rel_basis:
            for g in s.pairs:
                if nf(amb.mul(k, _e(g))) or nf(amb.mul(_e(g), k)):
                    yield (k, g)

    def assoc():
        return check_associative(alg, limit=5)

    def nondeg():
        left, right = annihilators(alg)
        return [("left", v) for v in left] + [("right", v) for v in right]

    def f_defined():
        return [k for k in rel_basis if s.project(k)]

    def f_bijective():
        rk = f.rank()
        ok = rk == alg.dim == s.dim
        return ([] if ok else [f"rank {rk}, dim quotient {alg.dim}, dim carrier {s.dim}"]), {"rank": rk}

    def f_mult():
        for x in qbasis:
            for y in qbasis:
                if f(alg.mul_basis(x, y)) != s.mul(f.images[x], f.images[y]):
                    yield (x, y)

    rep = Report(f"balanced tensor {alg.name}", info={"dim quotient": alg.dim, "dim carrier": s.dim})
    rep.results = [
        run_check("target-antipode", lemma, ("antipode_inv",)),
        run_check("balanced-right-module", right_module, ("action",)),
        run_check("balanced-product-well-defined", well_defined, ("action", "T1")),
        run_check("balanced-associative", assoc, ("action", "T1")),
        run_check("balanced-nondegenerate", nondeg, ("action", "T1")),
        run_check("comparison-well-defined", f_defined, ("action", "E")),
        run_check("comparison-bijective", f_bijective, ("action", "E")),
        run_check("comparison-multiplicative", f_mult, ("action", "E", "T1")),
    ]
    return BalancedTensor(s, rel_basis, rr, alg, f, rep)


# ---------------------------------------------------------------- π_A and π_R


def pi_maps(s: SmashProduct) -> tuple[Callable[[Mapping], Multiplier], Callable[[Mapping], Multiplier]]:
    """π_A and π_R as maps into multipliers of the carrier (in carrier coordinates)."""
    m = s.module
    R, A = m.R, m.A

    def on_ambient(fn):
        return lambda z: s.coords(linear_combination((c, fn(*p)) for p, c in s.embed(z).items()))

    def piA(a: Mapping) -> Multiplier:
        a = SparseVector(a)

        def l(r, b):
            # Σ a(1)▷r ⊗ a(2)b through T1(a⊗b)
            terms = []
            for (u, v), c in A.t(1, tensor(a, _e(b))).items():
                for k, d in m.act_basis(u, r).items():
                    terms.append((c * d, _e((k, v))))
            return linear_combination(terms)

        def rt(r, b):
            return tensor(_e(r), A.algebra.mul(_e(b), a))

        return Multiplier(on_ambient(l), on_ambient(rt), None, f"πA({a!r})")

    def piR(x: Mapping) -> Multiplier:
        x = SparseVector(x)

        def l(r, b):
            return tensor(R.mul(x, _e(r)), _e(b))

        def rt(r, b):
            terms = []
            for (u, v), c in A.delta(_e(b)).items():
                for k, d in R.mul(_e(r), m.act(_e(u), x)).items():
                    terms.append((c * d, _e((k, v))))
            return linear_combination(terms)

        return Multiplier(on_ambient(l), on_ambient(rt), None, f"πR({x!r})")

    return piA, piR


def _mult_eq(m1: Multiplier, m2: Multiplier, wit) -> bool:
    return all(m1.left(w) == m2.left(w) and m1.right(w) == m2.right(w) for w in wit)


def _compose(m1: Multiplier, m2: Multiplier) -> Multiplier:
    return Multiplier(lambda y: m1.left(m2.left(y)), lambda y: m2.right(m1.right(y)))


def check_pi_maps(s: SmashProduct) -> Report:
    m = s.module
    R, A = m.R, m.A
    piA, piR = pi_maps(s)
    C = s.carrier
    wit = [_e(b) for b in C.basis]
    elem = lambda z: _element_multiplier(C, z)

    def multipliers(pi, B):
        def run():
            for x in B:
                bad = check_multiplier(C, pi(_e(x)), wit)
                if bad:
                    yield (x, bad[0][0])
        return run

    def hom(pi, alg):
        def run():
            for x in alg.basis:
                for y in alg.basis:
                    if not _mult_eq(pi(alg.mul_basis(x, y)), _compose(pi(_e(x)), pi(_e(y))), wit):
                        yield (x, y)
        return run

    def A_nondeg():
        rk = span_rank(piA(_e(a)).left(w) for a in A.basis for w in wit)
        return ([] if rk == s.dim else [f"span π_A(A)C has rank {rk} < {s.dim}"]), {"rank": rk}

    def R_unital():
        if not _squares_span(R):
            return [], {"skipped": "R² ≠ R"}
        rk = span_rank(piR(_e(r)).left(w) for r in R.basis for w in wit)
        return ([] if rk == s.dim else [f"span π_R(R)C has rank {rk} < {s.dim}"]), {"rank": rk}

    def comm_AR():
        # π_A(a)π_R(r) = Σ a(1)▷r #_E a(2)
        for a in A.basis:
            d = A.delta(_e(a))
            for r in R.basis:
                z = s.coords(s.project(linear_combination(
                    (c, tensor(m.act_basis(u, r), _e(v))) for (u, v), c in d.items())))
                if not _mult_eq(_compose(piA(_e(a)), piR(_e(r))), elem(z), wit):
                    yield (a, r)

    def comm_RA():
        for r in R.basis:
            for a in A.basis:
                if not _mult_eq(_compose(piR(_e(r)), piA(_e(a))), elem(s.sharp(_e(r), _e(a))), wit):
                    yield (r, a)

    def spans():
        ra = [s.sharp(_e(r), _e(a)) for r in R.basis for a in A.basis]
        ar = []
        for a in A.basis:
            d = A.delta(_e(a))
            for r in R.basis:
                ar.append(s.coords(s.project(linear_combination(
                    (c, tensor(m.act_basis(u, r), _e(v))) for (u, v), c in d.items()))))
        full = [_e(b) for b in C.basis]
        bad = []
        if not span_equal(ra, full):
            bad.append("π_R(R)π_A(A) does not span the carrier")
        if not span_equal(ar, full):
            bad.append("π_A(A)π_R(R) does not span the carrier")
        return bad

    rep = Report(f"embeddings {s.name}")
    rep.results = [
        run_check("pi-A-multiplier", multipliers(piA, A.basis), ("action", "T1")),
        run_check("pi-R-multiplier", multipliers(piR, R.basis), ("action", "T1")),
        run_check("pi-A-homomorphism", hom(piA, A.algebra), ("action", "T1", "product")),
        run_check("pi-R-homomorphism", hom(piR, R), ("action", "T1")),
        run_check("pi-A-nondegenerate", A_nondeg, ("action", "T1")),
        run_check("pi-R-unital", R_unital, ("action", "T1")),
        run_check("pi-commutation-AR", comm_AR, ("action", "T1", "E")),
        run_check("pi-commutation-RA", comm_RA, ("action", "T1", "E")),
        run_check("pi-spans", spans, ("action", "T1", "E")),
    ]
    return rep


# ---------------------------------------------------------------- universal property


def universal_map(s: SmashProduct, pA: Callable, pR: Callable) -> Callable[[Mapping], Multiplier]:
    """z ↦ Σ c π_R(r)π_A(a) over the R⊗A coordinates of z."""

    def pi(z: Mapping) -> Multiplier:
        terms = [(c, _compose(pR(_e(r)), pA(_e(a)))) for (r, a), c in s.embed(z).items()]
        return Multiplier(
            lambda y: linear_combination((c, mu.left(y)) for c, mu in terms),
            lambda y: linear_combination((c, mu.right(y)) for c, mu in terms),
        )

    return pi


def check_universal_property(s: SmashProduct, target: Algebra, pA: Callable, pR: Callable) -> Report:
    """Construct π(r#_E a) = π_R(r)π_A(a) into M(target) and check it.

    ``pA`` and ``pR`` take algebra elements (of A and R) and return
    multipliers of ``target``.  The commutation hypothesis is checked first;
    when it fails no map is constructed.
    """
    m = s.module
    R, A = m.R, m.A
    wit = [_e(b) for b in target.basis]
    rep = Report(f"universal property {s.name} → {target.name}")

    def hypothesis():
        for a in A.basis:
            d = A.delta(_e(a))
            for r in R.basis:
                lhs = _compose(pA(_e(a)), pR(_e(r)))
                parts = [(c, _compose(pR(m.act_basis(u, r)), pA(_e(v)))) for (u, v), c in d.items()]
                rhs = Multiplier(
                    lambda y, parts=parts: linear_combination((c, mu.left(y)) for c, mu in parts),
                    lambda y, parts=parts: linear_combination((c, mu.right(y)) for c, mu in parts),
                )
                if not _mult_eq(lhs, rhs, wit):
                    yield (a, r)

    def homs():
        bad = []
        for pi, alg, tag in ((pA, A.algebra, "A"), (pR, R, "R")):
            for x in alg.basis:
                for y in alg.basis:
                    if not _mult_eq(pi(alg.mul_basis(x, y)), _compose(pi(_e(x)), pi(_e(y))), wit):
                        bad.append((tag, x, y))
        return bad

    first = [run_check("input-homomorphisms", homs), run_check("universal-hypothesis", hypothesis)]
    rep.results.extend(first)
    if not all(r.ok for r in first):
        rep.info["constructed"] = False
        return rep
    rep.info["constructed"] = True
    pi = universal_map(s, pA, pR)

    def well_defined():
        # r⊗a ↦ π_R(r)π_A(a) factors through the E-projector
        ker = LinearMap(s.pairs, lambda p: _e(p) - s.projector.images[p], s.pairs).image_basis()
        for k in ker:
            mu = [(c, _compose(pR(_e(r)), pA(_e(a)))) for (r, a), c in k.items()]
            for w in wit:
                if linear_combination((c, x.left(w)) for c, x in mu) or linear_combination((c, x.right(w)) for c, x in mu):
                    yield k
                    break

    def hom():
        for x in s.basis:
            for y in s.basis:
                if not _mult_eq(pi(s.carrier.mul_basis(x, y)), _compose(pi(_e(x)), pi(_e(y))), wit):
                    yield (x, y)

    def lands():
        for x in s.basis:
            bad = check_multiplier(target, pi(_e(x)), wit)
            if bad:
                yield (x, bad[0][0])

    rep.results.extend([
        run_check("universal-well-defined", well_defined),
        run_check("universal-multiplier", lands),
        run_check("universal-homomorphism", hom),
    ])
    return rep


# ====================================================================== covariant modules


@dataclass
class CovariantModule:
    """Vector space with an A-action and an R-action (on basis labels)."""

    basis: tuple
    act_A: Callable[[object, object], Mapping]
    act_R: Callable[[object, object], Mapping]
    name: str = ""

    def a(self, x: Mapping, v: Mapping) -> Vec:
        return linear_combination((c * d, SparseVector(self.act_A(a, w))) for a, c in x.items() for w, d in v.items())

    def r(self, x: Mapping, v: Mapping) -> Vec:
        return linear_combination((c * d, SparseVector(self.act_R(r, w))) for r, c in x.items() for w, d in v.items())


@dataclass
class SmashModule:
    """Vector space with an action of the smash carrier (on basis labels)."""

    basis: tuple
    act: Callable[[object, object], Mapping]
    name: str = ""

    def z(self, x: Mapping, v: Mapping) -> Vec:
        return linear_combination((c * d, SparseVector(self.act(k, w))) for k, c in x.items() for w, d in v.items())


def regular_covariant_module(m: ModuleAlgebra) -> CovariantModule:
    """R itself: A acts by ▷ and R by left multiplication."""
    return CovariantModule(m.R.basis, m.act_basis, m.R.mul_basis, f"{m.R.name} (regular)")


def left_regular_smash_module(s: SmashProduct) -> SmashModule:
    return SmashModule(s.basis, s.carrier.mul_basis, f"{s.name} (left regular)")


def _require_idempotent_R(m: ModuleAlgebra) -> None:
    if not _squares_span(m.R):
        raise ValueError("the correspondence needs R² = R")


def covariant_to_smash_module(s: SmashProduct, V: CovariantModule) -> SmashModule:
    """(r#_E a)·v = r(a v), read off the R⊗A coordinates of carrier elements."""
    _require_idempotent_R(s.module)
    emb = {b: s.embed(_e(b)) for b in s.basis}

    def act(z, v):
        return linear_combination((c, V.r(_e(r), V.a(_e(a), _e(v)))) for (r, a), c in emb[z].items())

    return SmashModule(V.basis, act, f"{V.name} as {s.name}-module")


def smash_module_to_covariant(s: SmashProduct, V: SmashModule) -> CovariantModule:
    """A- and R-actions through π_A, π_R on the unital extension of V."""
    _require_idempotent_R(s.module)
    piA, piR = pi_maps(s)
    ext = MultiplierExtension(s.basis, lambda z, v: V.z(z, _e(v)), V.basis)
    if not ext.unital:
        raise ValueError("smash module is not unital")
    RB = s.module.R.basis
    A = s.module.A
    cacheA = {a: piA(_e(a)) for a in A.basis}
    cacheR = {r: piR(_e(r)) for r in RB}
    return CovariantModule(
        V.basis,
        lambda a, v: ext(cacheA[a], _e(v)),
        lambda r, v: ext(cacheR[r], _e(v)),
        f"{V.name} as covariant module",
    )


def check_covariant(m: ModuleAlgebra, V: CovariantModule) -> Report:
    A, R = m.A, m.R
    VB = V.basis

    def covariance():
        for a in A.basis:
            d = A.delta(_e(a))
            for r in R.basis:
                for v in VB:
                    lhs = V.a(_e(a), V.r(_e(r), _e(v)))
                    rhs = linear_combination((c, V.r(m.act_basis(x, r), V.a(_e(y), _e(v)))) for (x, y), c in d.items())
                    if lhs != rhs:
                        yield (a, r, v)

    def modules():
        for x in A.basis:
            for y in A.basis:
                for v in VB:
                    if V.a(A.algebra.mul_basis(x, y), _e(v)) != V.a(_e(x), V.a(_e(y), _e(v))):
                        yield ("A", x, y, v)
        for x in R.basis:
            for y in R.basis:
                for v in VB:
                    if V.r(R.mul_basis(x, y), _e(v)) != V.r(_e(x), V.r(_e(y), _e(v))):
                        yield ("R", x, y, v)

    def unital():
        bad = []
        if span_rank(V.a(_e(a), _e(v)) for a in A.basis for v in VB) != len(VB):
            bad.append("AV ≠ V")
        if span_rank(V.r(_e(r), _e(v)) for r in R.basis for v in VB) != len(VB):
            bad.append("RV ≠ V")
        return bad

    rep = Report(f"covariant module {V.name}")
    rep.results = [
        run_check("covariance", covariance),
        run_check("module-laws", modules),
        run_check("unital-actions", unital),
    ]
    return rep


def _nondegenerate(basis, ops: Iterable[Callable[[Mapping], Vec]]) -> bool:
    rows: dict = {}
    for i, op in enumerate(ops):
        for v in basis:
            for k, c in op(_e(v)).items():
                rows.setdefault((i, k), {})[v] = c
    return not kernel_basis(SparseMatrix(list(rows.values()), basis))


def covariant_correspondence(s: SmashProduct, V: CovariantModule | SmashModule) -> tuple[object, Report]:
    """Partner structure of ``V`` plus a report on the round trip."""
    m = s.module
    _require_idempotent_R(m)
    rep = Report(f"covariant correspondence {V.name}")
    VB = V.basis
    if isinstance(V, CovariantModule):
        partner = covariant_to_smash_module(s, V)
        back = smash_module_to_covariant(s, partner)
        cov, smod = V, partner

        def round_trip():
            for a in m.A.basis:
                for v in VB:
                    if back.a(_e(a), _e(v)) != V.a(_e(a), _e(v)):
                        yield ("A", a, v)
            for r in m.R.basis:
                for v in VB:
                    if back.r(_e(r), _e(v)) != V.r(_e(r), _e(v)):
                        yield ("R", r, v)
    else:
        partner = smash_module_to_covariant(s, V)
        back = covariant_to_smash_module(s, partner)
        cov, smod = partner, V

        def round_trip():
            for z in s.basis:
                for v in VB:
                    if back.z(_e(z), _e(v)) != V.z(_e(z), _e(v)):
                        yield (z, v)

    def smash_module_law():
        C = s.carrier
        for x in C.basis:
            for y in C.basis:
                for v in VB:
                    if smod.z(C.mul_basis(x, y), _e(v)) != smod.z(_e(x), smod.z(_e(y), _e(v))):
                        yield (x, y, v)

    def nondeg_transport():
        nd_smash = _nondegenerate(VB, [lambda v, z=z: smod.z(_e(z), v) for z in s.basis])
        nd_R = _nondegenerate(VB, [lambda v, r=r: cov.r(_e(r), v) for r in m.R.basis])
        bad = [] if nd_smash == nd_R else [f"smash non-degenerate {nd_smash}, R non-degenerate {nd_R}"]
        return bad, {"nondegenerate": nd_smash}

    cov_rep = check_covariant(m, cov)
    rep.results = list(cov_rep.results) + [
        run_check("smash-module-law", smash_module_law),
        run_check("round-trip", round_trip),
        run_check("nondegeneracy-transport", nondeg_transport),
    ]
    return partner, rep
