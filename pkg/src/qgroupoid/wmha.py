"""Weak multiplier Hopf algebra structures and their axiom suite.

A structure stores only the four canonical maps on basis pairs::

    T1(a, b) = Δ(a)(1⊗b)    T2(a, b) = (a⊗1)Δ(b)
    T3(a, b) = (1⊗b)Δ(a)    T4(a, b) = Δ(b)(a⊗1)

together with the counit, the antipode (and its inverse), and the canonical
idempotent E.  Every check below is an identity between compositions of these
data.  Finite algebras in this package are unital (a finite-dimensional
algebra with local units for its whole basis has a unit), so on the finite
backend Δ(a) is available as ``T1(a⊗1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import Algebra, LazyAlgebra, Multiplier, annihilators, check_associative
from .linalg import (
    LinearMap,
    SparseMatrix,
    SparseVector,
    kernel_basis,
    linear_combination,
    map_legs,
    solve_matrix_equation,
    span_basis,
    span_equal,
    span_rank,
    tensor,
)
from .report import Report, run_check

__all__ = [
    "WmhaStructure",
    "KernelMaps",
    "tensor_mul",
    "flip",
    "cop",
    "compute_kernel_maps",
    "source_target_maps",
    "run_axiom_suite",
    "run_lazy_suite",
    "AXIOMS",
    "FIELDS",
    "mutate",
]

Vec = SparseVector
FIELDS = ("product", "T1", "T2", "T3", "T4", "E", "counit", "antipode", "antipode_inv")


def tensor_mul(alg, v: Mapping, w: Mapping) -> Vec:
    """Componentwise product of two tensors of equal arity over one algebra."""
    terms = []
    for x, cx in v.items():
        for y, cy in w.items():
            legs = [alg.mul_basis(a, b) for a, b in zip(x, y)]
            if any(not l for l in legs):
                continue
            terms.append((cx * cy, tensor(*legs)))
    return linear_combination(terms)


def flip(v: Mapping) -> Vec:
    return SparseVector((k[::-1], c) for k, c in v.items())


def _cached(fn: Callable, cache: dict) -> Callable:
    def wrapped(*args):
        r = cache.get(args)
        if r is None:
            r = fn(*args)
            if not isinstance(r, SparseVector):
                r = SparseVector(r)
            cache[args] = r
        return r

    return wrapped


@dataclass(frozen=True, eq=False)
class WmhaStructure:
    """Algebra plus canonical maps, counit, antipode and canonical idempotent.

    On the finite backend ``E`` is an element of A⊗A.  On the lazy backend
    ``E`` is None and ``E_mult`` gives its two-sided action on A⊗A.
    """

    algebra: Algebra | LazyAlgebra
    T1: Callable
    T2: Callable
    T3: Callable | None
    T4: Callable | None
    counit: Callable
    antipode: Callable
    antipode_inv: Callable | None
    E: Vec | None = None
    E_mult: Multiplier | None = None
    name: str = ""
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "_c", {})
        for k in ("T1", "T2", "T3", "T4", "antipode", "antipode_inv"):
            f = getattr(self, k)
            self._c[k] = _cached(f, {}) if f is not None else None

    # -------------------------------------------------------------- basics

    @property
    def finite(self) -> bool:
        return self.algebra.backend == "finite"

    @property
    def regular(self) -> bool:
        return self.T3 is not None and self.T4 is not None and self.antipode_inv is not None

    @property
    def basis(self) -> tuple:
        return self.algebra.basis

    def mul(self, x: Mapping, y: Mapping) -> Vec:
        return self.algebra.mul(x, y)

    def unit(self) -> Vec | None:
        return self.algebra.unit()

    def t(self, k: int, v: Mapping) -> Vec:
        f = self._c[f"T{k}"]
        if f is None:
            raise ValueError(f"T{k} not available")
        return linear_combination((c, f(a, b)) for (a, b), c in v.items())

    def tt(self, k: int, x: Mapping, y: Mapping) -> Vec:
        """``T_k(x⊗y)`` for algebra elements x, y."""
        return self.t(k, tensor(x, y))

    def eps(self, x: Mapping) -> Fraction:
        return sum((c * Fraction(self.counit(a)) for a, c in x.items()), Fraction(0))

    def S(self, x: Mapping) -> Vec:
        f = self._c["antipode"]
        return linear_combination((c, f(a)) for a, c in x.items())

    def Sinv(self, x: Mapping) -> Vec:
        f = self._c["antipode_inv"]
        if f is None:
            raise ValueError("antipode inverse not available")
        return linear_combination((c, f(a)) for a, c in x.items())

    def tmul(self, v: Mapping, w: Mapping) -> Vec:
        return tensor_mul(self.algebra, v, w)

    def E_left(self, v: Mapping) -> Vec:
        """``E·v`` for v in A⊗A."""
        if self.E is not None:
            return self.tmul(self.E, v)
        return self.E_mult.left(v)

    def E_right(self, v: Mapping) -> Vec:
        if self.E is not None:
            return self.tmul(v, self.E)
        return self.E_mult.right(v)

    def delta(self, x: Mapping) -> Vec:
        """Δ(x) = T1(x⊗1), finite backend only."""
        u = self.unit()
        if u is None:
            raise ValueError("Δ as an element needs a unit")
        key = ("delta", x if isinstance(x, SparseVector) else SparseVector(x))
        r = self._c.get(key)
        if r is None:
            r = self.tt(1, x, u)
            self._c[key] = r
        return r

    def eps_leg(self, v: Mapping, leg: int) -> Vec:
        """Apply ε to one leg of a 2-tensor, returning an algebra element."""
        other = 1 - leg
        return linear_combination((c * Fraction(self.counit(k[leg])), SparseVector.basis(k[other])) for k, c in v.items())

    def m2(self, v: Mapping) -> Vec:
        """Multiplication A⊗A → A."""
        return linear_combination((c, self.algebra.mul_basis(*k)) for k, c in v.items())

    def m3(self, v: Mapping) -> Vec:
        alg = self.algebra
        return linear_combination((c, alg.mul(alg.mul_basis(k[0], k[1]), {k[2]: 1})) for k, c in v.items())

    # ---------------------------------------------------- derived maps

    def eps_s(self, x: Mapping) -> Vec:
        """(ι⊗ε)((1⊗a)E)."""
        u = self.unit()
        return self.eps_leg(self.E_right(tensor(u, x)), 1)

    def eps_t(self, x: Mapping) -> Vec:
        """(ε⊗ι)(E(a⊗1))."""
        u = self.unit()
        return self.eps_leg(self.E_left(tensor(x, u)), 0)

    def eps_s_prime(self, x: Mapping) -> Vec:
        """(ι⊗ε)(E(1⊗a))."""
        u = self.unit()
        return self.eps_leg(self.E_left(tensor(u, x)), 1)

    def eps_t_prime(self, x: Mapping) -> Vec:
        """(ε⊗ι)((a⊗1)E)."""
        u = self.unit()
        return self.eps_leg(self.E_right(tensor(x, u)), 0)

    def source_algebra(self) -> list[Vec]:
        key = ("As",)
        if key not in self._c:
            self._c[key] = span_basis([self.eps_s({b: 1}) for b in self.basis], self.basis)
        return self._c[key]

    def target_algebra(self) -> list[Vec]:
        key = ("At",)
        if key not in self._c:
            self._c[key] = span_basis([self.eps_t({b: 1}) for b in self.basis], self.basis)
        return self._c[key]

    def elements(self) -> list[Vec]:
        return [SparseVector.basis(b) for b in self.basis]


def source_target_maps(w: WmhaStructure, a: Mapping) -> tuple[Multiplier, ...]:
    """ε_s(a), ε_t(a), ε'_s(a), ε'_t(a) as multipliers of A."""
    alg = w.algebra
    out = []
    for f in (w.eps_s, w.eps_t, w.eps_s_prime, w.eps_t_prime):
        x = f(a)
        out.append(Multiplier(lambda y, x=x: alg.mul(x, y), lambda y, x=x: alg.mul(y, x), x))
    return tuple(out)


def cop(w: WmhaStructure) -> WmhaStructure:
    """The structure with the opposite coproduct (requires the regular data)."""
    if not w.regular:
        raise ValueError("the opposite coproduct needs T3, T4 and the inverse antipode")
    T1, T2, T3, T4 = w._c["T1"], w._c["T2"], w._c["T3"], w._c["T4"]
    return WmhaStructure(
        w.algebra,
        T1=lambda a, b: flip(T4(b, a)),
        T2=lambda a, b: flip(T3(b, a)),
        T3=lambda a, b: flip(T2(b, a)),
        T4=lambda a, b: flip(T1(b, a)),
        counit=w.counit,
        antipode=w.antipode_inv,
        antipode_inv=w.antipode,
        E=flip(w.E) if w.E is not None else None,
        E_mult=None if w.E_mult is None else Multiplier(
            lambda v: flip(w.E_mult.left(flip(v))), lambda v: flip(w.E_mult.right(flip(v)))
        ),
        name=f"{w.name}^cop",
    )


def mutate(w: WmhaStructure, fieldname: str, key, value) -> WmhaStructure:
    """Copy of ``w`` with one table entry replaced.

    ``fieldname`` is one of :data:`FIELDS`.  For T-maps ``key`` is a basis
    pair; for the counit and antipodes it is a basis label; for ``E`` it is a
    tensor label whose coefficient becomes ``value``; for ``product`` it is a
    basis pair (the algebra is rebuilt without the associativity check).
    """
    if fieldname == "product":
        a = w.algebra
        table = dict(a.table)
        table[key] = SparseVector(value)
        alg = Algebra(a.basis, table, a.name + "*", check=False)
        return replace(w, algebra=alg)
    if fieldname == "E":
        d = dict(w.E.items())
        d[key] = Fraction(value)
        return replace(w, E=SparseVector(d))
    orig = getattr(w, fieldname)
    new = SparseVector(value) if fieldname != "counit" else Fraction(value)
    if fieldname.startswith("T"):
        f = lambda a, b, orig=orig: new if (a, b) == key else orig(a, b)
    else:
        f = lambda a, orig=orig: new if a == key else orig(a)
    return replace(w, **{fieldname: f})


# ====================================================================== checks


def _pairs(B):
    for a in B:
        for b in B:
            yield a, b


def _triples(B):
    for a in B:
        for b in B:
            for c in B:
                yield a, b, c


def _e(label) -> Vec:
    return SparseVector.basis(label)


def _slices(v: Mapping, keep: Sequence[int], by: Sequence[int]) -> dict:
    """Group a tensor by the legs ``by``; each slice keeps the legs ``keep``."""
    out: dict = {}
    for k, c in v.items():
        key = tuple(k[i] for i in by)
        sub = tuple(k[i] for i in keep)
        out.setdefault(key, {})[sub] = c
    return {k: SparseVector(d) for k, d in out.items()}


def _leg_span(vs: Iterable[Mapping], leg: int, basis) -> list[Vec]:
    other = 1 - leg
    sl = []
    for v in vs:
        sl.extend(_slices(v, (leg,), (other,)).values())
    return span_basis([x.map_labels(lambda t: t[0]) for x in sl], basis)


def check_algebra(w):
    alg = w.algebra

    def assoc():
        return check_associative(alg, limit=3)

    def nondeg():
        left, right = annihilators(alg)
        return [("left annihilator", v) for v in left] + [("right annihilator", v) for v in right]

    def idem():
        r = span_rank(alg.table.values())
        return [] if r == alg.dim else [f"A² has dimension {r} < {alg.dim}"]

    return [("algebra-associative", assoc, {"product"}),
            ("algebra-nondegenerate", nondeg, {"product"}),
            ("algebra-idempotent", idem, {"product"})]


def _no_unit(w):
    if w.unit() is None:
        return ["precondition: algebra has no unit"]
    return None


def check_coproduct_compatibility(w):
    B = w.basis

    def run():
        bad = _no_unit(w)
        if bad:
            return bad
        out = []
        for a, b in _pairs(B):
            Da, Db = w.delta(_e(a)), w.delta(_e(b))
            u = w.unit()
            cands = [
                ("T1", w.T1, w.tmul(Da, tensor(u, _e(b)))),
                ("T2", w.T2, w.tmul(tensor(_e(a), u), Db)),
            ]
            if w.T3 is not None:
                cands.append(("T3", w.T3, w.tmul(tensor(u, _e(b)), Da)))
            if w.T4 is not None:
                cands.append(("T4", w.T4, w.tmul(Db, tensor(_e(a), u))))
            for nm, _, rhs in cands:
                if w.t(int(nm[1]), {(a, b): 1}) != rhs:
                    out.append((nm, a, b))
        return out

    return ("coproduct-compatibility", run, {"product", "T1", "T2", "T3", "T4"})


def check_coproduct_homomorphism(w):
    def run():
        bad = _no_unit(w)
        if bad:
            return bad
        out = []
        for a, b in _pairs(w.basis):
            lhs = w.delta(w.algebra.mul_basis(a, b))
            rhs = w.tmul(w.delta(_e(a)), w.delta(_e(b)))
            if lhs != rhs:
                out.append((a, b))
        return out

    return ("coproduct-homomorphism", run, {"product", "T1"})


def check_coassociativity(w):
    """(c⊗1⊗1)(Δ⊗ι)(Δ(a)(1⊗b)) = (ι⊗Δ)((c⊗1)Δ(a))(1⊗1⊗b), through T1/T2 only."""
    B = w.basis

    def run():
        out = []
        for a, b in _pairs(B):
            t1 = w.tt(1, _e(a), _e(b))
            for c in B:
                lhs = map_legs(t1, lambda sub: w.t(2, {(c, sub[0]): 1}), 0, 1)
                t2 = w.tt(2, _e(c), _e(a))
                rhs = map_legs(t2, lambda sub: w.t(1, {(sub[0], b): 1}), 1, 1)
                if lhs != rhs:
                    out.append((a, b, c))
        return out

    return ("coassociativity", run, {"T1", "T2"})


def check_counit(w):
    def run():
        out = []
        alg = w.algebra
        for a, b in _pairs(w.basis):
            ab = alg.mul_basis(a, b)
            if w.eps_leg(w.tt(1, _e(a), _e(b)), 0) != ab:
                out.append(("(ε⊗ι)T1", a, b))
            if w.eps_leg(w.tt(2, _e(a), _e(b)), 1) != ab:
                out.append(("(ι⊗ε)T2", a, b))
        return out

    return ("counit", run, {"product", "T1", "T2", "counit"})


def _tensor_basis(B, arity=2):
    out = [()]
    for _ in range(arity):
        out = [t + (b,) for t in out for b in B]
    return out


def check_E_idempotent(w):
    def run():
        if w.E is None:
            return ["precondition: E is not an element"]
        EE = w.tmul(w.E, w.E)
        return [] if EE == w.E else [("E·E", EE, "E", w.E)]

    return ("E-idempotent", run, {"product", "E"})


def check_E_recomputed(w):
    def run():
        bad = _no_unit(w)
        if bad:
            return bad
        u = w.unit()
        d = w.t(1, tensor(u, u))
        return [] if d == w.E else [("T1(1⊗1)", d, "E", w.E)]

    return ("E-recomputed", run, {"product", "T1", "E"})


def check_canonical_ranges(w):
    B = w.basis

    def run():
        TB = _tensor_basis(B)
        out = []
        im1 = [w.t(1, {k: 1}) for k in TB]
        e1 = [w.E_left({k: 1}) for k in TB]
        if not span_equal(im1, e1):
            out.append(f"T1(A⊗A) has rank {span_rank(im1)}, E(A⊗A) rank {span_rank(e1)}, not equal")
        im2 = [w.t(2, {k: 1}) for k in TB]
        e2 = [w.E_right({k: 1}) for k in TB]
        if not span_equal(im2, e2):
            out.append(f"T2(A⊗A) has rank {span_rank(im2)}, (A⊗A)E rank {span_rank(e2)}, not equal")
        return out, {"rank T1": span_rank(im1), "rank E(A⊗A)": span_rank(e1)}

    return ("canonical-ranges", run, {"product", "T1", "T2", "E"})


def check_E_absorbs(w):
    def run():
        bad = _no_unit(w)
        if bad:
            return bad
        out = []
        for a in w.basis:
            D = w.delta(_e(a))
            if w.E_left(D) != D:
                out.append(("EΔ(a)", a))
            if w.E_right(D) != D:
                out.append(("Δ(a)E", a))
        return out

    return ("E-absorbs-coproduct", run, {"product", "T1", "E"})


def check_E_comultiplication(w):
    def run():
        bad = _no_unit(w)
        if bad:
            return bad
        u = w.unit()
        E = w.E
        E1 = SparseVector((k + (lab,), c * d) for k, c in E.items() for lab, d in u.items())
        E2 = SparseVector(((lab,) + k, c * d) for k, c in E.items() for lab, d in u.items())
        prod12 = w.tmul(E1, E2)
        prod21 = w.tmul(E2, E1)
        right = map_legs(E, lambda s: w.delta(_e(s[0])), 1, 1)
        left = map_legs(E, lambda s: w.delta(_e(s[0])), 0, 1)
        out = []
        if right != prod12:
            out.append("(ι⊗Δ)E ≠ (E⊗1)(1⊗E)")
        if right != prod21:
            out.append("(ι⊗Δ)E ≠ (1⊗E)(E⊗1)")
        if left != prod21:
            out.append("(Δ⊗ι)E ≠ (1⊗E)(E⊗1)")
        if left != prod12:
            out.append("(Δ⊗ι)E ≠ (E⊗1)(1⊗E)")
        return out

    return ("E-comultiplication", run, {"product", "T1", "E"})


@dataclass
class KernelMaps:
    G1: LinearMap
    G2: LinearMap
    consistent: tuple
    determined: tuple


def compute_kernel_maps(w: WmhaStructure) -> KernelMaps:
    """Solve the defining systems of G1 and G2 on A⊗A."""
    B = w.basis
    TB = _tensor_basis(B)
    xs1, ys1, xs2, ys2 = [], [], [], []
    for a, b, c in _triples(B):
        # G1: X = Δ13(a)(1⊗b⊗c), Y = Δ13(a)(1⊗E(b⊗c)); G1 acts on legs 1,2
        t = w.tt(1, _e(a), _e(c))
        X = SparseVector(((u, b, v), k) for (u, v), k in t.items())
        Ebc = w.E_left({(b, c): 1})
        Y = linear_combination(
            (k, SparseVector(((u, x, v), m) for (u, v), m in w.tt(1, _e(a), _e(z)).items()))
            for (x, z), k in Ebc.items()
        )
        Xs, Ys = _slices(X, (0, 1), (2,)), _slices(Y, (0, 1), (2,))
        for key in set(Xs) | set(Ys):
            xs1.append(Xs.get(key, SparseVector()))
            ys1.append(Ys.get(key, SparseVector()))
        # G2: X = (a⊗b⊗1)Δ13(c), Y = ((a⊗b)E⊗1)Δ13(c); G2 acts on legs 2,3
        t = w.tt(2, _e(a), _e(c))
        X = SparseVector(((u, b, v), k) for (u, v), k in t.items())
        abE = w.E_right({(a, b): 1})
        Y = linear_combination(
            (k, SparseVector(((u, z, v), m) for (u, v), m in w.tt(2, _e(x), _e(c)).items()))
            for (x, z), k in abE.items()
        )
        Xs, Ys = _slices(X, (1, 2), (0,)), _slices(Y, (1, 2), (0,))
        for key in set(Xs) | set(Ys):
            xs2.append(Xs.get(key, SparseVector()))
            ys2.append(Ys.get(key, SparseVector()))
    G1, c1, d1 = solve_matrix_equation(xs1, ys1, TB)
    G2, c2, d2 = solve_matrix_equation(xs2, ys2, TB)
    return KernelMaps(G1, G2, (c1, c2), (d1, d2))


def check_canonical_kernels(w):
    def run():
        km = compute_kernel_maps(w)
        TB = _tensor_basis(w.basis)
        out = []
        detail = {}
        for i, (G, k) in enumerate(((km.G1, 1), (km.G2, 2))):
            if not km.consistent[i]:
                out.append(f"defining system for G{k} is inconsistent")
                continue
            T = LinearMap(TB, lambda lab: w.t(k, {lab: 1}))
            ker = T.kernel_basis()
            one_minus = [SparseVector.basis(lab) - G.images[lab] for lab in TB]
            detail[f"dim Ker T{k}"] = len(ker)
            detail[f"rank (1-G{k})"] = span_rank(one_minus)
            if not span_equal(ker, one_minus):
                out.append(f"Ker T{k} (dim {len(ker)}) ≠ (1-G{k})(A⊗A) (rank {span_rank(one_minus)})")
            if not km.determined[i]:
                detail[f"G{k} determined"] = False
        return out, detail

    return ("canonical-kernels", run, {"product", "T1", "T2", "E"})


def check_antipode(w):
    B = w.basis
    alg = w.algebra

    def run():
        out = []
        for a, b in _pairs(B):
            t1 = w.tt(1, _e(a), _e(b))
            for c in B:
                tri = map_legs(t1, lambda s: w.t(2, {(c, s[0]): 1}), 0, 1)
                val = linear_combination(
                    (k, alg.mul_many({x: 1}, w.S(_e(y)), {z: 1}))
                    for (x, y, z), k in tri.items()
                )
                if val != alg.mul_many(_e(c), _e(a), _e(b)):
                    out.append(("a(1)S(a(2))a(3)", a, b, c))
        if w.regular:
            for a, b, c in _triples(B):
                sb, sc = w.Sinv(_e(b)), w.Sinv(_e(c))
                t3 = w.t(3, tensor(_e(a), sb))
                tri = map_legs(t3, lambda s: w.t(4, tensor(sc, _e(s[0]))), 0, 1)
                val = linear_combination(
                    (k, alg.mul_many(w.S(_e(x)), {y: 1}, w.S(_e(z)))) for (x, y, z), k in tri.items()
                )
                if val != alg.mul_many(_e(c), w.S(_e(a)), _e(b)):
                    out.append(("S(a(1))a(2)S(a(3))", a, b, c))
        else:
            bad = _no_unit(w)
            if bad:
                return out + bad
            for a in B:
                D = w.delta(_e(a))
                tri = map_legs(D, lambda s: w.delta(_e(s[0])), 1, 1)
                val = linear_combination(
                    (k, alg.mul_many(w.S(_e(x)), {y: 1}, w.S(_e(z)))) for (x, y, z), k in tri.items()
                )
                if val != w.S(_e(a)):
                    out.append(("S(a(1))a(2)S(a(3))", a))
        return out

    return ("antipode", run, {"product", "T1", "T2", "T3", "T4", "antipode", "antipode_inv"})


def check_antipode_antimultiplicative(w):
    def run():
        alg = w.algebra
        return [
            (a, b) for a, b in _pairs(w.basis)
            if w.S(alg.mul_basis(a, b)) != alg.mul(w.S(_e(b)), w.S(_e(a)))
        ]

    return ("antipode-anti-multiplicative", run, {"product", "antipode"})


def check_antipode_bijective(w):
    def run():
        if w.antipode_inv is None:
            return ["precondition: no inverse antipode supplied"]
        out = []
        for a in w.basis:
            if w.S(w.Sinv(_e(a))) != _e(a):
                out.append(("S∘S⁻¹", a))
            if w.Sinv(w.S(_e(a))) != _e(a):
                out.append(("S⁻¹∘S", a))
        return out

    return ("antipode-bijective", run, {"antipode", "antipode_inv"})


def _sweedler2(w, a, f: Callable[[Vec, Vec], Vec]) -> Vec:
    """Σ f(a(1), a(2)) with Δ(a) = T1(a⊗1)."""
    return linear_combination((c, f(_e(x), _e(y))) for (x, y), c in w.delta(_e(a)).items())


def check_source_target(w):
    alg = w.algebra
    B = w.basis

    def run():
        bad = _no_unit(w)
        if bad:
            return bad
        out = []
        regular = w.antipode_inv is not None
        for a in B:
            ea = _e(a)
            if w.eps_s(ea) != _sweedler2(w, a, lambda x, y: alg.mul(w.S(x), y)):
                out.append(("ε_s(a) = Σ S(a(1))a(2)", a))
            if w.eps_t(ea) != _sweedler2(w, a, lambda x, y: alg.mul(x, w.S(y))):
                out.append(("ε_t(a) = Σ a(1)S(a(2))", a))
            if regular:
                if w.eps_s_prime(ea) != _sweedler2(w, a, lambda x, y: alg.mul(y, w.Sinv(x))):
                    out.append(("ε'_s(a) = Σ a(2)S⁻¹(a(1))", a))
                if w.eps_t_prime(ea) != _sweedler2(w, a, lambda x, y: alg.mul(w.Sinv(y), x)):
                    out.append(("ε'_t(a) = Σ S⁻¹(a(2))a(1)", a))
            if w.S(w.eps_s(ea)) != w.eps_t(w.S(ea)):
                out.append(("S∘ε_s = ε_t∘S", a))
        for a, b in _pairs(B):
            ea, eb = _e(a), _e(b)
            if alg.mul(w.eps_t(ea), w.eps_t(eb)) != w.eps_t(alg.mul(w.eps_t(ea), eb)):
                out.append(("ε_t(a)ε_t(b) = ε_t(ε_t(a)b)", a, b))
            if alg.mul(w.eps_s(ea), w.eps_s(eb)) != w.eps_s(alg.mul(ea, w.eps_s(eb))):
                out.append(("ε_s(a)ε_s(b) = ε_s(aε_s(b))", a, b))
        As, At = w.source_algebra(), w.target_algebra()
        for a in B:
            ea = _e(a)
            for y in As:
                if w.eps_s(alg.mul(ea, y)) != alg.mul(w.eps_s(ea), y):
                    out.append(("ε_s(ay) = ε_s(a)y", a, y))
                if w.eps_t(alg.mul(y, ea)) != alg.mul(w.eps_t(ea), w.S(y)):
                    out.append(("ε_t(ya) = ε_t(a)S(y)", a, y))
            for x in At:
                if w.eps_t(alg.mul(x, ea)) != alg.mul(x, w.eps_t(ea)):
                    out.append(("ε_t(xa) = xε_t(a)", a, x))
                if w.eps_s(alg.mul(ea, x)) != alg.mul(w.S(x), w.eps_s(ea)):
                    out.append(("ε_s(ax) = S(x)ε_s(a)", a, x))
        return out

    return ("source-target-maps", run, {"product", "T1", "E", "counit", "antipode", "antipode_inv"})


def _solution_space(w, rows_fn) -> list[Vec]:
    """Kernel of y ↦ (rows_fn(a, b, y))_{a,b} over y ∈ A, given on basis y."""
    B = w.basis
    rows: dict = {}
    for yl in B:
        for a, b in _pairs(B):
            for k, c in rows_fn(a, b, _e(yl)).items():
                rows.setdefault((a, b, k), {})[yl] = c
    labels = list(rows)
    return kernel_basis(SparseMatrix([rows[r] for r in labels], B, labels)) if labels else [_e(b) for b in B]


def check_base_algebras(w):
    alg = w.algebra
    B = w.basis

    def run():
        bad = _no_unit(w)
        if bad:
            return bad
        out = []
        for a, b in _pairs(B):
            s, t = w.eps_s(_e(a)), w.eps_t(_e(b))
            if alg.mul(s, t) != alg.mul(t, s):
                out.append(("ε_s(a)ε_t(b) = ε_t(b)ε_s(a)", a, b))
        As, At = w.source_algebra(), w.target_algebra()
        char_s = _solution_space(
            w, lambda a, b, y: w.tt(1, alg.mul(_e(a), y), _e(b)) - w.tt(1, _e(a), alg.mul(y, _e(b)))
        )
        char_t = _solution_space(
            w, lambda c, a, x: w.tt(2, _e(c), alg.mul(x, _e(a))) - w.tt(2, alg.mul(_e(c), x), _e(a))
        )
        if not span_equal(char_s, As):
            out.append(f"source algebra (dim {len(As)}) differs from its T1-characterization (dim {len(char_s)})")
        if not span_equal(char_t, At):
            out.append(f"target algebra (dim {len(At)}) differs from its T2-characterization (dim {len(char_t)})")
        u = w.unit()
        for y in As:
            d = w.delta(y)
            if d != w.E_left(tensor(u, y)) or d != w.E_right(tensor(u, y)):
                out.append(("Δ(y) = E(1⊗y) = (1⊗y)E", y))
        for x in At:
            d = w.delta(x)
            if d != w.E_right(tensor(x, u)) or d != w.E_left(tensor(x, u)):
                out.append(("Δ(x) = (x⊗1)E = E(x⊗1)", x))
        return out, {"dim source algebra": len(As), "dim target algebra": len(At)}

    return ("base-algebras", run, {"product", "T1", "T2", "E", "counit"})


def check_E_formulas(w):
    B = w.basis

    def run():
        bad = _no_unit(w)
        if bad:
            return bad
        if w.antipode_inv is None:
            return ["precondition: regular structure needed"]
        u = w.unit()
        out = []
        for a in B:
            D = w.delta(_e(a))
            lhs = w.E_left(tensor(_e(a), u))
            mid = linear_combination((c, w.tmul(w.delta(_e(x)), tensor(u, w.S(_e(y))))) for (x, y), c in D.items())
            rhs = linear_combination((c, tensor(_e(x), w.eps_t(_e(y)))) for (x, y), c in D.items())
            if not lhs == mid == rhs:
                out.append(("E(a⊗1)", a))
            lhs = w.E_right(tensor(u, _e(a)))
            mid = linear_combination((c, w.tmul(tensor(w.S(_e(x)), u), w.delta(_e(y)))) for (x, y), c in D.items())
            rhs = linear_combination((c, tensor(w.eps_s(_e(x)), _e(y))) for (x, y), c in D.items())
            if not lhs == mid == rhs:
                out.append(("(1⊗a)E", a))
            lhs = w.E_left(tensor(u, _e(a)))
            mid = linear_combination((c, w.tmul(w.delta(_e(y)), tensor(w.Sinv(_e(x)), u))) for (x, y), c in D.items())
            rhs = linear_combination((c, tensor(w.eps_s_prime(_e(x)), _e(y))) for (x, y), c in D.items())
            if not lhs == mid == rhs:
                out.append(("E(1⊗a)", a))
        for y in w.source_algebra():
            if w.E_left(tensor(y, u)) != w.E_left(tensor(u, w.S(y))):
                out.append(("E(y⊗1) = E(1⊗S(y))", y))
        return out

    return ("E-formulas", run, {"product", "T1", "E", "counit", "antipode", "antipode_inv"})


def check_fullness(w):
    B = w.basis

    def run():
        TB = _tensor_basis(B)
        V = _leg_span((w.t(1, {k: 1}) for k in TB), 0, B)
        W = _leg_span((w.t(2, {k: 1}) for k in TB), 1, B)
        out = []
        if len(V) != len(B):
            out.append(f"left legs of T1 span only {len(V)} of {len(B)} dimensions")
        if len(W) != len(B):
            out.append(f"right legs of T2 span only {len(W)} of {len(B)} dimensions")
        return out

    return ("fullness", run, {"T1", "T2"})


def _checks(w) -> list[tuple]:
    return [
        *check_algebra(w),
        check_coproduct_compatibility(w),
        check_coproduct_homomorphism(w),
        check_coassociativity(w),
        check_counit(w),
        check_E_idempotent(w),
        check_E_recomputed(w),
        check_canonical_ranges(w),
        check_E_comultiplication(w),
        check_E_absorbs(w),
        check_canonical_kernels(w),
        check_antipode(w),
        check_antipode_antimultiplicative(w),
        check_antipode_bijective(w),
        check_source_target(w),
        check_base_algebras(w),
        check_E_formulas(w),
        check_fullness(w),
    ]


AXIOMS = (
    "algebra-associative",
    "algebra-nondegenerate",
    "algebra-idempotent",
    "coproduct-compatibility",
    "coproduct-homomorphism",
    "coassociativity",
    "counit",
    "E-idempotent",
    "E-recomputed",
    "canonical-ranges",
    "E-comultiplication",
    "E-absorbs-coproduct",
    "canonical-kernels",
    "antipode",
    "antipode-anti-multiplicative",
    "antipode-bijective",
    "source-target-maps",
    "base-algebras",
    "E-formulas",
    "fullness",
    "regularity",
)


def _regularity(w):
    def run():
        if not w.regular:
            return ["precondition: T3, T4 and the inverse antipode are required"]
        c = cop(w)
        sub = [run_check(name, fn, reads) for name, fn, reads in _checks(c)]
        return [f"opposite structure fails {r.axiom}: {r.witnesses[0]}" for r in sub if not r.ok]

    return ("regularity", run, set(FIELDS))


def run_axiom_suite(w: WmhaStructure, only: Iterable[str] | None = None) -> Report:
    """Every axiom check on a finite structure, in the fixed order of :data:`AXIOMS`."""
    if not w.finite:
        raise ValueError("exhaustive suite needs a finite backend; use run_lazy_suite")
    wanted = set(only) if only is not None else None
    checks = _checks(w) + [_regularity(w)]
    results = []
    for name, fn, reads in checks:
        if wanted is not None and name not in wanted:
            continue
        results.append(run_check(name, fn, reads))
    return Report(f"axioms: {w.name}", results, {"dim": len(w.basis), "regular": w.regular})


# ============================================================== lazy backend


def run_lazy_suite(w: WmhaStructure, budget: int = 200, seed: int = 0, n_objects: int = 50) -> Report:
    """Sampled subset of the suite for lazy structures (labelled sampled-pass)."""
    rng = random.Random(seed)
    alg = w.algebra

    def draw(k):
        return alg.sample(rng, k)

    pairs = [(x, y) for x, y in zip(draw(budget), draw(budget))]
    triples = [(x, y, z) for (x, y), z in zip(pairs, draw(budget))]
    tensors = [tuple(draw(2)) for _ in range(budget)]
    results = []

    def finite_support(v) -> bool:
        return isinstance(v, SparseVector) and all(alg.contains(l) for k in v for l in k)

    def e_multiplier():
        out = []
        for s, t in zip(tensors, tensors[1:] + tensors[:1]):
            v, u = {s: 1}, {t: 1}
            lhs = tensor_mul(alg, w.E_mult.right(v), u)
            rhs = tensor_mul(alg, v, w.E_mult.left(u))
            if lhs != rhs:
                out.append(("r(v)u = v l(u)", s, t))
            vu = tensor_mul(alg, v, u)
            if w.E_mult.left(vu) != tensor_mul(alg, w.E_mult.left(v), u):
                out.append(("E(vu) = E(v)u", s, t))
            if w.E_mult.right(vu) != tensor_mul(alg, v, w.E_mult.right(u)):
                out.append(("(vu)E = v(uE)", s, t))
            for img in (w.E_mult.left(v), w.E_mult.right(v)):
                if not finite_support(img):
                    out.append(("infinite or foreign support", s))
        return out

    def e_idempotent():
        out = []
        for s in tensors:
            v = {s: 1}
            l = w.E_mult.left(v)
            if w.E_mult.left(l) != l:
                out.append(("E(Ev) = Ev", s))
            r = w.E_mult.right(v)
            if w.E_mult.right(r) != r:
                out.append(("(vE)E = vE", s))
        return out

    def e_absorbs():
        out = []
        for a, b in pairs:
            t1 = w.tt(1, _e(a), _e(b))
            if w.E_mult.left(t1) != t1:
                out.append(("E·T1(a⊗b)", a, b))
            t2 = w.tt(2, _e(a), _e(b))
            if w.E_mult.right(t2) != t2:
                out.append(("T2(a⊗b)·E", a, b))
        return out

    def compat():
        out = []
        for a, b, c in triples:
            l = linear_combination((k, tensor(alg.mul_basis(a, x), _e(y))) for (x, y), k in w.tt(1, _e(c), _e(b)).items())
            r = linear_combination((k, tensor(_e(x), alg.mul_basis(y, b))) for (x, y), k in w.tt(2, _e(a), _e(c)).items())
            if l != r:
                out.append(("(a⊗1)T1(c⊗b) = T2(a⊗c)(1⊗b)", a, b, c))
        return out

    def coassoc():
        out = []
        for a, b, c in triples:
            t1 = w.tt(1, _e(a), _e(b))
            lhs = map_legs(t1, lambda sub: w.t(2, {(c, sub[0]): 1}), 0, 1)
            rhs = map_legs(w.tt(2, _e(c), _e(a)), lambda sub: w.t(1, {(sub[0], b): 1}), 1, 1)
            if lhs != rhs:
                out.append((a, b, c))
        return out

    def counit():
        out = []
        for a, b in pairs:
            ab = alg.mul_basis(a, b)
            if w.eps_leg(w.tt(1, _e(a), _e(b)), 0) != ab or w.eps_leg(w.tt(2, _e(a), _e(b)), 1) != ab:
                out.append((a, b))
        return out

    def antipode():
        out = []
        for a, b, c in triples:
            tri = map_legs(w.tt(1, _e(a), _e(b)), lambda s: w.t(2, {(c, s[0]): 1}), 0, 1)
            val = linear_combination((k, alg.mul(alg.mul({x: 1}, w.S(_e(y))), {z: 1})) for (x, y, z), k in tri.items())
            if val != alg.mul(alg.mul_basis(c, a), {b: 1}):
                out.append((a, b, c))
        return out

    for name, fn, reads in (
        ("E-multiplier", e_multiplier, {"E", "product"}),
        ("E-idempotent", e_idempotent, {"E"}),
        ("E-absorbs-coproduct", e_absorbs, {"E", "T1", "T2"}),
        ("coproduct-compatibility", compat, {"T1", "T2", "product"}),
        ("coassociativity", coassoc, {"T1", "T2"}),
        ("counit", counit, {"T1", "T2", "counit", "product"}),
        ("antipode", antipode, {"T1", "T2", "antipode", "product"}),
    ):
        results.append(run_check(name, fn, reads, sampled=True))
    return Report(f"sampled axioms: {w.name}", results, {"budget": budget, "seed": seed, "objects": n_objects})
