"""Integrals, the dual quantum groupoid and pairings.

Functionals on a finite algebra are vectors keyed by basis labels: the value
of ``φ`` on basis element ``b`` is ``φ[b]``.  The dual Â is built from a left
integral φ as the span of the functionals ``φ(a·)``; its whole structure is
obtained by solving the duality relations as exact linear systems.  The
result is an ordinary :class:`~qgroupoid.wmha.WmhaStructure`, so the generic
axiom suite verifies it independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .algebra import Algebra
from .linalg import Solver, SparseMatrix, SparseVector, kernel_basis, linear_combination, span_rank, tensor
from .report import Report, run_check
from .wmha import WmhaStructure

__all__ = [
    "DualityError",
    "find_integrals",
    "is_integral",
    "check_faithful",
    "resolve_integral",
    "INTEGRAL_NAMES",
    "Pairing",
    "check_pairing",
    "DualWmha",
    "dual_wmha",
    "check_wmha_isomorphism",
    "delta_identification",
    "bidual_map",
]

Vec = SparseVector
ONE = Fraction(1)
ZERO = Fraction(0)


class DualityError(ValueError):
    pass


def _e(label) -> Vec:
    return SparseVector.basis(label)


def _annihilator(vectors: Sequence[Mapping], basis: Sequence) -> list[Vec]:
    """Functionals vanishing on every listed vector."""
    if not vectors:
        return [_e(b) for b in basis]
    return kernel_basis(SparseMatrix(list(vectors), basis))


# ====================================================================== integrals


def _invariance_rows(w: WmhaStructure, side: str) -> list[dict]:
    B = w.basis
    if side == "left":
        ann, keep = _annihilator(w.target_algebra(), B), 1
    elif side == "right":
        ann, keep = _annihilator(w.source_algebra(), B), 0
    else:
        raise ValueError("side must be 'left' or 'right'")
    rows = []
    for a in B:
        d = w.delta(_e(a))
        for lam in ann:
            row: dict = {}
            for k, c in d.items():
                # left: Σ λ(x) φ(y);  right: Σ φ(x) λ(y)
                out, unknown = k[1 - keep], k[keep]
                v = lam.get(out) * c
                if v:
                    row[unknown] = row.get(unknown, ZERO) + v
            rows.append({k: v for k, v in row.items() if v})
    return rows


def find_integrals(w: WmhaStructure, side: str = "left") -> list[Vec]:
    """Basis of the invariant functionals: (ι⊗φ)Δ(a) ∈ A_t (left) or (φ⊗ι)Δ(a) ∈ A_s (right)."""
    if not w.finite:
        raise ValueError("integrals are computed on the finite backend")
    return kernel_basis(SparseMatrix(_invariance_rows(w, side), w.basis))


def is_integral(w: WmhaStructure, phi: Mapping, side: str = "left") -> bool:
    if not any(phi.values()):
        return False
    return all(sum((phi.get(k, ZERO) * c for k, c in row.items()), ZERO) == 0 for row in _invariance_rows(w, side))


def check_faithful(w: WmhaStructure, integrals: Sequence[Mapping]) -> bool:
    """Joint kernel of x ↦ φ(xa) and x ↦ φ(ax) over all φ and basis a is zero."""
    B = w.basis
    rows = []
    for phi in integrals:
        for a in B:
            for side in (0, 1):
                row = {}
                for x in B:
                    v = w.algebra.mul_basis(x, a) if side == 0 else w.algebra.mul_basis(a, x)
                    c = sum((phi.get(k, ZERO) * d for k, d in v.items()), ZERO)
                    if c:
                        row[x] = c
                rows.append(row)
    if not rows:
        return False
    return not kernel_basis(SparseMatrix(rows, B))


INTEGRAL_NAMES = ("sum", "unit-indicator", "counting")


def resolve_integral(w: WmhaStructure, spec: str | int | None = None) -> Vec:
    """Pick a left integral by name or by index into :func:`find_integrals`.

    ``sum`` adds the computed basis; ``unit-indicator`` is λ_p ↦ [p is a unit]
    on a groupoid algebra; ``counting`` takes the value 1 on every basis
    element (f ↦ Σ f(p) on a function algebra).
    """
    basis = find_integrals(w, "left")
    if spec is None or spec == "sum":
        phi = linear_combination((ONE, v) for v in basis)
    elif isinstance(spec, int) or (isinstance(spec, str) and spec.lstrip("-").isdigit()):
        k = int(spec)
        if not 0 <= k < len(basis):
            raise DualityError(f"integral index {k} out of range (space has dimension {len(basis)})")
        phi = basis[k]
    elif spec == "unit-indicator":
        g, lab = w.extras.get("groupoid"), w.extras.get("label_of")
        if w.extras.get("kind") != "groupoid-algebra" or g is None:
            raise DualityError("unit-indicator is defined on groupoid algebras")
        phi = SparseVector({b: ONE for b, p in lab.items() if g.is_unit(p)})
    elif spec == "counting":
        phi = SparseVector({b: ONE for b in w.basis})
    else:
        raise DualityError(f"unknown integral {spec!r}; use one of {', '.join(INTEGRAL_NAMES)} or an index")
    if not is_integral(w, phi, "left"):
        raise DualityError(f"the functional {spec!r} is not a left integral")
    return phi


# ====================================================================== pairings


class Pairing:
    """Bilinear form between two finite structures, with the four actions.

    a▷b = Σ⟨a, b(2)⟩b(1),  b◁a = Σ⟨a, b(1)⟩b(2),
    b▷a = Σ a(1)⟨a(2), b⟩,  a◁b = Σ a(2)⟨a(1), b⟩.
    """

    def __init__(self, A: WmhaStructure, B: WmhaStructure, form: Callable[[object, object], Fraction] | Mapping):
        self.A, self.B = A, B
        if isinstance(form, Mapping):
            table = {(a, b): Fraction(form.get((a, b), 0)) for a in A.basis for b in B.basis}
        else:
            table = {(a, b): Fraction(form(a, b)) for a in A.basis for b in B.basis}
        self.table = table

    def pair(self, x: Mapping, y: Mapping) -> Fraction:
        t = self.table
        return sum((c * d * t[a, b] for a, c in x.items() for b, d in y.items()), ZERO)

    def pair2(self, u: Mapping, v: Mapping) -> Fraction:
        """⟨a⊗a', b⊗b'⟩ = ⟨a, b⟩⟨a', b'⟩."""
        t = self.table
        return sum((c * d * t[k[0], l[0]] * t[k[1], l[1]] for k, c in u.items() for l, d in v.items()), ZERO)

    def a_on_b(self, a: Mapping, b: Mapping) -> Vec:
        return linear_combination((c * self.pair(a, _e(y)), _e(x)) for (x, y), c in self.B.delta(b).items())

    def b_right_a(self, b: Mapping, a: Mapping) -> Vec:
        return linear_combination((c * self.pair(a, _e(x)), _e(y)) for (x, y), c in self.B.delta(b).items())

    def b_on_a(self, b: Mapping, a: Mapping) -> Vec:
        return linear_combination((c * self.pair(_e(y), b), _e(x)) for (x, y), c in self.A.delta(a).items())

    def a_right_b(self, a: Mapping, b: Mapping) -> Vec:
        return linear_combination((c * self.pair(_e(x), b), _e(y)) for (x, y), c in self.A.delta(a).items())

    def maps(self) -> dict:
        A, B = self.A, self.B
        return {
            "A▷B": (A.basis, B.basis, self.a_on_b, B),
            "B◁A": (B.basis, A.basis, self.b_right_a, B),
            "B▷A": (B.basis, A.basis, self.b_on_a, A),
            "A◁B": (A.basis, B.basis, self.a_right_b, A),
        }

    def surjectivity(self) -> dict:
        out = {}
        for name, (X, Y, f, W) in self.maps().items():
            out[name] = span_rank(f(_e(x), _e(y)) for x in X for y in Y) == len(W.basis)
        return out

    def unit_value(self, side: str, route: str) -> dict:
        """⟨x, 1⟩ (side 'A', x in A) or ⟨1, y⟩ (side 'B') through one multiplier extension.

        Route '◁' uses ⟨a, b·1⟩ = ⟨a◁b, 1⟩ (resp. ⟨1·a, b⟩ = ⟨1, b◁a⟩); route
        '▷' uses ⟨a, 1·b⟩ = ⟨b▷a, 1⟩ (resp. ⟨a·1, b⟩ = ⟨1, a▷b⟩).  Raises
        :class:`DualityError` when the extension is not well defined.
        """
        A, B = self.A, self.B
        if side == "A":
            f = self.a_right_b if route == "◁" else (lambda a, b: self.b_on_a(b, a))
            target = A
        else:
            f = (lambda a, b: self.b_right_a(b, a)) if route == "◁" else self.a_on_b
            target = B
        cols = {(a, b): f(_e(a), _e(b)) for a in A.basis for b in B.basis}
        sol = Solver(cols)
        for rel in sol.relations:
            if sum((c * self.table[k] for k, c in rel.items()), ZERO):
                raise DualityError(f"⟨·,1⟩ via {route} is not well defined on side {side}: relation {rel!r}")
        out = {}
        for x in target.basis:
            c = sol.express(_e(x))
            if c is None:
                raise DualityError(f"{x!r} is outside the range used by route {route}")
            out[x] = sum((v * self.table[k] for k, v in c.items()), ZERO)
        return out


def check_pairing(P: Pairing) -> Report:
    A, B = P.A, P.B
    AB, BB = A.basis, B.basis

    def coproduct_A():
        for a in AB:
            d = A.delta(_e(a))
            for b in BB:
                for b2 in BB:
                    if P.pair2(d, tensor(_e(b), _e(b2))) != P.pair(_e(a), B.algebra.mul_basis(b, b2)):
                        yield (a, b, b2)

    def coproduct_B():
        for b in BB:
            d = B.delta(_e(b))
            for a in AB:
                for a2 in AB:
                    if P.pair2(tensor(_e(a), _e(a2)), d) != P.pair(A.algebra.mul_basis(a, a2), _e(b)):
                        yield (a, a2, b)

    def nondeg():
        rows = [{b: P.table[a, b] for b in BB if P.table[a, b]} for a in AB]
        rk = span_rank(rows)
        ok = rk == len(AB) == len(BB)
        return ([] if ok else [f"rank {rk}, dims {len(AB)}, {len(BB)}"]), {"rank": rk}

    def surj(name):
        def run():
            X, Y, f, W = P.maps()[name]
            rk = span_rank(f(_e(x), _e(y)) for x in X for y in Y)
            return ([] if rk == len(W.basis) else [f"image rank {rk} < {len(W.basis)}"]), {"rank": rk}
        return run

    def e_pair(side):
        def run():
            if side == "B":
                for a in AB:
                    for a2 in AB:
                        if P.pair2(tensor(_e(a), _e(a2)), B.E) != A.eps(A.algebra.mul_basis(a, a2)):
                            yield (a, a2)
            else:
                for b in BB:
                    for b2 in BB:
                        if P.pair2(A.E, tensor(_e(b), _e(b2))) != B.eps(B.algebra.mul_basis(b, b2)):
                            yield (b, b2)
        return run

    def unit(side):
        def run():
            W = A if side == "A" else B
            left, right = P.unit_value(side, "◁"), P.unit_value(side, "▷")
            bad = []
            for x in W.basis:
                eps = W.eps(_e(x))
                if not left[x] == right[x] == eps:
                    bad.append((x, left[x], right[x], eps))
            return bad
        return run

    def extension():
        for a in AB:
            for b in BB:
                ab, ba = P.a_right_b(_e(a), _e(b)), P.b_on_a(_e(b), _e(a))
                for m in BB:
                    if P.pair(_e(a), B.algebra.mul_basis(b, m)) != P.pair(ab, _e(m)):
                        yield ("⟨a,bm⟩", a, b, m)
                    if P.pair(_e(a), B.algebra.mul_basis(m, b)) != P.pair(ba, _e(m)):
                        yield ("⟨a,mb⟩", a, b, m)

    def antipode():
        for a in AB:
            for b in BB:
                if P.pair(A.S(_e(a)), _e(b)) != P.pair(_e(a), B.S(_e(b))):
                    yield (a, b)

    rep = Report(f"pairing ⟨{A.name}, {B.name}⟩", info={"surjective": P.surjectivity()})
    rep.results = [
        run_check("pairing-coproduct-A", coproduct_A),
        run_check("pairing-coproduct-B", coproduct_B),
        run_check("pairing-nondegenerate", nondeg),
        run_check("surjective-A▷B", surj("A▷B")),
        run_check("surjective-B◁A", surj("B◁A")),
        run_check("surjective-B▷A", surj("B▷A")),
        run_check("surjective-A◁B", surj("A◁B")),
        run_check("pairing-E-of-B", e_pair("B")),
        run_check("pairing-E-of-A", e_pair("A")),
        run_check("pairing-unit-of-B", unit("A")),
        run_check("pairing-unit-of-A", unit("B")),
        run_check("pairing-multiplier-extension", extension),
        run_check("pairing-antipode", antipode),
    ]
    return rep


# ====================================================================== the dual


@dataclass
class DualWmha:
    """Â = span{φ(a·)} with its structure and the evaluation pairing ⟨A, Â⟩."""

    base: WmhaStructure
    phi: Vec
    functionals: dict
    structure: WmhaStructure
    pairing: Pairing
    solver: Solver = field(repr=False)

    @property
    def labels(self) -> tuple:
        return self.structure.basis

    def coords(self, functional: Mapping) -> Vec:
        """Coordinates of a functional on A in the basis of Â."""
        c = self.solver.express(functional)
        if c is None:
            raise DualityError("functional is outside Â")
        return c

    def omega(self, x: Mapping) -> Vec:
        """Coordinates of φ(x·)."""
        B = self.base.basis
        f = {b: sum((self.phi.get(k, ZERO) * c for k, c in self.base.mul(x, _e(b)).items()), ZERO) for b in B}
        return self.coords(SparseVector(f))

    def value(self, omega: Mapping, x: Mapping) -> Fraction:
        """ω(x) for ω in Â coordinates and x in A."""
        return self.pairing.pair(x, omega)


def _omega_label(a) -> str:
    return f"ω[{a}]"


def dual_wmha(w: WmhaStructure, phi: Mapping, name: str = "") -> DualWmha:
    if not w.finite:
        raise DualityError("the dual is built on the finite backend")
    phi = SparseVector(phi)
    if not is_integral(w, phi, "left"):
        raise DualityError("φ is not a left integral")
    if not check_faithful(w, [phi]):
        raise DualityError("φ is not faithful; Â would not be an algebraic quantum groupoid")
    B = w.basis
    alg = w.algebra
    val = lambda f, v: sum((f.get(k, ZERO) * c for k, c in v.items()), ZERO)

    raw = {}
    for a in B:
        raw[_omega_label(a)] = SparseVector({x: val(phi, alg.mul_basis(a, x)) for x in B})
    sol = Solver(raw)
    if sol.relations:
        raise DualityError("the functionals φ(a·) are dependent")
    labels = tuple(raw)
    F = raw

    def coords(f: Mapping) -> Vec:
        c = sol.express(f)
        if c is None:
            raise DualityError("duality system is inconsistent: functional outside Â")
        return c

    def coords2(G: Mapping) -> Vec:
        # G is a functional on A⊗A keyed by (x, y); peel one leg at a time
        by_y: dict = {}
        for (x, y), c in G.items():
            by_y.setdefault(y, {})[x] = c
        first = {y: coords(SparseVector(d)) for y, d in by_y.items()}
        by_a: dict = {}
        for y, cv in first.items():
            for a, c in cv.items():
                by_a.setdefault(a, {})[y] = c
        out: dict = {}
        for a, d in by_a.items():
            for b, c in coords(SparseVector(d)).items():
                out[(a, b)] = out.get((a, b), ZERO) + c
        return SparseVector(out)

    def tensor_functional(fn: Callable[[object, object], Mapping], swap: bool, la, lb) -> Vec:
        # G(x, y) = ⟨fn(x, y), ωa⊗ωb⟩ (swap: fn is evaluated at (y, x) and flipped)
        Fa, Fb = F[la], F[lb]
        G = {}
        for x in B:
            for y in B:
                v = fn(y, x) if swap else fn(x, y)
                s = ZERO
                for (u, t), c in v.items():
                    s += c * (Fa.get(t, ZERO) * Fb.get(u, ZERO) if swap else Fa.get(u, ZERO) * Fb.get(t, ZERO))
                if s:
                    G[(x, y)] = s
        return coords2(G)

    prod_table = {}
    for la in labels:
        for lb in labels:
            f = {}
            for x in B:
                s = sum((c * F[la].get(u, ZERO) * F[lb].get(v, ZERO) for (u, v), c in w.delta(_e(x)).items()), ZERO)
                if s:
                    f[x] = s
            prod_table[la, lb] = coords(SparseVector(f))
    dual_alg = Algebra(labels, prod_table, name or f"dual({w.name})", check=False)

    T = {k: w._c[f"T{k}"] for k in (1, 2, 3, 4)}
    that = {
        1: lambda a, b: tensor_functional(T[2], False, a, b),
        2: lambda a, b: tensor_functional(T[1], False, a, b),
        3: lambda a, b: tensor_functional(T[3], True, a, b),
        4: lambda a, b: tensor_functional(T[4], True, a, b),
    }
    unit = w.unit()
    counit = {la: val(F[la], unit) for la in labels}
    S_hat = {la: coords(SparseVector({x: val(F[la], w.S(_e(x))) for x in B})) for la in labels}
    Sinv_hat = {la: coords(SparseVector({x: val(F[la], w.Sinv(_e(x))) for x in B})) for la in labels}
    E_hat = coords2({(x, y): w.eps(alg.mul_basis(x, y)) for x in B for y in B if w.eps(alg.mul_basis(x, y))})

    structure = WmhaStructure(
        dual_alg,
        T1=that[1],
        T2=that[2],
        T3=that[3],
        T4=that[4],
        counit=lambda a: counit[a],
        antipode=lambda a: S_hat[a],
        antipode_inv=lambda a: Sinv_hat[a],
        E=E_hat,
        name=name or f"dual({w.name})",
        extras={"kind": "dual", "base": w},
    )
    pairing = Pairing(w, structure, lambda a, la: F[la].get(a, ZERO))
    out = DualWmha(w, phi, F, structure, pairing, sol)

    # ε̂ through the multiplier extension must agree with ω(1)
    for route in ("◁", "▷"):
        ext = pairing.unit_value("B", route)
        for la in labels:
            if ext[la] != counit[la]:
                raise DualityError(f"ε̂({la}) = {counit[la]} but the {route} extension gives {ext[la]}")
    return out


# ====================================================================== isomorphisms


def check_wmha_isomorphism(w1: WmhaStructure, w2: WmhaStructure, f: Mapping) -> Report:
    """Check that the linear map ``f`` (basis label of w1 ↦ vector of w2) is a WMHA isomorphism."""
    B1 = w1.basis
    F = lambda v: linear_combination((c, SparseVector(f[k])) for k, c in v.items())
    F2 = lambda v: linear_combination((c, tensor(SparseVector(f[k[0]]), SparseVector(f[k[1]]))) for k, c in v.items())

    def bijective():
        rk = span_rank(SparseVector(f[b]) for b in B1)
        ok = rk == len(B1) == len(w2.basis)
        return ([] if ok else [f"rank {rk}, dims {len(B1)}, {len(w2.basis)}"]), {"rank": rk}

    def product():
        for a in B1:
            for b in B1:
                if F(w1.algebra.mul_basis(a, b)) != w2.mul(f[a], f[b]):
                    yield (a, b)

    def tmap(k):
        def run():
            for a in B1:
                for b in B1:
                    if F2(w1.t(k, {(a, b): ONE})) != w2.tt(k, f[a], f[b]):
                        yield (a, b)
        return run

    def counit():
        return [a for a in B1 if w1.eps(_e(a)) != w2.eps(f[a])]

    def antipode(inv):
        def run():
            s1, s2 = (w1.Sinv, w2.Sinv) if inv else (w1.S, w2.S)
            return [a for a in B1 if F(s1(_e(a))) != s2(f[a])]
        return run

    def E():
        return [] if F2(w1.E) == w2.E else [("E", F2(w1.E), w2.E)]

    rep = Report(f"isomorphism {w1.name} → {w2.name}")
    rep.results = [
        run_check("iso-bijective", bijective),
        run_check("iso-product", product),
        *[run_check(f"iso-T{k}", tmap(k)) for k in (1, 2, 3, 4)],
        run_check("iso-counit", counit),
        run_check("iso-antipode", antipode(False)),
        run_check("iso-antipode-inv", antipode(True)),
        run_check("iso-E", E),
    ]
    return rep


def delta_identification(dual: DualWmha, target: WmhaStructure) -> dict:
    """Map K(G) → dual(ℂG) sending δ_p to the functional λ_q ↦ [q = p]."""
    src = dual.base.extras.get("label_of")
    tgt = target.extras.get("label_of")
    if src is None or tgt is None:
        raise DualityError("δ-identification needs labelled groupoid structures")
    by_morphism = {p: lab for lab, p in src.items()}
    return {d: dual.coords(_e(by_morphism[p])) for d, p in tgt.items()}


def bidual_map(dual: DualWmha, bidual: DualWmha) -> dict:
    """Canonical evaluation A → Â^: x ↦ (ω ↦ ω(x))."""
    A = dual.base
    return {x: bidual.coords(SparseVector({la: dual.functionals[la].get(x, ZERO) for la in dual.labels})) for x in A.basis}
