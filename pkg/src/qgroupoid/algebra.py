"""Associative algebras over the rationals on labelled bases, and their multipliers.

Elements are :class:`~qgroupoid.linalg.SparseVector` instances over the
algebra's basis labels; the owning algebra is implicit.  Two backends exist:

* finite: the basis is an explicit tuple and every law is checked exhaustively;
* lazy: the basis is only enumerable (a membership predicate plus a sampler)
  and laws are checked on seeded samples.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import (
    SparseMatrix,
    SparseVector,
    Solver,
    kernel_basis,
    linear_combination,
    span_basis,
    span_rank,
    solve_linear,
)

__all__ = [
    "Algebra",
    "LazyAlgebra",
    "AlgebraError",
    "Multiplier",
    "tensor_algebra",
    "matrix_algebra",
    "subalgebra",
    "SubAlgebra",
    "parse_algebra",
    "check_nondegenerate",
    "check_idempotent",
    "check_associative",
    "find_local_unit",
    "multiplier_from_element",
    "multiplier_mul",
    "multiplier_eq",
    "check_multiplier",
    "bilinear",
]

Vec = SparseVector


class AlgebraError(ValueError):
    pass


def bilinear(f: Callable[[object, object], Vec], x: Mapping, y: Mapping) -> Vec:
    """Extend a map on basis pairs bilinearly."""
    return linear_combination((cx * cy, f(a, b)) for a, cx in x.items() for b, cy in y.items())


class Algebra:
    """Finite-dimensional associative algebra given by structure constants."""

    backend = "finite"

    def __init__(self, basis: Sequence, product: Callable | Mapping, name: str = "", check: bool = True):
        self.basis = tuple(basis)
        self.name = name
        self._index = {b: i for i, b in enumerate(self.basis)}
        if len(self._index) != len(self.basis):
            raise AlgebraError("duplicate basis labels")
        table: dict = {}
        if isinstance(product, Mapping):
            for a in self.basis:
                for b in self.basis:
                    v = product.get((a, b))
                    table[a, b] = v if isinstance(v, SparseVector) else SparseVector(v or {})
        else:
            for a in self.basis:
                for b in self.basis:
                    v = product(a, b)
                    table[a, b] = v if isinstance(v, SparseVector) else SparseVector(v)
        for (a, b), v in table.items():
            for k in v:
                if k not in self._index:
                    raise AlgebraError(f"product {a}.{b} leaves the basis: {k!r}")
        self.table = table
        self._unit: Vec | None | bool = False
        if check:
            bad = check_associative(self)
            if bad:
                raise AlgebraError(f"product is not associative at {bad[0]}")

    def __repr__(self) -> str:
        return f"Algebra({self.name or '?'}, dim={len(self.basis)})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, label) -> bool:
        return label in self._index

    def mul_basis(self, a, b) -> Vec:
        return self.table[a, b]

    def mul(self, x: Mapping, y: Mapping) -> Vec:
        t = self.table
        return bilinear(lambda a, b: t[a, b], x, y) if x and y else SparseVector()

    def mul_many(self, *xs: Mapping) -> Vec:
        out = xs[0]
        for x in xs[1:]:
            out = self.mul(out, x)
        return out

    def elem(self, label) -> Vec:
        return SparseVector.basis(label)

    def unit(self) -> Vec | None:
        """The two-sided unit, or None if the algebra has none."""
        if self._unit is False:
            self._unit = find_local_unit(self, [self.elem(b) for b in self.basis]) if self.basis else SparseVector()
        return self._unit

    def is_unital(self) -> bool:
        return self.unit() is not None

    def left_mult_matrix(self, x: Mapping) -> dict:
        return {b: self.mul(x, self.elem(b)) for b in self.basis}

    def spanning_set(self) -> list[Vec]:
        return [self.elem(b) for b in self.basis]


class LazyAlgebra:
    """Algebra on an infinite enumerable basis, with products of finite support."""

    backend = "lazy"

    def __init__(self, product: Callable, contains: Callable, sampler: Callable, name: str = ""):
        self._product = product
        self._contains = contains
        self._sampler = sampler
        self.name = name
        self._cache: dict = {}

    def contains(self, label) -> bool:
        return self._contains(label)

    def mul_basis(self, a, b) -> Vec:
        key = (a, b)
        v = self._cache.get(key)
        if v is None:
            v = self._product(a, b)
            if not isinstance(v, SparseVector):
                v = SparseVector(v)
            self._cache[key] = v
        return v

    def mul(self, x: Mapping, y: Mapping) -> Vec:
        return bilinear(self.mul_basis, x, y)

    def elem(self, label) -> Vec:
        if not self._contains(label):
            raise AlgebraError(f"{label!r} is not a basis label")
        return SparseVector.basis(label)

    def sample(self, rng: random.Random, k: int) -> list:
        return self._sampler(rng, k)

    def unit(self):
        return None


# ---------------------------------------------------------------- checks


def check_associative(alg: Algebra, limit: int = 1) -> list[tuple]:
    """Basis triples where associativity fails (at most ``limit``)."""
    bad = []
    B = alg.basis
    for a in B:
        for b in B:
            ab = alg.table[a, b]
            for c in B:
                lhs = alg.mul(ab, {c: 1})
                rhs = alg.mul({a: 1}, alg.table[b, c])
                if lhs != rhs:
                    bad.append((a, b, c))
                    if len(bad) >= limit:
                        return bad
    return bad


def _stacked(alg: Algebra, side: str) -> SparseMatrix:
    # rows indexed by (b, k): coefficient of k in x·b (side 'left') or b·x
    rows: dict = {}
    for x in alg.basis:
        for b in alg.basis:
            v = alg.table[x, b] if side == "left" else alg.table[b, x]
            for k, c in v.items():
                rows.setdefault((b, k), {})[x] = c
    labels = sorted(rows, key=lambda t: (alg._index[t[0]], alg._index[t[1]]))
    return SparseMatrix([rows[r] for r in labels], alg.basis, labels)


def annihilators(alg: Algebra) -> tuple[list[Vec], list[Vec]]:
    """Bases of the left annihilator {x : xA = 0} and right annihilator {x : Ax = 0}."""
    return kernel_basis(_stacked(alg, "left")), kernel_basis(_stacked(alg, "right"))


def check_nondegenerate(alg, budget: int = 200, seed: int = 0) -> bool:
    if alg.backend == "lazy":
        # sampled: every sampled basis element is seen acting nontrivially
        rng = random.Random(seed)
        for a in alg.sample(rng, budget):
            partners = alg.sample(rng, 8) + [a]
            if not any(alg.mul_basis(a, b) for b in partners) or not any(alg.mul_basis(b, a) for b in partners):
                return False
        return True
    left, right = annihilators(alg)
    return not left and not right


def check_idempotent(alg: Algebra) -> bool:
    return span_rank(alg.table.values()) == alg.dim


def find_local_unit(alg: Algebra, elems: Sequence[Mapping]) -> Vec | None:
    """Some e with e·x = x = x·e for every listed x, or None when none exists."""
    elems = [x for x in elems if x]
    if not elems:
        return SparseVector()
    rows: dict = {}
    target: dict = {}
    for i, x in enumerate(elems):
        for b in alg.basis:
            for side, v in (("l", alg.mul({b: 1}, x)), ("r", alg.mul(x, {b: 1}))):
                for k, c in v.items():
                    rows.setdefault((side, i, k), {})[b] = c
        for side in ("l", "r"):
            for k, c in x.items():
                target[(side, i, k)] = c
                rows.setdefault((side, i, k), {})
    labels = list(rows)
    m = SparseMatrix([rows[r] for r in labels], alg.basis, labels)
    return solve_linear(m, target)


# ---------------------------------------------------------------- multipliers


@dataclass(frozen=True)
class Multiplier:
    """A multiplier as a pair of linear actions.

    ``left(x)`` is ``m·x`` and ``right(x)`` is ``x·m``.  ``element`` records
    the algebra element when the multiplier comes from one.
    """

    left: Callable[[Mapping], Vec]
    right: Callable[[Mapping], Vec]
    element: Vec | None = None
    label: str = ""

    def __call__(self, x: Mapping) -> Vec:
        return self.left(x)


def multiplier_from_element(alg, x: Mapping) -> Multiplier:
    x = x if isinstance(x, SparseVector) else SparseVector(x)
    return Multiplier(lambda y: alg.mul(x, y), lambda y: alg.mul(y, x), x)


def identity_multiplier() -> Multiplier:
    return Multiplier(lambda y: y if isinstance(y, SparseVector) else SparseVector(y),
                      lambda y: y if isinstance(y, SparseVector) else SparseVector(y),
                      label="1")


def multiplier_mul(m1: Multiplier, m2: Multiplier, alg=None) -> Multiplier:
    """Product ``m1 m2``: left actions compose, right actions compose in reverse."""
    elem = None
    if alg is not None and m1.element is not None and m2.element is not None:
        elem = alg.mul(m1.element, m2.element)
    return Multiplier(lambda y: m1.left(m2.left(y)), lambda y: m2.right(m1.right(y)), elem)


def multiplier_eq(m1: Multiplier, m2: Multiplier, witnesses: Iterable[Mapping]) -> bool:
    """Equal action on every witness from both sides."""
    return all(m1.left(w) == m2.left(w) and m1.right(w) == m2.right(w) for w in witnesses)


def check_multiplier(alg, m: Multiplier, witnesses: Sequence[Mapping]) -> list[tuple]:
    """Pairs of witnesses violating ``r(a)b = a l(b)`` and the module laws."""
    bad = []
    for a in witnesses:
        ra = m.right(a)
        for b in witnesses:
            if alg.mul(ra, b) != alg.mul(a, m.left(b)):
                bad.append(("compatibility", a, b))
            elif m.left(alg.mul(a, b)) != alg.mul(m.left(a), b):
                bad.append(("left-linearity", a, b))
            elif m.right(alg.mul(a, b)) != alg.mul(a, m.right(b)):
                bad.append(("right-linearity", a, b))
    return bad


# ---------------------------------------------------------------- constructions


class TensorAlgebra(Algebra):
    """Tensor product of finite algebras; basis labels are tuples."""

    def __init__(self, factors: Sequence[Algebra], name: str = ""):
        self.factors = tuple(factors)
        basis = [()]
        for f in self.factors:
            basis = [t + (b,) for t in basis for b in f.basis]
        super().__init__(basis, self._prod, name or "⊗".join(f.name for f in self.factors), check=False)

    def _prod(self, a: tuple, b: tuple) -> Vec:
        out = {(): Fraction(1)}
        for f, x, y in zip(self.factors, a, b):
            v = f.table[x, y]
            if not v:
                return SparseVector()
            out = {k + (l,): c * d for k, c in out.items() for l, d in v.items()}
        return SparseVector(out)


def tensor_algebra(*factors: Algebra) -> TensorAlgebra:
    return TensorAlgebra(factors)


def matrix_algebra(labels: Sequence, name: str = "") -> Algebra:
    """End(V) for V with the given basis; basis ``(i, j)`` is the matrix unit e_ij."""
    labels = tuple(labels)
    basis = [(i, j) for i in labels for j in labels]

    def prod(a, b):
        return {(a[0], b[1]): 1} if a[1] == b[0] else {}

    return Algebra(basis, prod, name or f"End({len(labels)})", check=False)


def operator_to_matrix(op: Callable[[Mapping], Vec], labels: Sequence) -> Vec:
    """Coordinates of a linear operator on span(labels) in End(V)."""
    out = {}
    for j in labels:
        for i, c in op(SparseVector.basis(j)).items():
            out[(i, j)] = c
    return SparseVector(out)


class SubAlgebra(Algebra):
    """Subalgebra spanned by vectors of a parent algebra, on fresh labels."""

    def __init__(self, parent: Algebra, span: Sequence[Mapping], prefix: str = "s", name: str = ""):
        self.parent = parent
        gens = span_basis(span, parent.basis)
        self.labels = tuple(f"{prefix}{i}" for i in range(len(gens)))
        self.vectors = dict(zip(self.labels, gens))
        self._solver = Solver(self.vectors)

        def prod(a, b):
            v = parent.mul(self.vectors[a], self.vectors[b])
            c = self._solver.express(v)
            if c is None:
                raise AlgebraError(f"span not closed under multiplication at {a}.{b}")
            return c

        super().__init__(self.labels, prod, name or f"sub({parent.name})", check=False)

    def embed(self, x: Mapping) -> Vec:
        return linear_combination((c, self.vectors[k]) for k, c in x.items())

    def coords(self, v: Mapping) -> Vec | None:
        return self._solver.express(v)


def subalgebra(parent: Algebra, span: Sequence[Mapping], prefix: str = "s", name: str = "") -> SubAlgebra:
    return SubAlgebra(parent, span, prefix, name)


# ---------------------------------------------------------------- file format

_TERM = re.compile(r"^([+-]?\s*(?:\d+(?:/\d+)?)?)\s*\*?\s*([A-Za-z_][\w]*)$")


def _parse_rhs(rhs: str, basis: set, line: int) -> dict:
    rhs = rhs.strip()
    if rhs in ("0", ""):
        return {}
    out: dict = {}
    for term in re.split(r"(?=[+-])", rhs.replace(" ", "")):
        if not term:
            continue
        m = _TERM.match(term)
        if not m:
            raise AlgebraError(f"line {line}: bad term {term!r}")
        coeff, lab = m.groups()
        coeff = coeff.replace(" ", "")
        c = Fraction(1) if coeff in ("", "+") else Fraction(-1) if coeff == "-" else Fraction(coeff)
        if lab not in basis:
            raise AlgebraError(f"line {line}: unknown basis label {lab!r}")
        out[lab] = out.get(lab, 0) + c
    return out


def parse_algebra(text: str, name: str = "", check: bool = True) -> Algebra:
    """Parse ``basis: e1 e2`` / ``mul: ei.ej = c*ek + ...``; omitted products are zero."""
    basis: list = []
    table: dict = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise AlgebraError(f"line {n}: expected 'key: value'")
        key, rest = (s.strip() for s in line.split(":", 1))
        if key == "basis":
            for t in rest.split():
                if t in basis:
                    raise AlgebraError(f"line {n}: duplicate basis label {t!r}")
                basis.append(t)
        elif key == "mul":
            m = re.match(r"^([\w]+)\s*\.\s*([\w]+)\s*=\s*(.*)$", rest)
            if not m:
                raise AlgebraError(f"line {n}: expected 'ei.ej = ...'")
            a, b, rhs = m.groups()
            bset = set(basis)
            if a not in bset or b not in bset:
                raise AlgebraError(f"line {n}: unknown basis label in {a}.{b}")
            if (a, b) in table:
                raise AlgebraError(f"line {n}: duplicate product {a}.{b}")
            table[a, b] = SparseVector(_parse_rhs(rhs, bset, n))
        else:
            raise AlgebraError(f"line {n}: unknown key {key!r}")
    if not basis:
        raise AlgebraError("missing basis line")
    return Algebra(basis, table, name, check=check)


def render_algebra(alg: Algebra) -> str:
    lines = ["basis: " + " ".join(map(str, alg.basis))]
    for a in alg.basis:
        for b in alg.basis:
            v = alg.table[a, b]
            if v:
                rhs = " + ".join(f"{c}*{k}" for k, c in v.items()).replace("+ -", "- ")
                lines.append(f"mul: {a}.{b} = {rhs}")
    return "\n".join(lines) + "\n"
