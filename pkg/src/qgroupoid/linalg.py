"""Exact linear algebra over the rationals on labelled bases.

Vectors are sparse maps from basis labels to :class:`fractions.Fraction`.
Labels are arbitrary hashable values (strings for algebra bases, tuples of
labels for tensor bases).  Every routine is exact; there is no tolerance
anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Label = Hashable
Scalar = Fraction

__all__ = [
    "Scalar",
    "SparseVector",
    "SparseMatrix",
    "LinearMap",
    "Solver",
    "RowReducer",
    "rank",
    "kernel_basis",
    "solve_linear",
    "span_equal",
    "span_basis",
    "in_span",
    "solve_matrix_equation",
    "label_key",
    "tensor",
    "map_legs",
]


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def label_key(label):
    """Total order on mixed labels (strings, ints, nested tuples)."""
    if isinstance(label, tuple):
        return ("t", tuple(label_key(x) for x in label))
    if isinstance(label, bool):
        return ("b", label)
    if isinstance(label, int):
        return ("i", label)
    if isinstance(label, Fraction):
        return ("q", label)
    return ("s", str(label))


class SparseVector(Mapping):
    """Finite linear combination of basis labels with no stored zeros."""

    __slots__ = ("_d", "_hash")

    def __init__(self, entries: Mapping | Iterable | None = None):
        d: dict = {}
        if entries:
            items = entries.items() if isinstance(entries, Mapping) else entries
            for k, v in items:
                v = as_scalar(v)
                if v:
                    nv = d.get(k, 0) + v
                    if nv:
                        d[k] = nv
                    else:
                        d.pop(k, None)
        self._d = d
        self._hash = None

    @classmethod
    def _wrap(cls, d: dict) -> "SparseVector":
        # d must already be free of zeros
        v = cls.__new__(cls)
        v._d = d
        v._hash = None
        return v

    @classmethod
    def basis(cls, label) -> "SparseVector":
        return cls._wrap({label: Fraction(1)})

    @classmethod
    def zero(cls) -> "SparseVector":
        return cls._wrap({})

    def __getitem__(self, k):
        return self._d[k]

    def get(self, k, default=Fraction(0)):
        return self._d.get(k, default)

    def __iter__(self) -> Iterator:
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __bool__(self) -> bool:
        return bool(self._d)

    def items(self):
        return self._d.items()

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseVector):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == SparseVector(other)._d
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if not other:
            return self
        if not self:
            return other
        d = dict(self._d)
        for k, v in other.items():
            nv = d.get(k, 0) + v
            if nv:
                d[k] = nv
            else:
                del d[k]
        return SparseVector._wrap(d)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-other)

    def __neg__(self) -> "SparseVector":
        return SparseVector._wrap({k: -v for k, v in self._d.items()})

    def scale(self, c) -> "SparseVector":
        c = as_scalar(c)
        if not c:
            return SparseVector._wrap({})
        if c == 1:
            return self
        return SparseVector._wrap({k: c * v for k, v in self._d.items()})

    def __mul__(self, c) -> "SparseVector":
        if isinstance(c, SparseVector):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def dot(self, other: Mapping) -> Fraction:
        if len(other) < len(self._d):
            return sum((v * self._d[k] for k, v in other.items() if k in self._d), Fraction(0))
        return sum((v * other[k] for k, v in self._d.items() if k in other), Fraction(0))

    def map_labels(self, fn: Callable) -> "SparseVector":
        return SparseVector((fn(k), v) for k, v in self._d.items())

    def sorted_items(self):
        return sorted(self._d.items(), key=lambda kv: label_key(kv[0]))

    def __repr__(self) -> str:
        if not self._d:
            return "0"
        parts = []
        for k, v in self.sorted_items():
            lab = "⊗".join(map(str, k)) if isinstance(k, tuple) else str(k)
            parts.append(lab if v == 1 else f"{v}*{lab}")
        return " + ".join(parts)


def linear_combination(terms: Iterable[tuple]) -> SparseVector:
    """Sum of ``coeff * vector`` pairs."""
    d: dict = {}
    for c, vec in terms:
        if not c:
            continue
        for k, v in vec.items():
            nv = d.get(k, 0) + c * v
            if nv:
                d[k] = nv
            else:
                del d[k]
    return SparseVector._wrap(d)


def tensor(*vectors: Mapping) -> SparseVector:
    """Tensor product of vectors; labels become tuples, one slot per factor."""
    out: dict = {(): Fraction(1)}
    for vec in vectors:
        nxt: dict = {}
        for k, c in out.items():
            for l, v in vec.items():
                nxt[k + (l,)] = c * v
        out = nxt
    return SparseVector._wrap({k: v for k, v in out.items() if v})


def map_legs(vec: Mapping, fn: Callable[[tuple], Mapping], start: int, width: int) -> SparseVector:
    """Apply a linear map to the tensor legs ``start:start+width`` of every term.

    ``fn`` takes the sub-tuple of labels and returns a vector whose labels are
    tuples (the replacement legs).
    """
    d: dict = {}
    cache: dict = {}
    for label, c in vec.items():
        sub = label[start:start + width]
        img = cache.get(sub)
        if img is None:
            img = fn(sub)
            cache[sub] = img
        head, tail = label[:start], label[start + width:]
        for k, v in img.items():
            key = head + k + tail
            nv = d.get(key, 0) + c * v
            if nv:
                d[key] = nv
            else:
                del d[key]
    return SparseVector._wrap(d)


class RowReducer:
    """Incremental reduced row echelon form.

    Rows are dicts.  Only labels found in ``order`` may become pivots; any
    other label (used for bookkeeping columns) is carried along passively.
    """

    def __init__(self, order: Sequence[Label] | None = None):
        self.index: dict | None = None if order is None else {c: i for i, c in enumerate(order)}
        self.pivots: dict = {}  # pivot label -> normalized row (dict)

    def _position(self, label):
        if isinstance(label, _Tag):
            return None
        if self.index is None:
            return label_key(label)
        return self.index.get(label)

    def reduce(self, row: Mapping) -> dict:
        r = dict(row)
        for p in [k for k in r if k in self.pivots]:
            c = r.get(p)
            if not c:
                continue
            for k, v in self.pivots[p].items():
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, row: Mapping) -> dict | None:
        """Insert a row; returns the residual when it is dependent, else None."""
        r = self.reduce(row)
        best = None
        best_pos = None
        for k in r:
            pos = self._position(k)
            if pos is None:
                continue
            if best_pos is None or pos < best_pos:
                best, best_pos = k, pos
        if best is None:
            return r
        inv = 1 / r[best]
        if inv != 1:
            r = {k: v * inv for k, v in r.items()}
        for prow in self.pivots.values():
            c = prow.get(best)
            if c:
                for k, v in r.items():
                    nv = prow.get(k, 0) - c * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.pivots[best] = r
        return None

    @property
    def rank(self) -> int:
        return len(self.pivots)


class SparseMatrix:
    """Matrix as a list of sparse rows over a declared column basis."""

    def __init__(self, rows: Sequence[Mapping], columns: Sequence[Label], row_labels: Sequence[Label] | None = None):
        self.columns = tuple(columns)
        self.rows = [r if isinstance(r, SparseVector) else SparseVector(r) for r in rows]
        self.row_labels = tuple(row_labels) if row_labels is not None else tuple(range(len(self.rows)))
        if len(self.row_labels) != len(self.rows):
            raise ValueError("row label count does not match row count")
        cols = set(self.columns)
        for r in self.rows:
            for k in r:
                if k not in cols:
                    raise ValueError(f"entry in undeclared column {k!r}")

    @classmethod
    def identity(cls, labels: Sequence[Label]) -> "SparseMatrix":
        return cls([SparseVector.basis(l) for l in labels], labels, labels)

    @classmethod
    def zeros(cls, nrows: int, columns: Sequence[Label]) -> "SparseMatrix":
        return cls([SparseVector() for _ in range(nrows)], columns)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def __matmul__(self, v: Mapping) -> SparseVector:
        return SparseVector({rl: row.dot(v) for rl, row in zip(self.row_labels, self.rows)})

    def rref(self) -> RowReducer:
        rr = RowReducer(self.columns)
        for r in self.rows:
            rr.add(r)
        return rr


def rank(m: SparseMatrix | Sequence[Mapping]) -> int:
    if isinstance(m, SparseMatrix):
        return m.rref().rank
    rr = RowReducer()
    for r in m:
        rr.add(r)
    return rr.rank


def kernel_basis(m: SparseMatrix) -> list[SparseVector]:
    """Exact basis of ``{v : m v = 0}``, indexed by the column labels."""
    rr = m.rref()
    out = []
    for f in m.columns:
        if f in rr.pivots:
            continue
        d = {f: Fraction(1)}
        for p, row in rr.pivots.items():
            c = row.get(f)
            if c:
                d[p] = -c
        out.append(SparseVector(d))
    return out


@dataclass(frozen=True)
class _Tag:
    """Bookkeeping column that may never become a pivot."""

    kind: str
    key: object

    def __getitem__(self, i):
        return (self.kind, self.key)[i]


def _tag(kind: str, key: object = None) -> _Tag:
    return _Tag(kind, key)


_AUG = _tag("aug")


def solve_linear(m: SparseMatrix, target: Mapping) -> SparseVector | None:
    """One exact solution of ``m v = target`` (target indexed by row labels), or None."""
    pos = {rl: i for i, rl in enumerate(m.row_labels)}
    for k in target:
        if k not in pos:
            raise ValueError(f"target has entry outside the row basis: {k!r}")
    rr = RowReducer(m.columns)
    for rl, row in zip(m.row_labels, m.rows):
        aug = dict(row.items())
        t = target.get(rl, 0)
        if t:
            aug[_AUG] = Fraction(t)
        residual = rr.add(aug)
        if residual is not None and residual.get(_AUG):
            return None
    return SparseVector({p: row.get(_AUG, 0) for p, row in rr.pivots.items()})


def span_basis(vectors: Iterable[Mapping], order: Sequence[Label] | None = None) -> list[SparseVector]:
    """Reduced echelon basis of the span."""
    rr = RowReducer(order)
    for v in vectors:
        rr.add(v)
    return [SparseVector(r) for r in rr.pivots.values()]


def span_rank(vectors: Iterable[Mapping]) -> int:
    rr = RowReducer()
    for v in vectors:
        rr.add(v)
    return rr.rank


def span_equal(u: Sequence[Mapping], v: Sequence[Mapping]) -> bool:
    """True iff the two lists span the same subspace."""
    ru, rv = span_rank(u), span_rank(v)
    return ru == rv == span_rank(list(u) + list(v))


def in_span(vectors: Iterable[Mapping], x: Mapping) -> bool:
    rr = RowReducer()
    for v in vectors:
        rr.add(v)
    return not rr.reduce(x)


class Solver:
    """Express vectors as combinations of a fixed list of columns.

    ``express(y)`` returns coefficients ``c`` (keyed by column key) with
    ``sum c_k columns[k] == y`` or ``None`` if ``y`` is outside the span.
    """

    def __init__(self, columns: Mapping | Sequence[Mapping]):
        if not isinstance(columns, Mapping):
            columns = dict(enumerate(columns))
        self.keys = list(columns)
        self.rr = RowReducer()
        self.relations: list[SparseVector] = []
        for key in self.keys:
            row = dict(columns[key].items())
            row[_tag("col", key)] = Fraction(1)
            residual = self.rr.add(row)
            if residual is not None:
                self.relations.append(
                    SparseVector({k[1]: -v for k, v in residual.items() if isinstance(k, _Tag)})
                )

    @property
    def rank(self) -> int:
        return self.rr.rank

    def express(self, y: Mapping) -> SparseVector | None:
        acc: dict = {}
        rest = dict(y.items())
        for p, row in self.rr.pivots.items():
            c = rest.get(p)
            if not c:
                continue
            for k, v in row.items():
                if isinstance(k, _Tag):
                    acc[k[1]] = acc.get(k[1], 0) + c * v
                else:
                    nv = rest.get(k, 0) - c * v
                    if nv:
                        rest[k] = nv
                    else:
                        rest.pop(k, None)
        if rest:
            return None
        return SparseVector(acc)


class LinearMap:
    """Linear map given by the images of domain basis vectors."""

    def __init__(self, domain: Sequence[Label], images: Mapping | Callable, codomain: Sequence[Label] | None = None):
        self.domain = tuple(domain)
        if callable(images) and not isinstance(images, Mapping):
            images = {d: images(d) for d in self.domain}
        self.images = {d: (images[d] if isinstance(images[d], SparseVector) else SparseVector(images[d])) for d in self.domain}
        self.codomain = tuple(codomain) if codomain is not None else None

    def __call__(self, v: Mapping) -> SparseVector:
        return linear_combination((c, self.images[k]) for k, c in v.items())

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self ∘ other``."""
        return LinearMap(other.domain, {d: self(other.images[d]) for d in other.domain}, self.codomain)

    __matmul__ = compose

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.domain, {d: self.images[d] - other.images[d] for d in self.domain}, self.codomain)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.domain, {d: self.images[d] + other.images[d] for d in self.domain}, self.codomain)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.domain == other.domain and self.images == other.images

    @classmethod
    def identity(cls, labels: Sequence[Label]) -> "LinearMap":
        return cls(labels, {l: SparseVector.basis(l) for l in labels}, labels)

    def _codomain_labels(self) -> tuple:
        if self.codomain is not None:
            return self.codomain
        seen: dict = {}
        for img in self.images.values():
            for k in img:
                seen[k] = None
        return tuple(sorted(seen, key=label_key))

    def matrix(self) -> SparseMatrix:
        rows_lab = self._codomain_labels()
        rows: dict = {r: {} for r in rows_lab}
        for d, img in self.images.items():
            for k, v in img.items():
                rows[k][d] = v
        return SparseMatrix([rows[r] for r in rows_lab], self.domain, rows_lab)

    def image_basis(self) -> list[SparseVector]:
        return span_basis(self.images.values(), self.codomain)

    def rank(self) -> int:
        return span_rank(self.images.values())

    def kernel_basis(self) -> list[SparseVector]:
        return kernel_basis(self.matrix())

    def is_idempotent(self) -> bool:
        return all(self(img) == img for img in self.images.values())


def solve_matrix_equation(xs: Sequence[Mapping], ys: Sequence[Mapping], domain: Sequence[Label]):
    """Find G with ``G(xs[j]) == ys[j]`` for all j.

    Returns ``(G, consistent, determined)``.  ``G`` is a :class:`LinearMap`
    on ``domain``; when the x's do not span the domain it is extended by zero
    on the free directions and ``determined`` is False.
    """
    rr = RowReducer(domain)
    consistent = True
    for x, y in zip(xs, ys):
        row = dict(x.items())
        for k, v in y.items():
            row[_tag("y", k)] = v
        residual = rr.add(row)
        if residual is not None and residual:
            consistent = False
    determined = all(d in rr.pivots for d in domain)
    images = {}
    for d in domain:
        row = rr.pivots.get(d)
        if row is None:
            images[d] = SparseVector()
            continue
        images[d] = SparseVector({k[1]: v for k, v in row.items() if isinstance(k, _Tag)})
    return LinearMap(domain, images, None), consistent, determined
