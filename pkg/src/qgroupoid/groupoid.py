"""Finite and lazily presented groupoids, groupoid actions on sets, and file I/O.

Composition convention: ``compose(p, q)`` is "p after q" and is defined
exactly when ``source(p) == target(q)``.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Groupoid",
    "LazyGroupoid",
    "GroupoidAction",
    "Violation",
    "GroupoidParseError",
    "parse",
    "render",
    "parse_action",
    "render_action",
    "validate",
    "validate_action",
    "is_isomorphic",
    "pair_groupoid",
    "cyclic_group",
    "trivial_group",
    "disjoint_union",
    "action_groupoid",
    "translation_action",
    "lazy_pair_groupoid",
]


class GroupoidParseError(ValueError):
    """Raised for syntax or semantic errors in groupoid and action files."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.rule}: {', '.join(map(str, self.witness))}"


@dataclass(frozen=True)
class Groupoid:
    """A finite groupoid given by explicit tables.

    ``table`` maps composable pairs ``(p, q)`` to ``p∘q``.  Tables produced by
    the lenient parser may be defective; :func:`validate` reports defects.
    """

    objects: tuple
    morphisms: tuple
    src: Mapping
    tgt: Mapping
    table: Mapping
    inv: Mapping
    ident: Mapping
    name: str = ""

    def source(self, p):
        return self.src[p]

    def target(self, p):
        return self.tgt[p]

    def composable(self, p, q) -> bool:
        return self.src[p] == self.tgt[q]

    def compose(self, p, q):
        """``p ∘ q`` or None when the pair is not composable."""
        if self.src[p] != self.tgt[q]:
            return None
        return self.table.get((p, q))

    def inverse(self, p):
        return self.inv[p]

    def identity(self, obj):
        return self.ident[obj]

    @property
    def units(self) -> tuple:
        return tuple(self.ident[o] for o in self.objects)

    def is_unit(self, p) -> bool:
        return self.ident.get(self.src[p]) == p

    def contains(self, p) -> bool:
        return p in self.src

    def __len__(self) -> int:
        return len(self.morphisms)

    def factorizations(self, p) -> list[tuple]:
        """All composable pairs ``(u, v)`` with ``u ∘ v == p``."""
        out = []
        for v in self.morphisms:
            if self.src[v] != self.src[p]:
                continue
            for u in self.morphisms:
                if self.compose(u, v) == p:
                    out.append((u, v))
        return out


class LazyGroupoid:
    """A groupoid whose morphisms are produced on demand.

    Subclasses implement the per-morphism maps; ``sample`` draws a finite
    sub-collection of morphisms from a truncation.
    """

    name = "lazy"

    def source(self, p):
        raise NotImplementedError

    def target(self, p):
        raise NotImplementedError

    def compose(self, p, q):
        raise NotImplementedError

    def inverse(self, p):
        raise NotImplementedError

    def identity(self, obj):
        raise NotImplementedError

    def contains(self, p) -> bool:
        raise NotImplementedError

    def composable(self, p, q) -> bool:
        return self.source(p) == self.target(q)

    def is_unit(self, p) -> bool:
        return self.identity(self.source(p)) == p

    def objects_upto(self, n: int) -> list:
        raise NotImplementedError

    def morphisms_between(self, objs: Iterable) -> Iterator:
        raise NotImplementedError

    def truncation(self, n: int) -> Groupoid:
        """The full subgroupoid on the first ``n`` objects, as a finite groupoid."""
        objs = self.objects_upto(n)
        morphs = tuple(self.morphisms_between(objs))
        src = {m: self.source(m) for m in morphs}
        tgt = {m: self.target(m) for m in morphs}
        table = {(p, q): self.compose(p, q) for p in morphs for q in morphs if src[p] == tgt[q]}
        inv = {m: self.inverse(m) for m in morphs}
        ident = {o: self.identity(o) for o in objs}
        return Groupoid(tuple(objs), morphs, src, tgt, table, inv, ident, f"{self.name}[{n}]")

    def sample(self, rng: random.Random, n_objects: int, k: int) -> list:
        raise NotImplementedError


class _LazyPair(LazyGroupoid):
    """Pair groupoid on the positive integers; ``(i, j)`` is a morphism i → j."""

    name = "pair(N)"

    def source(self, p):
        return p[0]

    def target(self, p):
        return p[1]

    def compose(self, p, q):
        if q[1] != p[0]:
            return None
        return (q[0], p[1])

    def inverse(self, p):
        return (p[1], p[0])

    def identity(self, obj):
        return (obj, obj)

    def contains(self, p) -> bool:
        return (
            isinstance(p, tuple) and len(p) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in p)
        )

    def objects_upto(self, n: int) -> list:
        return list(range(1, n + 1))

    def morphisms_between(self, objs):
        objs = list(objs)
        for i in objs:
            for j in objs:
                yield (i, j)

    def sample(self, rng: random.Random, n_objects: int, k: int) -> list:
        return [(rng.randint(1, n_objects), rng.randint(1, n_objects)) for _ in range(k)]


def lazy_pair_groupoid() -> LazyGroupoid:
    return _LazyPair()


# ---------------------------------------------------------------- validation


def validate(g: Groupoid) -> list[Violation]:
    """Every violated groupoid axiom, each with a witness.  Empty iff valid."""
    out: list[Violation] = []
    morphs = list(g.morphisms)
    objs = set(g.objects)
    mset = set(morphs)
    for m in morphs:
        if g.src.get(m) not in objs or g.tgt.get(m) not in objs:
            out.append(Violation("morphism with unknown endpoint", (m,)))
    if out:
        return out
    for o in g.objects:
        e = g.ident.get(o)
        if e is None:
            out.append(Violation("object without identity", (o,)))
        elif e not in mset or g.src[e] != o or g.tgt[e] != o:
            out.append(Violation("identity is not a loop at its object", (o, e)))
    for (p, q), r in g.table.items():
        if p not in mset or q not in mset or r not in mset:
            out.append(Violation("composition mentions unknown morphism", (p, q, r)))
        elif g.src[p] != g.tgt[q]:
            out.append(Violation("composition of non-composable pair", (p, q, r)))
        elif g.src[r] != g.src[q] or g.tgt[r] != g.tgt[p]:
            out.append(Violation("composite has wrong endpoints", (p, q, r)))
    for p in morphs:
        for q in morphs:
            if g.src[p] == g.tgt[q] and (p, q) not in g.table:
                out.append(Violation("undefined composable pair", (p, q)))
    if out:
        return out
    for p in morphs:
        for q in morphs:
            pq = g.compose(p, q)
            if pq is None:
                continue
            for r in morphs:
                qr = g.compose(q, r)
                if qr is None:
                    continue
                lhs, rhs = g.compose(pq, r), g.compose(p, qr)
                if lhs != rhs:
                    out.append(Violation("associativity", (p, q, r)))
    for p in morphs:
        es, et = g.ident.get(g.src[p]), g.ident.get(g.tgt[p])
        if es is not None and g.compose(p, es) != p:
            out.append(Violation("right unit law", (p, es)))
        if et is not None and g.compose(et, p) != p:
            out.append(Violation("left unit law", (et, p)))
        pi = g.inv.get(p)
        if pi is None or pi not in mset:
            out.append(Violation("missing inverse", (p,)))
            continue
        if g.compose(p, pi) != et or g.compose(pi, p) != es:
            out.append(Violation("inverse law", (p, pi)))
    return out


# ---------------------------------------------------------------- generators


def _from_rule(name, objects, morphisms, src, tgt, comp: Callable, inv, ident) -> Groupoid:
    table = {}
    for p in morphisms:
        for q in morphisms:
            if src[p] == tgt[q]:
                table[(p, q)] = comp(p, q)
    return Groupoid(tuple(objects), tuple(morphisms), dict(src), dict(tgt), table, dict(inv), dict(ident), name)


def pair_groupoid(n: int) -> Groupoid:
    """Pair groupoid on objects "1".."n"; ``p{i}_{j}`` is the morphism i → j."""
    if n < 1:
        raise ValueError("pair_groupoid needs n >= 1")
    objs = [str(i) for i in range(1, n + 1)]
    lab = {(i, j): f"p{i}_{j}" for i in objs for j in objs}
    src = {m: i for (i, j), m in lab.items()}
    tgt = {m: j for (i, j), m in lab.items()}
    morphs = [lab[i, j] for i in objs for j in objs]

    def comp(p, q):
        return lab[src[q], tgt[p]]

    inv = {m: lab[tgt[m], src[m]] for m in morphs}
    ident = {o: lab[o, o] for o in objs}
    return _from_rule(f"pair({n})", objs, morphs, src, tgt, comp, inv, ident)


def cyclic_group(n: int) -> Groupoid:
    """Cyclic group of order n on the single object ``*``; morphisms g0..g{n-1}."""
    if n < 1:
        raise ValueError("cyclic_group needs n >= 1")
    morphs = [f"g{k}" for k in range(n)]
    idx = {m: k for k, m in enumerate(morphs)}
    src = {m: "*" for m in morphs}
    return _from_rule(
        f"Z{n}", ["*"], morphs, src, src,
        lambda p, q: morphs[(idx[p] + idx[q]) % n],
        {m: morphs[(-idx[m]) % n] for m in morphs},
        {"*": "g0"},
    )


def trivial_group() -> Groupoid:
    return cyclic_group(1)


def disjoint_union(g1: Groupoid, g2: Groupoid) -> Groupoid:
    """Disjoint union; colliding labels are prefixed with ``L_`` / ``R_``."""
    clash_o = set(g1.objects) & set(g2.objects)
    clash_m = set(g1.morphisms) & set(g2.morphisms)

    def ren(prefix, clash):
        return lambda x: f"{prefix}{x}" if x in clash else x

    lo, ro = ren("L_", clash_o), ren("R_", clash_o)
    lm, rm = ren("L_", clash_m), ren("R_", clash_m)
    objs = [lo(o) for o in g1.objects] + [ro(o) for o in g2.objects]
    morphs = [lm(m) for m in g1.morphisms] + [rm(m) for m in g2.morphisms]
    src, tgt, table, inv, ident = {}, {}, {}, {}, {}
    for g, fo, fm in ((g1, lo, lm), (g2, ro, rm)):
        for m in g.morphisms:
            src[fm(m)] = fo(g.src[m])
            tgt[fm(m)] = fo(g.tgt[m])
            inv[fm(m)] = fm(g.inv[m])
        for (p, q), r in g.table.items():
            table[fm(p), fm(q)] = fm(r)
        for o, e in g.ident.items():
            ident[fo(o)] = fm(e)
    name = f"{g1.name}+{g2.name}" if g1.name and g2.name else ""
    return Groupoid(tuple(objs), tuple(morphs), src, tgt, table, inv, ident, name)


def action_groupoid(group: Groupoid, points: Sequence, act: Callable | Mapping) -> Groupoid:
    """Action groupoid of a group acting on a finite set.

    ``act(g, x)`` (or ``act[g, x]``) is the image of x under g.  The morphism
    ``"g@x"`` goes from x to g·x.
    """
    if len(group.objects) != 1:
        raise ValueError("action_groupoid needs a one-object groupoid")
    f = act if callable(act) else (lambda g, x: act[g, x])
    pts = [str(x) for x in points]
    orig = {str(x): x for x in points}
    morphs, src, tgt, key = [], {}, {}, {}
    for g in group.morphisms:
        for x in pts:
            m = f"{g}@{x}"
            morphs.append(m)
            src[m] = x
            tgt[m] = str(f(g, orig[x]))
            key[m] = (g, x)
    for m, y in tgt.items():
        if y not in orig:
            raise ValueError(f"action maps outside the point set: {m} -> {y}")

    def comp(p, q):
        h, _ = key[p]
        g, x = key[q]
        return f"{group.compose(h, g)}@{x}"

    inv = {m: f"{group.inverse(key[m][0])}@{tgt[m]}" for m in morphs}
    e = group.identity(group.objects[0])
    ident = {x: f"{e}@{x}" for x in pts}
    return _from_rule(f"{group.name}⋉{len(pts)}", pts, morphs, src, tgt, comp, inv, ident)


# ---------------------------------------------------------------- file format

_MORPH_RE = re.compile(r"^([^\s:=.]+):([^\s:>-]+)->([^\s:>-]+)$")
_COMP_RE = re.compile(r"^([^\s.=]+)\.([^\s.=]+)=([^\s.=]+)$")
_PAIR_RE = re.compile(r"^([^\s=]+)=([^\s=]+)$")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise GroupoidParseError(f"expected 'key: values', got {raw.strip()!r}", n)
        key, rest = line.split(":", 1)
        yield n, key.strip(), rest.strip()


def _compact(rest: str) -> list[str]:
    # allow "p . q = r" style spacing by gluing tokens around '.', '=', '->'
    rest = re.sub(r"\s*([.=])\s*", r"\1", rest)
    rest = re.sub(r"\s*->\s*", "->", rest)
    rest = re.sub(r"\s*:\s*", ":", rest)
    return rest.split()


def parse(text: str, strict: bool = True) -> Groupoid:
    """Parse the line-oriented groupoid format.

    With ``strict`` (default) the result is guaranteed valid; otherwise a
    possibly defective groupoid is returned for :func:`validate` to inspect.
    """
    objects: list = []
    morphs: list = []
    src: dict = {}
    tgt: dict = {}
    table: dict = {}
    inv: dict = {}
    explicit_ident: dict = {}
    seen = set()
    pending_comp: list = []
    pending_inv: list = []
    pending_id: list = []
    for n, key, rest in _lines(text):
        if key in seen:
            raise GroupoidParseError(f"duplicate section {key!r}", n)
        seen.add(key)
        toks = _compact(rest)
        if key == "objects":
            for t in toks:
                if t in objects:
                    raise GroupoidParseError(f"duplicate object {t!r}", n)
                objects.append(t)
        elif key == "morphisms":
            for t in toks:
                m = _MORPH_RE.match(t)
                if not m:
                    raise GroupoidParseError(f"bad morphism {t!r}; expected name:src->tgt", n)
                name, s, d = m.groups()
                if name in src:
                    raise GroupoidParseError(f"duplicate morphism {name!r}", n)
                morphs.append(name)
                src[name], tgt[name] = s, d
        elif key == "compose":
            for t in toks:
                m = _COMP_RE.match(t)
                if not m:
                    raise GroupoidParseError(f"bad composition {t!r}; expected p.q=r", n)
                pending_comp.append((n, m.groups()))
        elif key == "inverses":
            for t in toks:
                m = _PAIR_RE.match(t)
                if not m:
                    raise GroupoidParseError(f"bad inverse entry {t!r}; expected p=q", n)
                pending_inv.append((n, m.groups()))
        elif key == "identities":
            for t in toks:
                m = _PAIR_RE.match(t)
                if not m:
                    raise GroupoidParseError(f"bad identity entry {t!r}; expected obj=morphism", n)
                pending_id.append((n, m.groups()))
        else:
            raise GroupoidParseError(f"unknown section {key!r}", n)
    for required in ("objects", "morphisms"):
        if required not in seen:
            raise GroupoidParseError(f"missing section {required!r}")
    oset = set(objects)
    for name in morphs:
        for o in (src[name], tgt[name]):
            if o not in oset:
                raise GroupoidParseError(f"morphism {name!r} uses unknown object {o!r}")
    for n, (p, q, r) in pending_comp:
        for lab in (p, q, r):
            if lab not in src:
                raise GroupoidParseError(f"unknown morphism {lab!r}", n)
        if strict and src[p] != tgt[q]:
            raise GroupoidParseError(f"{p}.{q}={r}: source({p}) != target({q})", n)
        if (p, q) in table and table[p, q] != r:
            raise GroupoidParseError(f"conflicting compositions for {p}.{q}", n)
        table[p, q] = r
    for n, (o, e) in pending_id:
        if o not in oset or e not in src:
            raise GroupoidParseError(f"unknown label in identity {o}={e}", n)
        explicit_ident[o] = e
    ident = dict(explicit_ident)
    for o in objects:
        if o in ident:
            continue
        loops = [m for m in morphs if src[m] == o and tgt[m] == o]
        neutral = [e for e in loops if table.get((e, e), e) == e and all(
            table.get((p, e), p) == p for p in morphs if src[p] == o
        ) and all(table.get((e, p), p) == p for p in morphs if tgt[p] == o)]
        named = [e for e in neutral if e.startswith("id")]
        choice = named or neutral
        if len(choice) == 1 or (choice and len(loops) == 1):
            ident[o] = choice[0]
        elif strict:
            raise GroupoidParseError(f"cannot infer the identity of object {o!r}")
    for p in morphs:
        es, et = ident.get(src[p]), ident.get(tgt[p])
        if es is not None:
            table.setdefault((p, es), p)
        if et is not None:
            table.setdefault((et, p), p)
    for n, (p, q) in pending_inv:
        for lab in (p, q):
            if lab not in src:
                raise GroupoidParseError(f"unknown morphism {lab!r} in inverses", n)
        for a, b in ((p, q), (q, p)):
            if a in inv and inv[a] != b:
                raise GroupoidParseError(f"conflicting inverses for {a!r}", n)
            inv[a] = b
    for e in ident.values():
        inv.setdefault(e, e)
    for p in morphs:
        if p in inv:
            continue
        es, et = ident.get(src[p]), ident.get(tgt[p])
        cands = [q for q in morphs if table.get((p, q)) == et and table.get((q, p)) == es]
        if len(cands) == 1:
            inv[p] = cands[0]
    g = Groupoid(tuple(objects), tuple(morphs), src, tgt, table, inv, ident)
    if strict:
        problems = validate(g)
        if problems:
            raise GroupoidParseError("not a groupoid: " + "; ".join(map(str, problems[:5])))
    return g


def render(g: Groupoid) -> str:
    """Serialize in the groupoid file format (parseable by :func:`parse`)."""
    lines = [
        "objects: " + " ".join(map(str, g.objects)),
        "morphisms: " + " ".join(f"{m}:{g.src[m]}->{g.tgt[m]}" for m in g.morphisms),
        "identities: " + " ".join(f"{o}={g.ident[o]}" for o in g.objects if o in g.ident),
        "compose: " + " ".join(
            f"{p}.{q}={g.table[p, q]}" for p in g.morphisms for q in g.morphisms if (p, q) in g.table
        ),
    ]
    done = set()
    pairs = []
    for m in g.morphisms:
        i = g.inv.get(m)
        if i is None or m in done or g.is_unit(m):
            continue
        done.update((m, i))
        pairs.append(f"{m}={i}")
    if pairs:
        lines.append("inverses: " + " ".join(pairs))
    return "\n".join(lines) + "\n"


def is_isomorphic(g: Groupoid, h: Groupoid) -> bool:
    """Brute-force isomorphism test by backtracking over morphism bijections."""
    if len(g.objects) != len(h.objects) or len(g.morphisms) != len(h.morphisms):
        return False

    def hom_profile(x):
        sizes = {}
        for m in x.morphisms:
            sizes[(x.src[m], x.tgt[m])] = sizes.get((x.src[m], x.tgt[m]), 0) + 1
        return sizes

    gp, hp = hom_profile(g), hom_profile(h)
    for perm in itertools.permutations(h.objects):
        omap = dict(zip(g.objects, perm))
        if any(hp.get((omap[s], omap[t]), 0) != c for (s, t), c in gp.items()):
            continue
        if _match_morphisms(g, h, omap):
            return True
    return False


def _match_morphisms(g: Groupoid, h: Groupoid, omap: dict) -> bool:
    order = list(g.morphisms)
    mmap: dict = {}
    used: set = set()

    def consistent(m) -> bool:
        for n in mmap:
            for a, b in ((m, n), (n, m)):
                c = g.compose(a, b)
                if c is not None and c in mmap and h.compose(mmap[a], mmap[b]) != mmap[c]:
                    return False
        return True

    def go(i: int) -> bool:
        if i == len(order):
            return all(h.compose(mmap[p], mmap[q]) == mmap[r] for (p, q), r in g.table.items())
        m = order[i]
        s, t = omap[g.src[m]], omap[g.tgt[m]]
        for cand in h.morphisms:
            if cand in used or h.src[cand] != s or h.tgt[cand] != t:
                continue
            mmap[m] = cand
            used.add(cand)
            if consistent(m) and go(i + 1):
                return True
            del mmap[m]
            used.discard(cand)
        return False

    return go(0)


# ---------------------------------------------------------------- actions


@dataclass(frozen=True)
class GroupoidAction:
    """Partial action of a groupoid on a finite set.

    ``domain[p]`` is ``X_p`` and ``maps[p]`` the injection ``α_p : X_p → X``.
    """

    base: Groupoid
    points: tuple
    domain: Mapping
    maps: Mapping

    def alpha(self, p, x):
        return self.maps[p].get(x)


def validate_action(a: GroupoidAction) -> list[Violation]:
    g = a.base
    pts = set(a.points)
    out: list[Violation] = []
    for p in g.morphisms:
        dom = set(a.domain.get(p, ()))
        mp = dict(a.maps.get(p, {}))
        if not dom <= pts:
            out.append(Violation("domain outside the point set", (p,)))
        if set(mp) != dom:
            out.append(Violation("map not defined exactly on its domain", (p,)))
        if any(v not in pts for v in mp.values()):
            out.append(Violation("map leaves the point set", (p,)))
        if len(set(mp.values())) != len(mp):
            out.append(Violation("map not injective", (p,)))
    if out:
        return out
    for p in g.morphisms:
        for q in g.morphisms:
            pq = g.compose(p, q)
            if pq is None:
                continue
            for x in sorted(a.domain[q], key=str):
                if x not in a.domain[pq]:
                    out.append(Violation("X_q not contained in X_pq", (p, q, x)))
                y = a.maps[q][x]
                if y not in a.domain[p]:
                    out.append(Violation("alpha_q(X_q) not contained in X_p", (p, q, x)))
                elif x in a.domain[pq] and a.maps[p][y] != a.maps[pq][x]:
                    out.append(Violation("alpha_p alpha_q != alpha_pq", (p, q, x)))
    for e in g.units:
        for x in sorted(a.domain[e], key=str):
            if a.maps[e][x] != x:
                out.append(Violation("unit does not act as identity", (e, x)))
    for p in g.morphisms:
        for q in g.morphisms:
            for s in sorted(a.domain[p], key=str):
                if a.maps[p][s] in a.domain[q] and not g.composable(q, p):
                    out.append(Violation("trueness", (p, q, s)))
    covered = set()
    for e in g.units:
        covered |= set(a.domain[e])
    for x in sorted(pts - covered, key=str):
        out.append(Violation("point not in any unit domain", (x,)))
    return out


def translation_action(group: Groupoid) -> GroupoidAction:
    """A one-object groupoid acting on its own morphisms by left translation."""
    pts = tuple(group.morphisms)
    dom = {g: frozenset(pts) for g in group.morphisms}
    maps = {g: {x: group.compose(g, x) for x in pts} for g in group.morphisms}
    return GroupoidAction(group, pts, dom, maps)


_DOM_RE = re.compile(r"^([^\s=]+)=\{([^}]*)\}$")
_MAP_RE = re.compile(r"^([^\s:]+):([^\s>-]+)->([^\s>-]+)$")


def parse_action(text: str, base: Groupoid) -> GroupoidAction:
    points: list = []
    domain: dict = {}
    maps: dict = {}
    for n, key, rest in _lines(text):
        if key == "points":
            points.extend(rest.split())
        elif key == "domain":
            body = re.sub(r"\s*([={},])\s*", r"\1", rest)
            for t in re.findall(r"[^\s=]+=\{[^}]*\}", body):
                m = _DOM_RE.match(t)
                p, inner = m.groups()
                if p not in base.src:
                    raise GroupoidParseError(f"unknown morphism {p!r}", n)
                domain[p] = frozenset(x for x in inner.split(",") if x)
        elif key == "map":
            for t in _compact(rest):
                m = _MAP_RE.match(t)
                if not m:
                    raise GroupoidParseError(f"bad map entry {t!r}; expected p:x->y", n)
                p, x, y = m.groups()
                if p not in base.src:
                    raise GroupoidParseError(f"unknown morphism {p!r}", n)
                maps.setdefault(p, {})[x] = y
        else:
            raise GroupoidParseError(f"unknown section {key!r}", n)
    pset = set(points)
    for p, dom in domain.items():
        for x in dom:
            if x not in pset:
                raise GroupoidParseError(f"unknown point {x!r} in domain of {p!r}")
    for e in base.units:
        # unit maps default to the identity on their domain
        if e in domain and e not in maps:
            maps[e] = {x: x for x in domain[e]}
    for p in base.morphisms:
        domain.setdefault(p, frozenset())
        maps.setdefault(p, {})
    return GroupoidAction(base, tuple(points), domain, maps)


def render_action(a: GroupoidAction) -> str:
    dom = " ".join(
        f"{p}={{{','.join(sorted(a.domain[p], key=str))}}}" for p in a.base.morphisms
    )
    mp = " ".join(
        f"{p}:{x}->{a.maps[p][x]}" for p in a.base.morphisms for x in sorted(a.maps[p], key=str)
    )
    return f"points: {' '.join(a.points)}\ndomain: {dom}\nmap: {mp}\n"
