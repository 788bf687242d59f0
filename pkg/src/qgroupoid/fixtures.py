"""Named fixtures used by the CLI and the test-suite."""

from __future__ import annotations

import difflib
from dataclasses import dataclass
from typing import Callable

from .constructions import (
    adjoint_module_algebra,
    function_algebra,
    groupoid_algebra,
    lazy_groupoid_algebra,
    object_action,
    set_action_module_algebra,
    trivial_module_algebra,
)
from .groupoid import cyclic_group, disjoint_union, lazy_pair_groupoid, pair_groupoid, translation_action
from .smash import ModuleAlgebra
from .wmha import WmhaStructure

__all__ = ["Fixture", "FIXTURES", "ALIASES", "UnknownFixture", "get_fixture", "list_fixtures", "MUTATION_MATRIX"]


class UnknownFixture(KeyError):
    def __init__(self, name: str, suggestion: str | None):
        self.name, self.suggestion = name, suggestion
        hint = f"; did you mean {suggestion!r}?" if suggestion else ""
        super().__init__(f"unknown fixture {name!r}{hint}")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    kind: str  # "wmha", "module" or "lazy"
    build: Callable

    def structure(self) -> WmhaStructure:
        out = self.build()
        return out.A if isinstance(out, ModuleAlgebra) else out

    def module(self) -> ModuleAlgebra:
        out = self.build()
        if isinstance(out, ModuleAlgebra):
            return out
        return trivial_module_algebra(out)


def _cp2():
    return groupoid_algebra(pair_groupoid(2))


def _set_action():
    g = pair_groupoid(2)
    return set_action_module_algebra(groupoid_algebra(g), object_action(g))


def _translation():
    g = cyclic_group(2)
    return set_action_module_algebra(groupoid_algebra(g), translation_action(g))


_ENTRIES = [
    Fixture("CZ1", "group algebra of the trivial group", "wmha", lambda: groupoid_algebra(cyclic_group(1))),
    Fixture("CZ2", "group algebra of Z2 (a Hopf algebra)", "wmha", lambda: groupoid_algebra(cyclic_group(2))),
    Fixture("CZ3", "group algebra of Z3", "wmha", lambda: groupoid_algebra(cyclic_group(3))),
    Fixture("CP2", "groupoid algebra of the pair groupoid on 2 objects", "wmha", _cp2),
    Fixture("KP2", "function algebra of the pair groupoid on 2 objects", "wmha", lambda: function_algebra(pair_groupoid(2))),
    Fixture("KZ2", "function algebra of Z2", "wmha", lambda: function_algebra(cyclic_group(2))),
    Fixture("KZ3", "function algebra of Z3", "wmha", lambda: function_algebra(cyclic_group(3))),
    Fixture("CP2⊔CZ3", "groupoid algebra of the disjoint union of P2 and Z3", "wmha",
            lambda: groupoid_algebra(disjoint_union(pair_groupoid(2), cyclic_group(3)))),
    Fixture("P2-set-action", "K(X) for the pair groupoid P2 acting on its objects, over CP2", "module", _set_action),
    Fixture("trivial-action", "target algebra of CP2 with the trivial action", "module", lambda: trivial_module_algebra(_cp2())),
    Fixture("adjoint-action", "centralizer of the source algebra of CP2 with the adjoint action", "module",
            lambda: adjoint_module_algebra(_cp2())),
    Fixture("Z2-translation", "K(Z2) with Z2 acting by translation, over CZ2", "module", _translation),
    Fixture("lazy-pairN", "pair groupoid on the natural numbers (lazy, sampled checks)", "lazy",
            lambda: lazy_groupoid_algebra(lazy_pair_groupoid())),
]

FIXTURES: dict[str, Fixture] = {f.name: f for f in _ENTRIES}
ALIASES = {"CP2-disjoint-CZ3": "CP2⊔CZ3", "lazy-pair": "lazy-pairN", "K(X)": "P2-set-action"}


def get_fixture(name: str) -> Fixture:
    key = ALIASES.get(name, name)
    if key in FIXTURES:
        return FIXTURES[key]
    near = difflib.get_close_matches(name, list(FIXTURES) + list(ALIASES), n=1, cutoff=0.0)
    raise UnknownFixture(name, ALIASES.get(near[0], near[0]) if near else None)


def list_fixtures() -> list[dict]:
    return [{"name": f.name, "kind": f.kind, "description": f.description} for f in _ENTRIES]


# (axiom, fixture, field, key, value): a single-entry corruption of a passing
# fixture that the named axiom detects.  Every other axiom that also fails
# declares the corrupted field among the data it reads.
MUTATION_MATRIX: list[tuple] = [
    ("algebra-associative", "CP2", "product", ("λ[p1_2]", "λ[p1_2]"), {"λ[p1_1]": 1}),
    ("algebra-nondegenerate", "KP2", "product", ("δ[p1_1]", "δ[p1_1]"), {}),
    ("algebra-idempotent", "KP2", "product", ("δ[p1_1]", "δ[p1_1]"), {}),
    ("coproduct-compatibility", "CZ2", "T4", ("λ[g0]", "λ[g1]"), {("λ[g0]", "λ[g0]"): 1}),
    ("coproduct-homomorphism", "KP2", "T1", ("δ[p1_2]", "δ[p1_1]"), {("δ[p1_2]", "δ[p1_1]"): 2}),
    ("coassociativity", "KP2", "T2", ("δ[p1_1]", "δ[p2_1]"), {("δ[p1_1]", "δ[p2_1]"): 2}),
    ("counit", "CZ2", "T2", ("λ[g0]", "λ[g0]"), {("λ[g0]", "λ[g0]"): 2}),
    ("E-idempotent", "CP2", "E", ("λ[p1_2]", "λ[p1_2]"), 1),
    ("E-recomputed", "KP2", "E", ("δ[p1_2]", "δ[p1_2]"), 1),
    ("canonical-ranges", "CZ2", "T1", ("λ[g1]", "λ[g1]"), {("λ[g0]", "λ[g0]"): 1}),
    ("E-comultiplication", "KP2", "E", ("δ[p1_2]", "δ[p1_2]"), 1),
    ("E-absorbs-coproduct", "CZ2", "E", ("λ[g0]", "λ[g0]"), 0),
    ("canonical-kernels", "CZ2", "T1", ("λ[g1]", "λ[g1]"), {("λ[g0]", "λ[g0]"): 1}),
    ("antipode", "CZ2", "T3", ("λ[g0]", "λ[g0]"), {}),
    ("antipode-anti-multiplicative", "CZ2", "antipode", "λ[g0]", {}),
    ("antipode-bijective", "KP2", "antipode_inv", "δ[p1_1]", {"δ[p1_1]": -1}),
    ("source-target-maps", "CZ2", "counit", "λ[g0]", 0),
    ("base-algebras", "KP2", "counit", "δ[p1_1]", 0),
    ("E-formulas", "CZ2", "counit", "λ[g0]", 0),
    ("fullness", "CZ1", "T1", ("λ[g0]", "λ[g0]"), {}),
    ("regularity", "CZ2", "T4", ("λ[g0]", "λ[g1]"), {("λ[g0]", "λ[g0]"): 1}),
]
