"""Exact construction and verification of weak multiplier Hopf algebras built
from groupoids, their module algebras, smash products, integrals and duals."""

from __future__ import annotations

from .algebra import Algebra, AlgebraError, LazyAlgebra, Multiplier, SubAlgebra, parse_algebra, render_algebra
from .bismash import (
    bi_smash,
    check_hopf_reduction,
    check_smash_on_B,
    check_unital_reduction,
    commutation_picture,
    diamond_algebra,
    dual_action_on_smash,
    heisenberg_realization,
    twist_and_barmodule,
    verify_duality_theorem,
)
from .constructions import (
    adjoint_module_algebra,
    function_algebra,
    groupoid_algebra,
    groupoid_pairing,
    lazy_groupoid_algebra,
    object_action,
    set_action_module_algebra,
    trivial_module_algebra,
)
from .duality import DualityError, Pairing, check_faithful, check_pairing, dual_wmha, find_integrals, resolve_integral
from .fixtures import FIXTURES, get_fixture, list_fixtures
from .groupoid import (
    Groupoid,
    GroupoidAction,
    action_groupoid,
    cyclic_group,
    disjoint_union,
    lazy_pair_groupoid,
    pair_groupoid,
    parse,
    render,
    translation_action,
    validate,
)
from .linalg import SparseMatrix, SparseVector, kernel_basis, rank, solve_linear, span_equal
from .report import CheckResult, Report
from .smash import ModuleAlgebra, SmashProduct, check_module_algebra, check_smash, smash_product
from .wmha import AXIOMS, WmhaStructure, mutate, run_axiom_suite, run_lazy_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
