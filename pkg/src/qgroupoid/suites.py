"""Report bundles behind the CLI verbs."""

from __future__ import annotations

from .algebra import Algebra, annihilators, check_associative, check_idempotent
from .bismash import (
    check_hopf_reduction,
    check_smash_on_B,
    check_unital_reduction,
    commutation_picture,
    heisenberg_realization,
    verify_duality_theorem,
)
from .constructions import function_algebra
from .duality import (
    bidual_map,
    check_faithful,
    check_pairing,
    check_wmha_isomorphism,
    delta_identification,
    dual_wmha,
    find_integrals,
    is_integral,
    resolve_integral,
)
from .groupoid import Groupoid, GroupoidAction, validate, validate_action
from .linalg import tensor
from .report import Report, run_check
from .smash import (
    check_base_identities,
    check_covariant,
    check_module_algebra,
    check_MR_extension,
    check_multiplier_extension,
    check_pi_maps,
    check_smash,
    covariant_correspondence,
    left_regular_smash_module,
    regular_covariant_module,
    smash_product,
    smash_t,
)
from .wmha import WmhaStructure, run_axiom_suite, run_lazy_suite

__all__ = [
    "groupoid_report",
    "action_report",
    "algebra_report",
    "build_summary",
    "axiom_reports",
    "integral_report",
    "dual_reports",
    "smash_reports",
    "duality_reports",
]


def groupoid_report(g: Groupoid) -> Report:
    violations = validate(g)
    rep = Report(f"groupoid {g.name}", info={"objects": len(g.objects), "morphisms": len(g.morphisms)})
    rep.results = [run_check("groupoid-axioms", lambda: [str(v) for v in violations])]
    return rep


def action_report(a: GroupoidAction) -> Report:
    violations = validate_action(a)
    rep = Report(f"action on {len(a.points)} points", info={"points": len(a.points)})
    rep.results = [run_check("action-axioms", lambda: [str(v) for v in violations])]
    return rep


def algebra_report(alg: Algebra) -> Report:
    def nondeg():
        left, right = annihilators(alg)
        return [f"left annihilator {v}" for v in left] + [f"right annihilator {v}" for v in right]

    rep = Report(f"algebra {alg.name}", info={"dim": alg.dim})
    rep.results = [
        run_check("algebra-associative", lambda: check_associative(alg, limit=5)),
        run_check("algebra-nondegenerate", nondeg),
        run_check("algebra-idempotent", lambda: [] if check_idempotent(alg) else ["A² ≠ A"]),
    ]
    return rep


def build_summary(w: WmhaStructure) -> Report:
    rep = Report(f"build {w.name}")
    rep.info = {"dim": len(w.basis), "basis": list(w.basis), "regular": w.regular, "unital": w.unit() is not None}
    rep.info["dim source algebra"] = len(w.source_algebra())
    rep.info["dim target algebra"] = len(w.target_algebra())
    return rep


def axiom_reports(w: WmhaStructure, budget: int = 200, seed: int = 0) -> list[Report]:
    if w.finite:
        return [run_axiom_suite(w)]
    return [run_lazy_suite(w, budget=budget, seed=seed)]


def integral_report(w: WmhaStructure, spec=None) -> Report:
    """Integral spaces and the selected integral; a bad selection raises DualityError."""
    resolve_integral(w, spec)
    left = find_integrals(w, "left")
    right = find_integrals(w, "right")
    rep = Report(f"integrals {w.name}")
    rep.info = {"left integrals": left, "right integrals": right}
    chosen: dict = {}

    def exists():
        return [] if left else ["no left integrals"]

    def select():
        chosen["phi"] = resolve_integral(w, spec)
        return []

    def faithful():
        phi = chosen.get("phi")
        if phi is None:
            return ["no selected integral"]
        return [] if check_faithful(w, [phi]) else ["selected integral is not faithful"]

    rep.results = [
        run_check("left-integrals-exist", exists),
        run_check("selected-left-integral", select),
        run_check("selected-faithful", faithful),
    ]
    phi = chosen.get("phi")
    if phi is not None:
        rep.info["selected"] = phi
        rep.info["selected is right integral"] = is_integral(w, phi, "right")
    return rep


def dual_reports(w: WmhaStructure, spec=None) -> list[Report]:
    D = dual_wmha(w, resolve_integral(w, spec))
    out = [run_axiom_suite(D.structure), check_pairing(D.pairing)]
    if w.extras.get("kind") == "groupoid-algebra":
        K = function_algebra(w.extras["groupoid"])
        rep = check_wmha_isomorphism(K, D.structure, delta_identification(D, K))
        rep.title = f"{K.name} ≅ {D.structure.name}"
        out.append(rep)
    DD = dual_wmha(D.structure, resolve_integral(D.structure))
    rep = check_wmha_isomorphism(w, DD.structure, bidual_map(D, DD))
    rep.title = f"{w.name} ≅ bidual"
    out.append(rep)
    return out


def smash_reports(m) -> list[Report]:
    s = smash_product(m)
    out = [
        check_module_algebra(m),
        check_base_identities(m),
        check_multiplier_extension(m),
        check_MR_extension(m),
        check_smash(s),
        smash_t(s).report,
        check_pi_maps(s),
    ]
    V = regular_covariant_module(m)
    out.append(check_covariant(m, V))
    for module in (V, left_regular_smash_module(s)):
        _, rep = covariant_correspondence(s, module)
        out.append(rep)
    return out


def duality_reports(m, spec=None) -> list[Report]:
    A = m.A
    D = dual_wmha(A, resolve_integral(A, spec))
    res = verify_duality_theorem(m, D)
    out = [
        res.report,
        check_smash_on_B(D.pairing),
        commutation_picture(D.pairing),
        heisenberg_realization(D),
    ]
    u = A.unit()
    if u is not None:
        out.append(check_unital_reduction(res.bismash))
        if A.E == tensor(u, u):
            out.append(check_hopf_reduction(D))
    return out
