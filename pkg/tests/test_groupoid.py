from __future__ import annotations

from dataclasses import replace
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgroupoid.groupoid import (
    GroupoidAction,
    GroupoidParseError,
    action_groupoid,
    cyclic_group,
    disjoint_union,
    is_isomorphic,
    lazy_pair_groupoid,
    pair_groupoid,
    parse,
    parse_action,
    render,
    render_action,
    translation_action,
    validate,
    validate_action,
)


@pytest.mark.parametrize("g", [pair_groupoid(1), pair_groupoid(2), pair_groupoid(3), cyclic_group(1),
                               cyclic_group(2), cyclic_group(4), disjoint_union(pair_groupoid(2), cyclic_group(3))])
def test_generators_are_valid(g):
    assert validate(g) == []


def test_pair_groupoid_shape():
    g = pair_groupoid(2)
    assert len(g.objects) == 2 and len(g) == 4
    assert g.source("p1_2") == "1" and g.target("p1_2") == "2"
    assert g.compose("p2_1", "p1_2") == "p1_1"
    assert g.compose("p1_2", "p1_2") is None
    assert g.inverse("p1_2") == "p2_1"
    assert set(g.units) == {"p1_1", "p2_2"}


def test_cyclic_group_orders():
    g = cyclic_group(3)
    assert len(g.objects) == 1 and len(g) == 3
    x = g.morphisms[1]
    assert g.compose(x, g.compose(x, x)) == g.units[0]


def test_disjoint_union_has_no_cross_composites():
    g = disjoint_union(pair_groupoid(2), cyclic_group(3))
    assert len(g) == 7 and len(g.objects) == 3
    assert len(g.units) == 3


def test_action_groupoid_of_translation_is_pair_like():
    z2 = cyclic_group(2)
    g = action_groupoid(z2, z2.morphisms, lambda a, x: z2.compose(a, x))
    assert validate(g) == []
    assert is_isomorphic(g, pair_groupoid(2))


def test_parse_sample_file(data_dir):
    g = parse((data_dir / "p2.grpd").read_text())
    assert validate(g) == []
    assert is_isomorphic(g, pair_groupoid(2))
    assert g.compose("q", "p") == "id1"


def test_parse_render_round_trip():
    for g in (pair_groupoid(2), cyclic_group(3), disjoint_union(pair_groupoid(2), cyclic_group(2))):
        h = parse(render(g))
        assert set(h.morphisms) == set(g.morphisms)
        assert dict(h.table) == dict(g.table)
        assert render(h) == render(g)


def test_broken_file_reports_endpoints(data_dir):
    g = parse((data_dir / "broken.grpd").read_text(), strict=False)
    rules = {v.rule for v in validate(g)}
    assert any("endpoints" in r for r in rules)


def test_strict_parse_rejects_broken(data_dir):
    with pytest.raises(GroupoidParseError):
        parse((data_dir / "broken.grpd").read_text())


@pytest.mark.parametrize("text", [
    "objects: 1\nmorphisms: a:1->2\n",
    "objects: 1\nmorphisms: a:1->1\ncompose: a.b=a\n",
    "objects: 1\nwhatever: x\n",
])
def test_parse_errors(text):
    with pytest.raises(GroupoidParseError):
        parse(text)


def test_validate_detects_non_associative_table():
    g = pair_groupoid(2)
    table = dict(g.table)
    table["p1_2", "p1_1"] = "p2_2"
    bad = replace(g, table=table)
    assert validate(bad)


def test_validate_detects_missing_inverse():
    g = cyclic_group(3)
    inv = dict(g.inv)
    a = g.morphisms[1]
    inv[a] = a
    assert validate(replace(g, inv=inv))


def test_lazy_pair_groupoid_truncation():
    lg = lazy_pair_groupoid()
    t = lg.truncation(4)
    assert validate(t) == []
    assert len(t) == 16
    assert is_isomorphic(t, pair_groupoid(4))
    assert list(lg.morphisms_between([1, 7]))[1] == (1, 7)
    assert lg.contains((1, 7)) and not lg.contains((0, 3))
    assert lg.compose((7, 2), (1, 7)) == (1, 2)


def test_sample_action_file(data_dir):
    g = parse((data_dir / "p2.grpd").read_text())
    a = parse_action((data_dir / "p2.act").read_text(), g)
    assert validate_action(a) == []
    assert a.alpha("p", "x1") == "x2"
    b = parse_action(render_action(a), g)
    assert validate_action(b) == [] and dict(b.maps) == dict(a.maps)


def test_translation_action_is_valid():
    assert validate_action(translation_action(cyclic_group(3))) == []


def _p2_action(**overrides):
    g = pair_groupoid(2)
    dom = {"p1_1": {"x1"}, "p2_2": {"x2"}, "p1_2": {"x1"}, "p2_1": {"x2"}}
    maps = {"p1_1": {"x1": "x1"}, "p2_2": {"x2": "x2"}, "p1_2": {"x1": "x2"}, "p2_1": {"x2": "x1"}}
    for k, (d, m) in overrides.items():
        dom[k], maps[k] = d, m
    return GroupoidAction(g, ("x1", "x2"), {k: frozenset(v) for k, v in dom.items()}, maps)


def test_action_defects_are_reported():
    assert validate_action(_p2_action()) == []
    assert {v.rule for v in validate_action(_p2_action(p1_1=({"x1"}, {"x1": "x2"})))}
    bad = validate_action(_p2_action(p1_2=({"x1", "x2"}, {"x1": "x2", "x2": "x1"})))
    assert any(v.rule == "trueness" or "contained" in v.rule for v in bad)
    assert any("injective" in v.rule for v in validate_action(_p2_action(p1_2=({"x1", "x2"}, {"x1": "x2", "x2": "x2"}))))


def test_action_parse_rejects_unknown_morphism():
    g = pair_groupoid(2)
    with pytest.raises(GroupoidParseError):
        parse_action("points: x\ndomain: nope={x}\n", g)


@given(st.integers(1, 4), st.data())
def test_pair_groupoid_associativity_and_inverses(n, data):
    g = pair_groupoid(n)
    p, q, r = (data.draw(st.sampled_from(g.morphisms)) for _ in range(3))
    if g.composable(p, q) and g.composable(q, r):
        assert g.compose(g.compose(p, q), r) == g.compose(p, g.compose(q, r))
    assert g.compose(g.inverse(p), p) == g.identity(g.source(p))
    assert g.compose(p, g.inverse(p)) == g.identity(g.target(p))


def test_factorizations_count():
    g = pair_groupoid(3)
    for p in g.morphisms:
        assert len(g.factorizations(p)) == 3
    assert all(g.compose(x, y) == p for p in g.morphisms for x, y in g.factorizations(p))
    assert sum(1 for p, q in product(g.morphisms, repeat=2) if g.composable(p, q)) == 27
