from __future__ import annotations

import pytest

from conftest import structure
from qgroupoid.fixtures import MUTATION_MATRIX
from qgroupoid.wmha import AXIOMS, FIELDS, mutate, run_axiom_suite


def test_matrix_covers_every_axiom_once():
    assert sorted(m[0] for m in MUTATION_MATRIX) == sorted(AXIOMS)
    assert all(m[2] in FIELDS for m in MUTATION_MATRIX)


@pytest.mark.parametrize("axiom,fixture,field,key,value", MUTATION_MATRIX, ids=[m[0] for m in MUTATION_MATRIX])
def test_mutation_is_detected_by_its_axiom(axiom, fixture, field, key, value):
    w = structure(fixture)
    assert run_axiom_suite(w).ok
    rep = run_axiom_suite(mutate(w, field, key, value))
    failing = rep.failing()
    assert axiom in failing
    # every other failing check reads the corrupted field
    for other in failing:
        assert field in rep[other].reads, other
