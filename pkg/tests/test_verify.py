import json

import numpy as np
import pytest

from sympcond.errors import InfeasibleParameters
from sympcond.modarith import ModMatrix
from sympcond.subgroup import close, normal_closure
from sympcond.sympgroup import SymplecticContext, scalar_subgroup, sp_generators
from sympcond.verify import (
    CorpusParams,
    VerificationReport,
    check_instance,
    corpus_from_json,
    corpus_to_json,
    full_group,
    generate_corpus,
    run_suite,
    verify_commutator_center_simplicity,
    verify_conductor_suite,
    verify_index_bound,
    verify_lifting,
    verify_normal_classification,
    verify_normal_core,
    verify_order_formula,
)


@pytest.mark.parametrize(
    "g,ell,counts", [(1, 2, (6, 6)), (1, 3, (48, 24)), (1, 5, (480, 120)), (2, 2, (720, 720))]
)
def test_order_formula(g, ell, counts):
    r = verify_order_formula(g, ell)
    assert r.passed and (r.details["gsp_count"], r.details["sp_count"]) == counts


def test_order_formula_infeasible():
    with pytest.raises(InfeasibleParameters):
        verify_order_formula(2, 3)


def test_normal_classification_contrast_replays():
    r = verify_normal_classification(1, 3)
    assert r.passed and r.details["mode"] == "contrast"
    (finding,) = r.details["findings"]
    assert finding["order"] == 8
    # replay: the recorded generators give a normal subgroup outside the dichotomy
    G = full_group(1, 3)
    N = normal_closure(G, [ModMatrix.from_flat(x, 3) for x in finding["generators"]])
    assert N.order == 8
    assert not scalar_subgroup(1, 3).contains_all(N.generators)
    assert not N.contains_all(sp_generators(1, 3))


def test_normal_classification_assert_mode():
    r = verify_normal_classification(1, 5)
    assert r.passed and r.details["mode"] == "assert"
    assert r.details["normal_orders"] == [1, 2, 4, 120, 240, 480]


@pytest.mark.parametrize("ell,psp", [(5, 60), (7, 168)])
def test_commutator_center_simplicity_gl2(ell, psp):
    r = verify_commutator_center_simplicity(1, ell)
    assert r.passed and r.details["psp_order"] == psp


def test_commutator_requires_threshold():
    with pytest.raises(InfeasibleParameters):
        verify_commutator_center_simplicity(1, 3)


def test_index_bound_small():
    r = verify_index_bound(1, 5, samples=100, seed=2)
    assert r.passed and r.details["checked"] + r.details["skipped_contains_sp"] == 100


def test_normal_core_small():
    assert verify_normal_core(1, 3, samples=30, seed=4).passed


def test_lifting_gl2_16():
    r = verify_lifting(1, 2, 8, samples=5, seed=3)
    assert r.passed and r.details["closure_orders"] == [24576]


def test_budget_exceeded_is_reported():
    r = verify_normal_classification(1, 5, budget=100)
    assert r.result == "budget-exceeded" and not r.passed


def test_report_serializes():
    r = verify_order_formula(1, 2)
    d = json.loads(r.to_json())
    assert d["check_name"] == "order_formula" and d["result"] == "pass"
    assert isinstance(VerificationReport(**d), VerificationReport)


def test_corpus_deterministic_and_round_trips():
    params = CorpusParams(seed=7, size=12)
    a = corpus_to_json(params, generate_corpus(params))
    b = corpus_to_json(params, generate_corpus(CorpusParams(seed=7, size=12)))
    assert a == b
    p2, corpus = corpus_from_json(a)
    assert p2.to_dict() == params.to_dict() and len(corpus) == 12
    assert corpus_to_json(p2, corpus) == a


def test_empty_corpus():
    assert generate_corpus(CorpusParams(size=0)) == []


def test_entangled_instances_exceed_projections():
    corpus = generate_corpus(CorpusParams(seed=3, size=20, mix={"entangled": 1.0}))
    assert len(corpus) == 20
    for G in corpus:
        assert check_instance(G)["checks"]["entangled_exceeds"]


def test_conductor_suite_small(entangled):
    params = CorpusParams(seed=2, size=15)
    r = verify_conductor_suite(generate_corpus(params) + [entangled])
    assert r.passed, r.witnesses
    assert r.details["conductors"][-1] == 6


def test_rank2_corpus():
    corpus = generate_corpus(CorpusParams(seed=1, g=2, size=4, max_order=50000))
    assert verify_conductor_suite(corpus).passed


def test_run_suite_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")
