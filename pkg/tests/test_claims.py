import pytest

from ringlab import constructors
from ringlab.claims import (ANCHORS, CLAIM_IDS, HYPOTHESES, default_corpus,
                            explore_problem, problem_triple, registry,
                            replay_trace, run_claim, run_suite)
from ringlab.errors import ContractError
from ringlab.rings import FiniteRing

SMALL_CAPS = {"budget": 2000, "pair_budget": 500, "mccoy_budget": 5000,
              "max_degree": 2}


@pytest.fixture(scope="module")
def ex22():
    return constructors.make_ex22(2)


@pytest.fixture(scope="module")
def m2():
    return constructors.make_matrix(constructors.make_zn(2), 2)


def test_registry_is_complete():
    reg = registry()
    assert set(reg) == set(CLAIM_IDS) == set(ANCHORS)
    assert set(HYPOTHESES) <= set(CLAIM_IDS)
    with pytest.raises(ContractError):
        run_claim("C99", constructors.make_zn(2))


def test_c2_builds_skew_ring_over_reversible_base():
    r = run_claim("C2", constructors.make_zn(4))
    assert r.status == "pass"
    assert "True" in r.note


def test_c2_checks_iff_through_non_reversible_base(m2):
    # hypothesis is met via the skew-triangular construction over M2
    r = run_claim("C2", constructors.make_skew_triangular(m2, 2))
    assert r.status == "pass"
    assert "False" in r.note


def test_c3_canonical_witness_pair():
    s3 = constructors.make_skew_triangular(constructors.make_zn(2), 3)
    r = run_claim("C3", s3)
    assert r.status == "pass"
    a, b = r.trace["b"], r.trace["a"]  # trace stores the one-sided-zero order
    assert a == constructors.matrix_unit(s3, 0, 1)
    assert b == constructors.matrix_unit(s3, 1, 2)
    assert s3.mul(a, a) == 0 and s3.mul(b, b) == 0
    assert s3.mul(b, a) == 0 and s3.mul(a, b) != 0
    assert replay_trace(s3, r.trace)


def test_c13_nil_ideal(ex22):
    r = run_claim("C13", ex22)
    assert r.status == "pass"
    assert "32" in r.note


def test_full_matrix_ring_fails_hypotheses(m2):
    for cid in ("C1", "C2", "C3", "C4", "C5", "C17"):
        assert run_claim(cid, m2).status == "hypothesis-not-met", cid


def test_statuses_are_legal_across_claims(ex22):
    for cid in CLAIM_IDS:
        r = run_claim(cid, ex22, SMALL_CAPS)
        assert r.status in ("pass", "fail", "hypothesis-not-met",
                            "skipped-by-cap"), cid
        assert r.status != "fail", cid


def mutate(ring, a, b, value):
    mul = ring.mul_table.copy()
    mul[a, b] = value
    return FiniteRing(ring.id + "!", ring.add_table, mul, ring.neg_table,
                      ring.one, algebra=ring.algebra, meta=ring.meta)


def test_mutated_table_is_caught_and_trace_replays(ex22):
    x = constructors.basis_element(ex22, "x")
    y = constructors.basis_element(ex22, "y")
    mutant = mutate(ex22, y, x, 0)  # silently erase the one-sided product
    r = run_claim("C1", mutant)
    assert r.status == "fail"
    assert r.trace["kind"] == "product-mismatch"
    assert replay_trace(mutant, r.trace)
    # the same trace must NOT replay against the honest ring
    assert not replay_trace(ex22, r.trace)
    # claims that run on the ring itself stay within the status contract
    statuses = [run_claim(cid, mutant, SMALL_CAPS).status
                for cid in ("C1", "C2", "C3", "C4", "C5")]
    assert statuses.count("fail") >= 1


def test_replay_trace_rejects_fabrications(ex22):
    assert not replay_trace(ex22, {"kind": "product-mismatch",
                                   "x": 1, "y": 3, "xy": 1, "yx": 0})
    assert not replay_trace(ex22, {"kind": "one-sided-zero", "a": 0, "b": 0})


def test_default_corpus_shape():
    corpus = default_corpus()
    assert len(corpus) == 15
    ids = [r.id for r in corpus]
    assert len(set(ids)) == 15
    assert all(r.size <= 729 for r in corpus)


def test_run_suite_small_corpus_and_determinism():
    corpus = [constructors.make_zn(4), constructors.make_ex22(2)]
    rep1 = run_suite(corpus, SMALL_CAPS)
    rep2 = run_suite(corpus, SMALL_CAPS)
    assert rep1 == rep2  # cells carry no timing, so full equality must hold
    assert rep1["rings"] == ["Z4", "ex22(2)"]
    assert len(rep1["claims"]) == len(CLAIM_IDS) * 2
    total = sum(rep1["summary"].values())
    assert total == len(rep1["claims"])
    assert rep1["summary"]["fail"] == 0
    for row in rep1["implications"]:
        assert row["source"] == "diagram-sourced"
        assert row["pi-cn-implies-two-primal"]
        assert row["pi-cn-implies-no-mccoy-violation"]
    with pytest.raises(ContractError):
        run_suite([])


def test_explore_problem_flags_candidates(ex22):
    out = explore_problem([ex22, constructors.make_zn(4)])
    assert out["candidates"] == ["ex22(2)"]
    assert "report only" in out["note"]
    triple = problem_triple(ex22)
    assert triple["weakly-reversible"] and triple["pi-duo"]
    assert not triple["reversible"]
    z4 = [t for t in out["triples"] if t["ring"] == "Z4"][0]
    assert z4["reversible"] and not z4["candidate"]
