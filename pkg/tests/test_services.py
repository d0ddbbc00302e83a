import json

import pytest

from app.adapters import json_adapter, text_adapter
from app.algebra.core import TruncationError
from app.services import harness_service, hochschild_service
from app.services.evaluation_service import evaluate_text
from app.services.expression_service import ExpressionTypeError
from tests.strategies import F2, Z


# ---------------------------------------------------------
# evaluation
# ---------------------------------------------------------
def test_worked_product_text():
    result = evaluate_text("[3]*[1,2]")
    assert result.algebra == "qsymm"
    assert result.render() == "[1,5] + [4,2] + [1,2,3] + [1,3,2] + [3,1,2]"


def test_antipode_and_pairing():
    assert evaluate_text("antipode(Z2)").render() == "-Z2 + Z1*Z1"
    assert evaluate_text("pair([1,2], Z1*Z2)").render() == "1"
    assert evaluate_text("antipode([1,1])").render() == "[2] + [1,1]"


def test_steenrod_needs_a_prime_field():
    result = evaluate_text("steenrod(1, [1]) @Fp:2")
    assert result.ring == F2
    assert result.render() == "[2]"
    with pytest.raises(ExpressionTypeError):
        evaluate_text("steenrod(1, [1])")


def test_ring_argument_and_annotation():
    assert evaluate_text("2[1]", ring=F2).render() == "0"
    assert evaluate_text("2[1] @Z", ring=F2).render() == "2*[1]"


def test_symm_values():
    assert evaluate_text("abelianize(Z1 <> Z1)", trunc=2).render() == "-c1^2 + 2*c2"
    assert evaluate_text("v2", trunc=2).render() == "-c2"
    with pytest.raises(TruncationError):
        evaluate_text("c3", trunc=2)


def test_scalars_promote_into_the_algebra():
    assert evaluate_text("Z1 + 1").render() == "1 + Z1"
    assert evaluate_text("3 - 1").render() == "2"


def test_json_payload():
    payload = evaluate_text("[3]*[1,2]").payload()
    assert payload["algebra"] == "qsymm"
    assert payload["ring"] == "Z"
    assert {"key": [4, 2], "coeff": "1"} in payload["terms"]
    assert len(payload["terms"]) == 5
    symm = evaluate_text("c1 - c2", trunc=2).payload()
    assert symm["generators"] == ["c1", "c2"]
    assert {"key": [0, 1], "coeff": "-1"} in symm["terms"]
    assert json.loads(json_adapter.dumps(payload)) == payload


def test_tensor_payload_keys():
    payload = evaluate_text("coproduct(Z1)").payload()
    assert payload["algebra"] == "tensor:nsymm"
    assert sorted(t["key"] for t in payload["terms"]) == [[[], [1]], [[1], []]]


def test_table_rendering():
    assert text_adapter.render_table([]) == "(no rows)"
    table = text_adapter.render_table([{"n": 1, "ok": True}, {"n": 2, "ok": False}])
    assert table.splitlines()[0].split() == ["n", "ok"]
    assert text_adapter.join_terms([("-1", "Z1"), ("3", "Z2"), ("-2", "1")]) == "-Z1 + 3*Z2 - 2"


# ---------------------------------------------------------
# indecomposables harness
# ---------------------------------------------------------
def test_harness_small_degrees():
    report = harness_service.run_ditters_verify(4, [2, 3])
    assert report.passed
    assert report.verdict == "PASS"
    assert [row["pi_0"] for row in report.details] == [1, 1, 2, 3]
    assert [row["pi_2"] for row in report.details] == [1, 1, 2, 3]
    assert [row["poincare"] for row in report.details] == [1, 2, 4, 8]
    assert report.counterexample is None
    assert report.parameters["primes"] == [2, 3]
    assert json.loads(json_adapter.dumps(report))["check"] == "ditters"


def test_harness_degree_five():
    report = harness_service.run_ditters_verify(5, [2])
    assert report.details[-1]["pi_0"] == 6
    assert report.details[-1]["torsion"] == []


def test_harness_rejects_bad_arguments():
    with pytest.raises(ValueError):
        harness_service.run_ditters_verify(99)
    with pytest.raises(ValueError):
        harness_service.run_ditters_verify(3, [4])


@pytest.mark.slow
def test_harness_full_range():
    report = harness_service.run_ditters_verify(8)
    assert report.passed
    assert [row["lyndon"] for row in report.details] == [1, 1, 2, 3, 6, 9, 18, 30]
    assert report.details[-1]["torsion"] == "skipped"


# ---------------------------------------------------------
# Hochschild ranks
# ---------------------------------------------------------
def test_hochschild_ranks():
    assert [hochschild_service.hh_ranks(n)["hh0"] for n in range(1, 7)] == [1, 2, 3, 5, 7, 13]
    assert hochschild_service.hh_ranks(4)["by_length"] == {1: 1, 2: 2, 3: 1, 4: 1}


def test_hochschild_oracle_agrees():
    rows = hochschild_service.hh_table(6)
    assert all(row["agrees"] for row in rows)
    assert [row["oracle_hh1"] for row in rows] == [1, 2, 3, 5, 7, 13]
    assert "oracle_hh0" not in hochschild_service.hh_table(2, with_oracle=False)[0]


def test_hochschild_rejects_empty_degree():
    with pytest.raises(ValueError):
        hochschild_service.hh_ranks(0)
