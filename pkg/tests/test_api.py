from fastapi.testclient import TestClient

from app.main import app

client = TestClient(app)


# ---------------------------------------------------------
# /eval
# ---------------------------------------------------------
def test_eval_worked_product():
    res = client.post("/eval", json={"expression": "[3] [1,2]"})
    assert res.status_code == 200
    body = res.json()
    assert body["expression"] == "[3]*[1,2]"
    assert body["text"] == "[1,5] + [4,2] + [1,2,3] + [1,3,2] + [3,1,2]"
    assert body["algebra"] == "qsymm"
    assert len(body["terms"]) == 5


def test_eval_with_ring():
    res = client.post("/eval", json={"expression": "steenrod(1, [1])", "ring": "Fp:2"})
    assert res.status_code == 200
    assert res.json()["text"] == "[2]"
    assert res.json()["ring"] == "Fp:2"


def test_eval_syntax_error_reports_position():
    res = client.post("/eval", json={"expression": "[1,0]"})
    assert res.status_code == 400
    assert res.json()["detail"]["position"] == 3


def test_eval_rejections():
    assert client.post("/eval", json={"expression": "[1] + Z1"}).status_code == 400
    assert client.post("/eval", json={"expression": "Z1", "ring": "R"}).status_code == 400
    assert client.post("/eval", json={"expression": "Z1", "trunc": 99}).status_code == 400
    assert client.post("/eval", json={"expression": ""}).status_code == 422


# ---------------------------------------------------------
# enumerations
# ---------------------------------------------------------
def test_hh_ranks():
    res = client.get("/hh-ranks/4")
    assert res.status_code == 200
    assert res.json() == {"n": 4, "hh0": 5, "hh1": 5, "by_length": {"1": 1, "2": 2, "3": 1, "4": 1}}
    assert client.get("/hh-ranks/0").status_code == 422


def test_lyndon_words():
    res = client.get("/lyndon/4")
    assert res.json() == {"n": 4, "count": 3, "words": ["4", "13", "112"]}


# ---------------------------------------------------------
# /verify
# ---------------------------------------------------------
def test_verify_ditters():
    res = client.get("/verify/ditters", params={"max_degree": 3, "primes": "2,3"})
    assert res.status_code == 200
    body = res.json()
    assert body["verdict"] == "PASS"
    assert body["parameters"]["primes"] == [2, 3]
    assert [row["pi_0"] for row in body["details"]] == [1, 1, 2]


def test_verify_rejects_large_degree_and_composite_primes():
    assert client.get("/verify/ditters", params={"max_degree": 50}).status_code == 400
    assert client.get("/verify/ditters", params={"primes": "4"}).status_code == 400
