"""HTTP service: endpoint behavior and error mapping."""

import pytest
from fastapi.testclient import TestClient

from streamfix import __version__
from streamfix.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def doc(stream):
    return [{"t": t, "atoms": sorted(stream.at(t))} for t in stream.times()]


def test_health(client):
    assert client.get("/health").json() == {"engine": "streamfix", "version": __version__}


class TestValidate:
    def test_consistent_program(self, client, ex):
        body = {"program": ex.program_text, "at": ex.t, "gamma": ["d"]}
        out = client.post("/validate", json=body).json()
        assert out["ok"] is True
        assert [r["index"] for r in out["rules"]] == [1, 2, 3, 4]
        assert out["rules"][0]["head"] == "@2 a"
        assert all(r["head_normal"] and r["head_consistent"] for r in out["rules"])
        assert out["meta"]["engine"] == "streamfix"
        assert out["meta"]["version"] == __version__
        assert out["meta"]["command"] == "validate"
        assert out["meta"]["config"]["at"] == ex.t

    def test_inconsistent_head_is_flagged(self, client):
        out = client.post(
            "/validate", json={"program": "[0,0] @2 a :- b.\n", "at": 1}
        ).json()
        assert out["ok"] is False
        assert out["rules"][0]["head_consistent"] is False


class TestEval:
    def test_refined_semantics_with_support(self, client):
        body = {
            "formula": "box a",
            "data": [{"t": 1, "atoms": ["a"]}, {"t": 3, "atoms": ["a"]}],
            "at": 2,
        }
        out = client.post("/eval", json=body).json()
        assert out["verdict"] is False
        assert out["support"] == [1, 3]

    def test_unquantified_formula_has_no_support_field(self, client):
        out = client.post(
            "/eval", json={"formula": "a", "data": [{"t": 1, "atoms": ["a"]}], "at": 1}
        ).json()
        assert out["verdict"] is True
        assert out["support"] is None

    def test_empty_span_reports_empty_support(self, client):
        out = client.post("/eval", json={"formula": "box a", "data": [], "at": 4}).json()
        assert out["verdict"] is True
        assert out["support"] == []

    def test_fixed_interval(self, client):
        body = {
            "formula": "box a",
            "data": [{"t": 4, "atoms": ["a"]}, {"t": 5, "atoms": ["a"]}],
            "at": 5,
            "interval": [4, 6],
        }
        out = client.post("/eval", json=body).json()
        assert out["verdict"] is False
        assert out["support"] == [4, 6]

    def test_three_valued(self, client):
        body = {
            "formula": "not b",
            "data": [{"t": 1, "atoms": ["a"]}],
            "upper": [{"t": 1, "atoms": ["a"]}, {"t": 2, "atoms": ["b"]}],
            "at": 2,
        }
        assert client.post("/eval", json=body).json()["verdict"] is False

    def test_gamma(self, client):
        out = client.post(
            "/eval", json={"formula": "box d", "data": [{"t": 1, "atoms": ["a"]}],
                           "at": 1, "gamma": ["d"]}
        ).json()
        assert out["verdict"] is True


class TestModelCheckAndTp:
    def test_model_check(self, client, ex):
        body = {
            "program": ex.program_text,
            "model": doc(ex.big),
            "at": ex.t,
            "data": doc(ex.data),
            "gamma": ["d"],
        }
        assert client.post("/model-check", json=body).json()["verdict"] is True
        body["model"] = doc(ex.data)
        assert client.post("/model-check", json=body).json()["verdict"] is False

    def test_tp(self, client, ex):
        body = {
            "program": ex.program_text,
            "model": doc(ex.big),
            "at": ex.t,
            "data": doc(ex.data),
            "gamma": ["d"],
        }
        assert client.post("/tp", json=body).json()["result"] == doc(ex.big)


class TestFixpoint:
    def test_trace_and_answer_flag(self, client, ex):
        body = {
            "program": ex.program_text,
            "model": doc(ex.big),
            "at": ex.t,
            "data": doc(ex.data),
            "gamma": ["d"],
        }
        out = client.post("/fixpoint", json=body).json()
        assert out["is_answer"] is True
        assert out["fixpoint"] == doc(ex.big)
        assert out["stages"] == [[], doc(ex.data), doc(ex.stage2), doc(ex.big), doc(ex.big)]

    def test_non_model_is_a_usage_error(self, client, circular):
        body = {
            "program": circular.program_text,
            "model": [{"t": 3, "atoms": ["a"]}],
            "at": 3,
        }
        resp = client.post("/fixpoint", json=body)
        assert resp.status_code == 400
        assert resp.json()["kind"] == "usage"


class TestAnswerStreams:
    def test_running_example_default_universe(self, client, ex):
        body = {"program": ex.program_text, "at": ex.t, "data": doc(ex.data), "gamma": ["d"]}
        out = client.post("/answer-streams", json=body).json()
        assert out["count"] == 2
        assert out["streams"] == [doc(ex.small), doc(ex.big)]
        assert out["universe_atoms"] == ["a", "b", "c"]
        assert out["horizon"] == [1, 13]

    def test_explicit_universe_fixed_interval(self, client):
        body = {
            "program": "a.\n",
            "at": 3,
            "mode": "fixed-interval",
            "interval": [3, 4],
            "horizon": [3, 4],
            "universe_atoms": ["a"],
        }
        out = client.post("/answer-streams", json=body).json()
        assert out["count"] == 1
        assert out["streams"] == [[{"t": 3, "atoms": ["a"]}]]
        assert out["horizon"] == [3, 4]


class TestLevelMap:
    def test_found_levels_include_the_base(self, client, ex):
        body = {
            "program": ex.program_text,
            "model": doc(ex.big),
            "at": ex.t,
            "data": doc(ex.data),
            "gamma": ["d"],
        }
        out = client.post("/level-map", json=body).json()
        assert out["found"] is True
        assert out["levels"][0] == []
        assert len(out["levels"]) == 4
        assert out["levels"][1] == doc(ex.data)

    def test_circular_model_has_none(self, client, circular):
        body = {
            "program": circular.program_text,
            "model": doc(circular.loop),
            "at": circular.t,
        }
        out = client.post("/level-map", json=body).json()
        assert out["found"] is False
        assert out["levels"] is None


class TestTranslate:
    def test_rewrites_and_reports_marker(self, client):
        body = {"program": "a :- box b.\n", "interval": [4, 5], "at": 5}
        out = client.post("/translate-boxplus", json=body).json()
        assert out["marker"] == "#"
        assert out["program"] == "[1,0] a :- [1,0] box b.\n@4 #.\n@5 #.\n"


class TestErrorMapping:
    def test_parse_error_carries_position(self, client):
        resp = client.post("/validate", json={"program": "a :- b.\nc :- $d.\n", "at": 1})
        assert resp.status_code == 400
        out = resp.json()
        assert out["kind"] == "parse"
        assert out["line"] == 2
        assert out["col"] == 6

    def test_bound_exceeded_is_a_conflict(self, client):
        body = {
            "program": "a :- b.\n",
            "at": 1,
            "horizon": [1, 40],
            "universe_atoms": ["a", "b"],
        }
        resp = client.post("/answer-streams", json=body)
        assert resp.status_code == 409
        out = resp.json()
        assert out["kind"] == "bound"
        assert out["count"] == 80
        assert out["bound"] == 64

    def test_usage_error(self, client, ex):
        body = {
            "program": ex.program_text,
            "model": [{"t": 1, "atoms": ["a"]}],
            "at": ex.t,
            "data": doc(ex.data),
        }
        resp = client.post("/tp", json=body)
        assert resp.status_code == 400
        assert resp.json()["kind"] == "usage"

    def test_schema_violations_are_rejected(self, client):
        resp = client.post("/eval", json={"formula": "a", "at": 0})
        assert resp.status_code == 422
