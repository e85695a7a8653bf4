"""HTTP endpoints: scoring wrappers, reward, replay, feedback."""

import pytest
from fastapi.testclient import TestClient
from machines import HAS_BRRR_SOLUTION, fenced

from deltaforge.bounce.dataset import make_entry, oracle_solution_source
from deltaforge.manufactoria.families import generate_tests, make_instance
from deltaforge.service.app import create_app
from deltaforge.service.config import ServiceConfig


@pytest.fixture()
def client(tmp_path):
    config = ServiceConfig(store_path=str(tmp_path / "replay.jsonl"), wall_timeout=8.0)
    with TestClient(create_app(config)) as c:
        yield c


FULL = {"n_tests": 5, "n_passed": 5, "failures": []}
PARTIAL = {
    "n_tests": 5,
    "n_passed": 3,
    "failures": [
        {"input": "RB", "expected": "accept", "observed": "rejected: infinite loop"},
        {"input": "BB", "expected": "reject", "observed": "reached END with tape 'BB'"},
    ],
}


class TestScoreManufactoria:
    def test_inline_instance_full_pass(self, client):
        instance = make_instance("HAS", {"pattern": "BRRR"}, seed=1)
        tests = generate_tests(instance, 12, seed=2)
        payload = {
            "response": fenced(HAS_BRRR_SOLUTION),
            "instance": instance.to_dict(),
            "tests": [t.to_dict() for t in tests],
        }
        body = client.post("/score/manufactoria", json=payload).json()
        assert body["full_pass"] is True
        assert body["per_test"] == 1.0

    def test_instance_id_resolution(self, client):
        body = client.post(
            "/score/manufactoria",
            json={"response": "no fences at all", "instance_id": "HAS:42"},
        ).json()
        assert body["per_test"] == 0.0
        assert body["failures"][0]["observed"].startswith("no code block")

    def test_identical_payload_identical_body(self, client):
        payload = {"response": "prose", "instance_id": "EXACT:7", "test_count": 8}
        a = client.post("/score/manufactoria", json=payload)
        b = client.post("/score/manufactoria", json=payload)
        assert a.json() == b.json()

    def test_bad_instance_id(self, client):
        r = client.post("/score/manufactoria", json={"response": "x", "instance_id": "nope"})
        assert r.status_code == 400

    def test_missing_fields(self, client):
        assert client.post("/score/manufactoria", json={"instance_id": "HAS:1"}).status_code == 400
        assert client.post("/score/manufactoria", json={"response": "x"}).status_code == 400


class TestScoreBouncingsim:
    def test_inline_entry_oracle(self, client):
        entry = make_entry("ROT_BOX", "basic", seed=31)
        payload = {"source": oracle_solution_source(entry), "entry": entry.to_dict()}
        body = client.post("/score/bouncingsim", json=payload).json()
        assert body["full_pass"] is True

    def test_crashing_candidate_zero(self, client):
        entry = make_entry("ROT_BOX", "basic", seed=32)
        payload = {"source": "def predict_position(t):\n    raise ValueError\n",
                   "entry": entry.to_dict()}
        body = client.post("/score/bouncingsim", json=payload).json()
        assert body["per_test"] == 0.0

    def test_entry_id_without_index_configured(self, client):
        r = client.post("/score/bouncingsim", json={"source": "x", "entry_id": "missing"})
        assert r.status_code == 400

    def test_entry_id_lookup(self, tmp_path):
        from deltaforge.bounce.dataset import emit_scenes

        path = emit_scenes("ROT_BOX", "basic", 1, seed=9, out_path=tmp_path / "idx.jsonl")
        config = ServiceConfig(store_path=str(tmp_path / "r.jsonl"),
                               entry_index_path=str(path), wall_timeout=8.0)
        with TestClient(create_app(config)) as client:
            from deltaforge.bounce.dataset import load_entries

            entry = load_entries(path)[0]
            body = client.post("/score/bouncingsim", json={
                "source": oracle_solution_source(entry), "entry_id": entry.id}).json()
            assert body["full_pass"] is True
            missing = client.post("/score/bouncingsim",
                                  json={"source": "x", "entry_id": "ghost"})
            assert missing.status_code == 404


class TestReward:
    def test_warmup(self, client):
        body = client.post("/reward", json={
            "step": 50, "schedule": {"warmup_steps": 100},
            "score": {"n_tests": 5, "n_passed": 2, "failures": []}}).json()
        assert body["reward"] == pytest.approx(0.4)

    def test_binary(self, client):
        assert client.post("/reward", json={
            "step": 150, "schedule": {"warmup_steps": 100}, "score": PARTIAL,
        }).json()["reward"] == 0.0
        assert client.post("/reward", json={
            "step": 150, "schedule": {"warmup_steps": 100}, "score": FULL,
        }).json()["reward"] == 1.0

    def test_bad_payload(self, client):
        assert client.post("/reward", json={"step": 1}).status_code == 400


class TestReplay:
    def test_post_and_get(self, client):
        for i in range(5):
            r = client.post("/replay/p9", json={"trace": f"t{i}", "score": FULL})
            assert r.json()["stored"] == i + 1
        traces = client.get("/replay/p9", params={"k": 3}).json()["traces"]
        assert [t["trace"] for t in traces] == ["t4", "t3", "t2"]

    def test_failing_score_conflict(self, client):
        r = client.post("/replay/p9", json={"trace": "bad", "score": PARTIAL})
        assert r.status_code == 409

    def test_unknown_prompt_empty(self, client):
        assert client.get("/replay/ghost").json()["traces"] == []

    def test_persistence_across_service_restarts(self, tmp_path):
        config = ServiceConfig(store_path=str(tmp_path / "replay.jsonl"))
        with TestClient(create_app(config)) as c1:
            c1.post("/replay/p1", json={"trace": "kept", "score": FULL})
        with TestClient(create_app(config)) as c2:
            traces = c2.get("/replay/p1").json()["traces"]
        assert [t["trace"] for t in traces] == ["kept"]


class TestFeedback:
    def test_full_pass_empty(self, client):
        assert client.post("/feedback", json={"score": FULL}).json()["text"] == ""

    def test_failure_cases_listed(self, client):
        text = client.post("/feedback", json={"score": PARTIAL}).json()["text"]
        assert "infinite loop" in text
        assert "input 'RB'" in text

    def test_cap(self, client):
        text = client.post("/feedback", json={"score": PARTIAL, "cap": 1}).json()["text"]
        assert text.count("- input") == 1
