"""HTTP surface tests via the in-process test client."""
import numpy as np
import pytest
from fastapi.testclient import TestClient

from conftest import FixedProbabilityBackend
from dicomgen import simple_pattern_dicom
from test_service_core import make_config

from dicomrouter import nn
from dicomrouter.service import AuditLog, ReviewStore, RouterCore, create_app

CONFIDENT_ABDO = FixedProbabilityBackend(np.array([10.0, 0.0, 0.0, 0.0, 0.0]))


def make_client(tmp_path, backend, **overrides):
    config = make_config(tmp_path, **overrides)
    audit = AuditLog(config.audit_path)
    review = ReviewStore(config.review_state_path, second_round=config.second_round)
    core = RouterCore(config, backend, audit, review)
    return TestClient(create_app(core)), core


def dicom_blob(uid_suffix=1, label=nn.BodyPartClass.ABDOMINAL):
    img = nn.class_pattern(label, 32)
    return simple_pattern_dicom(img, f"1.2.826.0.1.3680043.9.7777.{uid_suffix}")


class TestBasics:
    def test_healthz(self, tmp_path):
        client, _ = make_client(tmp_path, CONFIDENT_ABDO)
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.text == "ok"

    def test_classify_contract(self, tmp_path):
        client, _ = make_client(tmp_path, CONFIDENT_ABDO)
        response = client.post("/v1/classify", content=dicom_blob(1))
        assert response.status_code == 200
        payload = response.json()
        assert payload["id"] == "1.2.826.0.1.3680043.9.7777.1"
        assert payload["class"] == "abdominal"
        assert len(payload["probs"]) == 5
        assert sum(payload["probs"]) == pytest.approx(1.0, abs=1e-6)
        assert payload["latency_s"] >= 0.0

    def test_classify_is_side_effect_free(self, tmp_path):
        client, core = make_client(tmp_path, CONFIDENT_ABDO)
        blob = dicom_blob(2)
        a = client.post("/v1/classify", content=blob).json()
        b = client.post("/v1/classify", content=blob).json()
        assert a["class"] == b["class"]
        assert a["probs"] == b["probs"]
        assert not core.audit.replay()

    def test_non_dicom_is_415(self, tmp_path):
        client, _ = make_client(tmp_path, CONFIDENT_ABDO)
        assert client.post("/v1/classify", content=b"A" * 200).status_code == 415

    def test_malformed_dicom_is_400(self, tmp_path):
        client, _ = make_client(tmp_path, CONFIDENT_ABDO)
        assert client.post("/v1/classify", content=dicom_blob(3)[:-5]).status_code == 400

    def test_empty_body_is_400(self, tmp_path):
        client, _ = make_client(tmp_path, CONFIDENT_ABDO)
        assert client.post("/v1/classify", content=b"").status_code == 400

    def test_no_backend_is_503(self, tmp_path):
        client, _ = make_client(tmp_path, None)
        assert client.post("/v1/classify", content=dicom_blob(4)).status_code == 503
        assert client.post("/v1/ingest", content=dicom_blob(4)).status_code == 503


class TestIngestEndpoint:
    def test_ingest_routes_and_audits(self, tmp_path):
        client, core = make_client(tmp_path, CONFIDENT_ABDO)
        response = client.post("/v1/ingest", content=dicom_blob(5))
        assert response.status_code == 200
        payload = response.json()
        assert payload["status"] == "routed"
        assert payload["class"] == "abdominal"
        assert len(core.audit.replay()) == 1

    def test_audit_since_filter(self, tmp_path):
        client, _ = make_client(tmp_path, CONFIDENT_ABDO)
        client.post("/v1/ingest", content=dicom_blob(6))
        records = client.get("/v1/audit").json()
        assert len(records) == 1
        ts = records[0]["ts"]
        assert client.get("/v1/audit", params={"since": ts}).json() == []
        assert len(client.get("/v1/audit", params={"since": "2000-01-01T00:00:00+00:00"}).json()) == 1

    def test_degraded_audit_gives_503(self, tmp_path, monkeypatch):
        client, core = make_client(tmp_path, CONFIDENT_ABDO)

        def explode(record):
            raise OSError(28, "No space left on device")

        monkeypatch.setattr(core.audit, "append", explode)
        assert client.post("/v1/ingest", content=dicom_blob(7)).status_code == 503
        # degraded mode sticks for ingest, classify still answers
        monkeypatch.undo()
        assert client.post("/v1/ingest", content=dicom_blob(8)).status_code == 503
        assert client.post("/v1/classify", content=dicom_blob(8)).status_code == 200


class TestReviewFlow:
    def _queued_client(self, tmp_path, **overrides):
        client, core = make_client(tmp_path, FixedProbabilityBackend(np.zeros(5)), **overrides)
        response = client.post("/v1/ingest", content=dicom_blob(10))
        assert response.json()["status"] == "queued_for_review"
        return client, core, response.json()["id"]

    def test_queue_lists_pending_item(self, tmp_path):
        client, _, item_id = self._queued_client(tmp_path)
        queue = client.get("/v1/review/queue").json()
        assert [entry["id"] for entry in queue] == [item_id]
        assert queue[0]["pending_round"] == 1
        assert queue[0]["max_prob"] == pytest.approx(0.2)

    def test_rendition_served(self, tmp_path):
        client, _, item_id = self._queued_client(tmp_path)
        response = client.get(f"/v1/images/{item_id}.png")
        assert response.status_code == 200
        assert response.headers["content-type"] == "image/png"
        assert response.content[:8] == bytes([0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A])
        assert client.get("/v1/images/unknown.png").status_code == 404

    def test_agreeing_rounds_set_consensus(self, tmp_path):
        client, core, item_id = self._queued_client(tmp_path)
        r1 = client.post(f"/v1/review/{item_id}/label", json={"reader": "alice", "round": 1, "class": 3})
        assert r1.status_code == 200
        r2 = client.post(f"/v1/review/{item_id}/label", json={"reader": "bob", "round": 2, "class": 3})
        assert r2.status_code == 200
        assert r2.json()["consensus"] == 3
        assert client.get("/v1/review/queue").json() == []

    def test_disagreeing_rounds_need_adjudication(self, tmp_path):
        client, _, item_id = self._queued_client(tmp_path)
        client.post(f"/v1/review/{item_id}/label", json={"reader": "alice", "round": 1, "class": 1})
        r2 = client.post(f"/v1/review/{item_id}/label", json={"reader": "bob", "round": 2, "class": 4})
        assert r2.json()["needs_adjudication"] is True
        assert r2.json()["consensus"] is None
        # still pending, now for adjudication
        queue = client.get("/v1/review/queue").json()
        assert queue[0]["pending_round"] == 3
        r3 = client.post(f"/v1/review/{item_id}/label", json={"reader": "carol", "round": 3, "class": 4})
        assert r3.json()["consensus"] == 4
        assert client.get("/v1/review/queue").json() == []

    def test_conflicts_and_unknown(self, tmp_path):
        client, _, item_id = self._queued_client(tmp_path)
        # wrong round first
        assert (
            client.post(f"/v1/review/{item_id}/label", json={"reader": "a", "round": 2, "class": 0}).status_code
            == 409
        )
        client.post(f"/v1/review/{item_id}/label", json={"reader": "a", "round": 1, "class": 0})
        # same reader cannot take round 2
        assert (
            client.post(f"/v1/review/{item_id}/label", json={"reader": "a", "round": 2, "class": 0}).status_code
            == 409
        )
        # adjudication before any disagreement
        assert (
            client.post(f"/v1/review/{item_id}/label", json={"reader": "c", "round": 3, "class": 0}).status_code
            == 409
        )
        # unknown item
        assert (
            client.post("/v1/review/nope/label", json={"reader": "a", "round": 1, "class": 0}).status_code == 404
        )
        # malformed body
        assert client.post(f"/v1/review/{item_id}/label", json={"reader": "b"}).status_code == 400
        assert (
            client.post(f"/v1/review/{item_id}/label", json={"reader": "b", "round": 2, "class": 9}).status_code
            == 400
        )

    def test_labeled_twice_after_consensus_conflicts(self, tmp_path):
        client, _, item_id = self._queued_client(tmp_path)
        client.post(f"/v1/review/{item_id}/label", json={"reader": "a", "round": 1, "class": 2})
        client.post(f"/v1/review/{item_id}/label", json={"reader": "b", "round": 2, "class": 2})
        response = client.post(f"/v1/review/{item_id}/label", json={"reader": "c", "round": 3, "class": 1})
        assert response.status_code == 409

    def test_disagreements_mode_skips_round_two_on_model_agreement(self, tmp_path):
        client, core, item_id = self._queued_client(tmp_path, second_round="disagreements")
        predicted = core.review.get(item_id).predicted
        response = client.post(
            f"/v1/review/{item_id}/label", json={"reader": "a", "round": 1, "class": predicted}
        )
        assert response.json()["consensus"] == predicted
        assert client.get("/v1/review/queue").json() == []

    def test_disagreements_mode_requires_round_two_on_mismatch(self, tmp_path):
        client, core, item_id = self._queued_client(tmp_path, second_round="disagreements")
        predicted = core.review.get(item_id).predicted
        other = (predicted + 1) % 5
        response = client.post(f"/v1/review/{item_id}/label", json={"reader": "a", "round": 1, "class": other})
        assert response.json()["consensus"] is None
        assert response.json()["pending_round"] == 2


class TestApiToken:
    def test_token_required_when_configured(self, tmp_path):
        client, _ = make_client(tmp_path, CONFIDENT_ABDO, api_token="sesame")
        assert client.get("/v1/review/queue").status_code == 401
        assert client.get("/v1/review/queue", headers={"X-Api-Token": "sesame"}).status_code == 200
        # health stays open for probes
        assert client.get("/healthz").status_code == 200
