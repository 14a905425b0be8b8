"""HTTP API surface."""

import pytest
from fastapi.testclient import TestClient

from cnlkit.service import create_app

SAMPLE_TRACK = (
    "sensorA,0,MR41_PAN-EAV,2014-06-02T01:00:00,-12.47,130.84,270,12.5,"
    "merchant,ship,friendly,panama"
)


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def sid(client):
    r = client.post("/sessions", json={"teller": "Alex Kim", "utc_offset": "+09:30"})
    assert r.status_code == 200
    return r.json()["id"]


def test_create_session(client):
    r = client.post("/sessions", json={"teller": "T"})
    assert r.status_code == 200
    assert "id" in r.json()


def test_unknown_session_404(client):
    r = client.post("/sessions/nope/submit", json={"text": "Women stand."})
    assert r.status_code == 404


def test_submit_assert_and_query(client, sid):
    r = client.post(f"/sessions/{sid}/submit",
                    json={"text": "The woman stood in the house."})
    body = r.json()
    assert body["kind"] == "result" and body["act"] == "assert"
    r = client.post(f"/sessions/{sid}/submit", json={"text": "Who stood in the house?"})
    assert r.json()["answers"][0].startswith("The woman stood in the house before")


def test_submit_diagnostics(client, sid):
    r = client.post(f"/sessions/{sid}/submit", json={"text": "The florgle slept."})
    body = r.json()
    assert body["kind"] == "diagnostics"
    assert body["diagnostics"][0]["severity"] == "unknown_word"


def test_interpretations_and_choose(client, sid):
    r = client.post(f"/sessions/{sid}/submit",
                    json={"text": "The woman in the car read the message on the sign."})
    body = r.json()
    assert body["kind"] == "interpretations" and len(body["candidates"]) == 2
    ref = body["sentence_ref"]
    r = client.post(f"/sessions/{sid}/choose", json={"sentence_ref": ref, "index": 0})
    assert r.json()["status"] == "ok"
    r = client.post(f"/sessions/{sid}/choose", json={"sentence_ref": ref, "index": 0})
    assert r.status_code == 400  # stale


def test_tracks_and_generate(client, sid):
    r = client.post(f"/sessions/{sid}/tracks", json={"lines": [SAMPLE_TRACK, "bad,line"]})
    body = r.json()
    assert body["accepted"] == 1 and len(body["rejected"]) == 1
    r = client.post(f"/sessions/{sid}/submit",
                    json={"text": "Show merchant ship situation report on MR41_PAN-EAV"})
    assert any("MR41_PAN-EAV" in a for a in r.json()["answers"])
    r = client.post(f"/sessions/{sid}/generate",
                    json={"term": "woman(@(skc1,t_1,s_1),[definite,singular]),"
                                  "stands(@(skc1,t_1,s_1),[general_habitual])"})
    assert r.json()["sentence"] == "The woman stands."


def test_log_endpoint(client, sid):
    client.post(f"/sessions/{sid}/submit", json={"text": "Women stand."})
    r = client.get(f"/sessions/{sid}/log")
    entries = r.json()["entries"]
    assert entries and entries[0]["teller"] == "Alex Kim"
    assert entries[0]["command"] == "submit"


def test_precheck_endpoint(client, sid):
    r = client.post(f"/sessions/{sid}/precheck", json={"text": "The florgle slept."})
    diags = r.json()["diagnostics"]
    assert diags and diags[0]["severity"] == "unknown_word"
    assert diags[0]["span"] == [4, 11]


def test_sessions_are_isolated(client):
    a = client.post("/sessions", json={"teller": "A"}).json()["id"]
    b = client.post("/sessions", json={"teller": "B"}).json()["id"]
    client.post(f"/sessions/{a}/submit", json={"text": "The woman stood in the house."})
    r = client.post(f"/sessions/{b}/submit", json={"text": "Who stood in the house?"})
    assert r.json()["answers"] == ["No answer."]
