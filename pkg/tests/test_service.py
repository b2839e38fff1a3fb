from __future__ import annotations

import io
import time
import zipfile

import pytest
from fastapi.testclient import TestClient

from oppgen.service import create_app

from corpus_builders import plain_text_fixture_files


@pytest.fixture
def client(tmp_path):
    app = create_app(str(tmp_path / "store"))
    with TestClient(app) as c:
        yield c


def _wait_for_job(client, project_id, job_id, timeout=60.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        job = client.get(f"/projects/{project_id}/jobs/{job_id}").json()
        if job["state"] in ("succeeded", "failed"):
            return job
        time.sleep(0.05)
    raise AssertionError("job did not finish in time")


def _make_project(client, name="svc test"):
    resp = client.post(
        "/projects",
        json={"name": name, "config": {"seed": 3, "embedding_dimension": 64}},
    )
    assert resp.status_code == 201, resp.text
    return resp.json()["project_id"]


def _upload_fixtures(client, project_id, tmp_path, n=3):
    for path in plain_text_fixture_files(tmp_path / "fixtures", n):
        resp = client.post(
            f"/projects/{project_id}/assets",
            files={"file": (path.name, path.read_bytes(), "text/plain")},
        )
        assert resp.status_code == 201, resp.text


def _run_job(client, project_id, kind, params=None):
    resp = client.post(
        f"/projects/{project_id}/jobs", json={"kind": kind, "params": params or {}}
    )
    assert resp.status_code == 202, resp.text
    job = _wait_for_job(client, project_id, resp.json()["job_id"])
    assert job["state"] == "succeeded", job
    return job


def _prepared_project(client, tmp_path):
    project_id = _make_project(client)
    _upload_fixtures(client, project_id, tmp_path)
    _run_job(client, project_id, "process_assets")
    _run_job(client, project_id, "discover_spaces")
    _run_job(client, project_id, "describe_spaces")
    return project_id


def test_create_project_and_duplicate(client):
    _make_project(client, "alpha")
    resp = client.post("/projects", json={"name": "alpha"})
    assert resp.status_code == 409
    assert resp.json()["code"] == "DuplicateName"


def test_unknown_project_404(client):
    resp = client.get("/projects/nope")
    assert resp.status_code == 404
    assert resp.json()["code"] == "UnknownProject"


def test_config_not_echoed_raw(client):
    resp = client.post(
        "/projects",
        json={
            "name": "masked",
            "config": {"textgen_provider": "https://llm.internal/api?key=secret"},
        },
    )
    assert resp.status_code == 201
    assert "secret" not in resp.text
    assert resp.json()["config"]["textgen_provider"] == "remote"


def test_spaces_before_discovery_conflict(client, tmp_path):
    project_id = _make_project(client)
    resp = client.get(f"/projects/{project_id}/spaces?granularity=broad")
    assert resp.status_code == 409
    assert resp.json()["code"] == "StageNotReady"


def test_full_job_pipeline(client, tmp_path):
    project_id = _prepared_project(client, tmp_path)
    spaces = client.get(f"/projects/{project_id}/spaces?granularity=broad").json()
    assert 4 <= len(spaces["spaces"]) <= 8
    for space in spaces["spaces"]:
        assert space["description"].startswith("This area is")
        assert space["map_xy"] is not None

    generate = client.post(
        f"/projects/{project_id}/generate",
        json={
            "kind": "business",
            "space_ids": [spaces["spaces"][0]["space_id"]],
            "novelty_level": "highly_unusual",
            "custom_text": "support seaside towns",
        },
    )
    assert generate.status_code == 202
    job = _wait_for_job(client, project_id, generate.json()["job_id"])
    assert job["state"] == "succeeded"
    batch = job["result"]
    assert len(batch["opportunities"]) == 10

    listed = client.get(f"/projects/{project_id}/opportunities?kind=business&depth=0").json()
    assert len(listed) == 10

    pivot = client.post(
        f"/projects/{project_id}/pivot",
        json={
            "kind": "business",
            "space_ids": [spaces["spaces"][0]["space_id"]],
            "novelty_level": "highly_unusual",
            "parent_opportunity_id": listed[0]["opportunity_id"],
        },
    )
    job = _wait_for_job(client, project_id, pivot.json()["job_id"])
    assert job["state"] == "succeeded"
    depth1 = client.get(f"/projects/{project_id}/opportunities?depth=1").json()
    assert len(depth1) == 10
    assert all(o["parent_opportunity_id"] == listed[0]["opportunity_id"] for o in depth1)


def test_generate_with_four_qualities_rejected(client, tmp_path):
    project_id = _prepared_project(client, tmp_path)
    spaces = client.get(f"/projects/{project_id}/spaces?granularity=broad").json()
    resp = client.post(
        f"/projects/{project_id}/generate",
        json={
            "kind": "business",
            "space_ids": [spaces["spaces"][0]["space_id"]],
            "novelty_level": "balanced",
            "qualities": ["greener", "healthier", "younger", "inspirational"],
        },
    )
    assert resp.status_code == 400
    assert resp.json()["code"] == "InvalidParams"


def test_job_polling_stable_after_finish(client, tmp_path):
    project_id = _make_project(client)
    _upload_fixtures(client, project_id, tmp_path)
    job = _run_job(client, project_id, "process_assets")
    again = client.get(f"/projects/{project_id}/jobs/{job['job_id']}").json()
    assert again["state"] == "succeeded"
    assert again["progress"] == 100


def test_rate_and_compare_roundtrip(client, tmp_path):
    project_id = _prepared_project(client, tmp_path)
    spaces = client.get(f"/projects/{project_id}/spaces?granularity=broad").json()
    space_id = spaces["spaces"][0]["space_id"]
    ids_by_novelty = {}
    for novelty in ("very_prototypical", "highly_unusual"):
        resp = client.post(
            f"/projects/{project_id}/generate",
            json={"kind": "policy", "space_ids": [space_id], "novelty_level": novelty},
        )
        job = _wait_for_job(client, project_id, resp.json()["job_id"])
        ids = [o["opportunity_id"] for o in job["result"]["opportunities"]]
        rate = client.post(
            f"/projects/{project_id}/rate",
            json={"opportunity_ids": ids, "challenge": "seaside towns", "kind": "policy"},
        )
        job = _wait_for_job(client, project_id, rate.json()["job_id"])
        assert job["state"] == "succeeded"
        ids_by_novelty[novelty] = ids

    compare = client.post(
        f"/projects/{project_id}/compare",
        json={
            "set_a": ids_by_novelty["very_prototypical"],
            "set_b": ids_by_novelty["highly_unusual"],
        },
    )
    assert compare.status_code == 200
    reports = compare.json()["reports"]
    assert {r["metric"] for r in reports} == {"novelty", "usefulness"}
    assert all("z" in r for r in reports)


def test_export_import_roundtrip_via_api(client, tmp_path):
    project_id = _prepared_project(client, tmp_path)
    archive = client.get(f"/projects/{project_id}/export")
    assert archive.status_code == 200
    names = zipfile.ZipFile(io.BytesIO(archive.content)).namelist()
    assert f"{project_id}/project.json" in names

    imported = client.post(
        "/projects/import?as_id=copied-project", content=archive.content
    )
    assert imported.status_code == 201
    assert imported.json()["project_id"] == "copied-project"
    spaces = client.get("/projects/copied-project/spaces?granularity=broad").json()
    assert len(spaces["spaces"]) >= 4


def test_spaces_report_format(client, tmp_path):
    project_id = _prepared_project(client, tmp_path)
    resp = client.get(f"/projects/{project_id}/spaces?granularity=broad&format=report")
    assert resp.status_code == 200
    report = resp.json()
    assert report["granularity"] == "broad"
    assert all(
        set(s) == {"id", "terms", "member_count", "distinct_term_count"}
        for s in report["spaces"]
    )
