"""Tests for the CLI, the HTTP service and the artifact store."""

from __future__ import annotations

import json
import time
from pathlib import Path

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from reprolint.cli import main
from reprolint.service import create_app
from reprolint.store import ArtifactStore

FIXTURES = Path(__file__).parent / "fixtures"
APP = FIXTURES / "expensedroid.app.json"
REPORT = FIXTURES / "reports" / "02-missing-two.txt"


@pytest.fixture()
def runner():
    return CliRunner()


# --- store ---------------------------------------------------------------------


def test_store_roundtrip(tmp_path):
    store = ArtifactStore(tmp_path / "data")
    artifact_id = store.put("report", b"payload", meta={"x": 1})
    assert store.get(artifact_id) == b"payload"
    assert store.meta(artifact_id) == {"kind": "report", "meta": {"x": 1}}
    assert store.get("missing") is None


def test_store_content_addressing(tmp_path):
    store = ArtifactStore(tmp_path / "data")
    first = store.put("app", b"same-bytes")
    second = store.put("app", b"same-bytes")
    assert first == second
    assert [aid for aid, _ in store.list_kind("app")] == [first]


# --- CLI -------------------------------------------------------------------------


def test_cli_explore_writes_cache(runner, tmp_path):
    out = tmp_path / "cache.json"
    result = runner.invoke(main, ["explore", "--app", str(APP), "--budget", "200",
                                  "--out", str(out)])
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert len(doc["vertices"]) == 11


def test_cli_explore_budget_one(runner, tmp_path):
    out = tmp_path / "cache.json"
    result = runner.invoke(main, ["explore", "--app", str(APP), "--budget", "1",
                                  "--out", str(out)])
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    assert len(doc["vertices"]) == 2  # start + initial screen


def test_cli_explore_rerun_byte_identical(runner, tmp_path):
    out = tmp_path / "cache.json"
    runner.invoke(main, ["explore", "--app", str(APP), "--budget", "200", "--out", str(out)])
    first = out.read_bytes()
    runner.invoke(main, ["explore", "--app", str(APP), "--budget", "200", "--out", str(out)])
    assert out.read_bytes() == first


def test_cli_explore_missing_app_exits_2(runner, tmp_path):
    result = runner.invoke(main, ["explore", "--app", str(tmp_path / "nope.json"),
                                  "--budget", "5", "--out", str(tmp_path / "o.json")])
    assert result.exit_code == 2


def test_cli_assess_end_to_end(runner, tmp_path):
    result = runner.invoke(main, ["assess", "--report", str(REPORT), "--app", str(APP),
                                  "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    written = sorted(p.name for p in tmp_path.iterdir())
    assert len(written) == 2
    assert written[0].endswith(".report.html")
    assert written[1].endswith(".report.json")
    assert "missing steps" in result.output


def test_cli_assess_json_only_single_artifact(runner, tmp_path):
    result = runner.invoke(main, ["assess", "--report", str(REPORT), "--app", str(APP),
                                  "--out", str(tmp_path), "--format", "json"])
    assert result.exit_code == 0
    assert len(list(tmp_path.iterdir())) == 1


def test_cli_assess_missing_app_exits_2(runner, tmp_path):
    result = runner.invoke(main, ["assess", "--report", str(REPORT),
                                  "--app", str(tmp_path / "ghost.json"),
                                  "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_cli_assess_invalid_app_schema_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"version": 1, "appName": "X", "initialScreen": "ghost",
                               "screens": []}))
    result = runner.invoke(main, ["assess", "--report", str(REPORT), "--app", str(bad),
                                  "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_cli_assess_uses_graph_cache(runner, tmp_path):
    cache = tmp_path / "cache.json"
    runner.invoke(main, ["explore", "--app", str(APP), "--budget", "200", "--out", str(cache)])
    result = runner.invoke(main, ["assess", "--report", str(REPORT), "--app", str(APP),
                                  "--graph-cache", str(cache), "--out", str(tmp_path / "o")])
    assert result.exit_code == 0, result.output


def test_cli_assess_with_sidecar_labels(runner, tmp_path):
    report = tmp_path / "r.txt"
    report.write_text("Looking at the main screen colors.\n")
    labels = tmp_path / "labels.txt"
    labels.write_text("O\n")
    result = runner.invoke(main, ["assess", "--report", str(report), "--app", str(APP),
                                  "--out", str(tmp_path / "o"), "--labels", str(labels)])
    assert result.exit_code == 0, result.output
    assert "no steps to reproduce" in result.output


# --- HTTP API ---------------------------------------------------------------------


@pytest.fixture()
def client(tmp_path):
    app = create_app(data_dir=tmp_path / "data", workers=2)
    with TestClient(app) as client:
        yield client


def upload_app(client) -> str:
    doc = json.loads(APP.read_text())
    response = client.post("/api/v1/apps", json=doc)
    assert response.status_code == 201, response.text
    return response.json()["appId"]


def wait_for_job(client, job_id: str, timeout: float = 30.0) -> dict:
    deadline = time.time() + timeout
    while time.time() < deadline:
        job = client.get(f"/api/v1/jobs/{job_id}").json()
        if job["status"] in ("done", "failed"):
            return job
        time.sleep(0.05)
    raise AssertionError("job did not finish in time")


def test_upload_and_list_apps(client):
    app_id = upload_app(client)
    listing = client.get("/api/v1/apps").json()
    assert {"appId": app_id, "appName": "Expensedroid", "screens": 10} in listing["apps"]


def test_upload_invalid_app_is_422(client):
    response = client.post("/api/v1/apps", json={"version": 1})
    assert response.status_code == 422


def test_malformed_body_is_400(client):
    response = client.post("/api/v1/assess", content=b"{not json",
                           headers={"content-type": "application/json"})
    assert response.status_code == 400


def test_assess_unknown_app_is_404(client):
    response = client.post("/api/v1/assess",
                           json={"reportText": "Open the app.", "appId": "nope"})
    assert response.status_code == 404


def test_unknown_job_and_report_are_404(client):
    assert client.get("/api/v1/jobs/ghost").status_code == 404
    assert client.get("/api/v1/reports/ghost").status_code == 404
    assert client.get("/api/v1/wireframes/ghost").status_code == 404


def test_assess_job_lifecycle(client):
    app_id = upload_app(client)
    response = client.post("/api/v1/assess", json={
        "reportText": REPORT.read_text(),
        "appId": app_id,
        "config": {"exploreBudget": 200},
    })
    assert response.status_code == 202
    job = wait_for_job(client, response.json()["jobId"])
    assert job["status"] == "done", job
    report_id = job["resultRef"]

    got = client.get(f"/api/v1/reports/{report_id}")
    assert got.status_code == 200
    doc = got.json()
    kinds = [[a["kind"] for a in e["annotations"]] for e in doc["s2rs"]]
    assert kinds == [["HQ"], ["HQ", "MS"]]

    page = client.get(f"/api/v1/reports/{report_id}", headers={"accept": "text/html"})
    assert page.status_code == 200
    assert page.headers["content-type"].startswith("text/html")
    assert "<svg" in page.text

    ref = doc["s2rs"][1]["annotations"][1]["wireframeRefs"][0]
    svg = client.get(f"/api/v1/wireframes/{ref}")
    assert svg.status_code == 200
    assert svg.headers["content-type"].startswith("image/svg+xml")
    highlighted = client.get(f"/api/v1/wireframes/{ref}", params={"highlight": "btn_settings"})
    assert highlighted.text != svg.text


def test_assess_zero_step_report_completes(client):
    app_id = upload_app(client)
    response = client.post("/api/v1/assess", json={
        "reportText": "The colors look wrong to me.",
        "appId": app_id,
        "config": {"exploreBudget": 200},
    })
    job = wait_for_job(client, response.json()["jobId"])
    assert job["status"] == "done"
    doc = client.get(f"/api/v1/reports/{job['resultRef']}").json()
    assert doc["s2rs"] == []
    assert "diagnostics" in doc


def test_assess_bad_config_is_422(client):
    app_id = upload_app(client)
    response = client.post("/api/v1/assess", json={
        "reportText": "Open the app.", "appId": app_id, "config": {"bogusKey": 1},
    })
    assert response.status_code == 422


def test_cli_and_http_reports_byte_identical(client, runner, tmp_path):
    app_id = upload_app(client)
    response = client.post("/api/v1/assess", json={
        "reportText": REPORT.read_text(), "appId": app_id,
        "config": {"exploreBudget": 200},
    })
    job = wait_for_job(client, response.json()["jobId"])
    http_bytes = client.get(f"/api/v1/reports/{job['resultRef']}").content

    cache = tmp_path / "cache.json"
    runner.invoke(main, ["explore", "--app", str(APP), "--budget", "200", "--out", str(cache)])
    out = tmp_path / "out"
    result = runner.invoke(main, ["assess", "--report", str(REPORT), "--app", str(APP),
                                  "--graph-cache", str(cache), "--out", str(out),
                                  "--format", "json"])
    assert result.exit_code == 0
    cli_bytes = next(out.glob("*.report.json")).read_bytes()
    assert cli_bytes == http_bytes


def test_app_store_roundtrip_revalidates(client):
    app_id = upload_app(client)
    # a second upload of the same document is the same artifact
    assert upload_app(client) == app_id
