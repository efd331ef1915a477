"""HTTP service routes, schema validation, and request round-trips."""
from __future__ import annotations

import math

import pytest
from fastapi.testclient import TestClient
from pydantic import ValidationError

from curvedpauli.service.app import app
from curvedpauli.service.handlers import run_spectrum, run_verify
from curvedpauli.service.schemas import (
    EvalRequest,
    SpectrumRequest,
    VerifyReport,
    VerifyRequest,
)


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_spectrum_route_lists_the_quantized_levels(client):
    resp = client.post("/spectrum", json={"model": "ds", "mass": 1.0})
    assert resp.status_code == 200
    body = resp.json()
    assert body["rows"][0] == {"j": "1/2", "n": 0, "two_me": 2.25, "energy": 1.125}
    assert len(body["rows"]) == 6   # j in {1/2, 3/2} x n in {0, 1, 2}


def test_spectrum_route_refuses_the_oscillating_model(client):
    resp = client.post("/spectrum", json={"model": "ads"})
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"] == "unsupported"
    assert "no quantized spectrum" in body["detail"]


def test_spectrum_rejects_unknown_fields(client):
    resp = client.post("/spectrum", json={"model": "ds", "bogus": 1})
    assert resp.status_code == 422
    assert "error" not in resp.json()   # schema errors use FastAPI's shape


def test_eval_route_row_grid_and_stationary_density(client):
    resp = client.post(
        "/eval", json={"model": "ds", "grid_r": 5, "grid_t": 3, "theta": 0.8}
    )
    assert resp.status_code == 200
    rows = resp.json()["rows"]
    assert len(rows) == 15
    by_r: dict[float, list[float]] = {}
    for row in rows:
        by_r.setdefault(row["r"], []).append(row["psi_sq"])
    for values in by_r.values():
        assert max(values) - min(values) <= 1e-12 * max(1.0, max(values))


def test_eval_route_config_errors(client):
    missing = client.post("/eval", json={"model": "ads"})
    assert missing.status_code == 400
    assert missing.json()["error"] == "invalid-config"
    extra = client.post("/eval", json={"model": "ds", "energy": 2.0})
    assert extra.status_code == 400
    empty = client.post("/eval", json={"model": "ds", "grid_r": 0})
    assert empty.status_code == 400
    bad_j = client.post("/eval", json={"model": "ds", "j": "1/3"})
    assert bad_j.status_code == 422


def test_verify_route_small_suite_passes(client):
    resp = client.post(
        "/verify", json={"model": "ds", "j_max": "1/2", "n_max": 0}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["pass"] is True
    assert len(body["results"]) == 6   # 2 parities x 3 engines
    ids = {row["equation_id"] for row in body["results"]}
    assert ids == {"RadialODE_1_18a", "PauliPDE_1_15", "ReducedSystem_1_12"}
    for row in body["results"]:
        assert row["max_abs"] < 1e-7
        assert row["mode"]["model"] == "ds"
        assert set(row["grid"]) == {"r_points", "t_points", "margin"}


def test_verify_route_error_injection_flags_the_radial_ode(client):
    resp = client.post(
        "/verify",
        json={
            "model": "ds",
            "j_max": "1/2",
            "n_max": 0,
            "inject_error": {"e-perturb": 0.01},
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["pass"] is False
    failing = {r["equation_id"] for r in body["results"] if r["max_abs"] >= 1e-7}
    assert "RadialODE_1_18a" in failing


def test_verify_route_unknown_injection_key(client):
    resp = client.post("/verify", json={"inject_error": {"bogus": 0.1}})
    assert resp.status_code == 400


def test_run_config_round_trips_through_the_report(client):
    request = {
        "model": "ds",
        "mass": 2.0,
        "j_max": "3/2",
        "n_max": 1,
        "grid_r": 11,
        "grid_t": 3,
        "tolerance": 1e-6,
    }
    resp = client.post("/verify", json=request)
    assert resp.status_code == 200
    echoed = VerifyRequest.model_validate(resp.json()["run_config"])
    assert echoed == VerifyRequest.model_validate(request)


def test_schema_validation_rules():
    with pytest.raises(ValidationError):
        SpectrumRequest(j_max="1/3")
    with pytest.raises(ValidationError):
        SpectrumRequest(n_max=-1)
    with pytest.raises(ValidationError):
        EvalRequest(j="0.4")
    with pytest.raises(ValidationError):
        VerifyRequest(deltas=[2])
    with pytest.raises(ValidationError):
        VerifyRequest(model="other")
    req = VerifyRequest(deltas=[-1], j_max="5/2")
    assert req.deltas == [-1] and req.j_max == "5/2"


def test_handlers_are_usable_without_the_http_layer():
    resp = run_spectrum(SpectrumRequest(model="ds", mass=2.0, j_max="1/2", n_max=0))
    assert resp.rows[0].energy == 1.125 / 2.0
    report = run_verify(VerifyRequest(model="ads", j_max="1/2", energies=[1.0]))
    assert isinstance(report, VerifyReport)
    assert report.passed
    assert len(report.results) == 6
    assert {"AdSRadialODE_2_11a", "AdSPDE_2_8", "ReducedSystem_1_12"} == {
        r.equation_id for r in report.results
    }


def test_report_serialization_uses_the_pass_alias():
    report = run_verify(VerifyRequest(model="ds", j_max="1/2", n_max=0))
    dumped = report.model_dump(by_alias=True, exclude_none=True)
    assert "pass" in dumped and "passed" not in dumped
    assert "scaling" not in dumped   # no mass sweep requested
    parsed = VerifyReport.model_validate(dumped)
    assert parsed.passed == report.passed


def test_verify_scaling_section(client):
    resp = client.post(
        "/verify",
        json={
            "model": "ds",
            "j_max": "1/2",
            "n_max": 0,
            "grid_r": 11,
            "grid_t": 3,
            "masses": [10.0, 20.0, 40.0],
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["pass"] is True
    (srow,) = body["scaling"]
    assert srow["equation_id"] == "RelativisticFirstOrder_1_9"
    assert srow["monotone"] is True
    assert srow["ratios_in_range"] is True
    assert len(srow["residuals"]) == 3 and len(srow["ratios"]) == 2
    with pytest.raises(Exception):
        client.post("/verify", json={"masses": [10.0]}).raise_for_status()


def test_verify_masses_must_increase(client):
    resp = client.post("/verify", json={"model": "ds", "masses": [20.0, 10.0]})
    assert resp.status_code == 400
