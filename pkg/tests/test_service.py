from __future__ import annotations

from fastapi.testclient import TestClient

from skewpbw import __version__, corpus
from skewpbw.service.app import app

client = TestClient(app)


def test_health():
    response = client.get("/v1/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "version": __version__}


def test_check_endpoint_quantum_plane():
    response = client.post(
        "/v1/check",
        json={"source": corpus.source("quantum_plane"), "name": "quantum_plane"},
    )
    assert response.status_code == 200
    doc = response.json()
    assert doc["tool_version"] == __version__
    assert doc["presentation_name"] == "quantum_plane"
    assert all(check["pass"] for check in doc["checks"])


def test_check_endpoint_reports_failures():
    response = client.post(
        "/v1/check", json={"source": corpus.source("inconsistent_control")}
    )
    assert response.status_code == 200
    doc = response.json()
    assert any(not check["pass"] for check in doc["checks"])


def test_nf_endpoint():
    response = client.post(
        "/v1/nf",
        json={"source": corpus.source("weyl_a1"), "expression": "x*t*t"},
    )
    assert response.status_code == 200
    assert response.json()["data"]["normal_form"] == "t^2*x + 2*t"


def test_nf_strategy_field_validated():
    response = client.post(
        "/v1/nf",
        json={"source": corpus.source("weyl_a1"), "expression": "x", "strategy": "sideways"},
    )
    assert response.status_code == 422


def test_parse_error_maps_to_400():
    response = client.post("/v1/check", json={"source": "vars x, y;\nrel y*x = bogus*x*y;\n"})
    assert response.status_code == 400
    assert "bogus" in response.json()["detail"]


def test_points_endpoint_symbolic():
    response = client.post(
        "/v1/points",
        json={"source": corpus.source("quantum_plane"), "symbolic": True},
    )
    assert response.status_code == 200
    doc = response.json()
    assert doc["data"]["locus"] == {"kind": "kernel_always_nonzero"}
    assert doc["data"]["matrix"] == [["u_y", "-q*u_x"]]


def test_report_endpoint_with_specialization():
    response = client.post(
        "/v1/report",
        json={"source": corpus.source("quantum_plane"), "assign": {"q": "5"}},
    )
    assert response.status_code == 200
    doc = response.json()
    assert doc["data"]["properties"]["noetherian"]["applies"] == "yes"


def test_cli_and_service_agree():
    from skewpbw.service.handlers import run_check
    from skewpbw.service.schemas import CheckRequest

    req = CheckRequest(source=corpus.source("sklyanin_c0"), name="sklyanin_c0")
    in_process = run_check(req).model_dump(by_alias=True)
    over_http = client.post(
        "/v1/check", json={"source": corpus.source("sklyanin_c0"), "name": "sklyanin_c0"}
    ).json()
    assert in_process == over_http
