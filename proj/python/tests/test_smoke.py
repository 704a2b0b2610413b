import json
import math
import os
import subprocess

import jsonschema
import pytest

import neighborly

REPORT_SCHEMA = {
    "type": "object",
    "required": ["config", "checks", "summary"],
    "properties": {
        "config": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "claim", "pass", "value", "tolerance"],
                "properties": {
                    "name": {"type": "string"},
                    "claim": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "value": {"type": ["number", "string", "null"]},
                    "tolerance": {"type": ["number", "string", "null"]},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["pass", "total", "failed"],
            "properties": {"pass": {"type": "boolean"}, "total": {"type": "integer"}},
        },
    },
}


def test_helix_point():
    p = neighborly.helix_point(8, 1, 2)
    assert p[0] == pytest.approx(math.pi / 2)
    assert p[2] == pytest.approx(1.0)


def test_outer_radius():
    assert neighborly.outer_radius(8) == pytest.approx(7.3712050128186041919, rel=1e-14)


def test_local_simplices_match_oracle():
    local = {tuple(k) for k in neighborly.local_simplices(5, 1, 0, 15)}
    brute = {tuple(k) for k in neighborly.delaunay_bruteforce(5, 1, 0, 15)}
    safe = lambda k: k[0] >= 3 and k[-1] <= 12
    assert {k for k in local if safe(k)} == {k for k in brute if safe(k)}


def test_cyclic():
    assert len(neighborly.gale_evenness(8, 4)) == 20
    facets = {tuple(f) for f in neighborly.cyclic_hull_facets(2, 1, 8)}
    assert facets == {tuple(f) for f in neighborly.gale_evenness(8, 4)}
    assert neighborly.cyclic(0, 2, 8)["summary"]["pass"]


def test_census():
    c = neighborly.census(16)
    assert (c["big_gons"], c["triangles"], c["quads"], c["unbounded_quads"], c["wedges"]) == (2, 2, 24, 2, 2)
    assert c["big_gon_sides"] == 31


def test_family():
    fam = neighborly.family(4, "symmetrized")
    assert len(fam) == 5
    assert all(len(m["facets"]) == 14 for m in fam)
    offs = neighborly.family_off(4)
    assert len(offs) == 5 and all(o.startswith("OFF\n") for o in offs)


def test_verify_report_schema():
    report = neighborly.verify(6)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["summary"]["pass"]
    assert report == neighborly.verify(6)


def test_errors_surface_as_value_errors():
    with pytest.raises(neighborly.GeometryError):
        neighborly.local_simplices(2, 1, 0, 10)
    with pytest.raises(ValueError):
        neighborly.verify(2)


@pytest.mark.skipif("NEIGHBORLY_CLI" not in os.environ, reason="command-line tool not provided")
def test_cli_report_schema(tmp_path):
    cli = os.environ["NEIGHBORLY_CLI"]
    out = tmp_path / "run"
    subprocess.run([cli, "verify", "--n", "7", "--out", str(out)], check=True, capture_output=True)
    report = json.loads((out / "report.json").read_text())
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["config"]["n"] == 7
    bad = subprocess.run([cli, "verify", "--n", "7", "--mode", "nope"], capture_output=True)
    assert bad.returncode == 64
