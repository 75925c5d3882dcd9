#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for command validation, service dispatch and the command line.
"""

import json
from unittest.mock import MagicMock, patch

import pytest

from planar_algebra.errors import InvalidParams
from planar_algebra.exactnum import params
from planar_algebra.reports import json_report
from planar_algebra.service import PlanarService, build_command


def test_default_action():
    """Test a verb without an action gets its first action."""
    assert build_command(verb="dims").action == "table"
    assert build_command(verb="indices", N=5, m=2).action == "index"


@pytest.mark.parametrize("options", [
    {"verb": "graph", "action": "bogus"},
    {"verb": "indices", "N": 5},
    {"verb": "skein", "action": "trace"},
    {"verb": "fusion", "action": "simples"},
    {"verb": "orbits", "N": 3, "k": 0, "l": 0},
    {"verb": "dims", "boxes": 5},
    {"verb": "dims", "N": 0},
    {"verb": "nonsense"},
])
def test_invalid_commands(options):
    """Test validation failures surface as InvalidParams."""
    with pytest.raises(InvalidParams):
        build_command(**options)


def test_dispatch_and_flush(app_settings):
    """Test run() calls the verb handler and flushes every engine."""
    service = PlanarService(app_settings)
    engine = MagicMock()
    service.engines["stub"] = engine
    with patch.object(PlanarService, "_dims", return_value=json_report("stub", {})) as handler:
        report = service.run(build_command(verb="dims"))
    handler.assert_called_once()
    engine.flush.assert_called_once()
    assert report.name == "stub"


def test_engines_are_shared(app_settings):
    """Test one engine per specialization."""
    service = PlanarService(app_settings)
    spec = service.specialization(2)
    assert service.engine(spec) is service.engine(service.specialization(2))
    assert service.specialization(None).kind == "generic"
    assert service.specialization(None, exact_generic=False).kind == "probe"


def test_cli_dims_table(runner):
    """Test the dimension table prints as CSV."""
    code, out = runner("dims", "--N", "3", "--max-cells", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "partition,size,hook_product,exact"
    assert lines[1].startswith("∅,0,1,1")


def test_cli_dims_json_with_floats(runner):
    """Test --json and --float on the dimension table."""
    code, out = runner("dims", "--N", "2", "--max-cells", "2", "--json", "--float", "6")
    assert code == 0
    rows = json.loads(out)
    assert {row["partition"]: row["float"] for row in rows}["1"] == "1.73205"


def test_cli_lattice(runner):
    """Test the YL(2) lattice with its loop counts."""
    code, out = runner("graph", "lattice", "--N", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["vertices"] == ["∅", "1", "2", "1,1"]
    assert set(payload["loops"]) == {"1", "2"}


def test_cli_automorphisms(runner):
    """Test YL(2) is a star with automorphism group S_3."""
    code, out = runner("graph", "automorphisms", "--N", "2")
    assert code == 0
    assert json.loads(out)["order"] == 6


def test_cli_equivariant_dot(runner):
    """Test the equivariantization graph as DOT."""
    code, out = runner("graph", "equivariant", "--N", "2", "--dot")
    assert code == 0
    assert out.startswith("graph equivariantization")
    assert out.count(" -- ") == 4


def test_cli_fusion(runner):
    """Test fusion simples, group and tensor at small N."""
    code, out = runner("fusion", "simples", "--N", "2")
    assert code == 0
    assert len(json.loads(out)["simples"]) == 4
    code, out = runner("fusion", "group", "--N", "3")
    assert json.loads(out)["order"] == 4
    code, out = runner("fusion", "tensor", "1", "--N", "2")
    assert json.loads(out)["summands"] == ["∅", "2", "1,1"]


def test_cli_trace(runner):
    """Test the trace of R² at two boxes."""
    code, out = runner("skein", "trace", "r1 r1")
    payload = json.loads(out)
    assert code == 0
    assert payload["m"] == 2
    assert payload["trace"] == str(params().delta ** 2 - 1)


def test_cli_homfly(runner):
    """Test the trefoil through the command line."""
    p = params()
    code, out = runner("skein", "homfly", "1 1 1")
    payload = json.loads(out)
    assert code == 0
    assert payload["braid"] == [1, 1, 1]
    assert payload["value"] == str(p.r * p.delta + p.z * p.delta ** 2 + p.z ** 2 * p.r * p.delta)


def test_cli_eval_file(runner, tmp_path):
    """Test evaluating a diagram file."""
    path = tmp_path / "circles.txt"
    path.write_text("circles=2")
    code, out = runner("skein", "eval", str(path))
    assert code == 0
    assert json.loads(out)["value"] == str(params().delta ** 2)


def test_cli_orbits(runner):
    """Test the graded branching of the (3,1,0) quotient."""
    code, out = runner("orbits", "branch", "--N", "3", "--k", "1", "--l", "0")
    assert code == 0
    assert len(json.loads(out)["rules"]) == 12


def test_cli_index(runner):
    """Test the staircase index at N=5, m=2."""
    code, out = runner("indices", "--N", "5", "--m", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["diagram"] == "2,2"
    assert payload["stabilizer_order"] == 3


@pytest.mark.parametrize("argv,error", [
    (("indices", "--N", "4", "--m", "2"), "divisibility_violated"),
    (("orbits", "--N", "3", "--k", "0", "--l", "0"), "invalid_params"),
    (("skein", "trace", "r1 ?"), "syntax_error"),
    (("skein", "trace", "h1 h3", "--boxes", "3"), "index_out_of_range"),
    (("verify", "far-commutation"), "invalid_params"),
])
def test_cli_errors(runner, argv, error):
    """Test library errors exit with 2 and a JSON error object."""
    code, out = runner(*argv)
    assert code == 2
    assert json.loads(out)["error"] == error


def test_cli_verify_dims(runner):
    """Test the dimension identities pass."""
    code, out = runner("verify", "dims", "--N", "3", "--max-cells", "4")
    payload = json.loads(out)
    assert code == 0
    assert payload["ok"]
    assert any(c["check"] == "boundary vanishing N=3" for c in payload["checks"])


def test_cli_verify_hecke(runner):
    """Test the Hecke checks, including self-adjoint symmetrizers."""
    code, out = runner("verify", "hecke")
    payload = json.loads(out)
    assert code == 0
    assert {c["check"]: c["ok"] for c in payload["checks"]} == {
        "branching completeness": True,
        "symmetrizer recursions agree": True,
        "symmetrizers are self-adjoint": True,
        "Murphy eigenvalues": True,
    }


def test_cli_verify_yang_baxter(runner):
    """Test the Yang-Baxter relation at N=2."""
    code, out = runner("verify", "yang-baxter", "--boxes", "3", "--N", "2")
    payload = json.loads(out)
    assert code == 0
    assert [c["check"] for c in payload["checks"]] == ["Yang-Baxter"]


def test_cli_certify(runner):
    """Test positivity and Casimir certificates at N=2."""
    code, out = runner("tower", "certify", "--N", "2", "--boxes", "2")
    assert code == 0
    levels = json.loads(out)["levels"]
    assert [level["m"] for level in levels] == [1, 2]


def test_cli_saves_reports(runner, monkeypatch, tmp_path):
    """Test reports are written when an output directory is configured."""
    monkeypatch.setenv("REPORT_OUTPUT_DIR", str(tmp_path / "out"))
    code, _ = runner("fusion", "group", "--N", "2")
    assert code == 0
    assert (tmp_path / "out" / "invertibles-N2.json").exists()
