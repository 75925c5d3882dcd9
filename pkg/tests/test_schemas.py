#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the report schemas.
"""

import json

import pytest
from pydantic import ValidationError

from planar_algebra.errors import DslSyntaxError, NotInTruncation
from planar_algebra.fuse import fusion_data, graded_branching, invertible_group, quotient_simples, subfactor_indices
from planar_algebra.reports import json_report
from planar_algebra.schemas import SCHEMAS, export_schemas, validate
from planar_algebra.skein import SkeinEngine
from planar_algebra.tower import build_structure


def test_library_payloads_validate():
    """Test the JSON forms of fusion objects match their schemas."""
    validate("fusion", fusion_data(3).to_json(float_digits=8))
    validate("invertibles", invertible_group(4).to_json())
    Q = quotient_simples(3, 1, 1)
    validate("quotient", Q.to_json())
    validate("branching", graded_branching(Q).to_json())
    validate("index", subfactor_indices(5, 2).to_json())


def test_structure_payload_validates(app_settings, at_n2):
    """Test a tower level at N=2 matches its schema."""
    validate("structure", build_structure(SkeinEngine(app_settings, at_n2), 2).to_json())


def test_error_payloads_validate():
    """Test error objects with and without details."""
    validate("error", DslSyntaxError("unexpected '?'", position=3).to_dict())
    validate("error", NotInTruncation("[4] is not in Y(2)").to_dict())


def test_unknown_keys_are_rejected():
    """Test a payload with an extra key fails validation."""
    payload = {"N": 2, "object": "1", "summands": ["∅"], "extra": 1}
    with pytest.raises(ValidationError):
        validate("tensor", payload)
    with pytest.raises(ValidationError):
        json_report("tensor", payload, schema="tensor")


def test_inclusions_use_from_and_to():
    """Test the Bratteli schema reads the 'from' and 'to' keys."""
    validate("bratteli", {"specialization": "N=2", "levels": [],
                          "inclusions": [[{"from": "1", "to": "2", "multiplicity": 1}]]})


def test_export_schemas(tmp_path):
    """Test one JSON Schema file per report model."""
    paths = export_schemas(tmp_path / "schemas")
    assert len(paths) == len(SCHEMAS)
    index = json.loads((tmp_path / "schemas" / "index.schema.json").read_text())
    assert set(index["required"]) >= {"N", "m", "diagram", "stabilizer_order", "exact", "float"}
    bratteli = json.loads((tmp_path / "schemas" / "bratteli.schema.json").read_text())
    assert "from" in bratteli["$defs"]["Inclusion"]["properties"]
