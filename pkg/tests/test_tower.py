#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the tower of box algebras: structure, blocks, Bratteli data and certificates.
"""

from unittest.mock import patch

import mpmath
import pytest

from planar_algebra.errors import InvalidParams
from planar_algebra.exactnum import Specialization
from planar_algebra.skein import SkeinEngine, parse_plain_word
from planar_algebra.tower import (block_traces, bratteli, brauer_count, build_structure, casimir_certificate,
                                  decompose_level, positivity_certificate)
from planar_algebra.young import EMPTY, YoungDiagram


def Y(*rows):
    return YoungDiagram(rows)


@pytest.fixture
def probe_engine(app_settings):
    """Fixture for an engine at the exact stand-in for generic q."""
    return SkeinEngine(app_settings, Specialization.probe(app_settings.arithmetic.probe_point))


@pytest.fixture
def n2_engine(app_settings, at_n2):
    """Fixture for an engine at N=2."""
    return SkeinEngine(app_settings, at_n2)


def _sizes(blocks):
    return {b.label: b.size for b in blocks}


def test_brauer_count():
    """Test (2m-1)!!."""
    assert [brauer_count(m) for m in range(1, 5)] == [1, 3, 15, 105]


def test_two_box_structure(probe_engine):
    """Test level 2 is three-dimensional with h·h = δh."""
    S = build_structure(probe_engine, 2)
    assert S.dim == 3
    assert S.kernel_dim == 0
    h = S.coords_of_word(parse_plain_word("h1"))
    assert S.multiply(h, h).to_list() == (h * S.spec.delta).to_list()


def test_unit_acts_as_identity(probe_engine):
    """Test 1·x = x for the unit vector."""
    S = build_structure(probe_engine, 2)
    for j in range(S.dim):
        assert S.multiply(S.unit, S.basis_vector(j)).to_list() == S.basis_vector(j).to_list()


def test_quotient_dimensions_at_n2(n2_engine):
    """Test dimensions 3 and 9 with kernels 0 and 6 at N=2."""
    S2 = build_structure(n2_engine, 2)
    S3 = build_structure(n2_engine, 3)
    assert (S2.dim, S2.kernel_dim) == (3, 0)
    assert (S3.dim, S3.kernel_dim) == (9, 6)


def test_center_dimension_at_n2(n2_engine):
    """Test level 3 at N=2 is a single matrix block."""
    assert build_structure(n2_engine, 3).center().shape[1] == 1


def test_four_boxes_need_the_flag(probe_engine):
    """Test level 4 is refused unless enabled."""
    with pytest.raises(InvalidParams):
        build_structure(probe_engine, 4)


def test_level_two_blocks_at_n3(app_settings):
    """Test level 2 at N=3 splits into three one-dimensional blocks."""
    engine = SkeinEngine(app_settings, Specialization.root_of_unity(3))
    S = build_structure(engine, 2)
    with mpmath.workprec(128):
        blocks = decompose_level(S, 2024, 1e-30)
    assert _sizes(blocks) == {EMPTY: 1, Y(2): 1, Y(1, 1): 1}


def test_block_traces_are_quantum_dimensions(app_settings):
    """Test block traces at N=3, level 2."""
    spec = Specialization.root_of_unity(3)
    engine = SkeinEngine(app_settings, spec)
    traces = block_traces(engine, build_structure(engine, 2))
    assert traces[EMPTY] == spec.one
    assert set(traces) == {EMPTY, Y(2), Y(1, 1)}


def test_bratteli_at_n2(n2_engine):
    """Test the Bratteli diagram of YL(2) to depth 3."""
    data = bratteli(n2_engine, 3)
    assert _sizes(data.levels[0]) == {Y(1): 1}
    assert _sizes(data.levels[1]) == {EMPTY: 1, Y(2): 1, Y(1, 1): 1}
    assert _sizes(data.levels[2]) == {Y(1): 3}
    assert [data.dimension(m) for m in (1, 2, 3)] == [1, 3, 9]
    assert data.inclusions[0] == {(Y(1), EMPTY): 1, (Y(1), Y(2)): 1, (Y(1), Y(1, 1)): 1}
    assert "3:1" in data.to_dot()


@pytest.mark.slow
def test_bratteli_generic(probe_engine):
    """Test level-3 block sizes 1, 2, 1, 3 at generic q."""
    data = bratteli(probe_engine, 3)
    assert _sizes(data.levels[2]) == {Y(3): 1, Y(2, 1): 2, Y(1, 1, 1): 1, Y(1): 3}
    assert data.dimension(3) == 15


def test_casimir_certificate_at_n2(n2_engine):
    """Test the Casimir characteristic polynomial on the center at level 2."""
    S = build_structure(n2_engine, 2)
    with mpmath.workprec(128):
        blocks = decompose_level(S, 2024, 1e-30)
    certificate = casimir_certificate(S, blocks)
    assert certificate.holds
    assert certificate.found == certificate.expected


def test_positivity_at_n2(n2_engine, app_settings):
    """Test the quotient Gram is positive definite at levels 2 and 3."""
    arith = app_settings.arithmetic
    two = positivity_certificate(build_structure(n2_engine, 2), arith.precision_bits, arith.max_precision_bits)
    three = positivity_certificate(build_structure(n2_engine, 3), arith.precision_bits, arith.max_precision_bits)
    assert two.positive_definite and two.kernel_dim == 0
    assert three.positive_definite and three.kernel_dim == 6
    assert three.to_json()["rank"] == 9


def test_positivity_reads_a_computed_gram(n2_engine, app_settings):
    """Test the certified Gram at N=2 is built from both triangles, not by conjugation."""
    with patch.object(n2_engine, "gram", wraps=n2_engine.gram) as gram:
        S = build_structure(n2_engine, 2)
    assert gram.call_args.kwargs["hermitian"] is False
    assert positivity_certificate(S, app_settings.arithmetic.precision_bits).hermitian


def test_positivity_needs_a_root_of_unity(probe_engine):
    """Test positivity is refused away from roots of unity."""
    with pytest.raises(InvalidParams):
        positivity_certificate(build_structure(probe_engine, 2))


def test_structure_json(n2_engine):
    """Test the JSON export of a level."""
    data = build_structure(n2_engine, 2).to_json()
    assert data["specialization"] == "N=2"
    assert data["dimension"] == 3
    assert len(data["gram"]) == 3
