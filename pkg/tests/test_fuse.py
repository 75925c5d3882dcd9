#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the fusion layer: invertibles, equivariantization, graded quotients and indices.
"""

import mpmath
import networkx as nx
import pytest

from planar_algebra.dims import qdim_float
from planar_algebra.errors import DivisibilityViolated, InvalidParams, NotInTruncation
from planar_algebra.exactnum import params, specialize
from planar_algebra.fuse import (Simple, equivariantization_dot, equivariantization_graph, fusion_data,
                                 graded_branching, invertible_group, quotient_simples, stabilizer_order,
                                 staircase, subfactor_indices, tensor_with_box)
from planar_algebra.young import EMPTY, YoungDiagram, in_truncation


def Y(*rows):
    return YoungDiagram(rows)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 6])
def test_invertibles_form_a_cyclic_group(N):
    """Test r_0..r_N multiply like Z_{N+1}."""
    group = invertible_group(N)
    assert group.order == N + 1
    assert group.is_cyclic()


def test_invertibles_at_n3():
    """Test the invertible objects at N=3."""
    assert set(invertible_group(3).elements) == {EMPTY, Y(3), Y(2, 2), Y(1, 1, 1)}


def test_invertibles_have_dimension_one():
    """Test <r_k> = 1 in the fusion data."""
    data = fusion_data(4)
    assert all(data.qdims[lam] == 1 for lam in data.invertibles)


def test_tensor_with_box():
    """Test [1] ⊗ [1] at N=2 and the truncation check."""
    assert set(tensor_with_box(Y(1), 2)) == {EMPTY, Y(2), Y(1, 1)}
    with pytest.raises(NotInTruncation):
        tensor_with_box(Y(2, 1), 2)


def test_global_dimension_at_n2():
    """Test the four simples at N=2 and their global dimension 1 + 3 + 1 + 1."""
    data = fusion_data(2)
    assert len(data.simples) == 4
    with mpmath.workdps(30):
        assert abs(data.global_dimension_float() - 6) < 1e-20
    assert data.to_json(float_digits=6)["simples"][0]["float"] == "1.0"


def test_equivariantization_n2_is_a_path():
    """Test the N=2 equivariantization graph is the 5-vertex path."""
    g = equivariantization_graph(2)
    assert nx.is_isomorphic(g, nx.path_graph(5))
    labels = {d["label"] for _, d in g.nodes(data=True)}
    assert labels == {"∅_0", "∅_1", "[1]_0", "[1]_1", "([2],[1,1])"}


def test_equivariantization_n3():
    """Test four split fixed points and two merged pairs at N=3."""
    g = equivariantization_graph(3)
    fixed = [v for v in g.nodes if v[0] == "fixed"]
    pairs = [v for v in g.nodes if v[0] == "pair"]
    assert {v[1] for v in fixed} == {EMPTY, Y(1), Y(2, 1), Y(2, 2)}
    assert len(fixed) == 8
    assert len(pairs) == 2
    assert equivariantization_dot(g).count("--") == g.number_of_edges()


def test_equivariantization_needs_n2():
    """Test N=1 is refused."""
    with pytest.raises(InvalidParams):
        equivariantization_graph(1)


def _product(Q, s):
    return {x.label: c for x, c in Q.fusion_with_X(s).items()}


def test_quotient_3_1_0():
    """Test the (3,1,0) quotient: 12 simples and [1]⊗[1] = e + [1]e² + [1]e⁵."""
    Q = quotient_simples(3, 1, 0)
    assert len(Q.simples) == 12
    assert _product(Q, Simple(Y(1), 0)) == {"e": 1, "[1]e^2": 1, "[1]e^5": 1}


def test_quotient_3_1_1():
    """Test the (3,1,1) quotient: 20 simples and [1]⊗[1] = e + [1]e³ + [1]e⁸."""
    Q = quotient_simples(3, 1, 1)
    assert len(Q.simples) == 20
    assert _product(Q, Simple(Y(1), 0)) == {"e": 1, "[1]e^3": 1, "[1]e^8": 1}


def test_quotient_2_0_1():
    """Test the (2,0,1) quotient has four simples."""
    assert len(quotient_simples(2, 0, 1).simples) == 4


def test_unit_times_box():
    """Test ∅ ⊗ [1] is the class of [1] once."""
    Q = quotient_simples(3, 1, 0)
    assert Q.fusion_with_X(Simple(EMPTY, 0)) == {Simple(Y(1), 0): 1}


def test_quotient_rejects_trivial_parameters():
    """Test (k, l) = (0, 0) is refused."""
    with pytest.raises(InvalidParams):
        quotient_simples(3, 0, 0)


def test_graded_branching_exports():
    """Test JSON and DOT of the graded branching rules."""
    branching = graded_branching(quotient_simples(3, 1, 0))
    data = branching.to_json()
    assert len(data["rules"]) == 12
    dot = branching.to_dot()
    assert dot.startswith("digraph")
    assert '"[1]" -> "e";' in dot


def test_grades_respect_fusion():
    """Test fusing with [1] raises the grade by one."""
    Q = quotient_simples(3, 1, 1)
    for s in Q.simples:
        for x in Q.fusion_with_X(s):
            assert Q.grade(x.rep, x.t) == (Q.grade(s.rep, s.t) + 1) % Q.grading_modulus


def test_staircase():
    """Test the N=5, m=2 staircase and its stabilizer."""
    lam = staircase(5, 2)
    assert lam == Y(2, 2)
    assert stabilizer_order(lam, 5) == 3
    with pytest.raises(DivisibilityViolated):
        staircase(4, 2)


def test_subfactor_index():
    """Test the index <λ>²/3 at N=5, m=2."""
    index = subfactor_indices(5, 2)
    assert not index.degenerate
    with mpmath.workdps(30):
        expected = qdim_float(Y(2, 2), 5) ** 2 / 3
        assert abs(index.value - expected) < 1e-12
    assert abs(index.exact.to_complex() - index.value) < 1e-12


def test_staircase_stays_in_the_truncation():
    """Test the staircase lies in Y(N) while the full triangle [4,4,2,2] does not."""
    assert in_truncation(staircase(5, 2), 5)
    assert not in_truncation(Y(4, 4, 2, 2), 5)
    assert staircase(8, 2) == Y(3, 3, 3)
    assert staircase(14, 3) == Y(6, 6, 6, 3, 3, 3)
    assert all(in_truncation(staircase(N, m), N) for N, m in [(8, 2), (14, 3), (20, 2), (20, 4)])


def test_subfactor_index_value():
    """Test the N=5, m=2 index is 3δ² = 21 + 12√3 at q = exp(iπ/12)."""
    with mpmath.workdps(30):
        index = subfactor_indices(5, 2)
        assert abs(index.value - (21 + 12 * mpmath.sqrt(3))) < 1e-25
    assert index.exact == specialize(3 * params().delta ** 2, 5)
    assert index.stabilizer == 3


def test_degenerate_index():
    """Test m = 1 is flagged."""
    index = subfactor_indices(3, 1)
    assert index.degenerate
    assert index.diagram == EMPTY
