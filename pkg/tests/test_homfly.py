#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for planar diagrams and the HOMFLY evaluator.
"""

import numpy as np
import pytest

from planar_algebra.diagrams import ClosedDiagram, OrientedLink, random_braid_link
from planar_algebra.errors import MalformedLink, NonPlanarWiring
from planar_algebra.exactnum import Specialization, params
from planar_algebra.homfly import HomflyEvaluator, homfly


def test_unknot():
    """Test the closure of the trivial 1-strand braid is δ."""
    assert homfly(OrientedLink.from_braid([], 1)) == params().delta


def test_reidemeister_one():
    """Test a positive kink gives r, a negative one r^-1."""
    p = params()
    assert homfly(OrientedLink.from_braid([1], 2)) == p.r * p.delta
    assert homfly(OrientedLink.from_braid([-1], 2)) == p.delta / p.r


def test_reidemeister_two():
    """Test σ1σ1^-1 closes to two circles."""
    assert homfly(OrientedLink.from_braid([1, -1], 2)) == params().delta ** 2


def test_hopf_link():
    """Test the closure of σ1²."""
    p = params()
    assert homfly(OrientedLink.from_braid([1, 1], 2)) == p.delta ** 2 + p.z * p.r * p.delta


def test_trefoil():
    """Test the closure of σ1³."""
    p = params()
    expected = p.r * p.delta + p.z * p.delta ** 2 + p.z ** 2 * p.r * p.delta
    assert homfly(OrientedLink.from_braid([1, 1, 1], 2)) == expected


def test_braid_relation_invariance():
    """Test closures of σ1σ2σ1 and σ2σ1σ2 agree."""
    assert homfly(OrientedLink.from_braid([1, 2, 1], 3)) == homfly(OrientedLink.from_braid([2, 1, 2], 3))


def test_skein_relation_on_random_links():
    """Test P(L+) - P(L-) = z P(L0) on 50 random braid closures with at most 8 crossings."""
    rng = np.random.default_rng(7)
    spec = Specialization.probe()
    evaluator = HomflyEvaluator(spec)
    z = spec.z
    for _ in range(50):
        link = random_braid_link(rng, int(rng.integers(2, 5)), int(rng.integers(1, 9)))
        v = int(rng.integers(0, len(link.nodes)))
        plus = link if link.nodes[v][1] == 1 else link.switch(v)
        minus = plus.switch(v)
        assert evaluator.evaluate(plus) - evaluator.evaluate(minus) == z * evaluator.evaluate(plus.smooth(v))


def test_root_of_unity_agrees_with_generic():
    """Test specializing the generic trefoil value."""
    at_n3 = Specialization.root_of_unity(3)
    link = OrientedLink.from_braid([1, 1, 1], 2)
    assert homfly(link, at_n3) == at_n3.wrap(at_n3.convert(homfly(link)))


def test_from_braid_rejects_bad_generators():
    """Test that generators must fit the strand count."""
    with pytest.raises(MalformedLink):
        OrientedLink.from_braid([2], 2)


def test_writhe():
    """Test the writhe sums crossing signs."""
    assert OrientedLink.from_braid([1, 1, -2], 3).writhe() == 1


def test_from_word_counts_nodes_and_circles():
    """Test the Markov closure of words."""
    assert len(ClosedDiagram.from_word((("r", 1), ("r", 2)), 3).nodes) == 2
    closed = ClosedDiagram.from_word((("h", 1),), 2)
    assert not closed.nodes
    assert closed.circles == 1
    assert ClosedDiagram.from_word((), 2).circles == 2


def test_parse_render_round_trip():
    """Test that a rendered diagram parses back to the same canonical form."""
    T = ClosedDiagram.from_word((("r", 1), ("r", 2), ("r", 1)), 3)
    again = ClosedDiagram.parse(T.render())
    assert again.canonical_code() == T.canonical_code()


def test_parse_rejects_dangling_wires():
    """Test that a wire label used once is malformed."""
    with pytest.raises(MalformedLink):
        ClosedDiagram.parse("circles=0; x(1,2,3,4;rot=0)")


def test_parse_rejects_non_planar_wiring():
    """Test the crossed self-wiring of one node is not planar."""
    with pytest.raises(NonPlanarWiring):
        ClosedDiagram.parse("circles=0; x(1,2,1,2;rot=0)")
