#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the skein engine: ζ of closed diagrams, traces, Gram matrices and relations.
"""

from unittest.mock import patch

import numpy as np
import pytest

from planar_algebra.diagrams import ClosedDiagram, random_closed_diagram
from planar_algebra.errors import IndexOutOfRange
from planar_algebra.exactnum import Specialization, imag_unit, params, rank_and_pivots
from planar_algebra.skein import (AlgElem, SkeinEngine, TraceStore, canonical_words, far_commutation_relations,
                                  parse_plain_word, relation_catalogue, yang_baxter_rhs)


def W(text):
    return parse_plain_word(text)


def test_circles(skein_engine):
    """Test k disjoint circles evaluate to δ^k."""
    delta = params().delta
    for k in range(4):
        assert skein_engine.zeta(ClosedDiagram(nodes={}, wires={}, circles=k)) == delta ** k


def test_capped_node_vanishes(skein_engine):
    """Test a node with a cap is zero."""
    assert skein_engine.zeta(ClosedDiagram.parse("circles=0; x(1,1,2,2;rot=0)")) == 0


def test_closure_of_r_squared(skein_engine):
    """Test the closure of R² is δ² - 1."""
    T = ClosedDiagram.from_word(W("r1 r1"), 2)
    assert skein_engine.zeta(T) == params().delta ** 2 - 1


def test_rotation_mark(skein_engine):
    """Test moving the mark of one node by a quarter turn multiplies by i."""
    T = ClosedDiagram.from_word(W("r1 r1"), 2)
    rotated = ClosedDiagram(nodes={0: 1, 1: 0}, wires=dict(T.wires), circles=T.circles)
    assert skein_engine.zeta(rotated) == (params().delta ** 2 - 1) * imag_unit()


def test_small_traces(skein_engine):
    """Test tr(1), tr(h1), tr(r1) at two boxes."""
    delta = params().delta
    assert skein_engine.word_trace(AlgElem.identity(2)) == delta ** 2
    assert skein_engine.word_trace(AlgElem.word(W("h1"), 2)) == delta
    assert skein_engine.word_trace(AlgElem.word(W("r1"), 2)) == 0


def test_gram_two_boxes(skein_engine, generic):
    """Test the Gram matrix on {1, h1, r1}."""
    delta = params().delta
    G = skein_engine.gram([(), W("h1"), W("r1")], 2)
    expected = [[delta ** 2, delta, 0], [delta, delta ** 2, 0], [0, 0, delta ** 2 - 1]]
    assert [[generic.wrap(x) for x in row] for row in G.to_list()] == expected


@pytest.mark.parametrize("spec,m", [(Specialization.generic(), 2), (Specialization.root_of_unity(2), 2),
                                    (Specialization.root_of_unity(2), 3)], ids=["generic-2", "N=2-2", "N=2-3"])
def test_gram_is_hermitian(app_settings, spec, m):
    """Test G = G* when both triangles are computed from traces."""
    engine = SkeinEngine(app_settings, spec)
    G = engine.gram(canonical_words(m), m, hermitian=False).to_list()
    n = len(G)
    for k in range(n):
        for l in range(n):
            assert G[k][l] == spec.conj(G[l][k]), (k, l)


@pytest.mark.parametrize("m,count", [(1, 1), (2, 3), (3, 15), (4, 105)])
def test_canonical_word_counts(m, count):
    """Test one canonical word per Brauer diagram."""
    assert len(canonical_words(m)) == count


@pytest.mark.parametrize("m,rank", [(1, 1), (2, 3)])
def test_generic_rank_small(skein_engine, m, rank):
    """Test the generic Gram rank at one and two boxes."""
    assert rank_and_pivots(skein_engine.gram(canonical_words(m), m))[0] == rank


@pytest.mark.slow
def test_generic_rank_three_boxes(skein_engine):
    """Test the generic Gram matrix at three boxes is nondegenerate."""
    assert rank_and_pivots(skein_engine.gram(canonical_words(3), 3))[0] == 15


def test_ranks_at_n2(app_settings, at_n2):
    """Test quotient dimensions 1, 3, 9 at N=2."""
    engine = SkeinEngine(app_settings, at_n2)
    assert [rank_and_pivots(engine.gram(canonical_words(m), m))[0] for m in (1, 2, 3)] == [1, 3, 9]


def test_r_squared_relation(skein_engine):
    """Test R² = 1 - e/δ against every probe."""
    lhs = AlgElem.word(W("r1 r1"), 2)
    rhs = AlgElem.identity(2) - AlgElem.word(W("h1"), 2).scale(1 / params().delta)
    assert skein_engine.verify_relation(lhs, rhs, 2)
    assert not skein_engine.verify_relation(lhs, AlgElem.identity(2), 2)


def test_relation_defects_name_the_probe(skein_engine):
    """Test a false relation reports nonzero probe traces."""
    defects = skein_engine.relation_defects(AlgElem.word(W("h1"), 2), AlgElem(2), 2)
    assert defects
    assert all(value for _, value in defects)


def test_relation_check_closes_unsimplified_words(skein_engine, generic):
    """Test relations are decided by ζ of the closed words, not by word rewriting."""
    lhs = AlgElem.word(W("r1 r1"), 2)
    rhs = AlgElem.identity(2) - AlgElem.word(W("h1"), 2).scale(1 / params().delta)
    with patch.object(SkeinEngine, "simplify") as simplify:
        assert skein_engine.verify_relation(lhs, rhs, 2)
        simplify.assert_not_called()
    with patch.object(skein_engine, "closure_trace_raw", side_effect=lambda word, m: generic.from_int(len(word) + 1)):
        assert not skein_engine.verify_relation(lhs, rhs, 2)
        assert not skein_engine.check_relation(relation_catalogue(2)[0])


def test_two_box_catalogue(app_settings, generic):
    """Test every two-box relation holds generically without word rewriting."""
    app_settings.skein.simplify_words = False
    engine = SkeinEngine(app_settings, generic)
    for rel in relation_catalogue(2):
        assert engine.check_relation(rel), rel.name


@pytest.mark.slow
def test_three_box_catalogue_at_n2(app_settings, at_n2):
    """Test every three-box relation holds at N=2 without word rewriting."""
    app_settings.skein.simplify_words = False
    engine = SkeinEngine(app_settings, at_n2)
    for rel in relation_catalogue(3):
        assert engine.check_relation(rel), rel.name


@pytest.mark.slow
def test_yang_baxter_generic(skein_engine):
    """Test the Yang-Baxter relation over Q(i)(q) with all 15 probes."""
    lhs = AlgElem.word(W("r1 r2 r1"), 3) - AlgElem.word(W("r2 r1 r2"), 3)
    assert skein_engine.verify_relation(lhs, yang_baxter_rhs(), 3)


@pytest.mark.slow
def test_three_box_catalogue_generic(skein_engine):
    """Test every three-box relation holds over Q(i)(q)."""
    for rel in relation_catalogue(3):
        assert skein_engine.check_relation(rel), rel.name


@pytest.mark.slow
@pytest.mark.parametrize("spec", [Specialization.root_of_unity(2), Specialization.probe()], ids=["N=2", "probe"])
def test_far_commutation_sampled(app_settings, spec):
    """Test letters two apart commute at four boxes on the configured sample of 40 words."""
    assert app_settings.tower.far_commutation_probes == 40
    engine = SkeinEngine(app_settings, spec)
    assert len(engine.sample_probes(4, app_settings.tower.far_commutation_probes)) == 40
    rels = far_commutation_relations()
    assert len(rels) == 5
    for rel in rels:
        assert rel.sampled
        assert engine.check_relation(rel), rel.name


def test_index_out_of_range():
    """Test letters must fit the box count."""
    with pytest.raises(IndexOutOfRange):
        AlgElem.word(W("h1 h3"), 3)


def test_alpha_is_unitary(skein_engine):
    """Test α* = β, through traces against every probe."""
    alpha = AlgElem.alpha(1, 2)
    assert skein_engine.verify_relation(alpha.adjoint(), AlgElem.beta(1, 2), 2)


@pytest.mark.slow
def test_zeta_orientation_independence(app_settings):
    """Test ζ agrees across orientation and sign choices on 25 random diagrams."""
    engine = SkeinEngine(app_settings, Specialization.probe(), use_store=False)
    rng = np.random.default_rng(11)
    for _ in range(25):
        T = random_closed_diagram(rng, 3, 6, 5)
        choices = engine.choices(T)
        picks = [choices[int(k)] for k in rng.choice(len(choices), size=min(3, len(choices)), replace=False)]
        values = {str(engine.zeta(T, choice)) for choice in picks}
        assert len(values) == 1


def test_trace_store_persists(app_settings, generic, tmp_path):
    """Test cached traces survive a new engine."""
    app_settings.runtime.cache_dir = tmp_path / "store"
    engine = SkeinEngine(app_settings, generic)
    value = engine.word_trace(AlgElem.word(W("r1 r1"), 2))
    engine.flush()
    store = TraceStore(tmp_path / "store", generic)
    assert store.entries
    again = SkeinEngine(app_settings, generic)
    assert again.word_trace(AlgElem.word(W("r1 r1"), 2)) == value


def test_trace_is_cyclic(skein_engine):
    """Test tr(xy) = tr(yx) on a pair of words."""
    x, y = AlgElem.word(W("r1 h2"), 3), AlgElem.word(W("r2 r1"), 3)
    assert skein_engine.word_trace(x * y) == skein_engine.word_trace(y * x)
