#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the word DSL.
"""

import pytest

from planar_algebra.dsl import parse_word_dsl
from planar_algebra.errors import DslSyntaxError, IndexOutOfRange
from planar_algebra.exactnum import FieldElem, imag_unit, params, q
from planar_algebra.skein import AlgElem, parse_plain_word


def W(text):
    return parse_plain_word(text)


def test_plain_word():
    """Test 'r1 r1' is the single two-letter word."""
    x = parse_word_dsl("r1 r1", 2)
    assert x.terms == {W("r1 r1"): 1}


def test_crossing_letters():
    """Test a1 and b1 expand to the crossings."""
    assert parse_word_dsl("a1", 2).terms == AlgElem.alpha(1, 2).terms
    assert parse_word_dsl("b1", 2).terms == AlgElem.beta(1, 2).terms


def test_linear_combination():
    """Test 'r1 r1 - (1/delta) h1'."""
    x = parse_word_dsl("r1 r1 - (1/delta) h1", 2)
    assert x.terms == {W("r1 r1"): 1, W("h1"): -1 / params().delta}


def test_coefficients():
    """Test rational and parenthesized coefficients, and a constant term."""
    x = parse_word_dsl("2 r1 + (q-q^-1) h1 + 1/3", 2)
    assert x.terms == {W("r1"): 2, W("h1"): q() - q() ** -1, (): FieldElem(1) / 3}


def test_adjoint_suffix():
    """Test a trailing * reverses words and conjugates coefficients."""
    x = parse_word_dsl("(I) r1 h2*", 3)
    assert x.terms == {W("h2 r1"): -imag_unit()}
    assert parse_word_dsl("a1*", 2).terms == AlgElem.alpha(1, 2).adjoint().terms


def test_index_out_of_range():
    """Test letters must fit the box count."""
    with pytest.raises(IndexOutOfRange):
        parse_word_dsl("h1 h3", 3)


def test_syntax_error_position():
    """Test the offending character is reported."""
    with pytest.raises(DslSyntaxError) as excinfo:
        parse_word_dsl("r1 ? h1", 2)
    assert excinfo.value.position == 3
    assert excinfo.value.to_dict()["error"] == "syntax_error"


@pytest.mark.parametrize("text", ["", "(q r1", "(foo) r1", "r1 + * h1"])
def test_malformed_input(text):
    """Test malformed input raises a syntax error."""
    with pytest.raises(DslSyntaxError):
        parse_word_dsl(text, 2)


def test_render_parses_back():
    """Test the rendering of an element parses to the same element."""
    x = parse_word_dsl("((q^2+1)/q) r1 h2 - 2 h1 + (I*delta) + r2*", 3)
    assert parse_word_dsl(str(x), 3).terms == x.terms
