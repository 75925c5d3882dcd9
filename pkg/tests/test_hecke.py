#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the Hecke algebra, its idempotents and branching morphisms.
"""

import pytest

from planar_algebra.errors import DslSyntaxError, InvalidParams, StrandMismatch, VanishingQuantumInteger
from planar_algebra.exactnum import Specialization
from planar_algebra.hecke import (all_perms, basis_element, branch, branching_sum, embed, hecke_mul,
                                  identity, murphy, murphy_eigenvalue, parse_hecke_word, sigma, sigma_inv,
                                  star, symmetrizer, young_idempotent)
from planar_algebra.young import YoungDiagram, partitions


def Y(*rows):
    return YoungDiagram(rows)


def test_quadratic_relation(generic):
    """Test T_s² = 1 + (q - q^-1) T_s."""
    s = sigma(2, 1, generic)
    assert s * s == identity(2, generic) + s.scale(generic.z)


def test_braid_relation(generic):
    """Test σ1σ2σ1 = σ2σ1σ2."""
    s1, s2 = sigma(3, 1, generic), sigma(3, 2, generic)
    assert (s1 * s2 * s1 - s2 * s1 * s2).is_zero()


def test_inverse_generator(generic):
    """Test σ1·σ1^-1 = 1."""
    assert sigma(2, 1, generic) * sigma_inv(2, 1, generic) == identity(2, generic)


def test_sigma_range():
    """Test that σ_i outside 1..n-1 is refused."""
    with pytest.raises(InvalidParams):
        sigma(3, 3)


def test_strand_mismatch(generic):
    """Test that elements of different H_n do not multiply."""
    with pytest.raises(StrandMismatch):
        sigma(2, 1, generic) * sigma(3, 1, generic)


def test_word_parser(generic):
    """Test 's1 s2 s1^-1' parses to the matching product."""
    expected = sigma(3, 1, generic) * sigma(3, 2, generic) * sigma_inv(3, 1, generic)
    assert parse_hecke_word("s1 s2 s1^-1", 3, generic) == expected
    with pytest.raises(DslSyntaxError):
        parse_hecke_word("s1 x2", 3, generic)


@pytest.mark.parametrize("l", [2, 3, 4])
def test_symmetrizer_eigenvalues(generic, l):
    """Test σ_i f = q f and σ_i g = -q^-1 g."""
    f = symmetrizer(l, "sym", spec=generic)
    g = symmetrizer(l, "antisym", spec=generic)
    for i in range(1, l):
        assert sigma(l, i, generic) * f == f.scale(generic.q)
        assert sigma(l, i, generic) * g == g.scale(-generic.one / generic.q)
    assert f * f == f
    assert g * g == g


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_symmetrizers_are_self_adjoint(generic, l):
    """Test (f^(l))* = f^(l) and (g^(l))* = g^(l)."""
    for kind in ("sym", "antisym"):
        x = symmetrizer(l, kind, spec=generic)
        assert star(x) == x


def test_star_is_an_antilinear_anti_involution(generic):
    """Test σ1* = σ1^-1, (xy)* = y* x* and (cx)* = conj(c) x*."""
    s1, s2 = sigma(3, 1, generic), sigma(3, 2, generic)
    assert star(s1) == sigma_inv(3, 1, generic)
    assert star(s1 * s2) == star(s2) * star(s1)
    assert star(s1.scale(generic.i)) == star(s1).scale(-generic.i)
    assert star(star(s1 * s2)) == s1 * s2


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_symmetrizer_recursions_agree(generic, l):
    """Test the left and right recursions give the same idempotent."""
    for kind in ("sym", "antisym"):
        assert symmetrizer(l, kind, "left", generic) == symmetrizer(l, kind, "right", generic)


def test_symmetrizer_vanishing_quantum_integer():
    """Test that f^(4) is undefined when [4] = 0 (N = 1)."""
    with pytest.raises(VanishingQuantumInteger):
        symmetrizer(4, spec=Specialization.root_of_unity(1))


def test_young_idempotent_rows_and_columns(generic):
    """Test y_[l] = f^(l) and y_[1^l] = g^(l)."""
    assert young_idempotent(Y(3), generic).element == symmetrizer(3, "sym", spec=generic)
    assert young_idempotent(Y(1, 1, 1), generic).element == symmetrizer(3, "antisym", spec=generic)


@pytest.mark.parametrize("lam", [Y(2, 1), Y(3, 1), Y(2, 2), Y(2, 1, 1)])
def test_young_idempotents_are_idempotent(generic, lam):
    """Test y_λ² = y_λ."""
    y = young_idempotent(lam, generic).element
    assert y * y == y


def test_young_idempotents_are_orthogonal(generic):
    """Test y_[2,1] y_[3] = 0."""
    y21 = young_idempotent(Y(2, 1), generic).element
    y3 = young_idempotent(Y(3), generic).element
    assert (y21 * y3).is_zero()


def test_branching_completeness(generic):
    """Test Σ_{λ > μ} up·down = y_μ ⊗ 1 for |μ| ≤ 3."""
    for n in range(1, 4):
        for mu in partitions(n):
            assert branching_sum(mu, generic) == embed(young_idempotent(mu, generic).element, n + 1)


def test_branch_normalization(generic):
    """Test down·up = y_λ."""
    b = branch(Y(1), Y(2), generic)
    assert b.down * b.up == young_idempotent(Y(2), generic).element


def test_murphy_eigenvalues(generic):
    """Test L_n acts on each branch λ > μ by q^(2 cn(λ - μ)), |λ| ≤ 4."""
    for n in range(1, 4):
        L = murphy(n + 1, generic)
        for mu in partitions(n):
            for cell in mu.addable_cells():
                lam = mu.add_cell(cell)
                P = branch(mu, lam, generic).projection()
                assert L * P == P.scale(generic.power(generic.q, murphy_eigenvalue(mu, lam)))


def test_murphy_eigenvalue_exponents():
    """Test the exponent is twice the content of the added cell."""
    assert murphy_eigenvalue(Y(1), Y(2)) == 2
    assert murphy_eigenvalue(Y(2), Y(2, 1)) == -2


def test_all_perms_sorted_by_length():
    """Test S_3 starts with the identity and ends with the longest element."""
    perms = all_perms(3)
    assert len(perms) == 6
    assert perms[0] == (0, 1, 2)
    assert perms[-1] == (2, 1, 0)


def test_hecke_at_root_of_unity(at_n2):
    """Test the quadratic relation survives specialization."""
    s = sigma(2, 1, at_n2)
    assert s * s == identity(2, at_n2) + s.scale(at_n2.z)


def test_basis_products_stay_in_span(generic):
    """Test T_u·T_v is a combination of the 6 basis elements of H_3."""
    perms = all_perms(3)
    assert hecke_mul(basis_element((1, 0, 2), generic), sigma(3, 2, generic)) == basis_element((1, 2, 0), generic)
    for u in perms:
        for v in perms:
            product = hecke_mul(basis_element(u, generic), basis_element(v, generic))
            assert not product.is_zero()
            assert set(product.terms) <= set(perms)
