#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Quantum Dimensions

The hook-length trace formula <λ> = ∏ i(q^h + q^-h)/(q^h - q^-h), the
generating function Z(μ, u) of the Murphy operator in closed and transfer
form, and ratios of quantum dimensions read off as residues of Z(μ, u)/u.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

import mpmath
import pandas as pd

from planar_algebra.errors import InvalidCellAddition, RepeatedPole
from planar_algebra.exactnum import (CycloElem, FieldElem, imag_unit, params, q,
                                     specialize)
from planar_algebra.young import (Cell, YoungDiagram, content, full_lattice, hooks,
                                  partitions, truncated_lattice)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _hook_factor(h: int) -> FieldElem:
    x = q()
    return imag_unit() * (x ** h + x ** -h) / (x ** h - x ** -h)


@lru_cache(maxsize=None)
def _qdim_rows(rows: Tuple[int, ...]) -> FieldElem:
    value = FieldElem(1)
    for h in sorted(hooks(YoungDiagram(rows)).values()):
        value = value * _hook_factor(h)
    return value


def qdim(lam: YoungDiagram) -> FieldElem:
    """Quantum dimension <λ> over Q(i)(q)."""
    return _qdim_rows(lam.rows)


def specialized_qdim(lam: YoungDiagram, N: int) -> CycloElem:
    return specialize(qdim(lam), N)


def qdim_float(lam: YoungDiagram, N: int) -> mpmath.mpf:
    """∏ cot(h(c)·π/(2N+2)) at the working mpmath precision."""
    theta = mpmath.pi / (2 * N + 2)
    value = mpmath.mpf(1)
    for h in hooks(lam).values():
        value *= mpmath.cot(h * theta)
    return value


def cell_eig(cell: Cell) -> FieldElem:
    """b_c = q^(2·cn(c))."""
    return q() ** (2 * content(cell))


@dataclass
class ZFunction:
    """Z(μ, u) = δ/2 + (δ/2)·∏ (u - ρ)^e, kept as the root → exponent map."""

    mu: YoungDiagram
    factors: Dict[FieldElem, int] = field(default_factory=dict)

    def multiply(self, root: FieldElem, exponent: int) -> None:
        e = self.factors.get(root, 0) + exponent
        if e:
            self.factors[root] = e
        else:
            self.factors.pop(root, None)

    def evaluate(self, u: FieldElem) -> FieldElem:
        half = params().delta / 2
        product = FieldElem(1)
        for root, e in self.factors.items():
            product = product * (u - root) ** e
        return half + half * product

    def at_infinity(self) -> FieldElem:
        """Limit u → ∞; δ whenever the product has total degree zero."""
        degree = sum(self.factors.values())
        if degree > 0:
            raise RepeatedPole(f"Z({self.mu}, u) grows at infinity")
        half = params().delta / 2
        return half + half if degree == 0 else half

    def __eq__(self, other):
        if not isinstance(other, ZFunction):
            return NotImplemented
        return self.factors == other.factors

    def __str__(self):
        parts = []
        for root, e in sorted(self.factors.items(), key=lambda kv: str(kv[0])):
            parts.append(f"(u-({root}))^{e}")
        return f"delta/2 + delta/2*{'*'.join(parts) or '1'}"


def z_closed(mu: YoungDiagram) -> ZFunction:
    """Closed form: addable cells give (u+b)/(u-b), removable ones (u-b)/(u+b)."""
    z = ZFunction(mu=mu)
    for cell in mu.addable_cells():
        b = cell_eig(cell)
        z.multiply(-b, 1)
        z.multiply(b, -1)
    for cell in mu.removable_cells():
        b = cell_eig(cell)
        z.multiply(b, 1)
        z.multiply(-b, -1)
    return z


def z_transfer(z_nu: ZFunction, cell: Cell) -> ZFunction:
    """Z(ν + c, u) from Z(ν, u) through the four-factor transfer ratio."""
    if cell not in z_nu.mu.addable_cells():
        raise InvalidCellAddition(f"cell {cell} cannot be added to {z_nu.mu}", cell=cell)
    b = cell_eig(cell)
    x2 = q() ** 2
    out = ZFunction(mu=z_nu.mu.add_cell(cell), factors=dict(z_nu.factors))
    out.multiply(b, 2)
    out.multiply(-b / x2, 1)
    out.multiply(-b * x2, 1)
    out.multiply(-b, -2)
    out.multiply(b / x2, -1)
    out.multiply(b * x2, -1)
    return out


def z_by_transfer(mu: YoungDiagram) -> ZFunction:
    """Build Z(μ, u) from Z(∅, u) by adding the cells of μ in row order."""
    z = z_closed(YoungDiagram(()))
    for i, j in mu.cells():
        z = z_transfer(z, (i, j))
    return z


def dim_ratio_by_residue(mu: YoungDiagram, lam: YoungDiagram) -> FieldElem:
    """res_{u = b} Z(μ, u)/u for the cell c = λ - μ, b = b_c; equals <λ>/<μ>."""
    cell = lam.cell_difference(mu)
    b = cell_eig(cell)
    z = z_closed(mu)
    e = z.factors.get(b, 0)
    if e < -1:
        raise RepeatedPole(f"pole of order {-e} at u = {b} in Z({mu}, u)", mu=mu, lam=lam)
    if e >= 0:
        logger.warning(f"No pole at u = {b} in Z({mu}, u); residue is zero")
        return FieldElem(0)
    value = params().delta / 2 / b
    for root, exp in z.factors.items():
        if root != b:
            value = value * (b - root) ** exp
    return value


def perron_defect(mu: YoungDiagram) -> FieldElem:
    """Σ_{ν ~ μ in YL} <ν> - δ<μ>; zero over Q(i)(q)."""
    total = FieldElem(0)
    for cell in mu.addable_cells():
        total = total + qdim(mu.add_cell(cell))
    for cell in mu.removable_cells():
        total = total + qdim(mu.remove_cell(cell))
    return total - params().delta * qdim(mu)


def boundary_vanishing(N: int, max_cells: int) -> Dict[YoungDiagram, CycloElem]:
    """Specialized <κ> for κ ∈ B(N) with |κ| ≤ max_cells."""
    out = {}
    for n in range(N + 1, max_cells + 1):
        for kappa in partitions(n):
            if kappa.first_hook == N + 1:
                out[kappa] = specialized_qdim(kappa, N)
    return out


@dataclass
class DimTable:
    """Quantum dimensions keyed by diagram; exact values generic or at level N."""

    entries: Dict[YoungDiagram, Union[FieldElem, CycloElem]]
    N: Optional[int] = None

    def to_frame(self, float_digits: int = 0) -> pd.DataFrame:
        rows = []
        for lam in sorted(self.entries):
            hook_product = 1
            for h in hooks(lam).values():
                hook_product *= h
            row = {
                "partition": lam.label,
                "size": lam.size,
                "hook_product": hook_product,
                "exact": str(self.entries[lam]),
            }
            if float_digits:
                if self.N is not None:
                    with mpmath.workdps(float_digits + 5):
                        row["float"] = mpmath.nstr(qdim_float(lam, self.N), float_digits)
                else:
                    row["float"] = None
            rows.append(row)
        return pd.DataFrame(rows)


def dim_table(N: Optional[int], max_cells: int) -> DimTable:
    """Exact <λ> for |λ| ≤ max_cells, restricted to Y(N) when N is given."""
    if N is None:
        diagrams = [lam for n in range(max_cells + 1) for lam in partitions(n)]
        return DimTable(entries={lam: qdim(lam) for lam in diagrams})
    lattice = truncated_lattice(N, max_cells)
    logger.info(f"Specializing {len(lattice.vertices)} quantum dimensions at N={N}")
    return DimTable(entries={lam: specialized_qdim(lam, N) for lam in lattice.vertices}, N=N)


def level_two_identity() -> FieldElem:
    """<[2]> + <[1,1]> + 1 - δ²; zero."""
    return qdim(YoungDiagram((2,))) + qdim(YoungDiagram((1, 1))) + 1 - params().delta ** 2


def check_perron_table(max_cells: int) -> List[YoungDiagram]:
    """Diagrams with nonzero Perron defect among |μ| ≤ max_cells (expected none)."""
    lattice = full_lattice(max_cells)
    return [mu for mu in lattice.vertices if perron_defect(mu)]
