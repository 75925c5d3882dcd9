#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fusion Combinatorics

Invertible objects of the root-of-unity quotients, the transpose
equivariantization of their principal graphs, the graded quotient categories
obtained by identifying g^k ⊗ e^l with the unit, their branching with the
one-cell object and the indices of the intermediate subfactors.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import mpmath
import networkx as nx

from planar_algebra.dims import qdim_float, specialized_qdim
from planar_algebra.errors import DivisibilityViolated, InvalidParams, NotInTruncation
from planar_algebra.exactnum import CycloElem
from planar_algebra.young import (EMPTY, LatticeGraph, YoungDiagram, g_power, g_tensor,
                                  in_truncation, rectangle, transpose_sym, truncated_lattice)

logger = logging.getLogger(__name__)

GRADE_COLOURS = ["lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon",
                 "lightcyan", "wheat", "thistle", "aquamarine", "lightgray", "peachpuff"]


def _check_level(N: int) -> None:
    if N < 1:
        raise InvalidParams(f"N must be positive, got {N}", N=N)


# --- invertible objects ----------------------------------------------------

@dataclass
class InvertibleGroup:
    """The objects r_0, ..., r_N with r_j ⊗ r_k = r_table[j][k]."""

    N: int
    elements: List[YoungDiagram]
    table: List[List[int]]

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, j: int, k: int) -> int:
        return self.table[j][k]

    def is_cyclic(self) -> bool:
        """r_1 generates and the table is the addition table mod N + 1."""
        n = self.order
        return all(self.table[j][k] == (j + k) % n for j in range(n) for k in range(n))

    def to_json(self) -> Dict[str, object]:
        return {
            "N": self.N,
            "order": self.order,
            "cyclic": self.is_cyclic(),
            "elements": [lam.label for lam in self.elements],
            "table": self.table,
        }


def invertible_group(N: int) -> InvertibleGroup:
    """r_k = k rows of N + 1 - k cells, multiplied through the action of g = [1^N]."""
    _check_level(N)
    elements = [rectangle(k, N) for k in range(N + 1)]
    index = {lam: k for k, lam in enumerate(elements)}
    # r_j = g^{power[j]}(∅)
    power = {}
    lam = EMPTY
    for j in range(N + 1):
        power[index[lam]] = j
        lam = g_tensor(lam, N)
    table = [[index[g_power(elements[k], N, power[j])] for k in range(N + 1)] for j in range(N + 1)]
    return InvertibleGroup(N=N, elements=elements, table=table)


def tensor_with_box(lam: YoungDiagram, N: int) -> List[YoungDiagram]:
    """λ ⊗ [1]: the neighbours of λ in YL(N)."""
    if not in_truncation(lam, N):
        raise NotInTruncation(f"{lam} is not in Y({N})", N=N)
    lattice = truncated_lattice(N)
    return lattice.neighbours(lam)


@dataclass
class FusionData:
    """Simple objects of the level-N quotient with their dimensions and principal graph."""

    N: int
    simples: List[YoungDiagram]
    qdims: Dict[YoungDiagram, CycloElem]
    principal_graph: LatticeGraph
    invertibles: List[YoungDiagram]

    def global_dimension_float(self) -> mpmath.mpf:
        return mpmath.fsum(qdim_float(lam, self.N) ** 2 for lam in self.simples)

    def to_json(self, float_digits: int = 0) -> Dict[str, object]:
        rows = []
        for lam in self.simples:
            row = {"label": lam.label, "qdim": str(self.qdims[lam])}
            if float_digits:
                row["float"] = mpmath.nstr(qdim_float(lam, self.N), float_digits)
            rows.append(row)
        return {"N": self.N, "simples": rows, "invertibles": [lam.label for lam in self.invertibles],
                "edges": [[a.label, b.label] for a, b in self.principal_graph.edges]}


def fusion_data(N: int) -> FusionData:
    _check_level(N)
    lattice = truncated_lattice(N)
    simples = lattice.vertices
    return FusionData(N=N, simples=simples, qdims={lam: specialized_qdim(lam, N) for lam in simples},
                      principal_graph=lattice, invertibles=invertible_group(N).elements)


# --- equivariantization ----------------------------------------------------

def _vertex_label(v: Tuple) -> str:
    if v[0] == "fixed":
        return f"{v[1]}_{v[2]}"
    return f"({v[1]},{v[2]})"


def equivariantization_graph(N: int) -> nx.Graph:
    """Principal graph of the fixed points under transposition.

    A fixed diagram splits into two vertices, a swapped pair merges into one;
    edges follow the split and merge.
    """
    if N < 2:
        raise InvalidParams(f"equivariantization needs N >= 2, got {N}", N=N)
    lattice = truncated_lattice(N)

    def images(lam: YoungDiagram) -> List[Tuple]:
        other = transpose_sym(lam)
        if other == lam:
            return [("fixed", lam, 0), ("fixed", lam, 1)]
        a, b = sorted((lam, other))
        return [("pair", a, b)]

    g = nx.Graph()
    for lam in lattice.vertices:
        for v in images(lam):
            g.add_node(v, label=_vertex_label(v))
    for mu, lam in lattice.edges:
        a, b = images(mu), images(lam)
        if len(a) == 2 and len(b) == 2:
            g.add_edges_from(zip(a, b))
        else:
            g.add_edges_from((x, y) for x in a for y in b)
    logger.debug(f"Equivariantized YL({N}): {g.number_of_nodes()} vertices, {g.number_of_edges()} edges")
    return g


def equivariantization_dot(g: nx.Graph, name: str = "equivariantization") -> str:
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for v in sorted(g.nodes, key=_vertex_label):
        lines.append(f'  "{_vertex_label(v)}";')
    for a, b in sorted((sorted((_vertex_label(x), _vertex_label(y))) for x, y in g.edges)):
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines)


# --- graded quotients ------------------------------------------------------

@dataclass(frozen=True, order=True)
class Simple:
    """The class of λ ⊗ e^t, stored by its orbit representative."""

    rep: YoungDiagram
    t: int

    @property
    def label(self) -> str:
        e = "" if self.t == 0 else ("e" if self.t == 1 else f"e^{self.t}")
        if self.rep == EMPTY:
            return e or "∅"
        return f"{self.rep}{e}"


@dataclass
class QuotientCategory:
    """Simple objects of the quotient identifying g^k ⊗ e^l with the unit."""

    N: int
    k: int
    l: int
    simples: List[Simple] = field(default_factory=list)
    orbits: Dict[YoungDiagram, List[YoungDiagram]] = field(default_factory=dict)

    @property
    def grading_modulus(self) -> int:
        return self.k * self.N + 2 * self.l

    def period(self, lam: YoungDiagram) -> int:
        """Number of e-powers carried by the orbit of λ."""
        orbit = self.orbits[self.orbit_rep(lam)]
        return len(orbit) * self.grading_modulus // 2

    def orbit_rep(self, lam: YoungDiagram) -> YoungDiagram:
        for rep, orbit in self.orbits.items():
            if lam in orbit:
                return rep
        raise NotInTruncation(f"{lam} is not in Y({self.N})", N=self.N)

    def shift(self, lam: YoungDiagram, t: int) -> Tuple[YoungDiagram, int]:
        """T(λ, t) = (g^k λ, t + (|λ| + kN - |g^k λ|)/2 + l)."""
        image = g_power(lam, self.N, self.k)
        return image, t + (lam.size + self.k * self.N - image.size) // 2 + self.l

    def canonical(self, lam: YoungDiagram, t: int) -> Simple:
        rep = self.orbit_rep(lam)
        while lam != rep:
            lam, t = self.shift(lam, t)
        return Simple(rep, t % self.period(rep))

    def grade(self, lam: YoungDiagram, t: int) -> int:
        return (lam.size + 2 * t) % self.grading_modulus

    def fusion_with_X(self, s: Simple) -> Dict[Simple, int]:
        """s ⊗ [1] as a multiset of simples."""
        out: Dict[Simple, int] = {}
        for nu in tensor_with_box(s.rep, self.N):
            target = self.canonical(nu, s.t + (s.rep.size + 1 - nu.size) // 2)
            out[target] = out.get(target, 0) + 1
        return out

    def to_json(self) -> Dict[str, object]:
        return {
            "N": self.N, "k": self.k, "l": self.l, "grading_modulus": self.grading_modulus,
            "simples": [{"label": s.label, "rep": s.rep.label, "t": s.t, "grade": self.grade(s.rep, s.t)}
                        for s in self.simples],
        }


def quotient_simples(N: int, k: int, l: int, depth: Optional[int] = None) -> QuotientCategory:
    """Orbit representatives of (Y(N) × e-powers) under T.

    Args:
        N: Level
        k: Power of g identified with the unit (together with e^l)
        l: Power of e
        depth: Optional cap on |λ| for listing; all of Y(N) by default
    """
    _check_level(N)
    if k < 0 or l < 0 or (k == 0 and l == 0):
        raise InvalidParams(f"need k, l >= 0 and (k, l) != (0, 0), got ({k}, {l})", k=k, l=l)
    Q = QuotientCategory(N=N, k=k, l=l)
    remaining = set(truncated_lattice(N).vertices)
    while remaining:
        start = min(remaining)
        orbit = [start]
        lam = g_power(start, N, k)
        while lam != start:
            orbit.append(lam)
            lam = g_power(lam, N, k)
        remaining -= set(orbit)
        Q.orbits[min(orbit)] = sorted(orbit)
    for rep in sorted(Q.orbits):
        if depth is not None and rep.size > depth:
            continue
        Q.simples.extend(Simple(rep, t) for t in range(Q.period(rep)))
    logger.info(f"Quotient ({N},{k},{l}): {len(Q.orbits)} orbits, {len(Q.simples)} simples, "
                f"grading mod {Q.grading_modulus}")
    return Q


@dataclass
class GradedBranching:
    """Fusion with the one-cell object on every simple, with grades."""

    category: QuotientCategory
    rules: Dict[Simple, Dict[Simple, int]]

    def to_json(self) -> Dict[str, object]:
        Q = self.category
        return {
            "N": Q.N, "k": Q.k, "l": Q.l,
            "rules": [{"simple": s.label, "grade": Q.grade(s.rep, s.t),
                       "targets": [{"simple": x.label, "multiplicity": c, "grade": Q.grade(x.rep, x.t)}
                                   for x, c in sorted(targets.items())]}
                      for s, targets in sorted(self.rules.items())],
        }

    def to_dot(self, name: str = "branching") -> str:
        Q = self.category
        lines = [f"digraph {name} {{", "  node [shape=box, style=filled];"]
        for s in sorted(self.rules):
            colour = GRADE_COLOURS[Q.grade(s.rep, s.t) % len(GRADE_COLOURS)]
            lines.append(f'  "{s.label}" [fillcolor={colour}];')
        for s, targets in sorted(self.rules.items()):
            for x, c in sorted(targets.items()):
                for _ in range(c):
                    lines.append(f'  "{s.label}" -> "{x.label}";')
        lines.append("}")
        return "\n".join(lines)


def graded_branching(Q: QuotientCategory) -> GradedBranching:
    return GradedBranching(category=Q, rules={s: Q.fusion_with_X(s) for s in Q.simples})


# --- subfactor indices -----------------------------------------------------

def staircase(N: int, m: int) -> YoungDiagram:
    """Block rows of m - 1, ..., 1 squares of side k = (N + 1)/(2m - 1)."""
    if m < 1:
        raise InvalidParams(f"m must be positive, got {m}", m=m)
    if (N + 1) % (2 * m - 1):
        raise DivisibilityViolated(f"2m - 1 = {2 * m - 1} does not divide N + 1 = {N + 1}", N=N, m=m)
    k = (N + 1) // (2 * m - 1)
    rows: List[int] = []
    for blocks in range(m - 1, 0, -1):
        rows.extend([blocks * k] * k)
    return YoungDiagram(tuple(rows))


def stabilizer_order(lam: YoungDiagram, N: int) -> int:
    return sum(1 for j in range(N + 1) if g_power(lam, N, j) == lam)


@dataclass
class SubfactorIndex:
    N: int
    m: int
    diagram: YoungDiagram
    stabilizer: int
    exact: CycloElem
    value: mpmath.mpf
    degenerate: bool

    def to_json(self, digits: int = 15) -> Dict[str, object]:
        return {"N": self.N, "m": self.m, "diagram": self.diagram.label, "stabilizer_order": self.stabilizer,
                "exact": str(self.exact), "float": mpmath.nstr(self.value, digits),
                "degenerate": self.degenerate}


def subfactor_indices(N: int, m: int) -> SubfactorIndex:
    """<λ>²/(2m - 1) for the staircase λ, whose stabilizer under g is recomputed."""
    lam = staircase(N, m)
    stab = stabilizer_order(lam, N)
    if stab != 2 * m - 1:
        logger.warning(f"Stabilizer of {lam} under g has order {stab}, not {2 * m - 1}")
    d = specialized_qdim(lam, N)
    exact = d * d / (2 * m - 1)
    value = qdim_float(lam, N) ** 2 / (2 * m - 1)
    if m == 1:
        logger.warning(f"m = 1 gives the empty diagram and index 1 at N={N}")
    return SubfactorIndex(N=N, m=m, diagram=lam, stabilizer=stab, exact=exact, value=value, degenerate=m == 1)
