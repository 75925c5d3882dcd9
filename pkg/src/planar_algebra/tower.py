#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tower Reconstruction

Rebuilds each level of the planar algebra as a concrete finite-dimensional
algebra from trace pairings: a basis of canonical words, the action of the
generator letters, the center, its minimal idempotents and their traces, the
inclusions between levels and an exact positivity certificate at roots of
unity.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath
import networkx as nx
import numpy as np
from sympy.polys.matrices import DomainMatrix

from planar_algebra.diagrams import Letter, Word
from planar_algebra.dims import qdim
from planar_algebra.errors import (BlockSplitFailure, CertificationInconclusive, InvalidParams,
                                   RankDeficiencyUnexpected)
from planar_algebra.exactnum import (Specialization, certified_sign, charpoly, entries,
                                     leading_minors, nullspace, rank_and_pivots)
from planar_algebra.skein import SkeinEngine, adjoint_word, canonical_words, word_str
from planar_algebra.young import (LatticeGraph, YoungDiagram, full_lattice, path_counts,
                                  truncated_lattice)

logger = logging.getLogger(__name__)


def brauer_count(m: int) -> int:
    """(2m - 1)!!, the number of Brauer diagrams on m strands."""
    out = 1
    for k in range(1, 2 * m, 2):
        out *= k
    return out


def _column(values: Sequence[Any], spec: Specialization) -> DomainMatrix:
    return DomainMatrix([[v] for v in values], (len(values), 1), spec.domain)


def _flat(v: DomainMatrix) -> List[Any]:
    return [row[0] for row in v.to_list()]


@dataclass
class StructureAlgebra:
    """One level m as an algebra on a basis of canonical words modulo the trace kernel.

    Vectors are exact column matrices of coordinates over `basis`.
    """

    m: int
    spec: Specialization
    words: Tuple[Word, ...]
    basis: List[Word]
    gram: DomainMatrix
    basis_gram: DomainMatrix
    trace: List[Any]
    right_letters: Dict[Letter, DomainMatrix]
    left_letters: Dict[Letter, DomainMatrix]
    unit: DomainMatrix
    _right_words: Dict[Word, DomainMatrix] = field(default_factory=dict, repr=False)
    _center: Optional[DomainMatrix] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def kernel_dim(self) -> int:
        return len(self.words) - len(self.basis)

    def basis_vector(self, j: int) -> DomainMatrix:
        values = [self.spec.zero] * self.dim
        values[j] = self.spec.one
        return _column(values, self.spec)

    def right_matrix(self, word: Word) -> DomainMatrix:
        """Matrix of y -> y·word in basis coordinates."""
        word = tuple(word)
        if word not in self._right_words:
            R = DomainMatrix.eye(self.dim, self.spec.domain).to_dense()
            for x in word:
                R = self.right_letters[x] * R
            self._right_words[word] = R
        return self._right_words[word]

    def coords_of_word(self, word: Word) -> DomainMatrix:
        return self.right_matrix(word) * self.unit

    def multiply(self, u: DomainMatrix, v: DomainMatrix) -> DomainMatrix:
        total = DomainMatrix.zeros((self.dim, 1), self.spec.domain).to_dense()
        for j, c in enumerate(_flat(v)):
            if c:
                total = total + (self.right_matrix(self.basis[j]) * u) * c
        return total

    def trace_of(self, u: DomainMatrix) -> Any:
        total = self.spec.zero
        for c, t in zip(_flat(u), self.trace):
            total = total + c * t
        return total

    @property
    def structconsts(self) -> List[List[List[Any]]]:
        """c[i][j][k] with w_i·w_j = Σ_k c[i][j][k]·w_k."""
        return [[_flat(self.right_matrix(self.basis[j]) * self.basis_vector(i)) for j in range(self.dim)]
                for i in range(self.dim)]

    def center(self) -> DomainMatrix:
        """Columns span the center: vectors commuting with every generator letter."""
        if self._center is None:
            if not self.right_letters:
                self._center = DomainMatrix.eye(self.dim, self.spec.domain).to_dense()
            else:
                blocks = [(self.right_letters[x] - self.left_letters[x]) for x in sorted(self.right_letters)]
                stacked = blocks[0].vstack(*blocks[1:]) if len(blocks) > 1 else blocks[0]
                self._center = nullspace(stacked.to_dense()).transpose()
            logger.debug(f"Center of level {self.m} has dimension {self._center.shape[1]}")
        return self._center

    def to_json(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "specialization": self.spec.key,
            "dimension": self.dim,
            "kernel_dimension": self.kernel_dim,
            "basis": [word_str(w) for w in self.basis],
            "gram": [[self.spec.render(x) for x in row] for row in entries(self.basis_gram)],
            "trace": [self.spec.render(x) for x in self.trace],
        }


def build_structure(engine: SkeinEngine, m: int) -> StructureAlgebra:
    """Level m as an algebra over the engine's specialization.

    Raises:
        RankDeficiencyUnexpected: Generic-like Gram rank below (2m - 1)!!
    """
    settings = engine.settings.tower
    limit = 4 if settings.enable_four_boxes else min(settings.max_boxes, 3)
    if m > limit:
        raise InvalidParams(f"level {m} is beyond the configured cutoff {limit}", m=m)
    spec = engine.spec
    words = canonical_words(m)
    logger.info(f"Building level {m} over {spec.key} from {len(words)} canonical words")
    # every entry is computed where positivity is certified
    gram = engine.gram(words, m, hermitian=spec.kind != "root_of_unity")
    rank, pivots = rank_and_pivots(gram)
    if spec.is_generic_like and rank != brauer_count(m):
        raise RankDeficiencyUnexpected(f"Gram rank {rank} at level {m}, expected {brauer_count(m)}",
                                       m=m, rank=rank)
    basis = [words[j] for j in pivots]
    basis_gram = gram.extract(list(pivots), list(pivots)).to_dense()
    inverse = basis_gram.inv()
    adj = [adjoint_word(b) for b in basis]
    n = len(basis)

    letters = [(kind, i) for i in range(1, m) for kind in ("h", "r")]
    engine.prefetch([a + b + (x,) for a in adj for b in basis for x in letters]
                    + [a + (x,) + b for a in adj for b in basis for x in letters], m)
    right: Dict[Letter, DomainMatrix] = {}
    left: Dict[Letter, DomainMatrix] = {}
    for x in letters:
        t_right = [[engine.pair_trace_raw(adj[k], basis[j] + (x,), m) for j in range(n)] for k in range(n)]
        t_left = [[engine.pair_trace_raw(adj[k] + (x,), basis[j], m) for j in range(n)] for k in range(n)]
        right[x] = inverse * DomainMatrix(t_right, (n, n), spec.domain)
        left[x] = inverse * DomainMatrix(t_left, (n, n), spec.domain)
    trace = [engine.full_trace_raw(b, m) for b in basis]
    unit = inverse * _column([engine.full_trace_raw(a, m) for a in adj], spec)
    logger.info(f"Level {m}: dimension {n}, kernel {len(words) - n}")
    return StructureAlgebra(m=m, spec=spec, words=words, basis=basis, gram=gram, basis_gram=basis_gram,
                            trace=trace, right_letters=right, left_letters=left, unit=unit)


# --- numeric block decomposition ------------------------------------------

@dataclass
class Block:
    """A simple summand: its Young diagram, matrix size and minimal-idempotent trace."""

    label: YoungDiagram
    size: int
    weight: mpmath.mpc
    idempotent: Any = field(default=None, repr=False)

    def to_json(self, digits: int = 12) -> Dict[str, Any]:
        return {
            "label": self.label.label,
            "size": self.size,
            "trace": mpmath.nstr(mpmath.re(self.weight), digits) if abs(mpmath.im(self.weight)) < 1e-20
            else mpmath.nstr(self.weight, digits),
        }


@dataclass
class BratteliData:
    """Blocks per level and inclusion multiplicities between consecutive levels."""

    spec_key: str
    levels: List[List[Block]]
    inclusions: List[Dict[Tuple[YoungDiagram, YoungDiagram], int]]

    def dimension(self, m: int) -> int:
        return sum(b.size ** 2 for b in self.levels[m - 1])

    def to_json(self) -> Dict[str, Any]:
        return {
            "specialization": self.spec_key,
            "levels": [{"m": k + 1, "dimension": self.dimension(k + 1),
                        "blocks": [b.to_json() for b in level]} for k, level in enumerate(self.levels)],
            "inclusions": [[{"from": a.label, "to": b.label, "multiplicity": c}
                            for (a, b), c in sorted(inc.items())] for inc in self.inclusions],
        }

    def to_dot(self, name: str = "bratteli") -> str:
        lines = [f"graph {name} {{", "  rankdir=TB;", "  node [shape=box];"]
        for k, level in enumerate(self.levels):
            for b in level:
                lines.append(f'  "{k + 1}:{b.label.label}" [label="{b.label.label} ({b.size})"];')
        for k, inc in enumerate(self.inclusions):
            for (a, b), c in sorted(inc.items()):
                for _ in range(c):
                    lines.append(f'  "{k + 1}:{a.label}" -- "{k + 2}:{b.label}";')
        lines.append("}")
        return "\n".join(lines)


class _Numeric:
    """mpmath image of a StructureAlgebra."""

    def __init__(self, S: StructureAlgebra):
        self.S = S
        to_c = S.spec.to_complex
        self.right = [mpmath.matrix([[to_c(x) for x in row] for row in entries(S.right_matrix(b))])
                      for b in S.basis]
        self.trace = [to_c(t) for t in S.trace]

    def vector(self, v: DomainMatrix) -> mpmath.matrix:
        return mpmath.matrix([self.S.spec.to_complex(x) for x in _flat(v)])

    def multiply(self, u, v):
        total = mpmath.matrix(self.S.dim, 1)
        for j in range(self.S.dim):
            if v[j] != 0:
                total += (self.right[j] * u) * v[j]
        return total

    def trace_of(self, u) -> mpmath.mpc:
        return mpmath.fsum(u[k] * self.trace[k] for k in range(self.S.dim))

    def left_trace(self, u) -> mpmath.mpc:
        """Trace of x -> u·x on the whole algebra."""
        return mpmath.fsum((self.right[j] * u)[j] for j in range(self.S.dim))


def _least_squares(C: mpmath.matrix, v: mpmath.matrix) -> mpmath.matrix:
    CH = C.H
    return mpmath.lu_solve(CH * C, CH * v)


def central_idempotents(S: StructureAlgebra, seed: int, tolerance: float) -> List[mpmath.matrix]:
    """Minimal central idempotents from the eigenvectors of a random central element.

    Raises:
        BlockSplitFailure: Eigenvalues closer than the tolerance or a bad idempotent
    """
    num = _Numeric(S)
    Z = S.center()
    c = Z.shape[1]
    C = mpmath.matrix([[S.spec.to_complex(x) for x in row] for row in entries(Z)])
    cols = [C.column(a) for a in range(c)]
    rng = np.random.default_rng(seed)
    rho = [mpmath.mpf(float(x)) for x in rng.uniform(0.5, 1.5, size=c)]
    z = mpmath.matrix(S.dim, 1)
    for a in range(c):
        z += cols[a] * rho[a]
    A = mpmath.matrix(c, c)
    for b in range(c):
        coords = _least_squares(C, num.multiply(z, cols[b]))
        for a in range(c):
            A[a, b] = coords[a]
    eigenvalues, vectors = mpmath.eig(A)
    for s in range(c):
        for t in range(s + 1, c):
            if abs(eigenvalues[s] - eigenvalues[t]) < tolerance:
                raise BlockSplitFailure(f"central eigenvalues {s}, {t} are not separated at level {S.m}",
                                        m=S.m)
    out = []
    for s in range(c):
        v = C * vectors.column(s)
        square = num.multiply(v, v)
        k = max(range(S.dim), key=lambda j: abs(v[j]))
        mu = square[k] / v[k]
        if abs(mu) < tolerance:
            raise BlockSplitFailure(f"nilpotent central vector at level {S.m}", m=S.m)
        e = v * (1 / mu)
        residual = mpmath.norm(num.multiply(e, e) - e)
        if residual > mpmath.sqrt(tolerance):
            raise BlockSplitFailure(f"idempotent residual {mpmath.nstr(residual, 5)} at level {S.m}", m=S.m)
        out.append(e)
    return out


def level_candidates(spec: Specialization, m: int) -> Tuple[LatticeGraph, Dict[YoungDiagram, int]]:
    lattice = full_lattice(m) if spec.is_generic_like else truncated_lattice(spec.N, m)
    return lattice, path_counts(lattice, m)


def decompose_level(S: StructureAlgebra, seed: int, tolerance: float) -> List[Block]:
    """Blocks of one level, each matched to a Young diagram by (size, trace)."""
    num = _Numeric(S)
    _, counts = level_candidates(S.spec, S.m)
    q0 = S.spec.q_complex()
    candidates = {lam: qdim(lam).evaluate(q0) for lam in counts}
    found = []
    graph = nx.Graph()
    for idx, e in enumerate(central_idempotents(S, seed, tolerance)):
        size = int(mpmath.nint(mpmath.sqrt(abs(num.left_trace(e)))))
        weight = num.trace_of(e) / size
        found.append((size, weight, e))
        graph.add_node(("block", idx))
        for lam, c in counts.items():
            if c == size and abs(candidates[lam] - weight) < mpmath.sqrt(tolerance):
                graph.add_edge(("block", idx), lam)
    # equal (size, trace) pairs are interchangeable; any perfect matching labels them
    tops = [("block", idx) for idx in range(len(found))]
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=tops)
    blocks = []
    for idx, (size, weight, e) in enumerate(found):
        lam = matching.get(("block", idx))
        if lam is None:
            raise BlockSplitFailure(f"block of size {size} and trace {mpmath.nstr(weight, 8)} at level {S.m} "
                                    f"matches no Young diagram", m=S.m, size=size)
        blocks.append(Block(label=lam, size=size, weight=weight, idempotent=e))
    blocks.sort(key=lambda b: b.label.sort_key())
    if sum(b.size ** 2 for b in blocks) != S.dim:
        raise BlockSplitFailure(f"block sizes do not add up to dimension {S.dim}", m=S.m)
    return blocks


def inclusion_multiplicities(lower: StructureAlgebra, upper: StructureAlgebra,
                             lower_blocks: List[Block], upper_blocks: List[Block]
                             ) -> Dict[Tuple[YoungDiagram, YoungDiagram], int]:
    """mult(μ, λ) = tr(e_λ·ι(e_μ)) / (n_μ·w_λ) with ι adding a strand on the right."""
    num = _Numeric(upper)
    embed = mpmath.matrix([[0] * lower.dim for _ in range(upper.dim)])
    for j, b in enumerate(lower.basis):
        col = num.vector(upper.coords_of_word(b))
        for k in range(upper.dim):
            embed[k, j] = col[k]
    out = {}
    for mu in lower_blocks:
        image = embed * mu.idempotent
        for lam in upper_blocks:
            value = num.trace_of(num.multiply(lam.idempotent, image)) / (mu.size * lam.weight)
            k = int(mpmath.nint(mpmath.re(value)))
            if abs(value - k) > 1e-6:
                raise BlockSplitFailure(f"non-integral multiplicity {mpmath.nstr(value, 8)}", m=upper.m)
            if k:
                out[(mu.label, lam.label)] = k
    return out


def perron_residuals(data: BratteliData, delta: mpmath.mpc) -> List[mpmath.mpf]:
    """|Σ_λ mult(μ, λ)·w_λ - δ·w_μ| for every block μ below the top level."""
    out = []
    for k, inc in enumerate(data.inclusions):
        upper = {b.label: b.weight for b in data.levels[k + 1]}
        for mu in data.levels[k]:
            total = mpmath.fsum(c * upper[lam] for (a, lam), c in inc.items() if a == mu.label)
            out.append(abs(total - delta * mu.weight))
    return out


def bratteli(engine: SkeinEngine, m_max: int) -> BratteliData:
    """Blocks and inclusions for levels 1..m_max over the engine's specialization."""
    settings = engine.settings
    tolerance = settings.arithmetic.separation_tolerance
    with mpmath.workprec(settings.arithmetic.precision_bits):
        structures = [build_structure(engine, m) for m in range(1, m_max + 1)]
        levels = [decompose_level(S, settings.runtime.seed, tolerance) for S in structures]
        inclusions = [inclusion_multiplicities(structures[k], structures[k + 1], levels[k], levels[k + 1])
                      for k in range(m_max - 1)]
        data = BratteliData(spec_key=engine.spec.key, levels=levels, inclusions=inclusions)
        worst = max(perron_residuals(data, engine.spec.to_complex(engine.spec.delta)), default=0)
        logger.info(f"Bratteli data to level {m_max} over {engine.spec.key}; Perron residual {mpmath.nstr(worst, 3)}")
        if worst > mpmath.sqrt(tolerance):
            raise BlockSplitFailure(f"Perron identity off by {mpmath.nstr(worst, 5)}")
    return data


def block_traces(engine: SkeinEngine, S: StructureAlgebra) -> Dict[YoungDiagram, Any]:
    """Minimal-idempotent trace per block as the exact quantum dimension, checked numerically."""
    settings = engine.settings
    with mpmath.workprec(settings.arithmetic.precision_bits):
        blocks = decompose_level(S, settings.runtime.seed, settings.arithmetic.separation_tolerance)
    return {b.label: S.spec.convert(qdim(b.label)) for b in blocks}


# --- exact certificates ----------------------------------------------------

def casimir(S: StructureAlgebra) -> DomainMatrix:
    """Σ_k b_k·b^k with b^k dual to b_k under (x, y) -> tr(xy)."""
    n = S.dim
    pairing = [[S.trace_of(S.multiply(S.basis_vector(j), S.basis_vector(l))) for l in range(n)]
               for j in range(n)]
    X = DomainMatrix(pairing, (n, n), S.spec.domain).inv().to_list()
    total = DomainMatrix.zeros((n, 1), S.spec.domain).to_dense()
    for k in range(n):
        ek = S.basis_vector(k)
        for l in range(n):
            if X[l][k]:
                total = total + (S.right_matrix(S.basis[l]) * ek) * X[l][k]
    return total


@dataclass
class CasimirCertificate:
    m: int
    spec_key: str
    found: List[str]
    expected: List[str]
    holds: bool


def casimir_certificate(S: StructureAlgebra, blocks: List[Block]) -> CasimirCertificate:
    """charpoly of the Casimir on the center = ∏_λ (t - n_λ/<λ>), exactly."""
    spec = S.spec
    Z = S.center()
    c = Z.shape[1]
    C = casimir(S)
    _, rows = rank_and_pivots(Z.transpose())
    sub_inverse = Z.extract(list(rows), list(range(c))).to_dense().inv()
    columns = []
    for b in range(c):
        zb = Z.extract(list(range(S.dim)), [b]).to_dense()
        image = S.multiply(C, zb)
        columns.append(_flat(sub_inverse * image.extract(list(rows), [0])))
    A = DomainMatrix([[columns[b][a] for b in range(c)] for a in range(c)], (c, c), spec.domain)
    found = charpoly(A)
    expected = [spec.one]
    for blk in blocks:
        root = spec.from_int(blk.size) / spec.convert(qdim(blk.label))
        shifted = expected + [spec.zero]
        for k in range(1, len(shifted)):
            shifted[k] = shifted[k] - root * expected[k - 1]
        expected = shifted
    holds = len(found) == len(expected) and all(x == y for x, y in zip(found, expected))
    logger.info(f"Casimir certificate at level {S.m} over {spec.key}: {'holds' if holds else 'FAILS'}")
    return CasimirCertificate(m=S.m, spec_key=spec.key, found=[spec.render(x) for x in found],
                              expected=[spec.render(x) for x in expected], holds=holds)


@dataclass
class PositivityReport:
    """Exact kernel dimension and certified signs of the quotient Gram's leading minors."""

    m: int
    N: int
    rank: int
    kernel_dim: int
    hermitian: bool
    minors: List[str]
    signs: List[int]

    @property
    def positive_definite(self) -> bool:
        return self.hermitian and all(s == 1 for s in self.signs)

    def to_json(self) -> Dict[str, Any]:
        return {
            "m": self.m, "N": self.N, "rank": self.rank, "kernel_dimension": self.kernel_dim,
            "hermitian": self.hermitian, "positive_definite": self.positive_definite,
            "leading_minors": self.minors, "signs": self.signs,
        }


def positivity_certificate(S: StructureAlgebra, precision_bits: int = 128,
                           max_precision_bits: int = 1024) -> PositivityReport:
    """Sylvester's criterion on the quotient Gram at a root of unity.

    Raises:
        CertificationInconclusive: A minor's sign could not be resolved
    """
    spec = S.spec
    if spec.kind != "root_of_unity":
        raise InvalidParams("positivity is certified at roots of unity only", spec=spec.key)
    G = entries(S.basis_gram)
    n = len(G)
    hermitian = all(G[k][l] == spec.conj(G[l][k]) for k in range(n) for l in range(k, n))
    minors = leading_minors(S.basis_gram)
    signs = []
    for k, minor in enumerate(minors):
        try:
            signs.append(certified_sign(spec.wrap(minor), precision_bits, max_precision_bits))
        except CertificationInconclusive:
            logger.error(f"Leading minor {k + 1} of level {S.m} at N={spec.N} is unresolved")
            raise
    report = PositivityReport(m=S.m, N=spec.N, rank=S.dim, kernel_dim=S.kernel_dim, hermitian=hermitian,
                              minors=[spec.render(x) for x in minors], signs=signs)
    logger.info(f"Positivity at m={S.m}, N={spec.N}: kernel {S.kernel_dim}, "
                f"positive definite {report.positive_definite}")
    return report
