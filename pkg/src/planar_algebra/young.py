#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Young Diagram Combinatorics

Partitions with hooks and contents, Young's lattice YL, its truncations
YL(N) on Y(N) = {λ : h(1,1) ≤ N}, oscillating paths, the transpose symmetry,
the action of tensoring with the antisymmetrizer [1^N] and graph automorphisms.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from planar_algebra.errors import InvalidCellAddition, InvalidParams, NotInTruncation

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


@dataclass(frozen=True, order=False)
class YoungDiagram:
    """A partition given by its weakly decreasing positive rows; () is ∅."""

    rows: Tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        if any(r <= 0 for r in rows) or any(rows[k] < rows[k + 1] for k in range(len(rows) - 1)):
            raise InvalidParams(f"{list(self.rows)} is not a partition")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def parse(cls, text: str) -> "YoungDiagram":
        """Parse '2,1', '[2,1]', '∅' or ''."""
        body = text.strip().strip("[]()").strip()
        if body in ("", "∅", "0", "empty"):
            return cls(())
        try:
            return cls(tuple(int(p) for p in body.replace(" ", "").split(",") if p))
        except ValueError:
            raise InvalidParams(f"cannot read a Young diagram from '{text}'")

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows)

    @property
    def first_hook(self) -> int:
        """h(1,1); zero for ∅."""
        return self.rows[0] + len(self.rows) - 1 if self.rows else 0

    def cells(self) -> List[Cell]:
        """Cells (row, column), 1-based, in row reading order."""
        return [(i + 1, j + 1) for i, r in enumerate(self.rows) for j in range(r)]

    def transpose(self) -> "YoungDiagram":
        if not self.rows:
            return self
        return YoungDiagram(tuple(sum(1 for r in self.rows if r > j) for j in range(self.rows[0])))

    def addable_cells(self) -> List[Cell]:
        out = []
        for i in range(len(self.rows) + 1):
            current = self.rows[i] if i < len(self.rows) else 0
            above = self.rows[i - 1] if i > 0 else None
            if above is None or current < above:
                out.append((i + 1, current + 1))
        return out

    def removable_cells(self) -> List[Cell]:
        out = []
        for i, r in enumerate(self.rows):
            below = self.rows[i + 1] if i + 1 < len(self.rows) else 0
            if r > below:
                out.append((i + 1, r))
        return out

    def add_cell(self, cell: Cell) -> "YoungDiagram":
        if cell not in self.addable_cells():
            raise InvalidCellAddition(f"cell {cell} cannot be added to {self}", cell=cell)
        rows = list(self.rows) + [0]
        rows[cell[0] - 1] += 1
        return YoungDiagram(tuple(rows))

    def remove_cell(self, cell: Cell) -> "YoungDiagram":
        if cell not in self.removable_cells():
            raise InvalidCellAddition(f"cell {cell} cannot be removed from {self}", cell=cell)
        rows = list(self.rows)
        rows[cell[0] - 1] -= 1
        return YoungDiagram(tuple(rows))

    def cell_difference(self, smaller: "YoungDiagram") -> Cell:
        """The unique cell of self not in smaller (self must cover smaller)."""
        for cell in smaller.addable_cells():
            if smaller.add_cell(cell) == self:
                return cell
        raise InvalidCellAddition(f"{self} does not cover {smaller}")

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.size, tuple(-r for r in self.rows))

    def __lt__(self, other: "YoungDiagram") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def label(self) -> str:
        """Partition string such as '2,1'; '∅' for the empty diagram."""
        return ",".join(str(r) for r in self.rows) if self.rows else "∅"

    def __str__(self):
        return f"[{','.join(str(r) for r in self.rows)}]" if self.rows else "∅"

    def __repr__(self):
        return f"YoungDiagram({list(self.rows)})"


EMPTY = YoungDiagram(())


def hooks(lam: YoungDiagram) -> Dict[Cell, int]:
    conj = lam.transpose().rows
    return {(i, j): (lam.rows[i - 1] - j) + (conj[j - 1] - i) + 1 for i, j in lam.cells()}


def contents(lam: YoungDiagram) -> Dict[Cell, int]:
    return {(i, j): j - i for i, j in lam.cells()}


def content(cell: Cell) -> int:
    return cell[1] - cell[0]


@lru_cache(maxsize=None)
def partitions(n: int) -> Tuple[YoungDiagram, ...]:
    """All partitions of n, rows in reverse lexicographic order."""
    def rec(remaining: int, bound: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, bound), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    return tuple(YoungDiagram(p) for p in rec(n, n))


def in_truncation(lam: YoungDiagram, N: int) -> bool:
    return lam.first_hook <= N


def rectangle(k: int, N: int) -> YoungDiagram:
    """r_k: k rows of N + 1 - k cells."""
    if not 0 <= k <= N + 1:
        raise InvalidParams(f"rectangle index {k} out of range for N={N}")
    if k == 0 or k == N + 1:
        return EMPTY
    return YoungDiagram((N + 1 - k,) * k)


def _max_truncated_size(N: int) -> int:
    return max((r * (N + 1 - r) for r in range(N + 1)), default=0)


@dataclass
class LatticeGraph:
    """A downward-closed piece of Young's lattice rooted at ∅.

    The underlying networkx graph holds YoungDiagram vertices; `boundary`
    collects the diagrams one cell outside (B(N) for truncated lattices).
    """

    graph: nx.Graph
    N: Optional[int] = None
    depth: Optional[int] = None
    boundary: FrozenSet[YoungDiagram] = field(default_factory=frozenset)
    root: YoungDiagram = EMPTY

    @property
    def vertices(self) -> List[YoungDiagram]:
        return sorted(self.graph.nodes)

    @property
    def edges(self) -> List[Tuple[YoungDiagram, YoungDiagram]]:
        pairs = [(a, b) if a.size < b.size else (b, a) for a, b in self.graph.edges]
        return sorted(pairs)

    def neighbours(self, lam: YoungDiagram) -> List[YoungDiagram]:
        return sorted(self.graph.neighbors(lam))

    def __contains__(self, lam: YoungDiagram) -> bool:
        return lam in self.graph

    def to_dot(self, name: str = "lattice") -> str:
        lines = [f"graph {name} {{", "  node [shape=box];"]
        for v in self.vertices:
            style = ", style=filled, fillcolor=lightblue" if v == self.root else ""
            lines.append(f'  "{v.label}" [label="{v.label}"{style}];')
        for a, b in self.edges:
            lines.append(f'  "{a.label}" -- "{b.label}";')
        for v in sorted(self.boundary):
            lines.append(f'  "{v.label}" [label="{v.label}", style=dashed];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({
            "N": self.N,
            "depth": self.depth,
            "vertices": [v.label for v in self.vertices],
            "edges": [[a.label, b.label] for a, b in self.edges],
            "boundary": [v.label for v in sorted(self.boundary)],
        })


def _lattice(depth: int, keep, N: Optional[int]) -> LatticeGraph:
    g = nx.Graph()
    g.add_node(EMPTY)
    boundary = set()
    frontier = [EMPTY]
    for _ in range(depth):
        nxt = []
        for lam in frontier:
            for cell in lam.addable_cells():
                mu = lam.add_cell(cell)
                if not keep(mu):
                    boundary.add(mu)
                    continue
                if mu not in g:
                    nxt.append(mu)
                g.add_edge(lam, mu)
        frontier = nxt
    return LatticeGraph(graph=g, N=N, depth=depth, boundary=frozenset(boundary))


def full_lattice(depth: int) -> LatticeGraph:
    """Young's lattice YL up to diagrams with `depth` cells."""
    return _lattice(depth, lambda lam: True, None)


def truncated_lattice(N: int, depth: Optional[int] = None) -> LatticeGraph:
    """YL(N) on diagrams of Y(N) with at most `depth` cells (all of Y(N) if None)."""
    if N < 1:
        raise InvalidParams(f"N must be positive, got {N}")
    if depth is None:
        depth = _max_truncated_size(N)
    lattice = _lattice(depth, lambda lam: in_truncation(lam, N), N)
    logger.debug(f"YL({N}) to depth {depth}: {lattice.graph.number_of_nodes()} vertices, "
                 f"{len(lattice.boundary)} boundary diagrams")
    return lattice


@dataclass(frozen=True)
class OscPath:
    """An oscillating path ∅ = λ_0, λ_1, ... adding or removing one cell per step."""

    steps: Tuple[YoungDiagram, ...]

    def __post_init__(self):
        if not self.steps or self.steps[0] != EMPTY:
            raise InvalidParams("an oscillating path starts at ∅")
        for a, b in zip(self.steps, self.steps[1:]):
            if abs(a.size - b.size) != 1:
                raise InvalidParams(f"{a} and {b} are not adjacent")

    @property
    def end(self) -> YoungDiagram:
        return self.steps[-1]

    def __len__(self):
        return len(self.steps) - 1


def path_counts(G: LatticeGraph, m: int) -> Dict[YoungDiagram, int]:
    """Number of length-m paths from ∅ to each vertex."""
    counts = {G.root: 1}
    for _ in range(m):
        nxt: Dict[YoungDiagram, int] = {}
        for v, c in counts.items():
            for w in G.graph.neighbors(v):
                nxt[w] = nxt.get(w, 0) + c
        counts = nxt
    return counts


def count_loops(G: LatticeGraph, m: int) -> int:
    """Σ_v (#paths of length m from ∅ to v)²: the dimension of level m."""
    if G.depth is not None and G.N is None and G.depth < m:
        logger.warning(f"Lattice depth {G.depth} is below the level {m}; counts are truncated")
    return sum(c * c for c in path_counts(G, m).values())


def oscillating_paths(G: LatticeGraph, m: int, target: Optional[YoungDiagram] = None) -> List[OscPath]:
    """All length-m oscillating paths, optionally ending at `target`."""
    out = []

    def walk(path: List[YoungDiagram]):
        if len(path) == m + 1:
            if target is None or path[-1] == target:
                out.append(OscPath(tuple(path)))
            return
        for w in sorted(G.graph.neighbors(path[-1])):
            walk(path + [w])

    walk([G.root])
    return out


def transpose_sym(lam: YoungDiagram) -> YoungDiagram:
    return lam.transpose()


def g_tensor(lam: YoungDiagram, N: int) -> YoungDiagram:
    """λ ⊗ [1^N]: drop the first row (k cells) and prepend a column of N - k cells."""
    if not in_truncation(lam, N):
        raise NotInTruncation(f"{lam} is not in Y({N})", N=N)
    k = lam.rows[0] if lam.rows else 0
    rest = list(lam.rows[1:])
    height = N - k
    rest += [0] * max(0, height - len(rest))
    rows = [r + 1 if j < height else r for j, r in enumerate(rest)]
    return YoungDiagram(tuple(rows))


def g_power(lam: YoungDiagram, N: int, k: int) -> YoungDiagram:
    for _ in range(k % (N + 1)):
        lam = g_tensor(lam, N)
    return lam


@dataclass
class AutomorphismGroup:
    """Automorphisms of a lattice graph as vertex permutations."""

    elements: List[Dict[YoungDiagram, YoungDiagram]]
    generators: List[Dict[YoungDiagram, YoungDiagram]]

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_labels(self) -> List[Dict[str, str]]:
        return [{a.label: b.label for a, b in sorted(p.items())} for p in self.generators]


def _compose(p: Dict, r: Dict) -> Dict:
    return {v: p[r[v]] for v in r}


def _closure(gens: List[Dict], identity: Dict) -> List[Dict]:
    seen = {tuple(sorted(identity.items()))}
    elems = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(g, x)
                key = tuple(sorted(y.items()))
                if key not in seen:
                    seen.add(key)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def graph_automorphisms(G: LatticeGraph) -> AutomorphismGroup:
    """All automorphisms of the graph, with a small generating set."""
    matcher = GraphMatcher(G.graph, G.graph)
    elements = [dict(m) for m in matcher.isomorphisms_iter()]
    identity = {v: v for v in G.graph.nodes}
    generators: List[Dict] = []
    span = [identity]
    span_keys = {tuple(sorted(identity.items()))}
    for p in sorted(elements, key=lambda e: sum(1 for v in e if e[v] != v)):
        if tuple(sorted(p.items())) in span_keys:
            continue
        generators.append(p)
        span = _closure(generators, identity)
        span_keys = {tuple(sorted(e.items())) for e in span}
        if len(span) == len(elements):
            break
    logger.info(f"Automorphism group of order {len(elements)} with {len(generators)} generators")
    return AutomorphismGroup(elements=elements, generators=generators)


def diagrams_from_labels(labels: Sequence[str]) -> List[YoungDiagram]:
    return [YoungDiagram.parse(s) for s in labels]
