#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Planar Diagrams

Closed diagrams built from 4-valent nodes and a perfect matching of their
ports. A node's ports are numbered counterclockwise 0 = SW, 1 = SE, 2 = NE,
3 = NW; strands run 0-2 and 1-3 and region k lies between ports k and k+1.
Port k of node v is the dart 4v + k.

ClosedDiagram nodes carry the rotation mark of the 2-box R. OrientedLink
nodes carry the entry port p (strands enter at p and p+1) and a sign, +1 when
the strand entering at p passes over.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from planar_algebra.errors import IndexOutOfRange, MalformedLink, NonPlanarWiring

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]
Pairing = Tuple[Tuple[int, int], Tuple[int, int]]


def dart(node: int, port: int) -> int:
    return 4 * node + port % 4


def node_of(d: int) -> int:
    return d // 4


def port_of(d: int) -> int:
    return d % 4


def through(d: int) -> int:
    """The dart on the other end of the strand through the node."""
    return dart(node_of(d), port_of(d) + 2)


def oriented_pairs(p: int) -> Pairing:
    """O smoothing at entry p: (p, p+3), (p+1, p+2)."""
    return ((p % 4, (p + 3) % 4), ((p + 1) % 4, (p + 2) % 4))


def turnback_pairs(p: int) -> Pairing:
    """U smoothing at entry p: (p, p+1), (p+2, p+3)."""
    return ((p % 4, (p + 1) % 4), ((p + 2) % 4, (p + 3) % 4))


def resolve_chains(edges: Iterable[Tuple[Hashable, Hashable]], is_dart: Callable[[Hashable], bool]
                   ) -> Tuple[Dict[int, int], int]:
    """Contract auxiliary points of degree two; return dart wiring and closed loops.

    Every dart must appear in exactly one edge and every auxiliary point in two.
    """
    edges = list(edges)
    incident: Dict[Hashable, List[int]] = {}
    for idx, (a, b) in enumerate(edges):
        incident.setdefault(a, []).append(idx)
        incident.setdefault(b, []).append(idx)
    used = [False] * len(edges)

    def other(idx: int, point: Hashable) -> Hashable:
        a, b = edges[idx]
        return b if a == point else a

    def step(idx: int, point: Hashable) -> int:
        first, second = incident[point]
        return second if first == idx else first

    wires: Dict[int, int] = {}
    for start in incident:
        if not is_dart(start) or start in wires:
            continue
        idx = incident[start][0]
        used[idx] = True
        cur = other(idx, start)
        while not is_dart(cur):
            idx = step(idx, cur)
            used[idx] = True
            cur = other(idx, cur)
        wires[start] = cur
        wires[cur] = start
    loops = 0
    for idx in range(len(edges)):
        if used[idx]:
            continue
        loops += 1
        start = edges[idx][0]
        used[idx] = True
        cur = other(idx, start)
        while cur != start:
            idx = step(idx, cur)
            used[idx] = True
            cur = other(idx, cur)
    return wires, loops


@dataclass
class PlanarDiagram:
    """Nodes with decorations, a fixed-point-free wiring of their darts and free circles."""

    nodes: Dict[int, Any] = field(default_factory=dict)
    wires: Dict[int, int] = field(default_factory=dict)
    circles: int = 0

    def validate_wiring(self) -> None:
        expected = {dart(v, k) for v in self.nodes for k in range(4)}
        if set(self.wires) != expected:
            raise MalformedLink("wiring does not cover every port exactly once")
        for d, e in self.wires.items():
            if d == e or self.wires.get(e) != d:
                raise MalformedLink(f"port {d} is not matched to a partner that matches it back")

    @property
    def crossing_count(self) -> int:
        return len(self.nodes)

    def _rebuild(self, nodes: Dict[int, Any], wires: Dict[int, int], circles: int) -> "PlanarDiagram":
        return type(self)(nodes=nodes, wires=wires, circles=circles)

    def splice(self, pairings: Dict[int, Pairing]) -> "PlanarDiagram":
        """Remove nodes, joining their ports in pairs; closed chains become circles."""
        removed = {dart(v, k) for v in pairings for k in range(4)}
        internal: Dict[int, int] = {}
        for v, pairs in pairings.items():
            for a, b in pairs:
                internal[dart(v, a)] = dart(v, b)
                internal[dart(v, b)] = dart(v, a)
        wires = {d: e for d, e in self.wires.items() if d not in removed and e not in removed}
        visited: Set[int] = set()
        for d, e in self.wires.items():
            if d in removed or e not in removed:
                continue
            cur = e
            while True:
                visited.add(cur)
                nxt = internal[cur]
                visited.add(nxt)
                target = self.wires[nxt]
                if target not in removed:
                    break
                cur = target
            wires[d] = target
        loops = 0
        for d in removed:
            if d in visited:
                continue
            loops += 1
            cur = d
            while cur not in visited:
                visited.add(cur)
                nxt = internal[cur]
                visited.add(nxt)
                cur = self.wires[nxt]
        nodes = {v: deco for v, deco in self.nodes.items() if v not in pairings}
        return self._rebuild(nodes, wires, self.circles + loops)

    def components(self) -> List[Set[int]]:
        """Node sets of the connected pieces, ordered by smallest node."""
        remaining = set(self.nodes)
        out = []
        while remaining:
            start = min(remaining)
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for k in range(4):
                    u = node_of(self.wires[dart(v, k)])
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
            remaining -= comp
            out.append(comp)
        return out

    def restrict(self, node_set: Set[int]) -> "PlanarDiagram":
        nodes = {v: self.nodes[v] for v in node_set}
        wires = {d: e for d, e in self.wires.items() if node_of(d) in node_set}
        return self._rebuild(nodes, wires, 0)

    def split(self) -> List["PlanarDiagram"]:
        return [self.restrict(c) for c in self.components()]

    def relative_decoration(self, v: int, offset: int) -> Tuple[int, ...]:
        raise NotImplementedError

    def canonical_code(self) -> Tuple:
        """Rotation-invariant code of a connected diagram: the least BFS code over all start darts."""
        best = None
        for start in sorted(self.wires):
            v0, k0 = node_of(start), port_of(start)
            label = {v0: 0}
            offset = {v0: k0}
            order = [v0]
            code = []
            idx = 0
            while idx < len(order):
                v = order[idx]
                idx += 1
                entry: List[Any] = [self.relative_decoration(v, offset[v])]
                for j in range(4):
                    e = self.wires[dart(v, offset[v] + j)]
                    u, pu = node_of(e), port_of(e)
                    if u not in label:
                        label[u] = len(order)
                        offset[u] = pu
                        order.append(u)
                    entry.append((label[u], (pu - offset[u]) % 4))
                code.append(tuple(entry))
                if best is not None and tuple(code) > best[:len(code)]:
                    break
            else:
                candidate = tuple(code)
                if best is None or candidate < best:
                    best = candidate
        return best or ()

    def faces(self) -> int:
        """Number of faces of the rotation system (orbits of wire-then-turn)."""
        seen: Set[int] = set()
        count = 0
        for d in self.wires:
            if d in seen:
                continue
            count += 1
            cur = d
            while cur not in seen:
                seen.add(cur)
                e = self.wires[cur]
                cur = dart(node_of(e), port_of(e) - 1)
        return count

    def check_planar(self) -> None:
        """Euler characteristic V - E + F = 2 on every connected piece."""
        for piece in self.split():
            n = len(piece.nodes)
            if n and n - 2 * n + piece.faces() != 2:
                raise NonPlanarWiring(f"wiring of {n} nodes is not planar", nodes=n)


class ClosedDiagram(PlanarDiagram):
    """Closed diagram of R-labeled nodes; the decoration is the rotation mark (region of $)."""

    def relative_decoration(self, v: int, offset: int) -> Tuple[int, ...]:
        return ((self.nodes[v] - offset) % 4,)

    def capped_node(self) -> Optional[int]:
        """A node with two adjacent ports wired together (its value is zero)."""
        for v in self.nodes:
            for k in range(4):
                if self.wires[dart(v, k)] == dart(v, k + 1):
                    return v
        return None

    def strand_components(self) -> List[List[int]]:
        """Immersed circles as cyclic lists of darts traversed leaving-then-entering."""
        seen: Set[int] = set()
        out = []
        for d0 in sorted(self.wires):
            if d0 in seen:
                continue
            comp = []
            x = d0
            while x not in seen:
                y = self.wires[x]
                seen.add(x)
                seen.add(y)
                comp.extend([x, y])
                x = through(y)
            out.append(comp)
        return out

    def orient(self, flips: Optional[Sequence[int]] = None, signs: Optional[Dict[int, int]] = None
               ) -> "OrientedLink":
        """Orient each immersed circle (flip bit 1 reverses it) and make every node a crossing.

        By default every crossing gets sign +1.
        """
        comps = self.strand_components()
        flips = list(flips) if flips is not None else [0] * len(comps)
        ins: Dict[int, Set[int]] = {v: set() for v in self.nodes}
        for comp, flip in zip(comps, flips):
            # comp alternates out-dart, in-dart; flipping swaps the roles
            for idx, d in enumerate(comp):
                is_in = (idx % 2 == 1) != bool(flip)
                if is_in:
                    ins[node_of(d)].add(port_of(d))
        nodes = {}
        for v, entry in ins.items():
            p = next(k for k in range(4) if {k, (k + 1) % 4} == entry)
            nodes[v] = (p, (signs or {}).get(v, 1))
        return OrientedLink(nodes=nodes, wires=dict(self.wires), circles=self.circles)

    def disjoint_union(self, other: "ClosedDiagram") -> "ClosedDiagram":
        shift = (max(self.nodes) + 1) if self.nodes else 0
        nodes = dict(self.nodes)
        wires = dict(self.wires)
        for v, m in other.nodes.items():
            nodes[v + shift] = m
        for d, e in other.wires.items():
            wires[d + 4 * shift] = e + 4 * shift
        return ClosedDiagram(nodes=nodes, wires=wires, circles=self.circles + other.circles)

    @classmethod
    def from_word(cls, word: Sequence[Letter], m: int) -> "ClosedDiagram":
        """Markov closure of a word stacked bottom to top on m strands.

        r_i is R on strands i, i+1 (1-based) with mark 0; h_i is a cap
        followed by a cup.
        """
        edges: List[Tuple[Hashable, Hashable]] = []
        pending: List[Hashable] = [("b", j) for j in range(m)]
        nodes: Dict[int, int] = {}
        for k, (kind, i) in enumerate(word):
            if not 1 <= i < m:
                raise IndexOutOfRange(f"letter {kind}{i} does not fit {m} strands", letter=f"{kind}{i}", m=m)
            left, right = i - 1, i
            if kind == "r":
                v = len(nodes)
                nodes[v] = 0
                edges.append((pending[left], dart(v, 0)))
                edges.append((pending[right], dart(v, 1)))
                pending[left], pending[right] = dart(v, 3), dart(v, 2)
            elif kind == "h":
                cup = (("c", k, 0), ("c", k, 1))
                edges.append((pending[left], pending[right]))
                edges.append(cup)
                pending[left], pending[right] = cup
            else:
                raise IndexOutOfRange(f"unknown letter '{kind}'", letter=kind)
        for j in range(m):
            edges.append((pending[j], ("b", j)))
        wires, loops = resolve_chains(edges, lambda p: isinstance(p, int))
        return cls(nodes=nodes, wires=wires, circles=loops)

    # text format: circles=<k>; x(a,b,c,d;rot=m); ...
    _CIRCLES = re.compile(r"circles\s*=\s*(\d+)")
    _NODE = re.compile(r"x\(\s*(-?\w+)\s*,\s*(-?\w+)\s*,\s*(-?\w+)\s*,\s*(-?\w+)\s*;\s*rot\s*=\s*(\d+)\s*\)")

    @classmethod
    def parse(cls, text: str, check: bool = True) -> "ClosedDiagram":
        """Read `circles=<k>; x(<a>,<b>,<c>,<d>;rot=<m>)` with each wire label used twice."""
        found = cls._CIRCLES.search(text)
        circles = int(found.group(1)) if found else 0
        nodes: Dict[int, int] = {}
        ends: Dict[str, List[int]] = {}
        for match in cls._NODE.finditer(text):
            v = len(nodes)
            nodes[v] = int(match.group(5)) % 4
            for k in range(4):
                ends.setdefault(match.group(k + 1), []).append(dart(v, k))
        if not nodes and "x(" in text:
            raise MalformedLink("could not read any node of the diagram")
        wires: Dict[int, int] = {}
        for label, darts in ends.items():
            if len(darts) != 2:
                raise MalformedLink(f"wire '{label}' is used {len(darts)} times", wire=label)
            a, b = darts
            wires[a], wires[b] = b, a
        diagram = cls(nodes=nodes, wires=wires, circles=circles)
        diagram.validate_wiring()
        if check:
            diagram.check_planar()
        return diagram

    def render(self) -> str:
        labels: Dict[int, int] = {}
        for d in sorted(self.wires):
            if d not in labels:
                labels[d] = labels[self.wires[d]] = len(labels) // 2 + 1
        parts = [f"circles={self.circles}"]
        for v in sorted(self.nodes):
            ports = ",".join(str(labels[dart(v, k)]) for k in range(4))
            parts.append(f"x({ports};rot={self.nodes[v]})")
        return "; ".join(parts)


class OrientedLink(PlanarDiagram):
    """Oriented link diagram; node decoration is (entry port p, sign)."""

    def relative_decoration(self, v: int, offset: int) -> Tuple[int, ...]:
        p, s = self.nodes[v]
        return ((p - offset) % 4, s)

    def validate(self) -> None:
        self.validate_wiring()
        for v, (p, s) in self.nodes.items():
            if s not in (1, -1) or p not in range(4):
                raise MalformedLink(f"crossing {v} has entry {p} and sign {s}", node=v)
        for d, e in self.wires.items():
            if self.is_in(d) == self.is_in(e):
                raise MalformedLink(f"wire {d}-{e} joins two {'in' if self.is_in(d) else 'out'}-ports")

    def is_in(self, d: int) -> bool:
        p = self.nodes[node_of(d)][0]
        return (port_of(d) - p) % 4 in (0, 1)

    def is_over(self, d: int) -> bool:
        """Whether the strand entering at in-port d passes over."""
        p, s = self.nodes[node_of(d)]
        return (port_of(d) == p) == (s == 1)

    def writhe(self) -> int:
        return sum(s for _, s in self.nodes.values())

    def switch(self, v: int) -> "OrientedLink":
        nodes = dict(self.nodes)
        p, s = nodes[v]
        nodes[v] = (p, -s)
        return OrientedLink(nodes=nodes, wires=dict(self.wires), circles=self.circles)

    def smooth(self, v: int) -> "OrientedLink":
        return self.splice({v: oriented_pairs(self.nodes[v][0])})

    def link_components(self) -> List[List[int]]:
        """Each component as the in-darts along its orientation, started at its smallest in-dart."""
        seen: Set[int] = set()
        out = []
        for d0 in sorted(d for d in self.wires if self.is_in(d)):
            if d0 in seen:
                continue
            comp = []
            x = d0
            while x not in seen:
                seen.add(x)
                comp.append(x)
                x = self.wires[through(x)]
            out.append(comp)
        return out

    @classmethod
    def from_braid(cls, word: Sequence[int], strands: int) -> "OrientedLink":
        """Closure of a braid; generator ±i crosses strands i, i+1 positively or negatively."""
        nodes: Dict[int, Tuple[int, int]] = {}
        wires: Dict[int, int] = {}
        pending: List[Optional[int]] = [None] * strands
        bottom: List[Optional[int]] = [None] * strands
        for g in word:
            i = abs(g)
            if g == 0 or i >= strands:
                raise MalformedLink(f"braid generator {g} does not fit {strands} strands")
            v = len(nodes)
            nodes[v] = (0, 1 if g > 0 else -1)
            for pos, port in ((i - 1, 0), (i, 1)):
                if pending[pos] is None:
                    bottom[pos] = dart(v, port)
                else:
                    wires[pending[pos]] = dart(v, port)
                    wires[dart(v, port)] = pending[pos]
            pending[i - 1], pending[i] = dart(v, 3), dart(v, 2)
        circles = 0
        for pos in range(strands):
            if pending[pos] is None:
                circles += 1
            else:
                wires[pending[pos]] = bottom[pos]
                wires[bottom[pos]] = pending[pos]
        link = cls(nodes=nodes, wires=wires, circles=circles)
        link.validate()
        return link

    @classmethod
    def from_pd(cls, crossings: Sequence[Sequence[int]]) -> "OrientedLink":
        """From PD codes X[i,j,k,l]: i enters below, ports run counterclockwise.

        The over strand runs j → l when l follows j in the edge numbering.
        """
        labels = sorted({x for c in crossings for x in c})
        succ = {a: labels[(k + 1) % len(labels)] for k, a in enumerate(labels)}
        nodes: Dict[int, Tuple[int, int]] = {}
        ends: Dict[int, List[int]] = {}
        for v, (i, j, k, l) in enumerate(crossings):
            if succ[j] == l:
                nodes[v] = (0, -1)
            else:
                nodes[v] = (3, 1)
            for port, label in enumerate((i, j, k, l)):
                ends.setdefault(label, []).append(dart(v, port))
        wires: Dict[int, int] = {}
        for label, darts in ends.items():
            if len(darts) != 2:
                raise MalformedLink(f"edge {label} appears {len(darts)} times")
            a, b = darts
            wires[a], wires[b] = b, a
        link = cls(nodes=nodes, wires=wires)
        link.validate()
        return link


def random_braid_link(rng: np.random.Generator, strands: int, length: int) -> OrientedLink:
    word = []
    for _ in range(length):
        i = int(rng.integers(1, strands))
        word.append(i if rng.random() < 0.5 else -i)
    return OrientedLink.from_braid(word, strands)


def random_word(rng: np.random.Generator, m: int, length: int, r_weight: float = 0.6) -> Word:
    letters = []
    for _ in range(length):
        kind = "r" if rng.random() < r_weight else "h"
        letters.append((kind, int(rng.integers(1, m))))
    return tuple(letters)


def random_closed_diagram(rng: np.random.Generator, m: int, length: int, max_nodes: int) -> ClosedDiagram:
    """Closure of a random word, resampled until it has between 1 and max_nodes R nodes."""
    while True:
        word = random_word(rng, m, length)
        diagram = ClosedDiagram.from_word(word, m)
        if 1 <= len(diagram.nodes) <= max_nodes:
            return diagram
