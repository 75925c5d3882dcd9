#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
HOMFLY-PT Evaluation

The framed invariant with P(L+) - P(L-) = (q - q^-1)·P(L0), positive kink r
and unknot δ. Diagrams are reduced to descending ones by switching the first
crossing met from below along a based traversal; connected pieces are
memoized by their canonical code.
"""

import logging
from typing import Any, Dict, Optional

from planar_algebra.diagrams import OrientedLink, dart, oriented_pairs
from planar_algebra.exactnum import Specialization

logger = logging.getLogger(__name__)


class HomflyEvaluator:
    """Evaluates oriented link diagrams in the raw domain of a Specialization."""

    def __init__(self, spec: Specialization, cache_size: int = 200000):
        """Initialize the evaluator.

        Args:
            spec: Where the scalars live
            cache_size: Maximum number of memoized connected pieces
        """
        self.spec = spec
        self.cache_size = cache_size
        self.cache: Dict[Any, Any] = {}
        self.hits = 0

    def evaluate(self, link: OrientedLink) -> Any:
        link.validate()
        return self._value(link)

    def _value(self, link: OrientedLink) -> Any:
        spec = self.spec
        link, factor = self._strip_kinks(link)
        value = factor * spec.power(spec.delta, link.circles) if link.circles else factor
        for piece in link.split():
            value = value * self._piece(piece)
            if not value:
                break
        return value

    def _strip_kinks(self, link: OrientedLink):
        """Remove Reidemeister I loops, collecting r^(±1) per loop."""
        spec = self.spec
        factor = spec.one
        changed = True
        while changed:
            changed = False
            for v, (p, s) in sorted(link.nodes.items()):
                if (link.wires[dart(v, p + 2)] == dart(v, p + 1)
                        or link.wires[dart(v, p + 3)] == dart(v, p)):
                    smoothed = link.splice({v: oriented_pairs(p)})
                    link = OrientedLink(nodes=smoothed.nodes, wires=smoothed.wires,
                                        circles=smoothed.circles - 1)
                    factor = factor * (spec.r if s == 1 else spec.one / spec.r)
                    changed = True
                    break
        return link, factor

    def _piece(self, piece: OrientedLink) -> Any:
        code = piece.canonical_code()
        if code in self.cache:
            self.hits += 1
            return self.cache[code]
        value = self._descend(piece)
        if len(self.cache) >= self.cache_size:
            logger.debug(f"HOMFLY cache full at {len(self.cache)} entries; clearing")
            self.cache.clear()
        self.cache[code] = value
        return value

    @staticmethod
    def first_ascending_crossing(link: OrientedLink) -> Optional[int]:
        """First crossing whose first visit along the based traversal is from below."""
        visited = set()
        for comp in link.link_components():
            for d in comp:
                v = d // 4
                if v in visited:
                    continue
                visited.add(v)
                if not link.is_over(d):
                    return v
        return None

    def _descend(self, link: OrientedLink) -> Any:
        spec = self.spec
        v = self.first_ascending_crossing(link)
        if v is None:
            return (spec.power(spec.r, link.writhe())
                    * spec.power(spec.delta, len(link.link_components())))
        sign = link.nodes[v][1]
        switched = self._value(link.switch(v))
        smoothed = self._value(link.smooth(v))
        if sign == 1:
            return switched + spec.z * smoothed
        return switched - spec.z * smoothed


def homfly(link: OrientedLink, spec: Optional[Specialization] = None):
    """HOMFLY-PT value of an oriented link, wrapped for the specialization (generic by default)."""
    spec = spec or Specialization.generic()
    return spec.wrap(HomflyEvaluator(spec).evaluate(link))
