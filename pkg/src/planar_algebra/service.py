#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Planar Algebra Service

Validates commands and dispatches them to the library, producing Reports.
One SkeinEngine is kept per specialization so caches survive across the
steps of a command.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import mpmath
from pydantic import BaseModel, Field, ValidationError, model_validator

from config.settings import AppSettings
from planar_algebra.diagrams import ClosedDiagram, OrientedLink
from planar_algebra.dims import (boundary_vanishing, check_perron_table, dim_ratio_by_residue,
                                 dim_table, level_two_identity, qdim)
from planar_algebra.dsl import parse_word_dsl
from planar_algebra.errors import InvalidParams
from planar_algebra.exactnum import Specialization, rank_and_pivots
from planar_algebra.fuse import (equivariantization_dot, equivariantization_graph, fusion_data,
                                 graded_branching, invertible_group, quotient_simples,
                                 subfactor_indices, tensor_with_box)
from planar_algebra.hecke import (branch, branching_sum, embed, murphy, murphy_eigenvalue, star,
                                  symmetrizer, young_idempotent)
from planar_algebra.homfly import HomflyEvaluator
from planar_algebra.reports import Report, dot_report, json_report, table_report
from planar_algebra.skein import (SkeinEngine, canonical_words, far_commutation_relations,
                                  relation_catalogue, word_str)
from planar_algebra.tower import (bratteli, build_structure, casimir_certificate, decompose_level,
                                  positivity_certificate)
from planar_algebra.young import (YoungDiagram, count_loops, full_lattice, graph_automorphisms,
                                  partitions, truncated_lattice)

logger = logging.getLogger(__name__)

Verb = Literal["dims", "graph", "fusion", "skein", "tower", "verify", "orbits", "indices"]

ACTIONS: Dict[str, Tuple[str, ...]] = {
    "dims": ("table",),
    "graph": ("lattice", "automorphisms", "equivariant"),
    "fusion": ("simples", "group", "tensor"),
    "skein": ("trace", "eval", "gram", "homfly"),
    "tower": ("build", "bratteli", "certify"),
    "verify": ("all", "yang-baxter", "relations", "far-commutation", "positivity", "dims", "hecke"),
    "orbits": ("simples", "branch"),
    "indices": ("index",),
}

NEEDS_N = {("graph", "automorphisms"), ("graph", "equivariant"), ("fusion", "simples"), ("fusion", "group"),
           ("fusion", "tensor"), ("tower", "certify"), ("verify", "positivity"), ("orbits", "simples"),
           ("orbits", "branch"), ("indices", "index")}
NEEDS_ARGUMENT = {("skein", "trace"), ("skein", "eval"), ("skein", "homfly"), ("fusion", "tensor")}


class Command(BaseModel):
    """A verb, an optional action and argument, and typed options."""

    verb: Verb
    action: Optional[str] = None
    argument: Optional[str] = None
    N: Optional[int] = Field(None, ge=1)
    boxes: int = Field(2, ge=1, le=4)
    k: int = Field(1, ge=0)
    l: int = Field(0, ge=0)
    m: Optional[int] = Field(None, ge=1)
    depth: Optional[int] = Field(None, ge=0)
    max_cells: int = Field(6, ge=0)
    float_digits: int = Field(0, ge=0)
    dot: bool = False
    as_json: bool = False

    @model_validator(mode="after")
    def check_action(self) -> "Command":
        allowed = ACTIONS[self.verb]
        if self.action is None:
            self.action = allowed[0]
        if self.action not in allowed:
            raise ValueError(f"'{self.action}' is not an action of '{self.verb}'; choose from {list(allowed)}")
        key = (self.verb, self.action)
        if key in NEEDS_N and self.N is None:
            raise ValueError(f"'{self.verb} {self.action}' needs --N")
        if key in NEEDS_ARGUMENT and not self.argument:
            raise ValueError(f"'{self.verb} {self.action}' needs an argument")
        if self.verb == "indices" and self.m is None:
            raise ValueError("'indices' needs --m")
        if self.verb == "orbits" and self.k == 0 and self.l == 0:
            raise ValueError("(k, l) = (0, 0) does not define a quotient")
        return self


def build_command(**options: Any) -> Command:
    """Command from keyword options; validation failures become InvalidParams."""
    try:
        return Command(**options)
    except ValidationError as e:
        problems = "; ".join(err["msg"] for err in e.errors())
        raise InvalidParams(f"invalid command: {problems}")


class PlanarService:
    """Runs commands against one settings object."""

    def __init__(self, settings: AppSettings):
        """Initialize the service.

        Args:
            settings: Application settings
        """
        self.settings = settings
        self.engines: Dict[str, SkeinEngine] = {}

    def specialization(self, N: Optional[int], exact_generic: bool = True) -> Specialization:
        """Root of unity for N, else generic q or the probe point standing in for it."""
        if N is not None:
            return Specialization.root_of_unity(N)
        if exact_generic:
            return Specialization.generic()
        return Specialization.probe(self.settings.arithmetic.probe_point)

    def engine(self, spec: Specialization) -> SkeinEngine:
        if spec.key not in self.engines:
            self.engines[spec.key] = SkeinEngine(self.settings, spec)
        return self.engines[spec.key]

    def run(self, command: Command) -> Report:
        logger.info(f"Running {command.verb} {command.action}")
        handler = getattr(self, f"_{command.verb}")
        try:
            return handler(command)
        finally:
            for engine in self.engines.values():
                engine.flush()

    # -- verbs ----------------------------------------------------------------

    def _dims(self, c: Command) -> Report:
        table = dim_table(c.N, c.max_cells)
        name = f"dims-N{c.N}" if c.N else "dims-generic"
        return table_report(name, table.to_frame(c.float_digits), as_json=c.as_json)

    def _graph(self, c: Command) -> Report:
        if c.action == "automorphisms":
            group = graph_automorphisms(truncated_lattice(c.N))
            return json_report(f"automorphisms-N{c.N}", {"N": c.N, "order": group.order,
                                                          "generators": group.as_labels()}, schema="automorphisms")
        if c.action == "equivariant":
            g = equivariantization_graph(c.N)
            if c.dot:
                return dot_report(f"equivariant-N{c.N}", equivariantization_dot(g))
            return json_report(f"equivariant-N{c.N}", {
                "N": c.N, "vertices": sorted(d["label"] for _, d in g.nodes(data=True)),
                "edges": sorted(sorted((g.nodes[a]["label"], g.nodes[b]["label"])) for a, b in g.edges)}, schema="equivariant")
        lattice = truncated_lattice(c.N, c.depth) if c.N else full_lattice(c.depth if c.depth is not None else 4)
        name = f"lattice-N{c.N}" if c.N else "lattice"
        if c.dot:
            return dot_report(name, lattice.to_dot())
        payload = json.loads(lattice.to_json())
        payload["loops"] = {m: count_loops(lattice, m) for m in range(1, c.boxes + 1)}
        return json_report(name, payload, schema="lattice")

    def _fusion(self, c: Command) -> Report:
        if c.action == "group":
            return json_report(f"invertibles-N{c.N}", invertible_group(c.N).to_json(), schema="invertibles")
        if c.action == "tensor":
            lam = YoungDiagram.parse(c.argument)
            return json_report(f"tensor-N{c.N}", {"N": c.N, "object": lam.label,
                                                   "summands": [nu.label for nu in tensor_with_box(lam, c.N)]}, schema="tensor")
        return json_report(f"fusion-N{c.N}", fusion_data(c.N).to_json(c.float_digits), schema="fusion")

    def _skein(self, c: Command) -> Report:
        spec = self.specialization(c.N)
        engine = self.engine(spec)
        if c.action == "trace":
            x = parse_word_dsl(c.argument, c.boxes)
            return json_report("trace", {"element": str(x), "m": c.boxes, "specialization": spec.key,
                                         "trace": str(engine.word_trace(x))}, schema="trace")
        if c.action == "eval":
            diagram = ClosedDiagram.parse(Path(c.argument).read_text())
            if len(diagram.nodes) > self.settings.skein.max_crossings:
                raise InvalidParams(f"{len(diagram.nodes)} nodes exceed the limit of "
                                    f"{self.settings.skein.max_crossings}")
            return json_report("zeta", {"diagram": diagram.render(), "specialization": spec.key,
                                        "value": str(engine.zeta(diagram))}, schema="zeta")
        if c.action == "homfly":
            try:
                word = [int(x) for x in c.argument.replace(",", " ").split()]
            except ValueError:
                raise InvalidParams(f"braid word '{c.argument}' must be signed integers")
            link = OrientedLink.from_braid(word, c.boxes)
            value = spec.wrap(HomflyEvaluator(spec, self.settings.skein.cache_size).evaluate(link))
            return json_report("homfly", {"braid": word, "strands": c.boxes, "value": str(value)}, schema="homfly")
        words = canonical_words(c.boxes)
        G = engine.gram(words, c.boxes)
        rank, _ = rank_and_pivots(G)
        return json_report(f"gram-m{c.boxes}", {
            "m": c.boxes, "specialization": spec.key, "words": [word_str(w) for w in words],
            "rank": rank, "matrix": [[spec.render(x) for x in row] for row in G.to_list()]}, schema="gram")

    def _tower(self, c: Command) -> Report:
        spec = self.specialization(c.N, exact_generic=False)
        engine = self.engine(spec)
        if c.action == "build":
            return json_report(f"tower-m{c.boxes}", build_structure(engine, c.boxes).to_json(),
                               schema="structure")
        if c.action == "bratteli":
            data = bratteli(engine, c.boxes)
            if c.dot:
                return dot_report(f"bratteli-{spec.key}", data.to_dot())
            return json_report(f"bratteli-{spec.key}", data.to_json(), schema="bratteli")
        checks = self._positivity_checks(engine, c.boxes)
        return json_report(f"certify-N{c.N}", {"N": c.N, "levels": checks},
                           ok=all(x["positive_definite"] and x["casimir"] for x in checks), schema="certify")

    def _positivity_checks(self, engine: SkeinEngine, boxes: int) -> List[Dict[str, Any]]:
        arith = self.settings.arithmetic
        out = []
        for m in range(1, boxes + 1):
            S = build_structure(engine, m)
            report = positivity_certificate(S, arith.precision_bits, arith.max_precision_bits).to_json()
            with mpmath.workprec(arith.precision_bits):
                blocks = decompose_level(S, self.settings.runtime.seed, arith.separation_tolerance)
            report["casimir"] = casimir_certificate(S, blocks).holds
            report["blocks"] = [b.to_json() for b in blocks]
            out.append(report)
        return out

    def _verify(self, c: Command) -> Report:
        checks: List[Dict[str, Any]] = []
        action = c.action
        spec = self.specialization(c.N)
        if action in ("all", "relations", "yang-baxter"):
            engine = self.engine(spec)
            for rel in relation_catalogue(min(c.boxes, 3)):
                if action == "yang-baxter" and rel.name != "Yang-Baxter":
                    continue
                checks.append({"check": rel.name, "m": rel.m, "ok": engine.check_relation(rel)})
        if action == "far-commutation" or (action == "all" and c.boxes >= 4):
            if not self.settings.tower.enable_four_boxes:
                raise InvalidParams("four-box checks need TOWER_ENABLE_FOUR_BOXES=true")
            engine = self.engine(spec)
            for rel in far_commutation_relations():
                checks.append({"check": rel.name, "m": rel.m, "ok": engine.check_relation(rel)})
        if action == "positivity" or (action == "all" and c.N is not None):
            for level in self._positivity_checks(self.engine(spec), min(c.boxes, 3)):
                checks.append({"check": f"positivity m={level['m']}", "m": level["m"],
                               "kernel_dimension": level["kernel_dimension"],
                               "ok": level["positive_definite"] and level["casimir"]})
        if action in ("all", "dims"):
            checks.extend(self._dims_checks(c))
        if action in ("all", "hecke"):
            checks.extend(self._hecke_checks())
        ok = all(x["ok"] for x in checks)
        logger.info(f"{len(checks)} checks, {'all passed' if ok else 'FAILURES'}")
        return json_report(f"verify-{action}", {"specialization": spec.key, "checks": checks, "ok": ok}, ok=ok,
                           schema="verify")

    def _dims_checks(self, c: Command) -> List[Dict[str, Any]]:
        limit = min(c.max_cells, 5)
        residues = all(dim_ratio_by_residue(mu, mu.add_cell(cell)) == qdim(mu.add_cell(cell)) / qdim(mu)
                       for n in range(limit + 1) for mu in partitions(n) for cell in mu.addable_cells())
        checks = [
            {"check": "residue ratios", "ok": residues},
            {"check": "Perron identity", "ok": not check_perron_table(limit)},
            {"check": "level two identity", "ok": not level_two_identity()},
        ]
        if c.N is not None:
            vanishing = boundary_vanishing(c.N, max(c.max_cells, c.N + 1))
            checks.append({"check": f"boundary vanishing N={c.N}", "ok": all(not v for v in vanishing.values())})
        return checks

    def _hecke_checks(self) -> List[Dict[str, Any]]:
        spec = Specialization.generic()
        completeness = all(branching_sum(mu, spec) == embed(young_idempotent(mu, spec).element, n + 1)
                           for n in range(1, 4) for mu in partitions(n))
        recursion = all(symmetrizer(l, kind, "left", spec) == symmetrizer(l, kind, "right", spec)
                        for l in range(1, 5) for kind in ("sym", "antisym"))
        self_adjoint = all(star(symmetrizer(l, kind, spec=spec)) == symmetrizer(l, kind, spec=spec)
                           for l in range(1, 5) for kind in ("sym", "antisym"))
        eigen = True
        for n in range(1, 4):
            L = murphy(n + 1, spec)
            for mu in partitions(n):
                for cell in mu.addable_cells():
                    lam = mu.add_cell(cell)
                    P = branch(mu, lam, spec).projection()
                    eigen = eigen and (L * P == P.scale(spec.power(spec.q, murphy_eigenvalue(mu, lam))))
        return [
            {"check": "branching completeness", "ok": completeness},
            {"check": "symmetrizer recursions agree", "ok": recursion},
            {"check": "symmetrizers are self-adjoint", "ok": self_adjoint},
            {"check": "Murphy eigenvalues", "ok": eigen},
        ]

    def _orbits(self, c: Command) -> Report:
        Q = quotient_simples(c.N, c.k, c.l, c.depth)
        name = f"quotient-{c.N}-{c.k}-{c.l}"
        if c.action == "branch":
            branching = graded_branching(Q)
            if c.dot:
                return dot_report(name, branching.to_dot())
            return json_report(name, branching.to_json(), schema="branching")
        return json_report(name, Q.to_json(), schema="quotient")

    def _indices(self, c: Command) -> Report:
        digits = c.float_digits or 15
        return json_report(f"index-{c.N}-{c.m}", subfactor_indices(c.N, c.m).to_json(digits),
                           schema="index")
