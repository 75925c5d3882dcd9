#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Report Schemas

pydantic models for every JSON document the command line emits. Reports are
validated against their model before they are printed, and `export_schemas`
writes the JSON Schema of each model so other tools can check the output.
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Type

from pydantic import BaseModel, ConfigDict, Field, RootModel

logger = logging.getLogger(__name__)


class Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class ErrorReport(Strict):
    error: str
    message: str
    details: Optional[Dict[str, str]] = None


class DimRow(Strict):
    partition: str
    size: int
    hook_product: int
    exact: str
    float: Optional[str] = None


class DimTableReport(RootModel[List[DimRow]]):
    pass


class LatticeReport(Strict):
    N: Optional[int]
    depth: int
    vertices: List[str]
    edges: List[List[str]]
    boundary: List[str]
    loops: Dict[int, int]


class AutomorphismReport(Strict):
    N: int
    order: int
    generators: List[Dict[str, str]]


class EquivariantReport(Strict):
    N: int
    vertices: List[str]
    edges: List[List[str]]


class SimpleRow(Strict):
    label: str
    qdim: str
    float: Optional[str] = None


class FusionReport(Strict):
    N: int
    simples: List[SimpleRow]
    invertibles: List[str]
    edges: List[List[str]]


class InvertiblesReport(Strict):
    N: int
    order: int
    cyclic: bool
    elements: List[str]
    table: List[List[int]]


class TensorReport(Strict):
    N: int
    object: str
    summands: List[str]


class TraceReport(Strict):
    element: str
    m: int
    specialization: str
    trace: str


class ZetaReport(Strict):
    diagram: str
    specialization: str
    value: str


class HomflyReport(Strict):
    braid: List[int]
    strands: int
    value: str


class GramReport(Strict):
    m: int
    specialization: str
    words: List[str]
    rank: int
    matrix: List[List[str]]


class StructureReport(Strict):
    m: int
    specialization: str
    dimension: int
    kernel_dimension: int
    basis: List[str]
    gram: List[List[str]]
    trace: List[str]


class BlockRow(Strict):
    label: str
    size: int
    trace: str


class BratteliLevel(Strict):
    m: int
    dimension: int
    blocks: List[BlockRow]


class Inclusion(Strict):
    source: str = Field(alias="from")
    target: str = Field(alias="to")
    multiplicity: int


class BratteliReport(Strict):
    specialization: str
    levels: List[BratteliLevel]
    inclusions: List[List[Inclusion]]


class CertifiedLevel(Strict):
    m: int
    N: int
    rank: int
    kernel_dimension: int
    hermitian: bool
    positive_definite: bool
    leading_minors: List[str]
    signs: List[int]
    casimir: bool
    blocks: List[BlockRow]


class CertifyReport(Strict):
    N: int
    levels: List[CertifiedLevel]


class CheckRow(Strict):
    check: str
    ok: bool
    m: Optional[int] = None
    kernel_dimension: Optional[int] = None


class VerifyReport(Strict):
    specialization: str
    checks: List[CheckRow]
    ok: bool


class QuotientSimple(Strict):
    label: str
    rep: str
    t: int
    grade: int


class QuotientReport(Strict):
    N: int
    k: int
    l: int
    grading_modulus: int
    simples: List[QuotientSimple]


class BranchTarget(Strict):
    simple: str
    multiplicity: int
    grade: int


class BranchRule(Strict):
    simple: str
    grade: int
    targets: List[BranchTarget]


class BranchingReport(Strict):
    N: int
    k: int
    l: int
    rules: List[BranchRule]


class IndexReport(Strict):
    N: int
    m: int
    diagram: str
    stabilizer_order: int
    exact: str
    float: str
    degenerate: bool


SCHEMAS: Dict[str, Type[BaseModel]] = {
    "error": ErrorReport,
    "dims": DimTableReport,
    "lattice": LatticeReport,
    "automorphisms": AutomorphismReport,
    "equivariant": EquivariantReport,
    "fusion": FusionReport,
    "invertibles": InvertiblesReport,
    "tensor": TensorReport,
    "trace": TraceReport,
    "zeta": ZetaReport,
    "homfly": HomflyReport,
    "gram": GramReport,
    "structure": StructureReport,
    "bratteli": BratteliReport,
    "certify": CertifyReport,
    "verify": VerifyReport,
    "quotient": QuotientReport,
    "branching": BranchingReport,
    "index": IndexReport,
}


def validate(schema: str, payload) -> None:
    """Raise pydantic.ValidationError if the payload does not match its schema."""
    SCHEMAS[schema].model_validate(payload)


def export_schemas(directory: Path) -> List[Path]:
    """Write `<name>.schema.json` for every report model."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in SCHEMAS.items():
        path = directory / f"{name}.schema.json"
        path.write_text(json.dumps(model.model_json_schema(by_alias=True), indent=2, ensure_ascii=False))
        written.append(path)
    logger.info(f"Wrote {len(written)} schemas to {directory}")
    return written
