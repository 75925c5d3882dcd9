#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Reports

A command produces one Report: a JSON document, a pandas table written as CSV
or DOT text. Reports render to a string for stdout and can be saved under the
configured output directory.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

import pandas as pd

from planar_algebra.schemas import validate

logger = logging.getLogger(__name__)


@dataclass
class Report:
    """Output of one command; `ok` is False for failed verifications."""

    name: str
    kind: str
    payload: Union[dict, list, pd.DataFrame, str]
    ok: bool = True

    @property
    def suffix(self) -> str:
        return {"json": ".json", "csv": ".csv", "dot": ".dot"}.get(self.kind, ".txt")

    def render(self) -> str:
        if self.kind == "json":
            return json.dumps(self.payload, indent=2, ensure_ascii=False, default=str)
        if self.kind == "csv":
            return self.payload.to_csv(index=False)
        return str(self.payload)

    def save(self, output_dir: Optional[Path]) -> Optional[Path]:
        if output_dir is None:
            return None
        path = Path(output_dir) / f"{self.name}{self.suffix}"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render())
        logger.info(f"Wrote {path}")
        return path


def json_report(name: str, payload: Any, ok: bool = True, schema: Optional[str] = None) -> Report:
    """JSON report, checked against the named model of `planar_algebra.schemas` when given."""
    if schema is not None:
        validate(schema, payload)
    return Report(name=name, kind="json", payload=payload, ok=ok)


def table_report(name: str, frame: pd.DataFrame, as_json: bool = False) -> Report:
    if as_json:
        return json_report(name, frame.to_dict(orient="records"), schema="dims")
    return Report(name=name, kind="csv", payload=frame)


def dot_report(name: str, text: str) -> Report:
    return Report(name=name, kind="dot", payload=text)
