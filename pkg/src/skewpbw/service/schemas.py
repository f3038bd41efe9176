"""Pydantic request and response models for the HTTP service.

Every response uses one document shape so clients and the CLI can share the
handling: tool version, presentation name, a flat list of named checks, and a
subcommand-specific data payload.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class Check(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    witness: str | None = None


class Document(BaseModel):
    tool_version: str
    presentation_name: str
    checks: list[Check]
    data: dict

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


class PresentationRequest(BaseModel):
    source: str
    name: str = "presentation"
    assign: dict[str, str] | None = None  # parameter -> exact rational literal


class CheckRequest(PresentationRequest):
    pass


class NfRequest(PresentationRequest):
    expression: str
    strategy: Literal["leftmost", "rightmost"] = "leftmost"


class MulRequest(PresentationRequest):
    left: str
    right: str


class GrRequest(PresentationRequest):
    pass


class OreRequest(PresentationRequest):
    pass


class ReportRequest(PresentationRequest):
    pass


class HilbertRequest(PresentationRequest):
    max_degree: int = Field(default=4, ge=0, le=12)


class PointsRequest(PresentationRequest):
    symbolic: bool = False
    start: str | None = None
    depth: int = Field(default=5, ge=0, le=64)
