"""Bookkeeping types shared by every dataset adapter."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class SkipReason(str, Enum):
    """Why a candidate annotation was not turned into a relation."""

    EXCLUDED_SENSE = "excluded-sense"
    EXCLUDED_RELATION_TYPE = "excluded-relation-type"
    MALFORMED = "malformed"
    MISSING_TEXT = "missing-text"


@dataclass(frozen=True)
class SkipRecord:
    original_id: str
    reason: SkipReason
    detail: str = ""
