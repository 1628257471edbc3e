"""Quality filtering of extracted modules."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import DomainError
from .segment import VerilogModule


class FilterReason(str, enum.Enum):
    KEPT = "Kept"
    COMMENT_HEAVY = "CommentHeavy"
    INCOMPLETE = "Incomplete"


@dataclass
class FilterDecision:
    keep: bool
    reason: FilterReason


def quality_filter(module: VerilogModule, max_comment_ratio: float = 0.8) -> FilterDecision:
    """Drop modules that are structurally incomplete or mostly comments.

    A pure function of (module, threshold): incompleteness takes
    precedence over comment-heaviness when both apply.
    """
    if not 0.0 < max_comment_ratio <= 1.0:
        raise DomainError(f"max_comment_ratio must lie in (0, 1], got {max_comment_ratio}")
    if not module.structurally_complete:
        return FilterDecision(keep=False, reason=FilterReason.INCOMPLETE)
    if module.comment_ratio > max_comment_ratio:
        return FilterDecision(keep=False, reason=FilterReason.COMMENT_HEAVY)
    return FilterDecision(keep=True, reason=FilterReason.KEPT)
