"""Dataset adapters: one parser per source corpus, plus a common registry.

Every parser returns (relations, skips) where len(relations) + len(skips)
equals the number of candidate annotations it saw. parse_dataset wraps a
parser with a validation pass so nothing invalid leaks out of this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from ..model import CrestError, CrestRelation, validate_relation
from ..textutil import Normalization
from .because import parse_because
from .caters import parse_caters
from .copa import parse_copa
from .eventcausality import parse_eventcausality
from .eventstoryline import parse_eventstoryline
from .pdtb3 import parse_pdtb3
from .records import SkipReason, SkipRecord
from .semeval import parse_semeval2007, parse_semeval2010
from .timebank import parse_causal_timebank

ParseFn = Callable[..., tuple[list[CrestRelation], list[SkipRecord]]]


class UnknownAdapterError(CrestError):
    pass


@dataclass(frozen=True)
class AdapterSpec:
    dataset_id: int
    name: str
    has_signal: bool
    parse: ParseFn


REGISTRY: tuple[AdapterSpec, ...] = (
    AdapterSpec(1, "semeval2007", False, parse_semeval2007),
    AdapterSpec(2, "semeval2010", False, parse_semeval2010),
    AdapterSpec(3, "eventcausality", False, parse_eventcausality),
    AdapterSpec(4, "causal_timebank", True, parse_causal_timebank),
    AdapterSpec(5, "eventstoryline", True, parse_eventstoryline),
    AdapterSpec(6, "caters", False, parse_caters),
    AdapterSpec(7, "because", True, parse_because),
    AdapterSpec(8, "copa", False, parse_copa),
    AdapterSpec(9, "pdtb3", True, parse_pdtb3),
)

BY_NAME = {spec.name: spec for spec in REGISTRY}
BY_ID = {spec.dataset_id: spec for spec in REGISTRY}


def get_adapter(key: str | int) -> AdapterSpec:
    table = BY_ID if isinstance(key, int) else BY_NAME
    try:
        return table[key]
    except KeyError:
        raise UnknownAdapterError(f"no adapter named {key!r}") from None


def parse_dataset(
    key: str | int,
    paths: Sequence[str | Path],
    policy: Normalization = Normalization.NFC_COLLAPSE_WS,
) -> tuple[tuple[CrestRelation, ...], tuple[SkipRecord, ...]]:
    """Parse with the named adapter and drop anything that fails validation."""
    spec = get_adapter(key)
    parsed, skips = spec.parse(paths, policy=policy)
    kept: list[CrestRelation] = []
    all_skips = list(skips)
    for rel in parsed:
        report = validate_relation(rel)
        if report.ok:
            kept.append(rel)
        else:
            all_skips.append(
                SkipRecord(rel.original_id, SkipReason.MALFORMED, ",".join(report.codes))
            )
    return tuple(kept), tuple(all_skips)


__all__ = [
    "AdapterSpec",
    "BY_ID",
    "BY_NAME",
    "REGISTRY",
    "SkipReason",
    "SkipRecord",
    "UnknownAdapterError",
    "get_adapter",
    "parse_dataset",
]
