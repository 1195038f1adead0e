"""Unify causal-relation corpora into one schema, split them without
context leakage, and serialize relations as marker-token sequences."""

from .model import (
    DEV,
    NO_DIRECTION,
    TEST,
    TRAIN,
    UNASSIGNED,
    Corpus,
    CorpusFormatError,
    CorpusValidationError,
    CrestError,
    CrestRelation,
    DuplicateIdError,
    Issue,
    IssueCode,
    TokenSpan,
    ValidationReport,
    flip_direction,
    read_corpus,
    relation_from_dict,
    relation_to_dict,
    validate_corpus,
    validate_relation,
    write_corpus,
)
from .sequences import (
    DEFAULT_SCHEME,
    MarkedSequence,
    MarkerScheme,
    SequenceError,
    Task,
    emit_task_dataset,
    sequence_to_dict,
    strip_markers,
    to_sequence,
)
from .splitting import (
    LeakageError,
    OverlapPolicy,
    SplitReport,
    assign_splits,
    audit_splits,
    contexts_overlap,
    overlap_groups,
)
from .stats import CorpusStats, DatasetBreakdown, compute_stats, render_report, stats_from_dict, stats_to_dict
from .textutil import Normalization

__version__ = "0.1.0"
