"""Context-aware train/dev/test assignment.

Relations whose contexts overlap (per a configurable policy) are grouped
and each group lands in a single split, so no text is shared across splits.
Groups go largest-first into whichever split is furthest below its target,
which keeps every split within one group size of its exact quota.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .model import Corpus, CrestError, CrestRelation

EQUALITY = "equality"
CONTAINMENT = "containment"
SHARED_SUBSTRING = "shared-substring"
_MODES = (EQUALITY, CONTAINMENT, SHARED_SUBSTRING)

EXACT = "exact"
CASEFOLD_WS = "casefold+collapse-whitespace"


class LeakageError(CrestError):
    """A finished split would share context text between two splits."""


@dataclass(frozen=True)
class OverlapPolicy:
    normalization: str = CASEFOLD_WS
    mode: str = SHARED_SUBSTRING
    min_shared_chars: int = 50

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ValueError(f"unknown overlap mode {self.mode!r}")
        if self.normalization not in (EXACT, CASEFOLD_WS):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.min_shared_chars < 1:
            raise ValueError("min_shared_chars must be positive")

    def canon(self, text: str) -> str:
        if self.normalization == EXACT:
            return text
        return " ".join(text.casefold().split())


@dataclass(frozen=True)
class SplitReport:
    sizes: tuple[int, int, int]
    group_count: int
    max_group_size: int


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _union_equal(canons: Sequence[str], dsu: _DSU):
    first: dict[str, int] = {}
    for i, text in enumerate(canons):
        j = first.setdefault(text, i)
        if j != i:
            dsu.union(i, j)


def _union_contained(canons: Sequence[str], dsu: _DSU):
    """Union i with every j whose canon contains canon i as a substring."""
    unique: dict[str, int] = {}
    for i, text in enumerate(canons):
        unique.setdefault(text, i)
    texts = list(unique)
    haystack = "\x01".join(texts)
    starts = []
    pos = 0
    for text in texts:
        starts.append(pos)
        pos += len(text) + 1
    for text, i in unique.items():
        at = haystack.find(text)
        while at >= 0:
            j = unique[texts[bisect_right(starts, at) - 1]]
            if j != i:
                dsu.union(i, j)
            at = haystack.find(text, at + 1)


def _union_shared_grams(canons: Sequence[str], k: int, dsu: _DSU):
    seen: dict[str, int] = {}
    for i, text in enumerate(canons):
        for at in range(len(text) - k + 1):
            gram = text[at : at + k]
            j = seen.setdefault(gram, i)
            if j != i:
                dsu.union(i, j)


def overlap_groups(contexts: Sequence[str], policy: OverlapPolicy) -> list[list[int]]:
    """Connected components of the pairwise context-overlap relation."""
    canons = [policy.canon(c) for c in contexts]
    dsu = _DSU(len(canons))
    _union_equal(canons, dsu)
    if policy.mode in (CONTAINMENT, SHARED_SUBSTRING):
        _union_contained(canons, dsu)
    if policy.mode == SHARED_SUBSTRING:
        _union_shared_grams(canons, policy.min_shared_chars, dsu)
    groups: dict[int, list[int]] = {}
    for i in range(len(canons)):
        groups.setdefault(dsu.find(i), []).append(i)
    return list(groups.values())


def contexts_overlap(a: str, b: str, policy: OverlapPolicy) -> bool:
    """Pairwise form of the grouping relation, for audits and spot checks."""
    ca, cb = policy.canon(a), policy.canon(b)
    if ca == cb:
        return True
    if policy.mode == EQUALITY:
        return False
    if ca in cb or cb in ca:
        return True
    if policy.mode == CONTAINMENT:
        return False
    k = policy.min_shared_chars
    if len(ca) > len(cb):
        ca, cb = cb, ca
    return any(ca[i : i + k] in cb for i in range(len(ca) - k + 1))


def _ordered_groups(groups: list[list[int]], seed: int) -> list[list[int]]:
    ordered = sorted(groups, key=lambda g: (-len(g), min(g)))
    rng = random.Random(seed)
    out: list[list[int]] = []
    run: list[list[int]] = []
    for group in ordered:
        if run and len(group) != len(run[0]):
            rng.shuffle(run)
            out += run
            run = []
        run.append(group)
    rng.shuffle(run)
    return out + run


def audit_splits(corpus: Corpus, policy: OverlapPolicy):
    """Hard-fail if any overlap group straddles two splits."""
    contexts = [r.context for r in corpus.relations]
    splits = [r.split for r in corpus.relations]
    for group in overlap_groups(contexts, policy):
        found = {splits[i] for i in group}
        if len(found) > 1:
            raise LeakageError(
                f"contexts of relations {sorted(group)[:4]} span splits {sorted(found)}"
            )


def assign_splits(
    corpus: Corpus,
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 0,
    policy: OverlapPolicy | None = None,
    audit: bool = True,
) -> tuple[Corpus, SplitReport]:
    """Return a copy of the corpus with train/dev/test assigned group-wise."""
    if len(ratios) != 3 or any(r < 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("ratios must be three non-negative numbers summing to 1")
    policy = policy or OverlapPolicy()
    relations = list(corpus.relations)
    n = len(relations)
    groups = overlap_groups([r.context for r in relations], policy)
    targets = [r * n for r in ratios]
    filled = [0, 0, 0]
    assignment = [0] * n
    for group in _ordered_groups(groups, seed):
        best = 0
        for s in (1, 2):
            if targets[s] - filled[s] > targets[best] - filled[best]:
                best = s
        for i in group:
            assignment[i] = best
        filled[best] += len(group)
    relations = [replace(r, split=assignment[i]) for i, r in enumerate(relations)]
    out = replace(corpus, relations=tuple(relations))
    if audit:
        audit_splits(out, policy)
    report = SplitReport(
        sizes=(filled[0], filled[1], filled[2]),
        group_count=len(groups),
        max_group_size=max((len(g) for g in groups), default=0),
    )
    return out, report
