"""Query-length binning and relevant-result overlap across models."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from hybridir.corpus.analysis import DEFAULT_CONFIG, NormalizationConfig, tokenize
from hybridir.corpus.types import Run
from hybridir.eval.metrics import Qrels, recall_at_k

MAX_BIN = 10


def length_bin(text: str, config: NormalizationConfig = DEFAULT_CONFIG) -> int:
    """Bin 1..10 by non-stopword token count; 10 holds lengths >= 10, 0-token queries go to bin 1."""
    return max(1, min(len(tokenize(text, config)), MAX_BIN))


@dataclass
class BinnedReport:
    depth: int
    models: list[str]
    # bin -> model -> mean recall
    means: dict[int, dict[str, float]]
    counts: dict[int, int]
    assignment: dict[str, int] = field(default_factory=dict)


def bin_by_query_length(
    queries: dict[str, str],
    runs_by_model: dict[str, Run],
    qrels: Qrels,
    k: int = 1000,
    config: NormalizationConfig = DEFAULT_CONFIG,
) -> BinnedReport:
    """``queries`` maps query_id to effective query text."""
    reports = {m: recall_at_k(run, qrels, k) for m, run in runs_by_model.items()}
    evaluated = [q for q in qrels.query_ids() if qrels.relevant(q) and q in queries]
    assignment = {q: length_bin(queries[q], config) for q in evaluated}
    members: dict[int, list[str]] = {}
    for q, b in assignment.items():
        members.setdefault(b, []).append(q)
    means = {
        b: {m: sum(reports[m].per_query[q] for q in qs) / len(qs) for m in runs_by_model}
        for b, qs in sorted(members.items())
    }
    counts = {b: len(qs) for b, qs in sorted(members.items())}
    return BinnedReport(k, list(runs_by_model), means, counts, assignment)


@dataclass
class OverlapReport:
    models: list[str]
    depth: int
    # frozenset of model tags -> number of (query, relevant doc) pairs retrieved by exactly that subset
    regions: dict[frozenset, int]

    def retrieved_by(self, model: str) -> int:
        return sum(n for subset, n in self.regions.items() if model in subset)

    @property
    def total(self) -> int:
        return sum(self.regions.values())


def overlap_analysis(runs_by_model: dict[str, Run], qrels: Qrels, k: int = 1000) -> OverlapReport:
    models = list(runs_by_model)
    if not 2 <= len(models) <= 3:
        raise ValueError("overlap analysis needs 2 or 3 models")
    regions = {frozenset(c): 0 for r in range(1, len(models) + 1) for c in combinations(models, r)}
    for qid in qrels.query_ids():
        rel = qrels.relevant(qid)
        if not rel:
            continue
        found = {}
        for m in models:
            rl = runs_by_model[m].get(qid)
            found[m] = rel.intersection(rl.top(k)) if rl is not None else set()
        for doc in set().union(*found.values()):
            regions[frozenset(m for m in models if doc in found[m])] += 1
    return OverlapReport(models, k, regions)


def region_label(subset: frozenset, models: list[str]) -> str:
    return "&".join(m for m in models if m in subset)
