from __future__ import annotations

from dataclasses import dataclass, field

from hybridir.corpus.types import Run


@dataclass
class Qrels:
    judgments: dict[str, dict[str, int]]
    relevance_threshold: int = 1

    def __post_init__(self):
        if self.relevance_threshold < 1:
            raise ValueError("relevance_threshold must be >= 1")

    def relevant(self, query_id: str) -> set[str]:
        return {d for d, g in self.judgments.get(query_id, {}).items() if g >= self.relevance_threshold}

    def query_ids(self) -> list[str]:
        return list(self.judgments)


@dataclass
class MetricReport:
    metric: str
    depth: int
    per_query: dict[str, float]
    skipped: list[str] = field(default_factory=list)

    @property
    def mean(self) -> float:
        return sum(self.per_query.values()) / len(self.per_query) if self.per_query else 0.0

    @property
    def evaluated(self) -> int:
        return len(self.per_query)


def _split_queries(qrels: Qrels) -> tuple[list[tuple[str, set[str]]], list[str]]:
    if not qrels.judgments:
        raise ValueError("empty qrels")
    evaluated, skipped = [], []
    for qid in qrels.query_ids():
        rel = qrels.relevant(qid)
        if rel:
            evaluated.append((qid, rel))
        else:
            skipped.append(qid)
    return evaluated, skipped


def recall_at_k(run: Run, qrels: Qrels, k: int = 1000) -> MetricReport:
    if k < 1:
        raise ValueError("K must be >= 1")
    evaluated, skipped = _split_queries(qrels)
    per_query = {}
    for qid, rel in evaluated:
        rl = run.get(qid)
        hits = len(rel.intersection(rl.top(k))) if rl is not None else 0
        per_query[qid] = hits / len(rel)
    return MetricReport(f"R@{k}", k, per_query, skipped)


def average_precision(ranking: list, relevant: set, cutoff: int) -> float:
    hits = 0
    total = 0.0
    for rank, doc_id in enumerate(ranking[:cutoff], start=1):
        if doc_id in relevant:
            hits += 1
            total += hits / rank
    return total / len(relevant)


def mean_average_precision(run: Run, qrels: Qrels, cutoff: int = 1000) -> MetricReport:
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    evaluated, skipped = _split_queries(qrels)
    per_query = {}
    for qid, rel in evaluated:
        rl = run.get(qid)
        per_query[qid] = average_precision(rl.doc_ids(), rel, cutoff) if rl is not None else 0.0
    return MetricReport("MAP", cutoff, per_query, skipped)
