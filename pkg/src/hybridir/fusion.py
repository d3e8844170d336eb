"""Reciprocal rank fusion, plus the interpolation baseline and oracle upper bound it is compared against."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from hybridir.corpus.types import RankedList, Run
from hybridir.eval.metrics import MetricReport, Qrels, recall_at_k

NORMALIZATIONS = ("min-max", "none")


@dataclass(frozen=True)
class FusionConfig:
    rrf_k: float = 60.0
    models: tuple[str, ...] = field(default_factory=tuple)
    output_depth: int = 1000

    def __post_init__(self):
        if self.rrf_k <= 0:
            raise ValueError("rrf_k must be > 0")
        if self.output_depth < 1:
            raise ValueError("output_depth must be >= 1")


@dataclass(frozen=True)
class InterpolationConfig:
    alpha: float = 0.5
    normalization: str = "min-max"

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")


def fused_tag(tags: Sequence[str]) -> str:
    return "RRF(" + ",".join(tags) + ")"


def rrf_fuse(runs: Sequence[RankedList], cfg: FusionConfig = FusionConfig(), tag: str | None = None) -> RankedList:
    """score(d) = sum over runs containing d of 1 / (rrf_k + rank)."""
    if not runs:
        raise ValueError("no runs to fuse")
    qid = runs[0].query_id
    if any(r.query_id != qid for r in runs):
        raise ValueError("runs disagree on query_id")
    scores: dict = {}
    for run in runs:
        for e in run.entries:
            scores[e.doc_id] = scores.get(e.doc_id, 0.0) + 1.0 / (cfg.rrf_k + e.rank)
    if tag is None:
        tag = fused_tag([r.tag for r in runs])
    return RankedList.from_scores(qid, scores, tag, cfg.output_depth)


def rrf_fuse_all(runs_by_model: dict[str, Run], cfg: FusionConfig = FusionConfig()) -> Run:
    """Per-query RRF over whichever models returned that query; query order = first appearance."""
    models = list(cfg.models) or list(runs_by_model)
    tag = fused_tag(models)
    qids: dict[str, None] = {}
    for m in models:
        qids.update(dict.fromkeys(runs_by_model[m]))
    out: Run = {}
    for qid in qids:
        lists = [runs_by_model[m][qid] for m in models if qid in runs_by_model[m]]
        out[qid] = rrf_fuse(lists, cfg, tag)
    return out


def min_max_normalize(run: RankedList) -> RankedList:
    if not run.entries:
        return RankedList(run.query_id, [], run.tag)
    hi = run.entries[0].score
    lo = run.entries[-1].score
    span = hi - lo
    return RankedList(
        run.query_id,
        [(e.doc_id, e.rank, (e.score - lo) / span if span > 0 else 0.0) for e in run.entries],
        run.tag,
    )


def interpolate(
    run_a: RankedList,
    run_b: RankedList,
    cfg: InterpolationConfig,
    output_depth: int = 1000,
    tag: str = "interp",
) -> RankedList:
    """alpha * s_a(d) + (1 - alpha) * s_b(d) over the candidate union; absent docs score 0 in that run."""
    if not 0.0 <= cfg.alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {cfg.alpha}")
    if run_a.query_id != run_b.query_id:
        raise ValueError("runs disagree on query_id")
    if cfg.normalization == "min-max":
        run_a, run_b = min_max_normalize(run_a), min_max_normalize(run_b)
    sa, sb = run_a.scores(), run_b.scores()
    combined = {d: cfg.alpha * sa.get(d, 0.0) + (1.0 - cfg.alpha) * sb.get(d, 0.0) for d in sa.keys() | sb.keys()}
    return RankedList.from_scores(run_a.query_id, combined, tag, output_depth)


def interpolate_all(run_a: Run, run_b: Run, cfg: InterpolationConfig, output_depth: int = 1000) -> Run:
    out: Run = {}
    for qid in dict.fromkeys(list(run_a) + list(run_b)):
        a = run_a.get(qid) or RankedList(qid)
        b = run_b.get(qid) or RankedList(qid)
        out[qid] = interpolate(a, b, cfg, output_depth, tag=f"interp{cfg.alpha:g}")
    return out


def alpha_sweep(
    run_a: Run,
    run_b: Run,
    qrels: Qrels,
    grid: Sequence[float] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
    k: int = 1000,
    normalization: str = "min-max",
    output_depth: int = 1000,
) -> list[tuple[float, float]]:
    """(alpha, mean recall@k) per grid point."""
    if not grid:
        raise ValueError("alpha grid is empty")
    out = []
    for alpha in grid:
        fused = interpolate_all(run_a, run_b, InterpolationConfig(alpha, normalization), output_depth)
        out.append((alpha, recall_at_k(fused, qrels, k).mean))
    return out


def oracle_fuse(runs_by_model: dict[str, Run], qrels: Qrels, k: int = 1000) -> MetricReport:
    """Recall of the union of every model's relevant top-k results."""
    per_query = {}
    skipped = []
    for qid in qrels.query_ids():
        rel = qrels.relevant(qid)
        if not rel:
            skipped.append(qid)
            continue
        found = set()
        for run in runs_by_model.values():
            rl = run.get(qid)
            if rl is not None:
                found |= rel.intersection(rl.top(k))
        per_query[qid] = len(found) / len(rel)
    return MetricReport(f"oracle-R@{k}", k, per_query, skipped)
