"""Pseudo-relevance-feedback query expansion (Bo1 and RM3) over index statistics."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from hybridir.corpus.types import RankedList
from hybridir.lexical.bm25 import TermWeightVector
from hybridir.lexical.index import InvertedIndex


@dataclass(frozen=True)
class PrfConfig:
    fb_docs: int = 10
    fb_terms: int = 10
    rm3_lambda: float = 0.5
    rm3_mu: float = 2500.0

    def __post_init__(self):
        if self.fb_docs < 1:
            raise ValueError("fb_docs must be >= 1")
        if self.fb_terms < 0:
            raise ValueError("fb_terms must be >= 0")
        if not 0.0 <= self.rm3_lambda <= 1.0:
            raise ValueError("rm3_lambda must be in [0, 1]")
        if self.rm3_mu <= 0:
            raise ValueError("rm3_mu must be > 0")


def _feedback_docs(index: InvertedIndex, first_pass: RankedList, fb_docs: int) -> list[tuple[int, float]]:
    if len(first_pass) == 0:
        raise ValueError("first-pass ranking is empty")
    out = []
    for e in first_pass.entries[:fb_docs]:
        internal = index.doc_index.get(e.doc_id)
        if internal is None:
            raise KeyError(f"feedback doc {e.doc_id!r} is not in the index")
        out.append((internal, e.score))
    return out


def _select(weights: dict[str, float], n: int) -> list[tuple[str, float]]:
    return sorted(weights.items(), key=lambda kv: (-kv[1], kv[0]))[:n]


def bo1_term_weights(index: InvertedIndex, docs: list[int]) -> dict[str, float]:
    """Bo1 informativeness of every term in the feedback docs."""
    tf_x: dict[str, int] = defaultdict(int)
    for d in docs:
        for term, tf in index.doc_terms(d).items():
            tf_x[term] += tf
    n = index.num_docs
    out = {}
    for term, tfx in tf_x.items():
        lam = index.cf(term) / n
        out[term] = tfx * math.log2((1.0 + lam) / lam) + math.log2(1.0 + lam)
    return out


def bo1_expand(
    index: InvertedIndex, query: TermWeightVector, first_pass: RankedList, cfg: PrfConfig
) -> TermWeightVector:
    if cfg.fb_terms == 0:
        return dict(query)
    docs = [d for d, _ in _feedback_docs(index, first_pass, cfg.fb_docs)]
    selected = dict(_select(bo1_term_weights(index, docs), cfg.fb_terms))
    w_max = max(selected.values())
    max_qtf = max(query.values())
    out = {t: qtf / max_qtf + selected.get(t, 0.0) / w_max for t, qtf in query.items()}
    for t, w in selected.items():
        if t not in out:
            out[t] = w / w_max
    return out


def rm3_feedback_model(
    index: InvertedIndex, feedback: list[tuple[int, float]], mu: float
) -> dict[str, float]:
    """Unnormalized P(t|R) = sum_d P(t|d) * softmax(score)_d over terms seen in the feedback docs."""
    top = max(s for _, s in feedback)
    exps = [math.exp(s - top) for _, s in feedback]
    z = sum(exps)
    doc_weights = [e / z for e in exps]
    collection_len = index.total_length
    vocab = sorted({t for d, _ in feedback for t in index.doc_terms(d)})
    model = dict.fromkeys(vocab, 0.0)
    for (d, _), dw in zip(feedback, doc_weights):
        tfs = index.doc_terms(d)
        dl = index.doc_lengths[d]
        for t in vocab:
            p_c = index.cf(t) / collection_len
            model[t] += dw * (tfs.get(t, 0) + mu * p_c) / (dl + mu)
    return model


def rm3_expand(
    index: InvertedIndex, query: TermWeightVector, first_pass: RankedList, cfg: PrfConfig
) -> TermWeightVector:
    if cfg.fb_terms == 0:
        return dict(query)
    feedback = _feedback_docs(index, first_pass, cfg.fb_docs)
    selected = _select(rm3_feedback_model(index, feedback, cfg.rm3_mu), cfg.fb_terms)
    fb_mass = sum(p for _, p in selected)
    q_mass = sum(query.values())
    lam = cfg.rm3_lambda
    out = {t: lam * w / q_mass for t, w in query.items()}
    for t, p in selected:
        w = (1.0 - lam) * p / fb_mass
        if t in out:
            out[t] += w
        elif w > 0:
            out[t] = w
    return out


def write_expanded_queries(queries: dict[str, TermWeightVector], path: str | Path) -> None:
    """``query_id<TAB>term<TAB>weight`` triples, terms by descending weight."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for qid, vec in queries.items():
            for term, w in sorted(vec.items(), key=lambda kv: (-kv[1], kv[0])):
                fh.write(f"{qid}\t{term}\t{w!r}\n")


def read_expanded_queries(path: str | Path) -> dict[str, TermWeightVector]:
    out: dict[str, TermWeightVector] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected query_id<TAB>term<TAB>weight")
            out.setdefault(parts[0], {})[parts[1]] = float(parts[2])
    return out
