from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass

from hybridir.corpus.types import RankedList
from hybridir.lexical.index import InvertedIndex

# term -> query weight
TermWeightVector = dict


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75

    def __post_init__(self):
        if self.k1 < 0 or not 0 <= self.b <= 1:
            raise ValueError(f"invalid BM25 params k1={self.k1}, b={self.b}")


def query_vector(index: InvertedIndex, text: str) -> TermWeightVector:
    """Query term weights = term frequency within the query."""
    return dict(Counter(index.analyze(text)))


def idf(n_docs: int, df: int) -> float:
    return math.log(1.0 + (n_docs - df + 0.5) / (df + 0.5))


def _term_weight(index: InvertedIndex, tf: int, dl: int, params: Bm25Params) -> float:
    norm = params.k1 * (1.0 - params.b + params.b * dl / index.avg_doc_length) if index.avg_doc_length else params.k1
    return tf * (params.k1 + 1.0) / (tf + norm)


def bm25_score(index: InvertedIndex, query: TermWeightVector, doc: int, params: Bm25Params = Bm25Params()) -> float:
    """BM25 score of one internal doc id; accumulates over query terms in sorted order."""
    terms = index.doc_terms(doc)
    dl = index.doc_lengths[doc]
    score = 0.0
    for term in sorted(query):
        w = query[term]
        tf = terms.get(term, 0)
        if w == 0 or tf == 0:
            continue
        score += w * idf(index.num_docs, index.doc_freq(term)) * _term_weight(index, tf, dl, params)
    return score


def bm25_search(
    index: InvertedIndex,
    query: TermWeightVector,
    k: int = 1000,
    params: Bm25Params = Bm25Params(),
    query_id: str = "",
    tag: str = "bm25",
) -> RankedList:
    """Top-k by postings traversal; docs without query-term overlap are not returned."""
    if k < 1:
        raise ValueError("k must be >= 1")
    acc: dict[int, float] = {}
    # same term order as bm25_score so accumulated floats agree bit for bit
    for term in sorted(query):
        w = query[term]
        plist = index.term_postings(term)
        if w == 0 or not plist:
            continue
        term_idf = idf(index.num_docs, len(plist))
        for d, tf in plist:
            acc[d] = acc.get(d, 0.0) + w * term_idf * _term_weight(index, tf, index.doc_lengths[d], params)
    ids = index.doc_ids
    candidates = ((ids[d], s) for d, s in acc.items() if s > 0)
    top = heapq.nsmallest(k, candidates, key=lambda kv: (-kv[1], kv[0]))
    return RankedList.from_scores(query_id, top, tag)
