"""End-to-end retrieval for each search mode over a query set."""

from __future__ import annotations

from typing import Iterable

from hybridir.config import PipelineConfig
from hybridir.corpus.io import effective_query_text
from hybridir.corpus.passages import split_passages
from hybridir.corpus.types import Document, Query, RankedList, Run
from hybridir.dense import EmbeddingProvider, VectorStore, dense_search, max_passage_aggregate
from hybridir.expansion import PrfConfig, bo1_expand, rm3_expand
from hybridir.lexical.bm25 import Bm25Params, bm25_search, query_vector
from hybridir.lexical.index import InvertedIndex

MODES = ("bm25", "bm25+bo1", "bm25+rm3", "dense", "dense+maxpassage")


def bm25_params(cfg: PipelineConfig) -> Bm25Params:
    return Bm25Params(cfg.k1, cfg.b)


def prf_config(cfg: PipelineConfig) -> PrfConfig:
    return PrfConfig(cfg.fb_docs, cfg.fb_terms, cfg.rm3_lambda, cfg.rm3_mu)


def lexical_run(
    index: InvertedIndex,
    queries: Iterable[Query],
    cfg: PipelineConfig,
    mode: str = "bm25",
    tag: str | None = None,
    expanded: dict | None = None,
) -> Run:
    """BM25 with optional PRF; pass ``expanded`` to collect the expanded query vectors."""
    if mode not in ("bm25", "bm25+bo1", "bm25+rm3"):
        raise ValueError(f"not a lexical mode: {mode!r}")
    tag = tag or mode
    params = bm25_params(cfg)
    prf = prf_config(cfg)
    out: Run = {}
    for q in queries:
        qvec = query_vector(index, effective_query_text(q, cfg.query_fields))
        first = bm25_search(index, qvec, cfg.run_depth, params, q.query_id, tag)
        if mode != "bm25" and len(first) and prf.fb_terms:
            expand = bo1_expand if mode == "bm25+bo1" else rm3_expand
            qvec = expand(index, qvec, first, prf)
            first = bm25_search(index, qvec, cfg.run_depth, params, q.query_id, tag)
        if expanded is not None:
            expanded[q.query_id] = qvec
        out[q.query_id] = first
    return out


def passage_store(
    docs: Iterable[Document], embedder: EmbeddingProvider, window: int = 10, stride: int = 5, passages: bool = True
) -> VectorStore:
    """Embed every passage (or whole document text when ``passages`` is off) of a corpus."""
    items = []
    for doc in docs:
        if passages:
            for p in split_passages(doc, window, stride):
                items.append((p.key, embedder.embed(p.text)))
        else:
            text = " ".join(x for x in (doc.title, doc.text) if x)
            if text.strip():
                items.append(((doc.doc_id, 0), embedder.embed(text)))
    return VectorStore.from_items(embedder.dim, items)


def dense_run(
    store: VectorStore,
    query_vectors: dict[str, object],
    depth: int,
    mode: str = "dense+maxpassage",
    tag: str | None = None,
) -> Run:
    """Dense retrieval; ``dense`` expects one vector per document, ``dense+maxpassage`` aggregates passages."""
    tag = tag or mode
    if mode == "dense":
        if len(store.doc_ids()) != len(store):
            raise ValueError("store holds several passages per document; use mode dense+maxpassage")
    elif mode != "dense+maxpassage":
        raise ValueError(f"not a dense mode: {mode!r}")
    out: Run = {}
    for qid, vec in query_vectors.items():
        if mode == "dense":
            prun = dense_search(store, vec, depth, qid, tag)
            out[qid] = RankedList(qid, [(e.doc_id[0], e.rank, e.score) for e in prun.entries], tag)
        else:
            # exact: score every passage, then keep the best documents
            prun = dense_search(store, vec, max(len(store), 1), qid, tag)
            agg = max_passage_aggregate(prun, tag)
            out[qid] = RankedList(qid, agg.entries[:depth], tag)
    return out


def embed_queries(queries: Iterable[Query], embedder: EmbeddingProvider, fields=("title",)) -> dict:
    return {q.query_id: embedder.embed(effective_query_text(q, fields)) for q in queries}
