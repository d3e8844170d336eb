from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from hybridir.corpus.analysis import DEFAULT_CONFIG, NormalizationConfig, tokenize
from hybridir.corpus.types import Document

DOC_FIELDS = ("title", "text")


@dataclass
class InvertedIndex:
    """Postings plus the collection statistics BM25, Bo1 and RM3 read.

    Internal doc ids are positions in ``doc_ids`` (ingestion order); term ids
    are positions in ``terms`` (first-seen order).
    """

    terms: list[str]
    postings: list[list[tuple[int, int]]]
    doc_ids: list[str]
    doc_lengths: list[int]
    collection_term_freq: list[int]
    config: NormalizationConfig = DEFAULT_CONFIG
    fields: tuple[str, ...] = DOC_FIELDS
    include_expansions: bool = False
    vocab: dict[str, int] = field(init=False, repr=False)
    doc_index: dict[str, int] = field(init=False, repr=False)
    _forward: list[dict[int, int]] | None = field(init=False, default=None, repr=False)

    def __post_init__(self):
        self.vocab = {t: i for i, t in enumerate(self.terms)}
        self.doc_index = {d: i for i, d in enumerate(self.doc_ids)}
        self.num_docs = len(self.doc_ids)
        self.total_length = sum(self.doc_lengths)
        self.avg_doc_length = self.total_length / self.num_docs if self.num_docs else 0.0

    @property
    def vocab_size(self) -> int:
        return len(self.terms)

    def doc_freq(self, term: str) -> int:
        tid = self.vocab.get(term)
        return 0 if tid is None else len(self.postings[tid])

    def cf(self, term: str) -> int:
        tid = self.vocab.get(term)
        return 0 if tid is None else self.collection_term_freq[tid]

    def term_postings(self, term: str) -> list[tuple[int, int]]:
        tid = self.vocab.get(term)
        return [] if tid is None else self.postings[tid]

    def doc_terms(self, doc: int) -> dict[str, int]:
        """term -> tf for one internal doc id (forward view built from postings on first use)."""
        if self._forward is None:
            fwd: list[dict[int, int]] = [{} for _ in range(self.num_docs)]
            for tid, plist in enumerate(self.postings):
                for d, tf in plist:
                    fwd[d][tid] = tf
            self._forward = fwd
        return {self.terms[tid]: tf for tid, tf in self._forward[doc].items()}

    def tf(self, term: str, doc: int) -> int:
        return self.doc_terms(doc).get(term, 0)

    def analyze(self, text: str) -> list[str]:
        return tokenize(text, self.config)


def document_tokens(
    doc: Document,
    fields: Iterable[str] = DOC_FIELDS,
    include_expansions: bool = False,
    config: NormalizationConfig = DEFAULT_CONFIG,
) -> list[str]:
    tokens: list[str] = []
    fields = set(fields)
    if "title" in fields and doc.title:
        tokens += tokenize(doc.title, config)
    if "text" in fields and doc.text:
        tokens += tokenize(doc.text, config)
    if include_expansions and doc.expansions:
        for exp in doc.expansions:
            tokens += tokenize(exp, config)
    return tokens


def build_index(
    docs: Iterable[Document],
    include_expansions: bool = False,
    field_selection: Iterable[str] = DOC_FIELDS,
    config: NormalizationConfig = DEFAULT_CONFIG,
) -> InvertedIndex:
    """Index documents; with ``include_expansions`` the expansion strings are appended to the indexed text."""
    fields = tuple(f for f in DOC_FIELDS if f in set(field_selection))
    unknown = set(field_selection) - set(DOC_FIELDS)
    if unknown or not fields:
        raise ValueError(f"field_selection must be a non-empty subset of {DOC_FIELDS}, got {sorted(field_selection)}")
    vocab: dict[str, int] = {}
    terms: list[str] = []
    postings: list[list[tuple[int, int]]] = []
    cf: list[int] = []
    doc_ids: list[str] = []
    lengths: list[int] = []
    seen = set()
    for doc in docs:
        if doc.doc_id in seen:
            raise ValueError(f"duplicate doc_id {doc.doc_id!r}")
        seen.add(doc.doc_id)
        internal = len(doc_ids)
        doc_ids.append(doc.doc_id)
        tokens = document_tokens(doc, fields, include_expansions, config)
        lengths.append(len(tokens))
        for term, tf in Counter(tokens).items():
            tid = vocab.get(term)
            if tid is None:
                tid = vocab[term] = len(terms)
                terms.append(term)
                postings.append([])
                cf.append(0)
            postings[tid].append((internal, tf))
            cf[tid] += tf
    if not doc_ids:
        raise ValueError("zero documents")
    return InvertedIndex(terms, postings, doc_ids, lengths, cf, config, fields, include_expansions)
