from hybridir.corpus.analysis import (
    DEFAULT_CONFIG,
    SMART_STOPWORDS,
    NormalizationConfig,
    load_stopwords,
    tokenize,
)
from hybridir.corpus.io import (
    DataError,
    attach_expansions,
    effective_query_text,
    ingest_corpus,
    read_expansions,
    read_queries,
    write_corpus,
    write_queries,
)
from hybridir.corpus.passages import split_passages, split_sentences, window_bounds
from hybridir.corpus.types import Document, Entry, Passage, Query, RankedList, Run

__all__ = [
    "DEFAULT_CONFIG",
    "SMART_STOPWORDS",
    "DataError",
    "Document",
    "Entry",
    "NormalizationConfig",
    "Passage",
    "Query",
    "RankedList",
    "Run",
    "attach_expansions",
    "effective_query_text",
    "ingest_corpus",
    "load_stopwords",
    "read_expansions",
    "read_queries",
    "split_passages",
    "split_sentences",
    "tokenize",
    "window_bounds",
    "write_corpus",
    "write_queries",
]
