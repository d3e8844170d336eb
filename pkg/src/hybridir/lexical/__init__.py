from hybridir.lexical.bm25 import Bm25Params, TermWeightVector, bm25_score, bm25_search, idf, query_vector
from hybridir.lexical.index import DOC_FIELDS, InvertedIndex, build_index, document_tokens
from hybridir.lexical.storage import IndexFormatError, load_index, save_index

__all__ = [
    "DOC_FIELDS",
    "Bm25Params",
    "IndexFormatError",
    "InvertedIndex",
    "TermWeightVector",
    "bm25_score",
    "bm25_search",
    "build_index",
    "document_tokens",
    "idf",
    "load_index",
    "query_vector",
    "save_index",
]
