"""Dense retrieval: embedding providers, a passage-level vector store, exact top-k and max-passage aggregation."""

from __future__ import annotations

import hashlib
import heapq
from collections import Counter
from pathlib import Path
from typing import Iterable, Protocol

import numpy as np

from hybridir.corpus.analysis import DEFAULT_CONFIG, NormalizationConfig, tokenize
from hybridir.corpus.io import DataError
from hybridir.corpus.types import RankedList

PassageKey = tuple[str, int]


class EmbeddingProvider(Protocol):
    dim: int

    def embed(self, text: str) -> np.ndarray: ...


def hash_bucket(token: str, dim: int) -> tuple[int, float]:
    """Bucket and sign for a token: low 63 bits of blake2b pick the bucket, the top bit the sign."""
    h = int.from_bytes(hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "little")
    return (h & ((1 << 63) - 1)) % dim, (-1.0 if h >> 63 else 1.0)


def embed_hash(
    text: str,
    dim: int,
    synonyms: dict[str, str] | None = None,
    config: NormalizationConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    """Signed feature-hashing bag of tokens, L2-normalized (zero vector if nothing survives)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    vec = np.zeros(dim, dtype=np.float64)
    tokens = tokenize(text, config)
    if synonyms:
        tokens = [synonyms.get(t, t) for t in tokens]
    for tok, n in sorted(Counter(tokens).items()):
        bucket, sign = hash_bucket(tok, dim)
        vec[bucket] += sign * n
    norm = np.linalg.norm(vec)
    if norm > 0:
        vec /= norm
    return vec


def normalize_synonyms(raw: dict[str, str], config: NormalizationConfig = DEFAULT_CONFIG) -> dict[str, str]:
    """Map surface words through the tokenizer so keys and values match token space."""
    out = {}
    for word, canonical in raw.items():
        src, dst = tokenize(word, config), tokenize(canonical, config)
        if len(src) == 1 and len(dst) == 1:
            out[src[0]] = dst[0]
    return out


def read_synonyms(path: str | Path) -> dict[str, str]:
    """``term<TAB>canonical`` lines."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise DataError(f"{path}:{lineno}: expected term<TAB>canonical")
            out[parts[0]] = parts[1]
    return out


def write_synonyms(synonyms: dict[str, str], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for k, v in synonyms.items():
            fh.write(f"{k}\t{v}\n")


class HashEmbedder:
    def __init__(self, dim: int = 256, synonyms: dict[str, str] | None = None, config=DEFAULT_CONFIG):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = dim
        self.config = config
        self.synonyms = normalize_synonyms(synonyms, config) if synonyms else None

    def embed(self, text: str) -> np.ndarray:
        return embed_hash(text, self.dim, self.synonyms, self.config)


class VectorStore:
    """Immutable passage-keyed matrix of embeddings."""

    def __init__(self, dim: int, keys: list[PassageKey] | None = None, matrix: np.ndarray | None = None):
        self.dim = dim
        self.keys = list(keys or [])
        self.matrix = np.zeros((0, dim)) if matrix is None else np.asarray(matrix, dtype=np.float64)
        if self.matrix.shape != (len(self.keys), dim):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match {len(self.keys)} keys x dim {dim}")
        if len(set(self.keys)) != len(self.keys):
            raise ValueError("duplicate passage keys")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("non-finite embedding values")

    @classmethod
    def from_items(cls, dim: int, items: Iterable[tuple[PassageKey, np.ndarray]]) -> "VectorStore":
        keys, rows = [], []
        for key, vec in items:
            vec = np.asarray(vec, dtype=np.float64)
            if vec.shape != (dim,):
                raise ValueError(f"vector for {key} has dimension {vec.shape[0]}, expected {dim}")
            keys.append(key)
            rows.append(vec)
        return cls(dim, keys, np.vstack(rows) if rows else None)

    def __len__(self):
        return len(self.keys)

    def get(self, key: PassageKey) -> np.ndarray:
        return self.matrix[self.keys.index(key)]

    def doc_ids(self) -> set[str]:
        return {k[0] for k in self.keys}


def load_embeddings(path: str | Path) -> VectorStore:
    """Read ``#dim E`` then ``doc_id<TAB>passage_index<TAB>v1 ... vE`` lines."""
    keys: list[PassageKey] = []
    rows: list[list[float]] = []
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if dim is None:
                if not line.startswith("#dim "):
                    raise DataError(f"{path}:{lineno}: expected '#dim E' header")
                dim = int(line[5:])
                if dim < 1:
                    raise DataError(f"{path}:{lineno}: dimension must be >= 1")
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DataError(f"{path}:{lineno}: expected doc_id<TAB>passage_index<TAB>values")
            key = (parts[0], int(parts[1]))
            try:
                values = [float(v) for v in parts[2].split()]
            except ValueError:
                raise DataError(f"{path}:{lineno}: unparseable value for {key}") from None
            if len(values) != dim:
                raise DataError(f"{path}:{lineno}: {key} has {len(values)} values, expected {dim}")
            keys.append(key)
            rows.append(values)
    if dim is None:
        raise DataError(f"{path}: empty embedding file")
    try:
        return VectorStore(dim, keys, np.array(rows, dtype=np.float64).reshape(len(rows), dim))
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def write_embeddings(store: VectorStore, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"#dim {store.dim}\n")
        for (doc_id, idx), row in zip(store.keys, store.matrix):
            fh.write(f"{doc_id}\t{idx}\t{' '.join(format(v, '.9g') for v in row)}\n")


def dense_search(store: VectorStore, query_vec: np.ndarray, k: int, query_id: str = "", tag: str = "dense") -> RankedList:
    """Exact top-k by dot product; ties broken by ascending passage key."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(store) == 0:
        return RankedList(query_id, [], tag)
    query_vec = np.asarray(query_vec, dtype=np.float64)
    if query_vec.shape != (store.dim,):
        raise ValueError(f"query dimension {query_vec.shape} does not match store dimension {store.dim}")
    scores = store.matrix @ query_vec
    if k < len(store):
        # keep everything tied with the k-th score so the key tie-break stays exact
        kth = np.partition(scores, len(scores) - k)[len(scores) - k]
        cand = np.nonzero(scores >= kth)[0]
    else:
        cand = np.arange(len(store))
    items = ((store.keys[i], float(scores[i])) for i in cand)
    top = heapq.nsmallest(k, items, key=lambda kv: (-kv[1], kv[0]))
    return RankedList.from_scores(query_id, top, tag)


def max_passage_aggregate(passage_run: RankedList, tag: str | None = None) -> RankedList:
    """Document score = max passage score; ranks reassigned."""
    best: dict[str, float] = {}
    for e in passage_run.entries:
        doc_id = e.doc_id[0]
        if doc_id not in best or e.score > best[doc_id]:
            best[doc_id] = e.score
    return RankedList.from_scores(passage_run.query_id, best, passage_run.tag if tag is None else tag)
