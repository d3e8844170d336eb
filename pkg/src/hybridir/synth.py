"""Deterministic synthetic test collection with a controllable vocabulary gap.

Every query names two query-specific concepts and two generic ones. Each query
gets a relevant document that uses the query's own words and, with
probability ``mismatch_fraction``, a second relevant document that expresses
the same concepts only through synonyms. The synonym map links them for the
hash embedder; exact matching cannot. Background documents are filler text
sprinkled with generic concepts in either surface form, and some of them
repeat a pair of generic concepts heavily, which is noise that a bag-of-tokens
embedder without idf is drawn to while BM25 discounts it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from hybridir.corpus.analysis import tokenize
from hybridir.corpus.io import write_corpus, write_queries
from hybridir.corpus.types import Document, Query
from hybridir.dense import write_synonyms
from hybridir.eval.metrics import Qrels
from hybridir.trec import write_qrels

_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "dr", "gr", "kl", "pl", "tr", "st", "sk"]
_NUCLEI = ["a", "e", "i", "o", "u", "ai", "ou"]
_CODAS = ["", "", "n", "r", "m", "k", "x", "l"]


@dataclass(frozen=True)
class SynthShape:
    n_filler: int = 3000
    n_generic: int = 30
    sentence_len: tuple[int, int] = (8, 14)
    relevant_sentences: tuple[int, int] = (8, 24)
    background_sentences: tuple[int, int] = (3, 20)
    generic_sprinkle: float = 0.3
    heavy_fraction: float = 0.3
    heavy_repeats: tuple[int, int] = (3, 8)


@dataclass
class SynthDataset:
    docs: list[Document]
    queries: list[Query]
    qrels: Qrels
    synonyms: dict[str, str]
    # query_id -> doc_id of the synonym-only relevant doc, if any
    mismatched: dict[str, str] = field(default_factory=dict)

    def write(self, out_dir: str | Path) -> dict[str, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = {
            "corpus": out / "corpus.jsonl",
            "queries": out / "queries.tsv",
            "qrels": out / "qrels.txt",
            "synonyms": out / "synonyms.tsv",
        }
        write_corpus(self.docs, paths["corpus"])
        write_queries(self.queries, paths["queries"])
        write_qrels(self.qrels, paths["qrels"])
        write_synonyms(self.synonyms, paths["synonyms"])
        return paths


class _Words:
    """Pseudo-words whose normalized form is a single, unique token."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.used_stems: set[str] = set()

    def new(self) -> str:
        while True:
            n_syll = self.rng.choice((2, 2, 3))
            word = "".join(
                self.rng.choice(_ONSETS) + self.rng.choice(_NUCLEI) for _ in range(n_syll)
            ) + self.rng.choice(_CODAS)
            toks = tokenize(word)
            if len(toks) == 1 and toks[0] not in self.used_stems:
                self.used_stems.add(toks[0])
                return word


def generate(
    seed: int = 13,
    n_docs: int = 1000,
    n_queries: int = 100,
    mismatch_fraction: float = 0.5,
    shape: SynthShape = SynthShape(),
) -> SynthDataset:
    if n_docs < 1 or n_queries < 1:
        raise ValueError("n_docs and n_queries must be positive")
    if not 0.0 <= mismatch_fraction <= 1.0:
        raise ValueError("mismatch_fraction must be in [0, 1]")
    rng = random.Random(seed)
    words = _Words(rng)
    filler = [words.new() for _ in range(shape.n_filler)]
    filler_weights = [1.0 / (r + 1) for r in range(len(filler))]
    generic = [(words.new(), words.new()) for _ in range(shape.n_generic)]
    specific = [[(words.new(), words.new()) for _ in range(2)] for _ in range(n_queries)]

    synonyms = {syn: canon for canon, syn in generic}
    for pair in specific:
        synonyms.update({syn: canon for canon, syn in pair})

    def filler_sentence(extra: list[str] = (), forbidden: frozenset = frozenset()) -> str:
        n = rng.randint(*shape.sentence_len)
        toks = rng.choices(filler, filler_weights, k=n)
        if rng.random() < shape.generic_sprinkle:
            for _ in range(rng.randint(1, 3)):
                canon, syn = rng.choice(generic)
                w = rng.choice((canon, syn))
                if w not in forbidden:
                    toks.append(w)
        toks += extra
        rng.shuffle(toks)
        return " ".join(toks) + "."

    def relevant_doc(concepts: list[str], forbidden: frozenset) -> str:
        n = rng.randint(*shape.relevant_sentences)
        topical = rng.randrange(n)
        sents = [filler_sentence(concepts if i == topical else [], forbidden) for i in range(n)]
        return " ".join(sents)

    def background_doc() -> str:
        n = rng.randint(*shape.background_sentences)
        sents = [filler_sentence() for _ in range(n)]
        if rng.random() < shape.heavy_fraction:
            heavy = []
            for canon, syn in rng.sample(generic, 2):
                heavy += [rng.choice((canon, syn)) for _ in range(rng.randint(*shape.heavy_repeats))]
            sents[rng.randrange(n)] = filler_sentence(heavy)
        return " ".join(sents)

    queries: list[Query] = []
    relevant_texts: list[tuple[str, str, int]] = []  # (query_id, text, grade)
    mismatched_q: list[str] = []
    for qi in range(n_queries):
        qid = f"q{qi + 1:03d}"
        gen = rng.sample(generic, 2)
        concepts = specific[qi] + gen
        canon = [c for c, _ in concepts]
        syns = [s for _, s in concepts]
        queries.append(Query(qid, " ".join(canon)))
        relevant_texts.append((qid, relevant_doc(canon, frozenset()), 2))
        if rng.random() < mismatch_fraction:
            relevant_texts.append((qid, relevant_doc(syns, frozenset(canon)), 1))
            mismatched_q.append(qid)

    n_background = max(0, n_docs - len(relevant_texts))
    texts: list[tuple[str | None, str, int]] = [(q, t, g) for q, t, g in relevant_texts]
    texts += [(None, background_doc(), 0) for _ in range(n_background)]
    rng.shuffle(texts)

    docs = []
    judgments: dict[str, dict[str, int]] = {q.query_id: {} for q in queries}
    mismatched: dict[str, str] = {}
    width = max(4, len(str(len(texts) - 1)))
    for i, (qid, text, grade) in enumerate(texts):
        doc_id = f"d{i:0{width}d}"
        docs.append(Document(doc_id, text))
        if qid is not None:
            judgments[qid][doc_id] = grade
            if grade == 1:
                mismatched[qid] = doc_id
    judgments = {q: dict(sorted(d.items())) for q, d in judgments.items()}
    return SynthDataset(docs, queries, Qrels(judgments), synonyms, mismatched)
