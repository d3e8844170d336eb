from __future__ import annotations

import re

from hybridir.corpus.types import Document, Passage

_SENT_BOUNDARY = re.compile(r"(?<=[.!?])\s+")


def split_sentences(text: str) -> list[str]:
    """Split after ., ! or ? followed by whitespace.

    Not abbreviation-aware: "Dr. Smith" splits after "Dr.".
    """
    return [s for s in (p.strip() for p in _SENT_BOUNDARY.split(text)) if s]


def window_bounds(n: int, window: int = 10, stride: int = 5) -> list[tuple[int, int]]:
    """Inclusive (start, end) sentence windows over ``n`` sentences.

    Emission stops after the first window that reaches the last sentence.
    """
    if window < 1 or not 1 <= stride <= window:
        raise ValueError(f"need window >= 1 and 1 <= stride <= window, got {window}, {stride}")
    bounds = []
    start = 0
    while start < n:
        end = min(start + window, n) - 1
        bounds.append((start, end))
        if end == n - 1:
            break
        start += stride
    return bounds


def split_passages(doc: Document, window: int = 10, stride: int = 5) -> list[Passage]:
    sentences = split_sentences(doc.text or "")
    if not sentences:
        if doc.title and doc.title.strip():
            # title-only document: a single passage carrying the title
            return [Passage(doc.doc_id, 0, 0, 0, doc.title.strip())]
        window_bounds(0, window, stride)
        return []
    return [
        Passage(doc.doc_id, i, s, e, " ".join(sentences[s : e + 1]))
        for i, (s, e) in enumerate(window_bounds(len(sentences), window, stride))
    ]
