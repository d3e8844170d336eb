"""Corpus, query and expansion-sidecar files."""

from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Iterator

from hybridir.corpus.types import Document, Query

QUERY_FIELDS = ("title", "description", "narrative")


class DataError(ValueError):
    """Malformed or inconsistent input data."""


def ingest_corpus(path: str | Path, format: str = "jsonl") -> Iterator[Document]:
    """Stream documents from a JSON-lines corpus file in file order."""
    if format != "jsonl":
        raise DataError(f"unsupported corpus format {format!r}")
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None
            if not isinstance(rec, dict):
                raise DataError(f"{path}:{lineno}: record is not an object")
            doc_id = rec.get("doc_id")
            if not isinstance(doc_id, str) or not doc_id:
                raise DataError(f"{path}:{lineno}: missing or empty doc_id")
            if doc_id in seen:
                raise DataError(f"{path}:{lineno}: duplicate doc_id {doc_id!r}")
            text = rec.get("text", "")
            title = rec.get("title")
            expansions = rec.get("expansions")
            if not isinstance(text, str) or (title is not None and not isinstance(title, str)):
                raise DataError(f"{path}:{lineno}: text/title must be strings")
            if expansions is not None and (
                not isinstance(expansions, list) or not all(isinstance(x, str) for x in expansions)
            ):
                raise DataError(f"{path}:{lineno}: expansions must be a list of strings")
            seen.add(doc_id)
            yield Document(doc_id, text, title, tuple(expansions) if expansions is not None else None)


def document_to_json(doc: Document) -> str:
    rec = {"doc_id": doc.doc_id, "text": doc.text}
    if doc.title is not None:
        rec["title"] = doc.title
    if doc.expansions is not None:
        rec["expansions"] = list(doc.expansions)
    return json.dumps(rec, ensure_ascii=False)


def write_corpus(docs: Iterable[Document], path: str | Path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc in docs:
            fh.write(document_to_json(doc) + "\n")
            n += 1
    return n


def read_queries(path: str | Path) -> list[Query]:
    queries = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) > 4:
                raise DataError(f"{path}:{lineno}: expected at most 4 tab-separated fields")
            parts += [""] * (4 - len(parts))
            qid, title, desc, narr = parts
            if qid in seen:
                raise DataError(f"{path}:{lineno}: duplicate query_id {qid!r}")
            try:
                queries.append(Query(qid, title, desc or None, narr or None))
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
            seen.add(qid)
    return queries


def write_queries(queries: Iterable[Query], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for q in queries:
            fields = [q.query_id, q.title or "", q.description or "", q.narrative or ""]
            while len(fields) > 2 and not fields[-1]:
                fields.pop()
            fh.write("\t".join(fields) + "\n")


def effective_query_text(q: Query, fields: Iterable[str] = ("title",)) -> str:
    """Join the selected query fields in title, description, narrative order."""
    fields = set(fields)
    unknown = fields - set(QUERY_FIELDS)
    if unknown:
        raise ValueError(f"unknown query fields: {sorted(unknown)}")
    parts = [getattr(q, f) for f in QUERY_FIELDS if f in fields]
    text = " ".join(p.strip() for p in parts if p and p.strip())
    if not text:
        raise ValueError(f"query {q.query_id!r} is empty for fields {sorted(fields)}")
    return text


def read_expansions(path: str | Path, per_doc: int = 0) -> dict[str, list[str]]:
    """Read a ``doc_id<TAB>expansion`` sidecar; keep at most ``per_doc`` lines per doc (0 = all)."""
    out: dict[str, list[str]] = defaultdict(list)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            doc_id, sep, text = line.partition("\t")
            if not sep or not doc_id:
                raise DataError(f"{path}:{lineno}: expected doc_id<TAB>expansion")
            if per_doc and len(out[doc_id]) >= per_doc:
                continue
            out[doc_id].append(text)
    return dict(out)


def attach_expansions(docs: Iterable[Document], expansions: dict[str, list[str]]) -> Iterator[Document]:
    for doc in docs:
        extra = expansions.get(doc.doc_id)
        if extra:
            doc = Document(doc.doc_id, doc.text, doc.title, tuple(doc.expansions or ()) + tuple(extra))
        yield doc
