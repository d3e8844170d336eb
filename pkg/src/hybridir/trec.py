"""TREC run and qrels files.

Run line:   ``query_id Q0 doc_id rank score tag`` (score with 6 decimals)
Qrels line: ``query_id 0 doc_id grade``
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from hybridir.corpus.io import DataError
from hybridir.corpus.types import Entry, RankedList, Run
from hybridir.eval.metrics import Qrels


def format_run_line(query_id: str, e: Entry, tag: str) -> str:
    return f"{query_id} Q0 {e.doc_id} {e.rank} {e.score:.6f} {tag}"


def run_lines(run: Run | Iterable[RankedList]) -> Iterable[str]:
    lists = run.values() if isinstance(run, dict) else run
    for rl in lists:
        for e in rl.entries:
            yield format_run_line(rl.query_id, e, rl.tag)


def write_run(run: Run | Iterable[RankedList], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in run_lines(run):
            fh.write(line + "\n")


def read_run(path: str | Path) -> Run:
    """Parse a run file; records of one query must be contiguous with ranks 1..n in order."""
    groups: dict[str, list[Entry]] = {}
    tags: dict[str, str] = {}
    current = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 6:
                raise DataError(f"{path}:{lineno}: expected 6 fields 'qid Q0 doc rank score tag'")
            qid, _q0, doc_id, rank, score, tag = parts
            try:
                entry = Entry(doc_id, int(rank), float(score))
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad rank or score") from None
            if qid != current:
                if qid in groups:
                    raise DataError(f"{path}:{lineno}: records for query {qid!r} are not contiguous")
                groups[qid] = []
                tags[qid] = tag
                current = qid
            if entry.rank != len(groups[qid]) + 1:
                raise DataError(f"{path}:{lineno}: query {qid!r} rank {entry.rank}, expected {len(groups[qid]) + 1}")
            groups[qid].append(entry)
    try:
        return {qid: RankedList(qid, entries, tags[qid]) for qid, entries in groups.items()}
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def run_tag(run: Run) -> str:
    for rl in run.values():
        return rl.tag
    return ""


def read_qrels(path: str | Path, relevance_threshold: int = 1) -> Qrels:
    judgments: dict[str, dict[str, int]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 4:
                raise DataError(f"{path}:{lineno}: expected 'qid 0 doc grade'")
            qid, _it, doc_id, grade = parts
            try:
                g = int(grade)
            except ValueError:
                raise DataError(f"{path}:{lineno}: grade must be an integer") from None
            per_q = judgments.setdefault(qid, {})
            if doc_id in per_q:
                raise DataError(f"{path}:{lineno}: duplicate judgment for ({qid}, {doc_id})")
            per_q[doc_id] = g
    return Qrels(judgments, relevance_threshold)


def write_qrels(qrels: Qrels, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for qid, docs in qrels.judgments.items():
            for doc_id, g in docs.items():
                fh.write(f"{qid} 0 {doc_id} {g}\n")
