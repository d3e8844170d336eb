from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str = ""
    title: str | None = None
    expansions: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if self.expansions is not None and not isinstance(self.expansions, tuple):
            object.__setattr__(self, "expansions", tuple(self.expansions))


@dataclass(frozen=True)
class Query:
    query_id: str
    title: str = ""
    description: str | None = None
    narrative: str | None = None

    def __post_init__(self):
        if not self.query_id:
            raise ValueError("query_id must be non-empty")
        if not (self.title or self.description or self.narrative):
            raise ValueError(f"query {self.query_id!r} has no non-empty field")


@dataclass(frozen=True)
class Passage:
    doc_id: str
    passage_index: int
    sentence_start: int
    sentence_end: int
    text: str

    @property
    def key(self) -> tuple[str, int]:
        return (self.doc_id, self.passage_index)


class Entry(NamedTuple):
    doc_id: Hashable
    rank: int
    score: float


@dataclass
class RankedList:
    """One query's ranked results.

    ``doc_id`` is normally a string; passage-level lists use ``(doc_id,
    passage_index)`` tuples. Build from raw scores with :meth:`from_scores`,
    which applies the score-desc / id-asc ordering.
    """

    query_id: str
    entries: list[Entry] = field(default_factory=list)
    tag: str = ""

    def __post_init__(self):
        self.entries = [e if isinstance(e, Entry) else Entry(*e) for e in self.entries]
        seen = set()
        prev = None
        for i, e in enumerate(self.entries, start=1):
            if e.rank != i:
                raise ValueError(f"query {self.query_id}: rank {e.rank} at position {i}; ranks must be 1..n")
            if e.doc_id in seen:
                raise ValueError(f"query {self.query_id}: duplicate doc_id {e.doc_id!r}")
            if prev is not None and e.score > prev:
                raise ValueError(f"query {self.query_id}: scores increase at rank {i}")
            seen.add(e.doc_id)
            prev = e.score

    @classmethod
    def from_scores(cls, query_id: str, scores, tag: str = "", depth: int | None = None) -> "RankedList":
        items = scores.items() if hasattr(scores, "items") else scores
        ordered = sorted(items, key=lambda kv: (-kv[1], kv[0]))
        if depth is not None:
            ordered = ordered[:depth]
        return cls(query_id, [Entry(d, r, s) for r, (d, s) in enumerate(ordered, start=1)], tag)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def doc_ids(self) -> list:
        return [e.doc_id for e in self.entries]

    def scores(self) -> dict:
        return {e.doc_id: e.score for e in self.entries}

    def ranks(self) -> dict:
        return {e.doc_id: e.rank for e in self.entries}

    def top(self, k: int) -> list:
        return [e.doc_id for e in self.entries[:k]]


# query_id -> RankedList
Run = dict


def run_from_lists(lists: Iterable[RankedList]) -> Run:
    return {rl.query_id: rl for rl in lists}
