"""Binary index persistence.

Layout (all integers little-endian; ``str`` = u32 byte length + UTF-8 bytes):

    magic            8 bytes  b"HYIRIDX\\0"
    version          u32      1
    flags            u32      bit 0 = stemming on, bit 1 = expansions included
    n_fields         u32, then n_fields x str      indexed document fields
    n_stopwords      u32, then n_stopwords x str   sorted
    N                u32
    N x (str doc_id, u32 doc_length)               internal id order
    V                u32
    V x (str term, u64 collection_freq, u32 df, df x (u32 doc_gap, u32 tf))

Postings are gap encoded: the first gap is the internal doc id itself.
"""

from __future__ import annotations

import struct
from pathlib import Path

from hybridir.corpus.analysis import NormalizationConfig
from hybridir.lexical.index import InvertedIndex

MAGIC = b"HYIRIDX\x00"
VERSION = 1


class IndexFormatError(ValueError):
    pass


def _pack_str(out: list[bytes], s: str) -> None:
    raw = s.encode("utf-8")
    out.append(struct.pack("<I", len(raw)))
    out.append(raw)


def save_index(index: InvertedIndex, path: str | Path) -> None:
    out: list[bytes] = [MAGIC, struct.pack("<I", VERSION)]
    flags = (1 if index.config.stem else 0) | (2 if index.include_expansions else 0)
    out.append(struct.pack("<I", flags))
    out.append(struct.pack("<I", len(index.fields)))
    for f in index.fields:
        _pack_str(out, f)
    stops = sorted(index.config.stopwords)
    out.append(struct.pack("<I", len(stops)))
    for w in stops:
        _pack_str(out, w)
    out.append(struct.pack("<I", index.num_docs))
    for doc_id, length in zip(index.doc_ids, index.doc_lengths):
        _pack_str(out, doc_id)
        out.append(struct.pack("<I", length))
    out.append(struct.pack("<I", index.vocab_size))
    for term, cf, plist in zip(index.terms, index.collection_term_freq, index.postings):
        _pack_str(out, term)
        out.append(struct.pack("<QI", cf, len(plist)))
        flat = []
        prev = 0
        for d, tf in plist:
            flat += (d - prev, tf)
            prev = d
        out.append(struct.pack(f"<{len(flat)}I", *flat))
    Path(path).write_bytes(b"".join(out))


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, fmt: str):
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.data):
            raise IndexFormatError("truncated index file")
        vals = struct.unpack_from(fmt, self.data, self.pos)
        self.pos += size
        return vals

    def u32(self) -> int:
        return self.take("<I")[0]

    def string(self) -> str:
        n = self.u32()
        if self.pos + n > len(self.data):
            raise IndexFormatError("truncated index file")
        s = self.data[self.pos : self.pos + n].decode("utf-8")
        self.pos += n
        return s


def load_index(path: str | Path) -> InvertedIndex:
    data = Path(path).read_bytes()
    if data[:8] != MAGIC:
        raise IndexFormatError(f"{path}: not an index file (bad magic)")
    r = _Reader(data)
    r.pos = 8
    version = r.u32()
    if version != VERSION:
        raise IndexFormatError(f"{path}: unsupported index version {version}")
    flags = r.u32()
    fields = tuple(r.string() for _ in range(r.u32()))
    stops = frozenset(r.string() for _ in range(r.u32()))
    n = r.u32()
    doc_ids, lengths = [], []
    for _ in range(n):
        doc_ids.append(r.string())
        lengths.append(r.u32())
    terms, cfs, postings = [], [], []
    for _ in range(r.u32()):
        terms.append(r.string())
        cf, df = r.take("<QI")
        flat = r.take(f"<{2 * df}I")
        plist = []
        d = 0
        for i in range(0, len(flat), 2):
            d += flat[i]
            plist.append((d, flat[i + 1]))
        cfs.append(cf)
        postings.append(plist)
    if r.pos != len(data):
        raise IndexFormatError(f"{path}: trailing bytes after index")
    config = NormalizationConfig(stopwords=stops, stem=bool(flags & 1))
    return InvertedIndex(terms, postings, doc_ids, lengths, cfs, config, fields, bool(flags & 2))
