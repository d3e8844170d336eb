"""Text normalization: lowercase, alphanumeric split, stopword removal, Porter stemming."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from hybridir.corpus.porter import stem as porter_stem

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a one-word-per-line stopword file; None loads the bundled SMART list."""
    if path is None:
        text = resources.files("hybridir.corpus").joinpath("data/smart_stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    words = (line.strip().lower() for line in text.splitlines())
    return frozenset(w for w in words if w and not w.startswith("#"))


SMART_STOPWORDS = load_stopwords()


@dataclass(frozen=True)
class NormalizationConfig:
    stopwords: frozenset[str] = field(default=SMART_STOPWORDS)
    stem: bool = True


DEFAULT_CONFIG = NormalizationConfig()


def tokenize(text: str, config: NormalizationConfig = DEFAULT_CONFIG) -> list[str]:
    """Return the normalized token stream for ``text``.

    A stem that itself lands on a stopword (``knowing`` -> ``know``) is dropped
    too, so no emitted token is ever in the active stopword list.
    """
    stop = config.stopwords
    out = []
    for tok in _TOKEN_RE.findall(text.lower()):
        if tok in stop:
            continue
        if config.stem:
            tok = porter_stem(tok)
            if tok in stop:
                continue
        out.append(tok)
    return out
