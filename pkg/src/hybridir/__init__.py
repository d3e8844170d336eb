"""Zero-shot hybrid lexical/dense retrieval with reciprocal rank fusion."""

__version__ = "0.1.0"
