"""Pipeline tunables and the ``key = value`` config file format."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from hybridir.corpus.io import QUERY_FIELDS
from hybridir.lexical.index import DOC_FIELDS


@dataclass(frozen=True)
class PipelineConfig:
    index_fields: tuple[str, ...] = DOC_FIELDS
    include_expansions: bool = False
    expansions_per_passage: int = 0
    query_fields: tuple[str, ...] = ("title",)
    k1: float = 1.2
    b: float = 0.75
    fb_docs: int = 10
    fb_terms: int = 10
    rm3_lambda: float = 0.5
    rm3_mu: float = 2500.0
    window: int = 10
    stride: int = 5
    embed_dim: int = 256
    rrf_k: float = 60.0
    fusion_depth: int = 1000
    run_depth: int = 1000
    metric_depth: int = 1000
    map_cutoff: int = 1000
    relevance_threshold: int = 1

    def __post_init__(self):
        bad = set(self.index_fields) - set(DOC_FIELDS)
        if bad or not self.index_fields:
            raise ValueError(f"index_fields must be a non-empty subset of {DOC_FIELDS}")
        bad = set(self.query_fields) - set(QUERY_FIELDS)
        if bad or not self.query_fields:
            raise ValueError(f"query_fields must be a non-empty subset of {QUERY_FIELDS}")
        if self.k1 < 0 or not 0 <= self.b <= 1:
            raise ValueError("need k1 >= 0 and 0 <= b <= 1")
        if self.fb_docs < 1 or self.fb_terms < 0:
            raise ValueError("need fb_docs >= 1 and fb_terms >= 0")
        if not 0 <= self.rm3_lambda <= 1 or self.rm3_mu <= 0:
            raise ValueError("need 0 <= rm3_lambda <= 1 and rm3_mu > 0")
        if self.window < 1 or not 1 <= self.stride <= self.window:
            raise ValueError("need window >= 1 and 1 <= stride <= window")
        if self.expansions_per_passage < 0 or self.embed_dim < 1 or self.rrf_k <= 0:
            raise ValueError("need expansions_per_passage >= 0, embed_dim >= 1, rrf_k > 0")
        for name in ("fusion_depth", "run_depth", "metric_depth", "map_cutoff", "relevance_threshold"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    def updated(self, **overrides) -> "PipelineConfig":
        return replace(self, **{k: coerce(k, v) for k, v in overrides.items() if v is not None})


def _field_types() -> dict[str, object]:
    return {f.name: f.default for f in fields(PipelineConfig)}


CONFIG_KEYS = tuple(_field_types())


def coerce(key: str, value):
    defaults = _field_types()
    if key not in defaults:
        raise KeyError(f"unknown config key {key!r}")
    if not isinstance(value, str):
        return tuple(value) if isinstance(defaults[key], tuple) else value
    proto = defaults[key]
    value = value.strip()
    if isinstance(proto, bool):
        low = value.lower()
        if low not in ("true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"{key}: expected a boolean, got {value!r}")
        return low in ("true", "1", "yes")
    if isinstance(proto, tuple):
        return tuple(v.strip() for v in value.split(",") if v.strip())
    if isinstance(proto, int):
        return int(value)
    return float(value)


def read_config(path: str | Path) -> dict[str, object]:
    values = {}
    for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        try:
            values[key] = coerce(key, value)
        except (KeyError, ValueError) as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return values


def load_config(path: str | Path | None = None, **overrides) -> PipelineConfig:
    base = read_config(path) if path else {}
    base.update({k: v for k, v in overrides.items() if v is not None})
    return PipelineConfig(**{k: coerce(k, v) for k, v in base.items()})


def describe_keys() -> str:
    return "\n".join(f"  {k} (default {_fmt(v)})" for k, v in _field_types().items())


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return ",".join(v)
    return str(v).lower() if isinstance(v, bool) else str(v)
