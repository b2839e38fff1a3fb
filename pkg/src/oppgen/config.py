"""Engine configuration and provider wiring.

A project snapshots its configuration at creation; environment variables
override file values, and the snapshot is frozen once the first pipeline
stage has run. Provider fields accept either the built-in offline value
("fallback" embeddings, "mock" text generation) or an HTTP endpoint URL.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .discovery import DiscoveryParams
from .embedding import DEFAULT_DIMENSION, Embedder, FallbackEmbedder, HttpEmbedder
from .errors import InvalidConfig
from .generation.textgen import HttpTextGen, MockTextGen, TextGenService
from .ingestion.translate import HttpTranslator, Translator

ENV_PREFIX = "OPPGEN_"
DEFAULT_ASSET_SIZE_LIMIT = 32 * 1024 * 1024


@dataclass
class EngineConfig:
    seed: int = 0
    embedding_provider: str = "fallback"  # "fallback" or endpoint URL
    embedding_dimension: int = DEFAULT_DIMENSION
    textgen_provider: str = "mock"  # "mock" or endpoint URL
    textgen_model: str = ""
    translator_url: str = ""  # empty = translation disabled
    max_parallel: int = 4
    asset_size_limit: int = DEFAULT_ASSET_SIZE_LIMIT
    reduce_k: int = 5
    candidate_pool: int = 30
    mmr_lambda: float = 0.7

    def validate(self) -> "EngineConfig":
        if self.embedding_provider != "fallback" and not _is_url(self.embedding_provider):
            raise InvalidConfig(
                f"embedding provider must be 'fallback' or an http(s) URL, "
                f"got {self.embedding_provider!r}"
            )
        if self.textgen_provider != "mock" and not _is_url(self.textgen_provider):
            raise InvalidConfig(
                f"text generation provider must be 'mock' or an http(s) URL, "
                f"got {self.textgen_provider!r}"
            )
        if self.translator_url and not _is_url(self.translator_url):
            raise InvalidConfig(f"translator URL invalid: {self.translator_url!r}")
        if self.embedding_dimension < 8:
            raise InvalidConfig("embedding dimension too small")
        if not 0.0 <= self.mmr_lambda <= 1.0:
            raise InvalidConfig("mmr_lambda must be in [0, 1]")
        return self

    def discovery_params(self) -> DiscoveryParams:
        return DiscoveryParams(
            reduce_k=self.reduce_k,
            candidate_pool=self.candidate_pool,
            mmr_lambda=self.mmr_lambda,
            seed=self.seed,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def public_dict(self) -> dict:
        """Config view safe for API responses; endpoint URLs are masked."""
        d = self.to_dict()
        for key in ("embedding_provider", "textgen_provider", "translator_url"):
            if _is_url(d[key]):
                d[key] = "remote"
        return d

    @staticmethod
    def from_dict(d: dict) -> "EngineConfig":
        known = {f for f in EngineConfig.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise InvalidConfig(f"unknown configuration keys: {sorted(unknown)}")
        return EngineConfig(**d).validate()


def _is_url(value: str) -> bool:
    return value.startswith("http://") or value.startswith("https://")


def load_config(path: Optional[str | Path] = None, env: Optional[dict] = None) -> EngineConfig:
    """Build a config from an optional JSON file plus environment overrides."""
    data: dict = {}
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidConfig(f"cannot read configuration file {path}: {exc}") from exc
    env = dict(os.environ if env is None else env)
    mapping = {
        "SEED": ("seed", int),
        "EMBED_PROVIDER": ("embedding_provider", str),
        "EMBED_DIM": ("embedding_dimension", int),
        "TEXTGEN_PROVIDER": ("textgen_provider", str),
        "TEXTGEN_MODEL": ("textgen_model", str),
        "TRANSLATE_URL": ("translator_url", str),
        "MAX_PARALLEL": ("max_parallel", int),
        "ASSET_SIZE_LIMIT": ("asset_size_limit", int),
    }
    for env_key, (field_name, cast) in mapping.items():
        raw = env.get(ENV_PREFIX + env_key)
        if raw is not None:
            try:
                data[field_name] = cast(raw)
            except ValueError as exc:
                raise InvalidConfig(f"bad value for {ENV_PREFIX}{env_key}: {raw!r}") from exc
    return EngineConfig.from_dict(data)


@dataclass
class Providers:
    embedder: Embedder
    textgen: TextGenService
    translator: Optional[Translator]


def build_providers(config: EngineConfig) -> Providers:
    if config.embedding_provider == "fallback":
        embedder: Embedder = FallbackEmbedder(
            dimension=config.embedding_dimension, seed=config.seed
        )
    else:
        embedder = HttpEmbedder(
            config.embedding_provider,
            dimension=config.embedding_dimension,
            max_parallel=config.max_parallel,
        )
    if config.textgen_provider == "mock":
        textgen: TextGenService = MockTextGen(seed=config.seed)
    else:
        textgen = HttpTextGen(config.textgen_provider, model=config.textgen_model)
    translator = HttpTranslator(config.translator_url) if config.translator_url else None
    return Providers(embedder=embedder, textgen=textgen, translator=translator)
