"""Text-generation service: HTTP provider and a deterministic mock.

The mock fabricates well-formed responses for the three prompt families
(space descriptions, opportunity batches, rating tables) by sampling the
prompt's own topic terms with a seeded generator, so the whole pipeline
runs hermetically and reproducibly. Fault injection covers the error
paths the parsers must survive.
"""

from __future__ import annotations

import hashlib
import random
import re
from dataclasses import dataclass, field
from typing import Protocol

from ..errors import ServiceUnavailable
from .prompts import TextGenRequest

__all__ = ["TextGenService", "HttpTextGen", "MockTextGen", "FaultPlan"]


class TextGenService(Protocol):
    provider_id: str

    def complete(self, request: TextGenRequest) -> str: ...


class HttpTextGen:
    """POST the request fields to an endpoint returning {"text": ...}."""

    def __init__(self, endpoint: str, model: str = "", timeout: float = 120.0) -> None:
        self.endpoint = endpoint
        self.model = model
        self.timeout = timeout
        self.provider_id = f"http:{endpoint}" + (f"#{model}" if model else "")

    def complete(self, request: TextGenRequest) -> str:
        import requests

        payload = {
            "prompt": request.prompt,
            "temperature": request.temperature,
            "top_p": request.top_p,
            "frequency_penalty": request.frequency_penalty,
            "presence_penalty": request.presence_penalty,
        }
        if self.model:
            payload["model"] = self.model
        try:
            resp = requests.post(self.endpoint, json=payload, timeout=self.timeout)
            resp.raise_for_status()
            return resp.json()["text"]
        except Exception as exc:
            raise ServiceUnavailable(f"text generation failed: {exc}") from exc


@dataclass
class FaultPlan:
    """Counters of faults the mock injects, consumed one per matching call."""

    short_batches: int = 0  # emit one item too few
    missing_colon_batches: int = 0  # one item lacks its colon
    outages: int = 0  # raise ServiceUnavailable
    rating_short_rows: int = 0  # one table row too few
    rating_out_of_range: int = 0  # a rating of 8 sneaks in
    malformed_descriptions: int = 0  # description misses its opener

    def take(self, name: str) -> bool:
        left = getattr(self, name)
        if left > 0:
            setattr(self, name, left - 1)
            return True
        return False


_TERMS_TAIL = re.compile(r"The terms are: (.+?)\.$")
_TERMS_DIRECT = re.compile(r"topics from (.+?) and incorporate")
_TERMS_AREA = re.compile(r"The topics in the area are (.+?)\.")
_ROW_COUNT = re.compile(r"a table of two columns and (\d+) rows")
_BATCH_COUNT = re.compile(r"recommend (\d+) ")

_FILLER = (
    "local partners coordinate the rollout with seasonal staff",
    "visitors and residents benefit from shared infrastructure",
    "the approach links existing venues with new digital channels",
    "early trials measure uptake before wider investment",
    "community groups co-design the offer to build trust",
    "revenue is reinvested to keep the service affordable",
    "training places support long term skills in the sector",
    "the scheme adapts quickly to demand across the year",
    "independent operators share costs through a joint platform",
    "outcomes are reviewed with stakeholders every quarter",
)


class MockTextGen:
    """Seeded stand-in for the generation service.

    Responses depend only on (seed, prompt), so identical runs produce
    identical texts.
    """

    def __init__(self, seed: int = 0, faults: FaultPlan | None = None) -> None:
        self.seed = seed
        self.faults = faults or FaultPlan()
        self.provider_id = f"mock-textgen-s{seed}"
        self.calls = 0

    def _rng(self, request: TextGenRequest) -> random.Random:
        key = self.seed.to_bytes(8, "little", signed=True)
        payload = request.prompt.encode("utf-8")
        if request.seed is not None:
            payload += request.seed.to_bytes(8, "little", signed=True)
        digest = hashlib.blake2b(payload, key=key, digest_size=8).digest()
        return random.Random(int.from_bytes(digest, "little"))

    def complete(self, request: TextGenRequest) -> str:
        self.calls += 1
        if self.faults.take("outages"):
            raise ServiceUnavailable("mock outage")
        prompt = request.prompt
        if "Generate a single paragraph of 100-words" in prompt:
            return self._describe(prompt, self._rng(request))
        if "Assess the relative novelty and usefulness" in prompt:
            return self._rate(prompt)
        if "recommend" in prompt:
            return self._opportunities(prompt, self._rng(request))
        raise ServiceUnavailable("mock cannot answer this prompt")

    # --- response builders -------------------------------------------

    def _terms_from(self, prompt: str) -> list[str]:
        m = _TERMS_TAIL.search(prompt)
        if m is None:
            m = _TERMS_DIRECT.search(prompt)
        if m is None:
            m = _TERMS_AREA.search(prompt)
        if m is not None:
            terms = [t.strip() for t in m.group(1).split(",") if t.strip()]
            if terms:
                return terms
        words = [w for w in re.findall(r"[a-z]{4,}", prompt.lower())]
        return sorted(set(words))[:10] or ["general"]

    def _describe(self, prompt: str, rng: random.Random) -> str:
        terms = self._terms_from(prompt)
        label_words = [t.split()[0].capitalize() for t in terms[:2]]
        label = " ".join(label_words + ["Area"])
        opener = "This area is"
        if self.faults.take("malformed_descriptions"):
            opener = "The area is"
        sentences = [
            f"{opener} about {', '.join(terms[:3])} and related work."
        ]
        while sum(len(s.split()) for s in sentences) < 95:
            t = rng.choice(terms)
            f = rng.choice(_FILLER)
            sentences.append(f"Around {t}, {f}.")
        return f"{label}\n{' '.join(sentences)}"

    def _opportunities(self, prompt: str, rng: random.Random) -> str:
        m = _BATCH_COUNT.search(prompt)
        count = int(m.group(1)) if m else 10
        if self.faults.take("short_batches"):
            count -= 1
        broken_index = rng.randrange(count) if self.faults.take("missing_colon_batches") else None
        terms = self._terms_from(prompt)
        lines = []
        for i in range(count):
            t1 = rng.choice(terms).split()[0]
            t2 = rng.choice(terms).split()[-1]
            title = f"{t1.capitalize()} {t2.capitalize()} Initiative {i + 1}"
            words: list[str] = []
            while len(words) < 102:
                words.extend(f"Building on {rng.choice(terms)}, {rng.choice(_FILLER)}.".split())
            description = " ".join(words)
            if broken_index == i:
                lines.append(f"{i + 1}. {title} {description}")
            else:
                lines.append(f"{i + 1}. {title}: {description}")
        return "\n".join(lines)

    def _rate(self, prompt: str) -> str:
        m = _ROW_COUNT.search(prompt)
        rows = int(m.group(1)) if m else 30
        if self.faults.take("rating_short_rows"):
            rows -= 1
        bad_row = 0 if self.faults.take("rating_out_of_range") else None
        listing = re.search(r"The opportunities are:\n(.*?)\n\nExamine", prompt, re.DOTALL)
        items = listing.group(1).splitlines() if listing else []
        out = ["| Novelty | Usefulness |", "| --- | --- |"]
        for i in range(rows):
            basis = items[i] if i < len(items) else f"row {i}"
            digest = hashlib.blake2b(
                basis.encode("utf-8"),
                key=self.seed.to_bytes(8, "little", signed=True),
                digest_size=8,
            ).digest()
            novelty = 1 + digest[0] % 7
            usefulness = 1 + digest[1] % 7
            if bad_row == i:
                novelty = 8
            out.append(f"| {novelty} | {usefulness} |")
        return "\n".join(out)
