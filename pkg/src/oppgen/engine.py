"""Pipeline orchestration over a project store.

The engine owns every stage: asset upload, extraction/cleaning/chunking,
embedding, space discovery, space description, opportunity generation
(direct and pivot), the 270-opportunity baseline protocol, rating, and
set comparison. The CLI and the HTTP service are both thin layers over
this class.
"""

from __future__ import annotations

import hashlib
from datetime import datetime, timezone
from typing import Callable, Optional, Sequence

import numpy as np

from .config import EngineConfig, Providers, build_providers
from .discovery import discover_spaces, semantic_distance_to_space
from .embedding import Embedder
from .errors import (
    EmptyAsset,
    EmptySet,
    IncompleteGeneration,
    InvalidParams,
    StageNotReady,
    TooLarge,
    UnknownOpportunity,
)
from .evaluation import (
    RATING_BATCH_LIMIT,
    ComparisonReport,
    RatingPair,
    compare_rating_sets,
    compare_three_groups,
    parse_ratings,
    render_rating_prompt,
)
from .generation import (
    GenerationRequest,
    Opportunity,
    parse_opportunities,
    parse_space_description,
    render_direct_prompt,
    render_pivot_prompt,
    render_space_description_prompt,
)
from .ingestion import (
    InformationAsset,
    TextChunk,
    chunk_text,
    clean_text,
    count_pages,
    detect_language,
    extract_text_from_bytes,
    sniff_media_kind,
    translate,
)
from .store import ProjectStore

ProgressFn = Callable[[int], None]


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def deterministic_clock(seed: int = 0) -> Callable[[], str]:
    """A counting clock for byte-reproducible runs (seeded CLI mode, tests)."""
    state = {"tick": 0}

    def clock() -> str:
        tick = state["tick"]
        state["tick"] += 1
        return f"2000-01-01T00:00:00.{seed % 1000:03d}{tick:06d}+00:00"

    return clock


def _noop_progress(_: int) -> None:
    pass


class ProjectEngine:
    def __init__(
        self,
        store: ProjectStore,
        clock: Callable[[], str] = _utc_now,
        providers_factory: Callable[[EngineConfig], Providers] = build_providers,
    ) -> None:
        self.store = store
        self.clock = clock
        self._providers_factory = providers_factory
        self._providers_cache: dict[str, Providers] = {}

    # --- providers --------------------------------------------------------

    def providers(self, project_id: str) -> Providers:
        if project_id not in self._providers_cache:
            config = self.store.project_config(project_id)
            self._providers_cache[project_id] = self._providers_factory(config)
        return self._providers_cache[project_id]

    def _audit(self, project_id: str, purpose: str, request, response: str, retry: int) -> None:
        self.store.append_audit(
            project_id,
            {
                "purpose": purpose,
                "prompt": request.prompt,
                "settings": {
                    "temperature": request.temperature,
                    "top_p": request.top_p,
                    "frequency_penalty": request.frequency_penalty,
                    "presence_penalty": request.presence_penalty,
                },
                "response": response,
                "response_sha256": hashlib.sha256(response.encode("utf-8")).hexdigest(),
                "retry": retry,
                "timestamp": self.clock(),
            },
        )

    # --- projects and assets ------------------------------------------------

    def create_project(self, name: str, config: EngineConfig | None = None) -> dict:
        return self.store.create_project(name, config or EngineConfig(), self.clock())

    def upload_asset(
        self, project_id: str, filename: str, data: bytes, language: Optional[str] = None
    ) -> dict:
        config = self.store.project_config(project_id)
        if len(data) == 0:
            raise EmptyAsset(f"uploaded file {filename!r} is empty")
        if len(data) > config.asset_size_limit:
            raise TooLarge(
                f"{filename!r} is {len(data)} bytes; limit {config.asset_size_limit}"
            )
        media_kind = sniff_media_kind(data, filename)
        digest = hashlib.sha256(data).hexdigest()[:12]
        asset = InformationAsset(
            asset_id=f"asset-{digest}",
            title=filename,
            source_path=f"assets/raw/asset-{digest}",
            media_kind=media_kind,
            byte_size=len(data),
            page_count=count_pages(data, media_kind),
        ).to_dict()
        asset["uploaded_at"] = self.clock()
        if language:
            asset["language"] = language
        with self.store.write_lock(project_id):
            self.store.save_asset(project_id, asset, data)
        return asset

    # --- step 1: process assets ------------------------------------------------

    def process_assets(self, project_id: str, progress: ProgressFn = _noop_progress) -> dict:
        providers = self.providers(project_id)
        assets = self.store.list_assets(project_id)
        if not assets:
            raise StageNotReady("no assets uploaded")
        counts: dict[str, int] = {}
        with self.store.write_lock(project_id):
            self.store.lock_config(project_id)
            for i, asset in enumerate(assets):
                raw = self.store.asset_bytes(project_id, asset["asset_id"])
                text = extract_text_from_bytes(raw, asset["media_kind"], asset["title"])
                cleaned = clean_text(text)
                language = detect_language(cleaned, declared=asset.get("language"))
                english = translate(cleaned, language, providers.translator)
                if language != "en":
                    english = clean_text(english)
                chunks = chunk_text(english, asset["asset_id"], original_language=language)
                texts = [c.text for c in chunks]
                vectors = providers.embedder.embed(texts) if texts else np.zeros((0, 1))
                payload = {
                    "asset_id": asset["asset_id"],
                    "language": language,
                    "chunks": [
                        {**c.to_dict(), "embedding": [float(x) for x in vectors[j]]}
                        for j, c in enumerate(chunks)
                    ],
                }
                self.store.save_chunks(project_id, asset["asset_id"], payload)
                counts[asset["asset_id"]] = len(chunks)
                progress(int((i + 1) * 100 / len(assets)))
        return {"assets": len(assets), "chunks": counts, "total_chunks": sum(counts.values())}

    def _load_embedded_chunks(self, project_id: str) -> tuple[list[TextChunk], np.ndarray]:
        records = self.store.load_all_chunks(project_id)
        if not records:
            raise StageNotReady("assets have not been processed into chunks yet")
        chunks = [TextChunk.from_dict(r) for r in records]
        matrix = np.asarray([r["embedding"] for r in records], dtype=np.float32)
        return chunks, matrix

    # --- step 2: discover spaces --------------------------------------------------

    def discover(self, project_id: str, progress: ProgressFn = _noop_progress) -> dict:
        config = self.store.project_config(project_id)
        providers = self.providers(project_id)
        chunks, matrix = self._load_embedded_chunks(project_id)
        sets = discover_spaces(chunks, matrix, providers.embedder, config.discovery_params())
        summary = {}
        with self.store.write_lock(project_id):
            for i, (granularity, gset) in enumerate(sets.items()):
                self.store.save_granularity_set(project_id, gset)
                summary[granularity] = {
                    "spaces": len(gset.spaces),
                    "unreachable": gset.unreachable,
                }
                progress(int((i + 1) * 100 / 3))
        return summary

    # --- step 3: describe spaces ----------------------------------------------------

    def describe_spaces(
        self,
        project_id: str,
        granularity: Optional[str] = None,
        progress: ProgressFn = _noop_progress,
    ) -> dict:
        providers = self.providers(project_id)
        granularities = [granularity] if granularity else ["broad", "typical", "narrow"]
        described = 0
        with self.store.write_lock(project_id):
            for g_index, g in enumerate(granularities):
                gset = self.store.load_granularity_set(project_id, g)
                if gset.unreachable:
                    continue
                changed = False
                spaces = []
                for space in gset.spaces:
                    if space.description:
                        spaces.append(space)
                        continue
                    request = render_space_description_prompt(space.topic_terms)
                    response = providers.textgen.complete(request)
                    self._audit(project_id, f"describe:{space.space_id}", request, response, 0)
                    parsed = parse_space_description(response)
                    spaces.append(
                        space.with_description(
                            parsed["label"], parsed["description"], tuple(parsed["flags"])
                        )
                    )
                    described += 1
                    changed = True
                if changed:
                    gset.spaces = spaces
                    self.store.save_granularity_set(project_id, gset)
                progress(int((g_index + 1) * 100 / len(granularities)))
        return {"described": described}

    # --- step 4: generate opportunities -----------------------------------------------

    def _complete_batch(
        self,
        project_id: str,
        purpose: str,
        request,
        gen_request: GenerationRequest,
        parent: Optional[Opportunity],
        batch_key: str,
    ) -> tuple[list[Opportunity], int]:
        providers = self.providers(project_id)
        retry_count = 0
        while True:
            response = providers.textgen.complete(request)
            self._audit(project_id, purpose, request, response, retry_count)
            try:
                records = parse_opportunities(
                    response, gen_request, parent=parent, batch_key=batch_key
                )
                return records, retry_count
            except IncompleteGeneration:
                if retry_count >= 1:
                    raise
                retry_count += 1

    def _annotate_distances(
        self, records: list[Opportunity], space, embedder: Embedder
    ) -> list[Opportunity]:
        return [
            o.with_distance(semantic_distance_to_space(o.text, space, embedder))
            for o in records
        ]

    def _next_batch_key(self, project_id: str, prompt: str) -> str:
        seq = self.store.batch_count(project_id)
        digest = hashlib.blake2b(prompt.encode("utf-8"), digest_size=4).hexdigest()
        return f"b{seq:04d}-{digest}"

    def _persist_batch(
        self,
        project_id: str,
        records: list[Opportunity],
        gen_request: GenerationRequest,
        retry_count: int,
        parent_id: Optional[str],
        prompt: str,
    ) -> dict:
        batch = {
            "batch_id": records[0].batch_id,
            "request": gen_request.to_dict(),
            "parent_opportunity_id": parent_id,
            "retry_count": retry_count,
            "prompt_sha256": hashlib.sha256(prompt.encode("utf-8")).hexdigest(),
            "created_at": self.clock(),
            "opportunities": [o.to_dict() for o in records],
        }
        self.store.save_opportunity_batch(project_id, batch)
        return batch

    def generate(self, project_id: str, gen_request: GenerationRequest) -> dict:
        providers = self.providers(project_id)
        if len(gen_request.space_ids) != 1:
            raise InvalidParams("direct generation takes exactly one space id")
        space = self.store.find_space(project_id, gen_request.space_ids[0])
        request = render_direct_prompt(gen_request, space)
        with self.store.write_lock(project_id):
            batch_key = self._next_batch_key(project_id, request.prompt)
            records, retry_count = self._complete_batch(
                project_id, f"generate:{space.space_id}", request, gen_request, None, batch_key
            )
            records = self._annotate_distances(records, space, providers.embedder)
            return self._persist_batch(
                project_id, records, gen_request, retry_count, None, request.prompt
            )

    def pivot(
        self, project_id: str, parent_opportunity_id: str, gen_request: GenerationRequest
    ) -> dict:
        providers = self.providers(project_id)
        parent = self.store.get_opportunity(project_id, parent_opportunity_id)
        if parent is None:
            raise UnknownOpportunity(f"no opportunity {parent_opportunity_id!r}")
        if len(gen_request.space_ids) == 1:
            space_ids = (gen_request.space_ids[0], gen_request.space_ids[0])
            gen_request = GenerationRequest(
                kind=gen_request.kind,
                space_ids=space_ids,
                novelty_level=gen_request.novelty_level,
                qualities=gen_request.qualities,
                custom_text=gen_request.custom_text,
            )
        elif len(gen_request.space_ids) != 2:
            raise InvalidParams("pivot generation takes one or two space ids")
        space_a = self.store.find_space(project_id, gen_request.space_ids[0])
        space_b = self.store.find_space(project_id, gen_request.space_ids[1])
        request = render_pivot_prompt(parent, space_a, space_b, gen_request)
        with self.store.write_lock(project_id):
            batch_key = self._next_batch_key(project_id, request.prompt)
            records, retry_count = self._complete_batch(
                project_id,
                f"pivot:{parent.opportunity_id}",
                request,
                gen_request,
                parent,
                batch_key,
            )
            records = self._annotate_distances(records, space_a, providers.embedder)
            return self._persist_batch(
                project_id, records, gen_request, retry_count,
                parent.opportunity_id, request.prompt,
            )

    # --- the baseline protocol ----------------------------------------------------------

    def run_baseline_protocol(
        self,
        project_id: str,
        space_ids: Sequence[str],
        custom_text: str,
        progress: ProgressFn = _noop_progress,
    ) -> dict:
        """Per space and kind: 10 direct, 10 first-pivot, 10 second-pivot.

        Highly unusual novelty, no creative qualities, single-space pivots.
        A failed run aborts that (space, kind) cell; the manifest records
        which of the nine runs completed.
        """
        if len(space_ids) != 3:
            raise InvalidParams(f"baseline protocol needs exactly 3 spaces, got {len(space_ids)}")
        kinds = ("policy", "business", "technical_design")
        runs = []
        total_cells = 9
        done = 0
        for space_id in space_ids:
            for kind in kinds:
                run: dict = {"space_id": space_id, "kind": kind, "batch_ids": []}
                try:
                    gen_request = GenerationRequest(
                        kind=kind,
                        space_ids=(space_id,),
                        novelty_level="highly_unusual",
                        qualities=(),
                        custom_text=custom_text,
                    )
                    direct = self.generate(project_id, gen_request)
                    run["batch_ids"].append(direct["batch_id"])
                    first_direct = direct["opportunities"][0]["opportunity_id"]
                    pivot1 = self.pivot(project_id, first_direct, gen_request)
                    run["batch_ids"].append(pivot1["batch_id"])
                    first_pivoted = pivot1["opportunities"][0]["opportunity_id"]
                    pivot2 = self.pivot(project_id, first_pivoted, gen_request)
                    run["batch_ids"].append(pivot2["batch_id"])
                    run["status"] = "succeeded"
                except Exception as exc:  # protocol-level containment per run
                    run["status"] = "failed"
                    run["error"] = getattr(exc, "message", str(exc))
                runs.append(run)
                done += 1
                progress(int(done * 100 / total_cells))
        manifest = {
            "baseline_id": f"baseline-{len(self.store.list_baselines(project_id)):03d}",
            "space_ids": list(space_ids),
            "custom_text": custom_text,
            "novelty_level": "highly_unusual",
            "created_at": self.clock(),
            "runs": runs,
            "completed_runs": sum(1 for r in runs if r["status"] == "succeeded"),
            "opportunity_count": 30 * sum(1 for r in runs if r["status"] == "succeeded"),
        }
        with self.store.write_lock(project_id):
            self.store.save_baseline_manifest(project_id, manifest)
        return manifest

    # --- rating and comparison ------------------------------------------------------------

    def rate(
        self,
        project_id: str,
        opportunity_ids: Sequence[str],
        challenge: str,
        kind: str,
        rater_tag: str = "",
    ) -> dict:
        providers = self.providers(project_id)
        opportunities = []
        for oid in opportunity_ids:
            opp = self.store.get_opportunity(project_id, oid)
            if opp is None:
                raise UnknownOpportunity(f"no opportunity {oid!r}")
            opportunities.append(opp)
        if not opportunities:
            raise EmptySet("no opportunities selected for rating")
        tag = rater_tag or f"{providers.textgen.provider_id}@{self.clock()[:10]}"
        ratings: list[RatingPair] = []
        with self.store.write_lock(project_id):
            for start in range(0, len(opportunities), RATING_BATCH_LIMIT):
                batch = opportunities[start : start + RATING_BATCH_LIMIT]
                request = render_rating_prompt(challenge, batch, kind)
                response = providers.textgen.complete(request)
                self._audit(project_id, f"rate:{kind}:{start}", request, response, 0)
                pairs = parse_ratings(response, expected_n=len(batch))
                stamp = self.clock()
                for opp, (novelty, usefulness) in zip(batch, pairs):
                    ratings.append(
                        RatingPair(
                            opportunity_id=opp.opportunity_id,
                            novelty=novelty,
                            usefulness=usefulness,
                            rater_tag=tag,
                            rated_at=stamp,
                        )
                    )
            record = {
                "rating_id": f"r{self.store.rating_batch_count(project_id):04d}",
                "kind": kind,
                "challenge": challenge,
                "rater_tag": tag,
                "created_at": self.clock(),
                "ratings": [r.to_dict() for r in ratings],
            }
            self.store.save_rating_batch(project_id, record)
        return record

    def _ratings_for(self, project_id: str, opportunity_ids: Sequence[str]) -> list[RatingPair]:
        by_opportunity = self.store.ratings_by_opportunity(project_id)
        missing = [oid for oid in opportunity_ids if oid not in by_opportunity]
        if missing:
            raise StageNotReady(
                f"{len(missing)} selected opportunities have no ratings yet",
                missing=missing[:5],
            )
        return [by_opportunity[oid] for oid in opportunity_ids]

    def compare_sets(
        self,
        project_id: str,
        set_a_ids: Sequence[str],
        set_b_ids: Sequence[str],
    ) -> list[ComparisonReport]:
        if not set_a_ids or not set_b_ids:
            raise EmptySet("both comparison sets must be non-empty")
        a = self._ratings_for(project_id, set_a_ids)
        b = self._ratings_for(project_id, set_b_ids)
        return compare_rating_sets(
            [r.novelty for r in a],
            [r.usefulness for r in a],
            [r.novelty for r in b],
            [r.usefulness for r in b],
        )

    def compare_groups(
        self, project_id: str, group_ids: Sequence[Sequence[str]]
    ) -> list[ComparisonReport]:
        groups = [self._ratings_for(project_id, ids) for ids in group_ids]
        return [
            compare_three_groups([[r.novelty for r in g] for g in groups], "novelty"),
            compare_three_groups([[r.usefulness for r in g] for g in groups], "usefulness"),
        ]

    # --- export -------------------------------------------------------------------------

    def export(self, project_id: str) -> bytes:
        return self.store.export_archive(project_id)

    def import_archive(self, data: bytes, project_id: Optional[str] = None) -> str:
        return self.store.import_archive(data, project_id)
