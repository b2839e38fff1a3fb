from __future__ import annotations

from collections import Counter

import pytest

from oppgen.config import EngineConfig, build_providers
from oppgen.engine import ProjectEngine
from oppgen.errors import (
    DuplicateName,
    EmptyAsset,
    InvalidConfig,
    InvalidParams,
    ServiceUnavailable,
    StageNotReady,
    UnknownOpportunity,
    UnknownProject,
)
from oppgen.generation import FaultPlan, GenerationRequest, MockTextGen
from oppgen.store import ProjectStore

from conftest import fixed_clock
from corpus_builders import plain_text_fixture_files
from fixture_builders import build_pdf

BASELINE_TEXT = (
    "Develop an innovative opportunity that support seaside towns to regenerate "
    "by attracting new investment linked to new areas of growth"
)


def engine_with_faults(store: ProjectStore, faults: FaultPlan) -> ProjectEngine:
    def factory(config: EngineConfig):
        providers = build_providers(config)
        providers.textgen = MockTextGen(seed=config.seed, faults=faults)
        return providers

    return ProjectEngine(store, clock=fixed_clock(), providers_factory=factory)


# --- projects and assets -----------------------------------------------------------

def test_create_project_and_duplicate(engine):
    record = engine.create_project("hospitality", EngineConfig())
    assert record["project_id"] == "hospitality"
    with pytest.raises(DuplicateName):
        engine.create_project("hospitality", EngineConfig())


def test_create_project_unknown_provider_rejected(engine):
    with pytest.raises(InvalidConfig):
        engine.create_project("p", EngineConfig(textgen_provider="carrier-pigeon"))


def test_upload_pdf_reports_page_count(engine):
    engine.create_project("p", EngineConfig())
    data = build_pdf([["page one text"], ["page two text"], ["page three"]])
    asset = engine.upload_asset("p", "report.pdf", data)
    assert asset["media_kind"] == "pdf"
    assert asset["page_count"] == 3


def test_upload_unknown_project(engine):
    with pytest.raises(UnknownProject):
        engine.upload_asset("ghost", "f.txt", b"text")


def test_upload_empty_file(engine):
    engine.create_project("p", EngineConfig())
    with pytest.raises(EmptyAsset):
        engine.upload_asset("p", "empty.txt", b"")


def test_process_assets_locks_config_and_counts(engine, tmp_path):
    engine.create_project("p", EngineConfig(embedding_dimension=64))
    for path in plain_text_fixture_files(tmp_path, 2):
        engine.upload_asset("p", path.name, path.read_bytes())
    summary = engine.process_assets("p")
    assert summary["total_chunks"] > 0
    assert engine.store.get_project("p")["config_locked"] is True
    chunks = engine.store.load_all_chunks("p")
    assert all(len(c["embedding"]) == 64 for c in chunks)


def test_discover_before_processing(engine):
    engine.create_project("p", EngineConfig())
    with pytest.raises(StageNotReady):
        engine.discover("p")


def test_spaces_listing_before_discovery(engine):
    engine.create_project("p", EngineConfig())
    with pytest.raises(StageNotReady):
        engine.store.load_granularity_set("p", "broad")


# --- description stage ---------------------------------------------------------------

def test_describe_fills_labels_and_descriptions(ready_project, engine):
    gset = engine.store.load_granularity_set(ready_project, "broad")
    assert len(gset.spaces) >= 4
    for space in gset.spaces:
        assert space.label
        assert space.description.startswith("This area is")
    assert engine.store.audit_count(ready_project) > 0


def test_describe_is_idempotent(ready_project, engine):
    first = engine.store.audit_count(ready_project)
    summary = engine.describe_spaces(ready_project)
    assert summary["described"] == 0
    assert engine.store.audit_count(ready_project) == first


# --- direct generation ------------------------------------------------------------------

def _first_space(engine, project_id, granularity="broad"):
    return engine.store.load_granularity_set(project_id, granularity).spaces[0]


def test_generate_direct_batch(ready_project, engine):
    space = _first_space(engine, ready_project)
    request = GenerationRequest(
        kind="business",
        space_ids=(space.space_id,),
        novelty_level="highly_unusual",
        custom_text=BASELINE_TEXT,
    )
    batch = engine.generate(ready_project, request)
    assert len(batch["opportunities"]) == 10
    assert batch["retry_count"] == 0
    for record in batch["opportunities"]:
        assert record["pivot_depth"] == 0
        assert record["provenance"] == "direct"
        assert 0.0 <= record["centroid_distance"] <= 2.0
    listed = engine.store.list_opportunities(ready_project, kind="business")
    assert len(listed) == 10


def test_generate_retry_on_incomplete(tmp_path, store):
    faults = FaultPlan(short_batches=1)
    engine = engine_with_faults(store, faults)
    engine.create_project("p", EngineConfig(embedding_dimension=64))
    for path in plain_text_fixture_files(tmp_path, 3):
        engine.upload_asset("p", path.name, path.read_bytes())
    engine.process_assets("p")
    engine.discover("p")
    engine.describe_spaces("p", "broad")
    space = _first_space(engine, "p")
    request = GenerationRequest(
        kind="business", space_ids=(space.space_id,), novelty_level="balanced"
    )
    batch = engine.generate("p", request)
    assert batch["retry_count"] == 1
    assert len(batch["opportunities"]) == 10


def test_generate_service_down_persists_nothing(tmp_path, store):
    engine = engine_with_faults(store, FaultPlan(outages=10))
    engine.create_project("p", EngineConfig(embedding_dimension=64))
    for path in plain_text_fixture_files(tmp_path, 3):
        engine.upload_asset("p", path.name, path.read_bytes())
    engine.process_assets("p")
    engine.discover("p")
    with pytest.raises(ServiceUnavailable):
        engine.describe_spaces("p", "broad")
    # nothing generated, nothing half-written
    assert engine.store.batch_count("p") == 0


def test_generate_four_qualities_rejected():
    with pytest.raises(InvalidParams):
        GenerationRequest(
            kind="business",
            space_ids=("s",),
            novelty_level="balanced",
            qualities=("greener", "healthier", "younger", "inspirational"),
        )


# --- pivots ---------------------------------------------------------------------------------

def test_pivot_chain_depths(ready_project, engine):
    space = _first_space(engine, ready_project)
    request = GenerationRequest(
        kind="policy", space_ids=(space.space_id,), novelty_level="highly_unusual"
    )
    direct = engine.generate(ready_project, request)
    parent_id = direct["opportunities"][0]["opportunity_id"]
    pivot1 = engine.pivot(ready_project, parent_id, request)
    assert all(o["pivot_depth"] == 1 for o in pivot1["opportunities"])
    assert all(
        o["parent_opportunity_id"] == parent_id for o in pivot1["opportunities"]
    )
    assert all(len(o["source_space_ids"]) == 2 for o in pivot1["opportunities"])
    second_parent = pivot1["opportunities"][0]["opportunity_id"]
    pivot2 = engine.pivot(ready_project, second_parent, request)
    assert all(o["pivot_depth"] == 2 for o in pivot2["opportunities"])


def test_pivot_two_distinct_spaces(ready_project, engine):
    spaces = engine.store.load_granularity_set(ready_project, "broad").spaces
    request = GenerationRequest(
        kind="business", space_ids=(spaces[0].space_id,), novelty_level="balanced"
    )
    direct = engine.generate(ready_project, request)
    parent_id = direct["opportunities"][0]["opportunity_id"]
    cross = GenerationRequest(
        kind="business",
        space_ids=(spaces[0].space_id, spaces[1].space_id),
        novelty_level="balanced",
    )
    batch = engine.pivot(ready_project, parent_id, cross)
    assert batch["opportunities"][0]["source_space_ids"] == [
        spaces[0].space_id,
        spaces[1].space_id,
    ]


def test_pivot_unknown_parent(ready_project, engine):
    space = _first_space(engine, ready_project)
    request = GenerationRequest(
        kind="policy", space_ids=(space.space_id,), novelty_level="balanced"
    )
    with pytest.raises(UnknownOpportunity):
        engine.pivot(ready_project, "opp-none", request)


# --- baseline protocol -------------------------------------------------------------------------

def test_baseline_protocol_structure(ready_project, engine):
    spaces = engine.store.load_granularity_set(ready_project, "broad").spaces[:3]
    manifest = engine.run_baseline_protocol(
        ready_project, [s.space_id for s in spaces], BASELINE_TEXT
    )
    assert manifest["completed_runs"] == 9
    opportunities = engine.store.list_opportunities(ready_project)
    assert len(opportunities) == 270
    by_kind = Counter(o.kind for o in opportunities)
    assert by_kind == {"policy": 90, "business": 90, "technical_design": 90}
    by_depth = Counter(o.pivot_depth for o in opportunities)
    assert by_depth == {0: 90, 1: 90, 2: 90}
    by_space = Counter(o.source_space_ids[0] for o in opportunities)
    assert sorted(by_space.values()) == [90, 90, 90]
    assert all(o.novelty_level == "highly_unusual" for o in opportunities)
    assert all(o.qualities == () for o in opportunities)


def test_baseline_requires_three_spaces(ready_project, engine):
    with pytest.raises(InvalidParams):
        engine.run_baseline_protocol(ready_project, ["a"], BASELINE_TEXT)


def test_baseline_reports_failed_runs(tmp_path, store):
    # arm one outage after the describe stage: the first baseline run
    # aborts, the other eight complete
    faults = FaultPlan()
    engine = engine_with_faults(store, faults)
    engine.create_project("p", EngineConfig(embedding_dimension=64))
    for path in plain_text_fixture_files(tmp_path, 3):
        engine.upload_asset("p", path.name, path.read_bytes())
    engine.process_assets("p")
    engine.discover("p")
    engine.describe_spaces("p")
    spaces = [s.space_id for s in store.load_granularity_set("p", "broad").spaces[:3]]
    faults.outages = 1
    manifest = engine.run_baseline_protocol("p", spaces, BASELINE_TEXT)
    assert manifest["completed_runs"] == 8
    statuses = [r["status"] for r in manifest["runs"]]
    assert statuses.count("failed") == 1
    assert statuses[0] == "failed"


def _full_pipeline_digest(tmp_path, label: str) -> str:
    store = ProjectStore(tmp_path / f"store-{label}")
    engine = ProjectEngine(store, clock=fixed_clock())
    engine.create_project("repro", EngineConfig(seed=11, embedding_dimension=64))
    for path in plain_text_fixture_files(tmp_path / f"files-{label}", 3):
        engine.upload_asset("repro", path.name, path.read_bytes())
    engine.process_assets("repro")
    engine.discover("repro")
    engine.describe_spaces("repro")
    spaces = [s.space_id for s in store.load_granularity_set("repro", "broad").spaces[:3]]
    engine.run_baseline_protocol("repro", spaces, BASELINE_TEXT)
    return store.project_digest("repro")


def test_baseline_reproducible_under_fixed_seed(tmp_path):
    assert _full_pipeline_digest(tmp_path, "a") == _full_pipeline_digest(tmp_path, "b")


# --- rating and comparison -----------------------------------------------------------------------

def test_rate_and_compare_sets(ready_project, engine):
    space = _first_space(engine, ready_project)
    request = GenerationRequest(
        kind="business", space_ids=(space.space_id,), novelty_level="very_prototypical"
    )
    direct = engine.generate(ready_project, request)
    ids = [o["opportunity_id"] for o in direct["opportunities"]]
    record = engine.rate(ready_project, ids, "challenge text", "business")
    assert len(record["ratings"]) == 10
    assert record["rater_tag"].startswith("mock-textgen")
    reports = engine.compare_sets(ready_project, ids, ids)
    assert all(r.z == 0.0 for r in reports)
    assert {r.metric for r in reports} == {"novelty", "usefulness"}


def test_rate_splits_large_batches(ready_project, engine):
    spaces = engine.store.load_granularity_set(ready_project, "broad").spaces[:3]
    manifest = engine.run_baseline_protocol(
        ready_project, [s.space_id for s in spaces], BASELINE_TEXT
    )
    assert manifest["completed_runs"] == 9
    ids = [o.opportunity_id for o in engine.store.list_opportunities(ready_project, kind="policy")]
    assert len(ids) == 90
    audit_before = engine.store.audit_count(ready_project)
    record = engine.rate(ready_project, ids, "challenge", "policy")
    assert len(record["ratings"]) == 90
    # 90 opportunities rate in three batches of 30
    assert engine.store.audit_count(ready_project) - audit_before == 3


def test_compare_groups_kruskal(ready_project, engine):
    space = _first_space(engine, ready_project)
    groups = []
    for novelty in ("very_prototypical", "balanced", "highly_unusual"):
        request = GenerationRequest(
            kind="business", space_ids=(space.space_id,), novelty_level=novelty
        )
        batch = engine.generate(ready_project, request)
        ids = [o["opportunity_id"] for o in batch["opportunities"]]
        engine.rate(ready_project, ids, "challenge", "business")
        groups.append(ids)
    reports = engine.compare_groups(ready_project, groups)
    assert all(r.df == 2 for r in reports)
    assert all(0.0 <= r.p_value <= 1.0 for r in reports)


def test_compare_unrated_set_not_ready(ready_project, engine):
    space = _first_space(engine, ready_project)
    request = GenerationRequest(
        kind="business", space_ids=(space.space_id,), novelty_level="balanced"
    )
    batch = engine.generate(ready_project, request)
    ids = [o["opportunity_id"] for o in batch["opportunities"]]
    with pytest.raises(StageNotReady):
        engine.compare_sets(ready_project, ids, ids)


# --- export / import ----------------------------------------------------------------------------

def test_export_import_round_trip(ready_project, engine, tmp_path):
    space = _first_space(engine, ready_project)
    request = GenerationRequest(
        kind="business", space_ids=(space.space_id,), novelty_level="unusual"
    )
    batch = engine.generate(ready_project, request)
    ids = [o["opportunity_id"] for o in batch["opportunities"]]
    engine.rate(ready_project, ids, "challenge", "business")
    original_digest = engine.store.project_digest(ready_project)
    archive = engine.export(ready_project)

    other_store = ProjectStore(tmp_path / "other-store")
    other = ProjectEngine(other_store)
    imported_id = other.import_archive(archive)
    assert imported_id == ready_project
    assert other_store.project_digest(imported_id) == original_digest
    # export of the import is byte-identical
    assert other.export(imported_id) == archive


def test_import_into_existing_id_rejected(ready_project, engine):
    archive = engine.export(ready_project)
    with pytest.raises(DuplicateName):
        engine.import_archive(archive)
