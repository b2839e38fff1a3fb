"""File-based project persistence.

One directory per project holding versioned JSON documents:

    <root>/<project_id>/
        project.json
        assets/<asset_id>.json          metadata
        assets/raw/<asset_id>           original bytes
        chunks/<asset_id>.json          cleaned chunks + embeddings
        spaces/<granularity>.json       discovered granularity sets
        opportunities/<batch_id>.json   atomic 10-opportunity batches
        ratings/<rating_id>.json
        baselines/<baseline_id>.json    protocol run manifests
        audit/<seq>.json                every external service call

Writes go through a temp-file rename, so a killed process never leaves a
partial batch. A per-project file lock serializes writers; reads need no
lock. Export produces a timestamp-stable zip that import reproduces
byte-identically.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import re
import threading
import zipfile
from pathlib import Path
from typing import Iterator, Optional

from filelock import FileLock

from .config import EngineConfig
from .discovery import GranularitySet
from .errors import DuplicateName, InvalidParams, StageNotReady, UnknownProject
from .generation import Opportunity
from .evaluation import RatingPair

_GRANULARITIES = ("broad", "typical", "narrow")
_SLUG_RE = re.compile(r"[^a-z0-9]+")


def slugify(name: str) -> str:
    slug = _SLUG_RE.sub("-", name.lower()).strip("-")
    if not slug:
        raise InvalidParams(f"cannot derive a project id from name {name!r}")
    return slug


def _write_json_atomic(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload, indent=2, sort_keys=True), encoding="utf-8")
    os.replace(tmp, path)


def _read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


class _ProjectLock:
    """Single writer per project: in-process RLock plus a file lock.

    The RLock serializes worker threads inside one process; the file lock
    covers separate processes sharing a store. Both are reentrant for the
    owning thread, so engine operations may nest safely.
    """

    def __init__(self, path: Path) -> None:
        self._thread_lock = threading.RLock()
        self._file_lock = FileLock(str(path))

    def __enter__(self) -> "_ProjectLock":
        self._thread_lock.acquire()
        self._file_lock.acquire()
        return self

    def __exit__(self, *exc) -> None:
        self._file_lock.release()
        self._thread_lock.release()


class ProjectStore:
    def __init__(self, root: str | Path) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, _ProjectLock] = {}
        self._locks_guard = threading.Lock()

    # --- paths -----------------------------------------------------------

    def project_dir(self, project_id: str) -> Path:
        return self.root / project_id

    def _require(self, project_id: str) -> Path:
        d = self.project_dir(project_id)
        if not (d / "project.json").exists():
            raise UnknownProject(f"no project {project_id!r}")
        return d

    def write_lock(self, project_id: str) -> _ProjectLock:
        with self._locks_guard:
            if project_id not in self._locks:
                d = self.project_dir(project_id)
                d.mkdir(parents=True, exist_ok=True)
                self._locks[project_id] = _ProjectLock(d / ".writer.lock")
            return self._locks[project_id]

    # --- project lifecycle --------------------------------------------------

    def create_project(self, name: str, config: EngineConfig, created_at: str) -> dict:
        project_id = slugify(name)
        d = self.project_dir(project_id)
        if (d / "project.json").exists():
            raise DuplicateName(f"project named {name!r} already exists")
        record = {
            "project_id": project_id,
            "name": name,
            "created_at": created_at,
            "config": config.validate().to_dict(),
            "config_locked": False,
        }
        _write_json_atomic(d / "project.json", record)
        return record

    def get_project(self, project_id: str) -> dict:
        return _read_json(self._require(project_id) / "project.json")

    def list_projects(self) -> list[dict]:
        out = []
        for child in sorted(self.root.iterdir()):
            if (child / "project.json").exists():
                out.append(_read_json(child / "project.json"))
        return out

    def project_config(self, project_id: str) -> EngineConfig:
        return EngineConfig.from_dict(self.get_project(project_id)["config"])

    def lock_config(self, project_id: str) -> None:
        d = self._require(project_id)
        record = _read_json(d / "project.json")
        if not record["config_locked"]:
            record["config_locked"] = True
            _write_json_atomic(d / "project.json", record)

    # --- assets ---------------------------------------------------------------

    def save_asset(self, project_id: str, asset: dict, raw: bytes) -> None:
        d = self._require(project_id)
        raw_path = d / "assets" / "raw" / asset["asset_id"]
        raw_path.parent.mkdir(parents=True, exist_ok=True)
        raw_path.write_bytes(raw)
        _write_json_atomic(d / "assets" / f"{asset['asset_id']}.json", asset)

    def list_assets(self, project_id: str) -> list[dict]:
        d = self._require(project_id)
        folder = d / "assets"
        if not folder.exists():
            return []
        return [_read_json(p) for p in sorted(folder.glob("*.json"))]

    def asset_bytes(self, project_id: str, asset_id: str) -> bytes:
        return (self._require(project_id) / "assets" / "raw" / asset_id).read_bytes()

    # --- chunks -----------------------------------------------------------------

    def save_chunks(self, project_id: str, asset_id: str, payload: dict) -> None:
        d = self._require(project_id)
        _write_json_atomic(d / "chunks" / f"{asset_id}.json", payload)

    def load_all_chunks(self, project_id: str) -> list[dict]:
        d = self._require(project_id)
        folder = d / "chunks"
        if not folder.exists():
            return []
        chunks: list[dict] = []
        for path in sorted(folder.glob("*.json")):
            chunks.extend(_read_json(path)["chunks"])
        return chunks

    # --- spaces ------------------------------------------------------------------

    def save_granularity_set(self, project_id: str, granularity_set: GranularitySet) -> None:
        d = self._require(project_id)
        _write_json_atomic(
            d / "spaces" / f"{granularity_set.granularity}.json", granularity_set.to_dict()
        )

    def load_granularity_set(self, project_id: str, granularity: str) -> GranularitySet:
        if granularity not in _GRANULARITIES:
            raise InvalidParams(f"unknown granularity {granularity!r}")
        d = self._require(project_id)
        path = d / "spaces" / f"{granularity}.json"
        if not path.exists():
            raise StageNotReady("space discovery has not run yet")
        return GranularitySet.from_dict(_read_json(path))

    def has_spaces(self, project_id: str) -> bool:
        return (self._require(project_id) / "spaces").exists()

    def find_space(self, project_id: str, space_id: str):
        for granularity in _GRANULARITIES:
            path = self._require(project_id) / "spaces" / f"{granularity}.json"
            if not path.exists():
                continue
            gset = GranularitySet.from_dict(_read_json(path))
            for space in gset.spaces:
                if space.space_id == space_id:
                    return space
        raise InvalidParams(f"unknown space {space_id!r}")

    # --- opportunities ---------------------------------------------------------------

    def save_opportunity_batch(self, project_id: str, batch: dict) -> None:
        d = self._require(project_id)
        _write_json_atomic(d / "opportunities" / f"{batch['batch_id']}.json", batch)

    def iter_opportunity_batches(self, project_id: str) -> Iterator[dict]:
        d = self._require(project_id)
        folder = d / "opportunities"
        if not folder.exists():
            return
        for path in sorted(folder.glob("*.json")):
            yield _read_json(path)

    def batch_count(self, project_id: str) -> int:
        folder = self._require(project_id) / "opportunities"
        return len(list(folder.glob("*.json"))) if folder.exists() else 0

    def list_opportunities(
        self,
        project_id: str,
        kind: Optional[str] = None,
        depth: Optional[int] = None,
        space_id: Optional[str] = None,
        novelty_level: Optional[str] = None,
    ) -> list[Opportunity]:
        out: list[Opportunity] = []
        for batch in self.iter_opportunity_batches(project_id):
            for record in batch["opportunities"]:
                opp = Opportunity.from_dict(record)
                if kind and opp.kind != kind:
                    continue
                if depth is not None and opp.pivot_depth != depth:
                    continue
                if space_id and space_id not in opp.source_space_ids:
                    continue
                if novelty_level and opp.novelty_level != novelty_level:
                    continue
                out.append(opp)
        return out

    def get_opportunity(self, project_id: str, opportunity_id: str) -> Optional[Opportunity]:
        for batch in self.iter_opportunity_batches(project_id):
            for record in batch["opportunities"]:
                if record["opportunity_id"] == opportunity_id:
                    return Opportunity.from_dict(record)
        return None

    # --- ratings --------------------------------------------------------------------

    def save_rating_batch(self, project_id: str, record: dict) -> None:
        d = self._require(project_id)
        _write_json_atomic(d / "ratings" / f"{record['rating_id']}.json", record)

    def list_ratings(self, project_id: str) -> list[RatingPair]:
        d = self._require(project_id)
        folder = d / "ratings"
        if not folder.exists():
            return []
        out: list[RatingPair] = []
        for path in sorted(folder.glob("*.json")):
            for r in _read_json(path)["ratings"]:
                out.append(RatingPair.from_dict(r))
        return out

    def rating_batch_count(self, project_id: str) -> int:
        folder = self._require(project_id) / "ratings"
        return len(list(folder.glob("*.json"))) if folder.exists() else 0

    def ratings_by_opportunity(self, project_id: str) -> dict[str, RatingPair]:
        """Latest rating per opportunity (later batches win)."""
        out: dict[str, RatingPair] = {}
        for pair in self.list_ratings(project_id):
            out[pair.opportunity_id] = pair
        return out

    # --- baselines and audit -----------------------------------------------------------

    def save_baseline_manifest(self, project_id: str, manifest: dict) -> None:
        d = self._require(project_id)
        _write_json_atomic(d / "baselines" / f"{manifest['baseline_id']}.json", manifest)

    def list_baselines(self, project_id: str) -> list[dict]:
        folder = self._require(project_id) / "baselines"
        if not folder.exists():
            return []
        return [_read_json(p) for p in sorted(folder.glob("*.json"))]

    def append_audit(self, project_id: str, record: dict) -> None:
        d = self._require(project_id)
        folder = d / "audit"
        folder.mkdir(parents=True, exist_ok=True)
        seq = len(list(folder.glob("*.json")))
        record = {"seq": seq, **record}
        _write_json_atomic(folder / f"{seq:06d}.json", record)

    def audit_count(self, project_id: str) -> int:
        folder = self._require(project_id) / "audit"
        return len(list(folder.glob("*.json"))) if folder.exists() else 0

    # --- export / import / digest --------------------------------------------------------

    def export_archive(self, project_id: str) -> bytes:
        """Zip of the whole project directory with stable entry metadata."""
        d = self._require(project_id)
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as zf:
            for path in sorted(d.rglob("*")):
                if path.is_dir() or path.name in (".writer.lock",):
                    continue
                arcname = f"{project_id}/{path.relative_to(d)}"
                info = zipfile.ZipInfo(arcname, date_time=(1980, 1, 1, 0, 0, 0))
                info.compress_type = zipfile.ZIP_DEFLATED
                info.external_attr = 0o644 << 16
                zf.writestr(info, path.read_bytes())
        return buffer.getvalue()

    def import_archive(self, data: bytes, project_id: Optional[str] = None) -> str:
        with zipfile.ZipFile(io.BytesIO(data)) as zf:
            names = zf.namelist()
            if not names:
                raise InvalidParams("empty archive")
            original_id = names[0].split("/", 1)[0]
            target_id = project_id or original_id
            if (self.project_dir(target_id) / "project.json").exists():
                raise DuplicateName(f"project {target_id!r} already exists")
            for name in names:
                rel = name.split("/", 1)
                if len(rel) != 2 or ".." in name:
                    continue
                dest = self.project_dir(target_id) / rel[1]
                dest.parent.mkdir(parents=True, exist_ok=True)
                dest.write_bytes(zf.read(name))
            if project_id and project_id != original_id:
                record = _read_json(self.project_dir(target_id) / "project.json")
                record["project_id"] = target_id
                _write_json_atomic(self.project_dir(target_id) / "project.json", record)
        return target_id

    def project_digest(self, project_id: str) -> str:
        """SHA-256 over the canonical JSON state of a project."""
        d = self._require(project_id)
        digest = hashlib.sha256()
        for path in sorted(d.rglob("*.json")):
            rel = str(path.relative_to(d))
            payload = json.dumps(_read_json(path), sort_keys=True, separators=(",", ":"))
            digest.update(rel.encode("utf-8"))
            digest.update(b"\0")
            digest.update(payload.encode("utf-8"))
            digest.update(b"\0")
        return digest.hexdigest()
