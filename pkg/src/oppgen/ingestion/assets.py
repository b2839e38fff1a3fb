"""Information assets and media-kind sniffing."""

from __future__ import annotations

import hashlib
import zipfile
from dataclasses import dataclass
from io import BytesIO
from pathlib import Path

from ..errors import UnsupportedMedia

MEDIA_KINDS = ("pdf", "word", "powerpoint", "html", "plain_text")


@dataclass(frozen=True)
class InformationAsset:
    asset_id: str
    title: str
    source_path: str
    media_kind: str
    byte_size: int
    page_count: int = 0  # 0 = unknown / not paginated

    def to_dict(self) -> dict:
        return {
            "asset_id": self.asset_id,
            "title": self.title,
            "source_path": self.source_path,
            "media_kind": self.media_kind,
            "byte_size": self.byte_size,
            "page_count": self.page_count,
        }

    @staticmethod
    def from_dict(d: dict) -> "InformationAsset":
        return InformationAsset(
            asset_id=d["asset_id"],
            title=d["title"],
            source_path=d["source_path"],
            media_kind=d["media_kind"],
            byte_size=d["byte_size"],
            page_count=d.get("page_count", 0),
        )


def _looks_like_html(text: str) -> bool:
    head = text.lstrip().lower()[:256]
    return head.startswith("<!doctype html") or "<html" in head or head.startswith("<?xml")


def sniff_media_kind(data: bytes, filename: str = "") -> str:
    """Determine the media kind from content, falling back to the extension.

    Content signatures take precedence; the extension only disambiguates
    text-like content (html vs plain text).
    """
    ext = Path(filename).suffix.lower()
    if data.startswith(b"%PDF-"):
        return "pdf"
    if data.startswith(b"PK\x03\x04"):
        try:
            with zipfile.ZipFile(BytesIO(data)) as zf:
                names = set(zf.namelist())
        except zipfile.BadZipFile:
            raise UnsupportedMedia(f"unreadable zip container: {filename or 'upload'}")
        if "word/document.xml" in names:
            return "word"
        if any(n.startswith("ppt/slides/slide") for n in names):
            return "powerpoint"
        raise UnsupportedMedia(f"zip container is not a Word or PowerPoint file: {filename}")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        text = None
    if text is not None:
        if _looks_like_html(text) or ext in (".html", ".htm"):
            return "html"
        return "plain_text"
    if ext in (".txt", ".md", ".text"):
        return "plain_text"
    raise UnsupportedMedia(f"unrecognized media kind for {filename or 'upload'}")


def make_asset(path: str | Path, title: str | None = None, page_count: int = 0) -> InformationAsset:
    """Build an asset record for a file on disk, sniffing its media kind."""
    p = Path(path)
    data = p.read_bytes()
    digest = hashlib.sha256(data).hexdigest()[:12]
    return InformationAsset(
        asset_id=f"asset-{digest}",
        title=title or p.stem,
        source_path=str(p),
        media_kind=sniff_media_kind(data, p.name),
        byte_size=len(data),
        page_count=page_count,
    )
