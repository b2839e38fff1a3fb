"""Raw text extraction for the supported media kinds.

Every extractor returns human-readable text in reading order with
paragraph boundaries as blank lines; paged media (PDF, slides) mark page
boundaries with form feeds so the cleaner can spot running headers.
Table cell text is included in row-major order.
"""

from __future__ import annotations

import re
import zipfile
from html.parser import HTMLParser
from io import BytesIO
from pathlib import Path
from xml.etree import ElementTree

from ..errors import CorruptFile, EmptyAsset, UnsupportedMedia
from .assets import InformationAsset
from .pdftext import extract_pdf_pages

__all__ = ["extract_text", "extract_text_from_bytes", "count_pages"]

_DOCX_NS = "{http://schemas.openxmlformats.org/wordprocessingml/2006/main}"
_PPTX_NS = "{http://schemas.openxmlformats.org/drawingml/2006/main}"

_BLOCK_TAGS = {
    "p", "div", "section", "article", "header", "footer", "li", "ul", "ol",
    "table", "tr", "h1", "h2", "h3", "h4", "h5", "h6", "blockquote", "pre",
}
_SKIP_TAGS = {"script", "style", "noscript", "head"}


def _extract_plain(data: bytes) -> str:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        text = data.decode("latin-1")
    return text.replace("\r\n", "\n").replace("\r", "\n")


class _HtmlTextParser(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n\n")
        elif tag in ("br", "td", "th"):
            self.parts.append("\n" if tag == "br" else " ")

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS and self._skip_depth > 0:
            self._skip_depth -= 1
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n\n")

    def handle_data(self, data):
        if self._skip_depth == 0 and data.strip():
            self.parts.append(data)


def _extract_html(data: bytes) -> str:
    parser = _HtmlTextParser()
    parser.feed(_extract_plain(data))
    text = "".join(parser.parts)
    text = re.sub(r"[ \t]+", " ", text)
    text = re.sub(r"\n{3,}", "\n\n", text)
    return text.strip()


def _docx_paragraph_text(par) -> str:
    parts = []
    for node in par.iter():
        if node.tag == f"{_DOCX_NS}t" and node.text:
            parts.append(node.text)
        elif node.tag == f"{_DOCX_NS}tab":
            parts.append(" ")
        elif node.tag == f"{_DOCX_NS}br":
            parts.append("\n")
    return "".join(parts)


def _extract_docx(data: bytes) -> str:
    try:
        with zipfile.ZipFile(BytesIO(data)) as zf:
            xml = zf.read("word/document.xml")
        root = ElementTree.fromstring(xml)
    except (zipfile.BadZipFile, KeyError, ElementTree.ParseError) as exc:
        raise CorruptFile(f"unreadable Word document: {exc}") from exc
    paragraphs = []
    # document-order traversal keeps table cells row-major
    for par in root.iter(f"{_DOCX_NS}p"):
        text = _docx_paragraph_text(par).strip()
        if text:
            paragraphs.append(text)
    return "\n\n".join(paragraphs)


def _slide_number(name: str) -> int:
    m = re.search(r"slide(\d+)\.xml$", name)
    return int(m.group(1)) if m else 0


def _extract_pptx(data: bytes) -> str:
    try:
        with zipfile.ZipFile(BytesIO(data)) as zf:
            slide_names = sorted(
                (n for n in zf.namelist() if re.fullmatch(r"ppt/slides/slide\d+\.xml", n)),
                key=_slide_number,
            )
            slides = [zf.read(n) for n in slide_names]
    except zipfile.BadZipFile as exc:
        raise CorruptFile(f"unreadable PowerPoint file: {exc}") from exc
    pages = []
    for xml in slides:
        try:
            root = ElementTree.fromstring(xml)
        except ElementTree.ParseError as exc:
            raise CorruptFile(f"unreadable slide XML: {exc}") from exc
        paragraphs = []
        for par in root.iter(f"{_PPTX_NS}p"):
            runs = [t.text for t in par.iter(f"{_PPTX_NS}t") if t.text]
            text = "".join(runs).strip()
            if text:
                paragraphs.append(text)
        pages.append("\n\n".join(paragraphs))
    return "\f".join(pages)


def _extract_pdf(data: bytes) -> str:
    return "\f".join(extract_pdf_pages(data))


_EXTRACTORS = {
    "plain_text": _extract_plain,
    "html": _extract_html,
    "word": _extract_docx,
    "powerpoint": _extract_pptx,
    "pdf": _extract_pdf,
}


def count_pages(data: bytes, media_kind: str) -> int:
    """Page/slide count where the format has one; 0 otherwise."""
    try:
        if media_kind == "pdf":
            return len(extract_pdf_pages(data))
        if media_kind == "powerpoint":
            with zipfile.ZipFile(BytesIO(data)) as zf:
                return sum(
                    1 for n in zf.namelist() if re.fullmatch(r"ppt/slides/slide\d+\.xml", n)
                )
    except (CorruptFile, zipfile.BadZipFile):
        return 0
    return 0


def extract_text_from_bytes(data: bytes, media_kind: str, name: str = "") -> str:
    """Extract all human-readable text; raises EmptyAsset when none found."""
    if media_kind not in _EXTRACTORS:
        raise UnsupportedMedia(f"unsupported media kind {media_kind!r}")
    if len(data) == 0:
        raise EmptyAsset(f"zero-byte file: {name or media_kind}")
    text = _EXTRACTORS[media_kind](data)
    if not text.strip("\f \n\t"):
        raise EmptyAsset(f"no extractable text in {name or media_kind}")
    return text


def extract_text(asset: InformationAsset) -> str:
    """Extract raw text for an asset record pointing at a readable file."""
    data = Path(asset.source_path).read_bytes()
    return extract_text_from_bytes(data, asset.media_kind, asset.title)
