"""Minimal PDF text-layer extraction using only the standard library.

Handles classic cross-referenced PDFs with Flate-compressed (or raw)
content streams and simple single-byte encodings, which covers the
text-layer documents this pipeline ingests. Image-only pages produce no
text; compressed object streams (PDF 1.5 xref streams) are out of scope
and surface as CorruptFile/EmptyAsset upstream.
"""

from __future__ import annotations

import re
import zlib

from ..errors import CorruptFile

__all__ = ["extract_pdf_pages"]

_OBJ_RE = re.compile(rb"(\d+)\s+(\d+)\s+obj\b(.*?)endobj", re.DOTALL)
_STREAM_RE = re.compile(rb"stream\r?\n(.*?)endstream", re.DOTALL)
_ROOT_RE = re.compile(rb"/Root\s+(\d+)\s+\d+\s+R")
_PAGES_RE = re.compile(rb"/Pages\s+(\d+)\s+\d+\s+R")
_KIDS_RE = re.compile(rb"/Kids\s*\[(.*?)\]", re.DOTALL)
_REF_RE = re.compile(rb"(\d+)\s+\d+\s+R")
_CONTENTS_REF_RE = re.compile(rb"/Contents\s+(\d+)\s+\d+\s+R")
_CONTENTS_ARR_RE = re.compile(rb"/Contents\s*\[(.*?)\]", re.DOTALL)
_TYPE_PAGE_RE = re.compile(rb"/Type\s*/Page\b")
_TYPE_PAGES_RE = re.compile(rb"/Type\s*/Pages\b")

_ESCAPES = {
    b"n": "\n",
    b"r": "\r",
    b"t": "\t",
    b"b": "\b",
    b"f": "\f",
    b"(": "(",
    b")": ")",
    b"\\": "\\",
}


def _parse_objects(data: bytes) -> dict[int, bytes]:
    objects: dict[int, bytes] = {}
    for match in _OBJ_RE.finditer(data):
        objects[int(match.group(1))] = match.group(3)
    return objects


_FILTER_RE = re.compile(rb"/Filter\s*(\[[^\]]*\]|/\w+)")
_NAME_RE = re.compile(rb"/(\w+)")


def _apply_filters(raw: bytes, header: bytes) -> bytes:
    m = _FILTER_RE.search(header)
    if m is None:
        return raw
    names = [n.group(1) for n in _NAME_RE.finditer(m.group(1))]
    data = raw
    for name in names:
        if name == b"ASCII85Decode":
            import base64

            text = bytes(data).strip()
            if text.endswith(b"~>"):
                text = text[:-2]
            try:
                data = base64.a85decode(text)
            except ValueError as exc:
                raise CorruptFile(f"bad ASCII85 stream: {exc}") from exc
        elif name == b"FlateDecode":
            try:
                data = zlib.decompress(data)
            except zlib.error as exc:
                raise CorruptFile(f"undecodable PDF content stream: {exc}") from exc
        else:
            raise CorruptFile(f"unsupported PDF stream filter: {name.decode()}")
    return data


def _object_stream(body: bytes) -> bytes | None:
    m = _STREAM_RE.search(body)
    if m is None:
        return None
    raw = m.group(1)
    # stream data may end with \r\n or \n before "endstream"
    if raw.endswith(b"\r\n"):
        raw = raw[:-2]
    elif raw.endswith(b"\n") or raw.endswith(b"\r"):
        raw = raw[:-1]
    return _apply_filters(raw, body[: m.start()])


def _page_order(objects: dict[int, bytes]) -> list[int]:
    """Page object numbers in document order via the /Pages tree."""

    def walk(num: int, seen: set[int]) -> list[int]:
        if num in seen or num not in objects:
            return []
        seen.add(num)
        body = objects[num]
        if _TYPE_PAGES_RE.search(body):
            kids = _KIDS_RE.search(body)
            if not kids:
                return []
            out: list[int] = []
            for ref in _REF_RE.finditer(kids.group(1)):
                out.extend(walk(int(ref.group(1)), seen))
            return out
        if _TYPE_PAGE_RE.search(body):
            return [num]
        return []

    for body in objects.values():
        root = _PAGES_RE.search(body)
        if root and _TYPE_PAGES_RE.search(objects.get(int(root.group(1)), b"")):
            pages = walk(int(root.group(1)), set())
            if pages:
                return pages
    # fallback: file order of /Type /Page objects
    return [num for num, body in objects.items() if _TYPE_PAGE_RE.search(body)]


def _content_streams(page_body: bytes, objects: dict[int, bytes]) -> list[bytes]:
    refs: list[int] = []
    arr = _CONTENTS_ARR_RE.search(page_body)
    if arr:
        refs = [int(m.group(1)) for m in _REF_RE.finditer(arr.group(1))]
    else:
        single = _CONTENTS_REF_RE.search(page_body)
        if single:
            refs = [int(single.group(1))]
    streams = []
    for ref in refs:
        body = objects.get(ref)
        if body is None:
            continue
        stream = _object_stream(body)
        if stream is not None:
            streams.append(stream)
    return streams


def _decode_literal(raw: bytes) -> str:
    out: list[str] = []
    i = 0
    while i < len(raw):
        ch = raw[i : i + 1]
        if ch == b"\\" and i + 1 < len(raw):
            nxt = raw[i + 1 : i + 2]
            if nxt in _ESCAPES:
                out.append(_ESCAPES[nxt])
                i += 2
                continue
            if nxt.isdigit():
                octal = raw[i + 1 : i + 4]
                j = 1
                while j < 3 and i + 1 + j < len(raw) and raw[i + 1 + j : i + 2 + j].isdigit():
                    j += 1
                out.append(chr(int(raw[i + 1 : i + 1 + j], 8)))
                i += 1 + j
                continue
            if nxt in (b"\n", b"\r"):
                i += 2  # line continuation
                continue
            out.append(nxt.decode("latin-1"))
            i += 2
            continue
        out.append(ch.decode("latin-1"))
        i += 1
    return "".join(out)


def _extract_stream_text(stream: bytes) -> list[str]:
    """Text lines shown by a content stream, in operator order."""
    lines: list[str] = []
    current: list[str] = []
    pending: list[str] = []  # operand strings awaiting their operator
    i = 0
    n = len(stream)

    def newline() -> None:
        if current:
            lines.append("".join(current))
            current.clear()

    while i < n:
        c = stream[i : i + 1]
        if c == b"(":
            depth = 1
            j = i + 1
            buf = bytearray()
            while j < n and depth > 0:
                cj = stream[j]
                if cj == 0x5C and j + 1 < n:  # backslash escape
                    buf += stream[j : j + 2]
                    j += 2
                    continue
                if cj == 0x28:
                    depth += 1
                elif cj == 0x29:
                    depth -= 1
                    if depth == 0:
                        break
                buf.append(cj)
                j += 1
            pending.append(_decode_literal(bytes(buf)))
            i = j + 1
            continue
        if c == b"<" and stream[i : i + 2] != b"<<":
            j = stream.find(b">", i)
            if j == -1:
                break
            hexstr = re.sub(rb"\s", b"", stream[i + 1 : j])
            if len(hexstr) % 2:
                hexstr += b"0"
            try:
                pending.append(bytes.fromhex(hexstr.decode("ascii")).decode("latin-1"))
            except ValueError:
                pass
            i = j + 1
            continue
        if c.isalpha() or c in (b"'", b'"', b"*"):
            j = i
            while j < n and (stream[j : j + 1].isalpha() or stream[j : j + 1] in (b"'", b'"', b"*")):
                j += 1
            op = stream[i:j]
            if op in (b"Tj", b"TJ"):
                current.extend(pending)
            elif op in (b"'", b'"'):
                newline()
                current.extend(pending)
            elif op in (b"Td", b"TD", b"T*", b"Tm"):
                newline()
            elif op == b"ET":
                newline()
            pending.clear()
            i = j
            continue
        i += 1
    newline()
    return [ln for ln in lines if ln.strip()]


def extract_pdf_pages(data: bytes) -> list[str]:
    """Extract text from each page of a PDF; one string per page."""
    if not data.startswith(b"%PDF-"):
        raise CorruptFile("missing %PDF header")
    objects = _parse_objects(data)
    if not objects:
        raise CorruptFile("no PDF objects found")
    pages = []
    for page_num in _page_order(objects):
        parts: list[str] = []
        for stream in _content_streams(objects[page_num], objects):
            parts.extend(_extract_stream_text(stream))
        pages.append("\n".join(parts))
    return pages
