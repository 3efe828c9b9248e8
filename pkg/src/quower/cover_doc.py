"""
JSON documents for board covers and short coverings.

One schema serves both kinds so that `lift` and `extract` read each other's
output::

    {"kind": "board", "n": 7, "variant": "punctured", "indexing": "zero-based",
     "centers": [[a, b], ...], "size": 4, "verified": true, "producer": "..."}

    {"kind": "short", "q": 8, "indexing": "zero-based",
     "field": {"p": 2, "k": 3, "modulus": [1, 0, 1, 1], "generator": [0, 0, 1]},
     "centers": [[[c, ...], [c, ...], [c, ...]], ...], "size": 6, ...}

Board centers are residue pairs in row-major order; short centers are vectors
whose coordinates are field elements written as coefficient lists (constant
term first), sorted by their element indices. Documents are written with a
fixed key order, so equal covers give byte-identical files. The field's
"generator" names the primitive element the board was mapped with; it is the
canonical generator of the field unless a lift used another one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, TextIO

from quower.board import BoardCover, BoardPoint, BoardVariant, CoverReport, is_cover
from quower.errors import CoverFormatError, InputError
from quower.field import FieldElement, FieldSpec
from quower.log_cfg import logger
from quower.projective import ShortCover, Vector3, is_short_cover

PRODUCER = "quower"


@dataclass(frozen=True)
class CoverDocument:
    """A cover read from a document together with what the document claims about it."""
    cover: BoardCover | ShortCover
    size: int
    verified: bool
    producer: str
    generator: FieldElement | None = None

    @property
    def kind(self) -> str:
        return "board" if isinstance(self.cover, BoardCover) else "short"


def board_document(cover: BoardCover, producer: str = PRODUCER) -> dict[str, Any]:
    return {
        "kind": "board",
        "n": cover.n,
        "variant": cover.variant.value,
        "indexing": "zero-based",
        "centers": [[c.a, c.b] for c in cover.sorted_centers()],
        "size": cover.size,
        "verified": is_cover(cover).covered,
        "producer": producer,
    }


def short_document(cover: ShortCover, producer: str = PRODUCER,
                   generator: FieldElement | None = None) -> dict[str, Any]:
    centers = sorted(cover.centers, key=lambda v: v.key)
    meta = cover.spec.metadata()
    if generator is not None:
        meta["generator"] = list(cover.spec.element(generator).coeffs)
    return {
        "kind": "short",
        "q": cover.q,
        "indexing": "zero-based",
        "field": meta,
        "centers": [v.coefficient_vectors() for v in centers],
        "size": cover.size,
        "verified": is_short_cover(cover).covered,
        "producer": producer,
    }


def document_of(cover: BoardCover | ShortCover, producer: str = PRODUCER) -> dict[str, Any]:
    if isinstance(cover, BoardCover):
        return board_document(cover, producer)
    return short_document(cover, producer)


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_document(cover: BoardCover | ShortCover, destination: str | Path | TextIO,
                   producer: str = PRODUCER) -> dict[str, Any]:
    """Write the document of cover to a path or text stream and return it."""
    doc = document_of(cover, producer)
    text = dumps(doc)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")
    logger.info("wrote %s cover of size %d", doc["kind"], doc["size"])
    return doc


def _require(doc: dict, name: str, kind: type | tuple) -> Any:
    if name not in doc:
        raise CoverFormatError("missing field", field=name)
    value = doc[name]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise CoverFormatError(f"unexpected value {value!r}", field=name)
    return value


def _int_list(value: Any, length: int | None, name: str) -> list[int]:
    if not isinstance(value, list) or length is not None and len(value) != length:
        raise CoverFormatError(f"expected a list of {length} integers, got {value!r}", field=name)
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise CoverFormatError(f"expected integers, got {value!r}", field=name)
    return value


def _parse_board(doc: dict) -> BoardCover:
    n = _require(doc, "n", int)
    variant = _require(doc, "variant", str)
    try:
        variant = BoardVariant(variant)
    except ValueError as exc:
        raise CoverFormatError(f"unknown variant {variant!r}", field="variant") from exc
    centers = [BoardPoint(*_int_list(c, 2, "centers")) for c in _require(doc, "centers", list)]
    try:
        return BoardCover(n, variant, frozenset(centers))
    except InputError as exc:
        raise CoverFormatError(str(exc), field="centers") from exc


def _parse_generator(meta: dict, spec: FieldSpec) -> FieldElement:
    if meta.get("generator") is None:
        return spec.generator
    try:
        g = spec.element(_int_list(meta["generator"], spec.k, "field.generator"))
        spec.power_table(g)
    except InputError as exc:
        raise CoverFormatError(str(exc), field="field") from exc
    return g


def _parse_short(doc: dict) -> tuple[ShortCover, FieldElement]:
    q = _require(doc, "q", int)
    meta = _require(doc, "field", dict)
    try:
        spec = FieldSpec(_require(meta, "p", int), _require(meta, "k", int),
                         tuple(_int_list(meta.get("modulus"), None, "field.modulus")))
    except InputError as exc:
        raise CoverFormatError(str(exc), field="field") from exc
    if spec.q != q:
        raise CoverFormatError(f"field has {spec.q} elements, document says q={q}", field="q")
    centers = []
    for raw in _require(doc, "centers", list):
        if not isinstance(raw, list) or len(raw) != 3:
            raise CoverFormatError(f"a center needs three coordinates, got {raw!r}", field="centers")
        try:
            centers.append(Vector3(spec, tuple(tuple(_int_list(c, spec.k, "centers")) for c in raw)))
        except InputError as exc:
            raise CoverFormatError(str(exc), field="centers") from exc
    try:
        cover = ShortCover(spec, tuple(centers))
    except InputError as exc:
        raise CoverFormatError(str(exc), field="centers") from exc
    return cover, _parse_generator(meta, spec)


def loads(text: str) -> CoverDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CoverFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise CoverFormatError("a cover document is a JSON object")
    kind = _require(doc, "kind", str)
    if doc.get("indexing", "zero-based") != "zero-based":
        raise CoverFormatError(f"unsupported indexing {doc['indexing']!r}", field="indexing")
    generator = None
    if kind == "board":
        cover = _parse_board(doc)
    elif kind == "short":
        cover, generator = _parse_short(doc)
    else:
        raise CoverFormatError(f"unknown kind {kind!r}", field="kind")
    size = _require(doc, "size", int)
    verified = doc.get("verified", False)
    if not isinstance(verified, bool):
        raise CoverFormatError(f"unexpected value {verified!r}", field="verified")
    producer = doc.get("producer", "")
    return CoverDocument(cover, size, verified, str(producer), generator)


def read_document(source: str | Path | TextIO) -> CoverDocument:
    """Parse a cover document from a path or text stream; raises `CoverFormatError`."""
    if hasattr(source, "read"):
        return loads(source.read())
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise CoverFormatError(f"cannot read {source}: {exc.strerror}") from exc
    return loads(text)


def verify_document(document: CoverDocument) -> tuple[CoverReport, bool]:
    """
    Recompute the verification stamp.

    Returns the coverage report and whether the declared size equals the
    number of distinct centers. The stored ``verified`` flag is not trusted.
    """
    cover = document.cover
    report = is_cover(cover) if isinstance(cover, BoardCover) else is_short_cover(cover)
    size_ok = document.size == cover.size
    if not report.covered:
        logger.warning("%s cover misses %d elements", document.kind, len(report.uncovered))
    if not size_ok:
        logger.warning("declared size %d, actual %d", document.size, cover.size)
    return report, size_ok
