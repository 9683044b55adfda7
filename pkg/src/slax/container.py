"""The .slax container: a piece manifest plus its PCM stems in one file.

Layout (all integers little-endian):

    magic "SLAX" (4 bytes)
    version       u16
    manifest_len  u32
    manifest      canonical JSON, UTF-8
    track_count   u16
    per track:  payload_len u32, payload bytes (RIFF/WAVE mono 16-bit PCM)

The manifest is canonical JSON: keys sorted bytewise, no insignificant
whitespace, integer numbers only.  Encoding the same piece twice therefore
yields byte-identical files, and decode(encode(...)) is the identity.
Decoding validates every declared length against the bytes that are
actually there before touching them, so arbitrary input produces a
structured ContainerError, never a crash.
"""

from __future__ import annotations

import json
import struct
from typing import Any, Sequence

from .model import (
    ConstraintOperand,
    ConstraintRef,
    Exclusion,
    GroupCardinality,
    GroupNode,
    Implication,
    LevelBalance,
    LevelEquality,
    LevelInequality,
    Piece,
    PieceInvalid,
    SlaxError,
    Track,
    TrackRef,
    ValidationReport,
    validate_piece,
)
from .wavpcm import WavFormatError, decode_wav

MAGIC = b"SLAX"
VERSION = 1
FILE_EXTENSION = ".slax"

_HEAD = struct.Struct("<4sHI")
_U16 = struct.Struct("<H")
_U32 = struct.Struct("<I")


class ContainerError(SlaxError):
    """Base class for container encode/decode failures."""


class BadMagic(ContainerError):
    pass


class UnsupportedVersion(ContainerError):
    pass


class TruncatedFile(ContainerError):
    """A declared length runs past the bytes actually present."""


class TrailingData(ContainerError):
    """Bytes remain after the last declared payload."""


class ManifestSyntax(ContainerError):
    """The manifest is not valid JSON of the expected shape."""


class ManifestInvalid(ContainerError):
    """The manifest parsed but the piece fails validation."""

    def __init__(self, report: ValidationReport):
        super().__init__("manifest invalid: " + report.summary())
        self.report = report


class PayloadCountMismatch(ContainerError):
    pass


class PayloadFormatMismatch(ContainerError):
    """A stem payload is not PCM of the piece's declared format."""


def canonical_json(obj: Any) -> str:
    """The one JSON dialect used for manifests and wire messages."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _operand_to_json(op: ConstraintOperand) -> dict:
    if isinstance(op, TrackRef):
        return {"track": op.track}
    return {"constraint": op.constraint}


def _tree_to_json(node: GroupNode) -> dict:
    children: list[Any] = []
    for child in node.children:
        children.append(_tree_to_json(child) if isinstance(child, GroupNode) else child)
    return {"name": node.name, "children": children}


def piece_to_manifest(piece: Piece) -> dict:
    """The manifest document for a piece (plain JSON-ready dict)."""
    sel = []
    for c in piece.selection_constraints:
        if isinstance(c, Exclusion):
            sel.append({"kind": "exclusion", "a": _operand_to_json(c.a), "b": _operand_to_json(c.b)})
        elif isinstance(c, Implication):
            sel.append({
                "kind": "implication",
                "antecedent": _operand_to_json(c.antecedent),
                "consequent": _operand_to_json(c.consequent),
            })
        else:
            sel.append({
                "kind": "group",
                "members": [_operand_to_json(m) for m in c.members],
                "min": c.min_active,
                "max": c.max_active,
            })
    mix = []
    for c in piece.mix_constraints:
        if isinstance(c, LevelEquality):
            mix.append({"kind": "equality", "members": list(c.members)})
        elif isinstance(c, LevelInequality):
            mix.append({"kind": "inequality", "higher": c.higher, "lower": c.lower})
        else:
            mix.append({"kind": "balance", "members": list(c.members), "sum": c.total})
    return {
        "title": piece.title,
        "sample_rate": piece.sample_rate,
        "tracks": [
            {
                "name": t.name,
                "level_min": t.level_min,
                "level_max": t.level_max,
                "initial_selected": t.initial_selected,
                "initial_level": t.initial_level,
            }
            for t in piece.tracks
        ],
        "group_tree": _tree_to_json(piece.group_tree),
        "selection_constraints": sel,
        "mix_constraints": mix,
    }


def _want(obj: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise ManifestSyntax("missing key {!r} in {}".format(key, where))
    value = obj[key]
    if kind is int:
        # JSON numbers must be integers here; bool is a subtype of int in
        # Python, so reject it explicitly.
        if not isinstance(value, int) or isinstance(value, bool):
            raise ManifestSyntax("{}.{} must be an integer".format(where, key))
    elif not isinstance(value, kind):
        raise ManifestSyntax("{}.{} must be {}".format(where, key, kind.__name__))
    return value


def _operand_from_json(obj: Any, where: str) -> ConstraintOperand:
    if isinstance(obj, dict) and set(obj) == {"track"}:
        return TrackRef(_want(obj, "track", int, where))
    if isinstance(obj, dict) and set(obj) == {"constraint"}:
        return ConstraintRef(_want(obj, "constraint", int, where))
    raise ManifestSyntax("{} must be {{\"track\": i}} or {{\"constraint\": j}}".format(where))


def _tree_from_json(obj: Any, where: str) -> GroupNode:
    name = _want(obj, "name", str, where)
    raw = _want(obj, "children", list, where)
    children: list = []
    for i, child in enumerate(raw):
        if isinstance(child, dict):
            children.append(_tree_from_json(child, "{}.children[{}]".format(where, i)))
        elif isinstance(child, int) and not isinstance(child, bool):
            children.append(child)
        else:
            raise ManifestSyntax(
                "{}.children[{}] must be a track index or a group".format(where, i)
            )
    return GroupNode(name, tuple(children))


def piece_from_manifest(obj: Any) -> Piece:
    """Rebuild a Piece from a manifest document; ManifestSyntax on shape errors."""
    if not isinstance(obj, dict):
        raise ManifestSyntax("manifest must be a JSON object")
    title = _want(obj, "title", str, "manifest")
    sample_rate = _want(obj, "sample_rate", int, "manifest")
    tracks = []
    for i, raw in enumerate(_want(obj, "tracks", list, "manifest")):
        where = "tracks[{}]".format(i)
        tracks.append(Track(
            id=i,
            name=_want(raw, "name", str, where),
            level_min=_want(raw, "level_min", int, where),
            level_max=_want(raw, "level_max", int, where),
            initial_selected=_want(raw, "initial_selected", bool, where),
            initial_level=_want(raw, "initial_level", int, where),
        ))
    tree = _tree_from_json(_want(obj, "group_tree", dict, "manifest"), "group_tree")
    sel = []
    for j, raw in enumerate(_want(obj, "selection_constraints", list, "manifest")):
        where = "selection_constraints[{}]".format(j)
        kind = _want(raw, "kind", str, where)
        if kind == "exclusion":
            sel.append(Exclusion(
                _operand_from_json(_want(raw, "a", dict, where), where + ".a"),
                _operand_from_json(_want(raw, "b", dict, where), where + ".b"),
            ))
        elif kind == "implication":
            sel.append(Implication(
                _operand_from_json(_want(raw, "antecedent", dict, where), where + ".antecedent"),
                _operand_from_json(_want(raw, "consequent", dict, where), where + ".consequent"),
            ))
        elif kind == "group":
            members = tuple(
                _operand_from_json(m, "{}.members[{}]".format(where, i))
                for i, m in enumerate(_want(raw, "members", list, where))
            )
            sel.append(GroupCardinality(members, _want(raw, "min", int, where),
                                        _want(raw, "max", int, where)))
        else:
            raise ManifestSyntax("{} has unknown kind {!r}".format(where, kind))
    mix = []
    for k, raw in enumerate(_want(obj, "mix_constraints", list, "manifest")):
        where = "mix_constraints[{}]".format(k)
        kind = _want(raw, "kind", str, where)
        if kind in ("equality", "balance"):
            members = []
            for i, m in enumerate(_want(raw, "members", list, where)):
                if not isinstance(m, int) or isinstance(m, bool):
                    raise ManifestSyntax("{}.members[{}] must be a track index".format(where, i))
                members.append(m)
            if kind == "equality":
                mix.append(LevelEquality(tuple(members)))
            else:
                mix.append(LevelBalance(tuple(members), _want(raw, "sum", int, where)))
        elif kind == "inequality":
            mix.append(LevelInequality(
                higher=_want(raw, "higher", int, where),
                lower=_want(raw, "lower", int, where),
            ))
        else:
            raise ManifestSyntax("{} has unknown kind {!r}".format(where, kind))
    return Piece(title, sample_rate, tuple(tracks), tree, tuple(sel), tuple(mix))


def _check_payloads(piece: Piece, payloads: Sequence[bytes], exc: type[ContainerError]):
    if len(payloads) != len(piece.tracks):
        raise PayloadCountMismatch(
            "{} payloads for {} tracks".format(len(payloads), len(piece.tracks))
        )
    for i, payload in enumerate(payloads):
        try:
            rate, _ = decode_wav(payload)
        except WavFormatError as e:
            raise exc("payload {}: {}".format(i, e)) from e
        if rate != piece.sample_rate:
            raise exc(
                "payload {} has sample rate {}, piece declares {}".format(i, rate, piece.sample_rate)
            )


def encode(piece: Piece, audio: Sequence[bytes]) -> bytes:
    """Serialize a validated piece and its stem payloads to container bytes.

    Deterministic: identical inputs produce identical bytes.
    """
    report = validate_piece(piece)
    if not report.ok:
        raise PieceInvalid(report)
    _check_payloads(piece, audio, PayloadFormatMismatch)
    manifest = canonical_json(piece_to_manifest(piece)).encode("utf-8")
    out = bytearray()
    out += _HEAD.pack(MAGIC, VERSION, len(manifest))
    out += manifest
    out += _U16.pack(len(audio))
    for payload in audio:
        out += _U32.pack(len(payload))
        out += payload
    return bytes(out)


def decode(data: bytes) -> tuple[Piece, tuple[bytes, ...]]:
    """Parse container bytes back into a validated piece and its payloads."""
    if len(data) < 4:
        raise TruncatedFile("file shorter than the magic")
    if data[:4] != MAGIC:
        raise BadMagic("expected {!r}, found {!r}".format(MAGIC, bytes(data[:4])))
    if len(data) < _HEAD.size:
        raise TruncatedFile("file ends inside the header")
    _, version, manifest_len = _HEAD.unpack_from(data, 0)
    if version != VERSION:
        raise UnsupportedVersion("container version {}".format(version))
    offset = _HEAD.size
    if manifest_len > len(data) - offset:
        raise TruncatedFile("manifest length {} exceeds remaining bytes".format(manifest_len))
    try:
        manifest = json.loads(data[offset:offset + manifest_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ManifestSyntax("manifest is not valid JSON: {}".format(e)) from e
    offset += manifest_len
    piece = piece_from_manifest(manifest)

    if len(data) - offset < _U16.size:
        raise TruncatedFile("file ends before the track count")
    (count,) = _U16.unpack_from(data, offset)
    offset += _U16.size
    if count != len(piece.tracks):
        raise PayloadCountMismatch(
            "container holds {} payloads, manifest declares {} tracks".format(count, len(piece.tracks))
        )
    payloads = []
    for i in range(count):
        if len(data) - offset < _U32.size:
            raise TruncatedFile("file ends before payload {} length".format(i))
        (size,) = _U32.unpack_from(data, offset)
        offset += _U32.size
        if size > len(data) - offset:
            raise TruncatedFile("payload {} length {} exceeds remaining bytes".format(i, size))
        payloads.append(bytes(data[offset:offset + size]))
        offset += size
    if offset != len(data):
        raise TrailingData("{} bytes after the last payload".format(len(data) - offset))

    report = validate_piece(piece)
    if not report.ok:
        raise ManifestInvalid(report)
    _check_payloads(piece, payloads, PayloadFormatMismatch)
    return piece, tuple(payloads)
