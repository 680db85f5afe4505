"""Line-oriented text documents for instances and witnesses.

Instance document::

    format: 1
    kind: restricted-pcp          # pcp | restricted-pcp | icp | tagged-icp
    alphabet: a b
    meta: source hand-made        # zero or more, free-form ``key value``
    pair: a | a b                 # one per pair, words in the word syntax
    tag: 0 -                      # tagged-icp only: set index, tile index or -

Witness document::

    format: 1
    kind: witness
    target: icp                   # pcp | restricted-pcp | icp
    status: found                 # found | absent
    indices: 1 2
    result: a | a                 # optional
    meta: states 12

Serialization is canonical (fixed line order, single spaces), so a parsed
canonical document serializes back to the same bytes.  Blank lines and lines
starting with ``#`` are skipped by the parser.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, ParseError
from .freegroup import Alphabet, GroupWord, format_word, parse_word
from .icp import IcpInstance, PairTag, TaggedIcpInstance, WordPair
from .pcp import PcpInstance, RestrictedPcpInstance

__all__ = [
    "FORMAT_VERSION",
    "INSTANCE_KINDS",
    "WITNESS_TARGETS",
    "InstanceDocument",
    "WitnessDocument",
    "parse_document",
    "parse_instance_document",
    "parse_witness_document",
]

FORMAT_VERSION = "1"
INSTANCE_KINDS = ("pcp", "restricted-pcp", "icp", "tagged-icp")
WITNESS_TARGETS = ("pcp", "restricted-pcp", "icp")


def _format_pair(s: GroupWord, t: GroupWord) -> str:
    return " ".join(x for x in (format_word(s), "|", format_word(t)) if x)


@dataclass
class InstanceDocument:
    kind: str
    alphabet: tuple[str, ...]
    pairs: list[tuple[GroupWord, GroupWord]]
    tags: Optional[list[PairTag]] = None
    meta: dict[str, str] = field(default_factory=dict)

    def serialize(self) -> str:
        lines = [f"format: {FORMAT_VERSION}", f"kind: {self.kind}", f"alphabet: {' '.join(self.alphabet)}"]
        lines += [f"meta: {k} {v}".rstrip() for k, v in self.meta.items()]
        lines += [f"pair: {_format_pair(s, t)}" for s, t in self.pairs]
        for tag in self.tags or ():
            tile = "-" if tag.tile_index is None else str(tag.tile_index)
            lines.append(f"tag: {tag.set_index} {tile}")
        return "\n".join(lines) + "\n"

    def to_instance(self):
        """The library object this document describes."""
        try:
            alphabet = Alphabet(self.alphabet)
            if self.kind == "pcp":
                return PcpInstance(tuple(self.pairs), alphabet)
            if self.kind == "restricted-pcp":
                return RestrictedPcpInstance(PcpInstance(tuple(self.pairs), alphabet))
            inner = IcpInstance(tuple(WordPair(s, t) for s, t in self.pairs), alphabet)
            if self.kind == "icp":
                return inner
            if self.tags is None:
                raise DomainError("tagged-icp document has no tag lines")
            return TaggedIcpInstance(inner, tuple(self.tags))
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(str(exc)) from exc

    @classmethod
    def from_instance(cls, inst, meta: dict[str, str] | None = None) -> InstanceDocument:
        meta = dict(meta or {})
        if isinstance(inst, RestrictedPcpInstance):
            return cls("restricted-pcp", inst.inner.alphabet.letters, list(inst.pairs), None, meta)
        if isinstance(inst, PcpInstance):
            return cls("pcp", inst.alphabet.letters, list(inst.pairs), None, meta)
        if isinstance(inst, TaggedIcpInstance):
            return cls("tagged-icp", inst.alphabet.letters, [tuple(p) for p in inst.pairs], list(inst.tags), meta)
        if isinstance(inst, IcpInstance):
            return cls("icp", inst.alphabet.letters, [tuple(p) for p in inst.pairs], None, meta)
        raise TypeError(f"cannot serialize {type(inst).__name__}")


@dataclass
class WitnessDocument:
    target: str
    indices: Optional[tuple[int, ...]]  # None documents an absent witness
    result: Optional[tuple[GroupWord, GroupWord]] = None
    meta: dict[str, str] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.indices is not None

    def serialize(self) -> str:
        lines = [
            f"format: {FORMAT_VERSION}",
            "kind: witness",
            f"target: {self.target}",
            f"status: {'found' if self.found else 'absent'}",
        ]
        if self.found:
            lines.append(f"indices: {' '.join(map(str, self.indices))}".rstrip())
        if self.result is not None:
            lines.append(f"result: {_format_pair(*self.result)}")
        lines += [f"meta: {k} {v}".rstrip() for k, v in self.meta.items()]
        return "\n".join(lines) + "\n"


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = raw.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", lineno, 1)
        key = key.strip()
        col = len(raw) - len(raw.lstrip()) + len(key) + 2
        lead = len(value) - len(value.lstrip())
        yield lineno, key, value.strip(), col + lead


def _parse_pair(value: str, lineno: int, col: int) -> tuple[GroupWord, GroupWord]:
    if value.count("|") != 1:
        raise ParseError("pair needs exactly one '|' between its two words", lineno, col)
    left, right = value.split("|")
    return (
        parse_word(left, line=lineno, column=col),
        parse_word(right, line=lineno, column=col + len(left) + 1),
    )


def _parse_int(token: str, lineno: int, col: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno, col) from None


def _parse_meta(value: str, meta: dict, lineno: int, col: int) -> None:
    key, _, rest = value.partition(" ")
    if not key:
        raise ParseError("empty meta key", lineno, col)
    meta[key] = rest.strip()


def parse_document(text: str):
    """Parse either document type, dispatching on the ``kind`` line."""
    entries = list(_lines(text))
    if not entries or entries[0][1] != "format":
        raise ParseError("document must start with 'format:'", entries[0][0] if entries else 1, 1)
    lineno, _, version, col = entries[0]
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version!r}", lineno, col)
    if len(entries) < 2 or entries[1][1] != "kind":
        raise ParseError("second entry must be 'kind:'", entries[1][0] if len(entries) > 1 else lineno, 1)
    kind = entries[1][2]
    if kind == "witness":
        return _parse_witness(entries[2:])
    if kind in INSTANCE_KINDS:
        return _parse_instance(kind, entries[2:])
    raise ParseError(f"unknown document kind {kind!r}", entries[1][0], entries[1][3])


def _parse_instance(kind: str, entries) -> InstanceDocument:
    alphabet = None
    pairs, tags, meta = [], [], {}
    for lineno, key, value, col in entries:
        if key == "alphabet":
            alphabet = tuple(value.split())
        elif key == "meta":
            _parse_meta(value, meta, lineno, col)
        elif key == "pair":
            pairs.append(_parse_pair(value, lineno, col))
        elif key == "tag":
            fields = value.split()
            if len(fields) != 2:
                raise ParseError("tag needs '<setIndex> <tileIndex|->'", lineno, col)
            set_index = _parse_int(fields[0], lineno, col)
            tile = None if fields[1] == "-" else _parse_int(fields[1], lineno, col + len(fields[0]) + 1)
            tags.append(PairTag(set_index, tile))
        else:
            raise ParseError(f"unexpected key {key!r} in instance document", lineno, 1)
    if alphabet is None:
        raise ParseError("missing 'alphabet:' line", entries[-1][0] if entries else 1, 1)
    if tags and kind != "tagged-icp":
        raise ParseError(f"tag lines are only allowed in tagged-icp documents, not {kind}", 1, 1)
    return InstanceDocument(kind, alphabet, pairs, tags if kind == "tagged-icp" else None, meta)


def _parse_witness(entries) -> WitnessDocument:
    target = status = None
    indices: Optional[tuple[int, ...]] = None
    result = None
    meta: dict[str, str] = {}
    for lineno, key, value, col in entries:
        if key == "target":
            if value not in WITNESS_TARGETS:
                raise ParseError(f"unknown witness target {value!r}", lineno, col)
            target = value
        elif key == "status":
            if value not in ("found", "absent"):
                raise ParseError(f"status must be found or absent, got {value!r}", lineno, col)
            status = value
        elif key == "indices":
            indices = tuple(_parse_int(tok, lineno, col) for tok in value.split())
        elif key == "result":
            result = _parse_pair(value, lineno, col)
        elif key == "meta":
            _parse_meta(value, meta, lineno, col)
        else:
            raise ParseError(f"unexpected key {key!r} in witness document", lineno, 1)
    if target is None or status is None:
        raise ParseError("witness needs 'target:' and 'status:' lines", 1, 1)
    if status == "found":
        if indices is None:
            raise ParseError("found witness without 'indices:'", 1, 1)
        if not indices and target != "restricted-pcp":
            raise ParseError("witness indices must be nonempty", 1, 1)
    else:
        indices = None
    return WitnessDocument(target, indices, result, meta)


def parse_instance_document(text: str) -> InstanceDocument:
    doc = parse_document(text)
    if not isinstance(doc, InstanceDocument):
        raise ParseError("expected an instance document, got a witness", 1, 1)
    return doc


def parse_witness_document(text: str) -> WitnessDocument:
    doc = parse_document(text)
    if not isinstance(doc, WitnessDocument):
        raise ParseError("expected a witness document", 1, 1)
    return doc
