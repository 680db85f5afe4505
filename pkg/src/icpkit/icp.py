"""The Identity Correspondence Problem.

An instance is a finite list of word pairs ``(s_i, t_i)``; a solution is a
nonempty index sequence whose pairwise product reduces to ``(eps, eps)``.
Indices are 1-based.

Instances built from a restricted PCP instance carry tags (which of the
sixteen sets ``W_0..W_15`` each pair belongs to).  The analysis helpers in the
second half of this module (parts, cycles, zeta) only make sense for such
tagged instances.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from ._frames import FrameBound
from .errors import DomainError, IndexOutOfRange, MalformedPart
from .freegroup import EPSILON, Alphabet, GroupWord, SignedLetter, concat

log = logging.getLogger(__name__)

__all__ = [
    "WordPair",
    "IcpInstance",
    "PairTag",
    "TaggedIcpInstance",
    "PartType",
    "Part",
    "PartDecomposition",
    "concat_pairs",
    "eval_product",
    "verify_icp",
    "search_identity_bounded",
    "classify_part",
    "decompose_by_parts",
    "is_cycle",
    "split_cycles",
    "part_zetas",
    "zeta",
    "zeta_of_value",
]


class WordPair(NamedTuple):
    s: GroupWord
    t: GroupWord

    def is_identity(self) -> bool:
        return not self.s and not self.t

    def __str__(self):
        return f"({self.s or 'ε'}, {self.t or 'ε'})"


IDENTITY_PAIR = WordPair(EPSILON, EPSILON)


def concat_pairs(p: WordPair, q: WordPair) -> WordPair:
    return WordPair(concat(p.s, q.s), concat(p.t, q.t))


@dataclass(frozen=True)
class IcpInstance:
    pairs: tuple[WordPair, ...]
    alphabet: Alphabet

    def __post_init__(self):
        pairs = tuple(WordPair(*p) for p in self.pairs)
        if not pairs:
            raise DomainError("an ICP instance needs at least one pair")
        known = set(self.alphabet)
        for k, p in enumerate(pairs, 1):
            stray = (p.s.bases() | p.t.bases()) - known
            if stray:
                raise DomainError(f"pair {k} uses letters {sorted(stray)} outside the alphabet")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_pairs(cls, pairs, alphabet: Alphabet | None = None) -> IcpInstance:
        """Build an instance, inferring the alphabet in order of first use if omitted."""
        pairs = tuple(WordPair(*p) for p in pairs)
        if alphabet is None:
            names: dict[str, None] = {}
            for p in pairs:
                for w in p:
                    for x in w:
                        names.setdefault(x.base)
            alphabet = Alphabet(tuple(names))
        return cls(pairs, alphabet)

    def __len__(self):
        return len(self.pairs)

    def pair(self, k: int) -> WordPair:
        if not 1 <= k <= len(self.pairs):
            raise IndexOutOfRange(f"index {k} outside 1..{len(self.pairs)}")
        return self.pairs[k - 1]


class PairTag(NamedTuple):
    set_index: int
    tile_index: Optional[int] = None


@dataclass(frozen=True)
class TaggedIcpInstance:
    """An ICP instance whose pairs are labelled with their set ``W_i``.

    `formal` optionally keeps, per pair, the unreduced letter sequences the
    pair was assembled from; it is only used for structural checks.
    """

    inner: IcpInstance
    tags: tuple[PairTag, ...]
    formal: Optional[tuple[tuple[tuple[SignedLetter, ...], tuple[SignedLetter, ...]], ...]] = field(
        default=None, compare=False
    )

    def __post_init__(self):
        tags = tuple(PairTag(*t) for t in self.tags)
        if len(tags) != len(self.inner.pairs):
            raise DomainError(f"{len(tags)} tags for {len(self.inner.pairs)} pairs")
        counts: dict[int, int] = {}
        for tag in tags:
            if not 0 <= tag.set_index <= 15:
                raise DomainError(f"set index {tag.set_index} outside 0..15")
            counts[tag.set_index] = counts.get(tag.set_index, 0) + 1
        for s, c in counts.items():
            if s % 2 == 0 and c != 1:
                raise DomainError(f"even set W_{s} must be a singleton, found {c} pairs")
        object.__setattr__(self, "tags", tags)

    @property
    def pairs(self):
        return self.inner.pairs

    @property
    def alphabet(self):
        return self.inner.alphabet

    def __len__(self):
        return len(self.inner.pairs)

    def pair(self, k: int) -> WordPair:
        return self.inner.pair(k)

    def tag(self, k: int) -> PairTag:
        if not 1 <= k <= len(self.tags):
            raise IndexOutOfRange(f"index {k} outside 1..{len(self.tags)}")
        return self.tags[k - 1]

    def index_of(self, set_index: int, tile_index: int | None = None) -> int:
        """1-based position of the pair tagged (set_index, tile_index)."""
        want = PairTag(set_index, tile_index if set_index % 2 else None)
        for k, tag in enumerate(self.tags, 1):
            if tag == want:
                return k
        raise IndexOutOfRange(f"no pair tagged {tuple(want)}")


def _as_icp(inst) -> IcpInstance:
    return inst.inner if isinstance(inst, TaggedIcpInstance) else inst


def eval_product(inst: IcpInstance, seq: Sequence[int]) -> WordPair:
    inst = _as_icp(inst)
    if not seq:
        raise DomainError("index sequence must be nonempty")
    out = IDENTITY_PAIR
    for k in seq:
        out = concat_pairs(out, inst.pair(k))
    return out


def verify_icp(inst: IcpInstance, seq: Sequence[int]) -> bool:
    return eval_product(inst, seq).is_identity()


# -- bounded search --------------------------------------------------------

def _encode(w: GroupWord, code: dict[str, int]) -> tuple[int, ...]:
    return tuple(-code[x.base] if x.inverted else code[x.base] for x in w)


def _mul(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    k, n = 0, min(len(u), len(v))
    while k < n and u[-1 - k] == -v[k]:
        k += 1
    if k:
        return u[: len(u) - k] + v[k:]
    return u + v


def search_identity_bounded(
    inst: IcpInstance, max_len: int, stats: dict | None = None, *, prune: bool = True
) -> tuple[int, ...] | None:
    """First identity-producing index sequence in (length, lex) order, or None.

    Breadth-first over products, deduplicated on the reduced pair value: a
    state already reached by a shorter or lex-earlier prefix is not expanded
    again.  When a coordinate is border-framed (see ``_frames``), prefixes
    whose remaining budget cannot possibly cancel the open frames are dropped;
    the bound is admissible, so the witness is the same one plain enumeration
    would return.
    """
    inst = _as_icp(inst)
    if max_len < 1:
        raise DomainError("max_len must be >= 1")
    code = {name: i for i, name in enumerate(inst.alphabet, 1)}
    gens = [(_encode(p.s, code), _encode(p.t, code)) for p in inst.pairs]
    frame_bounds = [FrameBound([g[0] for g in gens]), FrameBound([g[1] for g in gens])]
    frame_bounds = [(i, b) for i, b in enumerate(frame_bounds) if b.ok and prune]

    root = ((), ())
    seen = {root}
    frontier = [(root, ())]
    explored = 0
    pruned = 0
    for depth in range(1, max_len + 1):
        nxt = []
        for (s, t), path in frontier:
            for k, (gs, gt) in enumerate(gens, 1):
                explored += 1
                child = (_mul(s, gs), _mul(t, gt))
                if not child[0] and not child[1]:
                    if stats is not None:
                        stats.update(states=explored, pruned=pruned, depth=depth)
                    return path + (k,)
                if child in seen or depth == max_len:
                    continue
                seen.add(child)
                if any(
                    b.lower_bound(child[i]) > max_len - depth for i, b in frame_bounds
                ):
                    pruned += 1
                    continue
                nxt.append((child, path + (k,)))
        frontier = nxt
        log.debug("depth %d: %d open states", depth, len(frontier))
        if not frontier:
            break
    if stats is not None:
        stats.update(states=explored, pruned=pruned, depth=max_len)
    return None


# -- structural analysis of tagged products ---------------------------------

class PartType(enum.Enum):
    A = 1
    B = 2
    C = 3
    D = 4


class Part(NamedTuple):
    part_type: PartType
    segment: range  # positions into the index sequence, half-open


PartDecomposition = tuple  # tuple[Part, ...]

_PART_BY_BLOCK = (PartType.A, PartType.B, PartType.C, PartType.D)


def _require_tags(inst) -> TaggedIcpInstance:
    if not isinstance(inst, TaggedIcpInstance):
        raise DomainError("structural analysis needs a tagged instance")
    return inst


def classify_part(inst: TaggedIcpInstance, pair_index: int) -> PartType:
    tag = _require_tags(inst).tag(pair_index)
    return _PART_BY_BLOCK[tag.set_index // 4]


def _check_seq(inst: TaggedIcpInstance, seq: Sequence[int]) -> None:
    for k in seq:
        inst.tag(k)


def decompose_by_parts(inst: TaggedIcpInstance, seq: Sequence[int]) -> tuple[Part, ...]:
    """Maximal runs of consecutive pairs of the same part type."""
    _require_tags(inst)
    _check_seq(inst, seq)
    parts: list[Part] = []
    start = 0
    for pos in range(1, len(seq) + 1):
        if pos == len(seq) or classify_part(inst, seq[pos]) != classify_part(inst, seq[start]):
            parts.append(Part(classify_part(inst, seq[start]), range(start, pos)))
            start = pos
    return tuple(parts)


def _match_cycle_from(trace: Sequence[int], pos: int, start: int) -> int | None:
    """Consume one full pass start, start+1, ..., start+15 (mod 16) from `pos`.

    Even sets must contribute exactly one element, odd sets any number.
    Returns the position after the pass, or None.
    """
    for p in range(16):
        s = (start + p) % 16
        if s % 2 == 0:
            if pos >= len(trace) or trace[pos] != s:
                return None
            pos += 1
        else:
            while pos < len(trace) and trace[pos] == s:
                pos += 1
    return pos


def is_cycle(inst: TaggedIcpInstance, seq: Sequence[int]) -> bool:
    _require_tags(inst)
    _check_seq(inst, seq)
    trace = [inst.tag(k).set_index for k in seq]
    if not trace:
        return False
    return any(_match_cycle_from(trace, 0, i) == len(trace) for i in range(16))


def split_cycles(inst: TaggedIcpInstance, seq: Sequence[int]) -> list[tuple[range, bool]]:
    """Greedily cut `seq` into consecutive cycles.

    Each cycle starts at the set of its first pair (or the odd set just
    before it).  A stretch that does not complete a pass is reported as a
    single non-cycle segment running to the end.
    """
    _require_tags(inst)
    _check_seq(inst, seq)
    trace = [inst.tag(k).set_index for k in seq]
    out: list[tuple[range, bool]] = []
    pos = 0
    while pos < len(trace):
        first = trace[pos]
        starts = [first] if first % 2 else [first, (first - 1) % 16]
        ends = [_match_cycle_from(trace, pos, s) for s in starts]
        ends = [e for e in ends if e is not None]
        if not ends:
            out.append((range(pos, len(trace)), False))
            break
        end = max(ends)
        out.append((range(pos, end), True))
        pos = end
    return out


def _strip_borders(w: GroupWord, borders: frozenset[str], where: str) -> GroupWord:
    letters = w.letters
    if (
        len(letters) < 2
        or letters[0].base not in borders
        or letters[0].inverted
        or letters[-1].base not in borders
        or not letters[-1].inverted
    ):
        raise MalformedPart(f"{where}: expected border letters around {w or 'ε'}")
    return GroupWord._trusted(letters[1:-1])


def _border_letters(inst: TaggedIcpInstance) -> frozenset[str]:
    names = set()
    for p in inst.pairs:
        for w in p:
            if w:
                names.add(w[0].base)
                names.add(w[-1].base)
    return frozenset(names)


class PartZeta(NamedTuple):
    part: Part
    value: Optional[int]
    error: Optional[str] = None


def part_zetas(inst: TaggedIcpInstance, seq: Sequence[int]) -> list[PartZeta]:
    """Per-part contribution to zeta; malformed parts carry an error instead."""
    inst = _require_tags(inst)
    borders = _border_letters(inst)
    out = []
    for part in decompose_by_parts(inst, seq):
        value = eval_product(inst, [seq[i] for i in part.segment])
        try:
            inner = [
                _strip_borders(w, borders, f"part {part.part_type.name} at {part.segment.start}")
                for w in value
            ]
        except MalformedPart as exc:
            out.append(PartZeta(part, None, str(exc)))
            continue
        out.append(PartZeta(part, sum(1 for w in inner if w)))
    return out


def zeta(inst: TaggedIcpInstance, seq: Sequence[int]) -> int:
    """Number of part coordinates that stay nonempty once borders are stripped."""
    total = 0
    for pz in part_zetas(inst, seq):
        if pz.error is not None:
            raise MalformedPart(pz.error)
        total += pz.value
    return total


def _alphabet_block(name: str) -> str:
    # a1, b1 -> "1"; the alphabet index is the trailing digits
    return name.lstrip("abcdefghijklmnopqrstuvwxyz")


def zeta_of_value(value: WordPair, borders: frozenset[str] | None = None) -> int:
    """Zeta read off a reduced pair value instead of an index sequence.

    Strips the outer border letters of each coordinate, then counts the
    maximal nonempty blocks of letters from one alphabet Γ_i (border letters
    inside act as separators).  An empty coordinate counts 0.  For a product of cycles that all start with
    the same element this counts the parts that survive cancellation.
    """
    if borders is None:
        borders = frozenset(f"x{i}" for i in range(1, 9))
    total = 0
    for w in value:
        if not w:
            continue
        inner = _strip_borders(w, borders, "value")
        prev = None
        for x in inner:
            block = None if x.base in borders else _alphabet_block(x.base)
            if block is not None and block != prev:
                total += 1
            prev = block
    return total
