"""Post's Correspondence Problem and its restricted (forced endpoints) variant.

Tiles are numbered from 1.  In the restricted variant tile 1 is always
first, tile n always last, and only tiles 2..n-1 may appear in between.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, IndexOutOfRange
from .freegroup import EPSILON, Alphabet, GroupWord, concat

__all__ = [
    "SIGMA",
    "PcpInstance",
    "RestrictedPcpInstance",
    "eval_pcp",
    "verify_pcp",
    "eval_restricted",
    "verify_restricted",
    "solve_pcp_bounded",
    "solve_restricted_bounded",
]

SIGMA = Alphabet(("a", "b"))


@dataclass(frozen=True)
class PcpInstance:
    pairs: tuple[tuple[GroupWord, GroupWord], ...]
    alphabet: Alphabet = SIGMA

    def __post_init__(self):
        pairs = tuple((u, v) for u, v in self.pairs)
        if not pairs:
            raise DomainError("a PCP instance needs at least one pair")
        for k, (u, v) in enumerate(pairs, 1):
            for w in (u, v):
                if not w.is_positive():
                    raise DomainError(f"pair {k}: PCP words must be inverse-free, got {w}")
                stray = w.bases() - set(self.alphabet)
                if stray:
                    raise DomainError(f"pair {k}: letters {sorted(stray)} not in alphabet")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def u(self, k: int) -> GroupWord:
        return self.pairs[k - 1][0]

    def v(self, k: int) -> GroupWord:
        return self.pairs[k - 1][1]


@dataclass(frozen=True)
class RestrictedPcpInstance:
    inner: PcpInstance

    def __post_init__(self):
        if self.inner.n < 3:
            raise DomainError(f"restricted PCP needs n >= 3 tiles, got {self.inner.n}")

    @classmethod
    def from_pairs(cls, pairs, alphabet: Alphabet = SIGMA) -> RestrictedPcpInstance:
        return cls(PcpInstance(tuple(pairs), alphabet))

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def pairs(self):
        return self.inner.pairs

    @property
    def alphabet(self) -> Alphabet:
        return self.inner.alphabet

    @property
    def inner_indices(self) -> range:
        return range(2, self.n)


def _plain_concat(words: Sequence[GroupWord]) -> GroupWord:
    out = EPSILON
    for w in words:
        out = concat(out, w)
    return out


def eval_pcp(inst: PcpInstance, seq: Sequence[int]) -> tuple[GroupWord, GroupWord]:
    """The u-concatenation and v-concatenation of `seq`."""
    if not seq:
        raise DomainError("index sequence must be nonempty")
    for k in seq:
        if not 1 <= k <= inst.n:
            raise IndexOutOfRange(f"index {k} outside 1..{inst.n}")
    return (
        _plain_concat([inst.u(k) for k in seq]),
        _plain_concat([inst.v(k) for k in seq]),
    )


def verify_pcp(inst: PcpInstance, seq: Sequence[int]) -> bool:
    top, bottom = eval_pcp(inst, seq)
    return top == bottom


def _check_inner(inst: RestrictedPcpInstance, inner_seq: Sequence[int]) -> None:
    for k in inner_seq:
        if not 2 <= k <= inst.n - 1:
            raise IndexOutOfRange(
                f"inner index {k} outside 2..{inst.n - 1} (tiles 1 and {inst.n} are forced endpoints)"
            )


def eval_restricted(inst: RestrictedPcpInstance, inner_seq: Sequence[int]) -> tuple[GroupWord, GroupWord]:
    _check_inner(inst, inner_seq)
    return eval_pcp(inst.inner, [1, *inner_seq, inst.n])


def verify_restricted(inst: RestrictedPcpInstance, inner_seq: Sequence[int]) -> bool:
    top, bottom = eval_restricted(inst, inner_seq)
    return top == bottom


def _overhang(top: str, bottom: str):
    """Canonical mismatch state, or None if neither string prefixes the other."""
    if top.startswith(bottom):
        return ("u", top[len(bottom):])
    if bottom.startswith(top):
        return ("v", bottom[len(top):])
    return None


def _extend(state, u: str, v: str):
    side, rest = state
    if side == "u":
        return _overhang(rest + u, v)
    return _overhang(u, rest + v)


def _as_text(w: GroupWord) -> str:
    # inverse-free words only; letter names joined by a separator that cannot occur in names
    return "".join(x.base + "." for x in w)


def _bfs(tiles, allowed, start, accept, max_len, stats):
    """Breadth-first search over overhang states in (length, lex) order."""
    frontier = deque([(start, ())])
    seen = {start: 0}
    explored = 0
    for depth in range(1, max_len + 1):
        nxt = deque()
        while frontier:
            state, path = frontier.popleft()
            for k in allowed:
                explored += 1
                child = _extend(state, *tiles[k])
                if child is None:
                    continue
                seq = path + (k,)
                if accept(child):
                    if stats is not None:
                        stats["states"] = explored
                    return seq
                if child in seen:
                    continue
                seen[child] = depth
                nxt.append((child, seq))
        frontier = nxt
    if stats is not None:
        stats["states"] = explored
    return None


def solve_pcp_bounded(inst: PcpInstance, max_len: int, stats: dict | None = None) -> tuple[int, ...] | None:
    """First solution of length <= max_len in (length, lex) order, or None."""
    if max_len < 0:
        raise DomainError("max_len must be >= 0")
    tiles = {k: (_as_text(inst.u(k)), _as_text(inst.v(k))) for k in range(1, inst.n + 1)}
    return _bfs(tiles, range(1, inst.n + 1), ("u", ""), lambda s: s == ("u", ""), max_len, stats)


def solve_restricted_bounded(
    inst: RestrictedPcpInstance, max_len: int, stats: dict | None = None
) -> tuple[int, ...] | None:
    """First inner sequence of length <= max_len in (length, lex) order, or None.

    The empty inner sequence is tried first.  States that can no longer be
    completed (neither side a prefix of the other) are dropped, and states
    already reached at a shorter or lex-earlier prefix are not expanded again.
    """
    if max_len < 0:
        raise DomainError("max_len must be >= 0")
    tiles = {k: (_as_text(inst.inner.u(k)), _as_text(inst.inner.v(k))) for k in range(1, inst.n + 1)}
    start = _overhang(*tiles[1])
    last_u, last_v = tiles[inst.n]

    def accept(state):
        return _extend(state, last_u, last_v) == ("u", "")

    if start is None:
        if stats is not None:
            stats["states"] = 1
        return None
    if accept(start):
        if stats is not None:
            stats["states"] = 1
        return ()
    return _bfs(tiles, inst.inner_indices, start, accept, max_len, stats)
