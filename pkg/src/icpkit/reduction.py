"""Restricted PCP to ICP: the sixteen-set encoding and its witness translation.

Each restricted PCP instance with n tiles becomes 8(n-1) word pairs over the
16-letter group alphabet ``a1 b1 a2 b2 a3 b3 a4 b4 x1 .. x8``.  The instance
is encoded four times, once per alphabet ``{a_i, b_i}``, and every word is
framed by border letters ``x_k ... x_l^-1`` that force the sets to be used in
cyclic order.  The table, per block i = 1..4 with base set 4(i-1):

    set  left  right  first word          second word
    +0   p     q      v_i1^-1 u_i1        b_i
    +1   q     q      u_ij                phi_i(j)       j = 2..n-1
    +2   q     r      u_in v_in^-1        b_i^-1
    +3   r     r      v_ij^-1             psi_i(j)       j = 2..n-1

with (p, q, r) = (x_{2i-2}, x_{2i-1}, x_{2i}) and x_0 read as x_8.
"""
from __future__ import annotations

from typing import Sequence

from .errors import DomainError, NotASolution
from .freegroup import (
    Alphabet,
    GroupWord,
    LetterMap,
    SignedLetter,
    apply_map,
    invert,
    reduce,
    word,
)
from .icp import IcpInstance, PairTag, TaggedIcpInstance, WordPair, verify_icp
from .pcp import SIGMA, RestrictedPcpInstance, verify_restricted

__all__ = [
    "REDUCTION_ALPHABET",
    "BINARY_ALPHABET",
    "delta",
    "phi",
    "psi",
    "build_icp_instance",
    "translate_witness",
    "sigma_map",
    "sigma_collapse",
    "expected_part_shape",
]

REDUCTION_ALPHABET = Alphabet(
    ("a1", "b1", "a2", "b2", "a3", "b3", "a4", "b4") + tuple(f"x{j}" for j in range(1, 9))
)
BINARY_ALPHABET = Alphabet(("a", "b"))


def _check_block(i: int) -> None:
    if not 1 <= i <= 4:
        raise DomainError(f"block index {i} outside 1..4")


def delta(i: int) -> LetterMap:
    """Renaming a -> a_i, b -> b_i."""
    _check_block(i)
    return LetterMap({"a": word(f"a{i}"), "b": word(f"b{i}")}, SIGMA)


def _phi_letters(i: int, j: int, inverted: bool) -> tuple[SignedLetter, ...]:
    _check_block(i)
    if isinstance(j, bool) or not isinstance(j, int) or j < 1:
        raise DomainError(f"index {j!r} must be a positive integer")
    return (SignedLetter(f"a{i}", inverted),) * j + (SignedLetter(f"b{i}", inverted),)


def phi(i: int, j: int) -> GroupWord:
    """a_i^j b_i"""
    return GroupWord(_phi_letters(i, j, False))


def psi(i: int, j: int) -> GroupWord:
    """(a_i^-1)^j b_i^-1"""
    return GroupWord(_phi_letters(i, j, True))


def _x(k: int) -> SignedLetter:
    return SignedLetter(f"x{8 if k == 0 else k}")


def build_icp_instance(P: RestrictedPcpInstance) -> TaggedIcpInstance:
    """The 8(n-1) tagged pairs encoding `P`.

    Pairs are ordered by set index and, inside an odd set, by tile index.
    The unreduced letter sequences are kept in ``formal``.
    """
    if not isinstance(P, RestrictedPcpInstance):
        raise DomainError("build_icp_instance expects a RestrictedPcpInstance")
    n = P.n
    if n < 3:
        raise DomainError(f"need n >= 3 tiles, got {n}")
    if set(P.inner.alphabet) != set(SIGMA):
        raise DomainError("the encoding is defined for PCP instances over {a, b}")

    pairs: list[WordPair] = []
    tags: list[PairTag] = []
    formal = []

    def add(set_index, tile, left, right, first, second):
        raw_s = (left, *first, right.inverse())
        raw_t = (left, *second, right.inverse())
        pairs.append(WordPair(reduce(raw_s), reduce(raw_t)))
        tags.append(PairTag(set_index, tile))
        formal.append((raw_s, raw_t))

    for i in range(1, 5):
        d = delta(i)
        u = {k: apply_map(d, P.inner.u(k)).letters for k in range(1, n + 1)}
        v_inv = {k: invert(apply_map(d, P.inner.v(k))).letters for k in range(1, n + 1)}
        b = SignedLetter(f"b{i}")
        p, q, r = _x(2 * i - 2), _x(2 * i - 1), _x(2 * i)
        base = 4 * (i - 1)
        add(base, None, p, q, v_inv[1] + u[1], (b,))
        for j in P.inner_indices:
            add(base + 1, j, q, q, u[j], _phi_letters(i, j, False))
        add(base + 2, None, q, r, u[n] + v_inv[n], (b.inverse(),))
        for j in P.inner_indices:
            add(base + 3, j, r, r, v_inv[j], _phi_letters(i, j, True))

    inner = IcpInstance(tuple(pairs), REDUCTION_ALPHABET)
    return TaggedIcpInstance(inner, tuple(tags), tuple(formal))


def translate_witness(P: RestrictedPcpInstance, inner_seq: Sequence[int]) -> tuple[int, ...]:
    """ICP solution w_0 w_1 ... w_15 built from a restricted PCP solution.

    Even sets contribute their single pair; sets 1 and 5 (mod 4 == 1) use the
    tiles in order, sets 3 and 7 (mod 4 == 3) use them reversed.
    """
    inner_seq = tuple(inner_seq)
    if not verify_restricted(P, inner_seq):
        raise NotASolution(f"{list(inner_seq)} is not a solution of the restricted PCP instance")
    W = build_icp_instance(P)
    out: list[int] = []
    for s in range(16):
        if s % 2 == 0:
            out.append(W.index_of(s))
        elif s % 4 == 1:
            out.extend(W.index_of(s, j) for j in inner_seq)
        else:
            out.extend(W.index_of(s, j) for j in reversed(inner_seq))
    result = tuple(out)
    if not verify_icp(W, result):
        raise AssertionError("translated witness rejected; the encoding is broken")
    return result


def sigma_map(source: Alphabet) -> LetterMap:
    """y_i -> a^i b a^-i, where y_i is the i-th letter of `source`."""
    images = {}
    for i, name in enumerate(source, 1):
        images[name] = GroupWord(
            (SignedLetter("a"),) * i + (SignedLetter("b"),) + (SignedLetter("a", True),) * i
        )
    return LetterMap(images, source)


def sigma_collapse(inst: IcpInstance) -> IcpInstance:
    """Rewrite an instance over the binary group alphabet {a, b}.

    The letter order of the instance's alphabet fixes which letter is y_1,
    y_2, ...; for reduction output that is ``REDUCTION_ALPHABET``.
    """
    if isinstance(inst, TaggedIcpInstance):
        inst = inst.inner
    m = sigma_map(inst.alphabet)
    pairs = tuple(WordPair(apply_map(m, p.s), apply_map(m, p.t)) for p in inst.pairs)
    return IcpInstance(pairs, BINARY_ALPHABET)


def expected_part_shape(block: int, left: int, right: int, tiles: Sequence[int]) -> tuple[SignedLetter, ...]:
    """x_left b phi(z_1) .. phi(z_k) b^-1 psi(z_k) .. psi(z_1) x_right^-1, unreduced.

    The second-word shape a correctly ordered part must have when its middle
    cancels completely.
    """
    b = SignedLetter(f"b{block}")
    out = [_x(left), b]
    for z in tiles:
        out.extend(_phi_letters(block, z, False))
    out.append(b.inverse())
    for z in reversed(tiles):
        out.extend(_phi_letters(block, z, True))
    out.append(_x(right).inverse())
    return tuple(out)
