"""Reduced words in finitely generated free groups.

Letters are flat names such as ``a``, ``b1`` or ``x7``.  A word is kept in
free-group normal form at all times, so the identity test is an emptiness
check.

Textual syntax: whitespace separated tokens, each a letter name optionally
followed by ``^-1``::

    >>> str(parse_word("a1 b1 b1^-1 x8"))
    'a1 x8'
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, TypeVar

from .errors import ParseError, UnknownLetter

__all__ = [
    "SignedLetter",
    "GroupWord",
    "Alphabet",
    "LetterMap",
    "EPSILON",
    "check_letter",
    "reduce",
    "concat",
    "invert",
    "apply_map",
    "cyclic_permutations",
    "parse_word",
    "format_word",
    "word",
]

_LETTER_RE = re.compile(r"[a-z][a-z0-9]*\Z")
INVERSE_SUFFIX = "^-1"


def check_letter(name: str) -> str:
    if not isinstance(name, str) or not _LETTER_RE.match(name):
        raise ValueError(f"invalid letter name {name!r}")
    return name


class SignedLetter(NamedTuple):
    base: str
    inverted: bool = False

    def inverse(self) -> SignedLetter:
        return SignedLetter(self.base, not self.inverted)

    def __str__(self):
        return self.base + INVERSE_SUFFIX if self.inverted else self.base


def _cancels(x: SignedLetter, y: SignedLetter) -> bool:
    return x.base == y.base and x.inverted != y.inverted


def _reduce_letters(raw: Iterable[SignedLetter]) -> tuple[SignedLetter, ...]:
    stack: list[SignedLetter] = []
    for x in raw:
        if stack and _cancels(stack[-1], x):
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class GroupWord:
    """An element of a free group, stored as a reduced tuple of signed letters."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[SignedLetter] = ()):
        raw = []
        for x in letters:
            if not isinstance(x, SignedLetter):
                x = SignedLetter(*x)
            check_letter(x.base)
            raw.append(x)
        object.__setattr__(self, "letters", _reduce_letters(raw))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, letters: tuple[SignedLetter, ...]) -> GroupWord:
        # caller guarantees `letters` is already reduced and validated
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "_hash", None)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("GroupWord is immutable")

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[SignedLetter]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        if isinstance(other, GroupWord):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.letters))
        return self._hash

    def __mul__(self, other: GroupWord) -> GroupWord:
        return concat(self, other)

    def __pow__(self, k: int) -> GroupWord:
        if k < 0:
            return invert(self) ** (-k)
        out = EPSILON
        for _ in range(k):
            out = concat(out, self)
        return out

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"GroupWord({str(self)!r})"

    def inverse(self) -> GroupWord:
        return invert(self)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def bases(self) -> set[str]:
        return {x.base for x in self.letters}

    def is_positive(self) -> bool:
        """True if no letter is inverted (a plain word over the alphabet)."""
        return not any(x.inverted for x in self.letters)

    @classmethod
    def parse(cls, text: str) -> GroupWord:
        return parse_word(text)


EPSILON = GroupWord._trusted(())


def reduce(raw: Iterable[SignedLetter]) -> GroupWord:
    """Free-group normal form of a raw letter sequence (linear-time stack pass)."""
    return GroupWord(raw)


def concat(u: GroupWord, v: GroupWord) -> GroupWord:
    a, b = u.letters, v.letters
    k, n = 0, min(len(a), len(b))
    while k < n and _cancels(a[-1 - k], b[k]):
        k += 1
    if k == 0:
        return GroupWord._trusted(a + b)
    return GroupWord._trusted(a[: len(a) - k] + b[k:])


def invert(w: GroupWord) -> GroupWord:
    return GroupWord._trusted(tuple(x.inverse() for x in reversed(w.letters)))


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of letter names."""

    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        for name in letters:
            check_letter(name)
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in alphabet {letters}")
        object.__setattr__(self, "letters", letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __contains__(self, name):
        return name in self.letters

    def index(self, name: str) -> int:
        return self.letters.index(name)

    def __str__(self):
        return " ".join(self.letters)


@dataclass(frozen=True)
class LetterMap:
    """A homomorphism given by the images of positive letters.

    The image of ``x^-1`` is the inverse of the image of ``x``.
    """

    images: Mapping[str, GroupWord]
    source: Alphabet = field(default=None)

    def __post_init__(self):
        images = dict(self.images)
        source = self.source if self.source is not None else Alphabet(tuple(images))
        missing = [x for x in source if x not in images]
        if missing:
            raise ValueError(f"letter map is not total on its source; missing {missing}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "source", source)

    def __call__(self, w: GroupWord) -> GroupWord:
        return apply_map(self, w)


def apply_map(m: LetterMap, w: GroupWord) -> GroupWord:
    out: list[SignedLetter] = []
    for x in w:
        if x.base not in m.source:
            raise UnknownLetter(f"letter {x.base!r} is outside the map's source alphabet")
        image = m.images[x.base]
        out.extend(invert(image) if x.inverted else image)
    return reduce(out)


T = TypeVar("T")


def cyclic_permutations(seq: Sequence[T]) -> list[list[T]]:
    items = list(seq)
    if not items:
        return [[]]
    return [items[i:] + items[:i] for i in range(len(items))]


def parse_word(text: str, *, line: int | None = None, column: int = 1) -> GroupWord:
    """Parse the textual word syntax; `line`/`column` only decorate errors."""
    letters = []
    for m in re.finditer(r"\S+", text):
        token = m.group()
        inverted = token.endswith(INVERSE_SUFFIX)
        name = token[: -len(INVERSE_SUFFIX)] if inverted else token
        if not _LETTER_RE.match(name):
            raise ParseError(f"bad word token {token!r}", line, column + m.start())
        letters.append(SignedLetter(name, inverted))
    return reduce(letters)


def format_word(w: GroupWord) -> str:
    return " ".join(str(x) for x in w)


def word(text: str = "") -> GroupWord:
    """Shorthand constructor: ``word("a b^-1")``."""
    return parse_word(text)
