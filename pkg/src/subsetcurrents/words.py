"""Freely reduced words over a fixed finite basis.

A letter is a nonzero signed integer: +i is the i-th generator, -i its
inverse.  A word is a tuple of letters with no adjacent cancelling pair.
All functions keep that invariant, so callers never see an unreduced word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import WordFormatError

Word = tuple[int, ...]

IDENTITY: Word = ()

_EXTENDED_TOKEN = re.compile(r"([xX])(\d+)")


@dataclass(frozen=True)
class Alphabet:
    """Basis of a free group of the given rank."""

    rank: int

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError(f"rank must be at least 2, got {self.rank}")

    def letters(self) -> list[int]:
        return list(range(1, self.rank + 1))

    def signed_letters(self) -> list[int]:
        """All 2N letters in the fixed order a1 < a1^-1 < a2 < ..."""
        out = []
        for i in self.letters():
            out.append(i)
            out.append(-i)
        return out

    def check_letter(self, x: int) -> None:
        if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
            raise WordFormatError(f"letter {x!r} is not valid for rank {self.rank}")


def reduce_word(letters) -> Word:
    """Freely reduce a letter sequence by a single stack scan."""
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def concat(*words: Word) -> Word:
    out: list[int] = []
    for w in words:
        out.extend(w)
    return reduce_word(out)


def invert(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w as conj * core * conj^-1 with core cyclically reduced.

    Returns (core, conj).  The core of a nonempty word is nonempty.
    """
    core = list(w)
    conj: list[int] = []
    while len(core) >= 2 and core[0] == -core[-1]:
        conj.append(core[0])
        core = core[1:-1]
    return tuple(core), tuple(conj)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse a word in compact (aBc) or extended (x1X2x3) format.

    The two formats may not be mixed inside one string.  The result is
    freely reduced.  "1" and "" both denote the identity.
    """
    s = text.strip()
    if s in ("", "1"):
        return IDENTITY
    if any(ch.isdigit() for ch in s):
        return reduce_word(_parse_extended(s, alphabet))
    return reduce_word(_parse_compact(s, alphabet))


def _parse_compact(s: str, alphabet: Alphabet) -> list[int]:
    if alphabet.rank > 26:
        raise WordFormatError(
            f"compact format covers ranks up to 26, not {alphabet.rank}; use x<i>/X<i>"
        )
    letters = []
    for ch in s:
        if "a" <= ch <= "z":
            x = ord(ch) - ord("a") + 1
        elif "A" <= ch <= "Z":
            x = -(ord(ch) - ord("A") + 1)
        else:
            raise WordFormatError(f"unknown token {ch!r} in word {s!r}")
        if abs(x) > alphabet.rank:
            raise WordFormatError(f"generator {ch!r} exceeds rank {alphabet.rank}")
        letters.append(x)
    return letters


def _parse_extended(s: str, alphabet: Alphabet) -> list[int]:
    letters = []
    pos = 0
    for m in _EXTENDED_TOKEN.finditer(s):
        if m.start() != pos:
            raise WordFormatError(f"unknown token at {s[pos:m.start()]!r} in word {s!r}")
        idx = int(m.group(2))
        if idx < 1 or idx > alphabet.rank:
            raise WordFormatError(f"generator index {idx} exceeds rank {alphabet.rank}")
        letters.append(idx if m.group(1) == "x" else -idx)
        pos = m.end()
    if pos != len(s):
        raise WordFormatError(f"unknown token at {s[pos:]!r} in word {s!r}")
    return letters


def format_word(w: Word, alphabet: Alphabet) -> str:
    """Render a word; inverse of parse_word on reduced words."""
    if not w:
        return "1"
    for x in w:
        alphabet.check_letter(x)
    if alphabet.rank <= 26:
        return "".join(
            chr(ord("a") + x - 1) if x > 0 else chr(ord("A") - x - 1) for x in w
        )
    return "".join(f"x{x}" if x > 0 else f"X{-x}" for x in w)
