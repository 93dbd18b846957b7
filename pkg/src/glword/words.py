"""Free-group words: parsing, printing, reduction and root extraction.

A word is stored as a tuple of nonzero integers: ``+i`` is the i-th generator
and ``-i`` its inverse.  Generators are written ``a..z`` and inverses ``A..Z``.

Grammar (whitespace is ignored)::

    word  ::= item*
    item  ::= atom ( "^" ["-"] digits )?
    atom  ::= letter | "1" | "(" word ")" | "[" word "," word "]"

``[x,y]`` expands to ``x y x^-1 y^-1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import WordSyntaxError

__all__ = [
    "Word",
    "RootDecomposition",
    "parse_word",
    "format_word",
    "free_reduce",
    "cyclic_reduction",
    "power_decompose",
    "is_proper_power",
    "random_word",
]

MAX_RANK = 26


def free_reduce(letters) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(letters) -> tuple[int, ...]:
    return tuple(-x for x in reversed(letters))


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        letters = free_reduce(self.letters)
        object.__setattr__(self, "letters", letters)
        top = max((abs(x) for x in letters), default=0)
        if top > self.rank:
            raise ValueError(f"generator {top} exceeds rank {self.rank}")

    @classmethod
    def of(cls, letters, rank: int | None = None) -> "Word":
        letters = tuple(letters)
        if rank is None:
            rank = max((abs(x) for x in letters), default=1)
        return cls(letters, rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, max(self.rank, other.rank))

    def __pow__(self, k: int) -> "Word":
        base = self.letters if k >= 0 else invert(self.letters)
        return Word(base * abs(k), self.rank)

    def inverse(self) -> "Word":
        return Word(invert(self.letters), self.rank)

    def is_trivial(self) -> bool:
        return not self.letters

    def with_rank(self, rank: int) -> "Word":
        return Word(self.letters, rank)

    def __str__(self) -> str:
        return format_word(self.letters)


@dataclass(frozen=True)
class RootDecomposition:
    root: Word
    exponent: int
    conjugator: Word

    def rebuild(self) -> Word:
        z = self.conjugator
        return z * (self.root ** self.exponent) * z.inverse()


def letter_char(x: int) -> str:
    c = chr(ord("a") + abs(x) - 1)
    return c if x > 0 else c.upper()


def format_word(letters, compress: bool = False) -> str:
    """Print letters in the input grammar; ``compress`` folds runs into powers."""
    letters = tuple(letters)
    if not letters:
        return "1"
    if not compress:
        return "".join(letter_char(x) for x in letters)
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        run = j - i
        c = letter_char(abs(letters[i]))
        if run == 1:
            parts.append(letter_char(letters[i]))
        else:
            parts.append(f"{c}^{run if letters[i] > 0 else -run}")
        i = j
    return "".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.top = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek()
            raise WordSyntaxError(f"expected {ch!r}, got {got!r}" if got else f"expected {ch!r}, got end of input", self.pos)
        self.pos += 1

    def word(self, stops: str) -> list[int]:
        out: list[int] = []
        while True:
            ch = self.peek()
            if ch is None or ch in stops:
                return out
            out.extend(self.item())

    def item(self) -> list[int]:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            start = self.pos
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.pos += 1
            digits_at = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == digits_at:
                raise WordSyntaxError("exponent must be an integer", start)
            k = sign * int(self.text[digits_at:self.pos])
            base = list(invert(base)) if k < 0 else base
            return base * abs(k)
        return base

    def atom(self) -> list[int]:
        ch = self.peek()
        at = self.pos
        if ch is None:
            raise WordSyntaxError("unexpected end of input", at)
        if ch.isascii() and ch.isalpha():
            self.pos += 1
            g = ord(ch.lower()) - ord("a") + 1
            self.top = max(self.top, g)
            return [g if ch.islower() else -g]
        if ch == "1":
            self.pos += 1
            return []
        if ch == "(":
            self.pos += 1
            inner = self.word(")")
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            x = self.word(",]")
            self.expect(",")
            y = self.word("]")
            self.expect("]")
            return x + y + list(invert(x)) + list(invert(y))
        raise WordSyntaxError(f"unexpected character {ch!r}", at)


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse ``text`` into a reduced word.  Rank defaults to the largest generator used."""
    p = _Parser(text)
    letters = p.word("")
    if p.peek() is not None:
        raise WordSyntaxError(f"unexpected character {p.peek()!r}", p.pos)
    if rank is None:
        rank = max(p.top, 1)
    if rank < 1 or rank > MAX_RANK:
        raise ValueError(f"rank must be in 1..{MAX_RANK}")
    if p.top > rank:
        raise WordSyntaxError(f"generator {letter_char(p.top)} exceeds declared rank {rank}")
    return Word(tuple(letters), rank)


def cyclic_reduction(w: Word) -> tuple[Word, Word]:
    """Return ``(c, z)`` with ``w = z c z^-1`` and ``c`` cyclically reduced."""
    s = w.letters
    i = 0
    while 2 * i + 1 < len(s) and s[i] == -s[len(s) - 1 - i]:
        i += 1
    return Word(s[i:len(s) - i], w.rank), Word(s[:i], w.rank)


def power_decompose(w: Word) -> RootDecomposition:
    """Write ``w = z u^d z^-1`` with ``u`` cyclically reduced and not a proper power."""
    if w.is_trivial():
        raise ValueError("the trivial word has no root decomposition")
    c, z = cyclic_reduction(w)
    s = c.letters
    n = len(s)
    for p in range(1, n + 1):
        if n % p == 0 and s == s[:p] * (n // p):
            return RootDecomposition(Word(s[:p], w.rank), n // p, z)
    raise AssertionError("unreachable")


def is_proper_power(w: Word) -> bool:
    return not w.is_trivial() and power_decompose(w).exponent >= 2


def random_word(length: int, rank: int, rng: random.Random) -> Word:
    """Uniform random reduced word of the given length."""
    letters: list[int] = []
    choices = [g for i in range(1, rank + 1) for g in (i, -i)]
    while len(letters) < length:
        x = rng.choice(choices)
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return Word(tuple(letters), rank)
