"""Exact word algebra in finitely generated free groups.

Words are stored as tuples of (generator index, sign) letters, always
freely reduced.  Generator indices are 1-based; rank 0 (the trivial
group) is allowed.  All values are immutable and all operations pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]  # (generator index >= 1, sign in {+1, -1})


class WordError(ValueError):
    """Raised for malformed letters, rank mismatches, or parse errors."""


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, sign in letters:
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word in the free group of the given rank."""

    letters: tuple[Letter, ...]
    rank: int

    def __post_init__(self) -> None:
        for gen, sign in self.letters:
            if not 1 <= gen <= self.rank:
                raise WordError(f"generator index {gen} out of range for rank {self.rank}")
            if sign not in (-1, 1):
                raise WordError(f"letter sign must be +1 or -1, got {sign}")
        if self.letters != _free_reduce(self.letters):
            raise WordError("letters are not freely reduced; use reduce()")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise WordError("cannot multiply words of different rank")
        return Word(_free_reduce(self.letters + other.letters), self.rank)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)), self.rank)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        result = identity(self.rank)
        for _ in range(n):
            result = result * self
        return result

    def conjugate_by(self, h: "Word") -> "Word":
        """h * self * h^-1."""
        return h * self * h.inverse()

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self)


def identity(rank: int) -> Word:
    return Word((), rank)


def generator(i: int, rank: int, sign: int = 1) -> Word:
    return Word(((i, sign),), rank)


def reduce(raw: Sequence[Letter], rank: int) -> Word:
    """Freely reduce an arbitrary letter sequence.  Idempotent."""
    for gen, sign in raw:
        if not 1 <= gen <= rank:
            raise WordError(f"generator index {gen} out of range for rank {rank}")
    return Word(_free_reduce(raw), rank)


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    """Return (core, conjugator) with w = conjugator * core * conjugator^-1.

    The core is cyclically reduced: its first and last letters do not
    cancel each other.
    """
    letters = list(w.letters)
    prefix: list[Letter] = []
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        prefix.append(letters[0])
        letters = letters[1:-1]
    return Word(tuple(letters), w.rank), Word(tuple(prefix), w.rank)


def is_cyclically_reduced(w: Word) -> bool:
    core, _ = cyclically_reduce(w)
    return core.letters == w.letters


def conjugate_in_free(u: Word, v: Word) -> bool:
    """Decide conjugacy in the free group.

    Both words are cyclically reduced; they are conjugate iff one
    cyclic core is a rotation of the other (tested by doubling).
    """
    if u.rank != v.rank:
        raise WordError("conjugacy test requires words of equal rank")
    cu, _ = cyclically_reduce(u)
    cv, _ = cyclically_reduce(v)
    if len(cu) != len(cv):
        return False
    if not cu.letters:
        return True
    doubled = cu.letters + cu.letters
    n = len(cv.letters)
    return any(doubled[i : i + n] == cv.letters for i in range(n))


def exponent_sum(w: Word, i: int) -> int:
    """Signed count of occurrences of generator i; additive under products."""
    if not 1 <= i <= w.rank:
        raise WordError(f"generator index {i} out of range for rank {w.rank}")
    return sum(s for g, s in w.letters if g == i)


def primitive_root(w: Word) -> Word:
    """Primitive root of the cyclic core of w.

    Returns the shortest cyclic word r such that the core of w is a
    positive power of r.  The identity is its own root.
    """
    core, _ = cyclically_reduce(w)
    n = len(core.letters)
    for d in range(1, n + 1):
        if n % d:
            continue
        candidate = core.letters[:d]
        if candidate * (n // d) == core.letters:
            return Word(candidate, w.rank)
    return core


# ---------------------------------------------------------------------------
# Text format: "a b^-1 a^2", with commutator shorthand "[u,v]" = u v u^-1 v^-1.

_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\^-?\d+|[\[\],])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise WordError(f"unexpected character at position {pos}: {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], alphabet: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.index = {name: i + 1 for i, name in enumerate(alphabet)}
        self.rank = len(alphabet)

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise WordError("unexpected end of word")
        self.pos += 1
        return tok

    def parse_word(self) -> Word:
        w = identity(self.rank)
        while self.peek() is not None and self.peek() not in (",", "]"):
            w = w * self.parse_term()
        return w

    def parse_term(self) -> Word:
        tok = self.next()
        if tok == "[":
            u = self.parse_word()
            if self.next() != ",":
                raise WordError("expected ',' in commutator")
            v = self.parse_word()
            if self.next() != "]":
                raise WordError("expected ']' closing commutator")
            atom = commutator(u, v)
        else:
            if tok not in self.index:
                raise WordError(f"unknown generator {tok!r}")
            atom = generator(self.index[tok], self.rank)
        if self.peek() is not None and self.peek().startswith("^"):
            exp = int(self.next()[1:])
            atom = atom**exp
        return atom


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse a word like "x y x^-1 y^-2" or "[a,[b^-1,c]]" over named generators."""
    parser = _Parser(_tokenize(text), alphabet)
    w = parser.parse_word()
    if parser.peek() is not None:
        raise WordError(f"trailing token {parser.peek()!r}")
    return w


_DEFAULT_ALPHABET = tuple("abcdefghijklmnopqrstuvwxyz")


def format_word(w: Word, alphabet: Sequence[str] | None = None) -> str:
    """Render a word as "a b^-1 a^2", merging adjacent equal letters."""
    if alphabet is None:
        alphabet = _DEFAULT_ALPHABET[: w.rank] if w.rank <= 26 else tuple(f"x{i}" for i in range(1, w.rank + 1))
    if w.is_identity:
        return "1"
    runs: list[tuple[int, int]] = []
    for g, s in w.letters:
        if runs and runs[-1][0] == g and (runs[-1][1] > 0) == (s > 0):
            runs[-1] = (g, runs[-1][1] + s)
        else:
            runs.append((g, s))
    parts = []
    for g, e in runs:
        name = alphabet[g - 1]
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)
