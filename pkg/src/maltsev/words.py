"""Reduced words: the free group on a generator set, and the free heap as
the odd-length alternating words inside it.

A raw word reduces by deleting adjacent pairs of mutually inverse letters;
the single left-to-right stack pass below is linear and, by confluence of
cancellation, independent of deletion order.  Heap words are the words of
shape x1 x2^-1 x3 ... x(2n)^-1 x(2n+1); they are closed under the operation
mu(a,b,c) = a b^-1 c and satisfy the para-associativity law
mu(mu(a,b,c),d,e) = mu(a,mu(d,c,b),e) = mu(a,b,mu(c,d,e)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import TermSyntaxError
from .terms import IDENT_RE


@dataclass(frozen=True)
class Letter:
    gen: str
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("letter sign must be +1 or -1")
        if not IDENT_RE.fullmatch(self.gen):
            raise ValueError(f"invalid generator name {self.gen!r}")

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


@dataclass(frozen=True)
class ReducedWord:
    """A word with no adjacent pair of equal generators with opposite signs.
    The empty word is the group identity."""

    letters: tuple[Letter, ...]

    def __post_init__(self):
        for a, b in zip(self.letters, self.letters[1:]):
            if a.gen == b.gen and a.sign == -b.sign:
                raise ValueError(f"word is not reduced at {a.gen!r}")

    def __len__(self) -> int:
        return len(self.letters)


EMPTY_WORD = ReducedWord(())


def reduce(raw: Sequence[Letter] | Iterable[Letter]) -> ReducedWord:
    """Delete cancelling adjacent pairs to a fixpoint (single stack pass)."""
    stack: list[Letter] = []
    for letter in raw:
        if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return ReducedWord(tuple(stack))


def fg_mul(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    """Concatenation followed by reduction."""
    return reduce(a.letters + b.letters)


def fg_inv(a: ReducedWord) -> ReducedWord:
    return ReducedWord(tuple(l.inverse() for l in reversed(a.letters)))


def in_F_k(a: ReducedWord, k: int) -> bool:
    """Membership in the k-th length stratum of the free group."""
    return len(a) <= k


def is_heap_word(a: ReducedWord) -> bool:
    """Odd length with strictly alternating signs starting and ending +1.
    Coincides with membership in the closure of the generators under the
    heap operation (checked against that oracle in the test suite)."""
    if len(a) % 2 == 0:
        return False
    return all(l.sign == (1 if i % 2 == 0 else -1) for i, l in enumerate(a.letters))


@dataclass(frozen=True)
class HeapWord:
    word: ReducedWord

    def __post_init__(self):
        if not is_heap_word(self.word):
            raise ValueError("not a heap word (odd alternating +,-,...,+)")

    def __len__(self) -> int:
        return len(self.word)

    @property
    def stratum(self) -> int:
        return (len(self.word) - 1) // 2


def generator_word(gen: str) -> HeapWord:
    return HeapWord(ReducedWord((Letter(gen, 1),)))


def heap_mu(a: HeapWord, b: HeapWord, c: HeapWord) -> HeapWord:
    """a b^-1 c, reduced.  Closure holds: cancellation preserves the
    alternating pattern and parity, so the result is again a heap word."""
    return HeapWord(fg_mul(a.word, fg_mul(fg_inv(b.word), c.word)))


@dataclass(frozen=True)
class HeapGroup:
    """The group derived from the heap by fixing a basepoint as identity:
    u * v = mu(u, base, v), inverse u -> mu(base, u, base)."""

    base: HeapWord

    @property
    def identity(self) -> HeapWord:
        return self.base

    def mul(self, u: HeapWord, v: HeapWord) -> HeapWord:
        return heap_mu(u, self.base, v)

    def inv(self, u: HeapWord) -> HeapWord:
        return heap_mu(self.base, u, self.base)


def heap_group_ops(base: HeapWord) -> HeapGroup:
    return HeapGroup(base)


# ---------------------------------------------------------------------------
# Word syntax: whitespace-separated letters, `x` or `x^-1`.


def parse_letters(text: str) -> tuple[Letter, ...]:
    letters = []
    for chunk in text.split():
        if chunk.endswith("^-1"):
            name, sign = chunk[:-3], -1
        else:
            name, sign = chunk, 1
        if not IDENT_RE.fullmatch(name):
            raise TermSyntaxError(f"invalid letter {chunk!r}", text.find(chunk))
        letters.append(Letter(name, sign))
    return tuple(letters)


def format_word(w: ReducedWord | HeapWord) -> str:
    if isinstance(w, HeapWord):
        w = w.word
    return " ".join(l.gen if l.sign == 1 else f"{l.gen}^-1" for l in w.letters)


def heap_closure(gens: Sequence[str], max_len: int) -> set[ReducedWord]:
    """Breadth-first closure of the generators under the heap operation,
    keeping only words of length <= max_len.  Oracle for is_heap_word."""
    current = {generator_word(g).word for g in gens}
    frontier = set(current)
    while frontier:
        new: set[ReducedWord] = set()
        pool = [HeapWord(w) for w in current]
        for a in pool:
            for b in pool:
                for c in pool:
                    w = heap_mu(a, b, c).word
                    if len(w) <= max_len and w not in current:
                        new.add(w)
        current |= new
        frontier = new
    return current
