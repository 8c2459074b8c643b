"""Free group words, conjugacy classes and figure-eight classes.

Letters are nonzero integers: ``+g`` is generator ``g`` and ``-g`` its
inverse.  The global letter order is ``g1 < g1^-1 < g2 < g2^-1 < ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class RankError(ValueError):
    """A letter references a generator outside the surface rank."""


def letter_key(letter: int) -> int:
    """Position of ``letter`` in the global order (1-based)."""
    return 2 * abs(letter) - 1 + (letter < 0)


def generator_name(index: int, rank: int | None = None) -> str:
    if index <= 26 and (rank is None or rank <= 26):
        return chr(ord("a") + index - 1)
    return f"g{index}"


def letter_text(letter: int, rank: int | None = None) -> str:
    name = generator_name(abs(letter), rank)
    return name if letter > 0 else name + "^-1"


_LETTER_RE = re.compile(r"^(?:([a-z])|g([1-9][0-9]*))(?:\^(-?1))?$")


def parse_letter(token: str) -> int:
    """Parse ``a``, ``b^-1``, ``g27``, ``g3^-1`` into a signed letter."""
    m = _LETTER_RE.match(token)
    if not m:
        raise ValueError(f"not a generator token: {token!r}")
    index = ord(m.group(1)) - ord("a") + 1 if m.group(1) else int(m.group(2))
    return -index if m.group(3) == "-1" else index


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word in the free group."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        for x, y in zip(letters, letters[1:]):
            if x == -y:
                raise ValueError(f"word is not freely reduced: {letters}")
        if 0 in letters:
            raise ValueError("letter 0 is not a generator")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(_free_reduce(self.letters + other.letters))

    def inverse(self) -> Word:
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(_free_reduce(base.letters * abs(n)))

    def conjugate(self, g: Word) -> Word:
        """``g * self * g^-1``."""
        return g * self * g.inverse()

    def is_trivial(self) -> bool:
        return not self.letters

    def key(self) -> tuple[int, ...]:
        return tuple(letter_key(x) for x in self.letters)

    def text(self, rank: int | None = None) -> str:
        if not self.letters:
            return "e"
        return " ".join(letter_text(x, rank) for x in self.letters)

    def __str__(self) -> str:
        return self.text()

    @classmethod
    def parse(cls, text: str) -> Word:
        """Inverse of :meth:`text`; ``e`` or the empty string is the identity."""
        tokens = text.split()
        if tokens == ["e"]:
            tokens = []
        return reduce(parse_letter(t) for t in tokens)


def reduce(raw: Iterable[int], rank: int | None = None) -> Word:
    """Freely reduce a sequence of signed letters.

    >>> reduce([1, 2, -2, 1]).letters
    (1, 1)
    >>> reduce([1, -1])
    Word(letters=())
    """
    raw = tuple(raw)
    for x in raw:
        if x == 0 or (rank is not None and abs(x) > rank):
            raise RankError(f"letter {x} outside rank {rank}")
    return Word(_free_reduce(raw))


def cyclic_reduce(w: Word) -> Word:
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return Word(letters[i : j + 1])


@dataclass(frozen=True)
class ConjClass:
    """Conjugacy class of a free group element, stored as its canonical cyclic word."""

    word: Word

    def __len__(self) -> int:
        return len(self.word)

    def is_trivial(self) -> bool:
        return self.word.is_trivial()

    def text(self, rank: int | None = None) -> str:
        return self.word.text(rank)

    def __str__(self) -> str:
        return self.text()


def conj_class(w: Word) -> ConjClass:
    """Lexicographically minimal cyclic rotation of the cyclic reduction of ``w``."""
    letters = cyclic_reduce(w).letters
    if not letters:
        return ConjClass(Word())
    keys = [letter_key(x) for x in letters]
    n = len(letters)
    best = min(range(n), key=lambda k: keys[k:] + keys[:k])
    return ConjClass(Word(letters[best:] + letters[:best]))


def _conj_letter(w: tuple[int, ...], t: int) -> tuple[int, ...]:
    # t * w * t^-1, freely reduced
    if not w:
        return w
    head = w[0] == -t
    tail = w[-1] == t
    if head and tail:
        return w[1:-1]
    if head:
        return w[1:] + (-t,)
    if tail:
        return (t,) + w[:-1]
    return (t,) + w + (-t,)


def _conj_delta(w: tuple[int, ...], t: int) -> int:
    if not w:
        return 0
    if len(w) == 1:
        return 0 if w[0] in (-t, t) else 2
    return 2 - 2 * (w[0] == -t) - 2 * (w[-1] == t)


def _pair_key(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(letter_key(x) for x in a) + (0,) + tuple(letter_key(x) for x in b)


def _candidates(a: tuple[int, ...], b: tuple[int, ...]) -> set[int]:
    # only these letters can conjugate without growing a nonempty word
    out = set()
    for w in (a, b):
        if w:
            out.add(-w[0])
            out.add(w[-1])
    return out


def _trim(a: tuple[int, ...], b: tuple[int, ...]):
    while len(a) >= 2 and len(b) >= 2 and a[0] == b[0] and a[-1] == b[-1] == -a[0]:
        a, b = a[1:-1], b[1:-1]
    return a, b


def _minimal_plateau(a: tuple[int, ...], b: tuple[int, ...]) -> set:
    """All minimal-length pairs simultaneously conjugate to ``(a, b)``.

    Total length is a convex function of the conjugator on the Cayley tree, so
    greedy descent reaches the global minimum and the minimum set is connected
    under single-letter moves.
    """
    a, b = _trim(a, b)
    while True:
        seen = {(a, b)}
        frontier = [(a, b)]
        lowered = None
        while frontier and lowered is None:
            nxt = []
            for x, y in frontier:
                for t in _candidates(x, y):
                    d = _conj_delta(x, t) + _conj_delta(y, t)
                    if d > 0:
                        continue
                    pair = (_conj_letter(x, t), _conj_letter(y, t))
                    if d < 0:
                        lowered = pair
                        break
                    if pair not in seen:
                        seen.add(pair)
                        nxt.append(pair)
                if lowered is not None:
                    break
            frontier = nxt
        if lowered is None:
            return seen
        a, b = lowered


@lru_cache(maxsize=1 << 16)
def _canonical_pair(a: tuple[int, ...], b: tuple[int, ...], ordered: bool):
    plateau = _minimal_plateau(a, b)
    if not ordered:
        plateau = plateau | {(y, x) for x, y in plateau}
    return min(plateau, key=lambda p: _pair_key(*p))


@dataclass(frozen=True)
class EightClass:
    """Class of a figure-eight map: a word pair up to simultaneous conjugation.

    When ``ordered`` is false the pair is also taken up to swapping the loops.
    Build instances with :func:`eight_class`.
    """

    loop_a: Word
    loop_b: Word
    ordered: bool = False

    def loops(self) -> tuple[Word, Word]:
        return self.loop_a, self.loop_b

    def has_trivial_loop(self) -> bool:
        return self.loop_a.is_trivial() or self.loop_b.is_trivial()

    def text(self, rank: int | None = None) -> str:
        return f"({self.loop_a.text(rank)}, {self.loop_b.text(rank)})"

    def __str__(self) -> str:
        return self.text()


def eight_class(a: Word, b: Word, ordered: bool = False) -> EightClass:
    x, y = _canonical_pair(a.letters, b.letters, bool(ordered))
    return EightClass(Word(x), Word(y), bool(ordered))


@dataclass(frozen=True)
class AbelianVector:
    """Exponent sums per generator; a class in H_1 of the planar surface."""

    sums: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.sums)

    def is_zero(self) -> bool:
        return not any(self.sums)

    def __add__(self, other: AbelianVector) -> AbelianVector:
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return AbelianVector(tuple(x + y for x, y in zip(self.sums, other.sums)))

    def text(self) -> str:
        return "(" + ", ".join(str(x) for x in self.sums) + ")"

    def __str__(self) -> str:
        return self.text()


def abelianize(w: Word | Sequence[int], rank: int | None = None) -> AbelianVector:
    """Exponent-sum vector of ``w`` in Z^rank.

    >>> abelianize(reduce([1, 1, -2, 1]), 2)
    AbelianVector(sums=(3, -1))
    """
    letters = w.letters if isinstance(w, Word) else tuple(w)
    if rank is None:
        rank = max((abs(x) for x in letters), default=0)
    sums = [0] * rank
    for x in letters:
        if abs(x) > rank:
            raise RankError(f"letter {x} outside rank {rank}")
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return AbelianVector(tuple(sums))
