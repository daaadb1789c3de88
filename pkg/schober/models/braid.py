"""Braid words in the finitary infinite braid group and their Artin action.

The word problem is decided through the faithful action of Br_inf on the
free group generated by x_i (i an arbitrary integer)::

    sigma_i:      x_i -> x_i x_{i+1} x_i^-1,   x_{i+1} -> x_i
    sigma_i^-1:   x_i -> x_{i+1},              x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

from schober.errors import InputFormatError

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]


def _free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    out: list = []
    for gen, sign in letters:
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


def _check_letter(letter) -> Letter:
    i, s = letter
    if isinstance(i, bool) or not isinstance(i, int) or s not in (1, -1):
        raise InputFormatError(f'Bad braid letter {letter!r}; expected (index, +-1)')
    return int(i), int(s)


# ===== Braid words =====

@dataclass(frozen=True)
class BraidWord:
    """sigma_{i1}^{s1} ... sigma_{ik}^{sk}, applied left to right"""
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(_check_letter(l) for l in self.letters))

    @classmethod
    def of(cls, *signed: int) -> 'BraidWord':
        """BraidWord.of(1, 2, -1) is sigma_1 sigma_2 sigma_1^-1."""
        if any(s == 0 for s in signed):
            raise InputFormatError('Signed index 0 is ambiguous; use explicit (index, sign) letters')
        return cls(tuple((abs(s), 1 if s > 0 else -1) for s in signed))

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: 'BraidWord') -> 'BraidWord':
        return BraidWord(self.letters + other.letters)

    def inverse(self) -> 'BraidWord':
        return BraidWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def free_reduce(self) -> 'BraidWord':
        return BraidWord(_free_reduce(self.letters))

    def indices(self) -> set:
        return {i for i, _ in self.letters}

    def __str__(self) -> str:
        if not self.letters:
            return 'e'
        return ' '.join(f's{i}' if s == 1 else f's{i}^-1' for i, s in self.letters)


def braid_inverse(w: BraidWord) -> BraidWord:
    return w.inverse()


def braid_concat(w1: BraidWord, w2: BraidWord) -> BraidWord:
    return w1 + w2


def braid_free_reduce(w: BraidWord) -> BraidWord:
    return w.free_reduce()


def braid_relations(lo: int, hi: int) -> list:
    """Defining relations of Br_inf among generators with indices in [lo, hi]."""
    relations = []
    for i in range(lo, hi):
        relations.append((BraidWord(((i, 1), (i + 1, 1), (i, 1))),
                          BraidWord(((i + 1, 1), (i, 1), (i + 1, 1)))))
    for j in range(lo, hi + 1):
        for k in range(j + 2, hi + 1):
            relations.append((BraidWord(((j, 1), (k, 1))), BraidWord(((k, 1), (j, 1)))))
    return relations


_TOKEN_RE = re.compile(r'^([+-]?)(\d+)$')


def parse_word(text: str) -> BraidWord:
    """Read "1 2 -1" (or "1,2,-1"): the sign of each entry is the exponent."""
    letters = []
    for token in re.split(r'[\s,]+', text.strip()):
        if not token:
            continue
        match = _TOKEN_RE.match(token)
        if not match or int(match.group(2)) == 0:
            raise InputFormatError(f"'{token}' is not a nonzero signed generator index")
        letters.append((int(match.group(2)), -1 if match.group(1) == '-' else 1))
    return BraidWord(tuple(letters))


# ===== Free group action =====

def _invert(word: Tuple[Letter, ...]) -> Tuple[Letter, ...]:
    return tuple((g, -s) for g, s in reversed(word))


@dataclass(frozen=True)
class FreeGroupEndo:
    """Endomorphism of the free group on {x_i}; unlisted generators are fixed"""
    images: Dict[int, Tuple[Letter, ...]] = field(default_factory=dict)

    def __post_init__(self):
        # Keep only generators that actually move
        normalized = {i: _free_reduce(w) for i, w in self.images.items()}
        object.__setattr__(self, 'images',
                           {i: w for i, w in sorted(normalized.items()) if w != ((i, 1),)})

    def image(self, i: int) -> Tuple[Letter, ...]:
        return self.images.get(i, ((i, 1),))

    def apply(self, word: Iterable[Letter]) -> Tuple[Letter, ...]:
        out: list = []
        for g, s in word:
            out.extend(self.image(g) if s == 1 else _invert(self.image(g)))
        return _free_reduce(out)

    def is_identity(self) -> bool:
        return not self.images

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeGroupEndo) and self.images == other.images

    def __hash__(self) -> int:
        return hash(tuple(self.images.items()))

    def __str__(self) -> str:
        if not self.images:
            return 'id'

        def fmt(word):
            return ''.join(f'x{g}' if s == 1 else f'x{g}^-1' for g, s in word) or '1'

        return ', '.join(f'x{i} -> {fmt(w)}' for i, w in self.images.items())


def braid_act_free(w: BraidWord) -> FreeGroupEndo:
    """Artin endomorphism of w; act(w1 w2) = act(w1) o act(w2)."""
    images: Dict[int, Tuple[Letter, ...]] = {}

    def current(i):
        return images.get(i, ((i, 1),))

    for i, s in w.letters:
        a, b = current(i), current(i + 1)
        if s == 1:
            images[i] = _free_reduce(a + b + _invert(a))
            images[i + 1] = a
        else:
            images[i] = b
            images[i + 1] = _free_reduce(_invert(b) + a + b)
    return FreeGroupEndo(images)


def braid_equal(w1: BraidWord, w2: BraidWord) -> bool:
    return braid_act_free(w1) == braid_act_free(w2)
