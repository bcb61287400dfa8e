"""Least-significant-digit-first base-p words for numbers and tuples."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

Letter = Tuple[int, ...]


@dataclass(frozen=True)
class DigitWord:
    """A word over ``{0..p-1}**tracks``; letter ``i`` holds digit ``i`` of every track."""

    base: int
    tracks: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        letters = tuple(tuple(int(d) for d in a) for a in self.letters)
        for a in letters:
            if len(a) != self.tracks:
                raise ValueError(f"letter {a} does not have {self.tracks} components")
            if any(d < 0 or d >= self.base for d in a):
                raise ValueError(f"letter {a} has a digit outside base {self.base}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def padded(self, extra: int = 1) -> "DigitWord":
        zero = (0,) * self.tracks
        return DigitWord(self.base, self.tracks, self.letters + (zero,) * extra)

    def stripped(self) -> "DigitWord":
        """Drop trailing all-zero letters."""
        letters = list(self.letters)
        while letters and not any(letters[-1]):
            letters.pop()
        return DigitWord(self.base, self.tracks, tuple(letters))

    def track(self, i: int) -> Tuple[int, ...]:
        return tuple(a[i] for a in self.letters)


def digits(n: int, p: int) -> DigitWord:
    """The expansion ``(n)_p`` as a one-track word; empty for 0."""
    if p < 2:
        raise ValueError("base must be >= 2")
    if n < 0:
        raise ValueError("only natural numbers have expansions")
    out = []
    while n:
        n, d = divmod(n, p)
        out.append((d,))
    return DigitWord(p, 1, tuple(out))


def value(w: DigitWord) -> Tuple[int, ...]:
    """Per-track positional values ``[w]_p``; trailing zero letters are irrelevant."""
    vals = [0] * w.tracks
    scale = 1
    for letter in w.letters:
        for i, d in enumerate(letter):
            vals[i] += d * scale
        scale *= w.base
    return tuple(vals)


def zip_pad(numbers: Sequence[int], p: int) -> DigitWord:
    """Encode a tuple: each track is ``(n_i)_p`` zero-padded to the longest one."""
    cols = [digits(n, p).track(0) for n in numbers]
    length = max((len(c) for c in cols), default=0)
    cols = [c + (0,) * (length - len(c)) for c in cols]
    return DigitWord(p, len(numbers), tuple(zip(*cols)) if cols else ())


def v_p(n: int, p: int) -> int:
    """Largest power of p dividing n, with ``v_p(0) = 0``."""
    if p < 2:
        raise ValueError("base must be >= 2")
    if n == 0:
        return 0
    k = 1
    while n % p == 0:
        n //= p
        k *= p
    return k
