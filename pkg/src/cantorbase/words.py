"""Finitely described infinite words.

Two families live here:

* :class:`UPWord`, an ultimately periodic word kept in canonical minimal form,
  with exact lexicographic comparison;
* :class:`WordSpec` subclasses that describe an infinite word by a rule
  (ultimately periodic, fixed point of a uniform morphism under a coding,
  automaton read on base-``b`` digits, explicit prefix plus generator) and can
  be streamed or shifted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from math import lcm
from typing import Callable, Hashable, Sequence

from .errors import MalformedSpec

Letter = Hashable


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self):
        return self.name.lower()


def _primitive_root(period):
    n = len(period)
    for p in range(1, n + 1):
        if n % p == 0 and period[:p] * (n // p) == period:
            return period[:p]
    return period


def render_letters(letters):
    toks = [str(x) for x in letters]
    if any(len(t) != 1 for t in toks):
        return " ".join(toks)
    return "".join(toks)


@dataclass(frozen=True)
class UPWord:
    """The infinite word ``preperiod . period^omega``."""

    preperiod: tuple = ()
    period: tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise MalformedSpec("period of an ultimately periodic word must be nonempty")

    def __getitem__(self, i):
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n):
        return [self[i] for i in range(n)]

    def shift(self, n=1):
        t = len(self.preperiod)
        if n <= t:
            return up_canonicalize(UPWord(self.preperiod[n:], self.period))
        k = (n - t) % len(self.period)
        return up_canonicalize(UPWord((), self.period[k:] + self.period[:k]))

    def canonical(self):
        return up_canonicalize(self)

    def map(self, f):
        return UPWord(tuple(f(x) for x in self.preperiod), tuple(f(x) for x in self.period))

    def __str__(self):
        return f"{render_letters(self.preperiod)}({render_letters(self.period)})^w"

    def spec_text(self):
        pre = " ".join(str(x) for x in self.preperiod)
        per = " ".join(str(x) for x in self.period)
        return f"{pre} ({per})".strip()


def up_canonicalize(w: UPWord) -> UPWord:
    period = _primitive_root(w.period)
    pre = list(w.preperiod)
    # absorb trailing preperiod letters into a rotation of the period
    while pre and pre[-1] == period[-1]:
        pre.pop()
        period = (period[-1],) + period[:-1]
    return UPWord(tuple(pre), period)


def up_lex_compare(u: UPWord, v: UPWord) -> Order:
    horizon = max(len(u.preperiod), len(v.preperiod)) + lcm(len(u.period), len(v.period)) + 1
    for i in range(horizon):
        a, b = u[i], v[i]
        if a != b:
            return Order.LESS if a < b else Order.GREATER
    return Order.EQUAL


# -- word specifications ----------------------------------------------------

class WordSpec:
    """An infinite word given by a finite rule."""

    def letter(self, i: int):
        raise NotImplementedError

    def stream(self, n: int, start: int = 0) -> list:
        if n < 0:
            raise ValueError("length must be nonnegative")
        return [self.letter(i) for i in range(start, start + n)]

    def shifted(self, n: int) -> "WordSpec":
        if n == 0:
            return self
        return ShiftedSpec(self, n)


def stream(spec: WordSpec, n: int) -> list:
    return spec.stream(n)


def shift(spec: WordSpec, n: int) -> WordSpec:
    if n < 0:
        raise ValueError("shift amount must be nonnegative")
    return spec.shifted(n)


@dataclass(frozen=True)
class UPSpec(WordSpec):
    word: UPWord

    def letter(self, i):
        return self.word[i]

    def stream(self, n, start=0):
        return [self.word[i] for i in range(start, start + n)]

    def shifted(self, n):
        return UPSpec(self.word.shift(n))


@dataclass(frozen=True)
class MorphicSpec(WordSpec):
    """``coding(mu^omega(seed))`` for a ``k``-uniform morphism ``mu``."""

    k: int
    mu: dict
    coding: dict
    seed: Letter

    def __post_init__(self):
        if self.k < 1:
            raise MalformedSpec("uniform length k must be positive")
        mu = {a: tuple(img) for a, img in self.mu.items()}
        object.__setattr__(self, "mu", mu)
        if self.seed not in mu:
            raise MalformedSpec(f"seed {self.seed!r} has no image")
        for a, img in mu.items():
            if len(img) != self.k:
                raise MalformedSpec(f"image of {a!r} has length {len(img)}, expected {self.k}")
            for b in img:
                if b not in mu:
                    raise MalformedSpec(f"letter {b!r} occurs in an image but has no image itself")
        if self.k > 1 and mu[self.seed][0] != self.seed:
            raise MalformedSpec(f"morphism is not prolongable on {self.seed!r}")
        if self.k == 1 and mu[self.seed][0] != self.seed:
            raise MalformedSpec("a 1-uniform morphism must fix the seed")
        for a in self.reachable():
            if a not in self.coding:
                raise MalformedSpec(f"coding is undefined on {a!r}")

    def __hash__(self):
        return hash((self.k, tuple(sorted(map(repr, self.mu.items()))), self.seed))

    def reachable(self):
        seen, todo = {self.seed}, [self.seed]
        while todo:
            for b in self.mu[todo.pop()]:
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return seen

    def raw_letter(self, i):
        """Letter ``i`` of the fixed point before coding."""
        if self.k == 1:
            return self.seed
        digits = []
        while i:
            i, r = divmod(i, self.k)
            digits.append(r)
        a = self.seed
        for r in reversed(digits):
            a = self.mu[a][r]
        return a

    def letter(self, i):
        return self.coding[self.raw_letter(i)]

    def raw_stream(self, n, start=0):
        if self.k == 1:
            return [self.seed] * n
        end = start + n
        word = [self.seed]
        while len(word) < end:
            word = [b for a in word for b in self.mu[a]]
        return word[start:end]

    def stream(self, n, start=0):
        return [self.coding[a] for a in self.raw_stream(n, start)]


@dataclass(frozen=True)
class AutomatonSpec(WordSpec):
    """Output of a DFAO fed the most-significant-digit-first base-``b`` digits of the index."""

    base: int
    initial: Letter
    transitions: dict  # (state, digit) -> state
    outputs: dict  # state -> letter

    def __post_init__(self):
        if self.base < 2:
            raise MalformedSpec("automaton base must be at least 2")
        states = set(self.outputs)
        if self.initial not in states:
            raise MalformedSpec(f"initial state {self.initial!r} has no output")
        for q in states:
            for digit in range(self.base):
                t = self.transitions.get((q, digit))
                if t is None:
                    raise MalformedSpec(f"missing transition from {q!r} on digit {digit}")
                if t not in states:
                    raise MalformedSpec(f"transition target {t!r} has no output")
        for i in range(64):
            if self._read([0] + self._digits(i)) != self._read(self._digits(i)):
                raise MalformedSpec(f"automaton output depends on leading zeros (index {i})")

    def __hash__(self):
        return hash((self.base, self.initial, len(self.transitions)))

    def _digits(self, i):
        out = []
        while i:
            i, r = divmod(i, self.base)
            out.append(r)
        return out[::-1]

    def _read(self, digits):
        q = self.initial
        for digit in digits:
            q = self.transitions[(q, digit)]
        return self.outputs[q]

    def letter(self, i):
        return self._read(self._digits(i))


@dataclass(frozen=True)
class ExplicitSpec(WordSpec):
    """A finite prefix followed by letters from ``generator(i)``."""

    prefix: tuple
    generator: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))

    def letter(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        if self.generator is None:
            raise MalformedSpec(f"explicit word has only {len(self.prefix)} letters, asked for index {i}")
        return self.generator(i)

    def shifted(self, n):
        if n <= len(self.prefix) and self.generator is None:
            return ExplicitSpec(self.prefix[n:])
        if self.generator is None:
            return ExplicitSpec(())
        gen = self.generator
        return ExplicitSpec(self.prefix[n:], lambda i, _g=gen, _n=n: _g(i + _n))


@dataclass(frozen=True)
class ImageSpec(WordSpec):
    """Letter-wise block substitution ``tau(w)`` with all blocks of one length."""

    inner: WordSpec
    blocks: dict

    def __post_init__(self):
        blocks = {a: tuple(b) for a, b in self.blocks.items()}
        object.__setattr__(self, "blocks", blocks)
        lengths = {len(b) for b in blocks.values()}
        if len(lengths) != 1 or 0 in lengths:
            raise MalformedSpec("block substitution needs nonempty blocks of equal length")

    def __hash__(self):
        return hash((self.inner, tuple(sorted(map(repr, self.blocks.items())))))

    @property
    def width(self):
        return len(next(iter(self.blocks.values())))

    def _block(self, a):
        try:
            return self.blocks[a]
        except KeyError:
            raise MalformedSpec(f"no block for letter {a!r}") from None

    def letter(self, i):
        q, r = divmod(i, self.width)
        return self._block(self.inner.letter(q))[r]

    def stream(self, n, start=0):
        L = self.width
        first, last = start // L, (start + n + L - 1) // L
        out = [x for a in self.inner.stream(last - first, first) for x in self._block(a)]
        off = start - first * L
        return out[off:off + n]


@dataclass(frozen=True)
class ShiftedSpec(WordSpec):
    inner: WordSpec
    offset: int

    def letter(self, i):
        return self.inner.letter(i + self.offset)

    def stream(self, n, start=0):
        return self.inner.stream(n, start + self.offset)

    def shifted(self, n):
        return ShiftedSpec(self.inner, self.offset + n) if n else self


def map_letters(spec: WordSpec, f) -> WordSpec:
    """Relabel the letters of ``spec`` through ``f`` without changing its structure."""
    if isinstance(spec, UPSpec):
        return UPSpec(spec.word.map(f))
    if isinstance(spec, MorphicSpec):
        return MorphicSpec(spec.k, spec.mu, {a: f(c) for a, c in spec.coding.items()}, spec.seed)
    if isinstance(spec, AutomatonSpec):
        return AutomatonSpec(spec.base, spec.initial, spec.transitions,
                             {q: f(c) for q, c in spec.outputs.items()})
    if isinstance(spec, ImageSpec):
        return ImageSpec(spec.inner, {a: tuple(f(x) for x in b) for a, b in spec.blocks.items()})
    if isinstance(spec, ShiftedSpec):
        return ShiftedSpec(map_letters(spec.inner, f), spec.offset)
    if isinstance(spec, ExplicitSpec):
        gen = spec.generator
        return ExplicitSpec(tuple(f(x) for x in spec.prefix),
                            None if gen is None else (lambda i: f(gen(i))))
    return _MappedSpec(spec, f)


@dataclass(frozen=True)
class _MappedSpec(WordSpec):
    inner: WordSpec
    f: Callable

    def letter(self, i):
        return self.f(self.inner.letter(i))


def thue_morse(a="a", b="b") -> MorphicSpec:
    """The Thue-Morse word over ``{a, b}`` starting with ``a``."""
    return MorphicSpec(2, {0: (0, 1), 1: (1, 0)}, {0: a, 1: b}, 0)


def is_eventually_periodic(seq: Sequence, max_period: int, max_preperiod: int):
    """Return ``(k, p)`` if ``seq[k:]`` has period ``p`` for some ``p <= max_period``
    and ``k < max_preperiod``, else ``None``.  Only the given finite prefix is examined.
    """
    n = len(seq)
    for p in range(1, max_period + 1):
        # smallest k such that seq[i] == seq[i+p] for all i >= k
        k = n - p
        while k > 0 and seq[k - 1] == seq[k - 1 + p]:
            k -= 1
        if k < max_preperiod and n - k > p:
            return k, p
    return None
