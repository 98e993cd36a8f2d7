"""Integer Cantor bases built from constant-product morphisms.

A constant-product morphism ``psi`` sends every source letter ``a`` to a block
of integer bases whose product is a fixed integer ``delta``.  Each digit
``c < delta`` then splits into a mixed-radix word ``h_a(c)`` and the
``psi(A)``-expansion of ``r`` is obtained by applying the ``h_a`` letter by
letter to the ordinary ``delta``-expansion of ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .errors import DigitOutOfRange, InvalidDeltaExpansion, NonUniformMorphism
from .words import UPWord, WordSpec, up_canonicalize


def digit_decompose(c: int, block) -> tuple:
    """Unique ``(c_0, ..., c_{l-1})`` with ``c_j < block[j]`` and
    ``c = sum c_j * block[j+1] * ... * block[l-1]``.
    """
    block = tuple(block)
    if any(b < 2 for b in block):
        raise DigitOutOfRange(f"block entries must be at least 2, got {block}")
    if not 0 <= c < prod(block):
        raise DigitOutOfRange(f"digit {c} outside [0, {prod(block)})")
    out = []
    for b in reversed(block):
        c, r = divmod(c, b)
        out.append(r)
    return tuple(reversed(out))


def digit_compose(word, block) -> int:
    c = 0
    for digit, b in zip(word, block):
        c = c * b + digit
    return c


@dataclass(frozen=True)
class ConstantProductMorphism:
    delta: int
    images: dict

    def __post_init__(self):
        images = {a: tuple(int(b) for b in img) for a, img in self.images.items()}
        object.__setattr__(self, "images", images)
        if not images:
            raise NonUniformMorphism("morphism has no letters")
        for a, img in images.items():
            if not img or any(b < 2 for b in img):
                raise DigitOutOfRange(f"image of {a!r} must be a nonempty block of integers >= 2")
            if prod(img) != self.delta:
                raise NonUniformMorphism(
                    f"product of the image of {a!r} is {prod(img)}, expected {self.delta}")

    def __hash__(self):
        return hash((self.delta, tuple(sorted(map(repr, self.images.items())))))

    @classmethod
    def from_images(cls, images):
        images = {a: tuple(img) for a, img in images.items()}
        products = {prod(img) for img in images.values()}
        if len(products) != 1:
            raise NonUniformMorphism(f"image products differ: {sorted(products)}")
        return cls(products.pop(), images)

    @property
    def uniform_length(self):
        lengths = {len(img) for img in self.images.values()}
        return lengths.pop() if len(lengths) == 1 else None

    def h(self, a, c):
        return digit_decompose(c, self.images[a])

    def digit_morphism(self, a) -> dict:
        """The table ``c -> h_a(c)`` for ``c < delta``."""
        return {c: self.h(a, c) for c in range(self.delta)}


def delta_expansion(r, delta: int) -> UPWord:
    """Greedy ``delta``-expansion of a rational ``r`` in ``[0, 1)`` by long division."""
    r = Fraction(r)
    if not 0 <= r < 1:
        raise InvalidDeltaExpansion(f"{r} is not in [0, 1)")
    num, den = r.numerator, r.denominator
    seen = {}
    digits = []
    while num not in seen:
        seen[num] = len(digits)
        digit, num = divmod(num * delta, den)
        digits.append(digit)
    k = seen[num]
    return up_canonicalize(UPWord(tuple(digits[:k]), tuple(digits[k:])))


def delta_value(word: UPWord, delta: int) -> Fraction:
    """Exact value of ``sum word[i] delta^{-(i+1)}``."""
    pre = Fraction(0)
    for i, c in enumerate(word.preperiod):
        pre += Fraction(c, delta ** (i + 1))
    p = len(word.period)
    per = sum(Fraction(c, delta ** (i + 1)) for i, c in enumerate(word.period))
    per = per * Fraction(delta ** p, delta ** p - 1)
    return pre + per / delta ** len(word.preperiod)


def check_delta_expansion(word: UPWord, delta: int):
    for c in word.preperiod + word.period:
        if not (isinstance(c, int) and 0 <= c < delta):
            raise InvalidDeltaExpansion(f"digit {c!r} is not in [0, {delta})")
    if all(c == delta - 1 for c in word.period):
        raise InvalidDeltaExpansion(f"a greedy expansion cannot end with ({delta - 1})^w")


def block_expand(d_delta_r: UPWord, preimage: WordSpec, psi: ConstantProductMorphism, n: int) -> list:
    """First ``n`` digits of the expansion of ``r`` in the base ``psi(preimage)``."""
    check_delta_expansion(d_delta_r, psi.delta)
    out = []
    i = 0
    chunk = 64
    while len(out) < n:
        letters = preimage.stream(chunk, i)
        for a in letters:
            out.extend(psi.h(a, d_delta_r[i]))
            i += 1
            if len(out) >= n:
                break
    return out[:n]


def flatten_base(preimage: WordSpec, psi: ConstantProductMorphism, n: int) -> list:
    """First ``n`` integer bases of ``psi(preimage)``."""
    out = []
    i = 0
    while len(out) < n:
        for a in preimage.stream(64, i):
            out.extend(psi.images[a])
        i += 64
    return out[:n]


@dataclass
class WordMachine:
    """A deterministic machine whose edges emit words.

    ``edges[(state, letter)] = (output word, target)``.  ``residues`` records,
    when known, the real number still to be expanded in each state.
    """

    states: list
    initial: int
    edges: dict
    residues: dict = field(default_factory=dict)

    @property
    def n_states(self):
        return len(self.states)

    def letters(self):
        return sorted({a for (_, a) in self.edges}, key=repr)

    def feed(self, letters):
        q = self.initial
        out = []
        for a in letters:
            try:
                word, q = self.edges[(q, a)]
            except KeyError:
                raise ValueError(f"no transition from state {self.states[q]!r} on {a!r}") from None
            out.extend(word)
        return out

    def reachable(self, blocks):
        """States visited when the input is restricted to concatenations of ``blocks``."""
        blocks = [tuple(b) for b in blocks]
        seen = {self.initial}
        frontier = [self.initial]
        visited = {self.initial}
        while frontier:
            q = frontier.pop()
            for b in blocks:
                cur = q
                ok = True
                path = []
                for a in b:
                    if (cur, a) not in self.edges:
                        ok = False
                        break
                    cur = self.edges[(cur, a)][1]
                    path.append(cur)
                if not ok:
                    continue
                visited.update(path)
                if cur not in seen:
                    seen.add(cur)
                    frontier.append(cur)
        return visited


def build_frying_pan(d_delta_r: UPWord, alphabet, psi: ConstantProductMorphism) -> WordMachine:
    """One state per position of ``d_delta_r``; the last period state loops back."""
    d_delta_r = up_canonicalize(d_delta_r)
    check_delta_expansion(d_delta_r, psi.delta)
    t, p = len(d_delta_r.preperiod), len(d_delta_r.period)
    n = t + p
    edges = {}
    for i in range(n):
        target = i + 1 if i + 1 < n else t
        for a in alphabet:
            edges[(i, a)] = (psi.h(a, d_delta_r[i]), target)
    residues = {i: delta_value(d_delta_r.shift(i), psi.delta) for i in range(n)}
    states = [f"p{i}" for i in range(n)]
    return WordMachine(states, 0, edges, residues)


def letter_to_letter(machine: WordMachine, psi: ConstantProductMorphism) -> WordMachine:
    """Split every edge into a chain of single-digit edges reading ``psi(a)``."""
    L = psi.uniform_length
    if L is None:
        raise NonUniformMorphism("letter-to-letter conversion needs a uniform morphism")
    states = list(machine.states)
    residues = dict(machine.residues)
    edges = {}
    for (q, a), (word, target) in sorted(machine.edges.items(), key=lambda kv: (kv[0][0], repr(kv[0][1]))):
        if len(word) != L:
            raise NonUniformMorphism(f"edge output {word} has length {len(word)}, expected {L}")
        block = psi.images[a]
        cur = q
        value = residues.get(q)
        for j in range(L):
            if j == L - 1:
                nxt = target
            else:
                nxt = len(states)
                states.append(f"{machine.states[q]}.{a}.{j + 1}")
                if value is not None:
                    value = value * block[j] - word[j]
                    residues[nxt] = value
            key = (cur, block[j])
            if key in edges and edges[key] != ((word[j],), nxt):
                raise NonUniformMorphism(
                    f"blocks of psi share a first letter; state {states[cur]} becomes nondeterministic")
            edges[key] = ((word[j],), nxt)
            cur = nxt
    return WordMachine(states, machine.initial, edges, residues)


def merge_by_residue(machine: WordMachine) -> WordMachine:
    """Identify states that still have to expand the same real number."""
    if len(machine.residues) != machine.n_states:
        raise ValueError("every state needs a residue to merge")
    classes = {}
    rep = {}
    for q in range(machine.n_states):
        v = machine.residues[q]
        if v not in classes:
            classes[v] = len(classes)
        rep[q] = classes[v]
    names = [None] * len(classes)
    for q in range(machine.n_states):
        if names[rep[q]] is None:
            names[rep[q]] = machine.states[q]
    edges = {}
    for (q, a), (word, t) in machine.edges.items():
        edges[(rep[q], a)] = (word, rep[t])
    residues = {c: v for v, c in classes.items()}
    return WordMachine(names, rep[machine.initial], edges, residues)
