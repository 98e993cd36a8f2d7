"""Structural analyses of built transducers.

* the 2-walk property (two closed walks from one state, distinct inputs,
  same output) via the anchored backward pair closure;
* strongly connected components;
* restriction of the input to concatenations of blocks and the resulting
  complexity ratio;
* prefix tables of shifted expansions against an expected periodic tail;
* admissibility of ultimately periodic digit sequences;
* transduction of uniform-morphic bases into uniform-morphic digit words.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import kernels
from .errors import NonUniformInput
from .transducer import BaseAlphabet, Mode, Transducer, build, run_up
from .words import (
    MorphicSpec,
    Order,
    ShiftedSpec,
    UPWord,
    WordSpec,
    up_canonicalize,
    up_lex_compare,
)


# -- 2-walk property ---------------------------------------------------------

@dataclass(frozen=True)
class TwoWalkWitness:
    state: int
    u: tuple
    v: tuple
    w: tuple

    def names(self, alphabet):
        return ([alphabet.names[e] for e in self.u], [alphabet.names[e] for e in self.v])


@dataclass(frozen=True)
class TwoWalkResult:
    holds: bool
    witness: TwoWalkWitness | None = None

    def __bool__(self):
        return self.holds


def pair_set(T: Transducer, anchor: int) -> dict:
    """The fixpoint pair set anchored at ``anchor`` as ``{(t1, t2): round}``.

    The search may stop early once ``(anchor, anchor)`` is found; every pair
    with a smaller round number is then already present.
    """
    dist = kernels.pair_distances(T.nxt, T.out, anchor)
    idx = np.argwhere(dist >= 0)
    return {(int(a), int(b)): int(dist[a, b]) for a, b in idx}


def two_walk(T: Transducer) -> TwoWalkResult:
    """Decide the 2-walk property; on success return a replayable witness.

    The anchor is the first state ``t`` (by index) with ``(t, t)`` in its pair
    set.  The witness is read forward along the round numbers, preferring the
    largest common digit and then the smallest letter indices.
    """
    m = len(T.alphabet)
    if m < 2:
        return TwoWalkResult(False)
    for t in range(T.n_states):
        dist = kernels.pair_distances(T.nxt, T.out, t)
        if dist[t, t] < 0:
            continue
        return TwoWalkResult(True, _witness(T, dist, t))
    return TwoWalkResult(False)


def _witness(T, dist, t):
    nxt, out = T.nxt, T.out
    m = len(T.alphabet)
    p1 = p2 = t
    u, v, w = [], [], []
    k = int(dist[t, t])
    while k > 0:
        best = None
        for e1 in range(m):
            for e2 in range(m):
                a = out[p1, e1]
                if out[p2, e2] != a:
                    continue
                q1, q2 = nxt[p1, e1], nxt[p2, e2]
                if k == 1:
                    ok = q1 == t and q2 == t and e1 != e2
                else:
                    ok = dist[q1, q2] == k - 1
                if ok:
                    cand = (-int(a), e1, e2)
                    if best is None or cand < best:
                        best = cand
        a, e1, e2 = -best[0], best[1], best[2]
        u.append(e1)
        v.append(e2)
        w.append(a)
        p1, p2 = int(nxt[p1, e1]), int(nxt[p2, e2])
        k -= 1
    return TwoWalkWitness(t, tuple(u), tuple(v), tuple(w))


def replay_witness(T: Transducer, witness: TwoWalkWitness) -> bool:
    """Both inputs label closed walks at the witness state with output ``w``."""
    if witness.u == witness.v or len(witness.u) != len(witness.v):
        return False
    for word in (witness.u, witness.v):
        states = T.walk(word, witness.state)
        if states[-1] != witness.state or tuple(T.feed(word, witness.state)) != witness.w:
            return False
    return True


# -- connectivity -------------------------------------------------------------

def scc(T: Transducer) -> list:
    """Strongly connected components as sorted state lists, ordered by smallest member."""
    comp = kernels.scc(T.nxt)
    groups = defaultdict(list)
    for q, c in enumerate(comp):
        groups[int(c)].append(q)
    return sorted(groups.values(), key=lambda g: g[0])


def is_strongly_connected(T: Transducer) -> bool:
    return len(scc(T)) == 1


# -- restricted inputs --------------------------------------------------------

@dataclass(frozen=True)
class Restriction:
    visited: frozenset
    product_states: tuple  # (state, phase) pairs
    blocks: tuple

    @property
    def n_visited(self):
        return len(self.visited)


def _phase_automaton(blocks):
    """Cyclic automaton accepting concatenations of ``blocks``; phase 0 is the boundary."""
    moves = [[]]  # phase -> list of (letter, next phase)
    for block in blocks:
        cur = 0
        for j, e in enumerate(block):
            if j == len(block) - 1:
                moves[cur].append((e, 0))
            else:
                moves.append([])
                moves[cur].append((e, len(moves) - 1))
                cur = len(moves) - 1
    deg = max(len(mv) for mv in moves)
    ph_letter = np.zeros((len(moves), deg), dtype=np.int64)
    ph_next = np.zeros((len(moves), deg), dtype=np.int64)
    ph_deg = np.array([len(mv) for mv in moves], dtype=np.int64)
    for f, mv in enumerate(moves):
        for j, (e, g) in enumerate(mv):
            ph_letter[f, j], ph_next[f, j] = e, g
    return ph_letter, ph_next, ph_deg


def restrict(T: Transducer, blocks, start=None) -> Restriction:
    """Reachable part of ``T`` when the input is a concatenation of ``blocks``."""
    blocks = tuple(tuple(T.alphabet.indices(b)) for b in blocks)
    if not blocks or any(not b for b in blocks):
        raise ValueError("blocks must be a nonempty set of nonempty words")
    start = T.initial if start is None else start
    seen = kernels.product_reach(T.nxt, start, *_phase_automaton(blocks))
    pairs = tuple((int(q), int(f)) for q, f in np.argwhere(seen))
    visited = frozenset(q for q, _ in pairs)
    return Restriction(visited, pairs, blocks)


def complexity_ratio(T: Transducer, blocks) -> Fraction:
    return Fraction(restrict(T, blocks).n_visited, T.n_states)


# -- prefix tables ------------------------------------------------------------

@dataclass
class PrefixTable:
    tail: tuple
    horizon: int
    prefixes: dict = field(default_factory=dict)  # prefix tuple -> sorted list of n
    undetected: list = field(default_factory=list)
    digits: dict = field(default_factory=dict)  # n -> digit list up to horizon

    def prefix_of(self, n):
        for w, ns in self.prefixes.items():
            if n in ns:
                return w
        return None


def detect_tail(digits, tail):
    """Smallest ``i`` with ``digits[i:]`` a prefix of ``tail^omega``, or ``None``.

    At least one full copy of ``tail`` must remain after ``i``.
    """
    tail = tuple(tail)
    p = len(tail)
    n = len(digits)
    for start in range(n - p + 1):
        if all(digits[start + j] == tail[j % p] for j in range(n - start)):
            return start
    return None


def prefix_table(alphabet: BaseAlphabet, r, base: WordSpec, N: int, tail, horizon=None,
                 mode="quasi", T: Transducer | None = None) -> PrefixTable:
    """Group ``n <= N`` by the prefix ``w`` with ``d*_{sigma^n(B)}(r) = w tail^omega``
    as observed over ``horizon`` digits.
    """
    tail = tuple(tail)
    if not tail:
        raise ValueError("tail must be nonempty")
    horizon = 40 * len(tail) if horizon is None else horizon
    if horizon < 4 * len(tail):
        raise ValueError("horizon must be at least four tail lengths")
    T = T if T is not None else build(alphabet, r, mode)
    letters = alphabet.indices(base.stream(N + horizon + 1))
    table = PrefixTable(tail, horizon)
    groups = defaultdict(list)
    for n in range(N + 1):
        digits = T.feed(letters[n:n + horizon])
        table.digits[n] = digits
        i = detect_tail(digits, tail)
        if i is None:
            table.undetected.append(n)
        else:
            groups[tuple(digits[:i])].append(n)
    table.prefixes = {w: sorted(ns) for w, ns in sorted(groups.items(), key=lambda kv: kv[1][0])}
    return table


def block_outputs(T: Transducer, word, start=None) -> list:
    """Digits output when reading a finite word of letter names or indices."""
    return T.feed(T.alphabet.indices(word), start)


# -- admissibility ------------------------------------------------------------

def admissible_up(candidate: UPWord, base: UPWord, alphabet: BaseAlphabet, state_cap=None):
    """Strict lexicographic test ``sigma^n(a) < d*_{sigma^n(B)}(1)`` for all ``n``.

    Both words are ultimately periodic, so the pair of shifts repeats after
    ``max(|pre_a|, |pre_B|) + lcm(|per_a|, |per_B|)`` steps.
    Returns ``(verdict, first failing n or None)``.
    """
    a = up_canonicalize(candidate)
    B = up_canonicalize(base.map(alphabet.index))
    bound = max(len(a.preperiod), len(B.preperiod)) + lcm(len(a.period), len(B.period))
    cache = {}
    for n in range(bound):
        Bn = B.shift(n)
        ref = cache.get(Bn)
        if ref is None:
            ref = run_up(alphabet, 1, Bn, Mode.QUASI, state_cap)
            cache[Bn] = ref
        if up_lex_compare(a.shift(n), ref) is not Order.LESS:
            return False, n
    return True, None


# -- uniform-morphic transduction ------------------------------------------------

def _base_morphic(base: WordSpec):
    offset = 0
    while isinstance(base, ShiftedSpec):
        offset += base.offset
        base = base.inner
    if not isinstance(base, MorphicSpec) or offset:
        raise NonUniformInput("transduction needs an unshifted uniform-morphic base")
    return base


def transduce_uniform_morphic(alphabet: BaseAlphabet, r, base: WordSpec, mode="quasi",
                              T: Transducer | None = None) -> MorphicSpec:
    """A uniform-morphic description of the digit word of ``r`` in base ``base``.

    Let ``F_l(a)`` be the state map of reading the coding of ``mu^l(a)``.  The
    sequence ``(F_l)`` is eventually periodic; pick ``M`` a multiple of the
    period beyond the preperiod, so that ``F_{2M} = F_M``.  With
    ``nu = mu^M`` (uniform of length ``K = k^M``), position ``i`` of the fixed
    point is annotated by ``(x_i, q_i, p_i)`` where ``q_i`` is the state before
    reading position ``i`` and ``p_i = q_{K i}``.  These triples form the fixed
    point of a ``K``-uniform morphism and the output digit is a coding of them.
    """
    spec = _base_morphic(base)
    T = T if T is not None else build(alphabet, r, mode)
    k = spec.k
    letters = sorted(spec.reachable(), key=repr)
    code = {a: alphabet.index(spec.coding[a]) for a in letters}
    nxt = T.nxt
    Q = T.n_states

    def compose(maps):
        cur = tuple(range(Q))
        for f in maps:
            cur = tuple(f[q] for q in cur)
        return cur

    F = [{a: tuple(int(nxt[q, code[a]]) for q in range(Q)) for a in letters}]
    seen = {tuple(F[0][a] for a in letters): 0}
    while True:
        prev = F[-1]
        cur = {a: compose(prev[b] for b in spec.mu[a]) for a in letters}
        key = tuple(cur[a] for a in letters)
        F.append(cur)
        if key in seen:
            L0 = seen[key]
            period = len(F) - 1 - L0
            break
        seen[key] = len(F) - 1
    M = period * max(1, -(-L0 // period))
    nu = {}
    for a in letters:
        word = [a]
        for _ in range(M):
            word = [b for c in word for b in spec.mu[c]]
        nu[a] = word
    K = k ** M
    F0, FM = F[0], F[M]

    start = (spec.seed, T.initial, T.initial)
    images, todo = {}, [start]
    while todo:
        a, q, p = triple = todo.pop()
        if triple in images:
            continue
        img = []
        cq, cp = p, p
        for b in nu[a]:
            img.append((b, cq, cp))
            cq, cp = F0[b][cq], FM[b][cp]
        images[triple] = tuple(img)
        todo.extend(x for x in img if x not in images)
    # relabel triples by integers, seed first, for a compact spec
    order = sorted(images, key=lambda x: (x != start, repr(x)))
    ids = {x: i for i, x in enumerate(order)}
    mu2 = {ids[x]: tuple(ids[y] for y in images[x]) for x in order}
    coding = {ids[(a, q, p)]: int(T.out[q, code[a]]) for (a, q, p) in order}
    return MorphicSpec(K, mu2, coding, 0)
