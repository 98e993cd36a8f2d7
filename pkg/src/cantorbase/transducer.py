"""Greedy and quasi-greedy transducers for Cantor real bases.

A state is a number ``s`` in ``[0, 1]`` still to be expanded.  Reading a base
``beta`` emits a digit and moves to the next remainder:

* greedy: ``s -> beta*s - floor(beta*s)`` with digit ``floor(beta*s)``;
* quasi-greedy: ``s -> beta*s - ceil(beta*s - 1)`` with digit ``ceil(beta*s - 1)``,
  except that ``0`` is fixed with digit ``0``.

The reachable part from a point ``r`` is finite when every base is a Pisot
number of the field degree; :func:`build` computes it by breadth-first search
with exact state identity.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    CantorBaseError,
    MalformedSpec,
    NotPisot,
    OutOfUnitInterval,
    ParseError,
    PointOutOfRange,
    StateCapExceeded,
)
from .numberfield import FieldElement, NumberField, is_pisot_of_degree_d
from .words import UPWord, WordSpec, up_canonicalize

DEFAULT_STATE_CAP = 100_000


def default_state_cap():
    value = os.environ.get("CANTORBASE_STATE_CAP")
    if value:
        try:
            cap = int(value)
        except ValueError:
            raise MalformedSpec(f"CANTORBASE_STATE_CAP must be an integer, got {value!r}") from None
        if cap < 1:
            raise MalformedSpec("CANTORBASE_STATE_CAP must be positive")
        return cap
    return DEFAULT_STATE_CAP


class Mode(str, Enum):
    GREEDY = "greedy"
    QUASI = "quasi"

    @classmethod
    def parse(cls, value):
        if isinstance(value, Mode):
            return value
        v = str(value).lower().replace("_", "-")
        if v in ("greedy", "g"):
            return cls.GREEDY
        if v in ("quasi", "quasi-greedy", "q", "star"):
            return cls.QUASI
        raise MalformedSpec(f"unknown mode {value!r} (expected greedy or quasi)")


def _check_unit(q):
    if q.sign() < 0 or (q - 1).sign() > 0:
        raise OutOfUnitInterval(f"state {q} is outside [0, 1]")


def greedy_step(q: FieldElement, beta: FieldElement):
    _check_unit(q)
    x = beta * q
    digit = x.floor()
    return digit, x - digit


def quasi_step(q: FieldElement, beta: FieldElement):
    _check_unit(q)
    if q.is_zero():
        return 0, q
    x = beta * q
    digit = (x - 1).ceil()
    return digit, x - digit


def _raw_step(mode, q, beta):
    # no range check: states produced by a step stay in [0, 1]
    x = beta * q
    if mode is Mode.GREEDY:
        digit = x.floor()
    else:
        if q.is_zero():
            return 0, q
        digit = (x - 1).ceil()
    return digit, x - digit


@dataclass(frozen=True)
class BaseAlphabet:
    """A finite alphabet of bases in one number field.

    With ``verify=True`` every letter must be a Pisot number of the field
    degree in the ring of integers generated by delta.
    """

    field: NumberField
    letters: tuple
    names: tuple = ()
    verify: bool = True
    pisot_verified: tuple = ()

    def __post_init__(self):
        letters = tuple(self.field(b) for b in self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise MalformedSpec("the base alphabet is empty")
        if len(set(letters)) != len(letters):
            raise MalformedSpec("the base alphabet contains a repeated letter")
        names = tuple(self.names) or tuple(str(b) for b in letters)
        if len(names) != len(letters):
            raise MalformedSpec("need exactly one display name per letter")
        if len(set(names)) != len(names):
            raise MalformedSpec("display names must be distinct")
        object.__setattr__(self, "names", names)
        for b in letters:
            if (b - 1).sign() <= 0:
                raise MalformedSpec(f"base {b} is not greater than 1")
        if self.verify:
            flags = []
            for b, name in zip(letters, names):
                report = is_pisot_of_degree_d(b)
                if not report:
                    raise NotPisot(f"{name} = {b}: {report.verdict.value}"
                                   + (f" ({report.detail})" if report.detail else ""))
                flags.append(True)
            object.__setattr__(self, "pisot_verified", tuple(flags))
        else:
            object.__setattr__(self, "pisot_verified", tuple(False for _ in letters))

    def __len__(self):
        return len(self.letters)

    def index(self, token) -> int:
        """Resolve a word letter to an alphabet index: display name first, then 0-based index."""
        s = str(token)
        if s in self.names:
            return self.names.index(s)
        if isinstance(token, (int, np.integer)) and not isinstance(token, bool):
            i = int(token)
            if 0 <= i < len(self.letters):
                return i
            raise MalformedSpec(f"letter index {i} out of range for {len(self.letters)} bases")
        if s.isdigit() and int(s) < len(self.letters):
            return int(s)
        raise MalformedSpec(f"unknown base letter {token!r}; known names: {', '.join(self.names)}")

    def indices(self, tokens) -> list:
        return [self.index(t) for t in tokens]


def _point(field, r):
    r = field(r)
    if r.sign() < 0 or (r - 1).sign() > 0:
        raise PointOutOfRange(f"point {r} is outside [0, 1]")
    return r


@dataclass(frozen=True, eq=False)
class Transducer:
    """Reachable part of the greedy or quasi-greedy transducer from one point.

    ``nxt[q, e]`` and ``out[q, e]`` give the target state index and digit of
    the edge leaving state ``q`` on letter ``e``.
    """

    alphabet: BaseAlphabet
    states: tuple
    nxt: np.ndarray
    out: np.ndarray
    mode: Mode
    initial: int = 0
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        nxt = np.ascontiguousarray(self.nxt, dtype=np.int64)
        out = np.ascontiguousarray(self.out, dtype=np.int64)
        nxt.setflags(write=False)
        out.setflags(write=False)
        object.__setattr__(self, "nxt", nxt)
        object.__setattr__(self, "out", out)
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.states)})
        if nxt.shape != (len(self.states), len(self.alphabet)) or out.shape != nxt.shape:
            raise MalformedSpec("transition tables do not match the state and letter counts")

    @property
    def n_states(self):
        return len(self.states)

    @property
    def field(self):
        return self.alphabet.field

    def state_index(self, value) -> int:
        return self._index[self.field(value)]

    def edges(self):
        """Iterate ``(state, letter, digit, target)`` in index order."""
        for q in range(self.n_states):
            for e in range(len(self.alphabet)):
                yield q, e, int(self.out[q, e]), int(self.nxt[q, e])

    def feed(self, letters, start=None):
        """Digits output when reading ``letters`` (alphabet indices)."""
        start = self.initial if start is None else start
        digits, _ = kernels.feed(self.nxt, self.out, start, np.asarray(letters, dtype=np.int64))
        return [int(x) for x in digits]

    def walk(self, letters, start=None):
        start = self.initial if start is None else start
        states = kernels.feed_states(self.nxt, start, np.asarray(letters, dtype=np.int64))
        return [int(x) for x in states]

    def __eq__(self, other):
        if not isinstance(other, Transducer):
            return NotImplemented
        return (self.mode == other.mode and self.initial == other.initial
                and self.alphabet.letters == other.alphabet.letters
                and self.field.minpoly == other.field.minpoly
                and self.states == other.states
                and np.array_equal(self.nxt, other.nxt) and np.array_equal(self.out, other.out))

    __hash__ = None

    def check_invariants(self):
        """Completeness, determinism, state range and edge semantics."""
        for s in self.states:
            if s.sign() < 0 or (s - 1).sign() > 0:
                raise AssertionError(f"state {s} outside [0, 1]")
        for q, e, digit, t in self.edges():
            d2, nxt = _raw_step(self.mode, self.states[q], self.alphabet.letters[e])
            if d2 != digit or nxt != self.states[t]:
                raise AssertionError(f"edge ({q}, {e}) disagrees with the step map")
            beta = self.alphabet.letters[e]
            top = beta.floor() if self.states[q] == 1 and self.mode is Mode.GREEDY else beta.ceil() - 1
            if not 0 <= digit <= top:
                raise AssertionError(f"digit {digit} out of range on letter {e}")
        return True

    # -- serialization --------------------------------------------------

    def to_json(self) -> str:
        f = self.field
        lo, hi = f.root_interval
        data = {
            "field": {"minpoly": list(f.minpoly), "root": [_q(lo), _q(hi)]},
            "letters": [[_q(c) for c in b.coeffs] for b in self.alphabet.letters],
            "names": list(self.alphabet.names),
            "mode": self.mode.value,
            "initial": self.initial,
            "states": [[_q(c) for c in s.coeffs] for s in self.states],
            "edges": [list(edge) for edge in self.edges()],
        }
        return json.dumps(data, indent=1)

    @classmethod
    def from_json(cls, text: str, verify=False) -> "Transducer":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed transducer JSON: {exc}") from None
        try:
            fd = data["field"]
            root = fd.get("root")
            selector = "largest" if root is None else (Fraction(root[0]), Fraction(root[1]))
            from .numberfield import make_field

            field_ = make_field([int(c) for c in fd["minpoly"]], selector)
            letters = [field_([Fraction(c) for c in b]) for b in data["letters"]]
            if not letters:
                raise ParseError("transducer JSON has an empty alphabet")
            alphabet = BaseAlphabet(field_, letters, tuple(data.get("names") or ()), verify=verify)
            states = [field_([Fraction(c) for c in s]) for s in data["states"]]
            n, m = len(states), len(letters)
            nxt = np.full((n, m), -1, dtype=np.int64)
            out = np.full((n, m), -1, dtype=np.int64)
            for q, e, digit, t in data["edges"]:
                if nxt[q, e] >= 0:
                    raise ParseError(f"duplicate edge for state {q}, letter {e}")
                nxt[q, e], out[q, e] = t, digit
            if (nxt < 0).any():
                raise ParseError("transducer JSON is not complete")
            if (nxt >= n).any():
                raise ParseError("edge target out of range")
            return cls(alphabet, states, nxt, out, Mode.parse(data["mode"]), int(data["initial"]))
        except ParseError:
            raise
        except CantorBaseError as exc:
            raise ParseError(f"invalid transducer JSON: {exc}") from None
        except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
            raise ParseError(f"invalid transducer JSON: {exc!r}") from None

    def to_dot(self, names=None) -> str:
        names = names or self.alphabet.names
        lines = ["digraph transducer {", "  rankdir=LR;", '  node [shape=circle];']
        for i, s in enumerate(self.states):
            shape = ', shape=doublecircle' if i == self.initial else ""
            lines.append(f'  q{i} [label="{s}"{shape}];')
        for q, e, digit, t in self.edges():
            lines.append(f'  q{q} -> q{t} [label="{names[e]}|{digit}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def build(alphabet: BaseAlphabet, r, mode="greedy", state_cap=None) -> Transducer:
    """Breadth-first closure of ``{r}`` under the step maps (FIFO, letters in alphabet order)."""
    mode = Mode.parse(mode)
    cap = default_state_cap() if state_cap is None else state_cap
    r = _point(alphabet.field, r)
    states = [r]
    index = {r: 0}
    rows_n, rows_o = [], []
    queue = deque([0])
    letters = alphabet.letters
    while queue:
        q = queue.popleft()
        s = states[q]
        row_n, row_o = [], []
        for beta in letters:
            digit, t = _raw_step(mode, s, beta)
            j = index.get(t)
            if j is None:
                if len(states) >= cap:
                    raise StateCapExceeded(cap, f"more than {cap} states reachable from {r} "
                                                f"in {mode.value} mode")
                j = len(states)
                index[t] = j
                states.append(t)
                queue.append(j)
            row_n.append(j)
            row_o.append(digit)
        rows_n.append(row_n)
        rows_o.append(row_o)
    return Transducer(alphabet, states, np.array(rows_n, dtype=np.int64).reshape(len(states), len(letters)),
                      np.array(rows_o, dtype=np.int64).reshape(len(states), len(letters)), mode, 0)


class _Stepper:
    """Memoised on-the-fly stepping without a prebuilt transducer."""

    def __init__(self, alphabet, mode, cap):
        self.alphabet = alphabet
        self.mode = mode
        self.cap = cap
        self.memo = {}
        self.seen = set()

    def step(self, s, e):
        key = (s, e)
        hit = self.memo.get(key)
        if hit is None:
            hit = _raw_step(self.mode, s, self.alphabet.letters[e])
            self.memo[key] = hit
            if hit[1] not in self.seen:
                self.seen.add(hit[1])
                if len(self.seen) > self.cap:
                    raise StateCapExceeded(self.cap)
        return hit


def run(alphabet: BaseAlphabet, r, base: WordSpec | Sequence, n: int, mode="greedy", state_cap=None):
    """First ``n`` digits of the expansion of ``r`` in base ``base``.

    Returns ``(digits, number of distinct states visited)``.
    """
    mode = Mode.parse(mode)
    cap = default_state_cap() if state_cap is None else state_cap
    s = _point(alphabet.field, r)
    letters = base.stream(n) if isinstance(base, WordSpec) else list(base)[:n]
    if len(letters) < n:
        raise MalformedSpec(f"base word has only {len(letters)} letters, {n} needed")
    idx = alphabet.indices(letters)
    stepper = _Stepper(alphabet, mode, cap)
    stepper.seen.add(s)
    digits = []
    for e in idx:
        digit, s = stepper.step(s, e)
        digits.append(digit)
    return digits, len(stepper.seen)


def direct_digits(alphabet: BaseAlphabet, r, letters, mode="greedy"):
    """Digits from the explicit recursion ``a_n = floor(beta_n T_{n-1}...T_0(r))``,
    with no memo and no state bookkeeping.
    """
    mode = Mode.parse(mode)
    x = alphabet.field(r)
    out = []
    for e in alphabet.indices(letters):
        beta = alphabet.letters[e]
        if mode is Mode.GREEDY:
            digit, x = greedy_step(x, beta)
        else:
            digit, x = quasi_step(x, beta)
        out.append(digit)
    return out


def run_up(alphabet: BaseAlphabet, r, base: UPWord, mode="greedy", state_cap=None) -> UPWord:
    """Exact ultimately periodic expansion of ``r`` for an ultimately periodic base."""
    mode = Mode.parse(mode)
    cap = default_state_cap() if state_cap is None else state_cap
    s = _point(alphabet.field, r)
    base = up_canonicalize(base.map(alphabet.index))
    t, p = len(base.preperiod), len(base.period)
    stepper = _Stepper(alphabet, mode, cap)
    digits = []
    for e in base.preperiod:
        digit, s = stepper.step(s, e)
        digits.append(digit)
    seen = {}
    n = t
    while True:
        phase = (n - t) % p
        key = (s, phase)
        if phase == 0:
            if key in seen:
                k = seen[key]
                return up_canonicalize(UPWord(tuple(digits[:k]), tuple(digits[k:])))
            seen[key] = n
            if len(seen) > cap:
                raise StateCapExceeded(cap, f"no repetition among {cap} (state, phase) pairs")
        digit, s = stepper.step(s, base.period[phase])
        digits.append(digit)
        n += 1


def valuation(alphabet: BaseAlphabet, digits, letters):
    """Exact ``sum_n a_n / (beta_0 ... beta_n)`` and the product ``beta_0 ... beta_{N-1}``."""
    f = alphabet.field
    total = f.zero
    prod = f.one
    for a, e in zip(digits, alphabet.indices(letters)):
        prod = prod * alphabet.letters[e]
        if a:
            total = total + f(a) / prod
    return total, prod
