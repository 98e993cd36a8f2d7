"""Text formats: arithmetic expressions, field descriptions, word specs, morphisms.

Expressions use ``+ - * / ^`` (``**`` also accepted), parentheses, integers
and rationals ``p/q``; one symbol stands for the variable (``x`` in minimal
polynomials, ``d`` for field elements).  ``2d`` is read as ``2*d``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import MalformedSpec, ParseError
from .morphisms import ConstantProductMorphism
from .numberfield import NumberField, make_field
from .numberfield import polynomials as P
from .words import (
    AutomatonSpec,
    ExplicitSpec,
    ImageSpec,
    MorphicSpec,
    UPSpec,
    UPWord,
    WordSpec,
    thue_morse,
    up_canonicalize,
)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # num, sym, op, end
    text: str
    pos: int


def _tokenize(text):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at column {pos + 1} in {text!r}")
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(_Tok("num", m.group(1), start))
        elif m.group(2):
            out.append(_Tok("sym", m.group(2), start))
        else:
            op = m.group(3)
            out.append(_Tok("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    """Recursive descent evaluator parameterised by the target algebra."""

    def __init__(self, text, symbol, const, var):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.symbol = symbol
        self.const = const
        self.var = var

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{msg} at column {tok.pos + 1} in {self.text!r}")

    def parse(self):
        if self.peek().kind == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in ("*", "/"):
                self.take()
                rhs = self.unary()
                if t.text == "*":
                    value = value * rhs
                else:
                    try:
                        value = value / rhs
                    except ZeroDivisionError:
                        self.fail("division by zero", t)
            elif t.kind in ("sym", "num") or (t.kind == "op" and t.text == "("):
                # implicit multiplication: 2d, 3(d+1)
                value = value * self.unary()
            else:
                return value

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in ("-", "+"):
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.peek()
            neg = False
            if t.kind == "op" and t.text == "-":
                self.take()
                neg = True
                t = self.peek()
            if t.kind != "num":
                self.fail("exponent must be an integer literal")
            self.take()
            n = int(t.text)
            return base ** (-n if neg else n)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return self.const(int(t.text))
        if t.kind == "sym":
            if t.text != self.symbol:
                self.fail(f"unknown symbol {t.text!r} (expected {self.symbol!r})", t)
            return self.var()
        if t.kind == "op" and t.text == "(":
            v = self.expr()
            if not (self.peek().kind == "op" and self.peek().text == ")"):
                self.fail("missing ')'")
            self.take()
            return v
        self.fail(f"unexpected {t.text or 'end of input'!r}", t)


class _Poly:
    """Polynomial with rational coefficients supporting the evaluator's operators."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = P.trim([Fraction(v) for v in c])

    def __add__(self, o):
        return _Poly(P.add(self.c, o.c))

    def __sub__(self, o):
        return _Poly(P.sub(self.c, o.c))

    def __mul__(self, o):
        return _Poly(P.mul(self.c, o.c))

    def __neg__(self):
        return _Poly([-v for v in self.c])

    def __truediv__(self, o):
        if len(o.c) != 1:
            raise ParseError("can only divide a polynomial by a nonzero constant")
        return _Poly([v / o.c[0] for v in self.c])

    def __pow__(self, n):
        if n < 0:
            raise ParseError("negative exponent in a polynomial")
        out = _Poly([1])
        for _ in range(n):
            out = out * self
        return out


def parse_polynomial(text: str, symbol="x") -> list:
    """Coefficients (low degree first) of a polynomial expression."""
    return _Parser(text, symbol, lambda n: _Poly([n]), lambda: _Poly([0, 1])).parse().c


def parse_element(field: NumberField, text: str, symbol="d"):
    """Evaluate an expression in the field generator; division is exact field division."""
    text = text.strip()
    if text.startswith("["):
        return field(parse_rational_list(text))
    return _Parser(text, symbol, lambda n: field(n), lambda: field.gen).parse()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def parse_rational_list(text: str) -> list:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"expected a bracketed list, got {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return []
    return [parse_rational(v) for v in inner.split(",")]


def _split_top(text, sep):
    """Split on ``sep`` outside brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


_FIELD_BLOCK = re.compile(r"^\s*field\s*\{(.*)\}\s*$", re.S)


def parse_field(text: str | None) -> NumberField:
    """Parse ``field { minpoly = [...]; root = largest | (lo, hi) }`` or a bare
    polynomial in ``x``.  ``None`` or an empty string gives Q (minimal polynomial ``x``).
    """
    if text is None or not text.strip():
        return make_field([0, 1])
    text = text.strip()
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8").strip()
    m = _FIELD_BLOCK.match(text)
    if not m:
        return make_field(_integral(parse_polynomial(text, "x")))
    minpoly, root = None, "largest"
    for part in _split_top(m.group(1), ";"):
        part = part.strip()
        if not part:
            continue
        key, eq, value = part.partition("=")
        if not eq:
            raise ParseError(f"expected key = value in field description, got {part!r}")
        key, value = key.strip(), value.strip()
        if key == "minpoly":
            minpoly = (_integral(parse_rational_list(value)) if value.startswith("[")
                       else _integral(parse_polynomial(value, "x")))
        elif key == "root":
            if value in ("largest", "largest-real"):
                root = "largest"
            else:
                if not (value.startswith("(") and value.endswith(")")):
                    raise ParseError(f"root must be 'largest' or (lo, hi), got {value!r}")
                bounds = [parse_rational(v) for v in value[1:-1].split(",")]
                if len(bounds) != 2:
                    raise ParseError("root interval needs two endpoints")
                root = tuple(bounds)
        else:
            raise ParseError(f"unknown field key {key!r}")
    if minpoly is None:
        raise ParseError("field description lacks minpoly")
    return make_field(minpoly, root)


def _integral(coeffs):
    out = []
    for c in coeffs:
        c = Fraction(c)
        if c.denominator != 1:
            raise ParseError("minimal polynomial coefficients must be integers")
        out.append(int(c))
    return out


def field_text(field: NumberField) -> str:
    lo, hi = field.root_interval
    return (f"field {{ minpoly = [{', '.join(map(str, field.minpoly))}]; "
            f"root = ({lo}, {hi}) }}")


# -- words -------------------------------------------------------------------

def split_letters(text: str) -> list:
    """Whitespace-separated tokens if any whitespace, else single characters."""
    text = text.strip()
    if not text:
        return []
    if any(ch.isspace() for ch in text):
        return text.split()
    return list(text)


def parse_up(text: str, convert=None) -> UPWord:
    """``pre (per)`` with an optional ``up:`` tag and ``^w`` suffix."""
    body = text.strip()
    if body.startswith("up:"):
        body = body[3:].strip()
    body = re.sub(r"\^\s*(w|ω|omega)\s*$", "", body)
    if body.count("(") != 1 or body.count(")") != 1 or not body.endswith(")"):
        raise ParseError(f"ultimately periodic word must look like 'pre (per)', got {text!r}")
    pre_text, per_text = body[:-1].split("(")
    # one tokenization for the whole word: "phi (phi B)" has letters "phi" and "B"
    if any(ch.isspace() for ch in (pre_text + per_text).strip()):
        pre, per = pre_text.split(), per_text.split()
    else:
        pre, per = list(pre_text.strip()), list(per_text.strip())
    if not per:
        raise ParseError(f"empty period in {text!r}")
    if convert:
        pre, per = [convert(x) for x in pre], [convert(x) for x in per]
    return up_canonicalize(UPWord(tuple(pre), tuple(per)))


def parse_digit_up(text: str) -> UPWord:
    def digit(tok):
        if not tok.isdigit():
            raise ParseError(f"not a digit: {tok!r}")
        return int(tok)

    return parse_up(text, digit)


def _parse_map(text, what):
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        src, arrow, dst = item.partition("->")
        if not arrow:
            raise ParseError(f"{what}: expected 'letter->image', got {item!r}")
        out[src.strip()] = dst.strip()
    if not out:
        raise ParseError(f"{what} is empty")
    return out


def parse_wordspec(text: str, base_dir=None) -> WordSpec:
    """Parse the textual word specification formats.

    ``up: pre (per)``, ``morphic: k=..; mu: ..; coding: ..; seed: ..``,
    ``automaton: <file>``, ``explicit: letters``, ``thue-morse: a b``,
    ``image: a->block, ... | <spec>`` and ``shift: n | <spec>``.
    """
    text = text.strip()
    kind, colon, body = text.partition(":")
    kind = kind.strip().lower()
    if not colon:
        if "(" in text:
            return UPSpec(parse_up(text))
        raise ParseError(f"word spec needs a 'kind:' prefix, got {text!r}")
    body = body.strip()
    try:
        if kind == "up":
            return UPSpec(parse_up(body))
        if kind == "explicit":
            return ExplicitSpec(tuple(split_letters(body)))
        if kind in ("thue-morse", "tm"):
            letters = split_letters(body)
            if len(letters) != 2:
                raise ParseError("thue-morse needs exactly two letters")
            return thue_morse(*letters)
        if kind == "morphic":
            return _parse_morphic(body)
        if kind == "automaton":
            path = Path(body)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            return parse_automaton(path.read_text(encoding="utf-8"))
        if kind == "image":
            blocks_text, bar, inner = body.partition("|")
            if not bar:
                raise ParseError("image spec needs 'blocks | inner spec'")
            blocks = {a: tuple(split_letters(b)) for a, b in _parse_map(blocks_text, "image").items()}
            return ImageSpec(parse_wordspec(inner, base_dir), blocks)
        if kind == "shift":
            n_text, bar, inner = body.partition("|")
            if not bar or not n_text.strip().isdigit():
                raise ParseError("shift spec needs 'n | inner spec'")
            return parse_wordspec(inner, base_dir).shifted(int(n_text))
    except MalformedSpec as exc:
        raise ParseError(str(exc)) from None
    except OSError as exc:
        raise ParseError(f"cannot read automaton file: {exc}") from None
    raise ParseError(f"unknown word spec kind {kind!r}")


def _parse_morphic(body):
    fields = {}
    for part in body.split(";"):
        part = part.strip()
        if not part:
            continue
        if part.startswith("k="):
            fields["k"] = part[2:].strip()
            continue
        key, colon, value = part.partition(":")
        if not colon:
            raise ParseError(f"morphic spec: cannot read {part!r}")
        fields[key.strip()] = value.strip()
    missing = {"mu", "coding", "seed"} - set(fields)
    if missing:
        raise ParseError(f"morphic spec lacks {', '.join(sorted(missing))}")
    mu = {a: tuple(split_letters(img)) for a, img in _parse_map(fields["mu"], "mu").items()}
    coding = _parse_map(fields["coding"], "coding")
    k = int(fields["k"]) if "k" in fields else len(next(iter(mu.values())))
    return MorphicSpec(k, mu, coding, fields["seed"])


def parse_automaton(text: str) -> AutomatonSpec:
    """Transition-table format::

        base 2
        initial A
        A out=0 0->A 1->B
        B out=1 0->B 1->A
    """
    base = initial = None
    transitions, outputs = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "base":
            base = int(words[1])
        elif words[0] == "initial":
            initial = words[1]
        else:
            state = words[0]
            for w in words[1:]:
                if w.startswith("out="):
                    outputs[state] = w[4:]
                elif "->" in w:
                    digit, target = w.split("->")
                    transitions[(state, int(digit))] = target
                else:
                    raise ParseError(f"automaton line {lineno}: cannot read {w!r}")
    if base is None or initial is None:
        raise ParseError("automaton file needs 'base' and 'initial' lines")
    try:
        return AutomatonSpec(base, initial, transitions, outputs)
    except MalformedSpec as exc:
        raise ParseError(str(exc)) from None


def parse_psi(text: str) -> ConstantProductMorphism:
    """``a: 6 3 4; b: 3 2 4 3`` -> constant-product morphism."""
    images = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, colon, value = part.partition(":")
        if not colon:
            key, arrow, value = part.partition("->")
            if not arrow:
                raise ParseError(f"morphism entry must be 'letter: b1 b2 ...', got {part!r}")
        try:
            images[key.strip()] = tuple(int(v) for v in value.replace(",", " ").split())
        except ValueError:
            raise ParseError(f"morphism image must be integers, got {value!r}") from None
    return ConstantProductMorphism.from_images(images)


def parse_blocks(text: str) -> list:
    """``23,32`` or ``u v, v u`` -> list of letter tuples."""
    out = [tuple(split_letters(b)) for b in text.split(",")]
    if not out or any(not b for b in out):
        raise ParseError(f"blocks must be nonempty, got {text!r}")
    return out


def parse_bases(field: NumberField, text: str) -> list:
    parts = [p.strip() for p in _split_top(text, ",")]
    if not parts or any(not p for p in parts):
        raise ParseError(f"expected a comma-separated list of bases, got {text!r}")
    return [parse_element(field, p) for p in parts], parts
