"""Exact arithmetic in Q(delta) for a real algebraic integer delta.

Elements are kept as an integer numerator vector over a positive common
denominator, reduced modulo the (monic, integral) minimal polynomial, so two
elements are equal iff their canonical data are identical.  Order queries
(sign, floor, ceil) evaluate the element on a dyadic enclosure of delta and
refine the enclosure by bisection until the answer is forced; the exact
zero/integer tests make the procedure terminate.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt

import sympy

from ..errors import (
    DivisionByZero,
    FieldMismatch,
    NoRealRootInInterval,
    NonMonic,
    ReduciblePolynomial,
)
from . import polynomials as P

_START_BITS = 64


@dataclass(frozen=True)
class Box:
    """Closed rectangle ``[re_lo, re_hi] x [im_lo, im_hi]`` with rational corners."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @property
    def width(self):
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def contains(self, re, im=0):
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi

    def abs2(self):
        """Enclosure of the squared modulus over the box."""
        lo_r, hi_r = _square_interval(self.re_lo, self.re_hi)
        lo_i, hi_i = _square_interval(self.im_lo, self.im_hi)
        return lo_r + lo_i, hi_r + hi_i


def _square_interval(lo, hi):
    if lo >= 0:
        return lo * lo, hi * hi
    if hi <= 0:
        return hi * hi, lo * lo
    return Fraction(0), max(lo * lo, hi * hi)


class _RealRoot:
    """A real root of an integer polynomial, bracketed by dyadic rationals."""

    def __init__(self, poly, lo, hi):
        self.poly = poly
        self._lock = threading.Lock()
        if lo == hi:
            self.exact = Fraction(lo)
            self.lo = self.hi = self.exact
        else:
            self.exact = None
            self.lo, self.hi = Fraction(lo), Fraction(hi)
            self._sign_lo = P.evaluate(poly, self.lo) > 0
        self._cache = {}

    def bracket(self, bits):
        """Integers ``(l, h)`` with ``l <= 2**bits * root <= h``."""
        cached = self._cache.get(bits)
        if cached is not None:
            return cached
        scale = 1 << bits
        if self.exact is not None:
            v = self.exact * scale
            out = (v.numerator // v.denominator, -((-v.numerator) // v.denominator))
        else:
            width = Fraction(1, scale)
            with self._lock:
                while self.hi - self.lo > width:
                    mid = (self.lo + self.hi) / 2
                    v = P.evaluate(self.poly, mid)
                    if v == 0:
                        # only possible for a rational root
                        self.exact = mid
                        self.lo = self.hi = mid
                        break
                    if (v > 0) == self._sign_lo:
                        self.lo = mid
                    else:
                        self.hi = mid
                lo, hi = self.lo, self.hi
            lo_s, hi_s = lo * scale, hi * scale
            out = (lo_s.numerator // lo_s.denominator, -((-hi_s.numerator) // hi_s.denominator))
        self._cache[bits] = out
        return out

    def interval(self, bits):
        lo, hi = self.bracket(bits)
        return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


def _horner_int_interval(coeffs, xl, xh, bits):
    """Enclose ``2**(bits*n) * A(x)`` for ``x`` in ``[xl, xh] / 2**bits``.

    ``coeffs`` are integers low degree first, ``n = len(coeffs) - 1``.
    """
    n = len(coeffs) - 1
    lo = hi = coeffs[n]
    for i in range(n - 1, -1, -1):
        cands = (lo * xl, lo * xh, hi * xl, hi * xh)
        shift = coeffs[i] << (bits * (n - i))
        lo, hi = min(cands) + shift, max(cands) + shift
    return lo, hi


def _box_mul(a, b):
    ar0, ar1, ai0, ai1 = a
    br0, br1, bi0, bi1 = b

    def imul(x0, x1, y0, y1):
        c = (x0 * y0, x0 * y1, x1 * y0, x1 * y1)
        return min(c), max(c)

    rr = imul(ar0, ar1, br0, br1)
    ii = imul(ai0, ai1, bi0, bi1)
    ri = imul(ar0, ar1, bi0, bi1)
    ir = imul(ai0, ai1, br0, br1)
    return (rr[0] - ii[1], rr[1] - ii[0], ri[0] + ir[0], ri[1] + ir[1])


def _eval_box(coeffs, box):
    """Rectangular interval Horner evaluation of a rational polynomial."""
    coeffs = list(coeffs) or [0]
    c = Fraction(coeffs[-1])
    acc = (c, c, Fraction(0), Fraction(0))
    z = (box.re_lo, box.re_hi, box.im_lo, box.im_hi)
    for k in range(len(coeffs) - 2, -1, -1):
        acc = _box_mul(acc, z)
        c = Fraction(coeffs[k])
        acc = (acc[0] + c, acc[1] + c, acc[2], acc[3])
    return Box(*acc)


class PisotVerdict(Enum):
    YES = "yes"
    NOT_PISOT = "no_not_pisot"
    WRONG_DEGREE = "no_wrong_degree"


@dataclass(frozen=True)
class PisotReport:
    verdict: PisotVerdict
    detail: str = ""

    def __bool__(self):
        return self.verdict is PisotVerdict.YES


class NumberField:
    """The field Q(delta) where delta is a chosen real root of ``minpoly``.

    Parameters
    ----------
    minpoly : sequence of int
        Coefficients ``[c0, c1, ..., 1]`` of a monic irreducible polynomial.
    root : "largest" or (lo, hi)
        Which real root is delta.  An explicit interval must contain exactly
        one real root.
    """

    def __init__(self, minpoly, root="largest"):
        poly = P.trim(minpoly)
        if len(poly) < 2:
            raise NonMonic("minimal polynomial must have degree >= 1")
        if any(Fraction(c).denominator != 1 for c in poly):
            raise NonMonic("minimal polynomial must have integer coefficients")
        poly = [int(c) for c in poly]
        if poly[-1] != 1:
            raise NonMonic(f"minimal polynomial must be monic, leading coefficient is {poly[-1]}")
        if len(poly) > 2 and not P.is_irreducible(poly):
            raise ReduciblePolynomial(f"{format_poly(poly)} is reducible over Q")
        self.minpoly = tuple(poly)
        self.degree = len(poly) - 1

        reals = P.isolate_real_roots(poly)
        if not reals:
            raise NoRealRootInInterval(f"{format_poly(poly)} has no real root")
        if root in ("largest", "largest-real", None):
            index = len(reals) - 1
            self.root_selector = "largest"
        else:
            lo, hi = (Fraction(v) for v in root)
            if lo > hi:
                lo, hi = hi, lo
            inside = [i for i, (a, b) in enumerate(reals)
                      if lo <= a and b <= hi and (a != b or lo <= a <= hi)]
            hits = [i for i, (a, b) in enumerate(reals) if not (b < lo or a > hi)]
            if len(hits) != 1 or len(inside) != 1:
                # fall back to an exact count on the user's interval
                seq = P.sturm_sequence(poly)
                n = P.count_roots(seq, lo, hi) + (1 if P.evaluate(poly, lo) == 0 else 0)
                if n != 1:
                    raise NoRealRootInInterval(
                        f"interval ({lo}, {hi}) holds {n} real roots of {format_poly(poly)}")
                hits = [i for i, (a, b) in enumerate(reals)
                        if P.count_roots(seq, max(a, lo) - (1 if a == b else 0), min(b, hi)) == 1
                        and not (b < lo or a > hi)]
                if len(hits) != 1:
                    raise NoRealRootInInterval(f"cannot isolate a root in ({lo}, {hi})")
            index = hits[0]
            self.root_selector = (lo, hi)

        self._reals = [_RealRoot(poly, a, b) for a, b in reals]
        self._delta = self._reals[index]
        self.root_interval = (self._delta.lo, self._delta.hi)
        self._conj_reals = [self._delta] + [r for i, r in enumerate(self._reals) if i != index]
        self._n_complex = self.degree - len(reals)
        self._complex_cache = {}
        self._complex_lock = threading.Lock()
        self._resultant_cache = {}

        d = self.degree
        # X^k mod minpoly for k in [d, 2d-2], as integer vectors
        self._reduce = {}
        vec = [-c for c in poly[:-1]]
        for k in range(d, 2 * d - 1):
            self._reduce[k] = vec
            nxt = [0] + vec[:-1]
            top = vec[-1]
            vec = [nxt[i] - top * poly[i] for i in range(d)]

    # -- construction helpers ---------------------------------------------

    def __repr__(self):
        return f"NumberField({format_poly(self.minpoly)}, root={self.root_selector!r})"

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.minpoly == other.minpoly
                and self._delta.lo <= other._delta.hi and other._delta.lo <= self._delta.hi
                and self._same_root(other))

    def _same_root(self, other):
        lo = max(self._delta.lo, other._delta.lo)
        hi = min(self._delta.hi, other._delta.hi)
        if self._delta.exact is not None or other._delta.exact is not None:
            return self._delta.exact == other._delta.exact
        return lo < hi

    def __hash__(self):
        return hash(self.minpoly)

    def element(self, coeffs):
        return FieldElement.from_coeffs(self, coeffs)

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement.from_coeffs(self, value)
        return FieldElement.from_coeffs(self, [value])

    @property
    def gen(self):
        if self.degree == 1:
            return self([-self.minpoly[0]])
        return self([0, 1])

    @property
    def zero(self):
        return self([0])

    @property
    def one(self):
        return self([1])

    def reduce(self, poly):
        """Reduce an integer polynomial modulo the minimal polynomial."""
        d = self.degree
        poly = list(poly)
        if len(poly) <= d:
            return poly + [0] * (d - len(poly))
        out = poly[:d]
        for k in range(d, len(poly)):
            c = poly[k]
            if not c:
                continue
            vec = self._reduce.get(k)
            if vec is None:
                # high powers: fall back to long division
                r = P.rem(poly, list(self.minpoly))
                r = [int(v) for v in r]
                return r + [0] * (d - len(r))
            for i in range(d):
                out[i] += c * vec[i]
        return out

    # -- root enclosures --------------------------------------------------

    def delta_interval(self, bits):
        return self._delta.interval(bits)

    def _complex_boxes(self, level):
        boxes = self._complex_cache.get(level)
        if boxes is not None:
            return boxes
        with self._complex_lock:
            boxes = self._complex_cache.get(level)
            if boxes is None:
                x = sympy.Symbol("x")
                poly = sympy.Poly(list(reversed(self.minpoly)), x, domain="ZZ")
                eps = sympy.Rational(1, 1 << (8 * (level + 1)))
                _, cplx = poly.intervals(all=True, eps=eps)
                boxes = []
                for ((a, b), _mult) in cplx:
                    re_lo, im_lo = (Fraction(int(v.p), int(v.q)) for v in (sympy.re(a), sympy.im(a)))
                    re_hi, im_hi = (Fraction(int(v.p), int(v.q)) for v in (sympy.re(b), sympy.im(b)))
                    boxes.append(Box(re_lo, re_hi, im_lo, im_hi))
                boxes.sort(key=lambda bx: (bx.re_lo, bx.im_lo))
                self._complex_cache[level] = boxes
        return boxes

    def conjugate_boxes(self, level=0):
        """Enclosures of all roots of the minimal polynomial, delta first.

        Higher ``level`` means tighter boxes (widths shrink geometrically).
        """
        bits = 8 * (level + 1)
        out = []
        for root in self._conj_reals:
            lo, hi = root.interval(bits)
            out.append(Box(lo, hi, Fraction(0), Fraction(0)))
        if self._n_complex:
            out.extend(self._complex_boxes(level))
        return out

    def conjugate_is_real(self, i):
        return i < len(self._conj_reals)


class FieldElement:
    """An element of Q(delta) in canonical reduced form."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den=1):
        # num: list/tuple of d ints, den > 0, already reduced mod minpoly
        g = den
        for a in num:
            g = gcd(g, a)
            if g == 1:
                break
        if g != 1 and g != 0:
            num = [a // g for a in num]
            den //= g
        if not any(num):
            den = 1
        self.field = field
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @classmethod
    def from_coeffs(cls, field, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > field.degree:
            A, D = P.primitive_integer(coeffs)
            A = field.reduce(A)
            return cls(field, A, D)
        A, D = P.primitive_integer(coeffs)
        A = A + [0] * (field.degree - len(A))
        return cls(field, A, D)

    # -- views ------------------------------------------------------------

    @property
    def coeffs(self):
        return [Fraction(a, self.den) for a in self.num]

    def is_zero(self):
        return not any(self.num)

    def is_integral(self):
        return self.den == 1

    def is_rational(self):
        return not any(self.num[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is irrational")
        return Fraction(self.num[0], self.den)

    def __repr__(self):
        return f"FieldElement({format_coeffs(self.coeffs)})"

    def __str__(self):
        return format_coeffs(self.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.num == other.num and self.den == other.den and (
                self.field is other.field or self.field.minpoly == other.field.minpoly)
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return (not any(self.num[1:]) and self.num[0] == other.numerator * (self.den // other.denominator)
                    and self.den % other.denominator == 0 and Fraction(self.num[0], self.den) == other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("operands live in different fields")
            return other
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return FieldElement(self.field, [other.numerator] + [0] * (self.field.degree - 1),
                                other.denominator)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElement(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return FieldElement(self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
                            self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, [self.num[0] * o.num[0]], self.den * o.den)
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    prod[i + j] += a * b
        return FieldElement(self.field, self.field.reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by zero in number field")
        if self.field.degree == 1:
            return FieldElement(self.field, [self.den * (1 if self.num[0] > 0 else -1)], abs(self.num[0]))
        g, s, _ = P.xgcd(list(self.num), list(self.field.minpoly))
        # s * num == 1 mod minpoly, so (den * s) / 1 is the inverse
        return FieldElement.from_coeffs(self.field, [c * self.den for c in s])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ------------------------------------------------------------

    def _enclose(self, bits):
        """Integers ``(lo, hi, den)`` with ``lo/den <= self <= hi/den``."""
        num = self.num
        n = len(num) - 1
        while n > 0 and num[n] == 0:
            n -= 1
        if n == 0:
            return num[0], num[0], self.den
        xl, xh = self.field._delta.bracket(bits)
        lo, hi = _horner_int_interval(num[: n + 1], xl, xh, bits)
        return lo, hi, self.den << (bits * n)

    def sign(self):
        if self.is_zero():
            return 0
        bits = _START_BITS
        while True:
            lo, hi, _ = self._enclose(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def floor(self):
        bits = _START_BITS
        while True:
            lo, hi, den = self._enclose(bits)
            f_lo, f_hi = lo // den, hi // den
            if f_lo == f_hi:
                return f_lo
            if self == f_hi:
                return f_hi
            bits *= 2

    def ceil(self):
        return -((-self).floor())

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __float__(self):
        lo, hi, den = self._enclose(64)
        return float(Fraction(lo + hi, 2 * den))

    # -- conjugates -------------------------------------------------------

    def conjugate_values(self, precision):
        """Boxes of width <= ``precision`` around ``G(delta_i)`` for every conjugate."""
        precision = Fraction(precision)
        if precision <= 0:
            raise ValueError("precision must be positive")
        coeffs = self.coeffs
        level = 0
        pending = list(range(self.field.degree))
        result = [None] * self.field.degree
        while pending:
            boxes = self.field.conjugate_boxes(level)
            still = []
            for i in pending:
                b = _eval_box(coeffs, boxes[i])
                if b.width <= precision:
                    result[i] = b
                else:
                    still.append(i)
            pending = still
            level += 1
        return result

    def charpoly(self):
        """Characteristic polynomial of multiplication by this element."""
        field = self.field
        d = field.degree
        basis = [field([0] * i + [1]) for i in range(d)]
        cols = [(self * b).coeffs for b in basis]
        matrix = [[cols[j][i] for j in range(d)] for i in range(d)]
        return P.charpoly(matrix)


def max_norm_floor(element):
    """``floor(max_i |G(delta_i)|)`` for an element with integer coefficients."""
    field = element.field
    if not element.is_integral():
        raise ValueError("max norm is defined here for integer coefficient vectors")
    coeffs = list(element.num)
    if not any(coeffs[1:]):
        return abs(coeffs[0])
    level = 0
    exact_cache = {}
    while True:
        boxes = field.conjugate_boxes(level)
        encl = [_eval_box(coeffs, b).abs2() for b in boxes]
        max_lo = max(lo for lo, _ in encl)
        max_hi = max(hi for _, hi in encl)
        n_lo = isqrt(max_lo.numerator // max_lo.denominator)
        n_hi = isqrt(max_hi.numerator // max_hi.denominator)
        if n_lo == n_hi:
            return n_lo
        if n_hi - n_lo == 1:
            m2 = n_hi * n_hi
            if any(lo >= m2 for lo, _ in encl):
                return n_hi
            if all(hi < m2 for _, hi in encl):
                return n_lo
            for i, (lo, hi) in enumerate(encl):
                if lo <= m2 <= hi and not field.conjugate_is_real(i):
                    key = (i, n_hi)
                    if key not in exact_cache:
                        exact_cache[key] = _abs2_equals(field, coeffs, i, m2)
                    if exact_cache[key]:
                        return n_hi
        level += 1


def _abs2_equals(field, coeffs, i, target):
    """Decide ``|G(delta_i)|**2 == target`` exactly for a complex conjugate.

    ``|G(z)|**2 = G(z) G(conj z)`` is a root of
    ``R(t) = Res_y(M(y), Res_x(M(x), t - G(x) G(y)))``.  If ``R(target) != 0``
    the answer is no; otherwise refine until the enclosure is narrower than
    the root separation of the square-free part of ``R``.
    """
    key = tuple(coeffs)
    cached = field._resultant_cache.get(key)
    if cached is None:
        x, y, t = sympy.symbols("x y t")
        M = lambda v: sum(int(c) * v**k for k, c in enumerate(field.minpoly))
        G = lambda v: sum(int(c) * v**k for k, c in enumerate(coeffs))
        inner = sympy.resultant(M(x), t - G(x) * G(y), x)
        R = sympy.Poly(sympy.resultant(M(y), inner, y), t)
        sqf = R.sqf_part()
        from sympy.polys.rootisolation import dup_mignotte_sep_bound_squared
        sep2 = dup_mignotte_sep_bound_squared(sqf.rep.to_list(), sqf.domain.get_field())
        cached = (R, Fraction(int(sympy.Rational(sep2).p), int(sympy.Rational(sep2).q)))
        field._resultant_cache[key] = cached
    R, sep2 = cached
    if R.eval(sympy.Rational(target.numerator, target.denominator)) != 0:
        return False
    level = 0
    while True:
        box = field.conjugate_boxes(level)[i]
        lo, hi = _eval_box(coeffs, box).abs2()
        if not lo <= target <= hi:
            return False
        if (hi - lo) ** 2 < sep2:
            return True
        level += 1


def is_pisot_of_degree_d(element):
    """Classify ``element`` against the hypotheses of the finiteness theorem."""
    field = element.field
    if not element.is_integral():
        return PisotReport(PisotVerdict.NOT_PISOT, "NotIntegral: coefficients are not all integers")
    if element.sign() <= 0 or (element - 1).sign() <= 0:
        return PisotReport(PisotVerdict.NOT_PISOT, "element is not greater than 1")
    chi = [int(c) for c in element.charpoly()]
    if field.degree > 1:
        if not P.is_irreducible(chi):
            degs = P.factor_degrees(chi)
            return PisotReport(PisotVerdict.WRONG_DEGREE,
                               f"algebraic degree {degs[0]} instead of {field.degree}")
    coeffs = element.coeffs
    pending = list(range(1, field.degree))
    level = 0
    unit_circle_checked = False
    while pending:
        boxes = field.conjugate_boxes(level)
        still = []
        for i in pending:
            lo, hi = _eval_box(coeffs, boxes[i]).abs2()
            if hi < 1:
                continue
            if lo >= 1:
                return PisotReport(PisotVerdict.NOT_PISOT,
                                   f"conjugate {i} has modulus >= 1 (|.|^2 in [{float(lo):.4g}, {float(hi):.4g}])")
            still.append(i)
        if still and not unit_circle_checked and level >= 2:
            unit_circle_checked = True
            if _has_unit_circle_root(chi):
                return PisotReport(PisotVerdict.NOT_PISOT, "a conjugate lies on the unit circle")
        pending = still
        level += 1
    return PisotReport(PisotVerdict.YES)


def _has_unit_circle_root(poly):
    poly = P.trim(poly)
    if len(poly) % 2 == 0 or poly != poly[::-1]:
        # irreducible of degree >= 2 with a unimodular root must be reciprocal
        return False
    g = P.trace_polynomial(poly)
    seq = P.sturm_sequence(g)
    n = P.count_roots(seq, Fraction(-2), Fraction(2))
    return n > 0 or P.evaluate(g, -2) == 0


def make_field(minpoly, selector="largest"):
    return NumberField(minpoly, selector)


# -- formatting ---------------------------------------------------------------

def format_poly(poly, var="x"):
    terms = []
    for k in range(len(poly) - 1, -1, -1):
        c = poly[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{abs(c)}*{mono}"
        else:
            body = str(abs(c))
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_coeffs(coeffs, var="d"):
    return format_poly([Fraction(c) for c in coeffs], var)
