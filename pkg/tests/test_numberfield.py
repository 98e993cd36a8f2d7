import random
import threading
from collections import Counter
from fractions import Fraction
from math import sqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorbase.errors import DivisionByZero, FieldMismatch, NoRealRootInInterval, NonMonic, ReduciblePolynomial
from cantorbase.numberfield import PisotVerdict, is_pisot_of_degree_d, make_field, max_norm_floor

PHI = (1 + sqrt(5)) / 2


class TestConstruction:
    def test_golden_mean(self, golden):
        lo, hi = golden.root_interval
        assert lo < PHI <= hi
        assert 1 < float(golden.gen) < 2
        assert golden.degree == 2

    def test_plastic(self, plastic):
        assert 1.32 < float(plastic.gen) < 1.33

    def test_sqrt2(self, sqrt2):
        assert abs(float(sqrt2.gen) - sqrt(2)) < 1e-12

    @pytest.mark.parametrize("poly,exc", [
        ([-1, 0, 1], ReduciblePolynomial),
        ([-1, -1, 2], NonMonic),
        ([1, 0, 1], NoRealRootInInterval),
        ([5], NonMonic),
    ])
    def test_errors(self, poly, exc):
        with pytest.raises(exc):
            make_field(poly)

    def test_explicit_root_selection(self):
        K = make_field([-1, -1, 1], (Fraction(-1), Fraction(0)))
        assert -0.62 < float(K.gen) < -0.61
        with pytest.raises(NoRealRootInInterval):
            make_field([-1, -1, 1], (Fraction(3), Fraction(4)))

    def test_rational_field(self, Q):
        assert Q.degree == 1
        assert Q(Fraction(3, 5)).floor() == 0


class TestArithmetic:
    def test_phi_squared(self, golden):
        phi = golden.gen
        assert phi * phi == phi + 1
        assert (phi * phi).coeffs == [1, 1]

    def test_silver_square(self, sqrt2):
        s = sqrt2.gen
        assert (1 + s) * (1 + s) == 3 + 2 * s

    def test_division_by_zero(self, golden):
        with pytest.raises(DivisionByZero):
            golden.gen / golden.zero
        with pytest.raises(ZeroDivisionError):
            golden.one / 0

    def test_field_mismatch(self, golden, sqrt2):
        with pytest.raises(FieldMismatch):
            golden.gen + sqrt2.gen

    def test_canonical_coefficients(self, golden):
        a = golden([Fraction(2, 4), Fraction(-3, 6)])
        assert a.coeffs == [Fraction(1, 2), Fraction(-1, 2)]
        assert golden([0, 0]).coeffs == [0, 0]

    def test_reduction_of_long_input(self, plastic):
        # b^3 = b + 1
        assert plastic([0, 0, 0, 1]) == plastic([1, 1, 0])


class TestOrder:
    def test_floor_phi(self, golden):
        assert golden.gen.floor() == 1

    def test_ceil_phi_cubed_minus_one(self, golden):
        phi = golden.gen
        assert phi ** 3 == 2 * phi + 1
        assert (phi ** 3 - 1).ceil() == 4

    def test_zero(self, golden):
        assert golden.zero.floor() == 0
        assert golden.zero.sign() == 0

    def test_integer_boundary(self, golden):
        phi = golden.gen
        x = phi * phi - phi  # exactly 1
        assert x.floor() == 1 and x.ceil() == 1

    def test_tiny_difference(self, golden):
        phi = golden.gen
        # F_40 * phi - F_41 is about -1e-8 (sign alternates, negative for even index)
        a, b = 102334155, 165580141
        x = a * phi - b
        assert x.sign() == (1 if a * PHI - b > 0 else -1)
        assert x.floor() == -1


def test_conjugate_values(golden):
    phi = golden.gen
    conj = (4 * phi + 1).conjugate_values(Fraction(1, 10 ** 6))
    assert conj[1].contains(Fraction(3) - 2 * Fraction(2236068, 10 ** 6), 0) or \
        conj[1].re_lo < -1.4721 < conj[1].re_hi
    assert conj[1].width <= Fraction(1, 10 ** 6)
    c2 = (phi * (4 * phi + 1)).conjugate_values(Fraction(1, 10 ** 6))
    assert c2[1].re_lo < (13 - 5 * sqrt(5)) / 2 < c2[1].re_hi


def test_conjugate_values_constant(plastic):
    boxes = plastic(Fraction(7, 3)).conjugate_values(Fraction(1, 100))
    assert len(boxes) == 3
    assert all(b.contains(Fraction(7, 3), 0) for b in boxes)


def test_conjugate_boxes_disjoint(gamma5_field):
    boxes = gamma5_field.conjugate_boxes(2)
    for i, a in enumerate(boxes):
        for b in boxes[i + 1:]:
            assert (a.re_hi < b.re_lo or b.re_hi < a.re_lo or a.im_hi < b.im_lo or b.im_hi < a.im_lo)


class TestMaxNorm:
    def test_zero(self, golden):
        assert max_norm_floor(golden.zero) == 0

    def test_generator(self, golden):
        assert max_norm_floor(golden.gen) == 1

    def test_counts_for_golden_mean(self, golden):
        counts = Counter(max_norm_floor(golden([b, a])) for a in range(-20, 21) for b in range(-20, 21))
        assert [counts[i] for i in range(11)] == [1, 6, 8, 14, 16, 18, 24, 26, 32, 34, 38]

    def test_floor_convention_by_brute_force(self, golden):
        # independent float oracle for norm floors 0 and 1 (far from ties)
        def oracle(a, b):
            return int(max(abs(a * PHI + b), abs(a * (1 - PHI) + b)))

        for a in range(-3, 4):
            for b in range(-3, 4):
                assert max_norm_floor(golden([b, a])) == oracle(a, b)

    def test_complex_conjugates(self, gamma5_field):
        g = gamma5_field.gen
        # g is about 3.847, the other two conjugates have modulus about 0.51
        assert max_norm_floor(g) == 3
        assert max_norm_floor(g * g) == 14

    def test_exact_modulus_test_on_complex_conjugate(self):
        from cantorbase.numberfield.field import _abs2_equals

        # at z = i * 2^(1/4): |1 + 2z + 2z^2|^2 = (1 - 2 sqrt2)^2 + 4 sqrt2 = 9 exactly
        K = make_field([-2, 0, 0, 0, 1])
        complex_idx = [i for i in range(4) if not K.conjugate_is_real(i)]
        assert len(complex_idx) == 2
        for i in complex_idx:
            assert [_abs2_equals(K, [1, 2, 2, 0], i, t) for t in (8, 9, 10)] == [False, True, False]

    def test_exact_tie_on_complex_conjugate(self):
        # x^4 + 1: all conjugates on the unit circle, so |X| == 1 exactly
        K = make_field([-2, 0, 0, 0, 1])  # x^4 - 2, roots 2^(1/4) * i^k
        x = K.gen
        assert max_norm_floor(x * x) == 1  # |sqrt2| and |i sqrt2| both sqrt2 -> 1
        assert max_norm_floor(x ** 4 - 1) == 1  # constant 1


class TestPisot:
    def test_silver(self, sqrt2):
        assert is_pisot_of_degree_d(1 + sqrt2.gen).verdict is PisotVerdict.YES

    def test_not_pisot(self, golden):
        assert is_pisot_of_degree_d(4 * golden.gen + 1).verdict is PisotVerdict.NOT_PISOT

    def test_wrong_degree(self, golden):
        assert is_pisot_of_degree_d(golden(2)).verdict is PisotVerdict.WRONG_DEGREE

    def test_not_integral(self, golden):
        r = is_pisot_of_degree_d(golden([Fraction(1, 2), 1]))
        assert r.verdict is PisotVerdict.NOT_PISOT and "NotIntegral" in r.detail

    def test_not_above_one(self, golden):
        assert not is_pisot_of_degree_d(golden.gen - 1)

    def test_unit_circle_conjugate(self):
        # Salem number: x^4 - x^3 - x^2 - x + 1 has two conjugates on the unit circle
        K = make_field([1, -1, -1, -1, 1])
        r = is_pisot_of_degree_d(K.gen)
        assert r.verdict is PisotVerdict.NOT_PISOT

    def test_rational_integers(self, Q):
        assert is_pisot_of_degree_d(Q(2))
        assert is_pisot_of_degree_d(Q(3))
        assert not is_pisot_of_degree_d(Q(1))

    @pytest.mark.parametrize("pair", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)])
    def test_golden_closure(self, golden, pair):
        phi = golden.gen
        a, b = (phi ** k for k in pair)
        assert is_pisot_of_degree_d(a * b)

    def test_silver_closure(self, sqrt2):
        s = sqrt2.gen
        elems = [1 + s, 3 + 2 * s]
        for a in elems:
            for b in elems:
                assert is_pisot_of_degree_d(a * b)


def _rand_elem(K, rng, size=6, den=5):
    return K([Fraction(rng.randint(-size, size), rng.randint(1, den)) for _ in range(K.degree)])


@pytest.mark.parametrize("poly", [[-1, -1, 1], [-1, -1, 0, 1]])
def test_field_laws_random(poly):
    K = make_field(poly)
    rng = random.Random(12345)
    for _ in range(300):
        a, b, c = (_rand_elem(K, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inverse() == K.one


@settings(max_examples=200, deadline=None)
@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=20), min_size=2, max_size=2))
def test_order_consistency(coeffs):
    K = make_field([-1, -1, 1])
    a = K(coeffs)
    f, c = a.floor(), a.ceil()
    assert (a - f).sign() >= 0 and (a - (f + 1)).sign() < 0
    assert (a - (c - 1)).sign() > 0 and (a - c).sign() <= 0
    assert abs(float(a) - (float(coeffs[0]) + float(coeffs[1]) * PHI)) < 1e-9


def test_determinism(golden):
    a = (golden([3, 7]) / golden([2, -5])) ** 3
    b = (golden([3, 7]) / golden([2, -5])) ** 3
    assert a.num == b.num and a.den == b.den


def test_shared_across_threads(plastic):
    b = plastic.gen
    elems = [b ** k - k for k in range(1, 40)]
    expected = [int(float(e) // 1) for e in elems]
    results = [None] * 8

    def work(i):
        results[i] = [e.floor() for e in elems]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)
