from fractions import Fraction

import pytest

from cantorbase.analysis import (
    admissible_up,
    block_outputs,
    complexity_ratio,
    detect_tail,
    is_strongly_connected,
    pair_set,
    prefix_table,
    replay_witness,
    restrict,
    scc,
    transduce_uniform_morphic,
    two_walk,
)
from cantorbase.errors import NonUniformInput
from cantorbase.transducer import BaseAlphabet, build, run, run_up
from cantorbase.words import ImageSpec, UPSpec, UPWord, thue_morse

U, V = ("B", "b", "B"), ("B", "B", "b")


def s(ds):
    return "".join(map(str, ds))


@pytest.fixture(scope="module")
def E7(plastic):
    b = plastic.gen
    return BaseAlphabet(plastic, [b, b ** 3], names=("b", "B"))


@pytest.fixture(scope="module")
def T7(E7):
    return build(E7, 1, "quasi")


@pytest.fixture(scope="module")
def E23(Q):
    return BaseAlphabet(Q, [2, 3])


@pytest.fixture(scope="module")
def T180(E23):
    return build(E23, Fraction(932, 3885), "greedy")


def tm_blocks(u, v):
    return ImageSpec(thue_morse("u", "v"), {"u": u, "v": v})


class TestTwoWalk:
    def test_smallest_pisot_holds(self, T7, E7):
        res = two_walk(T7)
        assert res.holds
        w = res.witness
        assert w.state == T7.initial
        assert w.names(E7) == (list(U), list(V))
        assert s(w.w) == "200"
        assert replay_witness(T7, w)

    def test_silver_fails(self, sqrt2):
        g = 1 + sqrt2.gen
        T = build(BaseAlphabet(sqrt2, [g, g * g]), 1, "quasi")
        assert not two_walk(T)
        assert two_walk(T).witness is None

    def test_unary_alphabet(self, golden):
        phi = golden.gen
        T = build(BaseAlphabet(golden, [phi]), Fraction(1, 3), "greedy")
        assert not two_walk(T)

    def test_integer_bases(self, E23):
        # from 0 every letter outputs 0 and loops, so 2 and 3 are two closed walks
        T = build(E23, 1, "greedy")
        res = two_walk(T)
        assert res and replay_witness(T, res.witness)
        assert T.states[res.witness.state] == 0

    def test_pair_set_contains_anchor(self, T7):
        ps = pair_set(T7, T7.initial)
        assert (T7.initial, T7.initial) in ps

    def test_replay_rejects_forgery(self, T7):
        w = two_walk(T7).witness
        from cantorbase.analysis import TwoWalkWitness

        assert not replay_witness(T7, TwoWalkWitness(w.state, w.u, w.u, w.w))
        assert not replay_witness(T7, TwoWalkWitness(w.state, w.u, w.v, (1, 0, 0)))

    def test_thue_morse_shifts_by_three(self, E7):
        # every base in {u, v}^omega gives (200)^omega at shifts 3n
        base = tm_blocks(U, V)
        T = build(E7, 1, "quasi")
        letters = E7.indices(base.stream(3 * 50 + 60))
        for n in range(51):
            assert s(T.feed(letters[3 * n:3 * n + 60])) == "200" * 20


class TestConnectivity:
    def test_single_state(self, E23):
        T = build(E23, 0)
        assert scc(T) == [[0]] and is_strongly_connected(T)

    def test_integer_bases_from_one(self, E23):
        assert scc(build(E23, 1)) == [[0], [1]]

    @pytest.mark.parametrize("a,b,expected", [
        ((1, 1), (2, 2), True),
        ((1, 1), (3, 2), True),
        ((4, 3), (5, 4), False),
        ((3, 2), (7, 5), False),
        ((3, 2), (12, 8), False),
    ])
    def test_quadratic(self, sqrt2, a, b, expected):
        s2 = sqrt2.gen
        E = BaseAlphabet(sqrt2, [a[0] + a[1] * s2, b[0] + b[1] * s2])
        assert is_strongly_connected(build(E, 1, "quasi")) is expected

    def test_gamma5(self, gamma5_field):
        g = gamma5_field.gen
        T = build(BaseAlphabet(gamma5_field, [g ** 2, g ** 3]), 1, "quasi")
        assert T.n_states == 127
        assert is_strongly_connected(T)


class TestRestriction:
    def test_thue_morse_blocks_complexity(self, T180):
        assert restrict(T180, [(2, 3), (3, 2)]).n_visited == 14
        assert complexity_ratio(T180, [(2, 3), (3, 2)]) == Fraction(14, 180)

    def test_single_letters(self, T180, T7):
        assert complexity_ratio(T180, [(2,), (3,)]) == 1
        assert complexity_ratio(T7, [("b",), ("B",)]) == 1

    def test_one_fifth_single_block(self, E23):
        T = build(E23, Fraction(1, 5))
        assert complexity_ratio(T, [(2, 3)]) == Fraction(1, 2)

    def test_closed_walk_blocks(self, T7):
        R = restrict(T7, [U, V])
        assert T7.initial in R.visited
        # every boundary pair is the initial state: both blocks are closed walks
        assert {q for q, f in R.product_states if f == 0} == {T7.initial}

    def test_bad_blocks(self, T7):
        with pytest.raises(ValueError):
            restrict(T7, [])


class TestPrefixTable:
    def test_detect_tail(self):
        assert detect_tail([1, 0, 2, 0, 0, 2, 0, 0], (2, 0, 0)) == 2
        assert detect_tail([2, 0, 0, 2, 0, 0], (2, 0, 0)) == 0
        assert detect_tail([1, 1, 1, 2, 0], (2, 0, 0)) is None

    def test_prefixes_up_to_14(self, E7):
        table = prefix_table(E7, 1, tm_blocks(U, V), 14, (2, 0, 0))
        got = {s(w): ns for w, ns in table.prefixes.items()}
        assert got == {
            "": [0, 3, 6, 9, 12], "10110": [1, 10], "2010": [2, 11],
            "20020010110": [4], "1010": [5], "20010110": [7], "1002010": [8],
            "20010102010": [13], "1002002010": [14],
        }
        assert table.undetected == []
        assert table.horizon == 120

    def test_known_prefixes_up_to_100(self, E7):
        allowed = {"", "10110", "2010", "20020010110", "1010", "20010110", "1002010",
                   "20010102010", "1002002010", "10102010", "2002010", "20020010102010"}
        table = prefix_table(E7, 1, tm_blocks(U, V), 100, (2, 0, 0))
        assert table.undetected == []
        assert {s(w) for w in table.prefixes} <= allowed

    def test_listed_occurrences(self, E7):
        # every listed index except 16 and 28, which the source lists under two prefixes
        listed = {
            "10110": [1, 10, 19, 31, 37], "2010": [2, 11, 20, 32, 38],
            "20020010110": [4, 40, 76, 124, 148], "1010": [5, 23, 41],
            "20010110": [7, 34, 43, 58, 79], "1002010": [8, 35, 44, 59, 80],
            "20010102010": [13, 25, 49, 67, 85], "1002002010": [14, 26, 50, 68, 86],
            "10102010": [16, 28, 52, 70, 88], "2002010": [17, 29, 53, 71, 89],
            "20020010102010": [22, 64, 94, 112, 166],
        }
        table = prefix_table(E7, 1, tm_blocks(U, V), 170, (2, 0, 0))
        for w, ns in listed.items():
            for n in ns:
                assert s(table.prefix_of(n)) == w

    def test_shifted_block_outputs(self, T7):
        f1 = [x for c in "uvvuv" for x in {"u": U, "v": V}[c]]
        assert s(block_outputs(T7, f1[1:])) == "10110200200200"
        assert s(block_outputs(T7, f1[2:])) == "2010200200200"

    def test_aperiodic_variant(self, E7):
        base = tm_blocks(("b", "b", "B"), ("b", "B", "b")).shifted(1)
        digits = run(E7, 1, base, 42, "quasi")[0]
        assert s(digits) == "100200100010200010100200100010100200010200"
        table = prefix_table(E7, 1, base, 0, (1, 0, 0))
        assert table.undetected == [0]

    def test_horizon_validation(self, E7):
        with pytest.raises(ValueError):
            prefix_table(E7, 1, tm_blocks(U, V), 3, (2, 0, 0), horizon=5)


class TestAdmissible:
    def test_examples(self, E23):
        base = UPWord((), (2, 3))
        assert admissible_up(UPWord((), (0, 1)), base, E23) == (True, None)
        assert admissible_up(UPWord((), (1, 2)), base, E23) == (False, 0)
        assert admissible_up(UPWord((2,), (0,)), base, E23) == (False, 0)

    def test_genuine_expansions_are_admissible(self, E_phi_alternate):
        E, base = E_phi_alternate
        for r in (Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)):
            a = run_up(E, r, base, "quasi")
            assert admissible_up(a, base, E)[0]


@pytest.fixture(scope="module")
def E_phi_alternate(golden):
    phi = golden.gen
    E = BaseAlphabet(golden, [phi, phi ** 3], names=("phi", "phi^3"))
    return E, UPWord(("phi",), ("phi", "phi^3"))


class TestTransduce:
    def test_golden_thue_morse(self, golden):
        phi = golden.gen
        E = BaseAlphabet(golden, [phi, phi ** 3])
        spec = transduce_uniform_morphic(E, 1, thue_morse(0, 1), "quasi")
        assert s(spec.stream(8)) == "12204002"
        assert spec.stream(1000) == run(E, 1, thue_morse(0, 1), 1000, "quasi")[0]

    def test_integer_thue_morse(self, E23):
        spec = transduce_uniform_morphic(E23, Fraction(932, 3885), thue_morse(2, 3), "greedy")
        assert spec.stream(1000) == run(E23, Fraction(932, 3885), thue_morse(2, 3), 1000)[0]

    def test_zero_point(self, E23):
        spec = transduce_uniform_morphic(E23, 0, thue_morse(2, 3), "greedy")
        assert set(spec.coding.values()) == {0}

    def test_non_morphic_base(self, E23):
        with pytest.raises(NonUniformInput):
            transduce_uniform_morphic(E23, 1, UPSpec(UPWord((), (2, 3))))
        with pytest.raises(NonUniformInput):
            transduce_uniform_morphic(E23, 1, thue_morse(2, 3).shifted(1))
