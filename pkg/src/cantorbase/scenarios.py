"""Packaged reproduction scenarios with embedded expected values.

Each scenario returns a list of :class:`Check` records; the CLI prints one
line per check.  Everything here is deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .analysis import (
    block_outputs,
    complexity_ratio,
    is_strongly_connected,
    prefix_table,
    replay_witness,
    restrict,
    two_walk,
)
from .errors import UnknownScenario
from .morphisms import (
    ConstantProductMorphism,
    block_expand,
    build_frying_pan,
    delta_expansion,
    digit_decompose,
    letter_to_letter,
    merge_by_residue,
)
from .numberfield import make_field, max_norm_floor
from .transducer import BaseAlphabet, build, run, run_up
from .words import ImageSpec, UPWord, is_eventually_periodic, thue_morse


@dataclass(frozen=True)
class Check:
    label: str
    expected: object
    actual: object

    @property
    def ok(self):
        return self.expected == self.actual

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        if self.ok:
            return f"{self.label}={self.actual} {status}"
        return f"{self.label}={self.actual} {status} (expected {self.expected})"


def digits_str(ds):
    return "".join(str(d) for d in ds)


# -- shared fixtures ------------------------------------------------------------

def q_field():
    return make_field([0, 1])


def golden():
    K = make_field([-1, -1, 1])
    return K, K.gen


def sqrt2():
    K = make_field([-2, 0, 1])
    return K, K.gen


def smallest_pisot():
    K = make_field([-1, -1, 0, 1])
    return K, K.gen


def gamma5():
    K = make_field([-1, -3, -3, 1])
    return K, K.gen


def tm_blocks(u, v):
    """Thue-Morse word over the blocks ``u`` and ``v``, flattened."""
    return ImageSpec(thue_morse("u", "v"), {"u": tuple(u), "v": tuple(v)})


U_BLOCK, V_BLOCK = ("B", "b", "B"), ("B", "B", "b")
U_PRIME, V_PRIME = ("b", "b", "B"), ("b", "B", "b")


def smallest_pisot_alphabet():
    K, b = smallest_pisot()
    return BaseAlphabet(K, [b, b ** 3], names=("b", "B"))


def match_rooted(T, expected, root):
    """Check ``T`` against ``{name: {letter: (digit, target name)}}`` by following
    edges from ``root`` (mapped to the initial state).  Returns True on an exact,
    bijective match.
    """
    mapping = {root: T.initial}
    todo = [root]
    while todo:
        name = todo.pop()
        q = mapping[name]
        for e, (digit, target) in expected[name].items():
            if int(T.out[q, e]) != digit:
                return False
            t = int(T.nxt[q, e])
            if target in mapping:
                if mapping[target] != t:
                    return False
            else:
                mapping[target] = t
                todo.append(target)
    return len(mapping) == T.n_states == len(expected) and len(set(mapping.values())) == len(mapping)


INTEGER_GREEDY_ONE = {"1": {0: (2, "0"), 1: (3, "0")}, "0": {0: (0, "0"), 1: (0, "0")}}
INTEGER_QUASI_ONE = {"1": {0: (1, "1"), 1: (2, "1")}}
INTEGER_GREEDY_FIFTH = {
    "1/5": {0: (0, "2/5"), 1: (0, "3/5")},
    "2/5": {0: (0, "4/5"), 1: (1, "1/5")},
    "4/5": {0: (1, "3/5"), 1: (2, "2/5")},
    "3/5": {0: (1, "1/5"), 1: (1, "4/5")},
}
GOLDEN_QUASI_ONE = {
    "1": {0: (1, "A"), 1: (4, "B")},
    "A": {0: (0, "1"), 1: (2, "A")},
    "B": {0: (0, "C"), 1: (0, "1")},
    "C": {0: (0, "A"), 1: (1, "A")},
}
SILVER_QUASI_ONE = {
    "1": {0: (2, "b1"), 1: (5, "b2")},
    "b1": {0: (0, "1"), 1: (2, "b1")},
    "b2": {0: (1, "1"), 1: (4, "b2")},
}
SMALLEST_PISOT_QUASI_ONE = {
    "a": {0: (1, "b2"), 1: (2, "b2")},
    "b1": {0: (0, "b3"), 1: (0, "a")},
    "b2": {0: (0, "b1"), 1: (0, "b4")},
    "b3": {0: (0, "b4"), 1: (1, "b2")},
    "b4": {0: (0, "a"), 1: (1, "b4")},
}

TM_BLOCK_PREFIXES = {
    "": [0, 3, 6, 9, 12],
    "10110": [1, 10],
    "2010": [2, 11],
    "20020010110": [4],
    "1010": [5],
    "20010110": [7],
    "1002010": [8],
    "20010102010": [13],
    "1002002010": [14],
}

TM_FACTORS_5 = ["uvvuv", "vvuvu", "vuvuu", "uvuuv", "vuuvv", "uuvvu",
                  "uvvuu", "vvuuv", "vuuvu", "uuvuv", "uvuvv", "vuvvu"]
SHIFT1_OUTPUTS = ["10110200200200", "20020010110200", "20010110200200", "10110200200200",
                 "20010102010200", "10102010200200", "10110200200200", "20020010102010",
                 "20010102010200", "10102010200200", "10110200200200", "20010110200200"]
SHIFT2_OUTPUTS = ["2010200200200", "1010200200200", "1002010200200", "2010200200200",
                 "1002002010200", "2002010200200", "2010200200200", "1010200200200",
                 "1002002010200", "2002010200200", "2010200200200", "1002010200200"]

VARIANT_PREFIX_42 = "100200100010200010100200100010100200010200"

GOLDEN_NORM_COUNTS = [1, 6, 8, 14, 16, 18, 24, 26, 32, 34, 38]


def connectivity_cases():
    """``(label, alphabet, expected connectivity)`` for the six connectivity examples."""
    K2, s = sqrt2()
    g1, g2, g3, g4 = 1 + s, 2 + 2 * s, 4 + 3 * s, 5 + 4 * s
    K5, g5 = gamma5()
    return [
        ("{g1,g2}", BaseAlphabet(K2, [g1, g2], names=("g1", "g2")), True),
        ("{g1,g1^2}", BaseAlphabet(K2, [g1, g1 ** 2], names=("g1", "g1^2")), True),
        ("{g5^2,g5^3}", BaseAlphabet(K5, [g5 ** 2, g5 ** 3], names=("g5^2", "g5^3")), True),
        ("{g3,g4}", BaseAlphabet(K2, [g3, g4], names=("g3", "g4")), False),
        ("{g1^2,g1^3}", BaseAlphabet(K2, [g1 ** 2, g1 ** 3], names=("g1^2", "g1^3")), False),
        ("{g1^2,g2^2}", BaseAlphabet(K2, [g1 ** 2, g2 ** 2], names=("g1^2", "g2^2")), False),
    ]


def golden_norm_counts(bound=20, top=10):
    K, _ = golden()
    c = Counter(max_norm_floor(K([b, a])) for a in range(-bound, bound + 1)
                for b in range(-bound, bound + 1))
    return [c[i] for i in range(top + 1)]


# -- scenarios ---------------------------------------------------------------------

def scenario_integer_transducers():
    E = BaseAlphabet(q_field(), [2, 3])
    checks = []
    for label, point, mode, expected in (("greedy r=1", 1, "greedy", INTEGER_GREEDY_ONE),
                                         ("quasi r=1", 1, "quasi", INTEGER_QUASI_ONE),
                                         ("greedy r=1/5", Fraction(1, 5), "greedy", INTEGER_GREEDY_FIFTH)):
        T = build(E, point, mode)
        states = sorted(str(s) for s in T.states)
        checks.append(Check(f"{label} states", sorted(expected), states))
        exact = all(str(T.states[T.nxt[q, e]]) == expected[str(T.states[q])][e][1]
                    and int(T.out[q, e]) == expected[str(T.states[q])][e][0]
                    for q in range(T.n_states) for e in range(2)
                    if str(T.states[q]) in expected)
        checks.append(Check(f"{label} edges", True, exact))
    return checks


def scenario_frying_pan():
    psi = ConstantProductMorphism.from_images({2: (2, 3), 3: (3, 2)})
    r = Fraction(932, 3885)
    d6 = delta_expansion(r, 6)
    pan = build_frying_pan(d6, [2, 3], psi)
    l2l = letter_to_letter(pan, psi)
    merged = merge_by_residue(l2l)
    return [
        Check("d_6(932/3885)", "1(2345)^w", str(d6)),
        Check("d_T(932/3885)", "0110111121021020", digits_str(block_expand(d6, thue_morse(2, 3), psi, 16))),
        Check("frying pan states", 5, pan.n_states),
        Check("letter-to-letter states", 15, l2l.n_states),
        Check("merged states", 14, merged.n_states),
        Check("reachable under {23,32}", 14, len(merged.reachable([(2, 3), (3, 2)]))),
    ]


def scenario_thue_morse_integer():
    E = BaseAlphabet(q_field(), [2, 3])
    T = build(E, Fraction(932, 3885), "greedy")
    blocks = [(2, 3), (3, 2)]
    visited = restrict(T, blocks).n_visited
    return [
        Check("states", 180, T.n_states),
        Check("visited under {23,32}", 14, visited),
        Check("complexity", "14/180", f"{visited}/{T.n_states}"),
        Check("complexity (reduced)", Fraction(14, 180), complexity_ratio(T, blocks)),
    ]


def scenario_golden():
    K, phi = golden()
    E = BaseAlphabet(K, [phi, phi ** 3], names=("phi", "phi^3"))
    T1 = build(E, 1, "quasi")
    T2 = build(E, Fraction(1, 2), "quasi")
    tm = thue_morse(0, 1)
    return [
        Check("states r=1", 4, T1.n_states),
        Check("edges r=1", True, match_rooted(T1, GOLDEN_QUASI_ONE, "1")),
        Check("states r=1/2", 8, T2.n_states),
        Check("d*_T(1)", "12204002", digits_str(run(E, 1, tm, 8, "quasi")[0])),
        Check("d*_T(1/2)", "03111003", digits_str(run(E, Fraction(1, 2), tm, 8, "quasi")[0])),
    ]


def scenario_silver():
    K, s = sqrt2()
    E = BaseAlphabet(K, [1 + s, 3 + 2 * s], names=("g1", "g1^2"))
    T = build(E, 1, "quasi")
    return [
        Check("states", 3, T.n_states),
        Check("edges", True, match_rooted(T, SILVER_QUASI_ONE, "1")),
        Check("two-walk", False, bool(two_walk(T))),
    ]


def scenario_smallest_pisot():
    E = smallest_pisot_alphabet()
    T = build(E, 1, "quasi")
    res = two_walk(T)
    w = res.witness
    return [
        Check("states", 5, T.n_states),
        Check("edges", True, match_rooted(T, SMALLEST_PISOT_QUASI_ONE, "a")),
        Check("two-walk", True, bool(res)),
        Check("witness replay", True, bool(w) and replay_witness(T, w)),
        Check("witness output", "200", digits_str(w.w) if w else None),
        Check("d*_B(1) for B=(u)^w", "(200)^w",
              str(run_up(E, 1, UPWord((), U_BLOCK), "quasi"))),
    ]


def scenario_connectivity():
    checks = []
    for label, E, expected in connectivity_cases():
        T = build(E, 1, "quasi")
        checks.append(Check(f"{label} connected", expected, is_strongly_connected(T)))
        if label == "{g5^2,g5^3}":
            checks.append(Check(f"{label} states", 127, T.n_states))
    return checks


def scenario_prefixes():
    E = smallest_pisot_alphabet()
    table = prefix_table(E, 1, tm_blocks(U_BLOCK, V_BLOCK), 14, (2, 0, 0))
    got = {digits_str(w): ns for w, ns in table.prefixes.items()}
    checks = [Check(f"w[{w or 'eps'}]", TM_BLOCK_PREFIXES[w], got.get(w)) for w in TM_BLOCK_PREFIXES]
    checks.append(Check("undetected", [], table.undetected))
    return checks


def scenario_shifted_blocks():
    E = smallest_pisot_alphabet()
    T = build(E, 1, "quasi")
    blocks = {"u": U_BLOCK, "v": V_BLOCK}
    checks = []
    for i, expected in ((1, SHIFT1_OUTPUTS), (2, SHIFT2_OUTPUTS)):
        for m, (f, exp) in enumerate(zip(TM_FACTORS_5, expected), 1):
            word = [x for c in f for x in blocks[c]][i:]
            checks.append(Check(f"sigma^{i}(f{m})", exp, digits_str(block_outputs(T, word))))
    return checks


def scenario_aperiodic_variant():
    E = smallest_pisot_alphabet()
    T = build(E, 1, "quasi")
    base = tm_blocks(U_PRIME, V_PRIME).shifted(1)
    digits = T.feed(E.indices(base.stream(500)))
    return [
        Check("first 42 digits", VARIANT_PREFIX_42, digits_str(digits[:42])),
        Check("period <= 20 within 500 digits", None, is_eventually_periodic(digits, 20, 250)),
    ]


def scenario_norm_counts():
    return [Check("counts", GOLDEN_NORM_COUNTS, golden_norm_counts())]


def scenario_digit_morphisms():
    h2 = {c: digits_str(digit_decompose(c, (2, 3))) for c in range(6)}
    h3 = {c: digits_str(digit_decompose(c, (3, 2))) for c in range(6)}
    return [
        Check("h_2(61)", "501", digits_str(digit_decompose(61, (6, 3, 4)))),
        Check("h_3(61)", "2101", digits_str(digit_decompose(61, (3, 2, 4, 3)))),
        Check("h_4(61)", "3101", digits_str(digit_decompose(61, (4, 3, 3, 2)))),
        Check("table h_2", {0: "00", 1: "01", 2: "02", 3: "10", 4: "11", 5: "12"}, h2),
        Check("table h_3", {0: "00", 1: "01", 2: "10", 3: "11", 4: "20", 5: "21"}, h3),
    ]


def scenario_forced():
    K, phi = golden()
    E = BaseAlphabet(K, [phi, 4 * phi + 1], names=("phi", "4phi+1"), verify=False)
    base = UPWord((), (0, 1))
    return [
        Check("d_B(1)", "141(0)^w", str(run_up(E, 1, base, "greedy"))),
        Check("d*_B(1)", "1407051(10)^w", str(run_up(E, 1, base, "quasi"))),
    ]


SCENARIOS = {
    "fig2": scenario_integer_transducers,
    "fig3": scenario_frying_pan,
    "ex311-180": scenario_thue_morse_integer,
    "fig4": scenario_golden,
    "fig6": scenario_silver,
    "fig7": scenario_smallest_pisot,
    "table2": scenario_connectivity,
    "table1": scenario_prefixes,
    "table3": scenario_shifted_blocks,
    "rem69": scenario_aperiodic_variant,
    "fig1-counts": scenario_norm_counts,
    "morphism-61": scenario_digit_morphisms,
    "forced": scenario_forced,
}


def reproduce(name: str) -> list:
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise UnknownScenario(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None
    return fn()
