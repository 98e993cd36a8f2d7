"""Acceptance criteria 1 to 11.

Each criterion prints exactly one ``PASS``/``FAIL`` line.  Run with pytest, or
directly with ``python tests/test_acceptance.py`` to print the report alone.
"""

from __future__ import annotations

import random
import sys
import time
from collections import Counter
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from cantorbase.analysis import (
    block_outputs,
    complexity_ratio,
    is_strongly_connected,
    prefix_table,
    replay_witness,
    transduce_uniform_morphic,
    two_walk,
)
from cantorbase.errors import StateCapExceeded
from cantorbase.morphisms import (
    ConstantProductMorphism,
    build_frying_pan,
    delta_expansion,
    digit_decompose,
    letter_to_letter,
    merge_by_residue,
)
from cantorbase.numberfield import is_pisot_of_degree_d, make_field, max_norm_floor
from cantorbase.transducer import BaseAlphabet, Transducer, build, direct_digits, run, run_up
from cantorbase.words import ImageSpec, UPSpec, UPWord, is_eventually_periodic, thue_morse


def s(ds):
    return "".join(map(str, ds))


# -- fixtures shared by the criteria ------------------------------------------

Q = make_field([0, 1])
PHI_F = make_field([-1, -1, 1])
SQRT2_F = make_field([-2, 0, 1])
PLASTIC_F = make_field([-1, -1, 0, 1])
GAMMA5_F = make_field([-1, -3, -3, 1])

PHI = PHI_F.gen
S2 = SQRT2_F.gen
BETA = PLASTIC_F.gen
G5 = GAMMA5_F.gen

E23 = BaseAlphabet(Q, [2, 3])
E_PHI = BaseAlphabet(PHI_F, [PHI, PHI ** 3], names=("phi", "phi^3"))
E_FORCED = BaseAlphabet(PHI_F, [PHI, 4 * PHI + 1], names=("phi", "4phi+1"), verify=False)
E_SILVER = BaseAlphabet(SQRT2_F, [1 + S2, 3 + 2 * S2], names=("g1", "g1^2"))
E_SMALL = BaseAlphabet(PLASTIC_F, [BETA, BETA ** 3], names=("b", "B"))
E_G5 = BaseAlphabet(GAMMA5_F, [G5 ** 2, G5 ** 3], names=("g5^2", "g5^3"))

TM23 = thue_morse(2, 3)
TM01 = thue_morse(0, 1)
U, V = ("B", "b", "B"), ("B", "B", "b")
U2, V2 = ("b", "b", "B"), ("b", "B", "b")


def tm_blocks(u, v):
    return ImageSpec(thue_morse("u", "v"), {"u": u, "v": v})


_BUILT = {}


def built(E, r, mode):
    key = (id(E), Fraction(r), mode)
    if key not in _BUILT:
        _BUILT[key] = build(E, r, mode)
    return _BUILT[key]


def table2_alphabets():
    g1, g2, g3, g4 = 1 + S2, 2 + 2 * S2, 4 + 3 * S2, 5 + 4 * S2
    return [
        ("{g1,g2}", BaseAlphabet(SQRT2_F, [g1, g2]), True),
        ("{g1,g1^2}", BaseAlphabet(SQRT2_F, [g1, g1 ** 2]), True),
        ("{g5^2,g5^3}", E_G5, True),
        ("{g3,g4}", BaseAlphabet(SQRT2_F, [g3, g4]), False),
        ("{g1^2,g1^3}", BaseAlphabet(SQRT2_F, [g1 ** 2, g1 ** 3]), False),
        ("{g1^2,g2^2}", BaseAlphabet(SQRT2_F, [g1 ** 2, g2 ** 2]), False),
    ]


# -- criteria -----------------------------------------------------------------
# each returns (ok, detail)

def criterion_1():
    cases = [
        ("{2,3} r=932/3885 greedy", E23, Fraction(932, 3885), "greedy", 180),
        ("{phi,phi^3} r=1 quasi", E_PHI, 1, "quasi", 4),
        ("{phi,phi^3} r=1/2 quasi", E_PHI, Fraction(1, 2), "quasi", 8),
        ("{1+s2,3+2s2} r=1 quasi", E_SILVER, 1, "quasi", 3),
        ("{b,b^3} r=1 quasi", E_SMALL, 1, "quasi", 5),
        ("{g5^2,g5^3} r=1 quasi", E_G5, 1, "quasi", 127),
    ]
    got, slow = [], []
    for label, E, r, mode, expected in cases:
        t0 = time.perf_counter()
        n = built(E, r, mode).n_states
        if time.perf_counter() - t0 >= 60:
            slow.append(label)
        got.append(n)
    ok = got == [c[-1] for c in cases] and not slow
    return ok, f"states {got}" + (f"; over 60 s: {slow}" if slow else "")


def _edge_table(T):
    return {(T.states[q].rational_value(), e): (d, T.states[t].rational_value()) for q, e, d, t in T.edges()}


def criterion_2():
    F = Fraction
    left = {(F(1), 0): (2, F(0)), (F(1), 1): (3, F(0)), (F(0), 0): (0, F(0)), (F(0), 1): (0, F(0))}
    middle = {(F(1), 0): (1, F(1)), (F(1), 1): (2, F(1))}
    right = {
        (F(1, 5), 0): (0, F(2, 5)), (F(1, 5), 1): (0, F(3, 5)),
        (F(2, 5), 0): (0, F(4, 5)), (F(2, 5), 1): (1, F(1, 5)),
        (F(4, 5), 0): (1, F(3, 5)), (F(4, 5), 1): (2, F(2, 5)),
        (F(3, 5), 0): (1, F(1, 5)), (F(3, 5), 1): (1, F(4, 5)),
    }
    res = [_edge_table(built(E23, 1, "greedy")) == left,
           _edge_table(built(E23, 1, "quasi")) == middle,
           _edge_table(built(E23, F(1, 5), "greedy")) == right]
    return all(res), f"left/middle/right exact: {res}"


def criterion_3():
    got = {
        "ex": s(run(E23, Fraction(932, 3885), TM23, 16, "greedy")[0]),
        "phi r=1": s(run(E_PHI, 1, TM01, 8, "quasi")[0]),
        "phi r=1/2": s(run(E_PHI, Fraction(1, 2), TM01, 8, "quasi")[0]),
        "forced greedy": str(run_up(E_FORCED, 1, UPWord((), ("phi", "4phi+1")), "greedy")),
        "forced quasi": str(run_up(E_FORCED, 1, UPWord((), ("phi", "4phi+1")), "quasi")),
    }
    expected = {"ex": "0110111121021020", "phi r=1": "12204002", "phi r=1/2": "03111003",
                "forced greedy": "141(0)^w", "forced quasi": "1407051(10)^w"}
    return got == expected, " ".join(f"{v}" for v in got.values())


def criterion_4():
    h = [s(digit_decompose(61, b)) for b in ((6, 3, 4), (3, 2, 4, 3), (4, 3, 3, 2))]
    h2 = [s(digit_decompose(c, (2, 3))) for c in range(6)]
    h3 = [s(digit_decompose(c, (3, 2))) for c in range(6)]
    psi = ConstantProductMorphism.from_images({2: (2, 3), 3: (3, 2)})
    pan = build_frying_pan(delta_expansion(Fraction(932, 3885), 6), [2, 3], psi)
    l2l = letter_to_letter(pan, psi)
    merged = merge_by_residue(l2l)
    counts = [pan.n_states, l2l.n_states, merged.n_states, len(merged.reachable([(2, 3), (3, 2)]))]
    ok = (h == ["501", "2101", "3101"]
          and h2 == ["00", "01", "02", "10", "11", "12"]
          and h3 == ["00", "01", "10", "11", "20", "21"]
          and counts == [5, 15, 14, 14])
    return ok, f"h(61)={h} pipeline={counts[0]}->{counts[1]}->{counts[2]} (reachable {counts[3]})"


def criterion_5():
    T7 = built(E_SMALL, 1, "quasi")
    res = two_walk(T7)
    w = res.witness
    periodic = bool(w) and len(w.w) % 3 == 0 and s(w.w) == "200" * (len(w.w) // 3)
    replay = bool(w) and replay_witness(T7, w)
    silver = bool(two_walk(built(E_SILVER, 1, "quasi")))
    ok = res.holds and replay and periodic and not silver
    detail = f"{{b,b^3}}={res.holds} w={s(w.w) if w else None} replay={replay}; {{g1,g1^2}}={silver}"
    return ok, detail


def criterion_6():
    got = [(label, is_strongly_connected(built(E, 1, "quasi")), exp) for label, E, exp in table2_alphabets()]
    return all(g == e for _, g, e in got), " ".join(f"{lab}={g}" for lab, g, _ in got)


def criterion_7():
    T = built(E23, Fraction(932, 3885), "greedy")
    ratio = complexity_ratio(T, [(2, 3), (3, 2)])
    return ratio == Fraction(14, 180), f"ratio={ratio} (=14/180)"


PREFIXES_UP_TO_14 = {
    "": [0, 3, 6, 9, 12], "10110": [1, 10], "2010": [2, 11], "20020010110": [4], "1010": [5],
    "20010110": [7], "1002010": [8], "20010102010": [13], "1002002010": [14],
}
FACTORS = ["uvvuv", "vvuvu", "vuvuu", "uvuuv", "vuuvv", "uuvvu",
           "uvvuu", "vvuuv", "vuuvu", "uuvuv", "uvuvv", "vuvvu"]
SHIFTED_BLOCK_OUTPUTS = {
    1: ["10110200200200", "20020010110200", "20010110200200", "10110200200200",
        "20010102010200", "10102010200200", "10110200200200", "20020010102010",
        "20010102010200", "10102010200200", "10110200200200", "20010110200200"],
    2: ["2010200200200", "1010200200200", "1002010200200", "2010200200200",
        "1002002010200", "2002010200200", "2010200200200", "1010200200200",
        "1002002010200", "2002010200200", "2010200200200", "1002010200200"],
}


def criterion_8():
    table = prefix_table(E_SMALL, 1, tm_blocks(U, V), 14, (2, 0, 0))
    got = {s(w): ns for w, ns in table.prefixes.items()}
    t1 = got == PREFIXES_UP_TO_14 and not table.undetected
    T7 = built(E_SMALL, 1, "quasi")
    blocks = {"u": U, "v": V}
    rows = 0
    for i, expected in SHIFTED_BLOCK_OUTPUTS.items():
        for f, exp in zip(FACTORS, expected):
            word = [x for c in f for x in blocks[c]][i:]
            rows += s(block_outputs(T7, word)) == exp
    return t1 and rows == 24, f"prefixes n<=14 exact={t1}; shifted-block outputs matching={rows}/24"


def criterion_9():
    base = tm_blocks(U2, V2).shifted(1)
    digits = run(E_SMALL, 1, base, 500, "quasi")[0]
    first = s(digits[:42])
    fit = is_eventually_periodic(digits, 20, 250)
    ok = first == "100200100010200010100200100010100200010200" and fit is None
    return ok, f"first 42 match={first == '100200100010200010100200100010100200010200'}; period<=20 fit={fit}"


def _oracle_norm_floor(a, b):
    getcontext().prec = 60
    r5 = Decimal(5).sqrt()
    phi, psi = (1 + r5) / 2, (1 - r5) / 2
    return int(max(abs(a * phi + b), abs(a * psi + b)))  # int() truncates: floor of a nonnegative


def criterion_10():
    pairs = [(a, b) for a in range(-20, 21) for b in range(-20, 21)]
    exact = {(a, b): max_norm_floor(PHI_F([b, a])) for a, b in pairs}
    oracle = {(a, b): _oracle_norm_floor(a, b) for a, b in pairs}
    low_ok = all(exact[p] == oracle[p] for p in pairs if oracle[p] <= 1)
    c = Counter(exact.values())
    counts = [c[i] for i in range(11)]
    ok = low_ok and counts == [1, 6, 8, 14, 16, 18, 24, 26, 32, 34, 38]
    return ok, f"oracle agrees at i in {{0,1}}={low_ok}; counts={counts}"


# -- criterion 11 helpers ---------------------------------------------------------

def _field_laws(n_elements):
    rng = random.Random(20240611)
    fields = [PHI_F, SQRT2_F, PLASTIC_F]
    used = 0
    while used < n_elements:
        K = fields[used % 3]
        a, b, c = (K([Fraction(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(K.degree)])
                   for _ in range(3))
        used += 3
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a + b != b + a:
            return False, used
        if not a.is_zero() and a * a.inverse() != K.one:
            return False, used
        for x in (a, b, c):
            f, g = x.floor(), x.ceil()
            if not ((x - f).sign() >= 0 and (x - (f + 1)).sign() < 0
                    and (x - (g - 1)).sign() > 0 and (x - g).sign() <= 0):
                return False, used
    return True, used


def _acceptance_runs():
    """(alphabet, r, letters, mode) for every digit run of the acceptance suite."""
    runs = [
        (E23, Fraction(932, 3885), TM23.stream(120), "greedy"),
        (E_PHI, 1, TM01.stream(60), "quasi"),
        (E_PHI, Fraction(1, 2), TM01.stream(60), "quasi"),
        (E_FORCED, 1, UPSpec(UPWord((), ("phi", "4phi+1"))).stream(30), "greedy"),
        (E_FORCED, 1, UPSpec(UPWord((), ("phi", "4phi+1"))).stream(30), "quasi"),
        (E_SMALL, 1, tm_blocks(U, V).stream(60), "quasi"),
        (E_SMALL, 1, tm_blocks(U, V).shifted(4).stream(60), "quasi"),
        (E_SMALL, 1, tm_blocks(U2, V2).shifted(1).stream(60), "quasi"),
        (E_SILVER, 1, TM01.stream(40), "quasi"),
        (E23, Fraction(1, 5), TM23.stream(60), "greedy"),
    ]
    for _, E, _ in table2_alphabets():
        runs.append((E, 1, TM01.stream(25), "quasi"))
    return runs


def _check_run(E, r, letters, mode):
    """Reconstruction, greediness tails and the direct-recursion cross-check."""
    digits = run(E, r, letters, len(letters), mode)[0]
    if digits != direct_digits(E, r, letters, mode):
        return "recursion"
    betas = [E.letters[e] for e in E.indices(letters)]
    K = E.field
    val, prod = K.zero, K.one
    for a, b in zip(digits, betas):
        prod = prod * b
        val = val + K(a) / prod
    diff = K(r) - val
    if diff.sign() < 0 or (diff - prod.inverse()).sign() > 0:
        return "reconstruction"
    tail = K.zero
    for ell in range(len(digits) - 1, 0, -1):
        tail = (K(digits[ell]) + tail) / betas[ell]
        if (tail - 1).sign() >= 0:
            return f"tail at {ell}"
    return None


def _both_modes_agree(E, r, cap=None):
    verdicts = []
    for mode in ("greedy", "quasi"):
        try:
            build(E, r, mode, cap)
            verdicts.append("finite")
        except StateCapExceeded:
            verdicts.append("cap")
    return verdicts


def criterion_11():
    notes, ok = [], True

    laws, n = _field_laws(10_002)
    ok &= laws
    notes.append(f"field laws on {n} elements={laws}")

    failures = [(i, why) for i, args in enumerate(_acceptance_runs()) if (why := _check_run(*args))]
    ok &= not failures
    notes.append(f"runs reconstruction/tails/recursion failures={failures}")

    pairs = [(E23, Fraction(932, 3885)), (E23, 1), (E23, Fraction(1, 5)), (E_PHI, 1), (E_PHI, Fraction(1, 2)),
             (E_SILVER, 1), (E_SMALL, 1)] + [(E, 1) for _, E, _ in table2_alphabets()]
    finite = all(_both_modes_agree(E, r) == ["finite", "finite"] for E, r in pairs)
    E_bad = BaseAlphabet(PHI_F, [PHI, 2], verify=False)
    infinite = all(_both_modes_agree(E, 1, cap=2000) == ["cap", "cap"] for E in (E_bad, E_FORCED))
    ok &= finite and infinite
    notes.append(f"both-finite={finite} both-capped {{phi,2}},{{phi,4phi+1}}={infinite}")

    closure = all(is_pisot_of_degree_d(a * b)
                  for elems in ([PHI, PHI ** 2, PHI ** 3], [1 + S2, 3 + 2 * S2])
                  for i, a in enumerate(elems) for b in elems[i:])
    ok &= closure
    notes.append(f"pisot closure={closure}")

    t1 = transduce_uniform_morphic(E_PHI, 1, TM01, "quasi").stream(1000) == run(E_PHI, 1, TM01, 1000, "quasi")[0]
    t2 = (transduce_uniform_morphic(E23, Fraction(932, 3885), TM23, "greedy").stream(1000)
          == run(E23, Fraction(932, 3885), TM23, 1000, "greedy")[0])
    ok &= t1 and t2
    notes.append(f"transduce==run 1000 digits={t1 and t2}")

    T = built(E23, Fraction(932, 3885), "greedy")
    T2 = Transducer.from_json(T.to_json())
    rt = T2 == T and T2.n_states == 180 and T2.to_json() == T.to_json()
    ok &= rt
    notes.append(f"json round-trip={rt}")
    return ok, "; ".join(notes)


CRITERIA = [
    (1, "state counts", criterion_1),
    (2, "transition tables", criterion_2),
    (3, "digit strings", criterion_3),
    (4, "morphisms", criterion_4),
    (5, "2-walk", criterion_5),
    (6, "connectedness", criterion_6),
    (7, "complexity", criterion_7),
    (8, "prefix tables", criterion_8),
    (9, "bounded aperiodicity", criterion_9),
    (10, "norm counts", criterion_10),
    (11, "property suites", criterion_11),
]


def report_line(num, title, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    return ok, f"criterion {num:2d} {title}: {'PASS' if ok else 'FAIL'} [{dt:.2f}s] {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, line = report_line(num, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report_line(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
