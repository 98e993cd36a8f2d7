"""Dense univariate polynomials over Q, stored low degree first.

Coefficients may be ``int`` or ``Fraction``; every function returns trimmed
lists (no trailing zeros, the zero polynomial is ``[]``).
"""

from fractions import Fraction
from math import gcd

import sympy


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p, c):
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_poly(p, q):
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in p]
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    while len(r) >= len(q) and r:
        c = r[-1] / lead
        shift = len(r) - len(q)
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = trim(r)
    return trim(quot), r


def rem(p, q):
    return divmod_poly(p, q)[1]


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def xgcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = [Fraction(c) for c in trim(p)], [Fraction(c) for c in trim(q)]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quo, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return scale(r0, 1 / lead), scale(s0, 1 / lead), scale(t0, 1 / lead)


def primitive_integer(p):
    """Clear denominators: return ``(A, D)`` with integer ``A`` and ``p == A / D``.

    ``D`` is positive and ``gcd(content(A), D) == 1``.
    """
    p = trim(p)
    if not p:
        return [], 1
    den = 1
    for c in p:
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = den
    for a in ints:
        g = gcd(g, a)
    return [a // g for a in ints], den // g


def is_irreducible(p):
    """Irreducibility over Q of a nonconstant integer polynomial."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([int(c) for c in p])), x, domain="ZZ")
    return poly.degree() >= 1 and poly.is_irreducible


def factor_degrees(p):
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([int(c) for c in p])), x, domain="ZZ")
    _, factors = poly.factor_list()
    return sorted(f.degree() for f, m in factors for _ in range(m))


def is_reciprocal(p):
    p = trim(p)
    return p == p[::-1] or p == [-c for c in p[::-1]]


def trace_polynomial(p):
    """For a reciprocal ``p`` of even degree ``2m``, the ``g`` of degree ``m``
    with ``p(x) = x^m g(x + 1/x)``.
    """
    p = trim(p)
    n = len(p) - 1
    if n % 2:
        raise ValueError("trace polynomial needs even degree")
    m = n // 2
    # Peel off x^m (x + 1/x)^k terms from the top.
    work = [Fraction(c) for c in p]
    g = [Fraction(0)] * (m + 1)
    for k in range(m, -1, -1):
        c = work[m + k]
        g[k] = c
        if c == 0:
            continue
        # x^m (x + 1/x)^k = sum_j binom(k, j) x^(m + k - 2j)
        binom = 1
        for j in range(k + 1):
            work[m + k - 2 * j] -= c * binom
            binom = binom * (k - j) // (j + 1)
    if any(work):
        raise ValueError("polynomial is not reciprocal")
    return trim(g)


def charpoly(matrix):
    """Characteristic polynomial ``det(X I - M)`` by Faddeev-LeVerrier."""
    n = len(matrix)
    m = [[Fraction(v) for v in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    acc = [[Fraction(0)] * n for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = M * M_{k-1} + c_{n-k+1} I
        prev = acc
        acc = [[sum(m[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            acc[i][i] += coeffs[n - k + 1]
        mk = [[sum(m[i][t] * acc[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(mk[i][i] for i in range(n)) / k
    return coeffs


# -- real root isolation -------------------------------------------------------

def sturm_sequence(p):
    seq = [[Fraction(c) for c in trim(p)], [Fraction(c) for c in derivative(p)]]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        seq.append([-c for c in r])
    return seq[:-1]


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def count_roots(seq, lo, hi):
    """Distinct real roots in the half-open interval ``(lo, hi]``."""
    return (_sign_changes([evaluate(s, lo) for s in seq])
            - _sign_changes([evaluate(s, hi) for s in seq]))


def root_bound(p):
    """A power of two strictly above the modulus of every complex root."""
    p = trim(p)
    lead = abs(Fraction(p[-1]))
    cauchy = 1 + max(abs(Fraction(c)) for c in p[:-1]) / lead if len(p) > 1 else 1
    b = 1
    while b <= cauchy:
        b *= 2
    return b


def isolate_real_roots(p):
    """Disjoint intervals ``(lo, hi)`` each holding exactly one real root.

    Intervals are ordered increasingly.  A rational root ``c`` is reported as
    the degenerate interval ``(c, c)``; otherwise the root lies strictly
    inside and both endpoints are dyadic rationals.
    """
    p = trim(p)
    seq = sturm_sequence(p)
    b = Fraction(root_bound(p))
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            if evaluate(p, hi) == 0:
                out.append((hi, hi))
            else:
                out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out
