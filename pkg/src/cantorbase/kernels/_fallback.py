"""Pure-Python implementations of the table-driven kernels.

Every function takes the transition table ``nxt[q][e]`` (and, where needed,
the output table ``out[q][e]``) as integer arrays and mirrors the signature of
the compiled module exactly.
"""

from collections import deque

import numpy as np


def _rows(a):
    return [list(map(int, row)) for row in a]


def feed(nxt, out, start, letters):
    """Run the machine from ``start``; return ``(digits, final_state)``."""
    nxt_l, out_l = _rows(nxt), _rows(out)
    q = int(start)
    digits = np.empty(len(letters), dtype=np.int64)
    for i, e in enumerate(letters):
        e = int(e)
        digits[i] = out_l[q][e]
        q = nxt_l[q][e]
    return digits, q


def feed_states(nxt, start, letters):
    """State sequence ``q_0 = start, q_1, ..., q_n`` along ``letters``."""
    nxt_l = _rows(nxt)
    q = int(start)
    states = np.empty(len(letters) + 1, dtype=np.int64)
    states[0] = q
    for i, e in enumerate(letters):
        q = nxt_l[q][int(e)]
        states[i + 1] = q
    return states


def product_reach(nxt, start, ph_letter, ph_next, ph_deg):
    """Reachable pairs of (state, phase) in the product with a phase automaton.

    Phase ``f`` has ``ph_deg[f]`` outgoing moves ``(ph_letter[f][j], ph_next[f][j])``.
    Returns a boolean array ``seen[q, f]``.
    """
    nxt_l = _rows(nxt)
    n_ph = len(ph_deg)
    moves = [[(int(ph_letter[f][j]), int(ph_next[f][j])) for j in range(int(ph_deg[f]))]
             for f in range(n_ph)]
    seen = np.zeros((len(nxt_l), n_ph), dtype=bool)
    seen[start, 0] = True
    todo = [(int(start), 0)]
    while todo:
        q, f = todo.pop()
        for e, g in moves[f]:
            t = nxt_l[q][e]
            if not seen[t, g]:
                seen[t, g] = True
                todo.append((t, g))
    return seen


def pair_distances(nxt, out, anchor):
    """Backward pair closure anchored at ``anchor``.

    ``dist[t1, t2] = k`` means ``(t1, t2)`` enters the pair set at round ``k``
    (``-1``: never).  The search stops once ``(anchor, anchor)`` is labelled.
    """
    nxt_l, out_l = _rows(nxt), _rows(out)
    n = len(nxt_l)
    preds = [[] for _ in range(n)]
    for q, row in enumerate(nxt_l):
        for e, t in enumerate(row):
            preds[t].append((q, e, out_l[q][e]))
    dist = np.full((n, n), -1, dtype=np.int64)
    queue = deque()
    anchor = int(anchor)
    for t1, e1, a1 in preds[anchor]:
        for t2, e2, a2 in preds[anchor]:
            if e1 != e2 and a1 == a2 and dist[t1, t2] < 0:
                dist[t1, t2] = 1
                queue.append((t1, t2))
    while queue and dist[anchor, anchor] < 0:
        q1, q2 = queue.popleft()
        d = dist[q1, q2] + 1
        for t1, _, a1 in preds[q1]:
            for t2, _, a2 in preds[q2]:
                if a1 == a2 and dist[t1, t2] < 0:
                    dist[t1, t2] = d
                    queue.append((t1, t2))
    return dist


def scc(nxt):
    """Component index per state (iterative Tarjan, reverse topological numbering)."""
    nxt_l = _rows(nxt)
    n = len(nxt_l)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = np.full(n, -1, dtype=np.int64)
    stack = []
    counter = 0
    n_comp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            row = nxt_l[v]
            while i < len(row):
                w = row[i]
                i += 1
                if index[w] < 0:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return comp
