# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the table-driven kernels (see ``_fallback`` for the contract)."""

import numpy as np


def feed(const long long[:, ::1] nxt, const long long[:, ::1] out, long long start,
         const long long[::1] letters):
    cdef Py_ssize_t i, n = letters.shape[0]
    cdef long long q = start, e
    digits = np.empty(n, dtype=np.int64)
    cdef long long[::1] d = digits
    for i in range(n):
        e = letters[i]
        d[i] = out[q, e]
        q = nxt[q, e]
    return digits, q


def feed_states(const long long[:, ::1] nxt, long long start, const long long[::1] letters):
    cdef Py_ssize_t i, n = letters.shape[0]
    cdef long long q = start
    states = np.empty(n + 1, dtype=np.int64)
    cdef long long[::1] s = states
    s[0] = q
    for i in range(n):
        q = nxt[q, letters[i]]
        s[i + 1] = q
    return states


def product_reach(const long long[:, ::1] nxt, long long start,
                  const long long[:, ::1] ph_letter, const long long[:, ::1] ph_next,
                  const long long[::1] ph_deg):
    cdef Py_ssize_t n = nxt.shape[0], n_ph = ph_deg.shape[0]
    seen_arr = np.zeros((n, n_ph), dtype=np.uint8)
    cdef unsigned char[:, ::1] seen = seen_arr
    stack_arr = np.empty(n * n_ph + 1, dtype=np.int64)
    cdef long long[::1] stack = stack_arr
    cdef Py_ssize_t top = 0, j
    cdef long long code, q, f, t, g
    seen[start, 0] = 1
    stack[0] = start * n_ph
    top = 1
    while top > 0:
        top -= 1
        code = stack[top]
        q = code // n_ph
        f = code % n_ph
        for j in range(ph_deg[f]):
            t = nxt[q, ph_letter[f, j]]
            g = ph_next[f, j]
            if not seen[t, g]:
                seen[t, g] = 1
                stack[top] = t * n_ph + g
                top += 1
    return seen_arr.astype(bool)


def pair_distances(const long long[:, ::1] nxt, const long long[:, ::1] out, long long anchor):
    cdef Py_ssize_t n = nxt.shape[0], m = nxt.shape[1]
    cdef Py_ssize_t q, e, i, j, k
    # CSR predecessor lists
    start_arr = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] st = start_arr
    for q in range(n):
        for e in range(m):
            st[nxt[q, e] + 1] += 1
    for q in range(n):
        st[q + 1] += st[q]
    fill_arr = start_arr[:-1].copy()
    cdef long long[::1] fill = fill_arr
    psrc_arr = np.empty(n * m, dtype=np.int64)
    plet_arr = np.empty(n * m, dtype=np.int64)
    pdig_arr = np.empty(n * m, dtype=np.int64)
    cdef long long[::1] psrc = psrc_arr, plet = plet_arr, pdig = pdig_arr
    cdef long long t
    for q in range(n):
        for e in range(m):
            t = nxt[q, e]
            k = fill[t]
            psrc[k] = q
            plet[k] = e
            pdig[k] = out[q, e]
            fill[t] += 1

    dist_arr = np.full((n, n), -1, dtype=np.int64)
    cdef long long[:, ::1] dist = dist_arr
    queue_arr = np.empty(n * n, dtype=np.int64)
    cdef long long[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0
    cdef long long t1, t2, q1, q2, d
    for i in range(st[anchor], st[anchor + 1]):
        for j in range(st[anchor], st[anchor + 1]):
            if plet[i] != plet[j] and pdig[i] == pdig[j]:
                t1 = psrc[i]
                t2 = psrc[j]
                if dist[t1, t2] < 0:
                    dist[t1, t2] = 1
                    queue[tail] = t1 * n + t2
                    tail += 1
    while head < tail and dist[anchor, anchor] < 0:
        q1 = queue[head] // n
        q2 = queue[head] % n
        head += 1
        d = dist[q1, q2] + 1
        for i in range(st[q1], st[q1 + 1]):
            for j in range(st[q2], st[q2 + 1]):
                if pdig[i] == pdig[j]:
                    t1 = psrc[i]
                    t2 = psrc[j]
                    if dist[t1, t2] < 0:
                        dist[t1, t2] = d
                        queue[tail] = t1 * n + t2
                        tail += 1
    return dist_arr


def scc(const long long[:, ::1] nxt):
    cdef Py_ssize_t n = nxt.shape[0], m = nxt.shape[1]
    index_arr = np.full(n, -1, dtype=np.int64)
    low_arr = np.zeros(n, dtype=np.int64)
    onst_arr = np.zeros(n, dtype=np.uint8)
    comp_arr = np.full(n, -1, dtype=np.int64)
    stack_arr = np.empty(n, dtype=np.int64)
    wv_arr = np.empty(n, dtype=np.int64)
    wi_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] index = index_arr, low = low_arr, comp = comp_arr
    cdef long long[::1] stack = stack_arr, wv = wv_arr, wi = wi_arr
    cdef unsigned char[::1] onst = onst_arr
    cdef Py_ssize_t sp = 0, wp = 0, root
    cdef long long counter = 0, n_comp = 0, v, i, w, u
    cdef bint recurse
    for root in range(n):
        if index[root] >= 0:
            continue
        wv[0] = root
        wi[0] = 0
        wp = 1
        while wp > 0:
            wp -= 1
            v = wv[wp]
            i = wi[wp]
            if i == 0:
                index[v] = counter
                low[v] = counter
                counter += 1
                stack[sp] = v
                sp += 1
                onst[v] = 1
            recurse = False
            while i < m:
                w = nxt[v, i]
                i += 1
                if index[w] < 0:
                    wv[wp] = v
                    wi[wp] = i
                    wp += 1
                    wv[wp] = w
                    wi[wp] = 0
                    wp += 1
                    recurse = True
                    break
                if onst[w] and index[w] < low[v]:
                    low[v] = index[w]
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    sp -= 1
                    w = stack[sp]
                    onst[w] = 0
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
            if wp > 0:
                u = wv[wp - 1]
                if low[v] < low[u]:
                    low[u] = low[v]
    return comp_arr
