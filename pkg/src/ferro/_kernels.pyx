# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot loops in :mod:`ferro._kernels_py`.

Matrices are uint8 arrays of field elements.  Over GF(2) with at most 64
columns rows are packed into machine words and elimination is plain XOR;
every other field goes through the lookup tables.
"""

import numpy as np

from libc.stdint cimport uint8_t, uint64_t, int64_t
from libc.stdlib cimport malloc, free

NO_CODEWORD = 1 << 30

cdef struct Tabs:
    int q
    const uint8_t* add
    const uint8_t* sub
    const uint8_t* mul
    const uint8_t* inv


cdef class _TabHolder:
    # keeps the numpy tables alive while a raw Tabs struct points into them
    cdef object arrays
    cdef Tabs t

    def __cinit__(self, tabs):
        q, add, sub, mul, inv = tabs
        arrs = [np.ascontiguousarray(a, dtype=np.uint8) for a in (add, sub, mul, inv)]
        self.arrays = arrs
        cdef const uint8_t[:, ::1] a2
        cdef const uint8_t[::1] a1
        self.t.q = q
        a2 = arrs[0]
        self.t.add = &a2[0, 0]
        a2 = arrs[1]
        self.t.sub = &a2[0, 0]
        a2 = arrs[2]
        self.t.mul = &a2[0, 0]
        a1 = arrs[3]
        self.t.inv = &a1[0]


def n_projective(int k, int64_t q):
    return (q ** k - 1) // (q - 1)


cdef void _decode(int64_t idx, int k, int q, const int64_t* blk, uint8_t* lam) noexcept nogil:
    cdef int p = 0, t
    while p < k - 1 and idx >= blk[p]:
        idx -= blk[p]
        p += 1
    for t in range(p):
        lam[t] = 0
    lam[p] = 1
    t = k - 1
    while t > p:
        lam[t] = <uint8_t>(idx % q)
        idx //= q
        t -= 1


cdef int _rank_tab(uint8_t* A, int r, int c, const Tabs* T) noexcept nogil:
    cdef int rank = 0, col, i, j, p
    cdef int q = T.q
    cdef uint8_t f, iv, tmp
    cdef uint8_t* prow
    cdef uint8_t* row
    for col in range(c):
        if rank == r:
            break
        p = -1
        for i in range(rank, r):
            if A[i * c + col] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != rank:
            for j in range(col, c):
                tmp = A[p * c + j]
                A[p * c + j] = A[rank * c + j]
                A[rank * c + j] = tmp
        prow = A + rank * c
        iv = T.inv[prow[col]]
        for j in range(col, c):
            prow[j] = T.mul[iv * q + prow[j]]
        for i in range(rank + 1, r):
            row = A + i * c
            f = row[col]
            if f:
                for j in range(col, c):
                    row[j] = T.sub[row[j] * q + T.mul[f * q + prow[j]]]
        rank += 1
    return rank


cdef int _rank_bits(uint64_t* rows, int r, int c) noexcept nogil:
    cdef int rank = 0, col, i, p
    cdef uint64_t mask, tmp
    for col in range(c):
        if rank == r:
            break
        mask = (<uint64_t>1) << col
        p = -1
        for i in range(rank, r):
            if rows[i] & mask:
                p = i
                break
        if p < 0:
            continue
        tmp = rows[p]
        rows[p] = rows[rank]
        rows[rank] = tmp
        for i in range(rank + 1, r):
            if rows[i] & mask:
                rows[i] ^= tmp
        rank += 1
    return rank


cdef void _pack(const uint8_t* M, int r, int c, uint64_t* out) noexcept nogil:
    cdef int i, j
    cdef uint64_t w
    for i in range(r):
        w = 0
        for j in range(c):
            if M[i * c + j]:
                w |= (<uint64_t>1) << j
        out[i] = w


cdef int64_t* _blocks(int k, int64_t q):
    cdef int64_t* blk = <int64_t*>malloc(max(k, 1) * sizeof(int64_t))
    cdef int p, t
    cdef int64_t s
    for p in range(k):
        s = 1
        for t in range(k - 1 - p):
            s *= q
        blk[p] = s
    return blk


def rank_batch(mats, tabs):
    """Ranks of a stack of matrices, shape (T, r, c)."""
    A = np.array(mats, dtype=np.uint8, order="C", copy=True)
    if A.ndim == 2:
        A = A[None]
    cdef uint8_t[:, :, ::1] V = A
    cdef int T = V.shape[0], r = V.shape[1], c = V.shape[2], t
    out = np.zeros(T, dtype=np.int64)
    cdef int64_t[::1] O = out
    cdef _TabHolder h = _TabHolder(tabs)
    cdef uint64_t* words
    if T == 0 or r == 0 or c == 0:
        return out
    if h.t.q == 2 and c <= 64:
        words = <uint64_t*>malloc(r * sizeof(uint64_t))
        with nogil:
            for t in range(T):
                _pack(&V[t, 0, 0], r, c, words)
                O[t] = _rank_bits(words, r, c)
        free(words)
    else:
        with nogil:
            for t in range(T):
                O[t] = _rank_tab(&V[t, 0, 0], r, c, &h.t)
    return out


cdef void _combine_tab(const uint8_t* B, const uint8_t* lam, int k, int size,
                       const Tabs* T, uint8_t* out) noexcept nogil:
    cdef int t, e, q = T.q
    cdef uint8_t a
    for e in range(size):
        out[e] = 0
    for t in range(k):
        a = lam[t]
        if a == 0:
            continue
        for e in range(size):
            out[e] = T.add[out[e] * q + T.mul[a * q + B[t * size + e]]]


def min_rank_projective(basis, tabs, int64_t start, int64_t stop, int floor=-1):
    """Minimum rank over projective codewords with index in [start, stop).

    Stops as soon as a rank ``<= floor`` is seen.  Returns ``(min_rank, examined)``.
    """
    B = np.ascontiguousarray(basis, dtype=np.uint8)
    cdef const uint8_t[:, :, ::1] V = B
    cdef int k = V.shape[0], m = V.shape[1], n = V.shape[2]
    cdef _TabHolder h = _TabHolder(tabs)
    cdef int q = h.t.q, best = NO_CODEWORD, rk, i, t
    cdef int64_t idx, examined = 0
    cdef int64_t* blk
    cdef uint8_t* lam
    cdef uint8_t* buf
    cdef uint64_t* bw
    cdef uint64_t* rows
    cdef bint bits = q == 2 and n <= 64
    if k == 0 or start >= stop:
        return best, 0
    blk = _blocks(k, q)
    lam = <uint8_t*>malloc(k)
    buf = <uint8_t*>malloc(m * n)
    bw = <uint64_t*>malloc(k * m * sizeof(uint64_t))
    rows = <uint64_t*>malloc(m * sizeof(uint64_t))
    with nogil:
        if bits:
            for t in range(k):
                _pack(&V[t, 0, 0], m, n, bw + t * m)
        idx = start
        while idx < stop:
            _decode(idx, k, q, blk, lam)
            if bits:
                for i in range(m):
                    rows[i] = 0
                for t in range(k):
                    if lam[t]:
                        for i in range(m):
                            rows[i] ^= bw[t * m + i]
                rk = _rank_bits(rows, m, n)
            else:
                _combine_tab(&V[0, 0, 0], lam, k, m * n, &h.t, buf)
                rk = _rank_tab(buf, m, n, &h.t)
            examined += 1
            if rk < best:
                best = rk
            if rk <= floor:
                break
            idx += 1
    free(blk); free(lam); free(buf); free(bw); free(rows)
    return best, examined


def maximal_trials(samples, tabs, int delta):
    """Flag per trial: every nonzero combination of its N matrices has rank >= delta."""
    S = np.ascontiguousarray(samples, dtype=np.uint8)
    cdef const uint8_t[:, :, :, ::1] V = S
    cdef int T = V.shape[0], k = V.shape[1], m = V.shape[2], n = V.shape[3]
    cdef _TabHolder h = _TabHolder(tabs)
    cdef int q = h.t.q, tr, i, t, ok
    cdef int64_t idx, P = n_projective(k, q)
    out = np.zeros(T, dtype=np.uint8)
    cdef uint8_t[::1] O = out
    if T == 0:
        return out
    cdef int64_t* blk = _blocks(k, q)
    cdef uint8_t* lam = <uint8_t*>malloc(k)
    cdef uint8_t* buf = <uint8_t*>malloc(m * n)
    cdef uint64_t* bw = <uint64_t*>malloc(k * m * sizeof(uint64_t))
    cdef uint64_t* rows = <uint64_t*>malloc(m * sizeof(uint64_t))
    cdef bint bits = q == 2 and n <= 64
    with nogil:
        for tr in range(T):
            if bits:
                for t in range(k):
                    _pack(&V[tr, t, 0, 0], m, n, bw + t * m)
            ok = 1
            for idx in range(P):
                _decode(idx, k, q, blk, lam)
                if bits:
                    for i in range(m):
                        rows[i] = 0
                    for t in range(k):
                        if lam[t]:
                            for i in range(m):
                                rows[i] ^= bw[t * m + i]
                    if _rank_bits(rows, m, n) < delta:
                        ok = 0
                        break
                else:
                    _combine_tab(&V[tr, 0, 0, 0], lam, k, m * n, &h.t, buf)
                    if _rank_tab(buf, m, n, &h.t) < delta:
                        ok = 0
                        break
            O[tr] = ok
    free(blk); free(lam); free(buf); free(bw); free(rows)
    return out


def spectrum_free_trials(samples, tabs):
    """Flag per trial: every nontrivial combination of its k square matrices is spectrum-free."""
    S = np.ascontiguousarray(samples, dtype=np.uint8)
    cdef const uint8_t[:, :, :, ::1] V = S
    cdef int T = V.shape[0], k = V.shape[1], m = V.shape[2]
    cdef _TabHolder h = _TabHolder(tabs)
    cdef int q = h.t.q, tr, i, t, ok, lam_v, sz = m * m
    cdef int64_t idx, P = n_projective(k, q)
    out = np.zeros(T, dtype=np.uint8)
    cdef uint8_t[::1] O = out
    if T == 0:
        return out
    cdef int64_t* blk = _blocks(k, q)
    cdef uint8_t* lam = <uint8_t*>malloc(k)
    cdef uint8_t* combo = <uint8_t*>malloc(sz)
    cdef uint8_t* buf = <uint8_t*>malloc(sz)
    cdef uint64_t* bw = <uint64_t*>malloc(k * m * sizeof(uint64_t))
    cdef uint64_t* acc = <uint64_t*>malloc(m * sizeof(uint64_t))
    cdef uint64_t* rows = <uint64_t*>malloc(m * sizeof(uint64_t))
    cdef bint bits = q == 2 and m <= 64
    with nogil:
        for tr in range(T):
            if bits:
                for t in range(k):
                    _pack(&V[tr, t, 0, 0], m, m, bw + t * m)
            ok = 1
            for idx in range(P):
                _decode(idx, k, q, blk, lam)
                if bits:
                    for i in range(m):
                        acc[i] = 0
                    for t in range(k):
                        if lam[t]:
                            for i in range(m):
                                acc[i] ^= bw[t * m + i]
                    for i in range(m):
                        rows[i] = acc[i]
                    if _rank_bits(rows, m, m) < m:
                        ok = 0
                        break
                    for i in range(m):
                        rows[i] = acc[i] ^ ((<uint64_t>1) << i)
                    if _rank_bits(rows, m, m) < m:
                        ok = 0
                        break
                else:
                    _combine_tab(&V[tr, 0, 0, 0], lam, k, sz, &h.t, combo)
                    for lam_v in range(q):
                        for i in range(sz):
                            buf[i] = combo[i]
                        for i in range(m):
                            buf[i * m + i] = h.t.sub[combo[i * m + i] * q + lam_v]
                        if _rank_tab(buf, m, m, &h.t) < m:
                            ok = 0
                            break
                    if not ok:
                        break
            O[tr] = ok
    free(blk); free(lam); free(combo); free(buf); free(bw); free(acc); free(rows)
    return out


cdef int64_t _dfs(const uint8_t* tab, int64_t size, int64_t* span, int64_t nspan,
                  int depth) noexcept nogil:
    cdef int64_t total = 0, M, i
    cdef bint ok
    for M in range(size):
        ok = True
        for i in range(nspan):
            if not tab[M ^ span[i]]:
                ok = False
                break
        if not ok:
            continue
        if depth == 1:
            total += 1
        else:
            for i in range(nspan):
                span[nspan + i] = span[i] ^ M
            total += _dfs(tab, size, span, 2 * nspan, depth - 1)
    return total


def count_sf_tuples_gf2(table, int k):
    """Ordered k-tuples of GF(2) matrices (bit-encoded) whose nonzero XOR
    combinations are all flagged in ``table``."""
    t = np.ascontiguousarray(table, dtype=np.uint8)
    cdef const uint8_t[::1] V = t
    cdef int64_t size = V.shape[0], total
    if size & (size - 1):
        raise ValueError("table length must be a power of two")
    if k < 1:
        return 1
    cdef int64_t* span = <int64_t*>malloc((<int64_t>1 << k) * sizeof(int64_t))
    span[0] = 0
    with nogil:
        total = _dfs(&V[0], size, span, 1, k)
    free(span)
    return int(total)
