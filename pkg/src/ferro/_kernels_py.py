"""Pure-Python (numpy) versions of the hot loops.

Every function takes field tables as produced by
:meth:`ferro.gf.FieldCtx.kernel_tables`: ``(q, add, sub, mul, inv)`` with
uint8 lookup arrays.  The compiled module ``_kernels`` exposes the same
signatures.
"""

from __future__ import annotations

import numpy as np

NO_CODEWORD = 1 << 30


def n_projective(k: int, q: int) -> int:
    return (q**k - 1) // (q - 1)


def projective_vectors(k: int, q: int, start: int, stop: int) -> np.ndarray:
    """Coefficient vectors with leading nonzero entry 1, for indices in [start, stop).

    Index order: the vectors whose leading 1 sits at position 0 come first,
    and within a block the trailing coordinates count up in base ``q`` with
    the last coordinate least significant.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((idx.size, k), dtype=np.int64)
    rest = idx.copy()
    lead = np.full(idx.size, -1, dtype=np.int64)
    for p in range(k):
        size = q ** (k - 1 - p)
        here = (lead < 0) & (rest < size)
        lead[here] = p
        rest[(lead < 0)] -= size
    for p in range(k):
        sel = lead == p
        out[sel, p] = 1
        r = rest[sel]
        for t in range(k - 1, p, -1):
            out[sel, t] = r % q
            r = r // q
    return out


def _combine(coeffs: np.ndarray, mats: np.ndarray, tabs) -> np.ndarray:
    """``sum_t coeffs[..., t] * mats[t]`` -> shape ``coeffs.shape[:-1] + mats.shape[1:]``."""
    q, add, sub, mul, inv = tabs
    k = mats.shape[0]
    acc = np.zeros(coeffs.shape[:-1] + mats.shape[1:], dtype=np.uint8)
    extra = (None,) * (mats.ndim - 1)
    for t in range(k):
        term = mul[coeffs[(Ellipsis, t) + extra], mats[t]]
        acc = add[acc, term]
    return acc


def _combine_batched(coeffs: np.ndarray, mats: np.ndarray, tabs) -> np.ndarray:
    """Per-trial combinations: coeffs (P, k), mats (T, k, r, c) -> (T, P, r, c)."""
    q, add, sub, mul, inv = tabs
    T, k = mats.shape[:2]
    acc = np.zeros((T, coeffs.shape[0]) + mats.shape[2:], dtype=np.uint8)
    for t in range(k):
        term = mul[coeffs[None, :, t, None, None], mats[:, None, t]]
        acc = add[acc, term]
    return acc


def rank_batch(mats, tabs) -> np.ndarray:
    """Ranks of a stack of matrices, shape (T, r, c)."""
    q, add, sub, mul, inv = tabs
    A = np.array(mats, dtype=np.uint8)
    if A.ndim == 2:
        A = A[None]
    T, r, c = A.shape
    rank = np.zeros(T, dtype=np.int64)
    rows = np.arange(r)
    for col in range(c):
        nz = (A[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = nz.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        pr = np.argmax(nz[b], axis=1)
        tr = rank[b]
        prow = A[b, pr].copy()
        A[b, pr] = A[b, tr]
        A[b, tr] = prow
        scale = inv[prow[:, col]]
        prow = mul[scale[:, None], prow]
        sub_b = A[b]
        f = np.where(rows[None, :] > tr[:, None], sub_b[:, :, col], 0).astype(np.uint8)
        A[b] = sub[sub_b, mul[f[:, :, None], prow[:, None, :]]]
        rank[b] += 1
    return rank


def min_rank_projective(basis, tabs, start: int, stop: int, floor: int = -1):
    """Minimum rank over projective codewords with index in [start, stop).

    Stops as soon as a rank ``<= floor`` is seen.  Returns ``(min_rank, examined)``;
    ``min_rank`` is ``NO_CODEWORD`` for an empty range.
    """
    q = tabs[0]
    B = np.asarray(basis, dtype=np.uint8)
    k = B.shape[0]
    best = NO_CODEWORD
    examined = 0
    step = max(256, (1 << 16) // max(1, B.shape[1] * B.shape[2]))
    pos = start
    while pos < stop:
        end = min(stop, pos + step)
        coeffs = projective_vectors(k, q, pos, end).astype(np.uint8)
        ranks = rank_batch(_combine(coeffs, B, tabs), tabs)
        hit = np.flatnonzero(ranks <= floor)
        if hit.size:
            examined += int(hit[0]) + 1
            return int(min(best, ranks[: hit[0] + 1].min())), examined
        examined += end - pos
        best = min(best, int(ranks.min()))
        pos = end
    return best, examined


def maximal_trials(samples, tabs, delta: int) -> np.ndarray:
    """Flag per trial: every nonzero combination of its N matrices has rank >= delta.

    ``samples`` has shape (T, N, m, n).
    """
    q = tabs[0]
    S = np.asarray(samples, dtype=np.uint8)
    T, N, m, n = S.shape
    coeffs = projective_vectors(N, q, 0, n_projective(N, q)).astype(np.uint8)
    P = coeffs.shape[0]
    out = np.zeros(T, dtype=np.uint8)
    chunk = max(1, (1 << 16) // max(1, P))
    for s in range(0, T, chunk):
        part = S[s: s + chunk]
        combos = _combine_batched(coeffs, part, tabs)
        ranks = rank_batch(combos.reshape(-1, m, n), tabs).reshape(len(part), P)
        out[s: s + chunk] = (ranks >= delta).all(axis=1)
    return out


def spectrum_free_trials(samples, tabs) -> np.ndarray:
    """Flag per trial: every nontrivial combination of its k square matrices is spectrum-free.

    ``samples`` has shape (T, k, m, m).
    """
    q, add, sub, mul, inv = tabs
    S = np.asarray(samples, dtype=np.uint8)
    T, k, m, _ = S.shape
    coeffs = projective_vectors(k, q, 0, n_projective(k, q)).astype(np.uint8)
    P = coeffs.shape[0]
    out = np.zeros(T, dtype=np.uint8)
    diag = np.arange(m)
    chunk = max(1, (1 << 15) // max(1, P * q))
    for s in range(0, T, chunk):
        part = S[s: s + chunk]
        combos = _combine_batched(coeffs, part, tabs).reshape(-1, m, m)
        ok = np.ones(combos.shape[0], dtype=bool)
        for lam in range(q):
            shifted = combos.copy()
            shifted[:, diag, diag] = sub[shifted[:, diag, diag], lam]
            ok &= rank_batch(shifted, tabs) == m
        out[s: s + chunk] = ok.reshape(len(part), P).all(axis=1)
    return out


def count_sf_tuples_gf2(table, k: int) -> int:
    """Ordered k-tuples of GF(2) matrices (bit-encoded) whose nonzero XOR
    combinations are all flagged in ``table``."""
    t = np.asarray(table, dtype=bool)
    idx = np.arange(t.size, dtype=np.int64)

    def rec(span: list[int], depth: int) -> int:
        valid = np.ones(t.size, dtype=bool)
        for s in span:
            valid &= t[idx ^ s]
        if depth == 1:
            return int(valid.sum())
        total = 0
        for M in np.flatnonzero(valid):
            M = int(M)
            total += rec(span + [s ^ M for s in span], depth - 1)
        return total

    return rec([0], k)
