"""Rank-metric codes: container, distance computation, maximality and lifting."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .ferrers import FerrersDiagram, nu_min
from .gf import FieldCtx
from .matrix import GfMatrix, stack_rank

DEFAULT_BUDGET = 1 << 24


class BudgetExceeded(RuntimeError):
    """Exact enumeration would exceed the configured codeword budget."""


def enumeration_budget() -> int:
    env = os.environ.get("FERRO_BUDGET")
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise ValueError(f"FERRO_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


class RankMetricCode:
    """F_q-linear span of ``m x n`` matrices, given by an ordered basis.

    The stored basis keeps the user's order; nothing here mutates it.
    """

    def __init__(self, ctx: FieldCtx, basis: Sequence, m: int | None = None, n: int | None = None,
                 shape: FerrersDiagram | None = None, delta: int | None = None,
                 meta: dict | None = None, check: bool = True):
        mats = [b if isinstance(b, GfMatrix) else GfMatrix(ctx, b) for b in basis]
        if mats:
            m0, n0 = mats[0].shape
            m = m0 if m is None else m
            n = n0 if n is None else n
        if m is None or n is None:
            raise ValueError("an empty code needs explicit m and n")
        for M in mats:
            if M.ctx is not ctx:
                raise ValueError("basis matrix over a different field")
            if M.shape != (m, n):
                raise ValueError(f"basis matrix of shape {M.shape}, expected {(m, n)}")
        self.ctx = ctx
        self.m = m
        self.n = n
        self.basis = tuple(mats)
        self.shape = shape
        self.delta = delta
        self.meta = dict(meta or {})
        if shape is not None and (shape.m, shape.n) != (m, n):
            raise ValueError(f"shape {shape} does not fit {m}x{n} matrices")
        if check:
            if stack_rank(ctx, mats) != len(mats):
                raise ValueError("basis matrices are linearly dependent")
            if shape is not None and not self.respects(shape):
                raise ValueError(f"a basis matrix is not supported on {shape}")

    @property
    def k(self) -> int:
        return len(self.basis)

    dimension = k

    @property
    def array(self) -> np.ndarray:
        """Basis stacked as a ``(k, m, n)`` integer array."""
        if not self.basis:
            return np.zeros((0, self.m, self.n), dtype=np.int64)
        return np.stack([M.data for M in self.basis])

    def respects(self, F: FerrersDiagram) -> bool:
        mask = support_mask(F)
        return all(not (M.data[~mask]).any() for M in self.basis)

    def codeword(self, coeffs) -> GfMatrix:
        c = np.asarray(coeffs, dtype=np.int64)
        prod = self.ctx.vmul(c[:, None, None], self.array)
        return GfMatrix(self.ctx, self.ctx.vsum(prod, axis=0))

    def __eq__(self, other):
        return (isinstance(other, RankMetricCode) and self.ctx is other.ctx
                and (self.m, self.n) == (other.m, other.n) and self.basis == other.basis
                and self.shape == other.shape and self.delta == other.delta)

    def __repr__(self) -> str:
        return f"RankMetricCode({self.m}x{self.n}, k={self.k}, over {self.ctx})"


def support_mask(F: FerrersDiagram) -> np.ndarray:
    rows = np.arange(1, F.m + 1)[:, None]
    return rows <= np.array(F.cols)[None, :]


@dataclass
class VerificationReport:
    dimension: int
    distance: int | None
    exact: bool
    shape_ok: bool
    is_maximal: bool | None
    examined: int
    nu_min: int | None = None
    delta: int | None = None
    notes: list[str] = field(default_factory=list)

    def summary(self) -> str:
        if self.distance is None:
            dist = "n/a"
        elif self.exact:
            dist = str(self.distance)
        else:
            dist = f"<= {self.distance} (sampled)"
        verdict = {True: "yes", False: "no", None: "inconclusive"}[self.is_maximal]
        lines = [
            f"dimension: {self.dimension}",
            f"min rank distance: {dist}",
            f"codewords examined: {self.examined}",
            f"shape ok: {'yes' if self.shape_ok else 'no'}",
        ]
        if self.nu_min is not None:
            lines.append(f"nu_min: {self.nu_min}")
        if self.delta is not None:
            lines.append(f"delta: {self.delta}")
        lines.append(f"maximal: {verdict}")
        lines.extend(f"note: {t}" for t in self.notes)
        return "\n".join(lines)


def _as_kernel_basis(C: RankMetricCode) -> np.ndarray:
    return C.array.astype(np.uint8)


def _exact_distance(C: RankMetricCode, threads: int, budget: int) -> tuple[int, int]:
    q = C.ctx.order
    if q ** C.k > budget:
        raise BudgetExceeded(f"{q}^{C.k} codewords exceed the budget {budget}; use sampled mode")
    tabs = C.ctx.kernel_tables()
    B = _as_kernel_basis(C)
    total = kernels.n_projective(C.k, q)
    # rank 1 is the smallest possible, nothing to gain after it
    floor = 1
    if threads <= 1 or total < 4096:
        return kernels.min_rank_projective(B, tabs, 0, total, floor)
    parts = np.linspace(0, total, threads * 4 + 1, dtype=np.int64)
    with ThreadPoolExecutor(threads) as pool:
        res = list(pool.map(lambda ab: kernels.min_rank_projective(B, tabs, int(ab[0]), int(ab[1]), floor),
                            zip(parts[:-1], parts[1:])))
    best = min(r for r, _ in res)
    if best <= floor:
        # parallel chunks past the first hit still count as examined work
        return best, sum(e for _, e in res)
    return best, total


def _sampled_distance(C: RankMetricCode, trials: int, seed: int) -> tuple[int, int]:
    q = C.ctx.order
    tabs = C.ctx.kernel_tables()
    rng = np.random.Generator(np.random.Philox(seed))
    B = _as_kernel_basis(C)
    best = kernels.NO_CODEWORD
    done = 0
    while done < trials:
        t = min(1 << 14, trials - done)
        coeffs = rng.integers(0, q, size=(t, C.k), dtype=np.int64)
        coeffs = coeffs[coeffs.any(axis=1)]
        if coeffs.size:
            words = _combine(C.ctx, coeffs, B)
            best = min(best, int(kernels.rank_batch(words, tabs).min()))
        done += t
    return best, trials


def _combine(ctx: FieldCtx, coeffs: np.ndarray, B: np.ndarray) -> np.ndarray:
    _, add, _, mul, _ = ctx.kernel_tables()
    acc = np.zeros((coeffs.shape[0],) + B.shape[1:], dtype=np.uint8)
    for t in range(B.shape[0]):
        acc = add[acc, mul[coeffs[:, t, None, None], B[t]]]
    return acc


def min_rank_distance(C: RankMetricCode, mode: str | tuple = "exact", threads: int = 1,
                      budget: int | None = None) -> tuple[int, bool, int]:
    """Minimum rank of a nonzero codeword.

    ``mode`` is ``"exact"`` or ``("sampled", trials, seed)``.  Returns
    ``(distance, exact, examined)``; a sampled result is an upper bound on the
    true distance.
    """
    if C.k < 1:
        raise ValueError("the zero code has no minimum distance")
    budget = enumeration_budget() if budget is None else budget
    if mode == "exact":
        d, examined = _exact_distance(C, threads, budget)
        return d, True, examined
    kind, trials, seed = mode
    if kind != "sampled":
        raise ValueError(f"unknown distance mode {mode!r}")
    d, examined = _sampled_distance(C, int(trials), int(seed))
    return d, False, examined


def verify_maximal(C: RankMetricCode, F: FerrersDiagram | None = None, delta: int | None = None,
                   mode="exact", threads: int = 1, budget: int | None = None) -> VerificationReport:
    """Dimension, exact distance and shape of ``C`` against ``(F; delta)``."""
    F = C.shape if F is None else F
    delta = C.delta if delta is None else delta
    notes = []
    shape_ok = True
    nm = None
    if F is not None:
        if (F.m, F.n) != (C.m, C.n):
            raise ValueError(f"diagram {F} does not fit {C.m}x{C.n} matrices")
        shape_ok = C.respects(F)
        if delta is not None:
            nm = nu_min(F, delta)
    if stack_rank(C.ctx, list(C.basis)) != C.k:
        notes.append("basis is linearly dependent")
    if C.k == 0:
        return VerificationReport(0, None, True, shape_ok, nm == 0 if nm is not None else None, 0,
                                  nm, delta, notes)
    d, exact, examined = min_rank_distance(C, mode, threads, budget)
    if nm is not None and C.k > nm and exact and d >= delta and shape_ok:
        raise AssertionError(f"dimension {C.k} exceeds the upper bound {nm}: bug")
    if F is None or delta is None:
        maximal = None
        notes.append("no diagram/delta given; maximality not assessed")
    else:
        structural = shape_ok and C.k == nm and not notes
        if not structural:
            maximal = False
        elif d < delta:
            maximal = False
        elif exact:
            maximal = True
        else:
            maximal = None
            notes.append("sampled distance is only an upper bound")
        if maximal and nm > 0 and d != delta:
            notes.append(f"distance {d} exceeds delta {delta}")
    return VerificationReport(C.k, d, exact, shape_ok, maximal, examined, nm, delta, notes)


def lift_pivots(F: FerrersDiagram) -> list[int]:
    """1-based pivot columns ``t_{i-1} + i`` of the lifted RREF matrices."""
    t = [0] + [sum(1 for c in F.cols if c <= i) for i in range(1, F.m)]
    return [t[i - 1] + i for i in range(1, F.m + 1)]


def lift_matrix(M: GfMatrix, F: FerrersDiagram) -> GfMatrix:
    if M.shape != (F.m, F.n):
        raise ValueError("matrix and diagram sizes differ")
    if M.data[~support_mask(F)].any():
        raise ValueError(f"matrix is not supported on {F}")
    piv = [p - 1 for p in lift_pivots(F)]
    out = np.zeros((F.m, F.m + F.n), dtype=np.int64)
    out[np.arange(F.m), piv] = 1
    free = [c for c in range(F.m + F.n) if c not in set(piv)]
    out[:, free] = M.data
    return GfMatrix(M.ctx, out)


def lift_to_rref(C: RankMetricCode, F: FerrersDiagram | None = None) -> list[GfMatrix]:
    """RREF ``m x (m+n)`` lifts of the basis matrices, all with the same pivots."""
    F = C.shape if F is None else F
    if F is None:
        raise ValueError("lifting needs a Ferrers diagram")
    return [lift_matrix(M, F) for M in C.basis]


def subcode_dropping_position(C: RankMetricCode, pos: tuple[int, int]) -> RankMetricCode:
    """Subcode of codimension one vanishing at ``pos`` (1-based).

    A basis matrix nonzero at ``pos`` is moved last and cleared from the
    others; the first ``k-1`` matrices are returned.
    """
    i, j = pos
    if C.shape is not None and pos not in C.shape:
        raise ValueError(f"{pos} lies outside the shape {C.shape}")
    if not (1 <= i <= C.m and 1 <= j <= C.n):
        raise ValueError(f"{pos} lies outside the {C.m}x{C.n} box")
    ctx = C.ctx
    mats = list(C.basis)
    hits = [t for t, M in enumerate(mats) if M.data[i - 1, j - 1]]
    if not hits:
        raise ValueError(f"every basis matrix vanishes at {pos}")
    r = hits[-1]
    pivot = mats.pop(r)
    pv = int(pivot.data[i - 1, j - 1])
    out = []
    for M in mats:
        a = int(M.data[i - 1, j - 1])
        if a:
            M = M - pivot.scale(ctx.div(a, pv))
        out.append(M)
    shape = C.shape
    if shape is not None and (i, j) in shape.removable():
        shape = shape.remove((i, j))
    return RankMetricCode(ctx, out, C.m, C.n, shape=shape, delta=C.delta)
