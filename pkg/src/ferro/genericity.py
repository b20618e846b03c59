"""Spectrum-free counting, exact proportion formulas and Monte-Carlo estimates.

Closed forms are evaluated in :class:`fractions.Fraction`; floats only appear
in reports.  Sampling draws fixed-size chunks of trials, each from its own
Philox stream keyed by ``(seed, chunk index)``, so results do not depend on
how chunks are spread over threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import kernels
from .code import BudgetExceeded, enumeration_budget
from .ferrers import FerrersDiagram, nu_min, nu_profile
from .gf import field_of_order

CHUNK = 1 << 16


def gamma_n(n: int, q: int) -> int:
    """Order of GL_n(F_q)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.prod(q**n - q**j for j in range(n))


def _a(j: int, q: int) -> Fraction:
    return Fraction((-1) ** j, math.prod(q**l - 1 for l in range(1, j + 1)))


def _types(j: int, parts: int):
    """Part-count vectors ``(t_1..t_j)`` with ``sum k*t_k = j`` and ``sum t_k <= parts``."""
    def rec(k, left, used, acc):
        if k > j:
            if left == 0:
                yield tuple(acc)
            return
        for t in range(min(left // k, parts - used) + 1):
            acc.append(t)
            yield from rec(k + 1, left - k * t, used + t, acc)
            acc.pop()
    yield from rec(1, j, 0, [])


def _composition_sum(j: int, q: int) -> Fraction:
    """Sum over weak compositions ``i_1+...+i_{q-1} = j`` of ``prod a_{i_l}``.

    Compositions are grouped by how many parts equal each value; a group with
    ``s`` nonzero parts contains ``(q-1)!/((q-1-s)! prod t_k!)`` compositions.
    """
    parts = q - 1
    total = Fraction(0)
    a = [_a(k, q) for k in range(j + 1)]
    for t in _types(j, parts):
        s = sum(t)
        count = math.perm(parts, s) // math.prod(math.factorial(x) for x in t)
        term = Fraction(count)
        for k, tk in enumerate(t, start=1):
            term *= a[k] ** tk
        total += term
    return total


def s_n_exact(n: int, q: int) -> int:
    """Number of spectrum-free ``n x n`` matrices over F_q."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    val = gamma_n(n, q) * sum((_composition_sum(j, q) for j in range(n + 1)), Fraction(0))
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"s_{n}({q}) evaluated to the non-integer {val}")
    return int(val)


def _poly_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def _infinite_product_coeffs(q: int, order: int) -> list[Fraction]:
    """Coefficients of ``prod_{r>=1} (1 - u/q^r)`` up to ``u^order``.

    The product ``P`` satisfies ``P(u) = (1 - u/q) P(u/q)``; comparing
    coefficients gives ``p_j (q^j - 1) = -p_{j-1}``.
    """
    p = [Fraction(1)]
    for j in range(1, order + 1):
        p.append(-p[-1] / (q**j - 1))
    return p


def series_coefficients(q: int, order: int) -> list[Fraction]:
    """Coefficients of ``(1-u)^{-1} prod_r (1 - u/q^r)^{q-1}`` up to ``u^order``."""
    base = _infinite_product_coeffs(q, order)
    acc = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(q - 1):
        acc = _poly_mul(acc, base, order)
    out, run = [], Fraction(0)
    for c in acc:
        run += c
        out.append(run)
    return out


def s_n_series_check(n_max: int, q: int) -> bool:
    """Compare ``s_n/gamma_n`` with the generating-function coefficients for ``n <= n_max``."""
    if not 0 <= n_max <= 8:
        raise ValueError("n_max must lie in [0, 8]")
    coeffs = series_coefficients(q, n_max)
    return all(Fraction(s_n_exact(n, q), gamma_n(n, q)) == coeffs[n] for n in range(n_max + 1))


def pi_q(q: int, terms: int) -> float:
    """``prod_{r=1}^{terms} (1 - q^{-r})^q`` in floating point."""
    if terms < 1:
        raise ValueError("terms must be positive")
    return math.prod((1.0 - float(q) ** -r) ** q for r in range(1, terms + 1))


def pi_q_exact(q: int, terms: int) -> Fraction:
    """Exact partial product; the size grows fast, keep ``terms`` small."""
    if terms < 1:
        raise ValueError("terms must be positive")
    return math.prod((Fraction(q**r - 1, q**r) ** q for r in range(1, terms + 1)), start=Fraction(1))


def independence_comparison(n: int, q: int) -> tuple[Fraction, Fraction]:
    """Spectrum-free fraction next to the chance that ``q`` independent matrices are invertible."""
    return Fraction(s_n_exact(n, q), q ** (n * n)), Fraction(gamma_n(n, q), q ** (n * n)) ** q


def _ratio(q: int, top: int, shift: int, count: int) -> Fraction:
    """``prod_{i<count} (q^top - q^{i+shift}) / (q^top - q^i)``."""
    return Fraction(math.prod(q**top - q ** (i + shift) for i in range(count)),
                    math.prod(q**top - q**i for i in range(count)))


def proportion_m2_mrd(m: int, q: int) -> Fraction:
    """Proportion of m-dimensional ``m x 2`` codes over F_q with distance 2."""
    if m < 1:
        raise ValueError("m must be positive")
    return Fraction(s_n_exact(m, q), q ** (m * m)) * _ratio(q, 2 * m, m, m)


def upper_bound_randmrd(m: int, n: int, delta: int, q: int) -> Fraction:
    if not (1 <= delta <= n <= m):
        raise ValueError("need 1 <= delta <= n <= m")
    ell = n - delta + 1
    return Fraction(s_n_exact(m, q), q ** (m * m)) ** ((delta - 1) * ell)


def upper_bound_f1334(q: int) -> Fraction:
    if q < 2:
        raise ValueError("q must be at least 2")
    sf = Fraction(s_n_exact(3, q), q**9)
    cols = math.prod((1 - Fraction(1, q**i) for i in range(2, 5)), start=Fraction(1))
    return sf * cols * Fraction(q**7 - 2 * q**4 + q, q**7)


@dataclass(frozen=True)
class ProportionReport:
    """Success count over trials, plus the value converted to a subspace proportion.

    ``factor`` turns the trial success rate into the proportion of codes;
    ``halfwidth`` is a three-sigma band (0 for exact runs).
    """

    successes: int
    trials: int
    seed: int | None
    mode: str
    factor: Fraction = Fraction(1)

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def exact_estimate(self) -> Fraction:
        return Fraction(self.successes, self.trials)

    @property
    def halfwidth(self) -> float:
        if self.mode == "exact":
            return 0.0
        p = self.estimate
        return 3.0 * math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def proportion(self) -> float:
        return float(self.factor * self.exact_estimate)

    def within(self, target: float) -> bool:
        """Whether ``target`` lies in the three-sigma band (exact match for exact runs)."""
        if self.mode == "exact":
            return self.estimate == target
        hw = self.halfwidth
        if self.successes in (0, self.trials):
            # the binomial band degenerates; use the one-success resolution instead
            hw = 3.0 / self.trials
        return abs(self.estimate - target) <= hw

    def csv_fields(self) -> list[str]:
        ci = "exact" if self.mode == "exact" else f"{self.halfwidth:.6g}"
        seed = "" if self.seed is None else str(self.seed)
        return [str(self.successes), str(self.trials), f"{self.estimate:.8g}", ci, seed]


CSV_TAIL = ["successes", "trials", "estimate", "ci3sigma", "seed"]


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must lie in [0, 2^64)")
    return np.random.Generator(np.random.Philox(key=seed + (index << 64)))


def run_trials(trials: int, seed: int, draw: Callable[[np.random.Generator, int], np.ndarray],
               test: Callable[[np.ndarray], np.ndarray], threads: int = 1) -> int:
    """Total successes of ``test`` over ``trials`` samples produced by ``draw``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    sizes = [min(CHUNK, trials - s) for s in range(0, trials, CHUNK)]

    def one(i: int) -> int:
        return int(np.count_nonzero(test(draw(chunk_rng(seed, i), sizes[i]))))

    if threads <= 1 or len(sizes) == 1:
        return sum(one(i) for i in range(len(sizes)))
    with ThreadPoolExecutor(threads) as pool:
        return sum(pool.map(one, range(len(sizes))))


def _digits(index: np.ndarray, q: int, width: int) -> np.ndarray:
    out = np.empty((index.size, width), dtype=np.uint8)
    rest = index.copy()
    for t in range(width - 1, -1, -1):
        out[:, t] = rest % q
        rest //= q
    return out


def _run_exhaustive(q: int, width: int, build: Callable[[np.ndarray], np.ndarray],
                    test: Callable[[np.ndarray], np.ndarray], budget: int) -> int:
    total = q**width
    if total > budget:
        raise BudgetExceeded(f"{q}^{width} samples exceed the budget {budget}")
    hits = 0
    for s in range(0, total, CHUNK):
        idx = np.arange(s, min(total, s + CHUNK), dtype=np.int64)
        hits += int(np.count_nonzero(test(build(_digits(idx, q, width)))))
    return hits


def _parse_mode(mode) -> tuple[str, int | None, int | None]:
    if mode in ("exact", "exhaustive"):
        return "exact", None, None
    kind, trials, seed = mode
    if kind != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    return "sampled", int(trials), int(seed)


class _ShapedSampler:
    """Lays out ``N``-tuples of matrices supported on ``F``.

    With ``normalized`` the dots of the first ``l`` columns carry a fixed
    identity pattern (tuple member ``i`` has a 1 on the ``i``-th such dot).
    """

    def __init__(self, F: FerrersDiagram, delta: int, N: int, normalized: bool):
        dots = F.dots()
        self.F, self.N = F, N
        self.rows = np.array([i - 1 for i, _ in dots], dtype=np.int64)
        self.cols = np.array([j - 1 for _, j in dots], dtype=np.int64)
        self.fixed = 0
        if normalized:
            if nu_profile(F, delta).nu[0] != N:
                raise ValueError("normalized sampling needs nu_0 = nu_min")
            self.fixed = N
        self.free = len(dots) - self.fixed

    def build(self, values: np.ndarray) -> np.ndarray:
        """``values`` of shape (T, N*free) -> samples (T, N, m, n)."""
        T = values.shape[0]
        ent = np.zeros((T, self.N, len(self.rows)), dtype=np.uint8)
        if self.fixed:
            ent[:, np.arange(self.N), np.arange(self.N)] = 1
        ent[:, :, self.fixed:] = values.reshape(T, self.N, self.free)
        out = np.zeros((T, self.N, self.F.m, self.F.n), dtype=np.uint8)
        out[:, :, self.rows, self.cols] = ent
        return out


def generic_factor(F: FerrersDiagram, N: int, q: int, normalized: bool) -> Fraction:
    """Turns a trial success rate into the proportion of maximal codes among
    ``N``-dimensional ``F``-shaped codes.

    Raw tuples: ``q^{|F|N} / prod_{i<N}(q^{|F|} - q^i)``.  Normalized tuples
    additionally pay ``gamma_N(q)/q^{N^2}`` for the identity block, which
    combines to ``prod (q^{|F|} - q^{i+|F|-N}) / (q^{|F|} - q^i)``.
    """
    size = len(F)
    if normalized:
        return _ratio(q, size, size - N, N)
    return Fraction(q ** (size * N), math.prod(q**size - q**i for i in range(N)))


def proportion_generic(F: FerrersDiagram, delta: int, q: int, mode="exact", *,
                       normalized: bool = False, threads: int = 1,
                       budget: int | None = None) -> ProportionReport:
    """Chance that ``N = nu_min`` random ``F``-shaped matrices span a maximal code.

    ``mode`` is ``"exact"`` (all tuples, budget permitting) or
    ``("sampled", trials, seed)``.
    """
    N = nu_min(F, delta)
    if N <= 0:
        raise ValueError(f"nu_min({F}; {delta}) = 0, nothing to sample")
    ctx = field_of_order(q)
    tabs = ctx.kernel_tables()
    sampler = _ShapedSampler(F, delta, N, normalized)
    factor = generic_factor(F, N, q, normalized)
    width = N * sampler.free

    def test(S):
        return kernels.maximal_trials(S, tabs, delta)

    kind, trials, seed = _parse_mode(mode)
    if kind == "exact":
        budget = enumeration_budget() if budget is None else budget
        hits = _run_exhaustive(q, width, sampler.build, test, budget)
        return ProportionReport(hits, q**width, None, "exact", factor)

    def draw(rng, t):
        return sampler.build(rng.integers(0, q, size=(t, width), dtype=np.uint8))

    hits = run_trials(trials, seed, draw, test, threads)
    return ProportionReport(hits, trials, seed, "sampled", factor)


def mrd_factor(m: int, n: int, q: int) -> Fraction:
    """Normalized-to-subspace conversion for ``[m x n; n]`` codes."""
    return _ratio(q, m * n, m * (n - 1), m)


def _gf2_bits_to_mats(idx: np.ndarray, m: int) -> np.ndarray:
    bits = (idx[:, None] >> np.arange(m * m)) & 1
    return bits.reshape(-1, m, m).astype(np.uint8)


def spectrum_free_table_gf2(m: int) -> np.ndarray:
    """Flag for every ``m x m`` GF(2) matrix, indexed by its row-major bit pattern."""
    if m * m > 24:
        raise BudgetExceeded("table beyond 2^24 entries")
    tabs = field_of_order(2).kernel_tables()
    out = np.empty(1 << (m * m), dtype=np.uint8)
    for s in range(0, out.size, CHUNK):
        idx = np.arange(s, min(out.size, s + CHUNK), dtype=np.int64)
        out[s: s + idx.size] = kernels.spectrum_free_trials(_gf2_bits_to_mats(idx, m)[:, None], tabs)
    return out


def count_spectrum_free(n: int, q: int, budget: int | None = None) -> int:
    """Exhaustive count of spectrum-free ``n x n`` matrices over F_q."""
    if n == 0:
        return 1
    budget = enumeration_budget() if budget is None else budget
    tabs = field_of_order(q).kernel_tables()
    return _run_exhaustive(q, n * n, lambda v: v.reshape(-1, 1, n, n),
                           lambda S: kernels.spectrum_free_trials(S, tabs), budget)


def mrd_proportion_normalized(m: int, n: int, delta: int, q: int, mode="exact", *,
                              threads: int = 1, budget: int | None = None) -> ProportionReport:
    """Chance that ``n-1`` random ``m x m`` matrices span a space whose nonzero
    elements are all spectrum-free; equivalently that the normalized
    ``[m x n; n]`` code they define is MRD.

    Exhaustive mode over GF(2) with ``m <= 4`` counts tuples through a table of
    spectrum-free matrices and a depth-first search instead of listing every
    tuple, so the budget applies to the table size only.
    """
    if delta != n:
        raise ValueError("the normalized experiment needs delta = n")
    if not 2 <= n <= m:
        raise ValueError("need 2 <= n <= m")
    k = n - 1
    factor = mrd_factor(m, n, q)
    tabs = field_of_order(q).kernel_tables()

    def test(S):
        return kernels.spectrum_free_trials(S, tabs)

    kind, trials, seed = _parse_mode(mode)
    if kind == "exact":
        budget = enumeration_budget() if budget is None else budget
        if q == 2 and m * m <= 16 and 1 << (m * m) <= budget:
            table = spectrum_free_table_gf2(m)
            hits = kernels.count_sf_tuples_gf2(table, k)
            return ProportionReport(hits, 1 << (m * m * k), None, "exact", factor)
        hits = _run_exhaustive(q, k * m * m, lambda v: v.reshape(-1, k, m, m), test, budget)
        return ProportionReport(hits, q ** (k * m * m), None, "exact", factor)

    def draw(rng, t):
        return rng.integers(0, q, size=(t, k, m, m), dtype=np.uint8)

    hits = run_trials(trials, seed, draw, test, threads)
    return ProportionReport(hits, trials, seed, "sampled", factor)


def genericity_limit_scan(F: FerrersDiagram, delta: int, q0: int, r_max: int, trials: int,
                          seed: int = 0, threads: int = 1) -> list[tuple[int, ProportionReport]]:
    """Sampled success rate over ``F_{q0^r}`` for ``r = 1..r_max``."""
    if nu_min(F, delta) <= 0:
        raise ValueError("nu_min must be positive")
    rows = []
    for r in range(1, r_max + 1):
        q = q0**r
        if q > 256:
            raise ValueError(f"field order {q} exceeds the kernel limit 256")
        rows.append((q, proportion_generic(F, delta, q, ("sampled", trials, seed), threads=threads)))
    return rows
