"""Ferrers diagrams, the nu_min bound, diagonals and related predicates.

Positions are 1-based ``(row, column)`` pairs and a dot ``(i, j)`` belongs to
the diagram iff ``i <= c_j``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

Position = tuple[int, int]


@dataclass(frozen=True)
class FerrersDiagram:
    """Column counts ``c_1 <= ... <= c_n`` inside an ``m x n`` box."""

    cols: tuple[int, ...]
    m: int

    def __init__(self, cols: Sequence[int], m: int | None = None):
        cols = tuple(int(c) for c in cols)
        if not cols:
            raise ValueError("a Ferrers diagram needs at least one column")
        if m is None:
            m = cols[-1]
        if m < 1:
            raise ValueError("ambient row count must be positive")
        if any(c < 0 or c > m for c in cols):
            raise ValueError(f"column counts must lie in [0, {m}]")
        if any(a > b for a, b in zip(cols, cols[1:])):
            raise ValueError("column counts must be nondecreasing")
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "m", int(m))

    @classmethod
    def parse(cls, text: str) -> FerrersDiagram:
        """Parse ``"1,3,3,4@4"``; the ``@m`` suffix is optional."""
        text = text.strip().strip("[]")
        body, _, amb = text.partition("@")
        try:
            cols = [int(t) for t in body.split(",") if t.strip()]
            m = int(amb) if amb.strip() else None
        except ValueError:
            raise ValueError(f"malformed diagram {text!r}") from None
        return cls(cols, m)

    def __str__(self) -> str:
        return ",".join(map(str, self.cols)) + f"@{self.m}"

    @property
    def n(self) -> int:
        return len(self.cols)

    def __len__(self) -> int:
        return sum(self.cols)

    def __contains__(self, pos: Position) -> bool:
        i, j = pos
        return 1 <= j <= self.n and 1 <= i <= self.cols[j - 1]

    def dots(self) -> list[Position]:
        """All dots in column-major order."""
        return [(i, j + 1) for j, c in enumerate(self.cols) for i in range(1, c + 1)]

    def transpose(self) -> FerrersDiagram:
        """Reflect along the anti-diagonal; an ``n x m`` diagram of the same rank structure."""
        rows = [sum(1 for c in self.cols if c >= i) for i in range(1, self.m + 1)]
        return FerrersDiagram(rows[::-1], self.n)

    def normalize(self) -> FerrersDiagram:
        """Drop empty leading columns and empty bottom rows."""
        cols = [c for c in self.cols if c > 0]
        if not cols:
            raise ValueError("empty diagram has no normal form")
        return FerrersDiagram(cols, cols[-1])

    def remove(self, pos: Position) -> FerrersDiagram:
        """Diagram without dot ``pos``; only bottom dots of a column qualify."""
        i, j = pos
        if pos not in self or i != self.cols[j - 1]:
            raise ValueError(f"{pos} is not the bottom dot of its column")
        cols = list(self.cols)
        cols[j - 1] -= 1
        return FerrersDiagram(cols, self.m)

    def removable(self) -> list[Position]:
        """Corner dots whose removal keeps the Ferrers property."""
        out = []
        for j, c in enumerate(self.cols):
            if c > 0 and (j == 0 or self.cols[j - 1] < c):
                out.append((c, j + 1))
        return out

    def is_full(self) -> bool:
        return all(c == self.m for c in self.cols)


def _check_delta(F: FerrersDiagram, delta: int) -> None:
    if not 1 <= delta <= F.n:
        raise ValueError(f"delta must lie in [1, {F.n}], got {delta}")


@dataclass(frozen=True)
class BoundProfile:
    delta: int
    nu: tuple[int, ...]
    nu_min: int = field(init=False)
    argmin: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        lo = min(self.nu)
        object.__setattr__(self, "nu_min", lo)
        object.__setattr__(self, "argmin", tuple(j for j, v in enumerate(self.nu) if v == lo))


def nu_j(F: FerrersDiagram, delta: int, j: int) -> int:
    top = F.n - delta + 1 + j
    return sum(max(c - j, 0) for c in F.cols[:top])


def nu_profile(F: FerrersDiagram, delta: int) -> BoundProfile:
    """``nu_j`` for ``j = 0..delta-1``: dots left after removing ``j`` top rows
    and the ``delta-1-j`` rightmost columns."""
    _check_delta(F, delta)
    return BoundProfile(delta, tuple(nu_j(F, delta, j) for j in range(delta)))


def nu_min(F: FerrersDiagram, delta: int) -> int:
    return nu_profile(F, delta).nu_min


def pending_dots(F: FerrersDiagram, delta: int) -> set[Position]:
    """Dots whose removal on its own keeps ``nu_min``.

    Pendingness is tested one dot at a time; two pending dots need not be
    removable together.
    """
    target = nu_min(F, delta)
    return {pos for pos in F.removable() if nu_min(F.remove(pos), delta) == target}


def reduction_children(F: FerrersDiagram, delta: int) -> list[FerrersDiagram]:
    """Single-dot removals that lower ``nu_min`` by exactly one."""
    target = nu_min(F, delta)
    out = []
    for pos in F.removable():
        G = F.remove(pos)
        if nu_min(G, delta) == target - 1:
            out.append(G)
    return out


def reachable(root: FerrersDiagram, delta: int) -> set[FerrersDiagram]:
    """Diagrams with positive ``nu_min`` reachable from ``root`` by reduction steps."""
    seen = {root} if nu_min(root, delta) > 0 else set()
    stack = list(seen)
    while stack:
        G = stack.pop()
        for H in reduction_children(G, delta):
            if H not in seen and nu_min(H, delta) > 0:
                seen.add(H)
                stack.append(H)
    return seen


def diagonal(F: FerrersDiagram, r: int) -> list[Position]:
    """Positions of ``D_r`` in the ``m x n`` box, top row first."""
    n = F.n
    return [(i, i + n - r) for i in range(max(1, r + 1 - n), r + 1) if 1 <= i + n - r <= n]


def diagonal_intersections(F: FerrersDiagram) -> list[int]:
    """``|D_r ∩ F|`` for ``r = 1..m``."""
    return [sum(1 for pos in diagonal(F, r) if pos in F) for r in range(1, F.m + 1)]


def diagonal_sum(F: FerrersDiagram, delta: int) -> int:
    return sum(max(d - delta + 1, 0) for d in diagonal_intersections(F))


def mds_constructible(F: FerrersDiagram, delta: int) -> tuple[bool, int]:
    _check_delta(F, delta)
    s = diagonal_sum(F, delta)
    return s == nu_min(F, delta), s


def sub_diagram_dots(F: FerrersDiagram, delta: int, alpha: int) -> set[Position]:
    """Dots of ``F`` left after deleting the top ``alpha`` rows and the last
    ``delta-1-alpha`` columns."""
    last = F.n - (delta - 1 - alpha)
    return {(i, j) for (i, j) in F.dots() if i > alpha and j <= last}


def mds_diagonal(F: FerrersDiagram, delta: int) -> tuple[int, int] | None:
    """First ``(alpha, s)`` such that ``D_s`` is an MDS diagonal w.r.t. ``alpha``.

    ``alpha`` ranges over the minimizers of the nu profile in increasing
    order, ``s`` over ``1..m``.
    """
    prof = nu_profile(F, delta)
    n = F.n
    for alpha in prof.argmin:
        sub = sub_diagram_dots(F, delta, alpha)
        if not sub:
            continue
        # diagonal index of a dot: j - i = n - r
        lowest = max(n - (j - i) for (i, j) in sub)
        for s in range(1, F.m + 1):
            on = [pos for pos in diagonal(F, s) if pos in F]
            outside = sum(1 for pos in on if pos not in sub)
            inside = len(on) - outside
            if outside == delta - 1 and inside > 0 and lowest <= s:
                return alpha, s
    return None


def ell(F: FerrersDiagram, delta: int) -> int:
    return F.n - delta + 1


def staircase_epsilon(F: FerrersDiagram, delta: int) -> int:
    l = ell(F, delta)
    return sum(F.m - c for c in F.cols[l:])


def staircase_check(F: FerrersDiagram, delta: int) -> bool:
    """``c_t <= c_{l+1} - eps*(l+1-t)`` for ``t = 1..l``."""
    if not 2 <= delta <= F.n:
        raise ValueError("staircase condition needs 2 <= delta <= n")
    l = ell(F, delta)
    eps = staircase_epsilon(F, delta)
    c = F.cols
    return all(c[t - 1] <= c[l] - eps * (l + 1 - t) for t in range(1, l + 1))


def not_subfield_realizable(F: FerrersDiagram, delta: int) -> bool:
    """Obstruction to realizing a maximal code inside an F_{q^m}-linear MRD code."""
    if not 2 <= delta <= F.n:
        raise ValueError("predicate needs 2 <= delta <= n")
    l = ell(F, delta)
    c = F.cols
    cl, cl1 = c[l - 1], c[l]
    prof = nu_profile(F, delta)
    return (cl == cl1 < F.m and math.gcd(cl, F.m) == 1
            and prof.nu_min == prof.nu[0] == sum(c[:l]))


@dataclass(frozen=True)
class DeltaNReport:
    nu_min: int
    nu_zero: bool
    case: str | None
    c: int
    mds_constructible: bool
    closure_maximal: bool
    conditions: dict
    consistent: bool


def delta_n_classification(F: FerrersDiagram) -> DeltaNReport:
    """Case analysis for ``delta = n``.

    Case ``a``: some ``nu_j`` with ``j > 0`` attains ``nu_min``.  Case ``b``:
    ``nu_0 < nu_j`` for all ``j > 0``.  Over the algebraic closure a maximal
    code has dimension ``max(c, 0)`` with ``c = min(c_t - t + 1)``.
    """
    n = F.n
    if n > F.m:
        raise ValueError("delta = n requires n <= m")
    prof = nu_profile(F, n)
    cols = F.cols
    c = min(cols[t] - t for t in range(n))
    mds, _ = mds_constructible(F, n)
    closure = max(c, 0) == prof.nu_min
    zero = prof.nu_min == 0
    if zero:
        return DeltaNReport(0, True, None, c, mds, closure, {}, True)
    if any(prof.nu[j] == prof.nu_min for j in range(1, n)):
        case = "a"
        iv = any(cols[s - 1] == s and all(cols[t - 1] <= s - 1 for t in range(1, s))
                 for s in range(1, n + 1))
        cond = {"i": mds, "ii": closure, "iii": prof.nu_min == 1, "iv": iv}
    else:
        case = "b"
        cond = {"i": mds, "ii": closure, "iii": cols[0] == c}
    consistent = len(set(cond.values())) == 1
    return DeltaNReport(prof.nu_min, False, case, c, mds, closure, cond, consistent)


def enumerate_diagrams(m: int, n: int) -> Iterator[FerrersDiagram]:
    """All ``m x n`` diagrams (unnormalized) in lexicographic order."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    for cols in itertools.combinations_with_replacement(range(m + 1), n):
        yield FerrersDiagram(cols, m)
