"""Constructions of maximal Ferrers diagram codes.

Every constructor returns a :class:`~ferro.code.RankMetricCode` whose shape
and designed distance are recorded on the code, so ``verify_maximal`` can be
called on it directly.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Sequence

import numpy as np

from .code import RankMetricCode, min_rank_distance
from .ferrers import (
    FerrersDiagram,
    diagonal,
    ell,
    mds_constructible,
    nu_profile,
    staircase_check,
)
from .gf import (
    FieldCtx,
    OrderedBasis,
    _val,
    extend_field,
    field_of_order,
    is_irreducible,
    linear_map_from_basis_images,
    primitive_element,
)
from .matrix import GfMatrix, Subspace, intersect, scaled_subspace

# exhaustive MRD re-verification only below this many codewords
VERIFY_LIMIT = 1 << 20


class GabidulinCode(NamedTuple):
    code: RankMetricCode
    generator: GfMatrix
    basis: OrderedBasis


class SystematicMrdGenerator(NamedTuple):
    """``G = (I_l | A)`` over F_{q^m}."""

    G: GfMatrix
    ell: int

    @property
    def ctx(self) -> FieldCtx:
        return self.G.ctx

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def A(self) -> np.ndarray:
        return self.G.data[:, self.ell:]


def _base_field(q) -> FieldCtx:
    return q if isinstance(q, FieldCtx) else field_of_order(int(q))


def _ext(q, m: int) -> FieldCtx:
    if m < 2:
        raise ValueError("the extension degree m must be at least 2")
    return extend_field(_base_field(q), m)


def _vector_matrix(vec, B: OrderedBasis) -> np.ndarray:
    """phi_B: a length-n vector over F_{q^m} to its ``m x n`` coordinate matrix."""
    return B.coords(np.asarray(vec, dtype=np.int64)).T


def _greedy_extend(current: list[np.ndarray], candidates, target: int, ctx: FieldCtx) -> list[np.ndarray]:
    """Append candidates that enlarge the span until ``target`` vectors are chosen."""
    out = list(current)
    span = Subspace(ctx, len(out[0]) if out else None, out) if out else None
    for v in candidates:
        if len(out) >= target:
            break
        v = np.asarray(v, dtype=np.int64)
        if span is None:
            if v.any():
                out.append(v)
                span = Subspace(ctx, len(v), [v])
            continue
        if not span.contains(v):
            out.append(v)
            span = Subspace(ctx, len(v), out)
    if len(out) < target:
        raise AssertionError(f"only {len(out)} independent vectors found, needed {target}")
    return out


def _complete_elements(ext: FieldCtx, elems: Sequence[int]) -> list[int]:
    """Extend independent field elements to an F_q-basis with standard basis elements."""
    R = OrderedBasis.standard(ext)
    m = ext.degree
    start = [R.coords(e) for e in elems]
    units = np.eye(m, dtype=np.int64)
    vecs = _greedy_extend(start, units, m, ext.base)
    return [int(R.combine(v)) for v in vecs]


def _independent(ext: FieldCtx, elems: Sequence[int]) -> bool:
    R = OrderedBasis.standard(ext)
    if not elems:
        return True
    return GfMatrix(ext.base, R.coords(np.array(elems, dtype=np.int64))).rank() == len(elems)


def _subfield_subcode(gen: SystematicMrdGenerator, B: OrderedBasis, spans: Sequence[Sequence[int]]):
    """F_q-basis of ``{phi_B(uG) : u_t in <spans[t]>}``."""
    ext = gen.ctx
    G = gen.G.data
    mats = []
    for t, elems in enumerate(spans):
        for x in elems:
            mats.append(_vector_matrix(ext.vmul(G[t], x), B))
    return mats


def _check_mrd(gen: SystematicMrdGenerator, delta: int) -> None:
    """Exhaustive distance check of the generated code when it is small enough."""
    ext = gen.ctx
    k = ext.degree * gen.ell
    if ext.base_order ** k > VERIFY_LIMIT:
        return
    B = OrderedBasis.standard(ext)
    mats = _subfield_subcode(gen, B, [B.elements] * gen.ell)
    C = RankMetricCode(ext.base, mats, check=False)
    d, _, _ = min_rank_distance(C, budget=VERIFY_LIMIT)
    if d != delta:
        raise AssertionError(f"generator is not MRD: distance {d}, expected {delta}")


# -- Gabidulin codes --------------------------------------------------------

def moore_matrix(ext: FieldCtx, g: Sequence[int], ell: int) -> GfMatrix:
    q = ext.base_order
    g = np.array([_val(ext, x) for x in g], dtype=np.int64)
    rows = [g]
    for _ in range(1, ell):
        rows.append(np.array([ext.pow(int(x), q) for x in rows[-1]], dtype=np.int64))
    return GfMatrix(ext, np.array(rows).reshape(ell, len(g)))


def gabidulin(q, m: int, n: int, delta: int, g: Sequence | None = None,
              basis: OrderedBasis | None = None) -> GabidulinCode:
    """Gabidulin ``[m x n; delta]`` code as F_q-matrices.

    ``g`` defaults to ``(1, a, ..., a^{n-1})`` for the primitive element ``a``.
    """
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    if not 1 <= delta <= n:
        raise ValueError("need 1 <= delta <= n")
    ext = _ext(q, m)
    ell = n - delta + 1
    if g is None:
        alpha = primitive_element(ext).value
        g = [ext.pow(alpha, i) for i in range(n)]
    g = [_val(ext, x) for x in g]
    if len(g) != n or not _independent(ext, g):
        raise ValueError("evaluation points must be n F_q-independent elements")
    M = moore_matrix(ext, g, ell)
    B = basis or OrderedBasis.standard(ext)
    mats = [_vector_matrix(ext.vmul(M.data[r], x), B) for r in range(ell) for x in B.elements]
    F = FerrersDiagram([m] * n, m)
    code = RankMetricCode(ext.base, mats, shape=F, delta=delta,
                          meta={"method": "gabidulin", "ell": ell})
    return GabidulinCode(code, M, B)


def systematic_generator(M: GfMatrix) -> SystematicMrdGenerator:
    """Row-reduce an MRD generator to ``(I | A)`` and check the independence property."""
    R, piv = M.rref()
    ell = M.rows
    if list(piv) != list(range(ell)):
        raise ValueError("leading minor vanishes; not an MRD generator")
    gen = SystematicMrdGenerator(R, ell)
    ext = M.ctx
    if ell < M.cols and ext.base is not None:
        for j in range(M.cols - ell):
            col = [1] + [int(a) for a in gen.A[:, j]]
            if not _independent(ext, col):
                raise AssertionError(f"column {j + 1} of A violates the independence property")
    return gen


def _gabidulin_generator(q, m: int, n: int, delta: int) -> SystematicMrdGenerator:
    return systematic_generator(gabidulin(q, m, n, delta).generator)


# -- subspaces of MRD codes -------------------------------------------------

def _code_from_columns(gen, B, cols_used, F, delta, meta) -> RankMetricCode:
    spans = [B.elements[:c] for c in cols_used]
    mats = _subfield_subcode(gen, B, spans)
    return RankMetricCode(gen.ctx.base, mats, F.m, F.n, shape=F, delta=delta, meta=meta)


def construct_fn1(F: FerrersDiagram, delta: int, q=None, gen: SystematicMrdGenerator | None = None,
                  B: OrderedBasis | None = None) -> RankMetricCode:
    """Subfield subcode of an MRD code for diagrams whose last ``delta-1`` columns are full."""
    if not 2 <= delta <= F.n:
        raise ValueError("need 2 <= delta <= n")
    if F.n > F.m:
        raise ValueError("need n <= m")
    l = ell(F, delta)
    if any(c != F.m for c in F.cols[l:]):
        raise ValueError(f"the last {delta - 1} columns of {F} must have {F.m} dots")
    if gen is None:
        if q is None:
            raise ValueError("need q or a generator")
        gen = _gabidulin_generator(q, F.m, F.n, delta)
    _check_gen(gen, F, delta)
    B = B or OrderedBasis.standard(gen.ctx)
    return _code_from_columns(gen, B, F.cols[:l], F, delta, {"method": "fn1"})


def _check_gen(gen: SystematicMrdGenerator, F: FerrersDiagram, delta: int) -> None:
    if gen.ctx.degree != F.m or gen.n != F.n or gen.ell != ell(F, delta):
        raise ValueError("generator parameters do not match the diagram")


def power_chain(ext: FieldCtx) -> list[Subspace]:
    """``V_i = <1, x, ..., x^{i-1}>`` in standard coordinates, ``i = 1..m``."""
    m = ext.degree
    eye = np.eye(m, dtype=np.int64)
    return [Subspace(ext.base, m, eye[:i]) for i in range(1, m + 1)]


def construct_staircase(F: FerrersDiagram, delta: int, q=None, gen: SystematicMrdGenerator | None = None,
                        chain: Sequence[Subspace] | None = None) -> RankMetricCode:
    """Maximal code for diagrams meeting the staircase condition.

    The basis ``B`` is chosen inside the nested intersections of the scaled
    chain members; ``chain[i-1]`` must have dimension ``i`` (coordinates in
    the standard basis).
    """
    if not staircase_check(F, delta):
        raise ValueError(f"({F}; {delta}) violates the staircase condition")
    prof = nu_profile(F, delta)
    if prof.nu_min != prof.nu[0]:
        raise ValueError("staircase construction needs nu_min = nu_0")
    if gen is None:
        if q is None:
            raise ValueError("need q or a generator")
        gen = _gabidulin_generator(q, F.m, F.n, delta)
    _check_gen(gen, F, delta)
    ext = gen.ctx
    base = ext.base
    m = F.m
    l = ell(F, delta)
    chain = list(chain) if chain is not None else power_chain(ext)
    if len(chain) != m or any(V.dim != i + 1 for i, V in enumerate(chain)):
        raise ValueError("chain must have one subspace of each dimension 1..m")
    R = OrderedBasis.standard(ext)
    A = gen.A
    cols = F.cols
    W = []
    for t in range(l):
        Wt = Subspace.whole(base, m)
        for j in range(F.n - l):
            Wt = intersect(Wt, scaled_subspace(chain[cols[l + j] - 1], ext.inv(int(A[t, j])), R))
        W.append(Wt)
    top = chain[cols[l] - 1]
    chosen: list[np.ndarray] = []
    for t in range(l):
        S = top
        for j in range(t, l):
            S = intersect(S, W[j])
        if S.dim < cols[t]:
            raise AssertionError(f"intersection of dimension {S.dim} < {cols[t]}: bug")
        chosen = _greedy_extend(chosen, list(S.basis.data), cols[t], base)
    chosen = _greedy_extend(chosen, list(np.eye(m, dtype=np.int64)), m, base)
    B = OrderedBasis(ext, [int(R.combine(v)) for v in chosen])
    return _code_from_columns(gen, B, cols[:l], F, delta, {"method": "staircase"})


def _embed(C: RankMetricCode, F: FerrersDiagram, delta: int, meta: dict) -> RankMetricCode:
    """Pad a code on a smaller diagram with zero rows so it lives in ``F``'s box."""
    mats = []
    for M in C.basis:
        X = np.zeros((F.m, F.n), dtype=np.int64)
        X[: M.rows] = M.data
        mats.append(X)
    return RankMetricCode(C.ctx, mats, F.m, F.n, shape=F, delta=delta, meta=meta)


def construct_ctn(F: FerrersDiagram, delta: int, q) -> RankMetricCode:
    """Truncate dots below row ``max(c_{l+1}, n)`` (or ``max(c_l, n)``) and build on the rest."""
    if not 2 <= delta <= F.n:
        raise ValueError("need 2 <= delta <= n")
    n = F.n
    l = ell(F, delta)
    c = F.cols
    if all(x >= n for x in c[l:]):
        mh = max(c[l - 1], n)
        Fh = FerrersDiagram([min(x, mh) for x in c], mh)
        inner = construct_fn1(Fh, delta, q)
        route = "cn"
    elif all(x >= n for x in c[l + 1:]) and all(
            c[t - 1] <= n - (n - c[l]) * (l + 2 - t) for t in range(1, l + 1)):
        Fh = FerrersDiagram([min(x, n) for x in c], n)
        inner = construct_staircase(Fh, delta, q)
        route = "ctn"
    else:
        raise ValueError(f"({F}; {delta}) satisfies neither truncation hypothesis")
    if Fh.m > F.m:
        raise ValueError("truncated diagram does not fit")
    return _embed(inner, F, delta, {"method": "ctn", "route": route, "inner": str(Fh)})


def _points_for_column(ext: FieldCtx, a: Sequence[int], n: int) -> list[int]:
    """Evaluation points whose Gabidulin code has systematic first column ``a``.

    On the first ``l+1`` coordinates the code must have dual ``<(a, -1)>``,
    which forces ``g_{l+1} = sum a_i g_i`` and
    ``sum (a_i^{q^{-r}} - a_i) g_i = 0`` for ``r = 1..l-1``.
    """
    q = ext.base_order
    m = ext.degree
    l = len(a)
    if l == 1:
        cands = [np.array([1], dtype=np.int64)]
    else:
        rows = [[ext.sub(ext.pow(x, q ** (m - r)), x) for x in a] for r in range(1, l)]
        K = GfMatrix(ext, rows).nullspace()
        cands = [K.data[i] for i in range(K.rows)]
        # any combination works in principle; scan small ones if the basis vectors do not
        if K.rows > 1:
            cands += [ext.vsum(ext.vmul(np.array(c, dtype=np.int64)[:, None], K.data), 0)
                      for c in itertools.product(range(ext.order), repeat=K.rows) if any(c)]
    av = np.array(a, dtype=np.int64)
    for g in cands:
        g = [int(x) for x in g]
        g.append(int(ext.vsum(ext.vmul(av, np.array(g, dtype=np.int64)), 0)))
        if _independent(ext, g):
            return _complete_elements(ext, g)[:n]
    raise AssertionError("no independent evaluation points for the prescribed column: bug")


def mrd_with_first_column(q, m: int, n: int, a: Sequence, delta: int | None = None,
                          route: str = "points") -> SystematicMrdGenerator:
    """MRD generator ``(I | A)`` whose first column of ``A`` is ``a``.

    ``route="points"`` picks Gabidulin evaluation points that produce the
    column directly.  ``route="phi"`` maps a Gabidulin generator ``(I | B)``
    entrywise by the F_q-linear bijection fixing 1 with ``b_i -> a_i``; that
    map need not preserve the MRD property when ``l >= 2``, so the result is
    checked exhaustively and rejected if it fails.
    """
    ext = _ext(q, m)
    a = [_val(ext, x) for x in a]
    l = len(a)
    if delta is None:
        delta = n - l + 1
    if l != n - delta + 1 or l >= n:
        raise ValueError("need len(a) = n - delta + 1 < n")
    if not _independent(ext, [1] + a):
        raise ValueError("1, a_1, ..., a_l must be F_q-independent")
    if route == "points":
        g = _points_for_column(ext, a, n)
        gen = systematic_generator(gabidulin(ext.base, m, n, delta, g=g).generator)
    elif route == "phi":
        if ext.base_order ** (m * l) > VERIFY_LIMIT:
            raise ValueError("the phi route needs an exhaustive MRD check, too large here")
        src = _gabidulin_generator(ext.base, m, n, delta)
        b = [int(x) for x in src.A[:, 0]]
        dom = _complete_elements(ext, [1] + b)
        img = _complete_elements(ext, [1] + a)
        phi = linear_map_from_basis_images(OrderedBasis(ext, dom), img)
        gen = SystematicMrdGenerator(GfMatrix(ext, phi(src.G.data)), l)
    else:
        raise ValueError(f"unknown route {route!r}")
    if [int(x) for x in gen.A[:, 0]] != a:
        raise AssertionError("first column not reproduced: bug")
    _check_mrd(gen, delta)
    return gen


def invariance_shape(m: int, n: int, delta: int, b: int) -> FerrersDiagram:
    l = n - delta + 1
    return FerrersDiagram([b] * (l - b + 1) + [l + 1] * b + [m] * (delta - 2), m)


def construct_invariance(q, m: int, n: int, delta: int, b: int) -> RankMetricCode:
    """Maximal code on ``[b,..,b, l+1,..,l+1, m,..,m]`` from a subfield-invariant subspace."""
    if not 3 <= delta <= n <= m:
        raise ValueError("need 3 <= delta <= n <= m")
    l = n - delta + 1
    if b == 1:
        raise ValueError("b = 1 gives the shape of construct_fn1; use that instead")
    if b < 1 or m % b or (l + 1) % b:
        raise ValueError(f"b = {b} must divide both m = {m} and l + 1 = {l + 1}")
    if b > m // 2:
        raise ValueError("need b <= m/2")
    ext = _ext(q, m)
    qb = ext.base_order
    alpha = primitive_element(ext).value
    beta = ext.pow(alpha, (qb**m - 1) // (qb**b - 1))
    s = (l + 1) // b - 1
    groups = [[ext.mul(ext.pow(alpha, i), ext.pow(beta, j)) for j in range(b)] for i in range(s + 1)]
    first = [x for grp in groups for x in grp]
    col = [x for grp in groups[1:] for x in grp] + groups[0][1:]
    gen = mrd_with_first_column(ext.base, m, n, col, delta)
    B = OrderedBasis(ext, _complete_elements(ext, first))
    F = invariance_shape(m, n, delta, b)
    used = [b] * (l - b + 1) + [l + 1] * (b - 1)
    return _code_from_columns(gen, B, used, F, delta, {"method": "invariance", "b": b})


def construct_companion(q, m: int, i: int, t: int = 0) -> RankMetricCode:
    """``<I, C, ..., C^{i-1}>`` for the companion matrix ``C`` of the modulus of F_{q^m},
    with the last ``t`` columns deleted."""
    if not 1 <= i <= m:
        raise ValueError("need 1 <= i <= m")
    if not 0 <= t <= i - 1:
        raise ValueError("need 0 <= t <= i - 1")
    ext = _ext(q, m)
    base = ext.base
    f = ext.modulus
    C = np.zeros((m, m), dtype=np.int64)
    C[np.arange(1, m), np.arange(m - 1)] = 1
    C[:, m - 1] = base.vneg(np.array(f[:m], dtype=np.int64))
    Cm = GfMatrix(base, C)
    P = GfMatrix.identity(base, m)
    mats = []
    for _ in range(i):
        mats.append(P.data[:, : m - t])
        P = Cm @ P
    n = m - t
    F = FerrersDiagram([min(i - 1 + j, m) for j in range(1, n + 1)], m)
    return RankMetricCode(base, mats, m, n, shape=F, delta=n, meta={"method": "companion"})


# -- MDS diagonals ----------------------------------------------------------

def mds_generator(ctx: FieldCtx, length: int, k: int) -> GfMatrix:
    """Systematic ``k x length`` generator of a (doubly extended) Reed-Solomon code."""
    q = ctx.order
    if not 1 <= k <= length:
        raise ValueError("need 1 <= k <= length")
    if k == length:
        return GfMatrix.identity(ctx, k)
    if length > q + 1:
        raise ValueError(f"no MDS code of length {length} from Reed-Solomon over F_{q}")
    pts = np.arange(min(length, q), dtype=np.int64)
    V = np.array([[ctx.pow(int(x), e) for x in pts] for e in range(k)], dtype=np.int64)
    if length == q + 1:
        inf = np.zeros((k, 1), dtype=np.int64)
        inf[k - 1, 0] = 1
        V = np.hstack([V, inf])
    R, piv = GfMatrix(ctx, V).rref()
    if list(piv) != list(range(k)):
        raise AssertionError("Reed-Solomon generator lost its leading minor: bug")
    if length <= 8:
        for cols in itertools.combinations(range(length), k):
            if GfMatrix(ctx, R.data[:, cols]).det() == 0:
                raise AssertionError(f"vanishing maximal minor on columns {cols}: bug")
    return R


def construct_mds_diagonal(F: FerrersDiagram, delta: int, q) -> RankMetricCode:
    """Codewords carried by MDS codes along the diagonals ``D_r`` of ``F``.

    The result has dimension ``diagonal_sum(F, delta)``; ``meta["maximal"]``
    records whether that equals ``nu_min``.
    """
    ctx = _base_field(q)
    if not 1 <= delta <= F.n:
        raise ValueError(f"delta must lie in [1, {F.n}]")
    diags = []
    for r in range(1, F.m + 1):
        on = [pos for pos in diagonal(F, r) if pos in F]
        if len(on) >= delta:
            diags.append(on)
    need = max((len(d) - 1 for d in diags), default=0)
    if ctx.order < need:
        raise ValueError(f"field of order {ctx.order} too small, need at least {need}")
    mats = []
    for on in diags:
        G = mds_generator(ctx, len(on), len(on) - delta + 1)
        for row in G.data:
            X = np.zeros((F.m, F.n), dtype=np.int64)
            for (i, j), v in zip(on, row):
                X[i - 1, j - 1] = v
            mats.append(X)
    maximal, _ = mds_constructible(F, delta)
    return RankMetricCode(ctx, mats, F.m, F.n, shape=F, delta=delta,
                          meta={"method": "mds-diagonal", "maximal": maximal})


# -- upper triangular shape, distance n-1 -----------------------------------

def default_quadratic(q) -> tuple[int, int]:
    """Smallest ``(c, d)`` (``d`` first) with ``x^2 - d x - c`` irreducible."""
    ctx = _base_field(q)
    for d in ctx.elements():
        for c in ctx.elements():
            if is_irreducible(ctx, [ctx.neg(c), ctx.neg(d), 1]):
                return c, d
    raise AssertionError("no irreducible quadratic: bug")


def construct_upper_triangular_explicit(n: int, q, c: int | None = None, d: int | None = None) -> RankMetricCode:
    """Three explicit upper triangular matrices built from ``x^2 - d x - c``."""
    if n < 2:
        raise ValueError("need n >= 2")
    ctx = _base_field(q)
    if c is None or d is None:
        c0, d0 = default_quadratic(ctx)
        c = c0 if c is None else c
        d = d0 if d is None else d
    c, d = _val(ctx, c), _val(ctx, d)
    if not is_irreducible(ctx, [ctx.neg(c), ctx.neg(d), 1]):
        raise ValueError(f"x^2 - {d}x - {c} is reducible over F_{ctx.order}")
    A1 = np.eye(n, dtype=np.int64)
    A1[0, 0] = 0
    A2 = np.eye(n, k=1, dtype=np.int64)
    A3 = np.zeros((n, n), dtype=np.int64)
    minus1 = ctx.neg(1)
    for i in range(1, n + 1):
        if i % 2 == 0:
            entries = {i + 2: 1}
        elif i == 1:
            entries = {1: 1, 2: d, 3: minus1}
        else:
            entries = {i: c, i + 1: d, i + 2: minus1}
        for j, v in entries.items():
            if j <= n:
                A3[i - 1, j - 1] = v
    F = FerrersDiagram(range(1, n + 1), n)
    return RankMetricCode(ctx, [A1, A2, A3], n, n, shape=F, delta=n - 1,
                          meta={"method": "ut-explicit", "c": c, "d": d})


def _lex_vectors(q: int, n: int):
    for v in itertools.product(range(q), repeat=n):
        yield np.array(v, dtype=np.int64)


def _extend_triple(ctx: FieldCtx, A: GfMatrix, B: GfMatrix, C: GfMatrix):
    n = A.rows
    q = ctx.order
    v = next((x for x in _lex_vectors(q, n)
              if _in_colsp(B, x) and not _in_colsp(A, x)), None)
    if v is None:
        raise AssertionError("colsp(B) is contained in colsp(A): bug")
    pairs = [(lam, mu) for lam, mu in itertools.product(range(q), repeat=2)
             if (lam, mu) != (0, 0) and (lam == 1 or (lam == 0 and mu == 1))]
    low = []
    for lam, mu in pairs:
        M = A.scale(lam) + B.scale(mu)
        if M.rank() <= n - 1:
            low.append((lam, mu, M))
    w = None
    for x in _lex_vectors(q, n):
        if all(not _in_colsp(M, ctx.vadd(ctx.vmul(lam, v), ctx.vmul(mu, x))) for lam, mu, M in low):
            w = x
            break
    if w is None:
        raise AssertionError("no admissible w found: bug")
    z = np.zeros((1, n + 1), dtype=np.int64)
    Ah = np.vstack([np.hstack([A.data, v[:, None]]), z])
    Ch = np.vstack([np.hstack([B.data, w[:, None]]), z])
    Bh = np.zeros((n + 1, n + 1), dtype=np.int64)
    Bh[:n, :n] = C.data
    Bh[n, n] = 1
    return GfMatrix(ctx, Ah), GfMatrix(ctx, Bh), GfMatrix(ctx, Ch)


def _in_colsp(M: GfMatrix, v) -> bool:
    v = np.asarray(v, dtype=np.int64)
    if not v.any():
        return True
    return M.hstack(GfMatrix(M.ctx, v[:, None])).rank() == M.rank()


def construct_upper_triangular_recursive(n: int, q) -> RankMetricCode:
    """Grow a distance ``k-1`` triple on ``k x k`` upper triangles one size at a time."""
    if n < 2:
        raise ValueError("need n >= 2")
    ctx = _base_field(q)
    A = GfMatrix(ctx, [[1, 0], [0, 0]])
    B = GfMatrix(ctx, [[0, 0], [0, 1]])
    C = GfMatrix(ctx, [[0, 1], [0, 0]])
    for _ in range(2, n):
        A, B, C = _extend_triple(ctx, A, B, C)
    F = FerrersDiagram(range(1, n + 1), n)
    return RankMetricCode(ctx, [A, B, C], n, n, shape=F, delta=n - 1, meta={"method": "ut-recursive"})


# -- the ad-hoc [1,3,3,4] code ----------------------------------------------

def construct_f1334(q) -> RankMetricCode:
    """Dimension-4 distance-3 code on ``[1,3,3,4]`` from a 3x3 MRD code."""
    base = _base_field(q)
    mrd = construct_companion(base, 3, 3)
    Bs = [M.data.copy() for M in mrd.basis]
    # normalized form: first columns are e_1, e_2, e_3
    for t, M in enumerate(Bs):
        if list(M[:, 0]) != [int(t == r) for r in range(3)]:
            raise AssertionError("companion basis not in normalized form: bug")
    if Bs[0][1, 1] == 0:
        # relabel rows 2 and 3; swapping B_2, B_3 keeps the normalized form
        Bs = [M[[0, 2, 1]] for M in Bs]
        Bs = [Bs[0], Bs[2], Bs[1]]
    mats = []
    for M in Bs:
        X = np.zeros((4, 4), dtype=np.int64)
        X[:3, 1:] = M
        mats.append(X)
    A4 = np.zeros((4, 4), dtype=np.int64)
    A4[0, 0] = A4[2, 2] = A4[3, 3] = 1
    mats.append(A4)
    F = FerrersDiagram([1, 3, 3, 4], 4)
    return RankMetricCode(base, mats, 4, 4, shape=F, delta=3, meta={"method": "f1334"})


def invariant_subspaces(ext: FieldCtx, a, dim: int) -> list[Subspace]:
    """All ``dim``-dimensional F_q-subspaces of F_{q^m} with ``V * a = V``."""
    from .matrix import iter_subspaces

    R = OrderedBasis.standard(ext)
    return [V for V in iter_subspaces(ext.base, ext.degree, dim) if scaled_subspace(V, a, R) == V]


METHODS = {
    "gabidulin": gabidulin,
    "fn1": construct_fn1,
    "staircase": construct_staircase,
    "ctn": construct_ctn,
    "invariance": construct_invariance,
    "companion": construct_companion,
    "mds-diagonal": construct_mds_diagonal,
    "ut-explicit": construct_upper_triangular_explicit,
    "ut-recursive": construct_upper_triangular_recursive,
    "f1334": construct_f1334,
}


def applicable_methods(F: FerrersDiagram, delta: int, q: int) -> list[str]:
    """Diagram constructors whose hypotheses hold for ``(F; delta)`` over F_q.

    Only cheap structural tests are made; reduction from a larger diagram is
    not considered here.
    """
    out = []
    n, m, c = F.n, F.m, F.cols
    if 2 <= delta <= n <= m:
        l = ell(F, delta)
        prof = nu_profile(F, delta)
        if all(x == m for x in c[l:]):
            out.append("fn1")
        if staircase_check(F, delta) and prof.nu_min == prof.nu[0]:
            out.append("staircase")
        if c[0] > 0 and (all(x >= n for x in c[l:]) or (
                all(x >= n for x in c[l + 1:])
                and all(c[t - 1] <= n - (n - c[l]) * (l + 2 - t) for t in range(1, l + 1)))):
            out.append("ctn")
    if 1 <= delta <= n and nu_profile(F, delta).nu_min > 0:
        ok, _ = mds_constructible(F, delta)
        longest = max((sum(1 for pos in diagonal(F, r) if pos in F) for r in range(1, m + 1)), default=0)
        if ok and longest <= q + 1:
            out.append("mds-diagonal")
    if delta == 3 and F == FerrersDiagram([1, 3, 3, 4], 4):
        out.append("f1334")
    return out
