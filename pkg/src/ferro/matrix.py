"""Dense matrices over a :class:`~ferro.gf.FieldCtx` and RREF subspaces."""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from .gf import FieldCtx, OrderedBasis, _val


class GfMatrix:
    """Dense matrix with integer-encoded entries over ``ctx``.

    The underlying array is copied on construction and never mutated, so
    matrices behave as values.
    """

    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= ctx.order):
            raise ValueError(f"entries out of range for {ctx}")
        arr.setflags(write=False)
        self.ctx = ctx
        self.data = arr

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> GfMatrix:
        return cls(ctx, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> GfMatrix:
        return cls(ctx, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> GfMatrix:
        return GfMatrix(self.ctx, self.data.T)

    def _check(self, other: GfMatrix) -> None:
        if other.ctx is not self.ctx:
            raise ValueError("matrices live over different fields")

    def __add__(self, other: GfMatrix) -> GfMatrix:
        self._check(other)
        return GfMatrix(self.ctx, self.ctx.vadd(self.data, other.data))

    def __sub__(self, other: GfMatrix) -> GfMatrix:
        self._check(other)
        return GfMatrix(self.ctx, self.ctx.vsub(self.data, other.data))

    def __neg__(self) -> GfMatrix:
        return GfMatrix(self.ctx, self.ctx.vneg(self.data))

    def scale(self, c) -> GfMatrix:
        return GfMatrix(self.ctx, self.ctx.vmul(self.data, _val(self.ctx, c)))

    def __matmul__(self, other: GfMatrix) -> GfMatrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ctx = self.ctx
        if ctx.is_prime:
            return GfMatrix(ctx, (self.data @ other.data) % ctx.p)
        prod = ctx.vmul(self.data[:, :, None], other.data[None, :, :])
        return GfMatrix(ctx, ctx.vsum(prod, axis=1))

    def __eq__(self, other) -> bool:
        return (isinstance(other, GfMatrix) and self.ctx is other.ctx
                and self.shape == other.shape and np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((id(self.ctx), self.shape, self.data.tobytes()))

    def __getitem__(self, idx):
        return self.data[idx]

    def __repr__(self) -> str:
        return f"GfMatrix({self.data.tolist()}, {self.ctx!r})"

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def is_zero(self) -> bool:
        return not self.data.any()

    def hstack(self, other: GfMatrix) -> GfMatrix:
        self._check(other)
        return GfMatrix(self.ctx, np.hstack([self.data, other.data]))

    def vstack(self, other: GfMatrix) -> GfMatrix:
        self._check(other)
        return GfMatrix(self.ctx, np.vstack([self.data, other.data]))

    # -- elimination ------------------------------------------------------
    def rref(self) -> tuple[GfMatrix, list[int]]:
        R, piv, _ = _eliminate(self.ctx, self.data, reduced=True)
        return GfMatrix(self.ctx, R), piv

    def rank(self) -> int:
        return len(_eliminate(self.ctx, self.data, reduced=False)[1])

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        R, piv, swaps = _eliminate(self.ctx, self.data, reduced=False, normalize=False)
        if len(piv) < self.rows:
            return 0
        ctx = self.ctx
        d = 1
        for i in range(self.rows):
            d = ctx.mul(d, int(R[i, i]))
        return ctx.neg(d) if swaps % 2 else d

    def nullspace(self) -> GfMatrix:
        """Basis of the right kernel, one vector per row."""
        ctx = self.ctx
        R, piv = self.rref()
        free = [j for j in range(self.cols) if j not in piv]
        out = np.zeros((len(free), self.cols), dtype=np.int64)
        for t, f in enumerate(free):
            out[t, f] = 1
            for i, pc in enumerate(piv):
                out[t, pc] = ctx.neg(int(R.data[i, f]))
        return GfMatrix(ctx, out)

    def inverse(self) -> GfMatrix:
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        R, piv = self.hstack(GfMatrix.identity(self.ctx, n)).rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return GfMatrix(self.ctx, R.data[:, n:])


def _eliminate(ctx: FieldCtx, data: np.ndarray, reduced: bool, normalize: bool = True):
    """Gaussian elimination; pivot = first nonzero entry from the top of the column."""
    A = np.array(data, dtype=np.int64)
    rows, cols = A.shape
    piv: list[int] = []
    swaps = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
            swaps += 1
        if normalize:
            A[r] = ctx.vmul(A[r], ctx.inv(int(A[r, c])))
            prow = A[r]
        else:
            prow = ctx.vmul(A[r], ctx.inv(int(A[r, c])))
        targets = np.flatnonzero(A[:, c]) if reduced else r + 1 + np.flatnonzero(A[r + 1:, c])
        targets = targets[targets != r]
        if targets.size:
            f = A[targets, c][:, None]
            A[targets] = ctx.vsub(A[targets], ctx.vmul(f, prow[None, :]))
        piv.append(c)
        r += 1
    return A, piv, swaps


def rank(M: GfMatrix) -> int:
    return M.rank()


def rref(M: GfMatrix) -> tuple[GfMatrix, list[int]]:
    """Reduced row echelon form and 0-based pivot columns."""
    return M.rref()


def det(M: GfMatrix) -> int:
    return M.det()


def spectrum_free(M: GfMatrix) -> bool:
    """True iff ``det(lambda*I - M)`` is nonzero for every ``lambda`` in the field."""
    if M.rows != M.cols:
        raise ValueError("spectrum of a non-square matrix")
    ctx = M.ctx
    n = M.rows
    for lam in ctx.elements():
        D = np.array(M.data)
        D[np.arange(n), np.arange(n)] = ctx.vsub(D.diagonal(), lam)
        if GfMatrix(ctx, D).rank() < n:
            return False
    return True


def colspace_contains(M: GfMatrix, v) -> bool:
    v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
    if v.shape[0] != M.rows:
        raise ValueError("vector length does not match the number of rows")
    return M.hstack(GfMatrix(M.ctx, v)).rank() == M.rank()


class Subspace:
    """Subspace of ``ctx^ambient`` stored as an RREF basis without zero rows."""

    __slots__ = ("ctx", "ambient", "basis")

    def __init__(self, ctx: FieldCtx, ambient: int, vectors=()):
        vecs = np.array(vectors, dtype=np.int64).reshape(-1, ambient)
        if vecs.shape[0]:
            R, piv = GfMatrix(ctx, vecs).rref()
            vecs = R.data[: len(piv)]
        self.ctx = ctx
        self.ambient = ambient
        self.basis = GfMatrix(ctx, vecs) if vecs.shape[0] else GfMatrix(ctx, np.zeros((0, ambient)))

    @classmethod
    def whole(cls, ctx: FieldCtx, ambient: int) -> Subspace:
        return cls(ctx, ambient, np.eye(ambient, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ctx is other.ctx
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((id(self.ctx), self.ambient, self.basis.data.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, basis={self.basis.tolist()})"

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, self.ambient)
        if self.dim == 0:
            return not v.any()
        return self.basis.vstack(GfMatrix(self.ctx, v)).rank() == self.dim

    def __add__(self, other: Subspace) -> Subspace:
        _compatible(self, other)
        return Subspace(self.ctx, self.ambient, np.vstack([self.basis.data, other.basis.data]))

    def vectors(self) -> Iterator[np.ndarray]:
        """All ``q^dim`` vectors, ordered by coefficient tuples over the RREF basis."""
        q = self.ctx.order
        B = self.basis.data
        for coeffs in itertools.product(range(q), repeat=self.dim):
            if self.dim == 0:
                yield np.zeros(self.ambient, dtype=np.int64)
                return
            prod = self.ctx.vmul(np.array(coeffs, dtype=np.int64)[:, None], B)
            yield self.ctx.vsum(prod, axis=0)


def _compatible(U: Subspace, V: Subspace) -> None:
    if U.ctx is not V.ctx or U.ambient != V.ambient:
        raise ValueError("subspaces live in different ambient spaces")


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """``U ∩ V`` via the left kernel of the stacked bases."""
    _compatible(U, V)
    if U.dim == 0 or V.dim == 0:
        return Subspace(U.ctx, U.ambient)
    S = U.basis.vstack(V.basis)
    K = S.T.nullspace()
    if K.rows == 0:
        return Subspace(U.ctx, U.ambient)
    X = GfMatrix(U.ctx, K.data[:, : U.dim])
    return Subspace(U.ctx, U.ambient, (X @ U.basis).data)


def scaled_subspace(V: Subspace, a, B: OrderedBasis) -> Subspace:
    """Coordinates of ``{v * a : v in V}`` where ``V`` is given in ``B``-coordinates."""
    ctx = B.ctx
    a = _val(ctx, a)
    if a == 0:
        raise ValueError("scaling by zero")
    if V.dim == 0:
        return Subspace(V.ctx, V.ambient)
    elems = B.combine(V.basis.data)
    scaled = ctx.vmul(elems, a)
    return Subspace(V.ctx, V.ambient, B.coords(scaled))


def iter_subspaces(ctx: FieldCtx, ambient: int, dim: int) -> Iterator[Subspace]:
    """Every ``dim``-dimensional subspace of ``ctx^ambient``, one RREF per subspace."""
    q = ctx.order
    for piv in itertools.combinations(range(ambient), dim):
        free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, ambient) if j not in piv]
        for vals in itertools.product(range(q), repeat=len(free)):
            B = np.zeros((dim, ambient), dtype=np.int64)
            for i, p in enumerate(piv):
                B[i, p] = 1
            for (i, j), v in zip(free, vals):
                B[i, j] = v
            S = Subspace.__new__(Subspace)
            S.ctx = ctx
            S.ambient = ambient
            S.basis = GfMatrix(ctx, B)
            yield S


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def stack_rank(ctx: FieldCtx, mats: Sequence[GfMatrix]) -> int:
    """Rank of the matrices flattened into vectors (their F_q-span dimension)."""
    if not mats:
        return 0
    return GfMatrix(ctx, np.array([M.data.ravel() for M in mats])).rank()
