"""Finite fields GF(p^k), extension towers and coordinate maps.

Elements are plain integers in ``[0, q)``.  The integer is the base-``p``
expansion of the flattened coefficient vector with the constant term in the
least significant digit, so an element of ``F_{q^m}`` over ``F_q`` has
coefficient ``i`` equal to ``(a // q**i) % q``.  Field addition is therefore
digit-wise addition mod ``p`` at every level of a tower.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 1 << 64
TABLE_LIMIT = 1 << 16
ADD_TABLE_LIMIT = 1 << 10
KERNEL_LIMIT = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q = p**k`` or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = fs[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


class FieldCtx:
    """A finite field, either GF(p) or a simple extension of another FieldCtx.

    Instances are immutable and cached, so two calls with the same arguments
    return the same object.  Use :func:`make_field` or :func:`extend_field`
    rather than the constructor.
    """

    def __init__(self, p: int, modulus: Sequence[int], base: FieldCtx | None = None):
        self.p = p
        self.base = base
        self.modulus = tuple(int(c) for c in modulus)
        self.degree = len(self.modulus) - 1
        if base is None:
            if self.modulus != (0, 1):
                raise ValueError("prime field modulus must be x")
            self.k = 1
            self.base_order = p
        else:
            self.k = base.k * self.degree
            self.base_order = base.order
        self.order = p**self.k
        if self.order > MAX_ORDER:
            raise ValueError(f"field order {p}^{self.k} exceeds 2^64")
        self.is_prime = base is None
        self._exp = None
        self._log = None
        self._add_table = None
        self._neg_table = None
        self._gen = None
        if not self.is_prime:
            self._gen = self._find_primitive()
            if self.order <= TABLE_LIMIT:
                self._build_log_tables()
            if self.order <= ADD_TABLE_LIMIT:
                v = np.arange(self.order, dtype=np.int64)
                self._add_table = self._digit_add(v[:, None], v[None, :])
                self._neg_table = self._digit_neg(v)

    # -- identity --------------------------------------------------------
    @property
    def tower(self) -> tuple[int, ...]:
        """Degrees of every level, starting with the prime field's ``1``."""
        if self.base is None:
            return (1,)
        return self.base.tower + (self.degree,)

    @property
    def moduli(self) -> tuple[tuple[int, ...], ...]:
        if self.base is None:
            return (self.modulus,)
        return self.base.moduli + (self.modulus,)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k}, tower={self.tower})"

    def __reduce__(self):
        return (_rebuild_ctx, (self.p, self.moduli))

    @property
    def prime_field(self) -> FieldCtx:
        ctx = self
        while ctx.base is not None:
            ctx = ctx.base
        return ctx

    # -- coefficient views -----------------------------------------------
    def to_coeffs(self, a: int) -> list[int]:
        """Coefficients of ``a`` over the immediate base, constant term first."""
        if self.is_prime:
            return [int(a)]
        qb = self.base_order
        a = int(a)
        out = []
        for _ in range(self.degree):
            out.append(a % qb)
            a //= qb
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if self.is_prime:
            (c,) = coeffs
            return int(c) % self.p
        if len(coeffs) != self.degree:
            raise ValueError("coefficient vector has the wrong length")
        qb = self.base_order
        a = 0
        for c in reversed(coeffs):
            a = a * qb + int(c)
        return a

    def coeff_array(self, values) -> np.ndarray:
        """Vectorized :meth:`to_coeffs`; appends a trailing axis of length ``degree``."""
        v = np.asarray(values, dtype=np.int64)
        if self.is_prime:
            return v[..., None].copy()
        qb = self.base_order
        pw = qb ** np.arange(self.degree, dtype=np.int64)
        return (v[..., None] // pw) % qb

    def from_coeff_array(self, coeffs) -> np.ndarray:
        c = np.asarray(coeffs, dtype=np.int64)
        if self.is_prime:
            return c[..., 0] % self.p
        pw = self.base_order ** np.arange(self.degree, dtype=np.int64)
        return (c * pw).sum(axis=-1)

    # -- scalar arithmetic on ints -----------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return int(self._digit_add(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.is_prime:
            return (-a) % self.p
        if self.p == 2:
            return a
        return int(self._digit_neg(np.int64(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.order - 1)])
        return self.from_coeffs(self._poly_mulmod(self.to_coeffs(a), self.to_coeffs(b)))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.is_prime:
            return pow(a, e, self.p)
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) * e) % (self.order - 1)])
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return int(self._exp[(-int(self._log[a])) % (self.order - 1)])
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- vectorized arithmetic on integer arrays ----------------------------
    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._digit_add(a, b)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.is_prime:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        if self._neg_table is not None:
            return self._neg_table[a]
        return self._digit_neg(a)

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a * b) % self.p
        if self._log is None:
            a, b = np.broadcast_arrays(a, b)
            out = np.fromiter((self.mul(int(x), int(y)) for x, y in zip(a.ravel(), b.ravel())),
                              dtype=np.int64, count=a.size)
            return out.reshape(a.shape)
        s = (self._log[a] + self._log[b]) % (self.order - 1)
        return np.where((a == 0) | (b == 0), 0, self._exp[s])

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()],
                            dtype=np.int64).reshape(a.shape)
        if self._log is None:
            return np.array([self.inv(int(x)) for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def vsum(self, a, axis: int) -> np.ndarray:
        """Field sum along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.is_prime:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for x in a:
            acc = self.vadd(acc, x)
        return acc

    def _digit_add(self, a, b):
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        for _ in range(self.k):
            out = out + ((a // w) % p + (b // w) % p) % p * w
            w *= p
        return out

    def _digit_neg(self, a):
        p = self.p
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        w = 1
        for _ in range(self.k):
            out = out + ((-((a // w) % p)) % p) * w
            w *= p
        return out

    # -- polynomial arithmetic over the base ------------------------------
    def _poly_mulmod(self, a: list[int], b: list[int]) -> list[int]:
        B = self.base
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        return _pad(poly_rem(B, prod, list(self.modulus)), self.degree)

    def _find_primitive(self) -> int:
        n = self.order - 1
        if n == 1:
            return 1
        exps = [n // r for r in prime_factors(n)]
        for g in range(1, self.order):
            if all(self._slow_pow(g, e) != 1 for e in exps):
                return g
        raise AssertionError("no primitive element found")

    def _slow_pow(self, a: int, e: int) -> int:
        deg = self.degree
        r = [1] + [0] * (deg - 1)
        x = self.to_coeffs(a)
        while e:
            if e & 1:
                r = _pad(self._poly_mulmod(r, x), deg)
            x = _pad(self._poly_mulmod(x, x), deg)
            e >>= 1
        return self.from_coeffs(r)

    def _build_log_tables(self) -> None:
        n = self.order - 1
        exp = np.zeros(n, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        g = self.to_coeffs(self._gen)
        cur = [1] + [0] * (self.degree - 1)
        for i in range(n):
            v = self.from_coeffs(cur)
            exp[i] = v
            log[v] = i
            cur = _pad(self._poly_mulmod(cur, g), self.degree)
        self._exp = exp
        self._log = log

    # -- helpers ----------------------------------------------------------
    def elements(self) -> range:
        return range(self.order)

    def kernel_tables(self):
        """uint8 ``(q, add, sub, mul, inv)`` tables used by the compiled kernels."""
        return _kernel_tables(self)

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)


def _rebuild_ctx(p, moduli):
    ctx = make_field(p, 1)
    for mod in moduli[1:]:
        ctx = _extend_with_modulus(ctx, tuple(mod))
    return ctx


def _pad(c: list[int], n: int) -> list[int]:
    c = list(c[:n])
    return c + [0] * (n - len(c))


@lru_cache(maxsize=None)
def _kernel_tables(ctx: FieldCtx):
    q = ctx.order
    if q > KERNEL_LIMIT:
        raise ValueError(f"kernels support fields of order at most {KERNEL_LIMIT}, got {q}")
    v = np.arange(q, dtype=np.int64)
    add = ctx.vadd(v[:, None], v[None, :]).astype(np.uint8)
    sub = ctx.vsub(v[:, None], v[None, :]).astype(np.uint8)
    mul = ctx.vmul(v[:, None], v[None, :]).astype(np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    inv[1:] = ctx.vinv(v[1:])
    for t in (add, sub, mul, inv):
        t.setflags(write=False)
    return q, add, sub, mul, inv


# -- polynomials over a field (lists, constant term first) -----------------

def poly_trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_rem(F: FieldCtx, a: list[int], f: list[int]) -> list[int]:
    """Remainder of ``a`` modulo the nonzero polynomial ``f`` over ``F``."""
    a = poly_trim(a)
    f = poly_trim(f)
    df = len(f) - 1
    lead_inv = F.inv(f[-1])
    while len(a) - 1 >= df and a:
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            if fi:
                a[shift + i] = F.sub(a[shift + i], F.mul(c, fi))
        a = poly_trim(a)
    return a


def poly_eval(F: FieldCtx, a: Sequence[int], x: int) -> int:
    r = 0
    for c in reversed(a):
        r = F.add(F.mul(r, x), c)
    return r


def _monic_polys(F: FieldCtx, d: int) -> Iterable[list[int]]:
    q = F.order
    for v in range(q**d):
        c = []
        for _ in range(d):
            c.append(v % q)
            v //= q
        yield c + [1]


def is_irreducible(F: FieldCtx, f: Sequence[int]) -> bool:
    """Root check plus trial division by monic polynomials of degree 2..deg/2."""
    f = poly_trim(list(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if any(poly_eval(F, f, x) == 0 for x in F.elements()):
        return False
    for e in range(2, d // 2 + 1):
        for g in _monic_polys(F, e):
            if not any(poly_rem(F, f, g)):
                return False
    return True


def smallest_irreducible(F: FieldCtx, d: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``d`` over ``F``.

    Candidates are ordered by their integer encoding (constant term least
    significant), the same order used for element serialization.
    """
    for f in _monic_polys(F, d):
        if is_irreducible(F, f):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {d}")


# -- constructors -----------------------------------------------------------

@lru_cache(maxsize=None)
def _prime_field(p: int) -> FieldCtx:
    return FieldCtx(p, (0, 1))


@lru_cache(maxsize=None)
def _extend_with_modulus(base: FieldCtx, modulus: tuple[int, ...]) -> FieldCtx:
    if not is_irreducible(base, modulus):
        raise ValueError(f"modulus {modulus} is reducible over {base}")
    return FieldCtx(base.p, modulus, base)


@lru_cache(maxsize=None)
def extend_field(base: FieldCtx, m: int) -> FieldCtx:
    """F_{q^m} over ``base`` with the smallest irreducible modulus of degree ``m``."""
    if m < 1:
        raise ValueError("extension degree must be at least 1")
    if m == 1:
        return base
    if base.order**m > MAX_ORDER:
        raise ValueError("field order exceeds 2^64")
    return _extend_with_modulus(base, smallest_irreducible(base, m))


def make_field(p: int, k: int = 1) -> FieldCtx:
    """GF(p^k) built directly over the prime field."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("degree must be at least 1")
    return extend_field(_prime_field(p), k)


def field_of_order(q: int) -> FieldCtx:
    p, k = prime_power(q)
    return make_field(p, k)


def field_from_tower(p: int, moduli: Sequence[Sequence[int]]) -> FieldCtx:
    """Rebuild a field from explicit moduli, as stored in code files."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not moduli or tuple(moduli[0]) != (0, 1):
        raise ValueError("first tower level must be the prime field with modulus x")
    ctx = _prime_field(p)
    for mod in moduli[1:]:
        mod = tuple(int(c) for c in mod)
        if len(mod) < 3 or mod[-1] != 1:
            raise ValueError(f"modulus {mod} must be monic of degree >= 2")
        if any(not 0 <= c < ctx.order for c in mod):
            raise ValueError(f"modulus coefficient out of range in {mod}")
        ctx = _extend_with_modulus(ctx, mod)
    return ctx


# -- elements -----------------------------------------------------------------

class FieldElement:
    """Value-like wrapper around an integer-encoded element."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        value = int(value)
        if not 0 <= value < ctx.order:
            raise ValueError(f"{value} is not an element of {ctx}")
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.to_coeffs(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("elements belong to different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            # integers embed through the prime field
            return int(other) % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value}, {self.ctx!r})"

    def order(self) -> int:
        if self.value == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.ctx.order - 1
        for r in prime_factors(n):
            while n % r == 0 and self.ctx.pow(self.value, n // r) == 1:
                n //= r
        return n


def _val(ctx: FieldCtx, a) -> int:
    if isinstance(a, FieldElement):
        if a.ctx is not ctx:
            raise ValueError("element belongs to a different field")
        return a.value
    return int(a)


def primitive_element(ctx: FieldCtx) -> FieldElement:
    """Smallest element of multiplicative order ``q - 1``."""
    if ctx.is_prime:
        n = ctx.order - 1
        exps = [n // r for r in prime_factors(n)]
        for g in range(1, ctx.order):
            if all(pow(g, e, ctx.p) != 1 for e in exps):
                return FieldElement(ctx, g)
    return FieldElement(ctx, ctx._gen)


def subfield_element(ctx: FieldCtx, b: int) -> FieldElement:
    """beta = alpha^((q^m - 1)/(q^b - 1)), a generator of the degree-b subfield."""
    m = ctx.degree
    if b < 1 or m % b:
        raise ValueError(f"{b} does not divide the extension degree {m}")
    q = ctx.base_order
    alpha = primitive_element(ctx)
    return alpha ** ((q**m - 1) // (q**b - 1))


# -- bases and linear maps -------------------------------------------------

class OrderedBasis:
    """Ordered F_q-basis of F_{q^m} = ``ctx`` over ``ctx.base``."""

    def __init__(self, ctx: FieldCtx, elements: Sequence):
        from .matrix import GfMatrix

        if ctx.base is None:
            raise ValueError("an ordered basis needs an extension field")
        self.ctx = ctx
        self.elements = tuple(_val(ctx, e) for e in elements)
        m = ctx.degree
        if len(self.elements) != m:
            raise ValueError(f"need {m} basis elements, got {len(self.elements)}")
        cols = ctx.coeff_array(np.array(self.elements, dtype=np.int64))
        self.matrix = GfMatrix(ctx.base, cols.T)
        if self.matrix.rank() != m:
            raise ValueError("basis elements are not linearly independent")
        self._inv = self.matrix.inverse()

    @classmethod
    def power_basis(cls, ctx: FieldCtx, gen=None) -> OrderedBasis:
        """``(1, g, ..., g^{m-1})``; ``g`` defaults to the class of ``x``."""
        if gen is None:
            return cls.standard(ctx)
        g = _val(ctx, gen)
        return cls(ctx, [ctx.pow(g, i) for i in range(ctx.degree)])

    @classmethod
    def standard(cls, ctx: FieldCtx) -> OrderedBasis:
        qb = ctx.base_order
        return cls(ctx, [qb**i for i in range(ctx.degree)])

    @property
    def m(self) -> int:
        return len(self.elements)

    def coords(self, values) -> np.ndarray:
        """Coordinates of an element or array of elements; trailing axis of length m."""
        c = self.ctx.coeff_array(values)
        flat = c.reshape(-1, self.m).T
        out = (self._inv @ _as_matrix(self.ctx.base, flat)).data
        return out.T.reshape(c.shape)

    def combine(self, coords) -> np.ndarray:
        """Inverse of :meth:`coords`."""
        c = np.asarray(coords, dtype=np.int64)
        flat = c.reshape(-1, self.m).T
        coeffs = (self.matrix @ _as_matrix(self.ctx.base, flat)).data.T
        return self.ctx.from_coeff_array(coeffs.reshape(c.shape))

    def __eq__(self, other):
        return isinstance(other, OrderedBasis) and self.ctx is other.ctx and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.ctx), self.elements))


def _as_matrix(ctx, data):
    from .matrix import GfMatrix

    return GfMatrix(ctx, data)


def coordinates(a, B: OrderedBasis) -> np.ndarray:
    """``[a]_B`` as a length-m integer vector over the base field."""
    return B.coords(_val(B.ctx, a))


class LinearMap:
    """F_q-linear map of F_{q^m}, acting on coefficient vectors by ``matrix``."""

    def __init__(self, ctx: FieldCtx, matrix):
        self.ctx = ctx
        self.matrix = matrix

    def __call__(self, values):
        if isinstance(values, FieldElement):
            return FieldElement(self.ctx, int(self(values.value)))
        scalar = np.ndim(values) == 0
        c = self.ctx.coeff_array(values)
        flat = c.reshape(-1, self.ctx.degree).T
        out = (self.matrix @ _as_matrix(self.ctx.base, flat)).data.T
        res = self.ctx.from_coeff_array(out.reshape(c.shape))
        return int(res) if scalar else res

    def is_bijective(self) -> bool:
        return self.matrix.rank() == self.ctx.degree


def linear_map_from_basis_images(domain: OrderedBasis, images: Sequence) -> LinearMap:
    """The unique F_q-linear map with ``domain[i] -> images[i]``."""
    ctx = domain.ctx
    if len(images) != domain.m:
        raise ValueError("need one image per basis element")
    img = np.array([_val(ctx, a) for a in images], dtype=np.int64)
    cols = _as_matrix(ctx.base, ctx.coeff_array(img).T)
    return LinearMap(ctx, cols @ domain._inv)
