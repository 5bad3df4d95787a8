"""Arithmetic in the small finite fields GF(p) and GF(p^2).

Elements are stored as canonical integers: for GF(p) the residue itself, for
GF(p^2) the value ``c0 + c1*p`` standing for ``c0 + c1*X`` modulo a fixed
monic irreducible quadratic.  Prime-subfield elements therefore encode as
themselves, and ``-1`` is always ``p - 1``.

Every field used here has at most 121 elements, so all operations are
table-driven.  The tables are numpy arrays, which lets the same context serve
scalar code and vectorised kernels alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5, 7, 11)

# Monic quadratics X^2 + c1*X + c0, stored as (c0, c1).
DEFAULT_MODULI = {
    2: (1, 1),  # X^2 + X + 1
    3: (1, 0),  # X^2 + 1
    5: (1, 1),  # X^2 + X + 1
    7: (1, 0),  # X^2 + 1
    11: (1, 0),  # X^2 + 1
}


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, r)`` with ``q == p**r``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            r, rest = 0, q
            while rest % p == 0:
                rest //= p
                r += 1
            if rest != 1 or not _is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return p, r
    raise FieldError(f"{q} is not a prime power")


class FieldCtx:
    """The field GF(p^r) for r in {1, 2}.

    Immutable after construction.  ``add``/``mul``/... accept ints or integer
    numpy arrays of canonical encodings and broadcast like numpy ufuncs.
    """

    def __init__(self, p: int, r: int = 1, modulus: tuple[int, ...] | None = None):
        if p not in SUPPORTED_PRIMES and not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if r not in (1, 2):
            raise FieldError(f"extension degree {r} not supported (need 1 or 2)")
        if r == 1:
            modulus = ()
        else:
            if modulus is None:
                modulus = DEFAULT_MODULI.get(p) or _smallest_irreducible(p)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != 2:
                raise FieldError("quadratic modulus needs coefficients (c0, c1)")
            c0, c1 = modulus
            if any((x * x + c1 * x + c0) % p == 0 for x in range(p)):
                raise FieldError(f"X^2 + {c1}X + {c0} is reducible over GF({p})")
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        idx = np.arange(q)
        if self.r == 1:
            add = (idx[:, None] + idx[None, :]) % p
            mul = (idx[:, None] * idx[None, :]) % p
        else:
            c0, c1 = self.modulus
            a0, a1 = idx % p, idx // p
            s0 = (a0[:, None] + a0[None, :]) % p
            s1 = (a1[:, None] + a1[None, :]) % p
            add = s0 + p * s1
            # (a0 + a1 X)(b0 + b1 X) with X^2 = -c1 X - c0
            t0 = a0[:, None] * a0[None, :]
            t1 = a0[:, None] * a1[None, :] + a1[:, None] * a0[None, :]
            t2 = a1[:, None] * a1[None, :]
            m0 = (t0 - c0 * t2) % p
            m1 = (t1 - c1 * t2) % p
            mul = m0 + p * m1
        self.add_table = add.astype(np.int64)
        self.mul_table = mul.astype(np.int64)
        neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)])
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.neg_table = neg.astype(np.int64)
        self.inv_table = inv
        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.flags.writeable = False

    # -- vectorised arithmetic on encodings ---------------------------------

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError(f"inverse of 0 in GF({self.q})")
        return self.inv_table[a]

    def dagger(self, a):
        """0 -> 0, x -> 1/x.  Unlike ``inv`` this is total."""
        return self.inv_table[a]

    def power(self, a: int, e: int) -> int:
        result, base = 1, int(a)
        if e < 0:
            base, e = int(self.inv(base)), -e
        while e:
            if e & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            e >>= 1
        return result

    def embed(self, z):
        """Map integers into the prime subfield (``-1 -> p-1``)."""
        return np.asarray(z) % self.p if np.ndim(z) else int(z) % self.p

    def contains(self, a) -> bool:
        a = np.asarray(a)
        return bool(np.all((a >= 0) & (a < self.q)))

    def elements(self) -> range:
        return range(self.q)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def is_square(self, a: int) -> bool:
        a = int(a)
        if a == 0 or self.p == 2:
            return True
        return self.power(a, (self.q - 1) // 2) == 1

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus))

    def __reduce__(self):
        return (FieldCtx, (self.p, self.r, self.modulus or None))


def _smallest_irreducible(p: int) -> tuple[int, int]:
    for c1 in range(p):
        for c0 in range(1, p):
            if all((x * x + c1 * x + c0) % p for x in range(p)):
                return c0, c1
    raise FieldError(f"no irreducible quadratic over GF({p})")  # pragma: no cover


@lru_cache(maxsize=None)
def get_field(q: int) -> FieldCtx:
    """Shared context for GF(q), using the documented default modulus."""
    p, r = prime_power(q)
    return FieldCtx(p, r)


@dataclass(frozen=True)
class FieldElement:
    """A single element of a :class:`FieldCtx`, for scalar-level code."""

    ctx: FieldCtx
    value: int

    def __post_init__(self):
        v = int(self.value)
        if not 0 <= v < self.ctx.q:
            raise FieldError(f"{v} is not an element encoding of {self.ctx}")
        object.__setattr__(self, "value", v)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldMismatchError(f"{self.ctx} vs {other.ctx}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(self.ctx.embed(int(other)))
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, int(self.ctx.add_table[self.value, b]))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, int(self.ctx.sub(self.value, b)))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, int(self.ctx.sub(b, self.value)))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, int(self.ctx.mul_table[self.value, b]))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, int(self.ctx.neg_table[self.value]))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(self.ctx, int(self.ctx.inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.power(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}@GF({self.ctx.q})"


# Module-level operations on FieldElement values.


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.ctx != b.ctx:
        raise FieldMismatchError(f"{a.ctx} vs {b.ctx}")
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.ctx != b.ctx:
        raise FieldMismatchError(f"{a.ctx} vs {b.ctx}")
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.ctx, int(a.ctx.inv(a.value)))


def dagger(a: FieldElement) -> FieldElement:
    return FieldElement(a.ctx, int(a.ctx.dagger(a.value)))


def embed_integer(ctx: FieldCtx, z: int) -> FieldElement:
    return FieldElement(ctx, ctx.embed(int(z)))
