"""Ingredient matrices: weighing, Paley, conference, designs, F_q-weighing.

Weighing matrices are validated over the integers before anything is reduced
modulo p, because ``W W^T = m I`` is an integer identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .gfq import FieldCtx, get_field, prime_power
from .matq import Matrix, conj_transpose, matmul


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class WeighingMatrix:
    W: Matrix
    n: int
    m: int
    is_skew: bool
    is_hadamard: bool
    is_skew_type_hadamard: bool
    is_conference: bool

    @property
    def order(self) -> int:
        return self.n


@dataclass(frozen=True)
class DesignIncidence:
    B: Matrix
    r: int
    lam: int

    @property
    def points(self) -> int:
        return self.B.rows

    @property
    def blocks(self) -> int:
        return self.B.cols


@dataclass(frozen=True)
class FqWeighingMatrix:
    W: Matrix
    n: int
    m: int

    @property
    def field(self) -> FieldCtx:
        return self.W.field


# Paley constructions


def _odd_field(pi: int) -> FieldCtx:
    p, r = prime_power(pi)
    if p == 2:
        raise ValidationError(f"quadratic character needs an odd order, got {pi}")
    if r > 2:
        raise ValidationError(f"GF({pi}) has degree {r}; FieldCtx covers prime or prime-square orders")
    return get_field(pi)


def quadratic_character(x: int, field: FieldCtx | int) -> int:
    """0 at 0, 1 on nonzero squares, -1 otherwise."""
    F = _odd_field(field) if isinstance(field, int) else field
    if F.p == 2:
        raise ValidationError("quadratic character needs an odd order")
    x = int(x)
    if x == 0:
        return 0
    return 1 if F.power(x, (F.q - 1) // 2) == 1 else -1


def character_table(field: FieldCtx) -> np.ndarray:
    return np.array([quadratic_character(x, field) for x in range(field.q)], dtype=np.int64)


# Orders like 27 need degree-3 extensions, which only the Paley character uses.
# Elements are digit vectors (c0, ..., c_{r-1}) with canonical code sum c_i p^i.


def _polymod(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic ``f`` (coefficient lists, low degree first)."""
    a = list(a)
    d = len(f) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % p
    return [c % p for c in a[:d]] + [0] * max(0, d - len(a))


def _monic_polys(p: int, degree: int):
    for low in product(range(p), repeat=degree):
        yield list(low) + [1]


def _irreducible(f: list[int], p: int) -> bool:
    r = len(f) - 1
    for d in range(1, r // 2 + 1):
        for g in _monic_polys(p, d):
            if not any(_polymod(f, g, p)):
                return False
    return True


def _digits(x: int, p: int, r: int) -> list[int]:
    return [(x // p**i) % p for i in range(r)]


def _prime_power_characters(p: int, r: int) -> tuple[np.ndarray, np.ndarray]:
    """Character table and subtraction table of GF(p^r) for any r."""
    f = next(g for g in _monic_polys(p, r) if _irreducible(g, p))
    q = p**r
    squares = set()
    for y in range(1, q):
        d = _digits(y, p, r)
        prod = [0] * (2 * r - 1)
        for i, a in enumerate(d):
            for j, b in enumerate(d):
                prod[i + j] += a * b
        sq = _polymod(prod, f, p)
        squares.add(sum(c * p**i for i, c in enumerate(sq)))
    chi = np.array([0] + [1 if x in squares else -1 for x in range(1, q)], dtype=np.int64)
    digits = np.array([_digits(x, p, r) for x in range(q)], dtype=np.int64)
    diff = (digits[None, :, :] - digits[:, None, :]) % p
    sub = diff @ (p ** np.arange(r, dtype=np.int64))
    return chi, sub


def jacobsthal(pi: int) -> np.ndarray:
    """``A = [chi(y - x)]`` indexed by field elements in canonical encoding order."""
    p, r = prime_power(pi)
    if p == 2:
        raise ValidationError(f"quadratic character needs an odd order, got {pi}")
    if r <= 2:
        F = get_field(pi)
        chi = character_table(F)
        idx = np.arange(F.q)
        return chi[F.sub(idx[None, :], idx[:, None])]
    chi, sub = _prime_power_characters(p, r)
    return chi[sub]


def paley_type_I(pi: int) -> WeighingMatrix:
    """Skew-type Hadamard matrix of order pi+1 for pi = 3 (mod 4)."""
    if pi % 4 != 3:
        raise ValidationError(f"Paley type I needs pi = 3 mod 4, got {pi}")
    A = jacobsthal(pi)
    H = np.empty((pi + 1, pi + 1), dtype=np.int64)
    H[0, 0] = 1
    H[0, 1:] = -1
    H[1:, 0] = 1
    H[1:, 1:] = -A + np.eye(pi, dtype=np.int64)
    return validate_weighing(Matrix(H), expect_m=pi + 1)


def paley_conference(pi: int) -> WeighingMatrix:
    """Symmetric conference matrix W(pi+1, pi) with zero diagonal, pi = 1 (mod 4).

    Border: first row ``(0, 1, ..., 1)``, first column all ones under the 0 corner.
    """
    if pi % 4 != 1:
        raise ValidationError(f"conference construction needs pi = 1 mod 4, got {pi}")
    A = jacobsthal(pi)
    C = np.zeros((pi + 1, pi + 1), dtype=np.int64)
    C[0, 1:] = 1
    C[1:, 0] = 1
    C[1:, 1:] = A
    return validate_weighing(Matrix(C), expect_m=pi)


def paley_matrix(pi: int) -> WeighingMatrix:
    """Order pi+1 weighing matrix: type I Hadamard or conference, by residue of pi."""
    return paley_type_I(pi) if pi % 4 == 3 else paley_conference(pi)


def skew_core(H: WeighingMatrix) -> WeighingMatrix:
    """``H - I`` for a skew-type Hadamard H: a skew W(n, n-1)."""
    if not H.is_skew_type_hadamard:
        raise ValidationError("skew core needs a skew-type Hadamard matrix")
    return validate_weighing(H.W - Matrix.identity(H.n), expect_m=H.n - 1)


# validators


def validate_weighing(W: Matrix, expect_m: int | None = None) -> WeighingMatrix:
    if W.field is not None:
        raise ValidationError("weighing matrices are validated over Z")
    if not W.is_square:
        raise ValidationError(f"weighing matrix must be square, got {W.shape}")
    d = W.data
    n = W.rows
    if not np.all(np.isin(d, (-1, 0, 1))):
        i, j = np.argwhere(~np.isin(d, (-1, 0, 1)))[0]
        raise ValidationError(f"entry ({i}, {j}) = {d[i, j]} is not in {{0, 1, -1}}")
    counts_r = np.count_nonzero(d, axis=1)
    m = int(counts_r[0]) if n else 0
    if expect_m is not None and m != expect_m:
        raise ValidationError(f"row 0 has weight {m}, expected {expect_m}")
    gram = d @ d.T
    target = m * np.eye(n, dtype=np.int64)
    bad = np.argwhere(gram != target)
    if bad.size:
        i, j = bad[0]
        if i == j:
            raise ValidationError(f"row {i} has weight {gram[i, i]}, expected {m}")
        raise ValidationError(f"rows {i} and {j} are not orthogonal (inner product {gram[i, j]})")
    counts_c = np.count_nonzero(d, axis=0)
    if np.any(counts_c != m):
        j = int(np.flatnonzero(counts_c != m)[0])
        raise ValidationError(f"column {j} has {counts_c[j]} nonzero entries, expected {m}")
    is_skew = bool(np.array_equal(d.T, -d))
    is_hadamard = m == n
    is_skew_had = is_hadamard and bool(np.array_equal(d + d.T, 2 * np.eye(n, dtype=np.int64)))
    is_conf = m == n - 1 and bool(np.all(np.diag(d) == 0))
    return WeighingMatrix(W, n, m, is_skew, is_hadamard, is_skew_had, is_conf)


def validate_design(B: Matrix, r: int, lam: int) -> DesignIncidence:
    if B.field is not None:
        raise ValidationError("incidence matrices are validated over Z")
    d = B.data
    if not np.all(np.isin(d, (0, 1))):
        raise ValidationError("incidence matrix must be 0/1")
    sums = d.sum(axis=1)
    if np.any(sums != r):
        i = int(np.flatnonzero(sums != r)[0])
        raise ValidationError(f"point {i} lies on {sums[i]} blocks, expected r = {r}")
    v = B.rows
    gram = d @ d.T
    target = (r - lam) * np.eye(v, dtype=np.int64) + lam
    bad = np.argwhere(gram != target)
    if bad.size:
        i, j = bad[0]
        raise ValidationError(
            f"points {i} and {j}: B B^T entry {gram[i, j]}, expected {target[i, j]}"
        )
    return DesignIncidence(B, r, lam)


def row_subset_design(D: DesignIncidence, t: int) -> DesignIncidence:
    """First ``t`` points of a design; the Gram identity is re-verified."""
    if not 1 <= t <= D.points:
        raise ValidationError(f"t = {t} outside 1..{D.points}")
    return validate_design(D.B.submatrix(rows=range(t)), D.r, D.lam)


def identity_design(n: int) -> DesignIncidence:
    return DesignIncidence(Matrix.identity(n), 1, 0)


def validate_fq_weighing(W: Matrix, expect_m: int | None = None) -> FqWeighingMatrix:
    F = W.field
    if F is None or F.q not in (2, 3, 4):
        raise ValidationError("F_q-weighing matrices need q in {2, 3, 4}")
    if not W.is_square:
        raise ValidationError(f"weighing matrix must be square, got {W.shape}")
    d = W.data
    n = W.rows
    counts_r = np.count_nonzero(d, axis=1)
    counts_c = np.count_nonzero(d, axis=0)
    m = int(counts_r[0]) if n else 0
    if expect_m is not None and m != expect_m:
        raise ValidationError(f"row 0 has {m} nonzero entries, expected {expect_m}")
    if np.any(counts_r != m) or np.any(counts_c != m):
        raise ValidationError("rows and columns do not all have the same number of nonzero entries")
    gram = matmul(W, conj_transpose(W)).data
    target = (m % F.p) * np.eye(n, dtype=np.int64)
    bad = np.argwhere(gram != target)
    if bad.size:
        i, j = bad[0]
        raise ValidationError(f"W W* entry ({i}, {j}) = {gram[i, j]}, expected {target[i, j]}")
    return FqWeighingMatrix(W, n, m)


def search_fq_weighing(n: int, m: int, q: int, *, limit: int | None = None) -> list[Matrix]:
    """Exhaustive backtracking search for W(n, m; F_q) matrices.

    Rows are chosen in lexicographic order of their encodings, so each hit is
    found once per row ordering.  ``limit`` stops after that many hits.
    """
    F = get_field(q)
    if q not in (2, 3, 4):
        raise ValidationError("F_q-weighing matrices need q in {2, 3, 4}")
    cands = np.array(
        [v for v in product(range(q), repeat=n) if sum(x != 0 for x in v) == m],
        dtype=np.int64,
    )
    if cands.size == 0:
        return []
    dag = F.dagger(cands)
    # inner products <u, v*> for all candidate pairs
    prods = F.mul(cands[:, None, :], dag[None, :, :])
    ip = np.zeros(prods.shape[:2], dtype=np.int64)
    for k in range(n):
        ip = F.add(ip, prods[:, :, k])
    selfok = np.diagonal(ip) == m % F.p
    ortho = ip == 0
    hits: list[Matrix] = []

    def extend(chosen: list[int], allowed: np.ndarray) -> bool:
        if len(chosen) == n:
            W = Matrix(cands[chosen], F)
            try:
                validate_fq_weighing(W, m)
            except ValidationError:
                return False
            hits.append(W)
            return limit is not None and len(hits) >= limit
        start = chosen[-1] + 1 if chosen else 0
        for c in np.flatnonzero(allowed[start:]) + start:
            if extend(chosen + [int(c)], allowed & ortho[c]):
                return True
        return False

    extend([], selfok.copy())
    return hits
