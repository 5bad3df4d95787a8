"""Dense exact matrices over the integers and over GF(q).

A :class:`Matrix` is an immutable 2-D int64 array plus a domain tag: ``field is
None`` means an integer matrix, otherwise entries are canonical encodings in
the given :class:`~lcdcodes.gfq.FieldCtx`.

Integer determinants and ranks use fraction-free (Bareiss) elimination on
Python ints, so they never overflow.  Everything over GF(q) is Gaussian
elimination on the field tables.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .gfq import FieldCtx, get_field


class MatrixError(ValueError):
    pass


class ShapeError(MatrixError):
    pass


class DomainError(MatrixError):
    pass


class SingularMatrixError(MatrixError):
    pass


class Matrix:
    __slots__ = ("data", "field")

    def __init__(self, entries, field: FieldCtx | None = None, *, cols: int | None = None):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, cols or 0)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-D array, got shape {arr.shape}")
        if field is not None and not field.contains(arr):
            raise DomainError(f"entries out of range for {field}")
        arr.setflags(write=False)
        self.data = arr
        self.field = field

    # construction helpers

    @classmethod
    def identity(cls, n: int, field: FieldCtx | None = None) -> "Matrix":
        return cls(np.eye(n, dtype=np.int64), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldCtx | None = None) -> "Matrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def ones(cls, rows: int, cols: int | None = None, field: FieldCtx | None = None) -> "Matrix":
        return cls(np.ones((rows, rows if cols is None else cols), dtype=np.int64), field)

    # basic properties

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
    def domain(self) -> str:
        return "Z" if self.field is None else f"F{self.field.q}"

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __getitem__(self, key):
        out = self.data[key]
        if isinstance(out, np.ndarray):
            return out
        return int(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.domain})"

    # algebra

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_domain(self, other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        if self.field is None:
            return Matrix(self.data + other.data)
        return Matrix(self.field.add(self.data, other.data), self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_domain(self, other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} - {other.shape}")
        if self.field is None:
            return Matrix(self.data - other.data)
        return Matrix(self.field.sub(self.data, other.data), self.field)

    def __neg__(self) -> "Matrix":
        if self.field is None:
            return Matrix(-self.data)
        return Matrix(self.field.neg(self.data), self.field)

    def scale(self, c: int) -> "Matrix":
        if self.field is None:
            return Matrix(int(c) * self.data)
        return Matrix(self.field.mul(int(c), self.data), self.field)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.data.T, self.field)

    @property
    def star(self) -> "Matrix":
        return conj_transpose(self)

    def to_field(self, field: FieldCtx | int) -> "Matrix":
        """Reduce an integer matrix into GF(q) (prime-subfield embedding)."""
        if isinstance(field, int):
            field = get_field(field)
        if self.field is not None:
            if self.field == field:
                return self
            raise DomainError(f"cannot move {self.domain} matrix to {field}")
        return Matrix(self.data % field.p, field)

    def hstack(self, *others: "Matrix") -> "Matrix":
        for o in others:
            _same_domain(self, o)
        return Matrix(np.hstack([self.data] + [o.data for o in others]), self.field)

    def vstack(self, *others: "Matrix") -> "Matrix":
        for o in others:
            _same_domain(self, o)
        return Matrix(np.vstack([self.data] + [o.data for o in others]), self.field)

    def submatrix(self, rows=None, cols=None) -> "Matrix":
        d = self.data
        if rows is not None:
            d = d[list(rows)]
        if cols is not None:
            d = d[:, list(cols)]
        return Matrix(d, self.field, cols=len(cols) if cols is not None else self.cols)


def _same_domain(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise DomainError(f"domain mismatch: {a.domain} vs {b.domain}")


# products


def _gf_matmul(a: np.ndarray, b: np.ndarray, F: FieldCtx) -> np.ndarray:
    p = F.p
    if F.r == 1:
        return (a @ b) % p
    c0, c1 = F.modulus
    a0, a1 = a % p, a // p
    b0, b1 = b % p, b // p
    t0 = a0 @ b0
    t1 = a0 @ b1 + a1 @ b0
    t2 = a1 @ b1
    return (t0 - c0 * t2) % p + p * ((t1 - c1 * t2) % p)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    _same_domain(A, B)
    if A.cols != B.rows:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    if A.field is None:
        return Matrix(A.data @ B.data)
    return Matrix(_gf_matmul(A.data, B.data, A.field), A.field)


def gf_vecmat(v: np.ndarray, A: Matrix) -> np.ndarray:
    """Row vector(s) times a GF(q) matrix, on raw encodings."""
    return _gf_matmul(np.atleast_2d(v), A.data, A.field)


def conj_transpose(M: Matrix) -> Matrix:
    """``M*``: transpose with every entry replaced by its dagger (0 stays 0, x -> 1/x)."""
    if M.field is None:
        if not np.all(np.isin(M.data, (-1, 0, 1))):
            raise DomainError("conjugate transpose of an integer matrix needs entries in {0, +-1}")
        return M.T
    return Matrix(M.field.dagger(M.data.T), M.field)


# elimination over GF(q)


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over GF(q) and the pivot columns."""
    if M.field is None:
        raise DomainError("rref is defined here only over GF(q)")
    a, piv = _rref(M.data, M.field)
    return Matrix(a, M.field, cols=M.cols), piv


def _rref(data: np.ndarray, F: FieldCtx, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    a = np.array(data, dtype=np.int64)
    rows, cols = a.shape
    limit = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        if a[r, c] != 1:
            a[r] = F.mul(F.inv_table[a[r, c]], a[r])
        f = a[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] = F.sub(a[hit], F.mul(f[hit][:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def _bareiss_rank(data: np.ndarray) -> int:
    a = [list(map(int, row)) for row in data]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r, prev = 0, 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, rows):
            ai = a[i]
            aic = ai[c]
            a[i] = [(ai[j] * pr[c] - aic * pr[j]) // prev for j in range(cols)]
        prev = pr[c]
        r += 1
    return r


def rank(M: Matrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.field is None:
        return _bareiss_rank(M.data)
    return len(_rref(M.data, M.field)[1])


def det(M: Matrix):
    """Exact determinant: a Python int over Z, a canonical encoding over GF(q)."""
    if not M.is_square:
        raise ShapeError(f"determinant of non-square {M.shape} matrix")
    n = M.rows
    if n == 0:
        return 1
    if M.field is None:
        return _bareiss_det(M.data)
    F = M.field
    a = np.array(M.data)
    result = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            result = int(F.neg_table[result])
        pv = int(a[c, c])
        result = int(F.mul_table[result, pv])
        rest = a[c + 1 :, c]
        hit = np.flatnonzero(rest) + c + 1
        if hit.size:
            f = F.mul(a[hit, c], F.inv_table[pv])
            a[hit] = F.sub(a[hit], F.mul(f[:, None], a[c][None, :]))
    return result


def _bareiss_det(data: np.ndarray) -> int:
    a = np.array(data.tolist(), dtype=object)
    n = a.shape[0]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k, k] == 0:
            nz = [i for i in range(k + 1, n) if a[i, k] != 0]
            if not nz:
                return 0
            a[[k, nz[0]]] = a[[nz[0], k]]
            sign = -sign
        sub = a[k + 1 :, k + 1 :] * a[k, k] - np.outer(a[k + 1 :, k], a[k, k + 1 :])
        a[k + 1 :, k + 1 :] = sub // prev
        prev = a[k, k]
    return sign * int(a[n - 1, n - 1])


def det_rank_one_shift(a, x, n: int, field: FieldCtx | None = None):
    """``det(a*J_n + x*I_n) = (x + n*a) * x**(n-1)``.

    Integers when ``field`` is None, canonical encodings otherwise.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if field is None:
        return (x + n * a) * x ** (n - 1)
    first = field.add(int(x), field.mul(field.embed(n), int(a)))
    return int(field.mul(int(first), field.power(int(x), n - 1)))


def inverse(M: Matrix) -> Matrix:
    if M.field is None:
        raise DomainError("integer inverse is not closed; use rational_inverse")
    if not M.is_square:
        raise ShapeError(f"inverse of non-square {M.shape} matrix")
    n = M.rows
    aug = np.hstack([M.data, np.eye(n, dtype=np.int64)])
    red, piv = _rref(aug, M.field, ncols=n)
    if len(piv) < n:
        raise SingularMatrixError("matrix is singular")
    return Matrix(red[:, n:], M.field)


def rational_inverse(M: Matrix) -> list[list[Fraction]]:
    """Inverse of a nonsingular integer matrix with exact rational entries."""
    if M.field is not None:
        raise DomainError("rational_inverse expects an integer matrix")
    n = M.rows
    if not M.is_square:
        raise ShapeError(f"inverse of non-square {M.shape} matrix")
    a = [[Fraction(int(v)) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M.data)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[c])]
    return [row[n:] for row in a]


def kernel_basis(M: Matrix) -> Matrix:
    """Basis (as rows) of the right null space ``{x : M x = 0}`` over GF(q)."""
    if M.field is None:
        raise DomainError("kernel_basis is defined here only over GF(q)")
    F = M.field
    red, piv = _rref(M.data, F)
    free = [c for c in range(M.cols) if c not in set(piv)]
    basis = np.zeros((len(free), M.cols), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(piv):
            basis[row, pc] = F.neg_table[red[i, f]]
    return Matrix(basis, F, cols=M.cols)


@dataclass(frozen=True)
class LinSolveResult:
    solution: np.ndarray | None
    free_count: int

    @property
    def consistent(self) -> bool:
        return self.solution is not None


def solve(A: Matrix, b) -> LinSolveResult:
    """Solve ``A x = b`` over GF(q); one particular solution plus the free-variable count."""
    if A.field is None:
        raise DomainError("solve is defined here only over GF(q)")
    F = A.field
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if b.size != A.rows:
        raise ShapeError(f"right-hand side of length {b.size} for {A.shape} system")
    aug = np.hstack([A.data, b[:, None]])
    red, piv = _rref(aug, F)
    if A.cols in piv:
        return LinSolveResult(None, A.cols - (len(piv) - 1))
    x = np.zeros(A.cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = red[i, A.cols]
    return LinSolveResult(x, A.cols - len(piv))


# text format


def parse_domain(token: str) -> FieldCtx | None:
    if token == "Z":
        return None
    if token.startswith("F") and token[1:].isdigit():
        return get_field(int(token[1:]))
    raise MatrixError(f"unknown domain token {token!r}")


def _content_lines(text: str):
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            yield s


def parse_matrix(text: str) -> Matrix:
    lines = list(_content_lines(text))
    if not lines:
        raise MatrixError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3:
        raise MatrixError(f"bad header {lines[0]!r}; expected 'rows cols domain'")
    rows, cols = int(head[0]), int(head[1])
    field = parse_domain(head[2])
    tokens = [tok for line in lines[1:] for tok in line.split()]
    if len(tokens) != rows * cols:
        raise MatrixError(f"expected {rows * cols} entries, found {len(tokens)}")
    values = np.array([int(t) for t in tokens], dtype=np.int64).reshape(rows, cols)
    if field is not None and not field.contains(values):
        raise MatrixError(f"entries out of range 0..{field.q - 1}")
    return Matrix(values, field, cols=cols)


def format_matrix(M: Matrix) -> str:
    out = io.StringIO()
    out.write(f"{M.rows} {M.cols} {M.domain}\n")
    for row in M.data:
        out.write(" ".join(str(int(v)) for v in row) + "\n")
    return out.getvalue()


def read_matrix(path: str | os.PathLike) -> Matrix:
    return parse_matrix(Path(path).read_text())


def write_matrix(M: Matrix, path: str | os.PathLike) -> None:
    Path(path).write_text(format_matrix(M))
