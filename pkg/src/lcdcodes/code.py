"""Linear codes over GF(q): duals, hulls, distance, weight distributions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from . import enumeration as enum
from .enumeration import EnumerationCapError
from .gfq import FieldCtx
from .matq import Matrix, _rref, conj_transpose, kernel_basis, matmul, rank

EXACT = "EXACT"
LOWER_BOUND = "LOWER_BOUND"
STRUCTURAL = "STRUCTURAL"
UNKNOWN = "UNKNOWN"


class CodeError(ValueError):
    pass


class LinearCode:
    """Row space of a generator matrix over GF(q).

    ``generator`` keeps the caller's rows (dropping dependent ones), ``basis``
    is the reduced row echelon form; two codes are equal iff their bases are.
    """

    def __init__(self, basis: Matrix, generator: Matrix | None = None):
        self.basis = basis
        self.generator = basis if generator is None else generator

    @classmethod
    def from_generator(cls, G: Matrix) -> "LinearCode":
        if G.field is None:
            raise CodeError("generator matrix must be over GF(q)")
        if not np.any(G.data):
            raise CodeError("zero generator matrix")
        red, piv = _rref(G.data, G.field)
        basis = Matrix(red[: len(piv)], G.field, cols=G.cols)
        if len(piv) == G.rows:
            gen = G
        else:
            _, rows = _rref(G.data.T, G.field)
            gen = G.submatrix(rows=rows)
        return cls(basis, gen)

    @property
    def field(self) -> FieldCtx:
        return self.basis.field

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.basis.cols

    @property
    def k(self) -> int:
        return self.basis.rows

    @cached_property
    def dual_basis(self) -> Matrix:
        if self.k == 0:
            return Matrix.identity(self.n, self.field)
        return kernel_basis(self.basis)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return rank(Matrix(np.vstack([self.basis.data, v]), self.field)) == self.k

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.field == other.field and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]_{self.q})"


def from_generator(G: Matrix) -> LinearCode:
    return LinearCode.from_generator(G)


def _from_rows(rows: Matrix, n: int, F: FieldCtx) -> LinearCode:
    if rows.rows == 0:
        return LinearCode(Matrix.zeros(0, n, F))
    red, piv = _rref(rows.data, F)
    return LinearCode(Matrix(red[: len(piv)], F, cols=n))


def dual(C: LinearCode) -> LinearCode:
    return _from_rows(C.dual_basis, C.n, C.field)


def _check_hermitian_field(C: LinearCode) -> None:
    if C.q not in (2, 3, 4):
        raise CodeError(f"the inverse dot product is an inner product only for q in {{2,3,4}}, not {C.q}")


def hermitian_dual(C: LinearCode) -> LinearCode:
    """Orthogonal complement under ``<u, v> = u . v*``."""
    _check_hermitian_field(C)
    if C.k == 0:
        return _from_rows(Matrix.identity(C.n, C.field), C.n, C.field)
    daggered = Matrix(C.field.dagger(C.basis.data), C.field)
    return _from_rows(kernel_basis(daggered), C.n, C.field)


def gram(C: LinearCode, hermitian: bool = False) -> Matrix:
    G = C.basis
    if hermitian:
        _check_hermitian_field(C)
        return matmul(G, conj_transpose(G))
    return matmul(G, G.T)


def hull_dimension(C: LinearCode, hermitian: bool = False) -> int:
    """``k - rank(G G^T)`` (or ``G G*``); zero exactly for LCD codes."""
    if C.k == 0:
        return 0
    return C.k - rank(gram(C, hermitian))


def hull_by_intersection(C: LinearCode, hermitian: bool = False) -> int:
    """``dim C + dim D - dim(C + D)`` for D the (Hermitian) dual."""
    D = hermitian_dual(C) if hermitian else dual(C)
    both = Matrix(np.vstack([C.basis.data, D.basis.data]), C.field, cols=C.n)
    return C.k + D.k - rank(both)


def is_lcd(C: LinearCode, hermitian: bool = False) -> bool:
    return hull_dimension(C, hermitian) == 0


def is_self_orthogonal(C: LinearCode) -> bool:
    return C.k == 0 or not np.any(gram(C).data)


def is_self_dual(C: LinearCode) -> bool:
    return 2 * C.k == C.n and is_self_orthogonal(C)


def same_span(A: Matrix, B: Matrix) -> bool:
    F = A.field
    ra, pa = _rref(A.data, F)
    rb, pb = _rref(B.data, F)
    return pa == pb and np.array_equal(ra[: len(pa)], rb[: len(pb)])


# weights and distance


def weight_distribution(C: LinearCode, cap: int | None = None) -> list[int]:
    return enum.weight_histogram(C.basis.data, C.field, cap)


@dataclass(frozen=True)
class DistanceResult:
    d: int
    status: str
    best_found: int | None = None
    method: str = ""

    @property
    def exact(self) -> bool:
        return self.status == EXACT


def min_distance(
    C: LinearCode, cap: int | None = None, max_weight: int | None = None
) -> DistanceResult:
    """Minimum distance, certified when possible.

    Small codes are scanned in full; otherwise information sets are tried
    within the cap, then full enumeration if the code fits under the cap.
    An uncertified result reports the proven lower bound as ``d``.
    """
    if C.k == 0:
        raise CodeError("minimum distance of the zero code is undefined")
    cap = enum.default_cap() if cap is None else cap
    size = C.q**C.k
    if size <= enum.FULL_SCAN_LIMIT:
        wd = weight_distribution(C, cap=max(cap, size))
        d = next(i for i, w in enumerate(wd) if i > 0 and w)
        return DistanceResult(d, EXACT, d, "full enumeration")
    res = enum.information_set_distance(C.basis.data, C.field, cap, max_weight)
    if res.certified:
        return DistanceResult(res.best, EXACT, res.best, f"information sets (level {res.level})")
    if size <= cap:
        wd = weight_distribution(C, cap=cap)
        d = next(i for i, w in enumerate(wd) if i > 0 and w)
        return DistanceResult(d, EXACT, d, "full enumeration")
    return DistanceResult(
        res.lower, LOWER_BOUND, res.best, f"information sets to level {res.level}, cap {cap}"
    )


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum(
        (-1) ** s * (q - 1) ** (j - s) * comb(i, s) * comb(n - i, j - s) for s in range(j + 1)
    )


def macwilliams(wd: list[int], q: int) -> list[int]:
    """Weight distribution of the dual code from that of the code."""
    n = len(wd) - 1
    size = sum(wd)
    out = []
    for j in range(n + 1):
        total = sum(a * krawtchouk(j, i, n, q) for i, a in enumerate(wd))
        if total % size:
            raise CodeError("MacWilliams transform is not integral; input is not a weight distribution")
        out.append(total // size)
    return out


def _structural_fsd(C: LinearCode) -> bool:
    G = C.generator
    n, k = C.n, C.k
    if 2 * k != n or G.rows != k:
        return False
    F = C.field
    if not np.array_equal(G.data[:, k:], np.eye(k, dtype=np.int64)):
        return False
    M = G.data[:, :k]
    D = dual(C)
    for alpha in range(1, F.q):
        cand = np.hstack([M, alpha * np.eye(k, dtype=np.int64)])
        if rank(Matrix(cand, F)) == k and same_span(Matrix(cand, F), D.basis):
            return True
    return False


def formally_self_dual_check(C: LinearCode, mode: str = EXACT, cap: int | None = None) -> bool:
    """STRUCTURAL: generator is ``[M | I]`` and ``[M | aI]`` spans the dual for some a != 0.
    EXACT: the code and its dual have equal weight distributions."""
    if mode == STRUCTURAL:
        return _structural_fsd(C)
    if mode != EXACT:
        raise ValueError(f"unknown mode {mode!r}")
    if 2 * C.k != C.n:
        return False
    return weight_distribution(C, cap) == weight_distribution(dual(C), cap)


def fsd_status(C: LinearCode, cap: int | None = None) -> tuple[bool | None, str]:
    if 2 * C.k != C.n:
        return False, EXACT
    try:
        return formally_self_dual_check(C, EXACT, cap), EXACT
    except EnumerationCapError:
        pass
    if _structural_fsd(C):
        return True, STRUCTURAL
    return None, UNKNOWN


# reports


def _yn(flag: bool | None) -> str:
    return "?" if flag is None else ("yes" if flag else "no")


@dataclass
class CodeReport:
    n: int
    k: int
    q: int
    d: DistanceResult | None
    hull: int
    lcd: bool
    self_dual: bool
    self_orthogonal: bool
    fsd: bool | None
    fsd_status: str
    hermitian: bool = False
    wdist: list[int] | None = field(default=None)

    def to_text(self) -> str:
        d = "-" if self.d is None else f"{self.d.d}[{self.d.status}]"
        line = (
            f"{self.n} {self.k} {d} {self.q} {self.hull} lcd={_yn(self.lcd)} "
            f"fsd={_yn(self.fsd)}[{self.fsd_status}]"
        )
        if self.self_dual:
            line += " self_dual=yes"
        if self.wdist is not None:
            line += "\nwdist: " + " ".join(str(w) for w in self.wdist)
        return line + "\n"


def report(
    C: LinearCode,
    *,
    distance: bool = True,
    wdist: bool = False,
    hermitian: bool = False,
    cap: int | None = None,
    max_weight: int | None = None,
) -> CodeReport:
    hull = hull_dimension(C, hermitian)
    if hermitian:
        sd = 2 * C.k == C.n and hull == C.k
        so = hull == C.k
    else:
        so = is_self_orthogonal(C)
        sd = so and 2 * C.k == C.n
    fsd, fstat = fsd_status(C, cap)
    return CodeReport(
        n=C.n,
        k=C.k,
        q=C.q,
        d=min_distance(C, cap, max_weight) if distance and C.k else None,
        hull=hull,
        lcd=hull == 0,
        self_dual=sd,
        self_orthogonal=so,
        fsd=fsd,
        fsd_status=fstat,
        hermitian=hermitian,
        wdist=weight_distribution(C, cap) if wdist else None,
    )
