"""Generator matrices ``[W | B]``, ``[W + aI | B]``, ``[R | B]`` and their LCD conditions.

Each builder re-validates its ingredient, assembles G over GF(q), evaluates
the determinant factors of ``G G^T`` (or ``G G*``) in GF(q) and, when B is the
identity, also forms the companion matrix ``G_bar = [M | beta I]`` whose rows
are orthogonal to those of G.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .construct import (
    DesignIncidence,
    FqWeighingMatrix,
    WeighingMatrix,
    validate_design,
    validate_weighing,
)
from .gfq import FieldCtx, FieldElement, get_field
from .matq import Matrix, conj_transpose, det, matmul, rank
from .orbit import OrbitStructure

PLAIN = "PLAIN"
SKEW = "SKEW"
SKEW_HADAMARD = "SKEW_HADAMARD"
ORBIT = "ORBIT"
ORBIT_SKEW = "ORBIT_SKEW"
HERMITIAN = "HERMITIAN"

LCD = "LCD"
SELF_DUAL = "SELF_DUAL"
UNDETERMINED = "UNDETERMINED"


class BuildError(ValueError):
    pass


@dataclass(frozen=True)
class ConditionFactor:
    label: str
    expression: str
    integer: int | None
    value: int
    exponent: int = 1

    @property
    def nonzero(self) -> bool:
        return self.value != 0

    def text(self) -> str:
        lhs = f"{self.expression}={self.integer}" if self.integer is not None else self.expression
        rel = "≠0" if self.nonzero else "=0"
        power = f" (power {self.exponent})" if self.exponent != 1 else ""
        return f"{self.label}: {lhs}≡{self.value}{rel}{power}"


@dataclass(frozen=True)
class BuildResult:
    variant: str
    G: Matrix
    G_bar: Matrix | None
    predicted: str
    factors: tuple[ConditionFactor, ...]
    rank: int
    gram_det: int
    hermitian: bool = False
    alpha: int | None = None
    beta: int | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def field(self) -> FieldCtx:
        return self.G.field

    @property
    def q(self) -> int:
        return self.G.field.q

    @property
    def n(self) -> int:
        return self.G.rows

    @property
    def length(self) -> int:
        return self.G.cols

    @property
    def dual_rank(self) -> int | None:
        return None if self.G_bar is None else rank(self.G_bar)

    @property
    def dual_spans(self) -> bool:
        """Whether ``G_bar`` has full rank and so spans the whole (Hermitian) dual."""
        return self.G_bar is not None and self.dual_rank == self.G.cols - self.rank

    def trace(self) -> str:
        lines = [f"variant {self.variant.lower().replace('_', '-')} over GF({self.q})"]
        if self.alpha is not None:
            lines.append(f"alpha={self.alpha}")
        if self.beta is not None:
            lines.append(f"beta={self.beta}")
        lines.extend(f.text() for f in self.factors)
        kind = "det(GG*)" if self.hermitian else "det(GG^T)"
        lines.append(f"{kind}={self.gram_det}")
        lines.extend(self.notes)
        lines.append(f"[{self.length},{self.rank}]_{self.q} {self.predicted}")
        return "\n".join(lines) + "\n"


def _field(q: int | FieldCtx) -> FieldCtx:
    return q if isinstance(q, FieldCtx) else get_field(q)


def _factor(F: FieldCtx, label: str, expr: str, fn, alpha: int | None, exponent: int = 1):
    """Evaluate ``fn(a)`` in GF(q); also as an integer when alpha lies in the prime field."""
    a_field = FieldElement(F, alpha or 0)
    value = fn(a_field)
    value = value.value if isinstance(value, FieldElement) else int(F.embed(value))
    integer = None
    if alpha is None or alpha < F.p:
        integer = int(fn(alpha or 0))
    return ConditionFactor(label, expr, integer, value, exponent)


def _design(B: DesignIncidence | Matrix | None, n: int) -> DesignIncidence | None:
    if B is None:
        return None
    if isinstance(B, Matrix):
        raise BuildError("pass the design as a validated DesignIncidence")
    B = validate_design(B.B, B.r, B.lam)
    if B.points != n:
        raise BuildError(f"design has {B.points} points but the matrix has {n} rows")
    return B


def _design_factors(F, n, first_label, first_expr, first_fn, second_label, second_expr, second_fn, alpha):
    f1 = _factor(F, first_label, first_expr, first_fn, alpha)
    f2 = _factor(F, second_label, second_expr, second_fn, alpha, exponent=n - 1)
    return (f1, f2) if n > 1 else (f1,)


def _finish(
    variant: str,
    left: Matrix,
    B: DesignIncidence | None,
    factors: tuple[ConditionFactor, ...],
    beta: int | None,
    alpha: int | None,
    hermitian: bool = False,
) -> BuildResult:
    F = left.field
    n = left.rows
    right = Matrix.identity(n, F) if B is None else B.B.to_field(F)
    G = left.hstack(right)
    gram = matmul(G, conj_transpose(G)) if hermitian else matmul(G, G.T)
    gdet = det(gram)
    rk = rank(G)
    notes: list[str] = []
    if all(f.nonzero for f in factors):
        predicted = LCD
    elif B is None:
        predicted = SELF_DUAL
    else:
        predicted = UNDETERMINED
    if predicted == LCD and rk != n:
        notes.append(f"rank {rk} < {n}: ingredient violates expectations")
        predicted = UNDETERMINED
    G_bar = None
    if B is None and beta is not None:
        G_bar = left.hstack(Matrix.identity(n, F).scale(beta))
        if rank(G_bar) < n:
            notes.append(f"G_bar has rank {rank(G_bar)} < {n}; it does not span the dual")
    return BuildResult(
        variant, G, G_bar, predicted, factors, rk, int(gdet), hermitian, alpha, beta, tuple(notes)
    )


def _weighing(W: WeighingMatrix | Matrix) -> WeighingMatrix:
    M = W.W if isinstance(W, WeighingMatrix) else W
    return validate_weighing(M)


def build_plain(W: WeighingMatrix | Matrix, B: DesignIncidence | None, q: int | FieldCtx) -> BuildResult:
    """``G = [W | B]``; with B the identity, ``G_bar = [W | -m I]``."""
    F = _field(q)
    W = _weighing(W)
    n, m = W.n, W.m
    B = _design(B, n)
    left = W.W.to_field(F)
    if B is None:
        factors = (_factor(F, "m+1", f"{m}+1", lambda a: m + 1, None),)
        beta = int(F.embed(-m))
    else:
        r, lam = B.r, B.lam
        factors = _design_factors(
            F, n,
            "r+(n-1)λ+m", f"{r}+{n - 1}*{lam}+{m}", lambda a: r + (n - 1) * lam + m,
            "r-λ+m", f"{r}-{lam}+{m}", lambda a: r - lam + m,
            None,
        )
        beta = None
    return _finish(PLAIN, left, B, factors, beta, None)


def _shift(left: Matrix, alpha: int) -> Matrix:
    F = left.field
    return left + Matrix.identity(left.rows, F).scale(alpha)


def build_skew(W: WeighingMatrix | Matrix, B: DesignIncidence | None, alpha: int, q: int | FieldCtx) -> BuildResult:
    """``G = [W + aI | B]`` for a skew-weighing W."""
    F = _field(q)
    W = _weighing(W)
    if not W.is_skew:
        raise BuildError("build_skew needs a skew-weighing matrix (W^T = -W)")
    return _skew_common(SKEW, W.W, W.n, W.m, B, alpha, F)


def _skew_common(variant, Wmat: Matrix, n: int, m: int, B, alpha: int, F: FieldCtx) -> BuildResult:
    alpha = int(alpha)
    if not 0 <= alpha < F.q:
        raise BuildError(f"alpha={alpha} is not an element of GF({F.q})")
    B = _design(B, n)
    left = _shift(Wmat.to_field(F), alpha)
    a_txt = str(alpha)
    if B is None:
        factors = (_factor(F, "m+α²+1", f"{m}+{a_txt}^2+1", lambda a: m + a * a + 1, alpha),)
        beta = _factor(F, "", "", lambda a: -(a * a + m), alpha).value
    else:
        r, lam = B.r, B.lam
        factors = _design_factors(
            F, n,
            "m+α²+r+(n-1)λ", f"{m}+{a_txt}^2+{r}+{n - 1}*{lam}", lambda a: m + a * a + r + (n - 1) * lam,
            "m+α²+r-λ", f"{m}+{a_txt}^2+{r}-{lam}", lambda a: m + a * a + r - lam,
            alpha,
        )
        beta = None
    return _finish(variant, left, B, factors, beta, alpha)


def build_skew_hadamard(H: WeighingMatrix | Matrix, B: DesignIncidence | None, alpha: int, q: int | FieldCtx) -> BuildResult:
    """``G = [H + aI | B]`` for a skew-type Hadamard H (``H + H^T = 2I``)."""
    F = _field(q)
    H = _weighing(H)
    if not H.is_skew_type_hadamard:
        raise BuildError("build_skew_hadamard needs H + H^T = 2I")
    n = H.n
    alpha = int(alpha)
    if not 0 <= alpha < F.q:
        raise BuildError(f"alpha={alpha} is not an element of GF({F.q})")
    B = _design(B, n)
    left = _shift(H.W.to_field(F), alpha)
    if B is None:
        factors = (_factor(F, "n+(α+1)²", f"{n}+({alpha}+1)^2", lambda a: n + (a + 1) ** 2, alpha),)
        beta = _factor(F, "", "", lambda a: -((a + 1) ** 2 + n - 1), alpha).value
    else:
        r, lam = B.r, B.lam
        factors = _design_factors(
            F, n,
            "n+α²+2α+r+(n-1)λ", f"{n}+{alpha}^2+2*{alpha}+{r}+{n - 1}*{lam}",
            lambda a: n + a * a + 2 * a + r + (n - 1) * lam,
            "n+α²+2α+r-λ", f"{n}+{alpha}^2+2*{alpha}+{r}-{lam}",
            lambda a: n + a * a + 2 * a + r - lam,
            alpha,
        )
        beta = None
    return _finish(SKEW_HADAMARD, left, B, factors, beta, alpha)


def orthogonal_weight(R: Matrix) -> int:
    """The m with ``R R^T = m I`` over Z, or raise."""
    if R.field is not None or not R.is_square:
        raise BuildError("orbit matrix must be a square integer matrix")
    gram = R.data @ R.data.T
    m = int(gram[0, 0]) if R.rows else 0
    if not np.array_equal(gram, m * np.eye(R.rows, dtype=np.int64)):
        raise BuildError("R R^T is not a multiple of the identity")
    return m


def _orbit_matrix(R: Matrix | OrbitStructure) -> Matrix:
    if isinstance(R, OrbitStructure):
        if not R.equal_lengths:
            raise BuildError("orbit variants need all orbits of the same length")
        return R.R
    return R


def build_orbit(R: Matrix | OrbitStructure, B: DesignIncidence | None, q: int | FieldCtx) -> BuildResult:
    """``G = [R | B]`` for a row orbit matrix with ``R R^T = m I``."""
    F = _field(q)
    R = _orbit_matrix(R)
    m = orthogonal_weight(R)
    t = R.rows
    B = _design(B, t)
    left = R.to_field(F)
    if B is None:
        factors = (_factor(F, "m+1", f"{m}+1", lambda a: m + 1, None),)
        beta = int(F.embed(-m))
    else:
        r, lam = B.r, B.lam
        factors = _design_factors(
            F, t,
            "r+(t-1)λ+m", f"{r}+{t - 1}*{lam}+{m}", lambda a: r + (t - 1) * lam + m,
            "r-λ+m", f"{r}-{lam}+{m}", lambda a: r - lam + m,
            None,
        )
        beta = None
    return _finish(ORBIT, left, B, factors, beta, None)


def build_orbit_skew(R: Matrix | OrbitStructure, B: DesignIncidence | None, alpha: int, q: int | FieldCtx) -> BuildResult:
    """``G = [R + aI | B]`` for a skew orbit matrix."""
    F = _field(q)
    if isinstance(R, OrbitStructure) and not R.aligned:
        raise BuildError("row and column orbits are not aligned")
    R = _orbit_matrix(R)
    m = orthogonal_weight(R)
    if not np.array_equal(R.data.T, -R.data):
        raise BuildError("orbit matrix is not skew-symmetric")
    return _skew_common(ORBIT_SKEW, R, R.rows, m, B, alpha, F)


def build_hermitian(
    W: FqWeighingMatrix | Matrix,
    B: DesignIncidence | None,
    q: int | FieldCtx | None = None,
    m: int | None = None,
) -> BuildResult:
    """``G = [R | B]`` over GF(q), q in {2,3,4}, for ``R R* = m I``.

    ``W`` may be an F_q-weighing matrix or one of its orbit matrices.  When
    ``m`` is not given it is read off ``R R*`` (as a residue mod p).
    """
    if isinstance(W, FqWeighingMatrix):
        m = W.m if m is None else m
        W = W.W
    F = W.field if q is None else _field(q)
    if F is None or F.q not in (2, 3, 4):
        raise BuildError("Hermitian construction needs q in {2, 3, 4}")
    if W.field is None:
        W = W.to_field(F)
    elif W.field != F:
        raise BuildError(f"matrix is over {W.field}, requested {F}")
    if not W.is_square:
        raise BuildError("weighing matrix must be square")
    gram = matmul(W, conj_transpose(W)).data
    c = int(gram[0, 0]) if W.rows else 0
    if not np.array_equal(gram, c * np.eye(W.rows, dtype=np.int64)) or c >= F.p:
        raise BuildError("W W* is not a prime-field multiple of the identity")
    if m is None:
        m = c
    elif m % F.p != c:
        raise BuildError(f"W W* = {c} I does not match m = {m}")
    t = W.rows
    B = _design(B, t)
    if B is None:
        factors = (_factor(F, "m+1", f"{m}+1", lambda a: m + 1, None),)
        beta = int(F.embed(-m))
    else:
        r, lam = B.r, B.lam
        factors = _design_factors(
            F, t,
            "r+(t-1)λ+m", f"{r}+{t - 1}*{lam}+{m}", lambda a: r + (t - 1) * lam + m,
            "r-λ+m", f"{r}-{lam}+{m}", lambda a: r - lam + m,
            None,
        )
        beta = None
    return _finish(HERMITIAN, W, B, factors, beta, None, hermitian=True)


def sweep_alpha(builder, ingredient, B: DesignIncidence | None, q: int | FieldCtx) -> list[BuildResult]:
    """Run a skew-type builder for every alpha in GF(q)."""
    F = _field(q)
    return [builder(ingredient, B, a, F) for a in range(F.q)]

