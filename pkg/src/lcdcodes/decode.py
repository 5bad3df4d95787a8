"""Projection decoding for LCD codes with generator ``G = [M | I]``.

With ``G_bar = [M | beta I]`` spanning the dual, the rows of G and G_bar form a
basis of the whole space, so every received word splits uniquely as
``w = lam G + mu G_bar``.  The partial map ``phi`` sends ``mu G_bar`` to
``mu G`` whenever mu has at most t nonzero coefficients, and the decoder
returns ``lam G + phi(mu G_bar) = (lam + mu) G``.

The radius test counts nonzero coefficients of mu, not the Hamming weight of
the error.  For an error supported on the identity block the two agree
(``mu = e_R / (beta - 1)``).  An error touching the M block yields a mu with
more than t nonzero coefficients, and decoding reports failure instead of
returning a wrong codeword.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .build import LCD, BuildResult
from .code import DistanceResult, LinearCode
from .enumeration import span
from .gfq import FieldCtx
from .matq import Matrix, SingularMatrixError, gf_vecmat, inverse


class DecoderError(ValueError):
    pass


class BeyondRadius(Exception):
    """The dual component has more than t nonzero coefficients."""

    def __init__(self, weight: int, t: int):
        super().__init__(f"coefficient weight {weight} exceeds t = {t}")
        self.weight = weight
        self.t = t


@dataclass(frozen=True)
class DecoderContext:
    G: Matrix
    G_bar: Matrix
    basis_inverse: Matrix
    d: int
    t: int

    @property
    def field(self) -> FieldCtx:
        return self.G.field

    @property
    def n(self) -> int:
        return self.G.rows

    @property
    def length(self) -> int:
        return self.G.cols


def context_from_matrices(G: Matrix, G_bar: Matrix, d: int) -> DecoderContext:
    if G.field is None or G.field != G_bar.field:
        raise DecoderError("G and G_bar must be over the same GF(q)")
    if G.shape != G_bar.shape or 2 * G.rows != G.cols:
        raise DecoderError(f"expected two n x 2n matrices, got {G.shape} and {G_bar.shape}")
    if d < 1:
        raise DecoderError("minimum distance must be positive")
    try:
        inv = inverse(G.vstack(G_bar))
    except SingularMatrixError:
        raise DecoderError("rows of G and G_bar do not span the space; G_bar does not span the dual") from None
    return DecoderContext(G, G_bar, inv, d, (d - 1) // 2)


def make_context(result: BuildResult, d: DistanceResult | int) -> DecoderContext:
    if result.predicted != LCD:
        raise DecoderError(f"build predicted {result.predicted}, decoding needs an LCD code")
    if result.G_bar is None:
        raise DecoderError("build has no G_bar (design other than the identity)")
    if isinstance(d, DistanceResult):
        if not d.exact:
            raise DecoderError("minimum distance must be certified EXACT")
        d = d.d
    return context_from_matrices(result.G, result.G_bar, d)


def _vector(ctx: DecoderContext, w) -> np.ndarray:
    w = np.asarray(w, dtype=np.int64).reshape(-1)
    if w.size != ctx.length:
        raise DecoderError(f"word of length {w.size}, expected {ctx.length}")
    if not ctx.field.contains(w):
        raise DecoderError(f"word has entries outside GF({ctx.field.q})")
    return w


@dataclass(frozen=True)
class Projection:
    c: np.ndarray
    e: np.ndarray
    lam: np.ndarray
    mu: np.ndarray


def project(ctx: DecoderContext, w) -> Projection:
    """``w = lam G + mu G_bar``; returns both components and both coefficient vectors."""
    w = _vector(ctx, w)
    coeffs = gf_vecmat(w, ctx.basis_inverse)[0]
    lam, mu = coeffs[: ctx.n], coeffs[ctx.n :]
    c = gf_vecmat(lam, ctx.G)[0]
    e = gf_vecmat(mu, ctx.G_bar)[0]
    return Projection(c, e, lam, mu)


def phi(ctx: DecoderContext, mu) -> np.ndarray:
    """Image of ``mu G_bar`` in C: ``mu G``, defined for at most t nonzero coefficients."""
    mu = np.asarray(mu, dtype=np.int64).reshape(-1)
    wt = int(np.count_nonzero(mu))
    if wt > ctx.t:
        raise BeyondRadius(wt, ctx.t)
    return gf_vecmat(mu, ctx.G)[0]


def decode(ctx: DecoderContext, w) -> np.ndarray:
    """Decoded codeword, or :class:`BeyondRadius` when phi is undefined on the dual part."""
    pr = project(ctx, w)
    F = ctx.field
    return F.add(pr.c, phi(ctx, pr.mu))


def encode(ctx: DecoderContext, message) -> np.ndarray:
    return gf_vecmat(np.asarray(message, dtype=np.int64), ctx.G)[0]


def nearest_codewords(code: LinearCode, w, limit: int = 2**16) -> tuple[int, np.ndarray]:
    """Exhaustive nearest-codeword search (heuristic tool, not the decoder contract).

    Returns the distance and all codewords attaining it.
    """
    if code.q**code.k > limit:
        raise DecoderError(f"{code.q}^{code.k} codewords exceeds the exhaustive limit {limit}")
    words = span(code.basis.data, code.field)
    w = np.asarray(w, dtype=np.int64).reshape(1, -1)
    dist = np.count_nonzero(words != w, axis=1)
    best = int(dist.min())
    return best, words[dist == best]


@dataclass
class SweepCounts:
    corrected: int = 0
    failed: int = 0
    wrong: int = 0

    @property
    def total(self) -> int:
        return self.corrected + self.failed + self.wrong


def error_patterns(length: int, q: int, max_weight: int):
    """Every error vector of weight 1..max_weight, ordered by weight then support."""
    for w in range(1, max_weight + 1):
        for support in combinations(range(length), w):
            for values in product(range(1, q), repeat=w):
                e = np.zeros(length, dtype=np.int64)
                e[list(support)] = values
                yield e


def radius_sweep(ctx: DecoderContext, codewords, max_weight: int | None = None) -> SweepCounts:
    """Decode every codeword plus every error of weight <= max_weight (default t)."""
    F = ctx.field
    w_max = ctx.t if max_weight is None else max_weight
    counts = SweepCounts()
    for c in codewords:
        c = np.asarray(c, dtype=np.int64)
        for e in [np.zeros_like(c), *error_patterns(ctx.length, F.q, w_max)]:
            try:
                out = decode(ctx, F.add(c, e))
            except BeyondRadius:
                counts.failed += 1
                continue
            if np.array_equal(out, c):
                counts.corrected += 1
            else:
                counts.wrong += 1
    return counts


def sample_codewords(ctx: DecoderContext, count: int, seed: int) -> list[np.ndarray]:
    """The zero word followed by ``count - 1`` encodings of seeded random messages."""
    rng = np.random.default_rng(seed)
    words = [np.zeros(ctx.length, dtype=np.int64)]
    for _ in range(count - 1):
        words.append(encode(ctx, rng.integers(0, ctx.field.q, ctx.n)))
    return words
