"""Codeword enumeration kernels: weight distributions and minimum distance.

Full enumeration splits the generator into a low half and a high half.  A
codeword is ``l + h`` with ``l`` from the low span and ``h`` from the high span,
and coordinate i of ``l + h`` is zero exactly when ``l_i == -h_i``.  The low
span is turned into per-coordinate indicator vectors once, after which every
high word costs ``n`` byte-vector additions.

Above the enumeration cap, the minimum distance comes from information-set
enumeration (Brouwer-Zimmermann): with several row-equivalent generators
that are systematic on disjoint column sets, a codeword whose message has
weight > w in every one of them has weight >= sum_j (w + 1 - (k - rank_j)) on
those columns.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, islice, product
from math import comb

import numpy as np

from .gfq import FieldCtx

DEFAULT_CAP = 2**28
FULL_SCAN_LIMIT = 2**12
_CHUNK = 2**22


class EnumerationCapError(RuntimeError):
    pass


def default_cap() -> int:
    env = os.environ.get("LCDCODES_ENUM_CAP")
    return int(env) if env else DEFAULT_CAP


def span(G: np.ndarray, F: FieldCtx) -> np.ndarray:
    """All ``q**k`` combinations of the rows of ``G`` (first row varies slowest)."""
    k, n = G.shape
    words = np.zeros((1, n), dtype=np.int64)
    scalars = np.arange(F.q)[:, None]
    for row in G:
        scaled = F.mul(scalars, row[None, :])
        words = F.add(words[:, None, :], scaled[None, :, :]).reshape(-1, n)
    return words


def weight_histogram(G: np.ndarray, F: FieldCtx, cap: int | None = None) -> list[int]:
    """Weight distribution ``[w_0, ..., w_n]`` of the row space of ``G``.

    Rows of ``G`` must be linearly independent.
    """
    k, n = G.shape
    cap = default_cap() if cap is None else cap
    q = F.q
    if q**k > cap:
        raise EnumerationCapError(f"{q}^{k} codewords exceeds the enumeration cap {cap}")
    if k == 0:
        return [1] + [0] * n
    k_lo = (k + 1) // 2
    low = span(G[:k_lo], F)
    high = span(G[k_lo:], F) if k > k_lo else np.zeros((1, n), dtype=np.int64)
    neg_high = F.neg(high)
    n_low = low.shape[0]
    indicator = np.zeros((n, q, n_low), dtype=np.uint8)
    for i in range(n):
        for v in range(q):
            indicator[i, v] = low[:, i] == v
    hist = np.zeros(n + 1, dtype=np.int64)
    batch = max(1, _CHUNK // n_low)
    for start in range(0, neg_high.shape[0], batch):
        nh = neg_high[start : start + batch]
        matches = np.zeros((nh.shape[0], n_low), dtype=np.uint8)
        for i in range(n):
            matches += indicator[i, nh[:, i]]
        hist += np.bincount(matches.ravel(), minlength=n + 1)[: n + 1]
    # ``hist`` counts matching coordinates; weight is n - matches
    return [int(x) for x in hist[::-1]]


@dataclass(frozen=True)
class InfoSetResult:
    best: int | None
    lower: int
    certified: bool
    enumerated: int
    level: int


def information_sets(G: np.ndarray, F: FieldCtx) -> list[tuple[np.ndarray, int]]:
    """Row-equivalent generators, each systematic on a fresh set of columns.

    Returns ``(Gamma, rank)`` pairs; Gamma's first ``rank`` rows carry an
    identity on their information columns and the remaining rows vanish there.
    """
    from .matq import _rref

    k, n = G.shape
    remaining = list(range(n))
    current = np.array(G)
    out: list[tuple[np.ndarray, int]] = []
    while remaining:
        order = remaining + [c for c in range(n) if c not in set(remaining)]
        red, piv = _rref(current[:, order], F, ncols=len(remaining))
        if not piv:
            break
        gamma = np.empty_like(red)
        gamma[:, order] = red
        out.append((gamma, len(piv)))
        used = {order[p] for p in piv}
        remaining = [c for c in remaining if c not in used]
        current = gamma
    return out


def _min_weight_at(G: np.ndarray, w: int, F: FieldCtx) -> int:
    """Least weight among combinations of exactly ``w`` rows (first coefficient 1)."""
    k, n = G.shape
    q = F.q
    scaled = F.mul(np.arange(q)[None, :, None], G[:, None, :])
    coefs = np.array(list(product(range(1, q), repeat=w - 1)), dtype=np.int64)
    coefs = coefs.reshape((q - 1) ** (w - 1), w - 1)
    T = coefs.shape[0]
    per_combo = T * n
    chunk = max(1, _CHUNK // per_combo)
    best = n + 1
    it = combinations(range(k), w)
    while True:
        block = np.array(list(islice(it, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        acc = np.broadcast_to(G[block[:, 0]][:, None, :], (block.shape[0], T, n))
        for j in range(1, w):
            term = scaled[block[:, j]][:, coefs[:, j - 1], :]
            acc = F.add(acc, term)
        wt = np.count_nonzero(acc, axis=2)
        best = min(best, int(wt.min()))
    return best


def information_set_distance(
    G: np.ndarray,
    F: FieldCtx,
    budget: int | None = None,
    max_weight: int | None = None,
) -> InfoSetResult:
    k, n = G.shape
    budget = default_cap() if budget is None else budget
    sets = information_sets(G, F)
    levels = [0] * len(sets)
    spent = 0
    best: int | None = None

    def lower() -> int:
        return sum(max(0, lv + 1 - (k - r)) for lv, (_, r) in zip(levels, sets))

    top = k if max_weight is None else min(k, max_weight)
    for w in range(1, top + 1):
        for j, (gamma, r) in enumerate(sets):
            if best is not None and best <= lower():
                return InfoSetResult(best, best, True, spent, w - 1)
            if w + 1 - (k - r) <= 0:
                continue
            cost = comb(k, w) * (F.q - 1) ** (w - 1)
            if spent + cost > budget:
                return InfoSetResult(best, lower(), False, spent, w - 1)
            found = _min_weight_at(gamma, w, F)
            spent += cost
            levels[j] = w
            if best is None or found < best:
                best = found
    lb = lower()
    if best is not None and best <= lb:
        return InfoSetResult(best, best, True, spent, top)
    if max_weight is None or top == k:
        # every nonzero message was enumerated in the first generator
        return InfoSetResult(best, best if best is not None else 0, best is not None, spent, top)
    return InfoSetResult(best, lb, False, spent, top)
