"""Permutation automorphisms and orbit matrices.

A generator ``(row_perm, col_perm)`` is an automorphism of M when
``M[row_perm[i], col_perm[j]] == M[i, j]`` for all i, j, i.e. ``P M Q^T = M``
for the corresponding permutation matrices.  Permutations are stored
zero-based; the group file format is one-based.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from pathlib import Path

import numpy as np

from .construct import WeighingMatrix
from .matq import Matrix, rational_inverse


class OrbitError(ValueError):
    pass


@dataclass(frozen=True)
class PermAutGenerator:
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]

    def __post_init__(self):
        for perm in (self.row_perm, self.col_perm):
            if sorted(perm) != list(range(len(perm))):
                raise OrbitError(f"{perm} is not a permutation of 0..{len(perm) - 1}")

    @property
    def degree(self) -> int:
        return len(self.row_perm)

    def compose(self, other: "PermAutGenerator") -> "PermAutGenerator":
        """Apply ``other`` first, then ``self``."""
        r = tuple(self.row_perm[i] for i in other.row_perm)
        c = tuple(self.col_perm[i] for i in other.col_perm)
        return PermAutGenerator(r, c)

    @classmethod
    def identity(cls, n: int) -> "PermAutGenerator":
        return cls(tuple(range(n)), tuple(range(n)))

    def is_identity(self) -> bool:
        return self.row_perm == tuple(range(self.degree)) and self.col_perm == self.row_perm


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)

    def classes(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return [tuple(g) for _, g in sorted(groups.items())]


def orbits(perms: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Orbits of the group generated by ``perms`` on ``0..n-1``, ordered by least element."""
    uf = UnionFind(n)
    for p in perms:
        for i, j in enumerate(p):
            uf.union(i, j)
    return uf.classes()


def verify_generator(M: Matrix, g: PermAutGenerator) -> bool:
    if not M.is_square:
        raise OrbitError("automorphisms are defined here for square matrices")
    if g.degree != M.rows or len(g.col_perm) != M.cols:
        raise OrbitError(f"generator of degree {g.degree} for a {M.rows}x{M.cols} matrix")
    d = M.data
    return bool(np.array_equal(d[np.ix_(g.row_perm, g.col_perm)], d))


@dataclass(frozen=True)
class OrbitStructure:
    row_orbits: tuple[tuple[int, ...], ...]
    col_orbits: tuple[tuple[int, ...], ...]
    R: Matrix
    C: Matrix
    generators: tuple[PermAutGenerator, ...] = field(default=())

    @property
    def t(self) -> int:
        return len(self.row_orbits)

    @property
    def row_sizes(self) -> list[int]:
        return [len(o) for o in self.row_orbits]

    @property
    def col_sizes(self) -> list[int]:
        return [len(o) for o in self.col_orbits]

    @property
    def equal_lengths(self) -> bool:
        sizes = set(self.row_sizes) | set(self.col_sizes)
        return len(sizes) == 1

    @property
    def aligned(self) -> bool:
        return self.row_orbits == self.col_orbits


def _block_sums(M: Matrix, rows: tuple[int, ...], cols: tuple[int, ...]):
    block = M.data[np.ix_(rows, cols)]
    if M.field is None:
        return block.sum(axis=1), block.sum(axis=0)
    F = M.field
    rs = np.zeros(len(rows), dtype=np.int64)
    for j in range(len(cols)):
        rs = F.add(rs, block[:, j])
    cs = np.zeros(len(cols), dtype=np.int64)
    for i in range(len(rows)):
        cs = F.add(cs, block[i])
    return rs, cs


def orbit_structure(M: Matrix, gens: list[PermAutGenerator]) -> OrbitStructure:
    """Row/column orbits of the group generated by ``gens`` and both orbit matrices.

    Works over Z and over GF(q); over GF(q) the sums are field sums.
    """
    n = M.rows
    for i, g in enumerate(gens):
        if not verify_generator(M, g):
            moved = M.data[np.ix_(g.row_perm, g.col_perm)]
            r, c = (int(x) for x in np.argwhere(moved != M.data)[0])
            raise OrbitError(
                f"generator {i} is not an automorphism: entry ({r + 1}, {c + 1}) maps from "
                f"({g.row_perm[r] + 1}, {g.col_perm[c] + 1}) with {moved[r, c]} != {M.data[r, c]}"
            )
    if not gens:
        gens = [PermAutGenerator.identity(n)]
    rorb = orbits([g.row_perm for g in gens], n)
    corb = orbits([g.col_perm for g in gens], M.cols)
    if len(rorb) != len(corb):
        raise OrbitError(f"{len(rorb)} row orbits but {len(corb)} column orbits")
    t = len(rorb)
    R = np.zeros((t, t), dtype=np.int64)
    C = np.zeros((t, t), dtype=np.int64)
    for i, ro in enumerate(rorb):
        for j, co in enumerate(corb):
            rs, cs = _block_sums(M, ro, co)
            if np.any(rs != rs[0]) or np.any(cs != cs[0]):
                raise OrbitError(f"block ({i}, {j}) has non-constant row or column sums")
            R[i, j], C[i, j] = rs[0], cs[0]
    return OrbitStructure(
        tuple(rorb), tuple(corb), Matrix(R, M.field), Matrix(C, M.field), tuple(gens)
    )


def double_count_holds(S: OrbitStructure) -> bool:
    """``Omega_i * Gamma_ij == omega_j * gamma_ij`` for every block."""
    R, C = S.R.data, S.C.data
    om = np.array(S.row_sizes)[:, None]
    ow = np.array(S.col_sizes)[None, :]
    if S.R.field is None:
        return bool(np.array_equal(om * R, ow * C))
    F = S.R.field
    return bool(np.array_equal(F.mul(F.embed(om), R), F.mul(F.embed(ow), C)))


def _rational_col_orbit_matrix(N: list[list[Fraction]], S: OrbitStructure) -> list[list[Fraction]]:
    t = S.t
    out = [[Fraction(0)] * t for _ in range(t)]
    for i, ro in enumerate(S.row_orbits):
        for j, co in enumerate(S.col_orbits):
            sums = {sum((N[r][c] for r in ro), Fraction(0)) for c in co}
            if len(sums) != 1:
                raise OrbitError(f"column sums of block ({i}, {j}) of (M^-1)^T are not constant")
            out[i][j] = sums.pop()
    return out


def inverse_transpose_orbit_matrix(M: Matrix, S: OrbitStructure) -> list[list[Fraction]]:
    """Column orbit matrix of ``(M^-1)^T`` on the orbits of S, exactly."""
    inv = rational_inverse(M)
    n = M.rows
    N = [[inv[j][i] for j in range(n)] for i in range(n)]
    return _rational_col_orbit_matrix(N, S)


def verify_delta_identity(M: Matrix, S: OrbitStructure) -> bool:
    """``sum_j Gamma_ij * gamma'_sj == delta_is`` with gamma' from ``(M^-1)^T``."""
    if M.field is not None:
        raise OrbitError("delta identity is checked over the rationals")
    gam = inverse_transpose_orbit_matrix(M, S)
    R = S.R.data
    t = S.t
    for i in range(t):
        for s in range(t):
            val = sum((int(R[i, j]) * gam[s][j] for j in range(t)), Fraction(0))
            if val != (1 if i == s else 0):
                return False
    return True


def rational_det(rows: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def verify_orbit_inverse(M: Matrix, S: OrbitStructure) -> bool:
    """R is nonsingular and ``R^-1`` is the transpose of the column orbit matrix of ``(M^-1)^T``."""
    R = [[Fraction(int(v)) for v in row] for row in S.R.data]
    if rational_det(R) == 0:
        return False
    gam = inverse_transpose_orbit_matrix(M, S)
    t = S.t
    for i in range(t):
        for s in range(t):
            val = sum((R[i][j] * gam[s][j] for j in range(t)), Fraction(0))
            if val != (1 if i == s else 0):
                return False
    return True


def verify_weighted_orthogonality(W: WeighingMatrix, S: OrbitStructure) -> bool:
    """``sum_j (Omega_s / omega_j) Gamma_ij Gamma_sj == delta_is * m`` exactly."""
    R = S.R.data
    om, ow = S.row_sizes, S.col_sizes
    t = S.t
    for i in range(t):
        for s in range(t):
            val = sum(
                (Fraction(om[s], ow[j]) * int(R[i, j]) * int(R[s, j]) for j in range(t)),
                Fraction(0),
            )
            if val != (W.m if i == s else 0):
                return False
    return True


def skew_orbit_check(W: WeighingMatrix, S: OrbitStructure) -> bool:
    if not W.is_skew:
        raise OrbitError("skew orbit check needs a skew-weighing matrix")
    if not S.equal_lengths:
        raise OrbitError("orbits do not all have the same length")
    if not S.aligned:
        raise OrbitError("row and column orbits are not aligned (r_s in R_i iff c_s in C_i)")
    R = S.R.data
    return bool(np.array_equal(R.T, -R))


def paut_search(W: WeighingMatrix, max_n: int = 10) -> list[PermAutGenerator]:
    """Every permutation automorphism of a weighing matrix, by brute force over row permutations.

    For each row permutation the column permutation is forced:
    ``Q^T = (1/m) W^T P^{-1} W`` must be a permutation matrix.
    """
    n, m = W.n, W.m
    if n > max_n:
        raise OrbitError(f"order {n} exceeds the brute-force bound {max_n}")
    d = W.W.data
    found: list[PermAutGenerator] = []
    perms = permutations(range(n))
    chunk = 20000
    while True:
        block = np.array([p for _, p in zip(range(chunk), perms)], dtype=np.int64)
        if block.size == 0:
            break
        Wp = d[block]  # row i of Wp is row sigma(i) of W
        K = np.einsum("bia,ij->baj", Wp, d)
        ok = np.all((K == 0) | (K == m), axis=(1, 2)) & np.all((K == m).sum(axis=1) == 1, axis=1)
        for b in np.flatnonzero(ok):
            tau = tuple(int(a) for a in np.argmax(K[b] == m, axis=0))
            g = PermAutGenerator(tuple(int(x) for x in block[b]), tau)
            if verify_generator(W.W, g):
                found.append(g)
    return sorted(found, key=lambda g: (g.row_perm, g.col_perm))


def cyclic_subgroups(auts: list[PermAutGenerator]) -> list[PermAutGenerator]:
    """One generator per distinct cyclic subgroup (including the trivial one)."""
    seen: set[frozenset] = set()
    out: list[PermAutGenerator] = []
    for g in auts:
        elems = []
        x = g
        while True:
            elems.append((x.row_perm, x.col_perm))
            if x.is_identity():
                break
            x = g.compose(x)
        key = frozenset(elems)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def group_closure(gens: list[PermAutGenerator], n: int) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    ident = PermAutGenerator.identity(n)
    elems = {(ident.row_perm, ident.col_perm)}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g.compose(x)
                key = (y.row_perm, y.col_perm)
                if key not in elems:
                    elems.add(key)
                    nxt.append(y)
        frontier = nxt
    return elems


# group file format


def parse_group(text: str) -> tuple[int, list[PermAutGenerator]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise OrbitError("empty group file")
    head = lines[0].split()
    if len(head) != 2:
        raise OrbitError(f"bad header {lines[0]!r}; expected 'n_gens n'")
    k, n = int(head[0]), int(head[1])
    if len(lines) != 1 + 2 * k:
        raise OrbitError(f"expected {2 * k} permutation lines, found {len(lines) - 1}")
    gens = []
    for g in range(k):
        perms = []
        for line in lines[1 + 2 * g : 3 + 2 * g]:
            imgs = [int(x) - 1 for x in line.split()]
            if len(imgs) != n:
                raise OrbitError(f"generator {g}: expected {n} images, got {len(imgs)}")
            perms.append(tuple(imgs))
        gens.append(PermAutGenerator(perms[0], perms[1]))
    return n, gens


def format_group(gens: list[PermAutGenerator], n: int) -> str:
    lines = [f"{len(gens)} {n}"]
    for g in gens:
        lines.append(" ".join(str(i + 1) for i in g.row_perm))
        lines.append(" ".join(str(i + 1) for i in g.col_perm))
    return "\n".join(lines) + "\n"


def read_group(path: str | os.PathLike) -> tuple[int, list[PermAutGenerator]]:
    return parse_group(Path(path).read_text())


def write_group(gens: list[PermAutGenerator], n: int, path: str | os.PathLike) -> None:
    Path(path).write_text(format_group(gens, n))
