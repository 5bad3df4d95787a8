import itertools

import numpy as np
import pytest

from lcdcodes.construct import (
    ValidationError,
    identity_design,
    jacobsthal,
    paley_conference,
    paley_matrix,
    paley_type_I,
    quadratic_character,
    row_subset_design,
    search_fq_weighing,
    skew_core,
    validate_design,
    validate_fq_weighing,
    validate_weighing,
)
from lcdcodes.gfq import FieldError, get_field
from lcdcodes.matq import Matrix
from oracles import PolyField, is_square_residue

TYPE_I_PRIMES = [3, 7, 11, 19, 23, 31, 43, 47]
CONFERENCE_PRIMES = [5, 13, 17, 29, 37, 41]


@pytest.mark.parametrize("pi", TYPE_I_PRIMES + CONFERENCE_PRIMES)
def test_jacobsthal_matches_legendre_symbol(pi):
    expected = [[is_square_residue(y - x, pi) for y in range(pi)] for x in range(pi)]
    assert jacobsthal(pi).tolist() == expected


@pytest.mark.parametrize("pi", [9, 25])
def test_jacobsthal_prime_square_against_polynomial_field(pi):
    F = PolyField(pi)
    squares = {F.mul(y, y) for y in range(1, pi)}
    A = jacobsthal(pi)
    for x, y in itertools.product(range(pi), repeat=2):
        diff = F.sub(y, x)
        assert A[x, y] == (0 if diff == 0 else 1 if diff in squares else -1)


@pytest.mark.parametrize("pi", TYPE_I_PRIMES + [27])
def test_paley_type_I(pi):
    H = paley_type_I(pi)
    d = H.W.data
    n = pi + 1
    assert (H.n, H.m) == (n, n)
    assert H.is_hadamard and H.is_skew_type_hadamard
    assert np.array_equal(d @ d.T, n * np.eye(n, dtype=np.int64))
    assert np.array_equal(d + d.T, 2 * np.eye(n, dtype=np.int64))


@pytest.mark.parametrize("pi", CONFERENCE_PRIMES + [9, 25])
def test_paley_conference(pi):
    C = paley_conference(pi)
    d = C.W.data
    n = pi + 1
    assert C.is_conference and C.m == pi
    assert np.array_equal(d, d.T)
    assert not np.any(np.diag(d))
    assert np.array_equal(d @ d.T, pi * np.eye(n, dtype=np.int64))


def test_paley_residue_errors():
    with pytest.raises(ValidationError):
        paley_type_I(5)
    with pytest.raises(ValidationError):
        paley_conference(7)
    with pytest.raises(FieldError):
        paley_type_I(15)
    assert paley_matrix(7).is_hadamard
    assert paley_matrix(5).is_conference


def test_quadratic_character():
    assert [quadratic_character(x, 7) for x in range(7)] == [0, 1, 1, -1, 1, -1, -1]
    with pytest.raises(ValidationError):
        quadratic_character(1, 4)


@pytest.mark.parametrize("pi", [3, 7, 11])
def test_skew_core(pi):
    S = skew_core(paley_type_I(pi))
    assert S.is_skew and S.m == pi
    assert not np.any(np.diag(S.W.data))
    with pytest.raises(ValidationError):
        skew_core(paley_conference(5))


@pytest.mark.parametrize("W", [paley_type_I(3), paley_type_I(7), paley_conference(5), skew_core(paley_type_I(7))],
                         ids=["P1(3)", "P1(7)", "conf(5)", "core(7)"])
def test_every_single_entry_corruption_is_rejected(W):
    d = W.W.data
    for i, j in itertools.product(range(W.n), repeat=2):
        for v in (-1, 0, 1):
            if v == d[i, j]:
                continue
            bad = d.copy()
            bad[i, j] = v
            with pytest.raises(ValidationError):
                validate_weighing(Matrix(bad))


def test_weighing_rejections_name_the_problem():
    with pytest.raises(ValidationError, match=r"entry \(0, 1\) = 2"):
        validate_weighing(Matrix([[1, 2], [0, 1]]))
    with pytest.raises(ValidationError, match="not orthogonal"):
        validate_weighing(Matrix([[1, 1], [1, 1]]))
    with pytest.raises(ValidationError, match="expected 3"):
        validate_weighing(Matrix([[1, 1], [1, -1]]), expect_m=3)
    with pytest.raises(ValidationError):
        validate_weighing(Matrix([[1, 1]]))
    with pytest.raises(ValidationError):
        validate_weighing(Matrix([[1]], get_field(3)))


def test_circulant_weighing_matrix():
    W = validate_weighing(Matrix(np.ones((4, 4), dtype=np.int64) - 2 * np.eye(4, dtype=np.int64)))
    assert W.is_hadamard and not W.is_skew_type_hadamard and not W.is_skew


def _fano():
    B = np.zeros((7, 7), dtype=np.int64)
    for j in range(7):
        for s in (0, 1, 3):
            B[(j + s) % 7, j] = 1
    return Matrix(B)


def test_design_validation():
    D = validate_design(_fano(), 3, 1)
    assert (D.points, D.blocks, D.r, D.lam) == (7, 7, 3, 1)
    with pytest.raises(ValidationError):
        validate_design(_fano(), 3, 0)
    bad = _fano().data.copy()
    bad[0, 0] ^= 1
    with pytest.raises(ValidationError, match="point 0"):
        validate_design(Matrix(bad), 3, 1)
    with pytest.raises(ValidationError):
        validate_design(Matrix([[2, 0]]), 1, 0)


@pytest.mark.parametrize("t", range(1, 8))
def test_row_subsets_keep_the_gram_identity(t):
    D = row_subset_design(validate_design(_fano(), 3, 1), t)
    g = D.B.data @ D.B.data.T
    assert np.array_equal(g, 2 * np.eye(t, dtype=np.int64) + 1)


def test_row_subset_bounds_and_identity_design():
    D = validate_design(_fano(), 3, 1)
    with pytest.raises(ValidationError):
        row_subset_design(D, 0)
    with pytest.raises(ValidationError):
        row_subset_design(D, 8)
    I = identity_design(5)
    assert (I.r, I.lam, I.points) == (1, 0, 5)
    validate_design(I.B, 1, 0)


def test_fq_weighing_validation():
    F4 = get_field(4)
    W = validate_fq_weighing(Matrix([[2, 0], [0, 3]], F4))
    assert (W.n, W.m, W.field) == (2, 1, F4)
    # P1(3) reduced mod 3 is a W(4, 4; F3)
    validate_fq_weighing(paley_type_I(3).W.to_field(3), expect_m=4)
    # [[1, 1], [1, 1]] is a W(2, 2; F4) since 2 = 0 in characteristic 2
    validate_fq_weighing(Matrix([[1, 1], [1, 1]], F4), expect_m=2)
    with pytest.raises(ValidationError, match=r"W W\* entry \(0, 1\)"):
        validate_fq_weighing(Matrix([[1, 2], [1, 1]], F4))
    with pytest.raises(ValidationError):
        validate_fq_weighing(Matrix([[1, 1], [0, 1]], F4))
    with pytest.raises(ValidationError):
        validate_fq_weighing(Matrix([[1]], get_field(5)))
    with pytest.raises(ValidationError):
        validate_fq_weighing(Matrix([[1, 0], [0, 1]], F4), expect_m=2)


def _brute_force_fq_weighing(n, m, q):
    """All n x n matrices with m nonzeros per row/column and W W^dagger = m I, as row sets."""
    F = PolyField(q)
    dag = [0] + [F.inv(a) for a in range(1, q)]
    rows = [v for v in itertools.product(range(q), repeat=n) if sum(1 for x in v if x) == m]

    def ip(u, v):
        s = 0
        for a, b in zip(u, v):
            s = F.add(s, F.mul(a, dag[b]))
        return s

    good = [r for r in rows if ip(r, r) == m % F.p]
    found = set()
    for combo in itertools.combinations(good, n):
        if all(ip(u, v) == 0 for u, v in itertools.combinations(combo, 2)):
            cols = [sum(1 for r in combo if r[j]) for j in range(n)]
            if all(c == m for c in cols):
                found.add(combo)
    return found


@pytest.mark.parametrize("n,m,q", [(2, 1, 4), (3, 3, 4), (3, 2, 3), (4, 3, 3), (4, 4, 2)])
def test_search_matches_brute_force(n, m, q):
    hits = search_fq_weighing(n, m, q)
    for W in hits:
        validate_fq_weighing(W, m)
    as_sets = {tuple(tuple(int(x) for x in r) for r in W.data) for W in hits}
    assert len(as_sets) == len(hits)
    assert as_sets == _brute_force_fq_weighing(n, m, q)


def test_search_limit():
    assert len(search_fq_weighing(3, 3, 4, limit=2)) == 2
    with pytest.raises(ValidationError):
        search_fq_weighing(2, 1, 5)
