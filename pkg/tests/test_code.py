import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcdcodes import enumeration
from lcdcodes.code import (
    EXACT,
    LOWER_BOUND,
    STRUCTURAL,
    UNKNOWN,
    CodeError,
    dual,
    formally_self_dual_check,
    from_generator,
    fsd_status,
    hermitian_dual,
    hull_by_intersection,
    hull_dimension,
    is_lcd,
    is_self_dual,
    is_self_orthogonal,
    krawtchouk,
    macwilliams,
    min_distance,
    report,
    same_span,
    weight_distribution,
)
from lcdcodes.enumeration import EnumerationCapError, information_sets
from lcdcodes.gfq import get_field
from lcdcodes.matq import Matrix
from oracles import PolyField, naive_codewords, naive_min_distance, naive_weight_distribution


def code_rows(q, max_k=3, max_n=7):
    return st.tuples(st.integers(1, max_k), st.integers(2, max_n)).flatmap(
        lambda kn: st.lists(
            st.lists(st.integers(0, q - 1), min_size=kn[1], max_size=kn[1]), min_size=kn[0], max_size=kn[0]
        ).filter(lambda rows: any(any(r) for r in rows))
    )


def _oracle_hull(rows, q):
    """log_q of |C intersect C-perp| by enumeration."""
    F = PolyField(q)
    words = set(naive_codewords(rows, F))
    count = 0
    for w in words:
        if all(_dot(w, r, F) == 0 for r in rows):
            count += 1
    return round(np.log(count) / np.log(q))


def _dot(u, v, F):
    s = 0
    for a, b in zip(u, v):
        s = F.add(s, F.mul(a, b))
    return s


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_dual_and_hull_against_enumeration(q, data):
    rows = data.draw(code_rows(q))
    C = from_generator(Matrix(rows, get_field(q)))
    D = dual(C)
    assert C.k + D.k == C.n
    F = PolyField(q)
    if D.k:
        for u in D.basis.data.tolist():
            assert all(_dot(u, r, F) == 0 for r in rows)
    assert dual(D) == C
    h = _oracle_hull(rows, q)
    assert hull_dimension(C) == hull_by_intersection(C) == h
    assert is_lcd(C) == (h == 0)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_information_set_distance_matches_oracle(q, data):
    rows = data.draw(code_rows(q, max_k=4, max_n=8))
    C = from_generator(Matrix(rows, get_field(q)))
    with pytest.MonkeyPatch.context() as mp:
        mp.setattr(enumeration, "FULL_SCAN_LIMIT", 0)
        res = min_distance(C)
    assert res.status == EXACT
    assert res.d == naive_min_distance(rows, PolyField(q))


@pytest.mark.parametrize("q", [2, 3])
def test_information_sets_are_systematic(q):
    F = get_field(q)
    rng = np.random.default_rng(q)
    G = np.hstack([np.eye(4, dtype=np.int64), rng.integers(0, q, (4, 8))])
    sets = information_sets(G, F)
    assert sets[0][1] == 4
    for gamma, r in sets:
        assert same_span(Matrix(gamma, F), Matrix(G, F))
        unit_cols = [c for c in range(12) if np.count_nonzero(gamma[:, c]) == 1 and gamma[:, c].max() == 1]
        assert len(unit_cols) >= r


def test_lower_bound_when_cap_is_small():
    F = get_field(3)
    rng = np.random.default_rng(1)
    G = Matrix(np.hstack([np.eye(12, dtype=np.int64), rng.integers(0, 3, (12, 12))]), F)
    C = from_generator(G)
    exact = min_distance(C)
    assert exact.status == EXACT
    res = min_distance(C, cap=2**6, max_weight=1)
    assert res.status == LOWER_BOUND
    assert res.d <= exact.d <= res.best_found


def test_zero_code_and_field_checks():
    with pytest.raises(CodeError):
        from_generator(Matrix([[1, 0]]))
    with pytest.raises(CodeError):
        from_generator(Matrix([[0, 0]], get_field(3)))


def test_dependent_rows_are_dropped():
    F = get_field(3)
    C = from_generator(Matrix([[1, 0, 1], [2, 0, 2], [0, 1, 1]], F))
    assert C.k == 2 and C.generator.rows == 2
    assert C.contains([1, 1, 2]) and not C.contains([1, 0, 0])
    assert C == from_generator(Matrix([[1, 1, 2], [0, 1, 1]], F))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_weight_distribution_and_macwilliams(q):
    F = get_field(q)
    rng = np.random.default_rng(10 + q)
    for _ in range(10):
        G = rng.integers(0, q, (3, 6))
        if not np.any(G):
            continue
        C = from_generator(Matrix(G, F))
        wd = weight_distribution(C)
        rows = [list(map(int, r)) for r in C.basis.data]
        assert wd == naive_weight_distribution(rows, PolyField(q))
        assert macwilliams(wd, q) == weight_distribution(dual(C))
        assert macwilliams(macwilliams(wd, q), q) == wd


def test_krawtchouk_orthogonality():
    n, q = 6, 3
    for i, j in itertools.product(range(n + 1), repeat=2):
        s = sum(krawtchouk(a, i, n, q) * krawtchouk(j, a, n, q) for a in range(n + 1))
        assert s == (q**n if i == j else 0)


def test_macwilliams_rejects_non_distribution():
    with pytest.raises(CodeError):
        macwilliams([1, 1, 0], 3)


def test_weight_distribution_cap():
    C = from_generator(Matrix(np.eye(8, dtype=np.int64), get_field(3)))
    with pytest.raises(EnumerationCapError):
        weight_distribution(C, cap=100)


def test_default_cap_from_environment(monkeypatch):
    monkeypatch.setenv("LCDCODES_ENUM_CAP", "17")
    assert enumeration.default_cap() == 17
    monkeypatch.delenv("LCDCODES_ENUM_CAP")
    assert enumeration.default_cap() == enumeration.DEFAULT_CAP


def test_self_dual_and_self_orthogonal():
    F3 = get_field(3)
    # ternary tetracode is self-dual
    C = from_generator(Matrix([[1, 0, 1, 1], [0, 1, 1, 2]], F3))
    assert is_self_orthogonal(C) and is_self_dual(C)
    assert hull_dimension(C) == 2 and dual(C) == C
    D = from_generator(Matrix([[1, 0, 0, 0]], F3))
    assert not is_self_orthogonal(D) and is_lcd(D)


def test_hermitian_dual_gf4():
    F4 = get_field(4)
    # the hexacode is Hermitian self-dual
    G = Matrix([[1, 0, 0, 1, 2, 2], [0, 1, 0, 2, 1, 2], [0, 0, 1, 2, 2, 1]], F4)
    C = from_generator(G)
    assert hermitian_dual(C) == C
    assert hull_dimension(C, hermitian=True) == 3
    assert min_distance(C).d == 4
    with pytest.raises(CodeError):
        hermitian_dual(from_generator(Matrix([[1, 1]], get_field(5))))


def test_fsd_modes():
    F3 = get_field(3)
    C = from_generator(Matrix([[1, 0, 1, 1], [0, 1, 1, 2]], F3))
    assert formally_self_dual_check(C, EXACT)
    assert fsd_status(C) == (True, EXACT)
    odd = from_generator(Matrix([[1, 1, 1]], F3))
    assert fsd_status(odd) == (False, EXACT)
    with pytest.raises(ValueError):
        formally_self_dual_check(C, "BOGUS")


def test_structural_fsd_fallback():
    F5 = get_field(5)
    # M M^T = 2I mod 5, so [M | -2I] spans the dual of [M | I]
    M = np.array([[1, 1], [4, 1]])
    G = Matrix(np.hstack([M, np.eye(2, dtype=np.int64)]), F5)
    C = from_generator(G)
    assert formally_self_dual_check(C, STRUCTURAL)
    assert fsd_status(C, cap=4) == (True, STRUCTURAL)
    not_systematic = from_generator(Matrix([[1, 1, 0, 0], [0, 0, 1, 1]], F5))
    assert not formally_self_dual_check(not_systematic, STRUCTURAL)
    assert fsd_status(not_systematic, cap=4) == (None, UNKNOWN)


def test_report_text():
    F3 = get_field(3)
    C = from_generator(Matrix([[1, 0, 1, 1], [0, 1, 1, 2]], F3))
    rep = report(C, wdist=True)
    assert rep.to_text() == "4 2 3[EXACT] 3 2 lcd=no fsd=yes[EXACT] self_dual=yes\nwdist: 1 0 0 8 0\n"
    D = from_generator(Matrix([[1, 0, 0], [0, 1, 0]], get_field(2)))
    assert report(D, distance=False).to_text() == "3 2 - 2 0 lcd=yes fsd=no[EXACT]\n"
    E = from_generator(Matrix([[1, 0, 0], [0, 1, 1]], get_field(2)))
    assert report(E).to_text() == "3 2 1[EXACT] 2 1 lcd=no fsd=no[EXACT]\n"
