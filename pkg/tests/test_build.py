import numpy as np
import pytest

from lcdcodes import build as bld
from lcdcodes.code import STRUCTURAL, from_generator, fsd_status, hull_dimension, is_self_dual
from lcdcodes.construct import (
    DesignIncidence,
    ValidationError,
    paley_conference,
    paley_type_I,
    row_subset_design,
    search_fq_weighing,
    skew_core,
    validate_design,
    validate_fq_weighing,
)
from lcdcodes.gfq import get_field
from lcdcodes.matq import Matrix, conj_transpose, det, det_rank_one_shift, matmul

QS = [2, 3, 4, 5, 7, 9]


def _check_law(res, hermitian=False):
    C = from_generator(res.G)
    hull = hull_dimension(C, hermitian=hermitian)
    if res.predicted == bld.LCD:
        assert hull == 0
    elif res.predicted == bld.SELF_DUAL:
        assert hull == C.k and 2 * C.k == C.n
    if res.G_bar is not None:
        Gb = conj_transpose(res.G_bar) if hermitian else res.G_bar.T
        assert not np.any(matmul(res.G, Gb).data)


def _fano():
    B = np.zeros((7, 7), dtype=np.int64)
    for j in range(7):
        for s in (0, 1, 3):
            B[(j + s) % 7, j] = 1
    return validate_design(Matrix(B), 3, 1)


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("name,W", [("P1(3)", paley_type_I(3)), ("P1(7)", paley_type_I(7)), ("conf(5)", paley_conference(5)),
                                    ("conf(9)", paley_conference(9))])
def test_plain_law(q, name, W):
    res = bld.build_plain(W, None, q)
    F = get_field(q)
    assert res.predicted == (bld.LCD if F.embed(W.m + 1) else bld.SELF_DUAL)
    _check_law(res)


def test_plain_small_examples():
    W = paley_type_I(3)
    assert bld.build_plain(W, None, 3).predicted == bld.LCD
    sd = bld.build_plain(W, None, 5)
    assert sd.predicted == bld.SELF_DUAL
    assert is_self_dual(from_generator(sd.G))
    # over GF(2): m even gives LCD, m odd gives self-dual
    assert bld.build_plain(W, None, 2).predicted == bld.LCD
    assert bld.build_plain(Matrix.identity(3), None, 2).predicted == bld.SELF_DUAL


@pytest.mark.parametrize("alpha,q,expected", [(0, 3, bld.LCD), (1, 3, bld.LCD), (2, 3, bld.LCD), (0, 5, bld.LCD),
                                              (1, 5, bld.SELF_DUAL), (4, 5, bld.SELF_DUAL), (2, 5, bld.LCD)])
def test_skew_small_examples(alpha, q, expected):
    res = bld.build_skew(skew_core(paley_type_I(3)), None, alpha, q)
    assert res.predicted == expected
    _check_law(res)


@pytest.mark.parametrize("pi", [3, 7, 11])
@pytest.mark.parametrize("q", QS)
def test_skew_variants_law(pi, q):
    H = paley_type_I(pi)
    for res in bld.sweep_alpha(bld.build_skew_hadamard, H, None, q):
        _check_law(res)
    for res in bld.sweep_alpha(bld.build_skew, skew_core(H), None, q):
        _check_law(res)


def test_skew_hadamard_trace():
    res = bld.build_skew_hadamard(paley_type_I(11), None, 4, 5)
    text = res.trace()
    assert "n+(α+1)²: 12+(4+1)^2=37≡2≠0" in text
    assert text.splitlines()[0] == "variant skew-hadamard over GF(5)"
    assert text.endswith("[24,12]_5 LCD\n")
    assert res.beta == (-(25 + 11)) % 5


def test_non_prime_alpha_has_no_integer_form():
    res = bld.build_skew_hadamard(paley_type_I(3), None, 5, 9)
    assert res.factors[0].integer is None
    assert "12+" not in res.factors[0].text()
    _check_law(res)


def test_zero_beta_is_noted():
    # beta = -((2+1)^2 + 3) = -12 = 0 mod 3
    res = bld.build_skew_hadamard(paley_type_I(3), None, 2, 3)
    assert res.beta == 0
    assert not res.dual_spans
    assert any("does not span" in n for n in res.notes)


def test_structural_fsd_when_beta_nonzero():
    res = bld.build_skew_hadamard(paley_type_I(7), None, 2, 3)
    assert res.predicted == bld.LCD and res.beta != 0 and res.dual_spans
    assert fsd_status(from_generator(res.G), cap=4) == (True, STRUCTURAL)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
@pytest.mark.parametrize("name,W", [("P1(3)", paley_type_I(3)), ("conf(5)", paley_conference(5))])
def test_design_gram_identity_and_determinant(q, name, W):
    t = W.n
    D = row_subset_design(_fano(), t)
    res = bld.build_plain(W, D, q)
    gram_z = W.W.data @ W.W.data.T + D.B.data @ D.B.data.T
    shift = D.r - D.lam + W.m
    expected = D.lam * np.ones((t, t), dtype=np.int64) + shift * np.eye(t, dtype=np.int64)
    assert np.array_equal(gram_z, expected)
    G = res.G
    gdet = det(matmul(G, G.T))
    F = get_field(q)
    assert gdet == det_rank_one_shift(F.embed(D.lam), F.embed(shift), t, F) == res.gram_det
    assert (res.predicted == bld.LCD) == (gdet != 0)
    _check_law(res)


@pytest.mark.parametrize("q", QS)
def test_skew_with_design(q):
    core = skew_core(paley_type_I(3))
    D = row_subset_design(_fano(), 4)
    for alpha in range(q):
        res = bld.build_skew(core, D, alpha, q)
        G = res.G
        assert (res.predicted == bld.LCD) == (det(matmul(G, G.T)) != 0)
        assert res.G_bar is None
        _check_law(res)


def test_orbit_builds():
    R = Matrix([[0, 2], [2, 0]])
    assert bld.orthogonal_weight(R) == 4
    for q in (3, 5, 7):
        res = bld.build_orbit(R, None, q)
        _check_law(res)
        assert res.predicted == (bld.LCD if (4 + 1) % q else bld.SELF_DUAL)
    S = skew_core(paley_type_I(3)).W
    for q in (3, 5, 7):
        for res in bld.sweep_alpha(bld.build_orbit_skew, S, None, q):
            _check_law(res)


def test_hermitian_builds():
    F4 = get_field(4)
    mono = validate_fq_weighing(Matrix([[2, 0], [0, 3]], F4))
    res = bld.build_hermitian(mono, None)
    assert res.predicted == bld.SELF_DUAL
    assert hull_dimension(from_generator(res.G), hermitian=True) == 2
    _check_law(res, hermitian=True)
    for n, m in [(2, 2), (4, 2), (3, 3), (5, 4)]:
        W = validate_fq_weighing(search_fq_weighing(n, m, 4, limit=1)[0], m)
        res = bld.build_hermitian(W, None)
        assert res.predicted == (bld.LCD if m % 2 == 0 else bld.SELF_DUAL)
        _check_law(res, hermitian=True)
    res3 = bld.build_hermitian(validate_fq_weighing(paley_type_I(3).W.to_field(3), 4), None)
    assert res3.predicted == bld.LCD
    _check_law(res3, hermitian=True)
    assert "det(GG*)" in res3.trace()


def test_build_errors():
    H = paley_type_I(3)
    with pytest.raises(bld.BuildError):
        bld.build_skew(H, None, 0, 3)
    with pytest.raises(bld.BuildError):
        bld.build_skew_hadamard(skew_core(H), None, 0, 3)
    with pytest.raises(bld.BuildError):
        bld.build_skew_hadamard(H, None, 3, 3)
    with pytest.raises(bld.BuildError):
        bld.build_plain(H, _fano(), 3)
    with pytest.raises(bld.BuildError):
        bld.build_plain(H, Matrix.identity(4), 3)
    with pytest.raises(bld.BuildError):
        bld.orthogonal_weight(Matrix([[1, 1], [0, 1]]))
    with pytest.raises(bld.BuildError):
        bld.build_orbit_skew(Matrix([[0, 2], [2, 0]]), None, 0, 3)
    with pytest.raises(bld.BuildError):
        bld.build_hermitian(Matrix([[1]], get_field(5)), None)
    with pytest.raises(bld.BuildError):
        bld.build_hermitian(Matrix([[1, 1], [0, 1]], get_field(4)), None)
    with pytest.raises(ValidationError):
        bld.build_plain(H, DesignIncidence(Matrix([[1, 1]]), 1, 0), 3)
