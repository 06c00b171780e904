import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.special as sp
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import polynomial as P

from umbratrig.errors import ConvergenceError, DomainError, SupportMismatchError
from umbratrig.series_core import DerivOp, EvalConfig, SeriesFamily, Tag, apply_derivative, evaluate
from umbratrig.umbral_algebra import (
    LAGUERRE,
    ORDINARY,
    PHF03,
    SumFamily,
    SumTag,
    UmbralSequence,
    UnityRoots,
    bivariate_coeffs,
    embed,
    eval_on_sequence,
    hybrid_polynomial,
    j0_term,
    napier_term,
    phf_roots_average,
    scale,
    umbral_sum,
    weight,
    weight_matrix,
)

G = math.gamma


def rel(a, b):
    scale_ = max(abs(a), abs(b))
    return 0.0 if scale_ == 0 else abs(a - b) / scale_


def kernel_oracle(fam: SumFamily, n: int, r: int) -> float:
    """The printed kernels, evaluated term by term with stdlib gamma."""
    c = math.comb(n, r)
    a, b = fam.alpha, fam.beta
    if fam.tag is SumTag.ORDINARY:
        return c
    if fam.tag is SumTag.LAGUERRE:
        return c * c
    if fam.tag is SumTag.PHF03:
        return math.comb(3 * n, 3 * r)
    if fam.tag is SumTag.ALPHA:
        return c * G(n + a + 1) / (G(n - r + a + 1) * G(r + a + 1))
    if fam.tag is SumTag.AB:
        return (c * G(n + a + 1) * G(n + b + 1)
                / (G(n - r + a + 1) * G(r + a + 1) * G(n - r + b + 1) * G(r + b + 1)))
    if fam.tag is SumTag.AIRY:
        return (c * G(a + 2 / 3) * G(1 / 3) * G(n + a + 2 / 3) * G(n + 1 / 3)
                / (G(r + 1 / 3) * G(n - r + 1 / 3) * G(n - r + a + 2 / 3) * G(r + a + 2 / 3)))
    raise AssertionError(fam)


ALPHA_1 = SumFamily(SumTag.ALPHA, alpha=1.0)
FAMILIES = [
    ORDINARY,
    LAGUERRE,
    SumFamily(SumTag.ALPHA, alpha=0.5),
    SumFamily(SumTag.ALPHA, alpha=2.0),
    SumFamily(SumTag.AB, alpha=0.5, beta=2.0),
    PHF03,
    SumFamily(SumTag.AIRY, alpha=0.5),
    SumFamily(SumTag.AIRY, alpha=2.0),
]
ASSOCIATIVE = [f for f in FAMILIES if f.tag is not SumTag.AIRY] + [SumFamily(SumTag.AIRY, alpha=1.0)]


def rand_seq(rng, N, block=1):
    return UmbralSequence(rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1), block)


# --- kernels -----------------------------------------------------------------

def test_weight_examples():
    assert weight(LAGUERRE, 4, 2) == 36
    assert weight(PHF03, 2, 1) == 20
    for a in (0.5, 1.0, 2.0):
        for n in range(8):
            assert weight(SumFamily(SumTag.AIRY, alpha=a), n, 0) == pytest.approx(1.0, rel=1e-14)


def test_integral_weights_are_exact_ints():
    w = weight(LAGUERRE, 30, 15)
    assert isinstance(w, int) and w == math.comb(30, 15) ** 2


def test_weight_domain():
    with pytest.raises(DomainError):
        weight(LAGUERRE, 3, 4)
    with pytest.raises(DomainError):
        SumFamily(SumTag.ALPHA, alpha=-1.0)
    with pytest.raises(DomainError):
        SumFamily(SumTag.AIRY, alpha=0.0)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.tag.value)
def test_weights_match_printed_formula(fam):
    w = weight_matrix(fam, 30)
    for n in range(31):
        for r in range(n + 1):
            assert rel(w[n, r], kernel_oracle(fam, n, r)) <= 1e-12, (n, r)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.tag.value)
def test_weights_symmetric(fam):
    w = weight_matrix(fam, 40)
    for n in range(41):
        row = w[n, : n + 1]
        assert np.allclose(row, row[::-1], rtol=1e-13, atol=0)


def test_alpha_kernel_boundary_as_printed():
    # the printed kernels give w(n, 0) = 1/Gamma(a+1) (and the AB analog)
    for a in (0.5, 1.0, 2.0):
        fam = SumFamily(SumTag.ALPHA, alpha=a)
        for n in range(10):
            assert weight(fam, n, 0) == pytest.approx(1 / G(a + 1), rel=1e-14)
    fam = SumFamily(SumTag.AB, alpha=0.5, beta=2.0)
    assert weight(fam, 6, 0) == pytest.approx(1 / (G(1.5) * G(3.0)), rel=1e-14)
    seq = umbral_sum(embed(1.3, 6), embed(0.0, 6), SumFamily(SumTag.ALPHA, alpha=2.0))
    assert seq[4] == pytest.approx(1.3 ** 4 / G(3.0), rel=1e-14)


# --- sequences ---------------------------------------------------------------

def test_embed_examples():
    assert list(embed(2, 3).entries) == [1, 2, 4, 8]
    assert list(embed(0, 2).entries) == [1, 0, 0]
    assert np.allclose(embed(1j, 2).entries, [1, 1j, -1], atol=0)
    assert list(embed(2, 2, block=3).entries) == [1, 8, 64]
    assert embed(Fraction(1, 3), 3, exact=True)[3] == Fraction(1, 27)
    with pytest.raises(DomainError):
        embed(1, -1)


def test_umbral_sum_examples():
    assert umbral_sum(embed(1, 4), embed(1, 4), LAGUERRE)[2] == 6
    assert umbral_sum(embed(1, 4), embed(-1, 4), LAGUERRE)[3] == 0
    assert umbral_sum(embed(1j, 4), embed(-1j, 4), LAGUERRE)[2] == pytest.approx(2)
    assert umbral_sum(embed(2, 4), embed(3, 4), ORDINARY)[2] == 25
    assert umbral_sum(embed(1, 3, 3), embed(1, 3, 3), PHF03)[2] == 22


def test_order_is_min_of_inputs():
    assert umbral_sum(embed(1.0, 4), embed(2.0, 9), LAGUERRE).order == 4


def test_block_mismatch_rejected():
    with pytest.raises(DomainError):
        umbral_sum(embed(1, 3), embed(1, 3), PHF03)
    with pytest.raises(DomainError):
        umbral_sum(embed(1, 3, 3), embed(1, 3, 3), LAGUERRE)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.tag.value)
def test_commutativity(fam):
    rng = np.random.default_rng(11)
    a, b = rand_seq(rng, 25, fam.block), rand_seq(rng, 25, fam.block)
    ab = umbral_sum(a, b, fam).entries
    ba = umbral_sum(b, a, fam).entries
    assert np.allclose(ab, ba, rtol=1e-13, atol=0)


@pytest.mark.parametrize("fam", ASSOCIATIVE, ids=lambda f: f.tag.value)
def test_associativity(fam):
    rng = np.random.default_rng(5)
    a, b, c = (rand_seq(rng, 30, fam.block) for _ in range(3))
    left = umbral_sum(umbral_sum(a, b, fam), c, fam).entries
    right = umbral_sum(a, umbral_sum(b, c, fam), fam).entries
    for n in range(31):
        assert rel(left[n], right[n]) <= 1e-12, n


@settings(max_examples=40)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(0, 25))
def test_ordinary_is_newton_binomial(x, y, n):
    seq = umbral_sum(embed(x, n, exact=True), embed(y, n, exact=True), ORDINARY)
    assert seq[n] == (x + y) ** n


@settings(max_examples=40)
@given(st.floats(-2, 2), st.floats(-2, 2), st.integers(0, 8))
def test_phf03_matches_roots_average(x, y, n):
    seq = umbral_sum(embed(Fraction(x), 8, 3, exact=True), embed(Fraction(y), 8, 3, exact=True), PHF03)
    want = phf_roots_average(x, y, n)
    assert abs(float(seq[n]) - want) <= 1e-12 * max(1.0, abs(want))


@settings(max_examples=40)
@given(st.floats(-2, 2), st.floats(-2, 2), st.integers(0, 8))
def test_phf03_float_path_within_conditioning(x, y, n):
    # both sides cancel terms of size up to (|x| + |y|)**(3n)
    seq = umbral_sum(embed(x, 8, 3), embed(y, 8, 3), PHF03)
    scale_ = max(1.0, (abs(x) + abs(y)) ** (3 * n))
    assert abs(seq[n] - phf_roots_average(x, y, n)) <= 1e-14 * scale_


def test_roots_average_exact_for_real_input():
    x, y = sympy.Rational(13, 10), sympy.Rational(-13, 10)
    w = sympy.Rational(-1, 2) + sympy.sqrt(3) * sympy.I / 2
    for n in range(9):
        avg = sympy.nsimplify(sympy.expand(((x + y) ** (3 * n) + (x + w * y) ** (3 * n)
                                            + (x + sympy.conjugate(w) * y) ** (3 * n)) / 3))
        got = phf_roots_average(float(x), float(y), n)
        assert abs(got - float(avg)) <= 1e-9 * max(1.0, abs(float(avg)))
    assert phf_roots_average(2.0, -2.0, 7) == 0


# --- exact combinatorics --------------------------------------------------------

def central_binomial(n):
    return math.factorial(2 * n) // math.factorial(n) ** 2


def test_exact_one_plus_one():
    seq = umbral_sum(embed(1, 15, exact=True), embed(1, 15, exact=True), LAGUERRE)
    assert seq.exact
    assert [seq[n] for n in range(16)] == [central_binomial(n) for n in range(16)]


def test_exact_one_plus_minus_one():
    seq = umbral_sum(embed(1, 15, exact=True), embed(-1, 15, exact=True), LAGUERRE)
    for n in range(16):
        if n % 2:
            assert seq[n] == 0
        else:
            # i^n n!/((n/2)!)^2 with i^n = (-1)^(n/2)
            assert seq[n] == (-1) ** (n // 2) * math.factorial(n) // math.factorial(n // 2) ** 2


def test_exact_gaussian_pair():
    seq = umbral_sum(embed(sympy.I, 15, exact=True), embed(-sympy.I, 15, exact=True), LAGUERRE)
    for n in range(16):
        want = 0 if n % 2 else (-1) ** n * math.factorial(n) // math.factorial(n // 2) ** 2
        assert sympy.expand(seq[n] - want) == 0


def test_exact_phf03_one_plus_one():
    seq = umbral_sum(embed(1, 15, 3, exact=True), embed(1, 15, 3, exact=True), PHF03)
    for n in range(16):
        assert 3 * seq[n] == 2 ** (3 * n) + 2 * (-1) ** n


@pytest.mark.parametrize("x", [1, 5, -3, Fraction(3, 7)])
def test_exact_duplication_scale(x):
    seq = scale(2, x, LAGUERRE, 15, exact=True)
    for n in range(16):
        assert seq[n] == central_binomial(n) * Fraction(x) ** n


def test_hybrid_polynomial_exact_and_float():
    assert hybrid_polynomial(2, 3, 4) == sum(math.comb(4, r) ** 2 * 2 ** (4 - r) * 3 ** r
                                             for r in range(5))
    assert hybrid_polynomial(0.5, 0.25, 3) == pytest.approx(
        sum(math.comb(3, r) ** 2 * 0.5 ** (3 - r) * 0.25 ** r for r in range(4)))


# --- scale -----------------------------------------------------------------

def test_scale_examples():
    assert scale(2, 1, LAGUERRE, 5)[3] == 20
    assert scale(3, 1, LAGUERRE, 5)[1] == 3
    x = 0.37
    assert np.allclose(scale(1, x, LAGUERRE, 6).entries, embed(x, 6).entries, rtol=0, atol=0)


def test_scale_three_from_series_product():
    # coefficient of x^n (n!)^2 in le(x)^3 is (3 (x) 1)_n
    c = np.array([1 / math.factorial(n) ** 2 for n in range(12)])
    cube = P.polymul(P.polymul(c, c), c)[:12]
    seq = scale(3, 1, LAGUERRE, 11)
    for n in range(12):
        assert rel(seq[n], cube[n] * math.factorial(n) ** 2) < 1e-13


def test_scale_fold_order_irrelevant():
    base = embed(0.8, 20)
    right = umbral_sum(umbral_sum(base, base, LAGUERRE), base, LAGUERRE).entries
    assert np.allclose(scale(3, 0.8, LAGUERRE, 20).entries, right, rtol=1e-13, atol=0)


def test_scale_domain():
    with pytest.raises(DomainError):
        scale(0, 1.0)
    with pytest.raises(DomainError):
        scale(2, 1.0, ALPHA_1)


# --- evaluation on sequences -------------------------------------------------

def test_eval_on_embed_matches_eval():
    fam = SeriesFamily.lexp()
    for x in (0.3, -1.7, 2.5 + 0.5j):
        assert rel(eval_on_sequence(fam, embed(x, 80)).value, evaluate(fam, x).value) < 1e-15


def test_semigroup_laguerre_example():
    fam = SeriesFamily.lexp()
    lhs = eval_on_sequence(fam, umbral_sum(embed(0.4, 60), embed(0.7, 60), LAGUERRE)).value
    assert rel(lhs, evaluate(fam, 0.4).value * evaluate(fam, 0.7).value) < 1e-14


def test_duplication_example():
    seq = scale(2, 1.0, LAGUERRE, 60)
    c1 = evaluate(SeriesFamily(Tag.LCOS), 1.0).value
    s1 = evaluate(SeriesFamily(Tag.LSIN), 1.0).value
    assert rel(eval_on_sequence(SeriesFamily(Tag.LCOS), seq).value, c1 * c1 - s1 * s1) < 1e-13


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_semigroup_alpha(a):
    fam = SeriesFamily.lexp_alpha(a)
    for x, y in ((0.4, 0.7), (-1.5, 2.0), (1.9, 1.9)):
        seq = umbral_sum(embed(x, 60), embed(y, 60), SumFamily(SumTag.ALPHA, alpha=a))
        lhs = eval_on_sequence(fam, seq).value
        assert abs(lhs - evaluate(fam, x).value * evaluate(fam, y).value) < 1e-13


def test_semigroup_phf03():
    fam = SeriesFamily.phf(0, 3)
    for x, y in ((0.4, 0.7), (-1.5, 2.0)):
        seq = umbral_sum(embed(x, 40, 3), embed(y, 40, 3), PHF03)
        lhs = eval_on_sequence(fam, seq).value
        assert rel(lhs, evaluate(fam, x).value * evaluate(fam, y).value) < 1e-13


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_semigroup_airy(a):
    fam = SeriesFamily.g_alpha(a)
    seq = umbral_sum(embed(0.9, 40, 3), embed(1.4, 40, 3), SumFamily(SumTag.AIRY, alpha=a))
    lhs = eval_on_sequence(fam, seq).value
    assert rel(lhs, evaluate(fam, 0.9).value * evaluate(fam, 1.4).value) < 1e-13


def test_support_mismatch():
    with pytest.raises(SupportMismatchError):
        eval_on_sequence(SeriesFamily(Tag.LCOS), embed(1.0, 10, 3))
    with pytest.raises(SupportMismatchError):
        eval_on_sequence(SeriesFamily.phf(1, 3), embed(1.0, 10, 3))


def test_short_sequence_raises():
    with pytest.raises(ConvergenceError):
        eval_on_sequence(SeriesFamily.lexp(), embed(5.0, 4))


# --- PDE of the hybrid polynomials -------------------------------------------

def test_laguerre_pde_of_hybrid_polynomials():
    rng = np.random.default_rng(2024)
    pts = rng.uniform(0, 2, size=(20, 2))
    ld = DerivOp("LD")
    for n in range(11):
        grid = bivariate_coeffs(LAGUERRE, n)
        dx = apply_derivative(grid, ld, axis=0)
        dy = apply_derivative(grid, ld, axis=1)
        for x, y in pts:
            vx = P.polyval2d(x, y, dx) if dx.size else 0.0
            vy = P.polyval2d(x, y, dy) if dy.size else 0.0
            assert abs(vx - vy) <= 1e-10 * max(1.0, abs(vx))
        # boundary data
        assert P.polyval2d(1.7, 0.0, grid) == pytest.approx(1.7 ** n)


# --- limits --------------------------------------------------------------------

def j0_oracle(x: float, terms: int = 40) -> float:
    return float(sum(Fraction(-1) ** r * (Fraction(x) / 2) ** (2 * r) / math.factorial(r) ** 2
                     for r in range(terms)))


def test_napier_examples():
    assert napier_term(1, 1) == 2
    assert napier_term(0, 7) == 1
    assert napier_term(1, 100) == pytest.approx(2.2795853, abs=2e-2)
    with pytest.raises(DomainError):
        napier_term(1, 0)


def test_napier_brute_force():
    for n in (1, 5, 20):
        want = sum(Fraction(math.comb(n, r) ** 2, n ** (2 * r)) for r in range(n + 1))
        assert napier_term(1, n) == pytest.approx(float(want), rel=1e-14)


def test_j0_examples():
    assert j0_term(0, 9) == 1
    assert j0_oracle(1) == pytest.approx(sp.j0(1), abs=1e-15)
    assert j0_term(1, 400) == pytest.approx(0.7652, abs=5e-3)
    errs = [abs(j0_term(2, n) - j0_oracle(2)) for n in (5, 10, 20, 40, 80)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    deltas = [abs(j0_term(2, n) - j0_term(2, 2 * n)) for n in (5, 10, 20, 40)]
    assert all(b < a for a, b in zip(deltas, deltas[1:]))


# --- roots of unity -------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 4, 5, 7])
def test_unity_roots(m):
    roots = UnityRoots(m)
    assert np.allclose(roots.values ** m, 1, atol=1e-14)
    for k in range(2 * m + 1):
        want = m if k % m == 0 else 0
        assert abs(roots.power_sum(k) - want) < 1e-13


def test_unity_roots_domain():
    with pytest.raises(DomainError):
        UnityRoots(1)


def test_roots_average_examples():
    assert phf_roots_average(1, 1, 1) == pytest.approx(2)
    assert phf_roots_average(1, 1, 2) == pytest.approx(22)
    assert phf_roots_average(1.3, 0, 3) == pytest.approx(1.3 ** 9)
    assert phf_roots_average(cmath.exp(0.2j), 0.5, 0) == pytest.approx(1)
