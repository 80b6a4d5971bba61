import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crsym.algebra import (
    DimensionError,
    GaussRational,
    HoloPoly,
    MixedPoly,
    conjugate,
    det,
    in_span,
    kernel_basis,
    partial,
    poly_mul,
    rank,
    solve_unique,
    sparse_kernel_basis,
)
from crsym.model import PQRSpec

import oracles
from strategies import gauss, holo_polys, mixed_polys, nonzero_gauss


# -- Gaussian rationals ---------------------------------------------------


@given(gauss, gauss, gauss)
def test_gauss_field_axioms(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == GaussRational(0)


@given(gauss, gauss)
def test_gauss_matches_pair_arithmetic(x, y):
    assert oracles.from_gauss(x * y) == oracles.cmul(oracles.from_gauss(x), oracles.from_gauss(y))
    assert oracles.from_gauss(x + y) == oracles.cadd(oracles.from_gauss(x), oracles.from_gauss(y))


@given(gauss)
def test_conjugate_involution_and_norm(x):
    assert x.conjugate().conjugate() == x
    assert x * x.conjugate() == GaussRational(x.norm())


@given(gauss, nonzero_gauss)
def test_division_inverts_multiplication(x, y):
    assert (x / y) * y == x


@given(gauss)
def test_encode_roundtrip(x):
    enc = x.encode()
    assert all(isinstance(v, int) for v in enc)
    assert GaussRational.decode(enc) == x


def test_gauss_normal_form_and_hash():
    assert GaussRational(Fraction(2, 4), Fraction(3, 6)) == GaussRational(Fraction(1, 2), Fraction(1, 2))
    assert hash(GaussRational(2)) == hash(GaussRational(Fraction(4, 2)))
    assert str(GaussRational(Fraction(1, 3), Fraction(2, 3))) == "(1/3+2/3i)"
    with pytest.raises(ZeroDivisionError):
        GaussRational(1) / GaussRational(0)


# -- polynomials ----------------------------------------------------------


def test_poly_mul_examples():
    z1, zb1 = MixedPoly.z(2, 0), MixedPoly.zbar(2, 0)
    assert poly_mul(z1, zb1) == MixedPoly.monomial(2, (1, 0), (1, 0))
    assert poly_mul(z1 + zb1, MixedPoly.zero(2)).is_zero()
    assert (z1 + zb1) ** 2 == z1 * z1 + (z1 * zb1).scale(2) + zb1 * zb1
    assert str((z1 + zb1) ** 2) == "z1^2 + 2*z1*zb1 + zb1^2"


def test_poly_context_mismatch():
    with pytest.raises(DimensionError):
        poly_mul(MixedPoly.z(2, 0), MixedPoly.z(3, 0))
    with pytest.raises(DimensionError):
        HoloPoly.z(2, 0) + MixedPoly.z(2, 0)


def test_no_stored_zeros():
    p = MixedPoly(2, [(((1, 0), (0, 1), 0), 1), (((1, 0), (0, 1), 0), -1)])
    assert p.is_zero() and len(p) == 0
    q = HoloPoly.z(2, 0) - HoloPoly.z(2, 0)
    assert q.terms == {}


def test_conjugate_examples():
    p = MixedPoly.monomial(2, (1, 0), (0, 1), 0, GaussRational(2, 3))
    assert conjugate(p) == MixedPoly.monomial(2, (0, 1), (1, 0), 0, GaussRational(2, -3))
    real = MixedPoly.monomial(2, (1, 0), (1, 0)) + p + p.conjugate()
    assert real.is_real() and conjugate(real) == real


def test_partial_examples():
    p = HoloPoly.monomial(3, (1, 1, 2))
    assert partial(p, 0) == HoloPoly.monomial(3, (0, 1, 2))
    assert partial(HoloPoly.monomial(3, (0, 3, 0)), 0).is_zero()
    assert partial(p, 2) == HoloPoly.monomial(3, (1, 1, 1), c=2)
    # the last slot is w
    assert partial(HoloPoly.monomial(3, (1, 0, 0), 2), 3) == HoloPoly.monomial(3, (1, 0, 0), 1, c=2)


def test_det_examples():
    spec = PQRSpec((1, 1, 2), (2, 1, 3), (1, 1, 3))
    jac = det([[f.partial(k) for k in range(3)] for f in (spec.P(), spec.Q(), spec.R())])
    assert jac == HoloPoly.monomial(3, (3, 2, 7), c=-1)
    one, zero = HoloPoly.constant(3, 1), HoloPoly.zero(3)
    for size in (1, 2, 3, 4):
        ident = [[one if i == j else zero for j in range(size)] for i in range(size)]
        assert det(ident) == one
    x = HoloPoly.z(3, 0)
    assert det([[x, one], [zero, zero]]).is_zero()
    with pytest.raises(DimensionError):
        det([[x, one]])


@given(mixed_polys(), mixed_polys(), mixed_polys())
def test_mixed_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert (p + q) - q == p


@given(holo_polys(), holo_polys(), holo_polys())
def test_holo_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert (p + q) * r == p * r + q * r


@given(mixed_polys(), mixed_polys())
def test_conjugate_is_anti_automorphism(p, q):
    # commutative ring, so "anti" and ordinary automorphism coincide
    assert conjugate(p * q) == conjugate(p) * conjugate(q)
    assert conjugate(p + q) == conjugate(p) + conjugate(q)
    assert conjugate(conjugate(p)) == p
    s = p + conjugate(p)
    assert s.is_real() and conjugate(s) == s


@given(holo_polys(n=3), holo_polys(n=3), st.integers(0, 3))
def test_leibniz(p, q, var):
    assert partial(p * q, var) == partial(p, var) * q + p * partial(q, var)


@given(mixed_polys(n=2), mixed_polys(n=2), st.randoms(use_true_random=False))
def test_product_evaluates_pointwise(p, q, rng):
    for z, u in oracles.sample_points(2, 2, rng):
        lhs = oracles.eval_mixed(p * q, z, u)
        rhs = oracles.cmul(oracles.eval_mixed(p, z, u), oracles.eval_mixed(q, z, u))
        assert lhs == rhs


@given(mixed_polys(n=2, with_u=False))
def test_degree_is_termwise_max(p):
    expected = max((sum(a) + sum(b) for a, b, _ in p), default=None)
    if expected is not None:
        assert p.degree() == expected


# -- kernels --------------------------------------------------------------


def _random_matrix(rng, rows, cols):
    density = rng.choice([0.3, 0.6, 1.0])
    return [
        [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) if rng.random() < density else Fraction(0) for _ in range(cols)]
        for _ in range(rows)
    ]


def _matvec(m, v):
    return [sum(Fraction(a) * b for a, b in zip(row, v)) for row in m]


def test_kernel_examples():
    assert kernel_basis([[1, 1]]) == [(1, -1)]
    assert kernel_basis([[1, 0], [0, 1]]) == []
    assert kernel_basis([[0, 0, 0]]) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_kernel_against_dense_oracle():
    rng = random.Random(20240601)
    for _ in range(200):
        r, cols = rng.randint(1, 12), rng.randint(1, 20)
        m = _random_matrix(rng, r, cols)
        ker = kernel_basis(m, cols)
        for v in ker:
            assert all(x == 0 for x in _matvec(m, v))
            nz = [x for x in v if x]
            assert nz and nz[0] > 0
        ref = oracles.dense_nullspace(m, cols)
        assert len(ker) == len(ref) == cols - oracles.dense_rank(m, cols)
        if ker:
            assert oracles.same_span(ker, ref, cols)
        assert rank(m, cols) == oracles.dense_rank(m, cols)


def test_random_six_by_nine():
    rng = random.Random(7)
    m = _random_matrix(rng, 6, 9)
    ker = kernel_basis(m)
    assert len(ker) == 9 - oracles.dense_rank(m, 9)
    assert oracles.dense_rank(ker, 9) == len(ker)


def test_sparse_kernel_equals_dense():
    rng = random.Random(99)
    for _ in range(100):
        r, cols = rng.randint(1, 12), rng.randint(1, 20)
        m = _random_matrix(rng, r, cols)
        columns = [{i: m[i][j] for i in range(r) if m[i][j]} for j in range(cols)]
        assert sparse_kernel_basis(columns, cols) == kernel_basis(m, cols)


def test_in_span_and_solve_unique():
    assert in_span([[1, 2, 3], [0, 1, 1]], [2, 5, 7])
    assert not in_span([[1, 2, 3]], [0, 1, 0])
    x = solve_unique([[2, 1], [1, 3]], [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    assert solve_unique([[1, 2], [2, 4]], [1, 2]) is None
