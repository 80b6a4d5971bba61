from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crsym import catalog
from crsym.algebra import GaussRational, HoloPoly, MixedPoly
from crsym.fields import (
    UndefinedWeight,
    VectorField,
    apply,
    grading_element,
    lie_bracket,
    tangency_residual,
    weight_of,
)
from crsym.grading import ansatz_keys, full_algebra
from crsym.model import ModelSurface

import oracles
from strategies import fields, fractions

ODD = catalog.odd_family_model()


def _homogeneous_fields(n=3, d=4):
    """Random fields made of monomials of one weight."""

    @st.composite
    def build(draw):
        j = draw(st.integers(0, 2 * d))
        mu = Fraction(j, d) - 1
        keys = ansatz_keys(mu, n, d)
        chosen = draw(st.lists(st.sampled_from(keys), min_size=1, max_size=3, unique=True))
        comps = [dict() for _ in range(n + 1)]
        for slot, a, m in chosen:
            comps[slot][(a, m)] = draw(st.builds(GaussRational, st.integers(1, 5), st.integers(-3, 3)))
        polys = [HoloPoly(n, c) for c in comps]
        return VectorField(polys[:n], polys[n]), mu

    return build()


def test_weight_examples():
    assert weight_of(VectorField.d_dw(3), 4) == -1
    for d in (2, 4, 7):
        assert weight_of(grading_element(3, d), d) == 0
    x = VectorField.d_dz(3, 0, HoloPoly.monomial(3, (0, 1, 1)))
    assert weight_of(x, 4) == Fraction(1, 4)
    mixed = VectorField.d_dz(3, 0) + VectorField.d_dw(3)
    assert weight_of(mixed, 4) is None
    with pytest.raises(UndefinedWeight):
        weight_of(VectorField.zero(3), 4)


def test_apply_examples():
    z1, z2 = HoloPoly.z(3, 0), HoloPoly.z(3, 1)
    x = VectorField.d_dz(3, 0, z2)
    assert apply(x, z1 * z2 * z2) == z2 * z2 * z2
    E = grading_element(3, 4)
    assert apply(E, HoloPoly.w(3)) == HoloPoly.w(3)
    assert apply(E, HoloPoly.monomial(3, (1, 2, 1))) == HoloPoly.monomial(3, (1, 2, 1))
    # the second family of the odd model: -(a + ib) z2 z3 d/dz1 + ...
    a_ib = GaussRational(2, 5)
    x2 = VectorField.d_dz(3, 0, HoloPoly.monomial(3, (0, 1, 1), c=-a_ib)) + VectorField.d_dz(
        3, 2, HoloPoly.monomial(3, (0, 2, 0), c=a_ib.conjugate())
    )
    assert apply(x2, z1) == HoloPoly.monomial(3, (0, 1, 1), c=-a_ib)


def test_residual_examples():
    assert tangency_residual(VectorField.d_dw(3), ODD).is_zero()
    m = catalog.imag_diagonal_model()
    assert tangency_residual(catalog.imag_diagonal_rotation(), m).is_zero()
    quad = ModelSurface(MixedPoly.monomial(1, (1,), (1,)))
    r = tangency_residual(VectorField.d_dz(1, 0), quad)
    assert r == -(MixedPoly.z(1, 0) + MixedPoly.zbar(1, 0))
    r = tangency_residual(VectorField.d_dz(3, 0), ODD)
    assert not r.is_zero()


def test_grading_element_is_tangent():
    for m in (catalog.gc3_model(), ODD, catalog.imag_diagonal_model()):
        assert tangency_residual(grading_element(m.n, m.d), m).is_zero()


def test_bracket_examples():
    E = grading_element(3, 4)
    dw = VectorField.d_dw(3)
    assert lie_bracket(dw, E) == dw
    assert lie_bracket(E, E).is_zero()
    lam = [Fraction(1, 2), Fraction(1, 6), Fraction(1, 3)]
    w = HoloPoly.w(3)
    Y = VectorField(
        [(HoloPoly.z(3, j) * w).scale(lam[j]) for j in range(3)], (w * w).scale(Fraction(1, 2))
    )
    expected = VectorField([HoloPoly.z(3, j).scale(lam[j]) for j in range(3)], w)
    assert lie_bracket(dw, Y) == expected
    diff = E - lie_bracket(dw, Y)
    assert diff == VectorField.linear([[Fraction(1, 4) - lam[j] if j == k else 0 for k in range(3)] for j in range(3)])


@given(fields(), st.randoms(use_true_random=False))
def test_residual_matches_pointwise_oracle(x, rng):
    r = tangency_residual(x, ODD)
    assert r.is_real()
    for z, u in oracles.sample_points(3, 2, rng):
        val = oracles.eval_mixed(r, z, u)
        assert val == (oracles.residual_at(x, ODD.phi, z, u), 0)


@given(fields(), fields(), fractions, fractions)
def test_residual_real_linear(x, y, a, b):
    lhs = tangency_residual(x.scale(a) + y.scale(b), ODD)
    rhs = tangency_residual(x, ODD).scale(a) + tangency_residual(y, ODD).scale(b)
    assert lhs == rhs


@given(fields(top_w=1), fields(top_w=1), fields(top_w=0))
def test_jacobi_and_antisymmetry(x, y, z):
    br = lie_bracket
    assert br(x, y) == -br(y, x)
    total = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
    assert total.is_zero()


@given(_homogeneous_fields(), _homogeneous_fields())
def test_weight_additive(xa, yb):
    (x, mu), (y, nu) = xa, yb
    assert weight_of(x, 4) == mu and weight_of(y, 4) == nu
    b = lie_bracket(x, y)
    if not b.is_zero():
        assert weight_of(b, 4) == mu + nu


def test_bracket_of_tangent_fields_is_tangent():
    report = full_algebra(catalog.split_nilpotent_model(), check_closure=False)
    basis = [x for c in report.components for x in c.basis]
    for i, x in enumerate(basis):
        for y in basis[i + 1:]:
            assert tangency_residual(lie_bracket(x, y), report.model).is_zero()


def test_linear_matrix_roundtrip():
    m = [[GaussRational(1, 2), 0, 3], [0, 0, GaussRational(0, 1)], [5, 0, 0]]
    x = VectorField.linear(m)
    assert x.linear_matrix() == [[GaussRational(v) if not isinstance(v, GaussRational) else v for v in row] for row in m]
    assert x.is_rigid()
