from fractions import Fraction

import pytest

import config
from exact_arith import QQ
from poly_ratfunc import Poly
from elliptic import CurvePoint, point_add, point_mul
from isogeny import build_family, build_j0, family_from_kernel, two_torsion, verify_isogeny
from named_examples import X323
from errors import SingularMember


@pytest.mark.parametrize("a, b", config.GENERIC_PAIRS)
def test_isogeny_identity_on_generic_pairs(a, b):
    fam = build_family(a, b)
    assert verify_isogeny(fam.E1, fam.E2, fam.phi)
    assert fam.ap == -3 * a
    assert fam.bp == Fraction(4 * a + 27 * b, 9)
    assert fam.phi.degree == 3


def test_kernel_is_the_point_at_x_zero(family_11):
    phi = family_11.phi
    assert phi.kernel_polynomial() == Poly([0, 0, 1], 'x1')
    assert phi(CurvePoint(0, 1)).is_infinity


def test_isogeny_is_a_homomorphism_on_rational_points():
    # (a, b) = (1, 1): x^3 + x^2 - 2x + 1，取 x = 1 时 y^2 = 1
    fam = build_family(1, 1)
    P = fam.E1.point(1, 1)
    Q = point_mul(fam.E1, P, 2)
    lhs = fam.phi(point_add(fam.E1, P, Q))
    rhs = point_add(fam.E2, fam.phi(P), fam.phi(Q))
    assert lhs == rhs
    assert fam.E2.contains(lhs)


def test_j0_quotient():
    E, EG, phi = build_j0(2)
    assert verify_isogeny(E, EG, phi)
    with pytest.raises(SingularMember):
        build_j0(0)


def test_singular_members_are_rejected():
    with pytest.raises(SingularMember):
        build_family(0, 1)
    with pytest.raises(SingularMember):
        build_family(1, 0)


def test_family_from_kernel_translates_to_normal_form():
    fam = family_from_kernel(1, -2, 0, 1)
    assert (fam.a, fam.b) == (1, 1)
    with pytest.raises(ValueError):
        family_from_kernel(1, -2, 1, 1)


def test_two_torsion_with_given_roots():
    # x^3 + a(x - b)^2 = (x - 4)(x - 9)(x - 36)：a = -49, b = 36/7
    fam = build_family(-49, Fraction(36, 7))
    data = two_torsion(fam, [4, 9, 36])
    assert data.tower == QQ
    for beta in data.betas:
        assert fam.E2.rhs(beta) == 0
    with pytest.raises(ValueError):
        two_torsion(fam, [1, 2, 3])


def test_two_torsion_extends_the_field(family_11):
    data = two_torsion(family_11)
    assert data.tower.degree == 6
    f1 = family_11.f1
    assert all(f1(alpha) == 0 for alpha in data.alphas)
    assert len(set(data.alphas)) == 3
    assert all(family_11.E2.rhs(beta) == 0 for beta in data.betas)


def test_x323_kernel_normalization_keeps_j():
    printed = X323.weierstrass_E1()
    r2 = printed.a2.tower.gen('r2')
    assert printed.j == 26125000 - 18473000 * r2
