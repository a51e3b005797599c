from fractions import Fraction

import pytest

from exact_arith import QQ
from poly_ratfunc import Poly, RatFunc
from elliptic import (
    WeierstrassCurve, CurvePoint, ModelTransform, PlaneCubicWithOrigin, ec_group, ec_invariants,
    point_add, point_mul, point_neg, rescale_model, transport_curve, transport_point,
    tangent_and_third, normalize_projective, proportional
)
from errors import PointNotOnCurve, SingularCurve, ZeroScale
from utils import seeded_rng

# y^2 = x^3 - 2，P = (3, 5) 生成其 Mordell-Weil 群
E = WeierstrassCurve.short(0, -2)
P = CurvePoint(3, 5)


def test_invariants_of_short_model():
    c4, c6, disc, j = ec_invariants(E)
    assert disc == -16 * 27 * 4
    assert c4 == 0 and j == 0
    assert E.is_short()
    with pytest.raises(SingularCurve):
        WeierstrassCurve.short(0, 0)


def test_doubling_by_tangent():
    assert point_add(E, P, P) == CurvePoint(Fraction(129, 100), Fraction(-383, 1000))
    assert ec_group('smul', E, P, 2) == point_mul(E, P, 2)


def test_inverse_and_identity():
    O = CurvePoint.infinity()
    assert point_add(E, P, point_neg(E, P)).is_infinity
    assert point_add(E, O, P) == P
    assert point_mul(E, P, 0).is_infinity
    assert point_mul(E, P, -3) == point_neg(E, point_mul(E, P, 3))


def test_group_law_is_associative_on_multiples():
    rng = seeded_rng(7)
    for _ in range(3):
        i, j, k = (rng.randint(1, 4) for _ in range(3))
        A, B, C = (point_mul(E, P, n) for n in (i, j, k))
        left = point_add(E, point_add(E, A, B), C)
        right = point_add(E, A, point_add(E, B, C))
        assert left == right == point_mul(E, P, i + j + k)
        assert E.contains(left)


def test_long_weierstrass_negation():
    F = WeierstrassCurve(1, 0, 1, -1, 0)
    Q = F.point(0, 0)
    minus = point_neg(F, Q)
    assert minus == CurvePoint(0, -1)
    assert F.contains(minus)
    assert point_add(F, Q, minus).is_infinity


def test_points_off_the_curve_are_rejected():
    with pytest.raises(PointNotOnCurve):
        E.point(1, 1)
    with pytest.raises(PointNotOnCurve):
        ec_group('add', E, P, CurvePoint(1, 1))


def test_rescaling_keeps_points_on_the_curve():
    F, (Q,) = rescale_model(E, [P], 2)
    assert F == WeierstrassCurve.short(0, -128)
    assert Q == CurvePoint(12, 40)
    assert F.contains(Q)
    with pytest.raises(ZeroScale):
        ModelTransform(0)


def test_transport_with_base_change_and_orientation():
    s = RatFunc.gen('s')
    curve = WeierstrassCurve.short(RatFunc.constant(0, 's'), s * s * s + 1)
    point = CurvePoint(-s, RatFunc.constant(1, 's'))
    assert curve.contains(point)
    T = ModelTransform(1, RatFunc(Poly([0, 2], 's')), -1, 's -> 2s')
    moved_curve = transport_curve(T, curve)
    moved = transport_point(T, point)
    assert moved == CurvePoint(-2 * s, RatFunc.constant(-1, 's'))
    assert moved_curve.contains(moved)


def test_curve_over_number_field():
    r2 = QQ.extend('r2', [-2, 0, 1]).gen('r2')
    F = WeierstrassCurve.short(0, 2)
    Q = F.point(0, r2)
    assert point_mul(F, Q, 3).is_infinity
    assert not point_mul(F, Q, 2).is_infinity


def test_tangent_third_point_on_plane_cubic():
    # y^2 z = x^3 - 2 z^3，原点 (0 : 1 : 0)
    C = PlaneCubicWithOrigin({(0, 2, 1): 1, (3, 0, 0): -1, (0, 0, 3): 2}, (0, 1, 0))
    line, third = tangent_and_third(C, tuple(map(Fraction, (3, 5, 1))))
    x, y, z = normalize_projective(third)
    assert (x, y, z) == (Fraction(129, 100), Fraction(383, 1000), 1)
    assert C.contains(third)
    assert proportional(third, (1290, 383, 1000))
    assert sum(l * p for l, p in zip(line, (3, 5, 1))) == 0


def test_discriminant_identity_on_random_curves():
    rng = seeded_rng(17)
    for _ in range(15):
        coeffs = [Fraction(rng.randint(-7, 7), rng.randint(1, 3)) for _ in range(5)]
        F = WeierstrassCurve(*coeffs, check=False)
        assert 1728 * F.discriminant == F.c4 ** 3 - F.c6 ** 2


def _curve_through(p, q):
    (x1, y1), (x2, y2) = p, q
    a4 = ((y1 * y1 - x1 ** 3) - (y2 * y2 - x2 ** 3)) / (x1 - x2)
    a6 = y1 * y1 - x1 ** 3 - a4 * x1
    return WeierstrassCurve.short(a4, a6, check=False)


def test_group_law_is_associative_on_random_triples():
    rng = seeded_rng(19)
    checked = 0
    while checked < 4:
        p, q = ((Fraction(rng.randint(-5, 5)), Fraction(rng.randint(1, 6))) for _ in range(2))
        if p[0] == q[0]:
            continue
        F = _curve_through(p, q)
        if not F.discriminant:
            continue
        G1, G2 = F.point(*p), F.point(*q)
        A, B, C = (point_add(F, point_mul(F, G1, rng.randint(-1, 2)), point_mul(F, G2, rng.randint(-1, 2)))
                   for _ in range(3))
        left = point_add(F, point_add(F, A, B), C)
        right = point_add(F, A, point_add(F, B, C))
        assert left == right
        assert F.contains(left)
        checked += 1
