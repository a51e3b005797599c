from fractions import Fraction

import pytest

from exact_arith import QQ
from poly_ratfunc import (
    Poly, RatFunc, Place, TruncatedSeries, poly_gcd, poly_resultant, poly_arith, coprime_basis,
    rational_roots, substitute, valuation, rewrite_in_power, value_to_json, value_from_json
)
from errors import DivisionByZero, NotInSubfield, ZeroFunction
from utils import seeded_rng


x = Poly.gen('x')


def test_poly_ring_operations():
    assert (x + 1) ** 2 == Poly([1, 2, 1])
    q, r = divmod(Poly([1, 0, 0, 1]), Poly([1, 1]))
    assert q == Poly([1, -1, 1]) and not r
    assert Poly([1, 0, 0, 1]) % Poly([0, 1]) == 1
    assert Poly([3, 0, 1])(2) == 7
    with pytest.raises(DivisionByZero):
        divmod(x, Poly([]))


def test_gcd_and_resultant():
    assert poly_gcd(Poly([-1, 0, 1]), Poly([1, 2, 1])) == Poly([1, 1])
    assert poly_resultant(Poly([-2, 0, 1]), Poly([-1, 1])) == -1
    assert poly_arith('gcd', Poly([-1, 0, 1]), Poly([-1, 1])) == Poly([-1, 1])
    with pytest.raises(ValueError):
        poly_arith('add', Poly.gen('x'), Poly.gen('y'))


def test_coprime_basis_splits_common_factors():
    basis = coprime_basis([Poly([-1, 0, 1]), Poly([1, 2, 1])])
    assert {tuple(b.coeffs) for b in basis} == {(1, 1), (-1, 1)}


def test_rational_roots_of_split_cubic():
    assert rational_roots(Poly([-6, 11, -6, 1])) == [1, 2, 3]
    assert rational_roots(Poly([-2, 0, 1])) == []


def test_ratfunc_is_normalized():
    f = RatFunc(Poly([-1, 0, 1]), Poly([-2, 2]))
    assert f.den == Poly([1])
    assert f.num == Poly([Fraction(1, 2), Fraction(1, 2)])
    t = RatFunc.gen('t')
    assert (t + 1 / t) * t == t * t + 1
    assert (1 / t).inverse() == t
    with pytest.raises(DivisionByZero):
        RatFunc(1, Poly([], 'x'))


def test_ratfunc_with_field_coefficients():
    r2 = QQ.extend('r2', [-2, 0, 1]).gen('r2')
    s = RatFunc.gen('s')
    f = (s - r2) * (s + r2)
    assert f == s * s - 2
    assert f(r2) == 0


def test_substitute_general_and_special_images():
    t = RatFunc.gen('t')
    assert substitute(x * x, t + 1) == RatFunc(Poly([1, 2, 1], 't'))
    assert substitute(x * x, 3) == 9
    assert substitute(RatFunc(Poly([1, 1], 'x')), 2 * t) == 2 * t + 1
    assert substitute(RatFunc(Poly([1, 1], 'x')), 1 / t) == (t + 1) / t


def test_valuations_at_places():
    f = RatFunc(Poly([0, 0, 1]), Poly([-1, 1]))
    assert valuation(f, Place.at(0, 'x')) == 2
    assert valuation(f, Place.at(1, 'x')) == -1
    assert valuation(f, Place.infinity('x')) == -1
    assert str(Place.at(2, 't')) == "t=2"
    assert str(Place.infinity('s')) == "s=oo"
    with pytest.raises(ZeroFunction):
        valuation(RatFunc(0, var='x'), Place.at(0, 'x'))


def test_rewrite_in_power():
    u = RatFunc.gen('u')
    s = RatFunc.gen('s')
    f = u ** 6 + 1 / u ** 6
    assert rewrite_in_power(f, 6, 's') == s + 1 / s
    w = QQ.extend('w', [1, 1, 1]).gen('w')
    assert rewrite_in_power(f, 6, 's', zeta=-w) == s + 1 / s
    with pytest.raises(NotInSubfield):
        rewrite_in_power(u ** 3, 6, 's')
    with pytest.raises(NotInSubfield):
        rewrite_in_power(u ** 3 + u ** 6, 3, 't', zeta=-w)


def test_truncated_series_inverse():
    h = TruncatedSeries.variable(0, 4)
    geometric = 1 / (1 - h)
    assert geometric.coeffs == [1, 1, 1, 1]
    assert (h * h).valuation() == 2


def test_value_json_keeps_tower_coefficients():
    r3 = QQ.extend('r3', [-3, 0, 1]).gen('r3')
    t = RatFunc.gen('t')
    f = (t - r3) / (t * t + 1)
    assert value_from_json(value_to_json(f)) == f
    assert value_from_json(value_to_json(Fraction(-2, 7))) == Fraction(-2, 7)


def _random_poly(rng, degree):
    return Poly([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(degree + 1)])


def test_ratfunc_canonical_form_on_random_quotients():
    rng = seeded_rng(13)
    for _ in range(12):
        num, den, common = _random_poly(rng, 3), _random_poly(rng, 2), _random_poly(rng, 1)
        if not den or not common:
            continue
        f = RatFunc(num * common, den * common)
        assert f.den.lc == 1
        assert poly_gcd(f.num, f.den).degree == 0
        assert f == RatFunc(num, den)
        assert f.num * den == num * f.den
