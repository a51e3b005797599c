import pytest

import config
import inose_construct
from poly_ratfunc import Poly, valuation, Place
from isogeny import build_family
from inose_construct import (
    build_surface, build_weier_f6, build_cubic_model, family_surface, invariants_from_cubics,
    obar_point, obar_section, verify_psi, check_psi_specialization, weier_f6_coeffs, TransformPsi
)
from errors import UnsupportedN, SingularInput, IndeterminateForm
from utils import seeded_rng


def test_invariants_of_a_pair_of_cubics():
    f1 = Poly([0, -1, 0, 1], 'x1')   # x^3 - x
    f2 = Poly([1, 0, 0, 1], 'x2')    # x^3 + 1
    data = invariants_from_cubics(f1, f2)
    assert data.A == 0
    assert data.D1 == 64
    assert data.D2 == -432
    with pytest.raises(SingularInput):
        invariants_from_cubics(Poly([0, 0, 0, 1], 'x1'), f2)


def test_surface_shape_for_each_n(family_11):
    data = invariants_from_cubics(family_11.f1, family_11.f2)
    for n in (1, 2, 6):
        S = build_surface(data, n)
        a6 = S.curve.a6
        assert S.var == {1: 's', 2: 't', 6: 'u'}[n]
        assert a6.den == Poly.monomial(1, n, S.var)
        assert a6.num.degree == 2 * n
        assert S.curve.a4 == -data.A / 3
    with pytest.raises(UnsupportedN):
        build_surface(data, 7)


@pytest.mark.parametrize("a, b", config.GENERIC_PAIRS)
def test_closed_form_of_F6_matches_invariants(a, b):
    fam = build_family(a, b)
    S = build_weier_f6(fam)
    assert S.curve == family_surface(fam, 6).curve


def test_F6_coefficient_has_poles_of_order_six(family_11):
    W4, W6 = weier_f6_coeffs(family_11)
    assert valuation(W6, Place.at(0, 'u')) == -6
    assert valuation(W6, Place.infinity('u')) == -6


@pytest.mark.parametrize("a, b", config.GENERIC_PAIRS[:3])
def test_psi_maps_the_cubic_into_F6(a, b):
    assert verify_psi(build_family(a, b))


def test_psi_specialization_at_random_points(family_11):
    rng = seeded_rng(11)
    for _ in range(4):
        u0, x1 = rng.randint(2, 9), rng.randint(1, 9)
        assert check_psi_specialization(family_11, u0, x1)


def test_psi_specialization_over_a_number_field(q_sqrt2):
    fam = build_family(1 + q_sqrt2.gen('r2'), 1)
    assert check_psi_specialization(fam, 3, 2)


def test_psi_specialization_detects_a_wrong_target(family_11, monkeypatch):
    W4, W6 = weier_f6_coeffs(family_11)
    monkeypatch.setattr(inose_construct, 'weier_f6_coeffs', lambda fam: (W4, W6 + 1))
    assert not check_psi_specialization(family_11, 2, 1)


def test_psi_specialization_needs_a_checked_point(family_11, monkeypatch):
    monkeypatch.setattr(TransformPsi, 'numerators', lambda self, x1, x2, u, z: (x1, x2, 0 * u))
    with pytest.raises(IndeterminateForm):
        check_psi_specialization(family_11, 2, 1)


def test_cubic_model_contains_origin(family_11):
    C = build_cubic_model(family_11)
    assert C.contains(C.origin)
    x1, x2 = obar_point(family_11)
    assert C.contains((x1, x2, 1))


def test_obar_section_lies_on_F6(family_11):
    F6 = build_weier_f6(family_11).curve
    P = obar_section(family_11)
    assert not P.is_infinity
    assert F6.contains(P)

