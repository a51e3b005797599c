from fractions import Fraction

import pytest

import config
from poly_ratfunc import Poly, RatFunc, poly_resultant, rewrite_in_power
from elliptic import point_mul
from isogeny import build_family
from exact_arith import QQ, FieldAutomorphism
from inose_construct import cubic_affine, family_surface, build_psi, build_weier_f6
from section_solver import (
    nullspace, solve_conic, sixth_point, q4_points, intersection_degrees, section_F1, section_F2, sections_Rij,
    closed_form_P1, closed_form_P2, cm_image, galois_image, group_combination, map_parallel, ConicCoeffs,
    DescendedSection, _eliminate_x2, _clear_denominators, _omega_for
)
from errors import DegenerateSystem, ImageOffCurve, NotInSubfield


def test_nullspace_of_rank_one_matrix():
    rows = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    basis = nullspace(rows)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in rows)


def test_nullspace_of_integer_rows_is_rational():
    basis = nullspace([[1, 2, 3]])
    assert basis == [[-2, 1, 0], [-3, 0, 1]]
    assert all(isinstance(x, Fraction) for v in basis for x in v)
    assert nullspace([[1, 0], [0, 1]]) == []


def test_nullspace_over_a_number_field(q_sqrt2):
    r2 = q_sqrt2.gen('r2')
    rows = [[1, r2], [r2, 2]]
    basis = nullspace(rows)
    assert len(basis) == 1
    assert basis[0][1] == 1
    assert all(sum(r * x for r, x in zip(row, basis[0])) == 0 for row in rows)


def test_conic_needs_a_nonzero_coefficient():
    with pytest.raises(DegenerateSystem):
        ConicCoeffs((0, 0, 0, 0, 0, 0))


def test_intersection_multiplicities(family_11):
    conic = solve_conic(family_11, 1)
    assert intersection_degrees(family_11, conic, 1) == {'divisor': 3, 'origin': 2, 'residual': 1}


def test_eliminant_is_a_resultant_in_x2(family_11):
    conic = solve_conic(family_11, 1)
    R, _, _ = _eliminate_x2(family_11, conic)
    c1, c2, c3, c4, c5, c6 = _clear_denominators(conic)
    ap, bp = family_11.ap, family_11.bp
    u6 = RatFunc.gen('u') ** 6
    for x1 in (Fraction(2), Fraction(-1, 3)):
        q = Poly([c1 * x1 * x1 + c4 * x1 + c6, c2 * x1 + c5, c3], 'x2')
        cubic = Poly([ap * bp * bp - u6 * family_11.f1(x1), -2 * ap * bp, ap, 1], 'x2')
        assert poly_resultant(q, cubic) * c3 * c3 == R(x1)


def test_sixth_point_ignores_the_conic_gauge(family_11, monkeypatch):
    monkeypatch.setitem(config.SOLVER_CONFIG, 'check_gauge', True)
    conic = solve_conic(family_11, 1)
    u = RatFunc.gen('u')
    plus = sixth_point(family_11, conic, 1)
    for scale in (u + 1, 3 * u * u - 2, Fraction(5, 7)):
        assert sixth_point(family_11, conic.scaled(scale), 1) == plus
    assert q4_points(family_11)[0] == plus


def test_sixth_point_lies_on_cubic_and_conic(family_11):
    conic = solve_conic(family_11, 1)
    x1, x2 = sixth_point(family_11, conic, 1)
    u = RatFunc.gen('u')
    assert not cubic_affine(family_11, x1, x2, u ** 6)
    assert not conic(x1, x2)
    assert q4_points(family_11)[0] == (x1, x2)


def test_psi_sends_sixth_point_to_F6(family_11):
    plus, minus = q4_points(family_11)
    psi = build_psi(family_11)
    F6 = build_weier_f6(family_11).curve
    assert F6.contains(psi(*plus))
    assert F6.contains(psi(*minus))


@pytest.mark.parametrize("a, b", config.GENERIC_PAIRS)
def test_closed_forms_lie_on_the_surfaces(a, b):
    fam = build_family(a, b)
    assert family_surface(fam, 1).curve.contains(closed_form_P1(fam))
    assert family_surface(fam, 2).curve.contains(closed_form_P2(fam))


def test_descended_sections_match_closed_forms(generic_11):
    fam = generic_11.family
    P1, P2 = generic_11.P1, generic_11.P2
    assert P1.point == closed_form_P1(fam)
    assert P2.point == closed_form_P2(fam)
    assert P1.surface.var == 's' and P2.surface.var == 't'
    assert P1.provenance['kind'] == 'P1_from_phi'


@pytest.mark.parametrize("a, b", config.GENERIC_PAIRS[1:3])
def test_pipeline_on_other_pairs(a, b):
    fam = build_family(a, b)
    assert section_F1(fam).point == closed_form_P1(fam)
    assert section_F2(fam).point == closed_form_P2(fam)


def test_cm_image_rejects_points_off_the_curve(generic_11):
    same = cm_image(generic_11.P1, 1, 1)
    assert same.point == generic_11.P1.point
    with pytest.raises(ImageOffCurve):
        cm_image(generic_11.P1, 2, 1)


def test_galois_image(generic_11, q_sqrt2):
    same = galois_image(generic_11.P1, FieldAutomorphism.identity(QQ))
    assert same.point == generic_11.P1.point
    assert same.provenance['kind'] == 'galois_image'

    r2 = q_sqrt2.gen('r2')
    fam = build_family(1 + r2, 1)
    sec = DescendedSection(family_surface(fam, 1), closed_form_P1(fam))
    conj = FieldAutomorphism(q_sqrt2, {'r2': -r2}, name='conj')
    with pytest.raises(ImageOffCurve):
        galois_image(sec, conj)


def test_group_combination(generic_11):
    P2 = generic_11.P2
    combo = group_combination([P2, P2], [2, -1])
    assert combo.point == P2.point
    triple = group_combination([P2], [3])
    assert triple.point == point_mul(P2.surface.curve, P2.point, 3)


def test_map_parallel_keeps_input_order():
    assert map_parallel(lambda n: n * n, list(range(20)), max_workers=3) == [n * n for n in range(20)]


def test_omega_is_adjoined_for_descent():
    assert _omega_for(QQ, extend=False) is None
    w = _omega_for(QQ, extend=True)
    assert w ** 3 == 1 and w != 1
    u = RatFunc.gen('u')
    assert rewrite_in_power(u ** 3 + 1, 3, 't', w) == RatFunc.gen('t') + 1
    with pytest.raises(NotInSubfield):
        rewrite_in_power(u ** 3 + u, 3, 't', w)


@pytest.mark.slow
def test_two_torsion_sections_on_F2(generic_11, monkeypatch):
    monkeypatch.setitem(config.SOLVER_CONFIG, 'check_descent', True)
    R = sections_Rij(generic_11.family, generic_11.torsion)
    curve = family_surface(generic_11.family, 2).curve
    assert [(sec.provenance['i'], sec.provenance['j']) for sec in R] == [(2, 2), (3, 3), (2, 3), (3, 2)]
    assert all(curve.contains(sec.point) for sec in R)
    assert len({str(sec.point) for sec in R}) == 4
