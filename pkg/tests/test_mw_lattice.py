from fractions import Fraction

import pytest

import config
from elliptic import point_mul
from mw_lattice import (
    GramMatrix, classify_fibers, fiber_counts, extra_fibers, predicted_fiber_row, local_models,
    self_height, height_pair, gram_and_det, hom_lattice_det, check_lattice_identity,
    component_assignment, check_component_homomorphism, intersection_with_zero
)
from named_examples import twin_j_surface
from errors import CheckFailed


def _disc_total(fibers):
    return sum(f.v_disc * f.count for f in fibers)


def test_predicted_fiber_rows():
    assert predicted_fiber_row(1, 2) == {'I1': 4}
    assert predicted_fiber_row(0, 5) == {'II': 2}
    assert predicted_fiber_row(7, 7) == {'I2': 1, 'I1': 2}
    assert predicted_fiber_row(0, 0) == {'IV': 1}
    assert predicted_fiber_row(1728, 1728) == {'I2': 2}


def test_extra_fibers_requires_two_II_star():
    with pytest.raises(CheckFailed):
        extra_fibers([])


def test_generic_F1_fibers(generic_11):
    fibers = classify_fibers(generic_11.F1)
    assert fiber_counts(fibers) == {'II*': 2, 'I1': 4}
    assert _disc_total(fibers) == 24
    fam = generic_11.family
    assert extra_fibers(fibers) == predicted_fiber_row(fam.E1.j, fam.E2.j)


def test_generic_F2_fibers(generic_11):
    fibers = classify_fibers(generic_11.F2)
    assert fiber_counts(fibers) == {'IV*': 2, 'I1': 8}
    assert _disc_total(fibers) == 24


def test_twin_j_gives_an_I2_fiber():
    S = twin_j_surface(1, 1, 2)
    fibers = classify_fibers(S)
    assert extra_fibers(fibers) == {'I2': 1, 'I1': 2}
    assert _disc_total(fibers) == 24


def test_generic_lattice_identity_values():
    expected = config.EXPECTED['generic']
    det_hom = hom_lattice_det([[expected['height_P1']]])
    assert det_hom == expected['det_hom'] == 3
    assert check_lattice_identity(expected['det'], det_hom)


@pytest.mark.parametrize("name", config.NAMED_EXAMPLES)
def test_lattice_identity_on_expected_values(name):
    expected = config.EXPECTED[name]
    det_hom = hom_lattice_det(expected['gram_F1'])
    assert det_hom == expected['det_hom']
    assert check_lattice_identity(expected['det'], det_hom)
    assert not check_lattice_identity(expected['det'] + 1, det_hom)


def test_gram_matrix_scaling():
    gram = GramMatrix([[Fraction(4, 3), Fraction(2, 3)], [Fraction(2, 3), Fraction(4, 3)]])
    assert gram.is_symmetric()
    assert gram.integer_matrix(3) == [[4, 2], [2, 4]]
    assert gram.integer_matrix(2) is None
    assert gram.det() == Fraction(4, 3)
    assert gram == [[Fraction(4, 3), Fraction(2, 3)], [Fraction(2, 3), Fraction(4, 3)]]


def test_heights_of_generic_sections(generic_11):
    models_1 = local_models(generic_11.F1)
    assert self_height(generic_11.F1, generic_11.P1, models_1) == 6
    assert self_height(generic_11.F2, generic_11.P2) == 4
    assert intersection_with_zero(generic_11.F1, generic_11.P1, models_1) >= 0


def test_height_is_quadratic(generic_11):
    S, P = generic_11.F1, generic_11.P1
    models = local_models(S)
    double = point_mul(S.curve, P.point, 2)
    assert self_height(S, double, models) == 4 * self_height(S, P, models)
    assert height_pair(S, P, P, models) == self_height(S, P, models)


def test_one_by_one_gram(generic_11):
    gram, det = gram_and_det(generic_11.F1, [generic_11.P1])
    assert gram == [[6]]
    assert det == 6


def test_component_labels_on_F2(generic_11):
    S, P = generic_11.F2, generic_11.P2
    models = local_models(S)
    assignment = component_assignment(S, [P], models)
    assert all(f.name == 'IV*' for f in assignment.fibers.values())
    assert len(assignment.labels) == 2
    assert check_component_homomorphism(S, P, P, models)


@pytest.mark.slow
def test_generic_F2_gram_matrix(generic_11):
    S, basis = generic_11.lattice_F2()
    gram, det = gram_and_det(S, basis)
    expected = config.EXPECTED['generic']
    assert gram.integer_matrix(3) == expected['gram3']
    assert det == expected['det']
