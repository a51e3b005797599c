import pytest

import config
from mw_lattice import classify_fibers, fiber_counts, gram_and_det, hom_lattice_det, check_lattice_identity
from named_examples import build_example, generic_examples, X323

NAMES = config.NAMED_EXAMPLES


def test_unknown_example_name():
    with pytest.raises(ValueError):
        build_example('x999')


def test_generic_examples_follow_config():
    examples = generic_examples()
    assert [(ex.a, ex.b) for ex in examples] == list(config.GENERIC_PAIRS)
    assert all(ex.name == 'generic' for ex in examples)


def test_x323_automorphisms_are_involutions():
    ex = X323()
    assert ex.gamma.is_involution()
    assert ex.sigma.is_involution()
    assert ex.gamma(ex.i) == -ex.i
    assert ex.sigma(ex.rho) == -ex.rho


slow = pytest.mark.slow


@slow
def test_x333_j_invariant(named):
    ex = named('x333')
    assert ex.j_E2() == config.EXPECTED['x333']['j2']
    assert ex.family.E1.j == 0


@slow
@pytest.mark.parametrize("name", NAMES)
def test_printed_equations(named, name):
    ex = named(name)
    for n, curve in ex.printed_curves().items():
        S = ex.printed_F1 if n == 1 else ex.printed_F2
        assert S.curve == curve


@slow
@pytest.mark.parametrize("name", NAMES)
def test_printed_section_coordinates(named, name):
    ex = named(name)
    for label, computed, printed in ex.anchors():
        assert computed == printed, label


@slow
def test_x323_galois_relations(named):
    for label, left, right in named('x323').galois_relations():
        assert left == right, label


@slow
@pytest.mark.parametrize("name", NAMES)
def test_fibers_of_F1(named, name):
    fibers = classify_fibers(named(name).F1)
    assert fiber_counts(fibers) == config.EXPECTED[name]['fibers_F1']


@slow
@pytest.mark.parametrize("name", NAMES)
def test_gram_matrices_and_lattice_identity(named, name):
    ex = named(name)
    expected = config.EXPECTED[name]
    S1, basis1 = ex.lattice_F1()
    gram1, _ = gram_and_det(S1, basis1)
    assert gram1 == expected['gram_F1']
    S2, basis2 = ex.lattice_F2()
    gram2, det2 = gram_and_det(S2, basis2)
    assert gram2.is_symmetric()
    assert gram2.integer_matrix(3) == expected['gram3']
    assert det2 == expected['det']
    assert check_lattice_identity(det2, hom_lattice_det(gram1))
