from fractions import Fraction
import math

import mpmath
import pytest

from exact_arith import (
    QQ, FieldTower, NFElement, FieldAutomorphism, apply_automorphism, nf_arith, nf_sqrt, tower_with_omega,
    numeric_embed, tower_extend
)
from errors import DegreeTooSmall, NotMonic, DivisionByZero, ComputationError, PrecisionExhausted
from utils import seeded_rng


def test_omega_is_a_cube_root_of_unity(q_omega):
    w = q_omega.gen('w')
    assert w ** 3 == 1
    assert w * w == -1 - w
    assert w != 1


def test_inverse_in_quadratic_field(q_sqrt2):
    r2 = q_sqrt2.gen('r2')
    assert 1 / r2 == r2 / 2
    x = 3 + 5 * r2
    assert x * x.inverse() == 1
    assert (x / x) == 1
    assert x ** -2 * x ** 2 == 1


def test_two_level_tower_arithmetic():
    H = QQ.extend('r2', [-2, 0, 1]).extend('i', [1, 0, 1])
    r2, i = H.gen('r2'), H.gen('i')
    assert (r2 * i) ** 2 == -2
    x = 1 + r2 - 2 * i + r2 * i
    assert x * (1 / x) == 1
    assert H.degree == 4
    assert len(x.coeffs) == 4


def test_lower_tower_elements_lift(q_sqrt2):
    H = q_sqrt2.extend('i', [1, 0, 1])
    r2_low = q_sqrt2.gen('r2')
    i = H.gen('i')
    assert (r2_low + i) * (r2_low - i) == 3
    assert H.element(r2_low) == H.gen('r2')


def test_extend_rejects_bad_minimal_polynomials():
    with pytest.raises(DegreeTooSmall):
        QQ.extend('x', [1, 1])
    with pytest.raises(NotMonic):
        QQ.extend('x', [1, 0, 2])
    with pytest.raises(ValueError):
        tower_extend(QQ.extend('x', [1, 0, 1]), 'x', [2, 0, 1])


def test_nf_arith_division_by_zero(q_sqrt2):
    r2 = q_sqrt2.gen('r2')
    assert nf_arith('add', r2, 1) == r2 + 1
    assert nf_arith('mul', r2, r2) == 2
    with pytest.raises(DivisionByZero):
        nf_arith('div', r2, q_sqrt2.zero())
    with pytest.raises(ZeroDivisionError):
        q_sqrt2.zero().inverse()
    with pytest.raises(ValueError):
        nf_arith('pow', r2, 2)


def test_rational_square_roots():
    assert nf_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert nf_sqrt(2) is None
    assert nf_sqrt(-1) is None


def test_square_roots_in_towers(q_omega, q_sqrt2):
    r = nf_sqrt(q_omega.element(-3))
    assert r is not None and r * r == -3
    r2 = q_sqrt2.gen('r2')
    x = (1 + r2) ** 2
    root = nf_sqrt(x)
    assert root * root == x
    assert nf_sqrt(r2) is None


def test_tower_with_omega(q_omega):
    tower, w = tower_with_omega(q_omega)
    assert tower is q_omega and w == q_omega.gen('w')
    k3 = QQ.extend('r3', [3, 0, 1])
    same, w3 = tower_with_omega(k3)
    assert same == k3 and w3 ** 2 + w3 + 1 == 0
    bigger, w2 = tower_with_omega(QQ)
    assert bigger.degree == 2 and w2 ** 3 == 1


def test_automorphism_conjugates_and_checks_images():
    H = QQ.extend('i', [1, 0, 1])
    i = H.gen('i')
    conj = FieldAutomorphism(H, {'i': -i}, name='conj')
    assert conj(1 + 2 * i) == 1 - 2 * i
    assert apply_automorphism(conj, i * i) == -1
    assert conj(Fraction(1, 3)) == Fraction(1, 3)
    assert conj.is_involution()
    with pytest.raises(ComputationError):
        FieldAutomorphism(H, {'i': 2 * i})
    with pytest.raises(ValueError):
        FieldAutomorphism(H, {'j': i})


def test_numeric_embedding_picks_largest_real_root(q_sqrt2):
    r2 = q_sqrt2.gen('r2')
    box = numeric_embed(3 + r2)
    assert abs(box.mid - (3 + math.sqrt(2))) < 1e-12
    assert box.width < 1e-20
    neg = numeric_embed(r2, embedding={'r2': -1.4})
    assert abs(neg.mid + math.sqrt(2)) < 1e-12


def test_numeric_embedding_precision_limit(q_sqrt2):
    with pytest.raises(PrecisionExhausted):
        numeric_embed(q_sqrt2.gen('r2'), precision=10 ** 6)


def test_tower_and_element_json():
    L = QQ.extend('r3', [-3, 0, 1]).extend('i', [1, 0, 1])
    x = L.gen('r3') - Fraction(2, 5) * L.gen('i')
    again = NFElement.from_json(x.to_json())
    assert again.tower == L
    assert again == x
    assert FieldTower.from_json(L.to_json()) == L


def test_elements_of_unrelated_towers_are_not_equal():
    a = QQ.extend('i', [1, 0, 1]).gen('i')
    b = QQ.extend('r2', [-2, 0, 1]).gen('r2')
    assert a != b


def _random_element(rng, H):
    r2, i = H.gen('r2'), H.gen('i')
    c = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
    return c[0] + c[1] * r2 + c[2] * i + c[3] * r2 * i


def test_field_axioms_on_random_tower_elements():
    H = QQ.extend('r2', [-2, 0, 1]).extend('i', [1, 0, 1])
    rng = seeded_rng(3)
    for _ in range(10):
        x, y, z = (_random_element(rng, H) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert (x - y) + y == x
        if x:
            assert x * x.inverse() == 1
            assert (y / x) * x == y


def test_automorphisms_are_multiplicative():
    H = QQ.extend('r2', [-2, 0, 1]).extend('i', [1, 0, 1])
    r2, i = H.gen('r2'), H.gen('i')
    autos = [FieldAutomorphism(H, {'i': -i}), FieldAutomorphism(H, {'r2': -r2}),
             FieldAutomorphism(H, {'r2': -r2, 'i': -i})]
    rng = seeded_rng(5)
    for _ in range(6):
        x, y = _random_element(rng, H), _random_element(rng, H)
        for sigma in autos:
            assert sigma(x * y) == sigma(x) * sigma(y)
            assert sigma(x + y) == sigma(x) + sigma(y)


def test_numeric_embedding_keeps_global_precision(q_sqrt2):
    before = (mpmath.mp.prec, mpmath.iv.prec)
    box = numeric_embed(q_sqrt2.gen('r2') / 3, precision=400)
    assert (mpmath.mp.prec, mpmath.iv.prec) == before
    assert box.ctx.prec >= 400
    with mpmath.workprec(400):
        assert box.contains(mpmath.sqrt(2) / 3)
