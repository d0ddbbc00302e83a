from fractions import Fraction

import pytest
from hypothesis import given

from app.algebra.core import (
    AlgebraElement,
    CoefficientRing,
    IntegralityError,
    RingKind,
    RingMismatchError,
    TensorElement,
    binomial,
    binomial_mod_p,
    compositions,
    compositions_up_to,
    divisors,
    integer_invariant_factors,
    matrix_rank,
    moebius,
    nullspace,
    poincare_series,
)
from tests.strategies import F2, F3, Q, Z, elem, elements

# ---------------------------------------------------------
# coefficient rings
# ---------------------------------------------------------
def test_parse_ring_notation():
    assert CoefficientRing.parse("Z") == Z
    assert CoefficientRing.parse("QQ") == Q
    assert CoefficientRing.parse("Fp:3") == F3
    assert CoefficientRing.parse("Zp:5").kind is RingKind.P_LOCAL
    assert str(CoefficientRing.parse(" Fp:2 ")) == "Fp:2"
    with pytest.raises(ValueError):
        CoefficientRing.parse("R")
    with pytest.raises(ValueError):
        CoefficientRing.parse("Fp:4")


def test_convert_and_render():
    assert Z.render(Z.convert(-7)) == "-7"
    assert Q.render(Q.convert(Fraction(6, 4))) == "3/2"
    assert Q.render(Q.convert("-1/3")) == "-1/3"
    assert F3.render(F3.convert(-1)) == "2"
    assert F3.render(F3.convert(Fraction(1, 2))) == "2"
    with pytest.raises(IntegralityError):
        Z.convert(Fraction(1, 2))
    with pytest.raises(IntegralityError):
        F3.convert(Fraction(1, 3))


def test_p_local_denominators():
    Z2 = CoefficientRing.p_local(2)
    assert Z2.render(Z2.convert(Fraction(1, 3))) == "1/3"
    with pytest.raises(IntegralityError):
        Z2.convert(Fraction(1, 2))
    assert not Z2.is_field
    assert F2.characteristic == 2 and Q.characteristic == 0


def test_inverse():
    assert Q.inverse(Q.convert(4)) == Q.convert(Fraction(1, 4))
    assert F3.inverse(F3.convert(2)) == F3.convert(2)
    with pytest.raises(IntegralityError):
        Z.inverse(Z.convert(2))
    with pytest.raises(ZeroDivisionError):
        Q.inverse(Q.zero)


# ---------------------------------------------------------
# number theory
# ---------------------------------------------------------
def test_binomial():
    assert binomial(5, 2) == 10
    assert all(binomial(n, 0) == 1 for n in range(10))
    assert binomial(1, 2) == 0


def test_binomial_mod_p():
    assert binomial_mod_p(5, 2, 3) == 1
    for p in (2, 3, 5, 7):
        assert binomial_mod_p(p, 1, p) == 0
        for n in range(12):
            assert binomial_mod_p(n, n, p) == 1
    for n in range(20):
        for k in range(n + 1):
            assert binomial_mod_p(n, k, 5) == binomial(n, k) % 5


def test_moebius():
    assert [moebius(n) for n in (1, 2, 3, 4, 5, 6, 8, 30)] == [1, -1, -1, 0, -1, 1, 0, -1]
    with pytest.raises(ValueError):
        moebius(0)


def test_divisors_are_sorted_and_end_with_n():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(30)[:-1] == [1, 2, 3, 5, 6, 10, 15]


def test_poincare_series_of_two_to_the_n_minus_one():
    # one generator in degree 1, one in 2, two in 3, three in 4
    assert poincare_series({1: 1, 2: 1, 3: 2, 4: 3}, 4) == [1, 1, 2, 4, 8]


# ---------------------------------------------------------
# compositions
# ---------------------------------------------------------
def test_compositions_canonical_order():
    assert compositions(0) == ((),)
    assert compositions(3) == ((3,), (1, 2), (2, 1), (1, 1, 1))
    assert [len(compositions(n)) for n in range(1, 9)] == [2 ** (n - 1) for n in range(1, 9)]
    assert len(compositions_up_to(4)) == 16


def test_invalid_composition():
    with pytest.raises(ValueError):
        elem(Z, {(1, 0): 1})


# ---------------------------------------------------------
# sparse elements
# ---------------------------------------------------------
def test_zero_coefficients_are_dropped():
    x = AlgebraElement(Z, {(1,): 2, (2,): 0})
    y = AlgebraElement(Z, {(1,): -2})
    assert len(x) == 1
    assert (x + y).is_zero
    assert AlgebraElement(F2, {(1,): 2}).is_zero


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        AlgebraElement.one(Z) + AlgebraElement.one(Q)


def test_items_in_canonical_order():
    x = elem(Z, {(1, 1): 1, (2,): 1, (): 1, (1,): 1})
    assert x.keys() == [(), (1,), (2,), (1, 1)]
    assert x.degrees() == [0, 1, 2]
    assert not x.is_homogeneous
    assert x.homogeneous(2) == elem(Z, {(1, 1): 1, (2,): 1})


@given(elements(), elements(), elements())
def test_module_axioms(x, y, w):
    assert x + y == y + x
    assert (x + y) + w == x + (y + w)
    assert (x - x).is_zero
    assert x.scale(3) == x + x + x


def test_tensor_outer_product_and_contract():
    a, b = elem(Z, {(1,): 1, (2,): 1}), elem(Z, {(): 1, (1,): -1})
    t = TensorElement.tensor(a, b)
    assert t.arity == 2
    assert t.coefficient(((2,), (1,))) == -1
    concat = lambda x, y: x.bilinear(y, lambda p, q: {p + q: 1})
    assert t.contract(concat) == concat(a, b)


# ---------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------
def test_rank_depends_on_characteristic():
    rows = [[2, 0], [0, 1]]
    assert matrix_rank(rows, 2, Q) == 2
    assert matrix_rank(rows, 2, F2) == 1
    assert matrix_rank(rows, 2, Z) == 2


def test_nullspace_over_field():
    basis = nullspace([[1, 1, 0]], 3, Q)
    assert len(basis) == 2
    for v in basis:
        assert v[0] + v[1] == 0
    with pytest.raises(ValueError):
        nullspace([[1]], 1, Z)


def test_invariant_factors():
    assert integer_invariant_factors([[2, 0], [0, 3]], 2) == (1, 6)
    assert integer_invariant_factors([[1, 1], [1, -1]], 2) == (1, 2)
    assert integer_invariant_factors([], 3) == ()
