import pytest
from hypothesis import given, settings

from app.algebra import nsymm, qsymm
from app.algebra.core import AlgebraElement, TensorElement, compositions, compositions_up_to
from app.algebra.lyndon import lyndon_by_degree
from tests.strategies import F2, F3, Q, Z, elem, elements

WORKED_PRODUCT = {(3, 1, 2): 1, (1, 3, 2): 1, (1, 2, 3): 1, (4, 2): 1, (1, 5): 1}


# ---------------------------------------------------------
# overlapping shuffle
# ---------------------------------------------------------
def test_worked_product():
    x = qsymm.overlapping_shuffle(qsymm.bracket([3], Z), qsymm.bracket([1, 2], Z))
    assert x == elem(Z, WORKED_PRODUCT)


def test_unit_and_singletons():
    one = AlgebraElement.one(Z)
    a = qsymm.bracket([2, 1, 3], Z)
    assert qsymm.overlapping_shuffle(one, a) == a
    assert qsymm.overlapping_shuffle(a, one) == a
    assert qsymm.shuffle_keys((1,), (1,)) == {(1, 1): 2, (2,): 1}


def test_recursion_matches_global_enumeration():
    keys = [k for k in compositions_up_to(4) if k]
    for a in keys:
        for b in keys:
            assert qsymm.shuffle_keys(a, b) == qsymm.shuffle_enumeration(a, b)


@settings(max_examples=50)
@given(elements(max_degree=3), elements(max_degree=3), elements(max_degree=3))
def test_commutative_associative(x, y, w):
    m = qsymm.overlapping_shuffle
    assert m(x, y) == m(y, x)
    assert m(m(x, y), w) == m(x, m(y, w))


def test_power():
    assert qsymm.power(qsymm.bracket([1], Z), 2) == elem(Z, {(1, 1): 2, (2,): 1})
    assert qsymm.power(qsymm.bracket([1], Z), 0) == AlgebraElement.one(Z)


# ---------------------------------------------------------
# coproduct, antipode, pairing
# ---------------------------------------------------------
def test_deconcatenation():
    expected = TensorElement(Z, {((1, 2), ()): 1, ((1,), (2,)): 1, ((), (1, 2)): 1})
    assert qsymm.deconcat_coproduct(qsymm.bracket([1, 2], Z)) == expected
    assert qsymm.deconcat_coproduct(AlgebraElement.one(Z)) == TensorElement(Z, {((), ()): 1})


def test_bialgebra_compatibility():
    pairs = [(a, b) for n in range(1, 6) for m in range(1, 7 - n) for a in compositions(n) for b in compositions(m)]
    for a, b in pairs:
        x, y = qsymm.bracket(a, Z), qsymm.bracket(b, Z)
        lhs = qsymm.deconcat_coproduct(qsymm.overlapping_shuffle(x, y))
        rhs = qsymm.deconcat_coproduct(x).factorwise_product(qsymm.deconcat_coproduct(y), qsymm.shuffle_keys)
        assert lhs == rhs


def test_antipode_examples():
    assert qsymm.qsymm_antipode(qsymm.bracket([1], Z)) == elem(Z, {(1,): -1})
    assert qsymm.qsymm_antipode(qsymm.bracket([2], Z)) == elem(Z, {(2,): -1})
    assert qsymm.qsymm_antipode(qsymm.bracket([1, 1], Z)) == elem(Z, {(1, 1): 1, (2,): 1})


def test_antipode_is_convolution_inverse():
    for n in range(1, 7):
        for key in compositions(n):
            delta = qsymm.deconcat_coproduct(qsymm.bracket(key, Z))
            left = delta.apply_factorwise([qsymm.qsymm_antipode, lambda a: a]).contract(qsymm.overlapping_shuffle)
            assert left.is_zero


def test_pairing():
    z1z2 = nsymm.word([1, 2], Z)
    assert qsymm.pairing(qsymm.bracket([1, 2], Z), z1z2) == 1
    assert qsymm.pairing(qsymm.bracket([1, 2], Z), nsymm.word([2, 1], Z)) == 0
    product = qsymm.overlapping_shuffle(qsymm.bracket([3], Z), qsymm.bracket([1, 2], Z))
    assert qsymm.pairing(product, nsymm.word([4, 2], Z)) == 1


def test_product_dual_to_coproduct():
    # ⟨a ⊙ b, Z^γ⟩ = ⟨a ⊗ b, Δ Z^γ⟩
    for gamma in compositions(4):
        delta = nsymm.coproduct(nsymm.word(gamma, Z))
        for d in range(1, 4):
            for a in compositions(d):
                for b in compositions(4 - d):
                    lhs = qsymm.pairing(qsymm.overlapping_shuffle(qsymm.bracket(a, Z), qsymm.bracket(b, Z)), nsymm.word(gamma, Z))
                    assert lhs == delta.coefficient((a, b))


def test_antipodes_are_dual():
    for n in range(1, 6):
        for a in compositions(n):
            for b in compositions(n):
                lhs = qsymm.pairing(qsymm.qsymm_antipode(qsymm.bracket(a, Z)), nsymm.word(b, Z))
                rhs = qsymm.pairing(qsymm.bracket(a, Z), nsymm.antipode(nsymm.word(b, Z)))
                assert lhs == rhs


# ---------------------------------------------------------
# Symm inside QSymm
# ---------------------------------------------------------
def test_from_symm():
    assert qsymm.from_symm([1], Z) == qsymm.bracket([1], Z)
    assert qsymm.from_symm([1, 1], Z) == qsymm.bracket([1, 1], Z)
    assert qsymm.from_symm([2, 1], Z) == elem(Z, {(2, 1): 1, (1, 2): 1})
    with pytest.raises(ValueError):
        qsymm.from_symm([1, 2], Z)


def test_symmetric_functions_form_a_subalgebra():
    x = qsymm.overlapping_shuffle(qsymm.from_symm([2, 1], Z), qsymm.from_symm([1], Z))
    assert qsymm.is_symmetric(x)
    assert not qsymm.is_symmetric(qsymm.bracket([1, 2], Z))


# ---------------------------------------------------------
# indecomposables
# ---------------------------------------------------------
def test_indecomposables_small_degrees():
    assert qsymm.indecomposables_dimension(1, Q) == 1
    assert qsymm.indecomposables_dimension(2, Q) == 1
    assert qsymm.indecomposables_dimension(4, F2) == 3


def test_indecomposables_match_lyndon_counts():
    for n in range(1, 7):
        expected = len(lyndon_by_degree(n))
        for ring in (Q, F2, F3):
            assert qsymm.indecomposables_dimension(n, ring) == expected


def test_indecomposables_need_a_field():
    with pytest.raises(ValueError):
        qsymm.indecomposables_dimension(3, Z)
