import pytest

from app.algebra import lyndon
from app.algebra.core import BasicProductError, compositions_up_to


# ---------------------------------------------------------
# Lyndon words
# ---------------------------------------------------------
def test_is_lyndon():
    assert lyndon.is_lyndon((1, 2))
    assert not lyndon.is_lyndon((1, 1))
    assert all(lyndon.is_lyndon((a,)) for a in range(1, 6))
    with pytest.raises(ValueError):
        lyndon.is_lyndon(())


def test_lyndon_by_length():
    assert lyndon.lyndon_by_length(2, 3) == ((1, 1, 2), (1, 2, 2))
    assert len(lyndon.lyndon_by_length(2, 4)) == 3
    assert lyndon.lyndon_by_length(4, 1) == ((1,), (2,), (3,), (4,))


def test_duval_matches_brute_force_and_necklace_formula():
    for k in range(1, 4):
        for n in range(1, 7):
            words = lyndon.lyndon_by_length(k, n)
            assert words == lyndon.lyndon_brute_force(k, n)
            assert len(words) == lyndon.necklace_count(k, n)


def test_lyndon_by_degree():
    assert lyndon.lyndon_by_degree(2) == ((2,),)
    assert lyndon.lyndon_by_degree(4) == ((4,), (1, 3), (1, 1, 2))
    five = lyndon.lyndon_by_degree(5)
    assert set(five) == {(5,), (1, 4), (2, 3), (1, 1, 3), (1, 2, 2), (1, 1, 1, 2)}
    assert [len(lyndon.lyndon_by_degree(n)) for n in range(1, 9)] == [1, 1, 2, 3, 6, 9, 18, 30]


def test_factorization():
    assert lyndon.lyndon_factorization((2, 1, 1, 2)) == [(2,), (1, 1, 2)]
    for w in compositions_up_to(6):
        if not w:
            continue
        factors = lyndon.lyndon_factorization(w)
        assert sum(factors, ()) == w
        assert all(lyndon.is_lyndon(f) for f in factors)
        assert all(a >= b for a, b in zip(factors, factors[1:]))


def test_render_word():
    assert lyndon.render_word((1, 1, 2)) == "112"
    assert lyndon.render_word((1, 12)) == "1,12"


# ---------------------------------------------------------
# basic products
# ---------------------------------------------------------
def test_basic_products_small():
    (tree,) = lyndon.basic_products(2, 2)
    assert tree.render() == "(2·1)"
    assert [t.render() for t in lyndon.basic_products(2, 3)] == ["((2·1)·1)", "((2·1)·2)"]
    assert [t.letter for t in lyndon.basic_products(3, 1)] == [1, 2, 3]
    assert tree.to_nested() == [2, 1]


def test_flattening_examples():
    two, three = lyndon.basic_products(2, 2), lyndon.basic_products(2, 3)
    assert lyndon.basic_to_lyndon(two[0]) == (1, 2)
    assert [lyndon.basic_to_lyndon(t) for t in three] == [(1, 1, 2), (1, 2, 2)]


def test_bijection_with_lyndon_words():
    for k in range(1, 4):
        for n in range(1, 6):
            images = [lyndon.basic_to_lyndon(t) for t in lyndon.basic_products(k, n)]
            assert len(images) == lyndon.necklace_count(k, n)
            assert len(set(images)) == len(images)
            assert all(lyndon.is_lyndon(w) for w in images)
            assert set(images) == set(lyndon.lyndon_by_length(k, n))


def test_combine_rejects_inadmissible_pairs():
    a, b = lyndon.BasicProductTree.leaf(1), lyndon.BasicProductTree.leaf(2)
    with pytest.raises(BasicProductError):
        lyndon.BasicProductTree.combine(a, b, serial=3)


def test_strict_variant_report():
    rows = lyndon.strict_rank_report(3, 4)
    assert len(rows) == 12
    assert all(r["leq"] == r["necklace"] for r in rows)


def test_invalid_sizes():
    with pytest.raises(ValueError):
        lyndon.basic_products(0, 3)
    with pytest.raises(ValueError):
        lyndon.lyndon_by_degree(0)
