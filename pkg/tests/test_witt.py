import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import QQ, ZZ

from app.algebra import witt
from app.algebra.core import CoefficientRing, IntegralityError, RingMismatchError, TruncationError
from tests.strategies import F2, F7, Q, Z, small_ints

Z2 = CoefficientRing.p_local(2)


def vectors(ring, N=3):
    return st.lists(small_ints, min_size=N, max_size=N).map(lambda vs: witt.WittVector.from_values(vs, ring))


# ---------------------------------------------------------
# Symm as a Hopf algebra
# ---------------------------------------------------------
def test_cartan_coproduct_on_generators():
    R = witt.symm_ring(2, Z)
    T = witt.tensor_ring(2, ZZ)
    c1_0, c2_0, c1_1, c2_1 = T.gens
    assert witt.cartan_coproduct(R.gens[0]) == c1_0 + c1_1
    assert witt.cartan_coproduct(R.gens[1]) == c2_0 + c1_0 * c1_1 + c2_1


def test_antipode_on_generators():
    R = witt.symm_ring(3, Z)
    c1, c2, c3 = R.gens
    assert witt.symm_antipode(c1) == -c1
    assert witt.symm_antipode(c2) == c1 ** 2 - c2
    assert witt.symm_antipode(witt.symm_antipode(c3)) == c3


def test_antipode_is_convolution_inverse():
    R = witt.symm_ring(4, Z)
    for x in list(R.gens) + [R.gens[0] * R.gens[1]]:
        t = witt.cartan_coproduct(x)
        assert witt.contract(t, left=witt.symm_antipode) == R.zero
        assert witt.contract(t, right=witt.symm_antipode) == R.zero
    assert witt.symm_counit(R.one + 3 * R.gens[0]) == 1


# ---------------------------------------------------------
# Witt coordinates and Newton primitives
# ---------------------------------------------------------
def test_witt_generators_in_cartan_generators():
    R = witt.symm_ring(3, Z)
    c1, c2, c3 = R.gens
    assert witt.witt_generator_v(1, R) == c1
    assert witt.witt_generator_v(2, R) == -c2
    assert witt.witt_generator_v(3, R) == c3 - c1 * c2
    with pytest.raises(TruncationError):
        witt.witt_generator_v(4, R)


def test_v_basis_change_is_invertible():
    R = witt.symm_ring(4, Z)
    c1, c2, c3, c4 = R.gens
    for x in (c1, c2 * c3, c4 - c1 ** 4, 2 * c2 ** 2):
        assert witt.from_v_basis(witt.to_v_basis(x)) == x


def test_v_coproduct_of_v1():
    V = witt.v_ring(1, Z)
    T = witt.tensor_ring(1, ZZ, 2, "v")
    assert witt.v_coproduct(V.gens[0]) == T.gens[0] + T.gens[1]


def test_newton_primitives():
    R = witt.symm_ring(3, Z)
    c1, c2, c3 = R.gens
    assert witt.newton_q(1, R) == c1
    assert witt.newton_q(2, R) == c1 ** 2 - 2 * c2
    assert witt.newton_q(3, R) == c1 ** 3 - 3 * c1 * c2 + 3 * c3
    T = witt.tensor_ring(3, ZZ)
    for n in range(1, 4):
        q = witt.newton_q(n, R)
        assert witt.cartan_coproduct(q) == witt.embed(q, 0, T) + witt.embed(q, 1, T)


def test_q_basis_roundtrip_over_q():
    R = witt.symm_ring(3, Q)
    x = R.gens[0] * R.gens[1] - R.gens[2]
    assert witt.from_q_basis(witt.to_q_basis(x)) == x
    with pytest.raises(ValueError):
        witt.to_q_basis(witt.symm_ring(3, Z).gens[0])


def test_p_typical_generators():
    v10 = witt.p_typical_v(1, 0, 2)
    assert v10 == v10.ring.gens[0]
    v11 = witt.p_typical_v(1, 1, 2)
    assert v11 == -v11.ring.gens[1]
    with pytest.raises(ValueError):
        witt.p_typical_v(2, 1, 2)


def test_p_local_checks():
    R = witt.symm_ring(2, Q)
    half = R.gens[0].quo_ground(QQ(2))
    with pytest.raises(IntegralityError):
        witt.check_p_local(half, 2)
    assert witt.check_p_local(half, 3) == half
    with pytest.raises(IntegralityError):
        witt.change_domain(half, Z)
    assert witt.change_domain(2 * half, Z) == witt.symm_ring(2, Z).gens[0]


# ---------------------------------------------------------
# Frobenius and Verschiebung
# ---------------------------------------------------------
def test_hopf_frobenius_and_verschiebung():
    R = witt.symm_ring(1, Z)
    assert witt.hopf_frobenius(2, R.gens[0]) == witt.newton_q(2, witt.symm_ring(2, Z))
    V = witt.v_ring(2, Z)
    image = witt.to_v_basis(witt.hopf_verschiebung(2, witt.from_v_basis(V.gens[1])))
    assert image == V.gens[0]


def test_literal_maps_on_v_coordinates():
    V = witt.v_ring(2, Z)
    v1, v2 = V.gens
    assert witt.frobenius(2, v1) == witt.v_ring(4, Z).gens[1]
    assert witt.verschiebung(2, v2) == 2 * v1
    assert witt.verschiebung(2, v1) == V.zero
    with pytest.raises(ValueError):
        witt.frobenius(0, v1)


def test_frobenius_report_hopf_columns():
    rows = witt.frobenius_report(4)
    assert {(r["d"], r["n"]) for r in rows} == {(2, 1), (2, 2), (3, 1), (4, 1)}
    assert all(r["hopf_frobenius"] and r["hopf_verschiebung"] for r in rows)


# ---------------------------------------------------------
# ψ_⊗
# ---------------------------------------------------------
def test_psi_otimes_on_s2():
    Qr = witt.q_ring(2, Q)
    T = witt.tensor_ring(2, QQ, 2, "q")
    q1_0, q2_0, q1_1, q2_1 = T.gens
    assert witt.psi_otimes(Qr.gens[1]) == q2_0 + 2 * q1_0 * q1_1 + q2_1
    assert witt.multiplicative_coproduct(Qr.gens[1]) == q2_0 * q2_1
    with pytest.raises(ValueError):
        witt.psi_otimes(witt.symm_ring(2, Q).gens[0])


def test_compare_psi_report():
    rows = witt.compare_psi_report(3)
    assert [r["n"] for r in rows] == [1, 2, 3]
    assert not any(r["equal"] for r in rows)


# ---------------------------------------------------------
# big Witt vectors
# ---------------------------------------------------------
def test_universal_sum_polynomial():
    (s1, s2) = witt.universal_polynomials(2)["add"]
    x1, x2, y1, y2 = s2.ring.gens
    assert s1 == x1 + y1
    assert s2 == x2 + y2 - x1 * y1


def test_addition_and_product_at_truncation_two():
    a = witt.WittVector.from_values([2, 5], Z)
    b = witt.WittVector.from_values([3, 7], Z)
    assert witt.witt_add(a, b) == witt.WittVector.from_values([5, 5 + 7 - 6], Z)
    a1 = witt.WittVector.from_values([2, 0], Z)
    b1 = witt.WittVector.from_values([3, 0], Z)
    assert witt.witt_mul(a1, b1) == witt.WittVector.from_values([6, 0], Z)


@settings(max_examples=40, deadline=None)
@given(vectors(Q, 6), vectors(Q, 6))
def test_ghost_map_is_a_ring_homomorphism(a, b):
    gs, ga, gb = witt.ghost(witt.witt_add(a, b)), witt.ghost(a), witt.ghost(b)
    assert gs == tuple(x + y for x, y in zip(ga, gb))
    gm = witt.ghost(witt.witt_mul(a, b))
    assert gm == tuple(x * y for x, y in zip(ga, gb))


@pytest.mark.parametrize("N", [3, pytest.param(8, marks=pytest.mark.slow)])
@pytest.mark.parametrize("ring", [Z, F7])
def test_ring_axioms(ring, N):
    zero, one = witt.WittVector.zero(ring, N), witt.WittVector.one(ring, N)

    @settings(max_examples=100, deadline=None)
    @given(vectors(ring, N), vectors(ring, N), vectors(ring, N))
    def check(a, b, c):
        assert witt.witt_add(a, b) == witt.witt_add(b, a)
        assert witt.witt_mul(a, b) == witt.witt_mul(b, a)
        assert witt.witt_add(witt.witt_add(a, b), c) == witt.witt_add(a, witt.witt_add(b, c))
        assert witt.witt_add(a, zero) == a
        assert witt.witt_sub(a, a) == zero
        assert witt.witt_mul(a, one) == a
        assert witt.witt_mul(witt.witt_mul(a, b), c) == witt.witt_mul(a, witt.witt_mul(b, c))
        left = witt.witt_mul(a, witt.witt_add(b, c))
        assert left == witt.witt_add(witt.witt_mul(a, b), witt.witt_mul(a, c))

    check()


@settings(max_examples=40)
@given(vectors(Z, 4), vectors(Z, 4))
def test_exponential_turns_sums_into_products(a, b):
    assert witt.exponential(witt.witt_add(a, b)) == witt.exponential(a) * witt.exponential(b)
    assert witt.from_lambda(witt.exponential(a)) == a


def test_mismatched_vectors():
    a = witt.WittVector.from_values([1, 2], Z)
    with pytest.raises(TruncationError):
        witt.witt_add(a, witt.WittVector.from_values([1, 2, 3], Z))
    with pytest.raises(RingMismatchError):
        witt.witt_add(a, witt.WittVector.from_values([1, 0], F2))
