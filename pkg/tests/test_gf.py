import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ferro.gf import (
    FieldElement,
    OrderedBasis,
    coordinates,
    extend_field,
    field_from_tower,
    field_of_order,
    is_irreducible,
    linear_map_from_basis_images,
    make_field,
    primitive_element,
    smallest_irreducible,
    subfield_element,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (7, 1), (2, 6)]


def test_prime_field_modulus():
    F = make_field(2, 1)
    assert F.order == 2 and F.modulus == (0, 1)


def test_moduli_by_integer_order():
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert extend_field(make_field(2), 3).modulus == (1, 1, 0, 1)


def test_modulus_is_smallest_irreducible_by_brute_force():
    F3 = make_field(3)
    for c0 in range(3):
        for c1 in range(3):
            f = (c0, c1, 1)
            has_root = any((c0 + c1 * x + x * x) % 3 == 0 for x in range(3))
            assert is_irreducible(F3, f) == (not has_root)
    assert smallest_irreducible(F3, 2) == (1, 0, 1)


def test_extend_by_one_is_identity():
    F4 = field_of_order(4)
    assert extend_field(F4, 1) is F4


def test_order_64():
    F = extend_field(make_field(2), 6)
    assert F.order == 64
    assert is_irreducible(make_field(2), F.modulus)


def test_deterministic_and_cached():
    assert make_field(2, 4) is make_field(2, 4)
    assert make_field(3, 3).modulus == make_field(3, 3).modulus


def test_bad_inputs():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        field_of_order(6)


def test_primitive_elements():
    assert primitive_element(make_field(2)).value == 1
    assert primitive_element(make_field(2, 2)).value == 2
    a = primitive_element(make_field(2, 3))
    assert a.value == 2 and a.order() == 7
    assert primitive_element(make_field(7)).value == 3


@pytest.mark.parametrize("p,k", FIELDS)
def test_primitive_element_has_full_order(p, k):
    F = make_field(p, k)
    a = primitive_element(F)
    assert a.order() == F.order - 1
    smaller = [v for v in range(1, a.value) if FieldElement(F, v).order() == F.order - 1]
    assert not smaller


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms(p, k):
    F = make_field(p, k)
    rng = np.random.default_rng(p * 100 + k)
    a, b, c = rng.integers(0, F.order, (3, 1000))
    assert np.array_equal(F.vmul(F.vmul(a, b), c), F.vmul(a, F.vmul(b, c)))
    assert np.array_equal(F.vmul(a, F.vadd(b, c)), F.vadd(F.vmul(a, b), F.vmul(a, c)))
    assert np.array_equal(F.vadd(F.vadd(a, b), c), F.vadd(a, F.vadd(b, c)))
    nz = a[a != 0]
    assert (F.vmul(nz, F.vinv(nz)) == 1).all()
    assert np.array_equal(F.vsub(F.vadd(a, b), b), a)


def test_scalar_and_vector_ops_agree():
    F = make_field(3, 2)
    for a in F.elements():
        for b in F.elements():
            assert F.mul(a, b) == int(F.vmul(np.array([a]), np.array([b]))[0])
            assert F.add(a, b) == int(F.vadd(np.array([a]), np.array([b]))[0])


@pytest.mark.parametrize("q,m", [(2, 3), (2, 4), (3, 2), (4, 2)])
def test_frobenius_additive(q, m):
    E = extend_field(field_of_order(q), m)
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, E.order, (200, 2)):
        a, b = int(a), int(b)
        assert E.pow(E.add(a, b), q) == E.add(E.pow(a, q), E.pow(b, q))


def test_coordinates_examples():
    E = field_of_order(4)
    B = OrderedBasis(E, [1, 2])
    assert list(coordinates(1, B)) == [1, 0]
    alpha = FieldElement(E, 2)
    assert list(coordinates(alpha * alpha, B)) == [1, 1]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 255), st.integers(0, 255), st.sampled_from([(2, 8), (2, 4), (3, 3)]))
def test_coordinates_linear_and_round_trip(a, b, qm):
    q, m = qm
    E = extend_field(field_of_order(q), m)
    a, b = a % E.order, b % E.order
    B = OrderedBasis.power_basis(E, primitive_element(E))
    ca, cb = B.coords(a), B.coords(b)
    assert int(B.combine(ca)) == a
    s = B.coords(E.add(a, b))
    assert np.array_equal(s, E.base.vadd(ca, cb))


def test_basis_vectors_map_to_unit_vectors():
    E = extend_field(make_field(2), 4)
    B = OrderedBasis.power_basis(E, primitive_element(E))
    assert np.array_equal(B.coords(np.array(B.elements)), np.eye(4, dtype=np.int64))


def test_dependent_basis_rejected():
    E = extend_field(make_field(2), 3)
    with pytest.raises(ValueError):
        OrderedBasis(E, [1, 2, 3])


def test_subfield_element():
    E = extend_field(make_field(2), 6)
    beta = subfield_element(E, 2)
    alpha = primitive_element(E)
    assert beta == alpha**21 and beta.order() == 3
    assert beta ** 4 == beta
    assert subfield_element(E, 6) == alpha
    E4 = extend_field(make_field(2), 4)
    b = subfield_element(E4, 2)
    assert b * b + b + 1 == 0 and b == primitive_element(E4) ** 5
    with pytest.raises(ValueError):
        subfield_element(E, 4)


def test_subfield_over_odd_base():
    E = extend_field(make_field(3), 4)
    beta = subfield_element(E, 2)
    assert beta ** 9 == beta and beta.order() == 8


def test_linear_maps():
    E = extend_field(make_field(2), 3)
    B = OrderedBasis.standard(E)
    ident = linear_map_from_basis_images(B, list(B.elements))
    assert all(ident(x) == x for x in E.elements())
    swap = linear_map_from_basis_images(B, [B.elements[1], B.elements[0], B.elements[2]])
    for x in E.elements():
        c = B.coords(x)
        assert list(B.coords(swap(x))) == [c[1], c[0], c[2]]
    a = primitive_element(E).value
    images = [1, a, E.mul(a, a)]
    phi = linear_map_from_basis_images(B, images)
    assert [phi(x) for x in B.elements] == images and phi.is_bijective()
    with pytest.raises(ValueError):
        linear_map_from_basis_images(B, [1, 2])


def test_tower_round_trip():
    E = extend_field(field_of_order(4), 2)
    assert E.tower == (1, 2, 2) and E.order == 16
    again = field_from_tower(2, E.moduli)
    assert again is E
