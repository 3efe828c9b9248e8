'''
testing GF(p^k) arithmetic, generators and logarithms
'''
import numpy as np
import pytest

from quower.errors import DomainError, FieldMismatchError, InputError
from quower.field import (FieldSpec, add, dlog, field, generator, inv, is_irreducible, mul, neg,
                          power, prime_power)

QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_prime_power():
    assert prime_power(2) == (2, 1)
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(49) == (7, 2)
    for bad in (0, 1, 6, 12, 15):
        with pytest.raises(InputError):
            prime_power(bad)
    with pytest.raises(InputError):
        field(10)


def test_irreducibility():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)      # (x + 1)^2
    assert is_irreducible((1, 0, 1), 3)          # x^2 + 1, -1 is no square mod 3
    assert is_irreducible((1, 0, 1, 1), 2)
    assert not is_irreducible((1, 0, 0, 1), 2)   # x^3 + 1 = (x + 1)(x^2 + x + 1)
    assert not is_irreducible((1, 1, 2), 3)      # not monic


def test_canonical_moduli_and_generators():
    assert field(4).modulus == (1, 1, 1)
    assert field(8).modulus == (1, 0, 1, 1)
    assert field(9).modulus == (1, 0, 1)
    assert field(5).generator == field(5).element(2)
    assert field(7).generator == field(7).element(3)
    assert field(9).generator.coeffs == (1, 1)
    assert field(8).generator.coeffs == (0, 0, 1)


@pytest.mark.parametrize("q", QS)
def test_field_axioms(q):
    spec = field(q)
    elems = list(spec.elements())
    assert len(elems) == q
    assert [e.index for e in elems] == list(range(q))
    zero, one = spec.zero, spec.one
    for a in elems:
        assert a + zero == a
        assert a * one == a
        assert a + (-a) == zero
        assert a - a == zero
        if a:
            assert a * a.inv() == one
            assert a / a == one
            assert a ** (q - 1) == one


@pytest.mark.parametrize("q", [4, 8, 9])
def test_distributivity(q):
    spec = field(q)
    elems = list(spec.elements())
    for a in elems:
        for b in elems:
            assert a * b == b * a
            for c in elems[:3]:
                assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("q", QS)
def test_generator_and_logarithms(q):
    spec = field(q)
    g = generator(spec)
    assert g.order() == q - 1
    for e in range(q - 1):
        assert dlog(spec, g, g ** e) == e
        assert spec.exp(e) == g ** e
    assert len(set(spec.power_table(g).values())) == q - 1


def test_other_generators():
    spec = field(7)
    table = spec.power_table(5)
    assert [table[e].index for e in range(6)] == [1, 5, 4, 6, 2, 3]
    assert spec.dlog(5, 6) == 3
    with pytest.raises(InputError):
        spec.power_table(2)      # order 3
    with pytest.raises(InputError):
        spec.power_table(0)


def test_zero_has_no_inverse_or_logarithm():
    spec = field(5)
    with pytest.raises(DomainError):
        inv(spec.zero)
    with pytest.raises(ZeroDivisionError):
        spec.one / spec.zero
    with pytest.raises(DomainError):
        dlog(spec, spec.generator, spec.zero)


def test_module_level_operations():
    spec = field(9)
    a, b = spec.element(4), spec.element(7)
    assert add(a, b) == a + b
    assert mul(a, b) == a * b
    assert neg(a) == -a
    assert power(a, 5) == a ** 5
    assert power(a, -1) == a.inv()


def test_element_conversions():
    spec = field(9)
    x = spec.element((0, 1))
    assert x.index == 1
    assert spec.element(1) == x
    assert x * x == spec.element((2, 0))   # x^2 = -1
    assert str(spec.element((2, 1))) == "x+2"
    assert field(5).element(7) == field(5).element(2)
    with pytest.raises(InputError):
        spec.element(9)
    with pytest.raises(InputError):
        spec.element((3, 0))


def test_mixed_fields_are_rejected():
    with pytest.raises(FieldMismatchError):
        field(5).one + field(7).one
    with pytest.raises(TypeError):
        field(4).one * field(8).one


def test_custom_modulus():
    spec = FieldSpec(2, 3, (1, 1, 0, 1))
    assert spec != field(8)
    assert spec.q == 8
    x = spec.element((0, 1, 0))
    assert x ** 3 == x + 1
    with pytest.raises(InputError):
        FieldSpec(2, 3, (1, 0, 0, 1))
    with pytest.raises(InputError):
        FieldSpec(4, 1)


@pytest.mark.parametrize("q", [3, 4, 8, 9])
def test_multiplication_table(q):
    spec = field(q)
    table = spec.mul_table
    assert table.shape == (q, q)
    assert np.array_equal(table, table.T)
    elems = list(spec.elements())
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            assert table[i, j] == (a * b).index
    assert spec.metadata()["modulus"] == list(spec.modulus)


def test_elements_never_equal_plain_ints():
    spec = field(5)
    two = spec.element(2)
    assert two != 2
    assert two != 7
    assert two == spec.element(7)
    assert hash(two) == hash(spec.element(7))
    assert len({two, spec.element(7), 2, 7}) == 3
    assert two + 3 == spec.zero
