from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qzeta.quaternion import (
    I,
    J,
    K,
    GaussianRational,
    Q,
    Quaternion,
    format_rational,
    quaternion_from_json,
    quaternion_to_json,
    symplectic_decompose,
    symplectic_recompose,
)

ONE = Quaternion.one()

rationals = st.builds(Q, st.integers(-6, 6), st.integers(1, 5))
quaternions = st.builds(Quaternion, rationals, rationals, rationals, rationals)


def test_relation_table():
    assert I * I == J * J == K * K == -ONE
    assert I * J * K == -ONE
    assert (I * J, J * K, K * I) == (K, I, J)
    assert (J * I, K * J, I * K) == (-K, -I, -J)


def test_known_products():
    assert (ONE + I) * (ONE + J) == Quaternion(1, 1, 1, 1)
    assert (ONE + J) * (ONE + I) == Quaternion(1, 1, 1, -1)


def test_inverse_of_one_plus_ijk():
    x = Quaternion(1, 1, 1, 1)
    inv = x.inverse()
    assert inv == Quaternion(Q(1, 4), Q(-1, 4), Q(-1, 4), Q(-1, 4))
    assert x * inv == ONE and inv * x == ONE


def test_zero_not_invertible():
    with pytest.raises(ZeroDivisionError):
        Quaternion.zero().inverse()


def test_norm_and_real_part():
    x = Quaternion(1, 2, -3, Q(1, 2))
    assert x.norm2() == 1 + 4 + 9 + Q(1, 4)
    assert x.real == 1
    assert x * x.conj() == Quaternion(x.norm2())


def test_symplectic_parts_of_units():
    # x = a + j b with a = x0 + x1 i and b = x2 - x3 i
    assert symplectic_decompose(J) == (GaussianRational(0, 0), GaussianRational(1, 0))
    assert symplectic_decompose(K) == (GaussianRational(0, 0), GaussianRational(0, -1))
    assert J * I == -K  # j * i, consistent with b = -i giving k


@given(quaternions, quaternions, quaternions)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(quaternions, quaternions)
def test_conjugation_and_norm_laws(a, b):
    assert (a * b).conj() == b.conj() * a.conj()
    assert (a * b).norm2() == a.norm2() * b.norm2()
    assert (a * b).real == (b * a).real


@given(quaternions)
def test_inverse_two_sided(a):
    if a:
        assert a * a.inverse() == ONE == a.inverse() * a


@given(quaternions)
def test_symplectic_round_trip(a):
    assert symplectic_recompose(*symplectic_decompose(a)) == a


@given(quaternions)
def test_json_round_trip(a):
    assert quaternion_from_json(quaternion_to_json(a)) == a


def test_json_integer_shorthand_and_errors():
    assert quaternion_from_json(["1", "-2", "3/4", 0]) == Quaternion(1, -2, Q(3, 4), 0)
    with pytest.raises(ValueError):
        quaternion_from_json(["1", "2", "3"])
    with pytest.raises((ValueError, TypeError)):
        quaternion_from_json(["1", "2", "3", 0.5])
    with pytest.raises(ValueError):
        quaternion_from_json(["1", "x", "0", "0"])


def test_rational_parsing_and_formatting():
    assert Q("3/6") == Q(1, 2) == Fraction(1, 2)
    assert format_rational(Q(-4, 6)) == "-2/3"
    assert format_rational(Q(5)) == "5"
    with pytest.raises(ValueError):
        Q("1/2/3")


def test_string_form():
    assert str(K) == "k"
    assert str(Quaternion(Q(1, 2), -1, Q(-3, 2), 2)) == "1/2 - i - (3/2)j + 2k"
    assert str(Quaternion.zero()) == "0"


def test_power_and_hash():
    assert I**4 == ONE
    assert Quaternion(1, 1, 0, 0) ** 2 == 2 * I
    assert hash(Quaternion(3)) == hash(Q(3))
    assert Quaternion(3) == Q(3)
