"""Half-integer arithmetic and quantum-number validation."""
from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from curvedpauli import DomainError, HalfInt, QuantumNumbers


def test_parse_accepts_fraction_and_integer_strings():
    assert HalfInt.parse("1/2").twice == 1
    assert HalfInt.parse("3/2").twice == 3
    assert HalfInt.parse("-1/2").twice == -1
    assert HalfInt.parse("2").twice == 4
    assert HalfInt.parse(" 7/2 ").twice == 7
    assert HalfInt.parse("-3").twice == -6


@pytest.mark.parametrize("bad", ["", "abc", "1/3", "0.25", "1/0", "3/4"])
def test_parse_rejects_non_half_integers(bad):
    with pytest.raises(DomainError):
        HalfInt.parse(bad)


def test_str_renders_halves_and_integers():
    assert str(HalfInt(1)) == "1/2"
    assert str(HalfInt(-3)) == "-3/2"
    assert str(HalfInt(4)) == "2"
    assert str(HalfInt(0)) == "0"


def test_float_and_is_integer():
    assert float(HalfInt(1)) == 0.5
    assert float(HalfInt(-5)) == -2.5
    assert HalfInt(4).is_integer
    assert not HalfInt(3).is_integer


def test_arithmetic():
    assert HalfInt(1) + HalfInt(2) == HalfInt(3)
    assert HalfInt(3) - HalfInt(1) == HalfInt(2)
    assert HalfInt(1) + 1 == HalfInt(3)
    assert 1 + HalfInt(1) == HalfInt(3)
    assert 2 - HalfInt(1) == HalfInt(3)
    assert -HalfInt(3) == HalfInt(-3)
    assert abs(HalfInt(-5)) == HalfInt(5)


def test_comparisons_against_numbers():
    assert HalfInt(1) == 0.5
    assert HalfInt(2) == 1
    assert HalfInt(1) < 1
    assert HalfInt(1) <= 0.5
    assert HalfInt(3) > 1
    assert HalfInt(3) >= 1.5
    assert HalfInt(1) != HalfInt(3)


def test_hash_agrees_with_numeric_value():
    assert hash(HalfInt(2)) == hash(1)
    assert hash(HalfInt(1)) == hash(0.5)
    lookup = {HalfInt(1): "a", HalfInt(2): "b"}
    assert lookup[HalfInt(1)] == "a"


def test_twice_must_be_an_int():
    with pytest.raises(DomainError):
        HalfInt(1.5)  # type: ignore[arg-type]
    with pytest.raises(DomainError):
        HalfInt(True)  # type: ignore[arg-type]


@given(st.integers(min_value=-200, max_value=200))
def test_parse_str_round_trip(twice):
    h = HalfInt(twice)
    assert HalfInt.parse(str(h)) == h
    assert float(h) == twice / 2.0


def test_quantum_numbers_accepts_valid_combinations():
    qn = QuantumNumbers(j=HalfInt(3), m=HalfInt(-1), n=2, delta=-1)
    assert float(qn.j) == 1.5
    assert qn.nu == 2


@pytest.mark.parametrize(
    "j,m,n,delta",
    [
        (HalfInt(2), HalfInt(0), 0, 1),    # j integer: not half-odd
        (HalfInt(-1), HalfInt(-1), 0, 1),  # j negative
        (HalfInt(1), HalfInt(2), 0, 1),    # m not an integer step from j
        (HalfInt(1), HalfInt(3), 0, 1),    # |m| > j
        (HalfInt(1), HalfInt(1), -1, 1),   # n negative
        (HalfInt(1), HalfInt(1), 0, 2),    # delta not a sign
        (HalfInt(1), HalfInt(1), 0, 0),
    ],
)
def test_quantum_numbers_rejects_invalid_combinations(j, m, n, delta):
    with pytest.raises(DomainError):
        QuantumNumbers(j=j, m=m, n=n, delta=delta)


def test_nu_is_j_plus_half():
    for twice, nu in [(1, 1), (3, 2), (5, 3), (7, 4)]:
        qn = QuantumNumbers(j=HalfInt(twice), m=HalfInt(1), n=0, delta=1)
        assert qn.nu == nu
        assert math.isclose(float(qn.j) + 0.5, nu)
