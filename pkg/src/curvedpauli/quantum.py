"""Exact half-integer arithmetic and mode quantum numbers.

Angular momentum labels j, m and the spin projection sigma are half-odd
integers. Storing twice the value as a plain int keeps every comparison and
every recurrence coefficient exact; floats appear only at evaluation
boundaries (trig arguments, prefactor exponents).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


@dataclass(frozen=True, order=False)
class HalfInt:
    """A number of the form twice/2 with twice an exact signed integer.

    Examples
    --------
    >>> HalfInt.parse("3/2") + HalfInt.parse("1/2")
    HalfInt(twice=4)
    >>> float(HalfInt(3))
    1.5
    """

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise DomainError(f"twice must be an int, got {self.twice!r}")

    @classmethod
    def from_int(cls, value: int) -> "HalfInt":
        return cls(2 * value)

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        """Parse "p/2", "-p/2", or a plain integer string."""
        s = text.strip()
        try:
            frac = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse half-integer from {text!r}") from exc
        doubled = frac * 2
        if doubled.denominator != 1:
            raise DomainError(f"{text!r} is not a half-integer")
        return cls(int(doubled))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __add__(self, other: "HalfInt | int") -> "HalfInt":
        return HalfInt(self.twice + _twice_of(other))

    def __radd__(self, other: int) -> "HalfInt":
        return HalfInt(_twice_of(other) + self.twice)

    def __sub__(self, other: "HalfInt | int") -> "HalfInt":
        return HalfInt(self.twice - _twice_of(other))

    def __rsub__(self, other: int) -> "HalfInt":
        return HalfInt(_twice_of(other) - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HalfInt):
            return self.twice == other.twice
        if isinstance(other, int):
            return self.twice == 2 * other
        if isinstance(other, float):
            return self.twice / 2.0 == other
        return NotImplemented

    def __hash__(self) -> int:
        # hash consistently with the numeric value so HalfInt(2) == 1 hashes alike
        return hash(self.twice / 2) if self.twice % 2 else hash(self.twice // 2)

    def __lt__(self, other: "HalfInt | int | float") -> bool:
        return self.twice / 2.0 < _value_of(other)

    def __le__(self, other: "HalfInt | int | float") -> bool:
        return self.twice / 2.0 <= _value_of(other)

    def __gt__(self, other: "HalfInt | int | float") -> bool:
        return self.twice / 2.0 > _value_of(other)

    def __ge__(self, other: "HalfInt | int | float") -> bool:
        return self.twice / 2.0 >= _value_of(other)


def _twice_of(other: HalfInt | int) -> int:
    if isinstance(other, HalfInt):
        return other.twice
    if isinstance(other, int):
        return 2 * other
    raise TypeError(f"cannot combine HalfInt with {type(other).__name__}")


def _value_of(other: HalfInt | int | float) -> float:
    if isinstance(other, HalfInt):
        return other.twice / 2.0
    return float(other)


@dataclass(frozen=True)
class QuantumNumbers:
    """Labels (j, m, n, delta) of a fixed-parity mode.

    j must be half-odd (1/2, 3/2, ...), m ranges over -j..j in integer
    steps, n counts radial nodes, and delta = +-1 labels the parity
    sector. The coupling constant nu = j + 1/2 is derived, never stored.
    """

    j: HalfInt
    m: HalfInt
    n: int
    delta: int

    def __post_init__(self) -> None:
        if self.j.twice < 1 or self.j.twice % 2 == 0:
            raise DomainError(f"j must be one of 1/2, 3/2, ...; got {self.j}")
        if self.m.twice % 2 != self.j.twice % 2:
            raise DomainError(f"m={self.m} is not an integer step from j={self.j}")
        if abs(self.m.twice) > self.j.twice:
            raise DomainError(f"|m|={abs(self.m)} exceeds j={self.j}")
        if not isinstance(self.n, int) or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        if self.delta not in (1, -1):
            raise DomainError(f"delta must be +1 or -1, got {self.delta!r}")

    @property
    def nu(self) -> int:
        """The integer nu = j + 1/2."""
        return (self.j.twice + 1) // 2
