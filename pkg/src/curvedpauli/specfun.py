"""Gauss hypergeometric 2F1 for the parameter regimes the mode functions need.

Three evaluation routes cover every argument the package produces:

* polynomial: a (or b) is a non-positive integer, the series terminates
  exactly and is valid for any y < 1;
* direct series: 0 <= y <= 1/2, plain convergent summation;
* Pfaff transform: y < 0 is mapped to y/(y-1) in [0, 1) via
  F(a,b;c;y) = (1-y)^(-a) F(a, c-b; c; y/(y-1)).

For 1/2 < y < 1 the y -> 1-y connection formula is applied only when
c-a-b is not an integer; the logarithmic integer case is a documented
refusal (no evaluation in this package reaches it).

Parameters are complex throughout; the conjugate-pair parameters of the
oscillating model make that the natural scalar type.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from scipy.special import gamma as _complex_gamma

from .errors import ConvergenceError, DomainError, PoleError

INT_TOL = 1e-12          # |z - round(z)| below this counts as an integer
TERM_RTOL = 1e-16        # term magnitude threshold relative to the partial sum
CONSECUTIVE_SMALL = 25   # consecutive sub-threshold terms required to stop
MAX_TERMS = 10_000       # hard cap for non-terminating series


class Regime(Enum):
    """Evaluation route for a 2F1 call."""

    POLYNOMIAL = "polynomial"
    DIRECT_SERIES = "direct-series"
    PFAFF_TRANSFORMED = "pfaff-transformed"


def _as_nonpositive_int(z: complex) -> int | None:
    """Return n >= 0 when z is within INT_TOL of the integer -n, else None."""
    if abs(z.imag) > INT_TOL:
        return None
    nearest = round(z.real)
    if abs(z.real - nearest) > INT_TOL or nearest > 0:
        return None
    return -int(nearest)


def _termination_order(a: complex, b: complex) -> int | None:
    """Degree at which the series terminates, or None if it does not."""
    orders = [n for n in (_as_nonpositive_int(a), _as_nonpositive_int(b)) if n is not None]
    return min(orders) if orders else None


@dataclass(frozen=True)
class HypParams:
    """Parameters (a, b, c) of a 2F1 evaluation plus the dispatch regime.

    The regime is derived: polynomial exactly when a or b is a
    non-positive integer (tolerance INT_TOL); otherwise the constructor
    default is the direct series, and `classify` picks the Pfaff route
    for negative arguments. Construction fails with PoleError when c is
    a non-positive integer the series would actually divide by.
    """

    a: complex
    b: complex
    c: complex
    regime: Regime = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        n_stop = _termination_order(self.a, self.b)
        if self.regime is None:
            inferred = Regime.POLYNOMIAL if n_stop is not None else Regime.DIRECT_SERIES
            object.__setattr__(self, "regime", inferred)
        elif (self.regime is Regime.POLYNOMIAL) != (n_stop is not None):
            raise DomainError(
                f"regime {self.regime.value} contradicts parameters a={self.a}, b={self.b}"
            )
        pole = _as_nonpositive_int(self.c)
        if pole is not None and (n_stop is None or n_stop > pole):
            raise PoleError(
                f"c={self.c} is a non-positive integer hit before the series terminates"
            )

    @classmethod
    def classify(cls, a: complex, b: complex, c: complex, y: float) -> "HypParams":
        """Build params with the regime the argument y will dispatch to."""
        if _termination_order(complex(a), complex(b)) is not None:
            regime = Regime.POLYNOMIAL
        elif y < 0:
            regime = Regime.PFAFF_TRANSFORMED
        else:
            regime = Regime.DIRECT_SERIES
        return cls(a, b, c, regime)


def pochhammer(x: complex, k: int) -> complex:
    """Rising factorial x(x+1)...(x+k-1); equals 1 for k = 0."""
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"pochhammer order must be a non-negative integer, got {k!r}")
    out = complex(1.0)
    for i in range(k):
        out *= x + i
    return out


@lru_cache(maxsize=1 << 18)
def _series(a: complex, b: complex, c: complex, y: float) -> complex:
    """Sum the defining series; exact truncation when a or b is -n.

    Residual stencils re-evaluate the same (params, y) pairs across
    engines, so the scalar sum is memoized.
    """
    n_stop = _termination_order(a, b)
    term = complex(1.0)
    total = complex(1.0)
    small_run = 0
    for k in range(MAX_TERMS):
        if n_stop is not None and k >= n_stop:
            return total
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * y
        total += term
        if abs(term) < TERM_RTOL * abs(total):
            small_run += 1
            if small_run >= CONSECUTIVE_SMALL:
                return total
        else:
            small_run = 0
    raise ConvergenceError(f"2F1 series did not converge for a={a}, b={b}, c={c}, y={y}")


def hyp2f1(p: HypParams, y: float) -> complex:
    """Evaluate 2F1(a, b; c; y) by the regime-appropriate route.

    Raises DomainError for y >= 1 and NotImplementedError for
    1/2 < y < 1 with integer c-a-b (logarithmic connection case).
    """
    y = float(y)
    if y >= 1.0:
        raise DomainError(f"2F1 argument must satisfy y < 1, got {y}")
    if p.regime is Regime.POLYNOMIAL:
        return _series(p.a, p.b, p.c, y)
    if y < 0.0:
        # Pfaff: argument y/(y-1) lies in [0, 1) and below 1/2 for y > -1;
        # it approaches 1 only as y -> -inf, where the series still converges.
        return (1.0 - y) ** (-p.a) * _series(p.a, p.c - p.b, p.c, y / (y - 1.0))
    if y <= 0.5:
        return _series(p.a, p.b, p.c, y)
    return _connection_upper(p, y)


def _connection_upper(p: HypParams, y: float) -> complex:
    """y -> 1-y linear connection formula for 1/2 < y < 1, non-integer c-a-b."""
    s = p.c - p.a - p.b
    if abs(s.imag) < INT_TOL and abs(s.real - round(s.real)) < INT_TOL:
        raise NotImplementedError(
            "2F1 with 1/2 < y < 1 and integer c-a-b needs the logarithmic "
            "connection formula, which this package does not implement"
        )
    g = _complex_gamma
    first = (
        complex(g(p.c)) * complex(g(s)) / (complex(g(p.c - p.a)) * complex(g(p.c - p.b)))
        * _series(p.a, p.b, p.a + p.b - p.c + 1.0, 1.0 - y)
    )
    second = (
        (1.0 - y) ** s
        * complex(g(p.c)) * complex(g(-s)) / (complex(g(p.a)) * complex(g(p.b)))
        * _series(p.c - p.a, p.c - p.b, s + 1.0, 1.0 - y)
    )
    return first + second


def hyp2f1_deriv(p: HypParams, y: float) -> complex:
    """d/dy 2F1(a, b; c; y) = (ab/c) 2F1(a+1, b+1; c+1; y)."""
    if p.a == 0 or p.b == 0:
        return complex(0.0)
    shifted = HypParams(p.a + 1.0, p.b + 1.0, p.c + 1.0)
    return (p.a * p.b / p.c) * hyp2f1(shifted, y)
