"""The two cosmological backgrounds and their reduced-equation ingredients.

Units: curvature radius, hbar, and c are all 1, so mass, spectral
parameter, and coordinates are dimensionless.

expanding model      scale factor cosh(t), radial domain (0, pi),   w(r) = sin(r)
oscillating model    scale factor cos(t),  radial domain (0, inf),  w(r) = sinh(r)

The separated time phase integrates the 1/scale_factor^2 clock:
tanh(t) for the expanding model, tan(t) for the oscillating one. The
radial change of variable y = (1 - chi_r(r))/2 maps to sin^2(r/2) and
-sinh^2(r/2) respectively.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, SingularityError
from .quantum import HalfInt


class ModelKind(str, Enum):
    """Which background the mode lives on (wire values "ds" and "ads")."""

    EXPANDING_DS = "ds"
    OSCILLATING_ADS = "ads"


@dataclass(frozen=True)
class Model:
    """A background plus the nonrelativistic mass M."""

    kind: ModelKind
    mass: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.kind, ModelKind):
            object.__setattr__(self, "kind", ModelKind(self.kind))
        if not (self.mass > 0.0 and math.isfinite(self.mass)):
            raise DomainError(f"mass must be positive and finite, got {self.mass!r}")

    @property
    def r_domain(self) -> tuple[float, float]:
        if self.kind is ModelKind.EXPANDING_DS:
            return (0.0, math.pi)
        return (0.0, math.inf)

    @property
    def t_domain(self) -> tuple[float, float]:
        if self.kind is ModelKind.EXPANDING_DS:
            return (-math.inf, math.inf)
        return (-math.pi / 2.0, math.pi / 2.0)

    def check_r(self, r: float) -> None:
        lo, hi = self.r_domain
        if not lo < r < hi:
            raise DomainError(f"r={r} outside the open radial domain ({lo}, {hi})")

    def check_t(self, t: float) -> None:
        lo, hi = self.t_domain
        if not lo < t < hi:
            raise DomainError(f"t={t} outside the open time domain ({lo}, {hi})")


@dataclass(frozen=True)
class ParitySector:
    """Parity label delta; the potential sign is delta itself."""

    delta: int

    def __post_init__(self) -> None:
        if self.delta not in (1, -1):
            raise DomainError(f"delta must be +1 or -1, got {self.delta!r}")

    @property
    def sign(self) -> int:
        return self.delta


def scale_factor(model: Model, t: float) -> float:
    """cosh(t) for the expanding model, cos(t) for the oscillating one."""
    model.check_t(t)
    if model.kind is ModelKind.EXPANDING_DS:
        return math.cosh(t)
    return math.cos(t)


def scale_factor_deriv(model: Model, t: float) -> float:
    """d/dt of scale_factor; needed by the relativistic-limit residuals."""
    model.check_t(t)
    if model.kind is ModelKind.EXPANDING_DS:
        return math.sinh(t)
    return -math.sin(t)


def conformal_phase(model: Model, t: float) -> float:
    """The integrated clock tau(t): tanh(t) or tan(t)."""
    model.check_t(t)
    if model.kind is ModelKind.EXPANDING_DS:
        return math.tanh(t)
    return math.tan(t)


def time_profile(model: Model, E: float, t: float) -> complex:
    """Unit-modulus separated phase e^{-i E tau(t)}."""
    return cmath.exp(-1j * E * conformal_phase(model, t))


def radial_argument(model: Model, r: float) -> float:
    """Hypergeometric argument y: sin^2(r/2) or -sinh^2(r/2).

    The closed domain is accepted here; this is a change of variable,
    not an equation evaluation.
    """
    lo, hi = model.r_domain
    if not lo <= r <= hi:
        raise DomainError(f"r={r} outside the radial domain [{lo}, {hi}]")
    if model.kind is ModelKind.EXPANDING_DS:
        return math.sin(0.5 * r) ** 2
    return -math.sinh(0.5 * r) ** 2


def radial_weight(model: Model, r: float) -> float:
    """w(r) = sin(r) or sinh(r), the 1/w^2 potential denominator."""
    if model.kind is ModelKind.EXPANDING_DS:
        return math.sin(r)
    return math.sinh(r)


def radial_weight_cos(model: Model, r: float) -> float:
    """chi_r(r) = cos(r) or cosh(r), the sign-split potential numerator."""
    if model.kind is ModelKind.EXPANDING_DS:
        return math.cos(r)
    return math.cosh(r)


def sector_potential(nu: float, sign: int, chi_r: float, w: float) -> float:
    """(nu^2 + sign * nu * chi_r) / w^2, shared by both backgrounds.

    The two parity sectors are supersymmetric partners: the map
    (sign, nu) -> (-sign, -nu) leaves this value unchanged.
    """
    return (nu * nu + sign * nu * chi_r) / (w * w)


def effective_potential(model: Model, sector: ParitySector, j: HalfInt, r: float) -> float:
    """Sector-signed radial potential (nu^2 + delta nu chi_r(r)) / w(r)^2."""
    lo, hi = model.r_domain
    if not lo < r < hi:
        raise SingularityError(f"potential is singular or undefined at r={r}")
    nu = (j.twice + 1) / 2.0
    if j.twice < 1 or j.twice % 2 == 0:
        raise DomainError(f"j must be one of 1/2, 3/2, ...; got {j}")
    return sector_potential(nu, sector.sign, radial_weight_cos(model, r), radial_weight(model, r))
