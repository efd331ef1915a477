"""Closed-form radial modes, spectra, two-component samples, normalization.

Big components (amplitude C, nu = j + 1/2, y the model's radial argument):

expanding, delta=+1:   f(r) = C sin^{nu+1}(r/2) cos^{nu}(r/2)  F(-n, n+2j+2; j+2; y)
expanding, delta=-1:   g(r) = C sin^{nu}(r/2) cos^{nu+1}(r/2)  F(-n, n+2j+2; j+1; y)
oscillating, delta=+1: f(r) = C sinh^{nu+1}(r/2) cosh^{nu}(r/2) F(a, b; j+2; y)
oscillating, delta=-1: g(r) = C sinh^{nu}(r/2) cosh^{nu+1}(r/2) F(a, b; j+1; y)

with a = 1+j-i sqrt(2ME), b = 1+j+i sqrt(2ME) for the oscillating model.
The negative-base power y^A of the oscillating model is taken as |y|^A
with the constant phase absorbed into C, so values stay real for real C.

Small components restore the suppressed partner at order 1/M:

delta=+1:  g_small(r, t) = -(1/(2 M chi(t))) (f'(r) + nu f(r)/w(r))
delta=-1:  f_small(r, t) = +(1/(2 M chi(t))) (g'(r) - nu g(r)/w(r))

The separated time phase e^{-iE tau(t)} is applied by callers (it passes
through the radial operators unchanged); radial_small carries only the
1/chi(t) factor of the reduction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, NotQuantizedError, QuadratureError
from .model import (
    Model,
    ModelKind,
    radial_argument,
    radial_weight,
    scale_factor,
    time_profile,
)
from .quantum import HalfInt, QuantumNumbers
from .specfun import HypParams, hyp2f1, hyp2f1_deriv
from .angular import wigner_D

QUAD_RTOL = 1e-10  # relative change allowed when doubling quadrature points


@dataclass(frozen=True)
class RadialMode:
    """Descriptor of one closed-form radial solution.

    E is a spectral parameter (the separated phase's rate), not a
    stationary energy. `formal` marks the oscillating-model polynomial
    family reproduced from the printed closed form, whose 2ME is
    negative; it is excluded from the default verification suite.
    """

    model: Model
    qn: QuantumNumbers
    E: float
    amplitude: complex
    hyp: HypParams
    formal: bool = False

    @property
    def two_me(self) -> float:
        return 2.0 * self.model.mass * self.E

    @property
    def nu(self) -> int:
        return self.qn.nu

    def with_spectral_parameter(self, E: float) -> "RadialMode":
        """Copy with E replaced and the radial function left untouched.

        Deliberately skips factory validation: the result is generally a
        non-solution, which is the point of error-injection checks.
        """
        return replace(self, E=E)


@dataclass(frozen=True)
class PauliSample:
    """Two-component wave-function value at one spacetime-angle point."""

    up: complex
    down: complex

    @property
    def density(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2


def spectrum(model: Model, j: HalfInt, n: int) -> float:
    """Discrete spectral parameter E = (j+1+n)^2 / (2M) of the expanding model."""
    if model.kind is not ModelKind.EXPANDING_DS:
        raise NotQuantizedError(
            "the oscillating anti de Sitter model has no quantized spectrum; "
            "supply the spectral parameter explicitly"
        )
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    k = float(j) + 1.0 + n
    return k * k / (2.0 * model.mass)


def _hyp_c(j: HalfInt, delta: int) -> float:
    # c = j+2 pairs with the (nu+1, nu) prefactor, c = j+1 with (nu, nu+1)
    return float(j) + (2.0 if delta == 1 else 1.0)


def ds_mode(
    model: Model,
    qn: QuantumNumbers,
    amplitude: complex = 1.0,
) -> RadialMode:
    """Quantized mode of the expanding model; E from the quantization rule."""
    if model.kind is not ModelKind.EXPANDING_DS:
        raise DomainError("ds_mode requires the expanding model")
    e_val = spectrum(model, qn.j, qn.n)
    hyp = HypParams(-qn.n, qn.n + 2.0 * float(qn.j) + 2.0, _hyp_c(qn.j, qn.delta))
    return RadialMode(model=model, qn=qn, E=e_val, amplitude=complex(amplitude), hyp=hyp)


def ads_mode(
    model: Model,
    qn: QuantumNumbers,
    two_me: float,
    amplitude: complex = 1.0,
) -> RadialMode:
    """Continuous-parameter mode of the oscillating model, 2ME > 0."""
    if model.kind is not ModelKind.OSCILLATING_ADS:
        raise DomainError("ads_mode requires the oscillating model")
    if not two_me > 0.0:
        raise DomainError(f"2ME must be positive, got {two_me}")
    kappa = math.sqrt(two_me)
    hyp = HypParams(
        complex(1.0 + float(qn.j), -kappa),
        complex(1.0 + float(qn.j), +kappa),
        _hyp_c(qn.j, qn.delta),
    )
    return RadialMode(
        model=model, qn=qn, E=two_me / (2.0 * model.mass),
        amplitude=complex(amplitude), hyp=hyp,
    )


def ads_polynomial_mode(
    model: Model,
    qn: QuantumNumbers,
    amplitude: complex = 1.0,
) -> RadialMode:
    """Terminating-series family of the oscillating model.

    Reproduces the printed closed form F(-n, n+2nu+1; c; y), which forces
    2ME = -(j+1+n)^2 < 0. The derivation itself only supports 2ME > 0,
    so this family is flagged `formal` and kept out of the default
    verification suite.
    """
    if model.kind is not ModelKind.OSCILLATING_ADS:
        raise DomainError("ads_polynomial_mode requires the oscillating model")
    k = float(qn.j) + 1.0 + qn.n
    hyp = HypParams(-qn.n, qn.n + 2.0 * float(qn.j) + 2.0, _hyp_c(qn.j, qn.delta))
    return RadialMode(
        model=model, qn=qn, E=-k * k / (2.0 * model.mass),
        amplitude=complex(amplitude), hyp=hyp, formal=True,
    )


def _half_trig(mode: RadialMode, r: float) -> tuple[float, float]:
    """(sin, cos) or (sinh, cosh) of r/2 per the mode's background."""
    if mode.model.kind is ModelKind.EXPANDING_DS:
        return math.sin(0.5 * r), math.cos(0.5 * r)
    return math.sinh(0.5 * r), math.cosh(0.5 * r)


def _prefactor_exponents(mode: RadialMode) -> tuple[float, float]:
    nu = float(mode.nu)
    if mode.qn.delta == 1:
        return nu + 1.0, nu
    return nu, nu + 1.0


def radial_big(mode: RadialMode, r: float) -> complex:
    """Big-component value C * s^p * c^q * F(a, b; c; y(r))."""
    mode.model.check_r(r)
    s, c = _half_trig(mode, r)
    p, q = _prefactor_exponents(mode)
    y = radial_argument(mode.model, r)
    return mode.amplitude * s**p * c**q * hyp2f1(mode.hyp, y)


def radial_big_deriv(mode: RadialMode, r: float) -> complex:
    """Analytic d/dr of radial_big via the product rule and the 2F1 derivative.

    dy/dr is sin(r)/2 for the expanding model and -sinh(r)/2 for the
    oscillating one (the |y| convention flips the sign back into the
    prefactor's logarithmic derivative, which uses hyperbolic ratios).
    """
    mode.model.check_r(r)
    s, c = _half_trig(mode, r)
    p, q = _prefactor_exponents(mode)
    y = radial_argument(mode.model, r)
    pref = mode.amplitude * s**p * c**q
    f_val = hyp2f1(mode.hyp, y)
    f_der = hyp2f1_deriv(mode.hyp, y)
    if mode.model.kind is ModelKind.EXPANDING_DS:
        log_der = 0.5 * (p * c / s - q * s / c)
        dy_dr = s * c  # = sin(r)/2
    else:
        log_der = 0.5 * (p * c / s + q * s / c)
        dy_dr = -s * c  # = -sinh(r)/2
    return pref * (log_der * f_val + f_der * dy_dr)


def radial_small(mode: RadialMode, r: float, t: float) -> complex:
    """Suppressed-component value at (r, t), separated phase excluded.

    delta=+1 big f yields g_small = -(1/(2M chi)) (f' + nu f / w);
    delta=-1 big g yields f_small = +(1/(2M chi)) (g' - nu g / w).
    """
    mode.model.check_r(r)
    chi = scale_factor(mode.model, t)
    w = radial_weight(mode.model, r)
    big = radial_big(mode, r)
    dbig = radial_big_deriv(mode, r)
    nu = float(mode.nu)
    scale = 1.0 / (2.0 * mode.model.mass * chi)
    if mode.qn.delta == 1:
        return -scale * (dbig + nu * big / w)
    return +scale * (dbig - nu * big / w)


def pauli_wavefunction(
    mode: RadialMode, t: float, r: float, theta: float, phi: float
) -> PauliSample:
    """Two-component value: phase * big(r) * (D_{-1/2}, D_{+1/2}).

    D_sigma means D^j_{-m,sigma}(phi, theta, 0). Constant phases from the
    parity-basis change are absorbed into the amplitude convention.
    """
    phase = time_profile(mode.model, mode.E, t)
    big = radial_big(mode, r)
    d_minus = wigner_D(mode.qn.j, -mode.qn.m, HalfInt(-1), phi, theta)
    d_plus = wigner_D(mode.qn.j, -mode.qn.m, HalfInt(1), phi, theta)
    return PauliSample(up=phase * big * d_minus, down=phase * big * d_plus)


def _gauss_legendre_norm_sq(mode: RadialMode, points: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(points)
    half = 0.5 * math.pi
    r_vals = half * (nodes + 1.0)
    total = 0.0
    for r, w in zip(r_vals, weights):
        total += w * abs(radial_big(mode, float(r))) ** 2
    return half * total


def normalize_ds(mode: RadialMode, quadrature_points: int = 80) -> float:
    """Factor s with integral of |s * radial_big|^2 over (0, pi) equal to 1.

    Gauss-Legendre quadrature with a doubling self-check; the integrands
    are polynomials in sin/cos of r/2, so convergence is spectral.
    """
    if mode.model.kind is not ModelKind.EXPANDING_DS:
        raise DomainError("normalization is defined for the expanding model only")
    if quadrature_points < 2:
        raise DomainError("need at least 2 quadrature points")
    coarse = _gauss_legendre_norm_sq(mode, quadrature_points)
    fine = _gauss_legendre_norm_sq(mode, 2 * quadrature_points)
    if abs(fine - coarse) > QUAD_RTOL * abs(fine):
        raise QuadratureError(
            f"quadrature did not converge: {coarse!r} vs {fine!r} "
            f"at {quadrature_points} points"
        )
    return 1.0 / math.sqrt(fine)


def normalized_ds_mode(model: Model, qn: QuantumNumbers, quadrature_points: int = 80) -> RadialMode:
    """Convenience: expanding-model mode rescaled to unit L2 norm in dr."""
    mode = ds_mode(model, qn)
    factor = normalize_ds(mode, quadrature_points)
    return replace(mode, amplitude=mode.amplitude * factor)
