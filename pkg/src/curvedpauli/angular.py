"""Wigner rotation functions and the angular structure of the 4-spinor.

Everything here follows the Varshalovich convention:

    D^j_{m'm}(alpha, beta, gamma) = e^{-i m' alpha} d^j_{m'm}(beta) e^{-i m gamma},
    d^{1/2}_{1/2,1/2}(beta) = cos(beta/2),

with the third Euler angle fixed to zero. The spinor substitution pairs
component i with D_sigma where sigma = -1/2 for i in {1, 3} and +1/2 for
i in {2, 4}, each D_sigma meaning D^j_{-m,sigma}(phi, theta, 0).

The four recurrence identities that close the angular reduction are, with
a = (j + 1/2)/2 and b = sqrt((j - 1/2)(j + 3/2))/2 and m' = -m:

    d/dtheta D_{+1/2}                      =  a D_{-1/2} - b D_{+3/2}
    ((m' - cos(theta)/2)/sin(theta)) D_{+1/2} = -a D_{-1/2} - b D_{+3/2}
    d/dtheta D_{-1/2}                      =  b D_{-3/2} - a D_{+1/2}
    ((m' + cos(theta)/2)/sin(theta)) D_{-1/2} = -b D_{-3/2} - a D_{+1/2}
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError
from .quantum import HalfInt, QuantumNumbers

FD_STEP = 1e-4  # 4th-order central-difference step in radians


@dataclass(frozen=True)
class Spinor4Sample:
    """Value of the 4-component substitution at one spacetime-angle point."""

    components: tuple[complex, complex, complex, complex]


def _check_projection(j: HalfInt, m: HalfInt, name: str) -> None:
    if m.twice % 2 != j.twice % 2:
        raise DomainError(f"{name}={m} is not an integer step from j={j}")
    if abs(m.twice) > j.twice:
        raise DomainError(f"|{name}|={abs(m)} exceeds j={j}")


def wigner_small_d(j: HalfInt, mp: HalfInt, m: HalfInt, theta: float) -> float:
    """Small Wigner function d^j_{mp,m}(theta) by the explicit factorial sum.

    Factorials stay exact integers (2j is small here), so the only floating
    error is in the trigonometric powers.
    """
    if j.twice < 0:
        raise DomainError(f"j must be non-negative, got {j}")
    _check_projection(j, mp, "mp")
    _check_projection(j, m, "m")
    j_plus_m = (j.twice + m.twice) // 2
    j_minus_m = (j.twice - m.twice) // 2
    j_plus_mp = (j.twice + mp.twice) // 2
    j_minus_mp = (j.twice - mp.twice) // 2
    dm = (mp.twice - m.twice) // 2  # mp - m, an exact integer
    norm = math.sqrt(
        math.factorial(j_plus_mp) * math.factorial(j_minus_mp)
        * math.factorial(j_plus_m) * math.factorial(j_minus_m)
    )
    half = 0.5 * theta
    c = math.cos(half)
    s = math.sin(half)
    k_min = max(0, -dm)
    k_max = min(j_plus_m, j_minus_mp)
    total = 0.0
    for k in range(k_min, k_max + 1):
        denom = (
            math.factorial(j_plus_m - k) * math.factorial(k)
            * math.factorial(j_minus_mp - k) * math.factorial(dm + k)
        )
        sign = -1.0 if (k + dm) % 2 else 1.0
        total += sign / denom * c ** (j.twice - 2 * k - dm) * s ** (2 * k + dm)
    return norm * total


def wigner_D(j: HalfInt, mp: HalfInt, m: HalfInt, phi: float, theta: float) -> complex:
    """D^j_{mp,m}(phi, theta, 0) = e^{-i mp phi} d^j_{mp,m}(theta)."""
    return cmath.exp(-1j * float(mp) * phi) * wigner_small_d(j, mp, m, theta)


def _sigma_d(j: HalfInt, m: HalfInt, sigma_twice: int, theta: float) -> float:
    """d^j_{-m,sigma}(theta), taken as 0 when |sigma| exceeds j."""
    if abs(sigma_twice) > j.twice:
        return 0.0
    return wigner_small_d(j, -m, HalfInt(sigma_twice), theta)


def recurrence_coefficients(j: HalfInt) -> tuple[float, float]:
    """Coefficients a = (j+1/2)/2 and b = sqrt((j-1/2)(j+3/2))/2."""
    if j.twice < 1:
        raise DomainError(f"j must be at least 1/2, got {j}")
    jf = float(j)
    return (jf + 0.5) / 2.0, 0.5 * math.sqrt((jf - 0.5) * (jf + 1.5))


def _fd4(f: Callable[[float], float], x: float, h: float) -> float:
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def recurrence_residual(j: HalfInt, m: HalfInt, theta: float) -> float:
    """Max deviation over the four derivative/algebraic recurrence identities.

    The theta-derivatives are 4th-order central differences of the small-d
    functions; the algebraic sides use recurrence_coefficients.
    """
    if not 0.0 < theta < math.pi:
        raise DomainError(f"theta must lie strictly inside (0, pi), got {theta}")
    a, b = recurrence_coefficients(j)
    mpv = -float(m)  # m' = -m
    st, ct = math.sin(theta), math.cos(theta)
    d_p = _sigma_d(j, m, 1, theta)
    d_m = _sigma_d(j, m, -1, theta)
    d_p3 = _sigma_d(j, m, 3, theta)
    d_m3 = _sigma_d(j, m, -3, theta)
    ddp = _fd4(lambda t: _sigma_d(j, m, 1, t), theta, FD_STEP)
    ddm = _fd4(lambda t: _sigma_d(j, m, -1, t), theta, FD_STEP)
    residuals = (
        abs(ddp - (a * d_m - b * d_p3)),
        abs((mpv - 0.5 * ct) / st * d_p - (-a * d_m - b * d_p3)),
        abs(ddm - (b * d_m3 - a * d_p)),
        abs((mpv + 0.5 * ct) / st * d_m - (-b * d_m3 - a * d_p)),
    )
    return max(residuals)


def assemble_spinor(
    qn: QuantumNumbers,
    f: Sequence[complex],
    theta: float,
    phi: float,
) -> Spinor4Sample:
    """Evaluate the substitution (f1 D-, f2 D+, f3 D-, f4 D+) at one point."""
    if len(f) != 4:
        raise DomainError(f"need four component constants, got {len(f)}")
    phase = cmath.exp(-1j * (-float(qn.m)) * phi)
    d_minus = _sigma_d(qn.j, qn.m, -1, theta)
    d_plus = _sigma_d(qn.j, qn.m, 1, theta)
    return Spinor4Sample(
        (
            f[0] * phase * d_minus,
            f[1] * phase * d_plus,
            f[2] * phase * d_minus,
            f[3] * phase * d_plus,
        )
    )


def sigma_action_residual(
    qn: QuantumNumbers,
    f: Sequence[complex],
    theta: float,
    phi: float,
    nu_override: float | None = None,
) -> float:
    """Deviation of the angular operator action from the i*nu pattern.

    Applies the component-resolved angular operator to the assembled
    spinor (derivatives by 4th-order central differences) and compares
    with i*nu*(-f4 D-, +f3 D+, +f2 D-, -f1 D+). `nu_override` replaces
    nu in the expected pattern, for sanity checks only.
    """
    if len(f) != 4:
        raise DomainError(f"need four component constants, got {len(f)}")
    st, ct = math.sin(theta), math.cos(theta)
    if abs(st) < 1e-9:
        raise DomainError(f"theta={theta} is at a coordinate pole")

    def component(i: int, th: float, ph: float) -> complex:
        return assemble_spinor(qn, f, th, ph).components[i]

    def d_theta(i: int) -> complex:
        return _fd4(lambda t: component(i, t, phi), theta, FD_STEP)

    def d_phi(i: int) -> complex:
        return _fd4(lambda p: component(i, theta, p), phi, FD_STEP)

    def l_plus(i: int) -> complex:
        # (i d/dphi + (cos/2)) / sin acting on component i
        return (1j * d_phi(i) + 0.5 * ct * component(i, theta, phi)) / st

    def l_minus(i: int) -> complex:
        return (1j * d_phi(i) - 0.5 * ct * component(i, theta, phi)) / st

    got = (
        -1j * d_theta(3) + 1j * l_minus(3),
        -1j * d_theta(2) - 1j * l_plus(2),
        +1j * d_theta(1) - 1j * l_minus(1),
        +1j * d_theta(0) + 1j * l_plus(0),
    )
    nu = float(qn.nu) if nu_override is None else float(nu_override)
    base = assemble_spinor(qn, (1.0, 1.0, 1.0, 1.0), theta, phi).components
    want = (
        1j * nu * (-f[3]) * base[0],
        1j * nu * (+f[2]) * base[1],
        1j * nu * (+f[1]) * base[2],
        1j * nu * (-f[0]) * base[3],
    )
    return max(abs(g - w) for g, w in zip(got, want))


def reflect_spinor(qn: QuantumNumbers, f: Sequence[complex], theta: float, phi: float) -> Spinor4Sample:
    """Apply the spatial-reflection operator: component i maps to
    -component(5-i) evaluated at (pi - theta, phi + pi)."""
    refl = assemble_spinor(qn, f, math.pi - theta, phi + math.pi).components
    return Spinor4Sample((-refl[3], -refl[2], -refl[1], -refl[0]))


def parity_eigenvalue(j: HalfInt, delta: int) -> complex:
    """Reflection eigenvalue delta * e^{i pi (j+1)} of a fixed-parity state."""
    return delta * cmath.exp(1j * math.pi * (float(j) + 1.0))


def parity_check(
    qn: QuantumNumbers,
    f1: complex,
    f2: complex,
    theta: float,
    phi: float,
) -> float:
    """Max component deviation of reflection from its eigenvalue action.

    Builds the fixed-parity spinor (f1, f2, delta f2, delta f1), reflects
    it, and compares with delta * e^{i pi (j+1)} times the original.
    """
    constants = (f1, f2, qn.delta * f2, qn.delta * f1)
    psi = assemble_spinor(qn, constants, theta, phi).components
    reflected = reflect_spinor(qn, constants, theta, phi).components
    eig = parity_eigenvalue(qn.j, qn.delta)
    return max(abs(r - eig * p) for r, p in zip(reflected, psi))
