"""Residual engines for every equation in the reduction chain.

Each engine evaluates a closed-form mode on a grid, applies the equation's
differential operator (radial derivatives by 4th-order central stencils,
time derivatives analytically through the separated phase), and reports
the max and RMS residual normalized by the largest big-component value on
the grid. Exact modes must sit at stencil-error level; perturbed ones
must not.

The unit-modulus separated phase is divided out everywhere: it cancels in
absolute values and would only add rounding noise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import ConvergenceError, DomainError, GridError, QuadratureError
from .model import (
    Model,
    ModelKind,
    ParitySector,
    effective_potential,
    radial_weight,
    scale_factor,
    scale_factor_deriv,
)
from .quantum import HalfInt, QuantumNumbers
from .radial import (
    RadialMode,
    ads_mode,
    ds_mode,
    normalized_ds_mode,
    pauli_wavefunction,
    radial_big,
    radial_small,
)

FD_BASE_STEP = 2e-3   # radial stencil step, capped by distance to a domain edge
FD_EDGE_FRACTION = 0.4
ORACLE_RTOL = 1e-3    # allowed eigenvalue shift when the oracle grid doubles
QUAD_RTOL = 1e-12     # Gram-matrix quadrature doubling tolerance


class EquationId(Enum):
    """Stable report identifiers for the verified equations."""

    RELATIVISTIC_SYSTEM_EXPANDING = "RelativisticFirstOrder_1_9"
    REDUCED_SYSTEM = "ReducedSystem_1_12"
    PAULI_PDE_EXPANDING = "PauliPDE_1_15"
    RADIAL_ODE_EXPANDING = "RadialODE_1_18a"
    RELATIVISTIC_SYSTEM_OSCILLATING = "AdSSystem_2_4"
    PAULI_PDE_OSCILLATING = "AdSPDE_2_8"
    RADIAL_ODE_OSCILLATING = "AdSRadialODE_2_11a"


@dataclass(frozen=True)
class Grid:
    """Evaluation points, strictly inside the open coordinate domains."""

    r_points: tuple[float, ...]
    t_points: tuple[float, ...]
    margin: float = 0.05

    def __post_init__(self) -> None:
        object.__setattr__(self, "r_points", tuple(float(r) for r in self.r_points))
        object.__setattr__(self, "t_points", tuple(float(t) for t in self.t_points))
        if not self.r_points:
            raise GridError("grid has no radial points")
        if not self.t_points:
            raise GridError("grid has no time points")
        if any(b <= a for a, b in zip(self.r_points, self.r_points[1:])):
            raise GridError("radial points must be strictly increasing")
        if any(b <= a for a, b in zip(self.t_points, self.t_points[1:])):
            raise GridError("time points must be strictly increasing")
        if self.margin < 0:
            raise GridError(f"margin must be non-negative, got {self.margin}")


DEFAULT_T_SPAN = {
    ModelKind.EXPANDING_DS: (-2.0, 2.0),
    ModelKind.OSCILLATING_ADS: (-1.2, 1.2),
}
DEFAULT_ADS_R_MAX = 3.0


def default_grid(
    model: Model,
    r_count: int = 41,
    t_count: int = 7,
    margin: float = 0.05,
    r_max: float | None = None,
    t_span: tuple[float, float] | None = None,
) -> Grid:
    """Uniform grid spanning the model's domain, `margin` away from edges."""
    if r_count < 1 or t_count < 1:
        raise GridError("grid counts must be positive")
    if margin <= 0:
        raise GridError("margin must be positive for a default grid")
    if model.kind is ModelKind.EXPANDING_DS:
        hi = math.pi - margin
    else:
        hi = (DEFAULT_ADS_R_MAX if r_max is None else r_max)
    lo = margin
    if not hi > lo:
        raise GridError(f"empty radial span [{lo}, {hi}]")
    t_lo, t_hi = DEFAULT_T_SPAN[model.kind] if t_span is None else t_span
    r_points = tuple(np.linspace(lo, hi, r_count)) if r_count > 1 else (0.5 * (lo + hi),)
    t_points = tuple(np.linspace(t_lo, t_hi, t_count)) if t_count > 1 else (0.5 * (t_lo + t_hi),)
    return Grid(r_points=r_points, t_points=t_points, margin=margin)


@dataclass(frozen=True)
class ResidualReport:
    """Normalized residual summary for one equation on one mode."""

    equation_id: EquationId
    max_abs: float
    rms: float
    grid: Grid
    mode: RadialMode

    def __post_init__(self) -> None:
        if not (self.max_abs >= self.rms >= 0.0):
            raise DomainError(
                f"report must satisfy max_abs >= rms >= 0, got {self.max_abs}, {self.rms}"
            )

    @property
    def mode_label(self) -> str:
        qn = self.mode.qn
        return (
            f"{self.mode.model.kind.value}:j={qn.j},m={qn.m},n={qn.n},"
            f"delta={qn.delta:+d},E={self.mode.E:.9g}"
        )


def _edge_distance(model: Model, r: float) -> float:
    if model.kind is ModelKind.EXPANDING_DS:
        return min(r, math.pi - r)
    return r


def _step(model: Model, r: float) -> float:
    dist = _edge_distance(model, r)
    if dist <= 0:
        raise GridError(f"r={r} is outside the open radial domain")
    return min(FD_BASE_STEP, FD_EDGE_FRACTION * dist)


def _check_grid(model: Model, grid: Grid) -> None:
    lo, hi = model.r_domain
    for r in grid.r_points:
        h = _step(model, r)  # raises GridError at or beyond the edge
        if not (lo < r - 2 * h and r + 2 * h < hi):
            raise GridError(f"stencil around r={r} exits the domain ({lo}, {hi})")
    t_lo, t_hi = model.t_domain
    for t in grid.t_points:
        if not t_lo < t < t_hi:
            raise GridError(f"t={t} outside the open time domain ({t_lo}, {t_hi})")


def _fd1(f: Callable[[float], complex], x: float, h: float) -> complex:
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def _fd2(f: Callable[[float], complex], x: float, h: float) -> complex:
    return (
        -f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)
    ) / (12 * h * h)


def _summarize(
    residuals: Sequence[float],
    scale: float,
    equation_id: EquationId,
    grid: Grid,
    mode: RadialMode,
) -> ResidualReport:
    if scale == 0.0:
        raise GridError("big component vanishes on the whole grid; cannot normalize")
    normalized = [v / scale for v in residuals]
    max_abs = max(normalized)
    rms = math.sqrt(sum(v * v for v in normalized) / len(normalized))
    return ResidualReport(
        equation_id=equation_id, max_abs=max_abs, rms=rms, grid=grid, mode=mode
    )


def _ode_equation_id(model: Model) -> EquationId:
    if model.kind is ModelKind.EXPANDING_DS:
        return EquationId.RADIAL_ODE_EXPANDING
    return EquationId.RADIAL_ODE_OSCILLATING


def _pde_equation_id(model: Model) -> EquationId:
    if model.kind is ModelKind.EXPANDING_DS:
        return EquationId.PAULI_PDE_EXPANDING
    return EquationId.PAULI_PDE_OSCILLATING


def _relativistic_equation_id(model: Model) -> EquationId:
    if model.kind is ModelKind.EXPANDING_DS:
        return EquationId.RELATIVISTIC_SYSTEM_EXPANDING
    return EquationId.RELATIVISTIC_SYSTEM_OSCILLATING


def radial_ode_residual(mode: RadialMode, grid: Grid) -> ResidualReport:
    """Residual of f'' - V f + 2ME f = 0 on the closed-form big component."""
    _check_grid(mode.model, grid)
    sector = ParitySector(mode.qn.delta)
    big = lambda r: radial_big(mode, r)
    values = [big(r) for r in grid.r_points]
    scale = max(abs(v) for v in values)
    two_me = mode.two_me
    residuals = []
    for r, f_val in zip(grid.r_points, values):
        h = _step(mode.model, r)
        d2 = _fd2(big, r, h)
        v_pot = effective_potential(mode.model, sector, mode.qn.j, r)
        residuals.append(abs(d2 - v_pot * f_val + two_me * f_val))
    return _summarize(residuals, scale, _ode_equation_id(mode.model), grid, mode)


def pauli_pde_residual(mode: RadialMode, grid: Grid) -> ResidualReport:
    """Residual of i du/dt = -(1/(2M chi^2)) (d^2/dr^2 - V) u on phase x radial.

    With u = e^{-iE tau(t)} f(r), the analytic time derivative contributes
    (E/chi^2) u, so the residual is (1/chi^2) |E f + (f'' - V f)/(2M)| with
    the phase divided out.
    """
    _check_grid(mode.model, grid)
    sector = ParitySector(mode.qn.delta)
    big = lambda r: radial_big(mode, r)
    values = [big(r) for r in grid.r_points]
    scale = max(abs(v) for v in values)
    mass = mode.model.mass
    radial_part = []
    for r, f_val in zip(grid.r_points, values):
        h = _step(mode.model, r)
        d2 = _fd2(big, r, h)
        v_pot = effective_potential(mode.model, sector, mode.qn.j, r)
        radial_part.append(mode.E * f_val + (d2 - v_pot * f_val) / (2.0 * mass))
    residuals = []
    for t in grid.t_points:
        inv_chi_sq = 1.0 / scale_factor(mode.model, t) ** 2
        for part in radial_part:
            residuals.append(abs(part) * inv_chi_sq)
    return _summarize(residuals, scale, _pde_equation_id(mode.model), grid, mode)


def first_order_residual(mode: RadialMode, grid: Grid) -> ResidualReport:
    """Residual of both reduced first-order equations (big evolution plus
    small-component definition), with the small component reconstructed
    analytically and re-differentiated by stencil."""
    _check_grid(mode.model, grid)
    mass = mode.model.mass
    nu = float(mode.nu)
    big = lambda r: radial_big(mode, r)
    small0 = lambda r: radial_small(mode, r, 0.0)  # chi(0) = 1 in both models
    values = [big(r) for r in grid.r_points]
    scale = max(abs(v) for v in values)
    rows = []
    for r, big_val in zip(grid.r_points, values):
        h = _step(mode.model, r)
        w = radial_weight(mode.model, r)
        d_big = _fd1(big, r, h)
        d_small = _fd1(small0, r, h)
        small_val = small0(r)
        if mode.qn.delta == 1:
            # (1/chi)(f' + nu f/w) + 2M g = 0 ; (1/chi)(g' - nu g/w) = i df/dt
            eq1 = (d_big + nu * big_val / w) + 2.0 * mass * small_val
            eq2 = (d_small - nu * small_val / w) - mode.E * big_val
        else:
            # (1/chi)(f' + nu f/w) = -i dg/dt ; (1/chi)(g' - nu g/w) - 2M f = 0
            eq1 = (d_small + nu * small_val / w) + mode.E * big_val
            eq2 = (d_big - nu * big_val / w) - 2.0 * mass * small_val
        rows.append((abs(eq1), abs(eq2)))
    residuals = []
    for t in grid.t_points:
        chi = scale_factor(mode.model, t)
        for eq1_abs, eq2_abs in rows:
            if mode.qn.delta == 1:
                residuals.append(eq1_abs / chi)
                residuals.append(eq2_abs / chi**2)
            else:
                residuals.append(eq1_abs / chi**2)
                residuals.append(eq2_abs / chi)
    return _summarize(residuals, scale, EquationId.REDUCED_SYSTEM, grid, mode)


def _mode_for_mass(
    model_kind: ModelKind, qn: QuantumNumbers, mass: float, two_me: float | None
) -> RadialMode:
    model = Model(kind=model_kind, mass=mass)
    if model_kind is ModelKind.EXPANDING_DS:
        return ds_mode(model, qn)
    if two_me is None:
        raise DomainError("the oscillating model needs an explicit 2ME for scaling")
    return ads_mode(model, qn, two_me)


def relativistic_limit_scaling(
    model_kind: ModelKind,
    qn: QuantumNumbers,
    masses: Sequence[float],
    grid: Grid,
    two_me: float | None = None,
) -> list[tuple[float, float]]:
    """Residual of the exact first-order system on the rest-phase-restored
    pair (big, small), for each mass; the neglected i d/dt term makes the
    residual scale as 1/M.

    The pair is (F, G) = e^{-iMt} e^{-iE tau(t)} (big, small); the common
    phase is divided out and time derivatives are applied analytically:
    the static factor differentiates to -iM - iE/chi(t)^2, and the small
    component's extra 1/chi contributes -chi'/chi.
    """
    if len(masses) < 2:
        raise DomainError("need at least two masses")
    if any(b <= a for a, b in zip(masses, masses[1:])):
        raise DomainError("masses must be strictly increasing")
    out = []
    for mass in masses:
        mode = _mode_for_mass(model_kind, qn, float(mass), two_me)
        _check_grid(mode.model, grid)
        nu = float(mode.nu)
        big = lambda r: radial_big(mode, r)
        small0 = lambda r: radial_small(mode, r, 0.0)
        values = [big(r) for r in grid.r_points]
        scale = max(abs(v) for v in values)
        worst = 0.0
        per_r = []
        for r, big_val in zip(grid.r_points, values):
            h = _step(mode.model, r)
            per_r.append(
                (r, big_val, small0(r), _fd1(big, r, h), _fd1(small0, r, h))
            )
        for t in grid.t_points:
            chi = scale_factor(mode.model, t)
            chi_p = scale_factor_deriv(mode.model, t)
            dt_static = -1j * mass - 1j * mode.E / chi**2
            for r, big_val, small_val, d_big, d_small in per_r:
                w = radial_weight(mode.model, r)
                if mode.qn.delta == 1:
                    F, G = big_val, small_val / chi
                    dF_r, dG_r = d_big, d_small / chi
                    dt_F = dt_static * F
                    dt_G = (dt_static - chi_p / chi) * G
                else:
                    F, G = small_val / chi, big_val
                    dF_r, dG_r = d_small / chi, d_big
                    dt_F = (dt_static - chi_p / chi) * F
                    dt_G = dt_static * G
                res1 = (dF_r + nu / w * F) + 1j * chi * dt_G + mode.qn.delta * mass * chi * G
                res2 = (dG_r - nu / w * G) - 1j * chi * dt_F + mode.qn.delta * mass * chi * F
                worst = max(worst, abs(res1), abs(res2))
        if scale == 0.0:
            raise GridError("big component vanishes on the whole grid")
        out.append((float(mass), worst / scale))
    return out


def _oracle_eigenvalues(
    model: Model, j: HalfInt, delta: int, n_max: int, grid_size: int
) -> np.ndarray:
    h = math.pi / (grid_size + 1)
    r = np.arange(1, grid_size + 1) * h
    nu = (j.twice + 1) / 2.0
    v_pot = (nu * nu + delta * nu * np.cos(r)) / np.sin(r) ** 2
    diag = 2.0 / (h * h) + v_pot
    off = np.full(grid_size - 1, -1.0 / (h * h))
    return eigvalsh_tridiagonal(diag, off, select="i", select_range=(0, n_max))


def eigenvalue_oracle(
    model: Model, j: HalfInt, delta: int, n_max: int, grid_size: int = 4000
) -> list[float]:
    """Lowest 2ME values of -d^2/dr^2 + V on (0, pi), Dirichlet edges.

    Independent of the closed forms: a uniform 3-point Laplacian plus the
    sector potential, solved as a symmetric tridiagonal eigenproblem.
    Doubling the grid must move no eigenvalue by more than ORACLE_RTOL
    relative, else ConvergenceError.
    """
    if model.kind is not ModelKind.EXPANDING_DS:
        raise DomainError("the eigenvalue oracle applies to the expanding model only")
    if delta not in (1, -1):
        raise DomainError(f"delta must be +1 or -1, got {delta!r}")
    if n_max < 0 or grid_size < n_max + 3:
        raise DomainError("grid_size too small for the requested eigenvalue count")
    coarse = _oracle_eigenvalues(model, j, delta, n_max, grid_size)
    fine = _oracle_eigenvalues(model, j, delta, n_max, 2 * grid_size)
    shift = np.max(np.abs(coarse - fine) / np.abs(fine))
    if shift > ORACLE_RTOL:
        raise ConvergenceError(
            f"oracle eigenvalues moved by {shift:.2e} relative when doubling "
            f"grid_size={grid_size}"
        )
    return [float(v) for v in coarse]


def orthogonality_gram(
    j: HalfInt, delta: int, n_max: int, quadrature_points: int = 160
) -> np.ndarray:
    """Gram matrix of the normalized expanding-model radial functions.

    Entries are the dr inner products on (0, pi); distinct-n modes of one
    (j, delta) sector are orthogonal, so the matrix must be the identity.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    model = Model(kind=ModelKind.EXPANDING_DS, mass=1.0)
    modes = [
        normalized_ds_mode(model, QuantumNumbers(j=j, m=j, n=n, delta=delta))
        for n in range(n_max + 1)
    ]

    def gram(points: int) -> np.ndarray:
        nodes, weights = np.polynomial.legendre.leggauss(points)
        half = 0.5 * math.pi
        r_vals = half * (nodes + 1.0)
        samples = np.array(
            [[radial_big(mode, float(r)) for r in r_vals] for mode in modes]
        )
        g = np.empty((len(modes), len(modes)))
        for i in range(len(modes)):
            for k in range(len(modes)):
                g[i, k] = (half * np.sum(weights * samples[i] * np.conj(samples[k]))).real
        return g

    coarse = gram(quadrature_points)
    fine = gram(2 * quadrature_points)
    if np.max(np.abs(coarse - fine)) > QUAD_RTOL * max(1.0, np.max(np.abs(fine))):
        raise QuadratureError("Gram quadrature did not converge under doubling")
    return fine


def density_stationarity(
    mode: RadialMode, samples: int = 100, seed: int = 20240817
) -> float:
    """Max |density(t1, x) - density(t2, x)| over random sample pairs.

    The separated phase has unit modulus, so the two-component density
    must be time-independent to rounding.
    """
    rng = np.random.default_rng(seed)
    t_lo, t_hi = DEFAULT_T_SPAN[mode.model.kind]
    if mode.model.kind is ModelKind.EXPANDING_DS:
        r_lo, r_hi = 0.05, math.pi - 0.05
    else:
        r_lo, r_hi = 0.05, DEFAULT_ADS_R_MAX
    worst = 0.0
    for _ in range(samples):
        r = float(rng.uniform(r_lo, r_hi))
        theta = float(rng.uniform(0.1, math.pi - 0.1))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        t1 = float(rng.uniform(t_lo, t_hi))
        t2 = float(rng.uniform(t_lo, t_hi))
        d1 = pauli_wavefunction(mode, t1, r, theta, phi).density
        d2 = pauli_wavefunction(mode, t2, r, theta, phi).density
        worst = max(worst, abs(d1 - d2))
    return worst
