"""Residual engines, the eigenvalue oracle, orthogonality, stationarity."""
from __future__ import annotations

import math

import numpy as np
import pytest

from curvedpauli import (
    ConvergenceError,
    DomainError,
    Grid,
    GridError,
    HalfInt,
    Model,
    ModelKind,
    QuantumNumbers,
    ads_mode,
    ads_polynomial_mode,
    default_grid,
    density_stationarity,
    ds_mode,
    eigenvalue_oracle,
    first_order_residual,
    orthogonality_gram,
    pauli_pde_residual,
    radial_ode_residual,
    relativistic_limit_scaling,
)
from curvedpauli.verify import DEFAULT_ADS_R_MAX, DEFAULT_T_SPAN, EquationId

DS = Model(kind=ModelKind.EXPANDING_DS, mass=1.0)
ADS = Model(kind=ModelKind.OSCILLATING_ADS, mass=1.0)

DS_TOL = 1e-8          # expanding-model engines at low j (stencil floor)
SUITE_TOL = 1e-7       # every engine on every suite mode
ORACLE_RTOL = 1e-3     # oracle eigenvalues vs the quantization closed form
GRAM_TOL = 1e-8
STATIONARY_TOL = 1e-12
BROKEN_FLOOR = 1e-3    # perturbed modes must fail by a wide margin


def _qn(twice_j=1, n=0, delta=1) -> QuantumNumbers:
    return QuantumNumbers(j=HalfInt(twice_j), m=HalfInt(1), n=n, delta=delta)


def test_grid_validation():
    with pytest.raises(GridError):
        Grid(r_points=(), t_points=(0.0,))
    with pytest.raises(GridError):
        Grid(r_points=(1.0,), t_points=())
    with pytest.raises(GridError):
        Grid(r_points=(1.0, 1.0), t_points=(0.0,))
    with pytest.raises(GridError):
        Grid(r_points=(1.0, 0.5), t_points=(0.0,))
    with pytest.raises(GridError):
        Grid(r_points=(1.0,), t_points=(0.0,), margin=-0.1)


def test_default_grid_spans_and_counts():
    g = default_grid(DS)
    assert len(g.r_points) == 41 and len(g.t_points) == 7
    assert g.r_points[0] == 0.05 and math.isclose(g.r_points[-1], math.pi - 0.05)
    assert (g.t_points[0], g.t_points[-1]) == DEFAULT_T_SPAN[ModelKind.EXPANDING_DS]
    g = default_grid(ADS, r_count=5, t_count=1)
    assert g.r_points[-1] == DEFAULT_ADS_R_MAX
    assert len(g.t_points) == 1
    with pytest.raises(GridError):
        default_grid(DS, r_count=0)
    with pytest.raises(GridError):
        default_grid(DS, margin=0.0)
    with pytest.raises(GridError):
        default_grid(DS, margin=2.0)   # empty radial span


def test_engines_reject_grids_outside_the_domain():
    mode = ds_mode(DS, _qn())
    with pytest.raises(GridError):
        radial_ode_residual(mode, Grid(r_points=(0.5, math.pi), t_points=(0.0,)))
    osc = ads_mode(ADS, _qn(), 1.0)
    with pytest.raises(GridError):
        pauli_pde_residual(osc, Grid(r_points=(0.5,), t_points=(2.0,)))


@pytest.mark.parametrize("delta", [1, -1])
@pytest.mark.parametrize("n", [0, 3])
def test_expanding_ode_residual_is_at_stencil_floor(n, delta):
    mode = ds_mode(DS, _qn(n=n, delta=delta))
    report = radial_ode_residual(mode, default_grid(DS))
    assert report.equation_id is EquationId.RADIAL_ODE_EXPANDING
    assert report.max_abs <= DS_TOL
    assert report.rms <= report.max_abs


def test_oscillating_ode_residual():
    mode = ads_mode(ADS, _qn(twice_j=3, delta=-1), 4.0)
    report = radial_ode_residual(mode, default_grid(ADS))
    assert report.equation_id is EquationId.RADIAL_ODE_OSCILLATING
    assert report.max_abs <= SUITE_TOL


def test_polynomial_family_satisfies_the_oscillating_ode():
    mode = ads_polynomial_mode(ADS, _qn(twice_j=1, n=1))
    report = radial_ode_residual(mode, default_grid(ADS))
    assert report.max_abs <= SUITE_TOL


@pytest.mark.parametrize("delta", [1, -1])
def test_pde_residual(delta):
    mode = ds_mode(DS, _qn(twice_j=3, n=2, delta=delta))
    report = pauli_pde_residual(mode, default_grid(DS))
    assert report.equation_id is EquationId.PAULI_PDE_EXPANDING
    assert report.max_abs <= DS_TOL
    osc = ads_mode(ADS, _qn(delta=delta), 0.5)
    report = pauli_pde_residual(osc, default_grid(ADS))
    assert report.equation_id is EquationId.PAULI_PDE_OSCILLATING
    assert report.max_abs <= SUITE_TOL


@pytest.mark.parametrize("delta", [1, -1])
def test_first_order_residual(delta):
    mode = ds_mode(DS, _qn(n=1, delta=delta))
    report = first_order_residual(mode, default_grid(DS))
    assert report.equation_id is EquationId.REDUCED_SYSTEM
    assert report.max_abs <= DS_TOL
    osc = ads_mode(ADS, _qn(delta=delta), 1.0)
    report = first_order_residual(osc, default_grid(ADS))
    assert report.max_abs <= SUITE_TOL


def test_engines_catch_a_wrong_spectral_parameter():
    """A 1% shift of E leaves the radial shape intact but must blow every
    engine's residual far past tolerance; this keeps the checks honest."""
    mode = ds_mode(DS, _qn())
    bad = mode.with_spectral_parameter(mode.E * 1.01)
    grid = default_grid(DS)
    assert radial_ode_residual(bad, grid).max_abs > BROKEN_FLOOR
    assert pauli_pde_residual(bad, grid).max_abs > BROKEN_FLOOR
    assert first_order_residual(bad, grid).max_abs > BROKEN_FLOOR


def test_report_labels_name_the_mode():
    mode = ds_mode(DS, _qn(twice_j=3, n=2, delta=-1))
    report = radial_ode_residual(mode, default_grid(DS))
    label = report.mode_label
    assert "ds" in label and "j=3/2" in label and "n=2" in label and "delta=-1" in label


def test_relativistic_limit_residual_halves_as_mass_doubles():
    grid_ds = default_grid(DS, r_count=21, t_count=5)
    pairs = relativistic_limit_scaling(
        ModelKind.EXPANDING_DS, _qn(n=1), (10.0, 20.0, 40.0), grid_ds
    )
    residuals = [res for _, res in pairs]
    assert residuals[0] > residuals[1] > residuals[2]
    for a, b in zip(residuals, residuals[1:]):
        assert 0.35 <= b / a <= 0.65

    grid_ads = default_grid(ADS, r_count=21, t_count=5)
    pairs = relativistic_limit_scaling(
        ModelKind.OSCILLATING_ADS, _qn(n=0), (10.0, 20.0, 40.0), grid_ads, two_me=1.0
    )
    residuals = [res for _, res in pairs]
    for a, b in zip(residuals, residuals[1:]):
        assert 0.35 <= b / a <= 0.65


def test_relativistic_limit_residual_vanishes_at_huge_mass():
    grid = default_grid(DS, r_count=11, t_count=3)
    pairs = relativistic_limit_scaling(
        ModelKind.EXPANDING_DS, _qn(n=1), (1e6, 2e6), grid
    )
    assert pairs[0][1] < 1e-4


def test_relativistic_limit_scaling_guards():
    grid = default_grid(DS, r_count=5, t_count=3)
    with pytest.raises(DomainError):
        relativistic_limit_scaling(ModelKind.EXPANDING_DS, _qn(), (10.0,), grid)
    with pytest.raises(DomainError):
        relativistic_limit_scaling(ModelKind.EXPANDING_DS, _qn(), (20.0, 10.0), grid)
    with pytest.raises(DomainError):
        relativistic_limit_scaling(
            ModelKind.OSCILLATING_ADS, _qn(), (10.0, 20.0), default_grid(ADS)
        )


@pytest.mark.parametrize("delta", [1, -1])
def test_oracle_reproduces_the_quantization_rule(delta):
    j = HalfInt(1)
    levels = eigenvalue_oracle(DS, j, delta, n_max=2, grid_size=2000)
    for n, two_me in enumerate(levels):
        want = (float(j) + 1.0 + n) ** 2
        assert abs(two_me - want) <= ORACLE_RTOL * want


def test_oracle_spectra_coincide_across_parities():
    """The two sector potentials are supersymmetric partners, so their
    Dirichlet spectra agree level by level."""
    plus = eigenvalue_oracle(DS, HalfInt(3), 1, n_max=2, grid_size=2000)
    minus = eigenvalue_oracle(DS, HalfInt(3), -1, n_max=2, grid_size=2000)
    for a, b in zip(plus, minus):
        assert abs(a - b) <= 2.0 * ORACLE_RTOL * abs(a)


def test_oracle_error_shrinks_quadratically_with_the_grid():
    j, n = HalfInt(1), 0
    want = (float(j) + 1.0 + n) ** 2
    coarse = abs(eigenvalue_oracle(DS, j, 1, n_max=0, grid_size=1000)[0] - want)
    fine = abs(eigenvalue_oracle(DS, j, 1, n_max=0, grid_size=2000)[0] - want)
    assert 3.5 <= coarse / fine <= 4.5


def test_oracle_guards():
    with pytest.raises(DomainError):
        eigenvalue_oracle(ADS, HalfInt(1), 1, n_max=0)
    with pytest.raises(DomainError):
        eigenvalue_oracle(DS, HalfInt(1), 0, n_max=0)
    with pytest.raises(DomainError):
        eigenvalue_oracle(DS, HalfInt(1), 1, n_max=5, grid_size=6)
    with pytest.raises(ConvergenceError):
        eigenvalue_oracle(DS, HalfInt(1), 1, n_max=0, grid_size=10)


@pytest.mark.parametrize("delta", [1, -1])
def test_gram_matrix_is_the_identity(delta):
    gram = orthogonality_gram(HalfInt(1), delta, n_max=3)
    assert np.max(np.abs(gram - np.eye(4))) <= GRAM_TOL


def test_gram_matrix_trivial_and_invalid_cases():
    gram = orthogonality_gram(HalfInt(3), 1, n_max=0)
    assert gram.shape == (1, 1)
    assert abs(gram[0, 0] - 1.0) <= GRAM_TOL
    with pytest.raises(DomainError):
        orthogonality_gram(HalfInt(1), 1, n_max=-1)


def test_density_is_stationary_for_both_backgrounds():
    assert density_stationarity(ds_mode(DS, _qn(twice_j=3, n=1))) <= STATIONARY_TOL
    assert density_stationarity(ads_mode(ADS, _qn(delta=-1), 2.0)) <= STATIONARY_TOL
