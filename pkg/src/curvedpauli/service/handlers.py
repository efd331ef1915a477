"""In-process implementations of the spectrum, eval, and verify operations.

The CLI calls these functions directly; the HTTP app wraps the same
functions behind POST routes. Neither front end duplicates any logic, so
`--server` and local runs produce identical payloads. The `format` and
`out` fields of the request models are rendering hints consumed by the
CLI only; they ride along here so a run's config is self-describing.
"""
from __future__ import annotations

from ..errors import DomainError, NotQuantizedError
from ..model import Model, ModelKind, time_profile
from ..quantum import HalfInt, QuantumNumbers
from ..radial import (
    RadialMode,
    ads_mode,
    ds_mode,
    pauli_wavefunction,
    radial_big,
    radial_small,
    spectrum,
)
from ..verify import (
    EquationId,
    ResidualReport,
    default_grid,
    first_order_residual,
    pauli_pde_residual,
    radial_ode_residual,
    relativistic_limit_scaling,
)
from .schemas import (
    EvalRequest,
    EvalResponse,
    EvalRow,
    GridInfo,
    ModeInfo,
    ResultRow,
    ScalingRow,
    SpectrumRequest,
    SpectrumResponse,
    SpectrumRow,
    VerifyReport,
    VerifyRequest,
)

# Default verification suite: every closed-form mode with j <= 7/2 and
# n <= 3 (expanding), and j <= 3/2 with 2ME in the request's `energies`
# (oscillating), both parities, checked by all three residual engines.
DS_SUITE_J_MAX = HalfInt(7)
DS_SUITE_N_MAX = 3
ADS_SUITE_J_MAX = HalfInt(3)
SCALING_RATIO_RANGE = (0.35, 0.65)

_ENGINES = (radial_ode_residual, pauli_pde_residual, first_order_residual)

_SCALING_EQUATION = {
    ModelKind.EXPANDING_DS: EquationId.RELATIVISTIC_SYSTEM_EXPANDING,
    ModelKind.OSCILLATING_ADS: EquationId.RELATIVISTIC_SYSTEM_OSCILLATING,
}


def _half_int_range(j_max: HalfInt) -> list[HalfInt]:
    """Half-odd values 1/2, 3/2, ... up to and including j_max."""
    return [HalfInt(twice) for twice in range(1, j_max.twice + 1, 2)]


def _mode_info(mode: RadialMode) -> ModeInfo:
    qn = mode.qn
    return ModeInfo(
        model=mode.model.kind.value,
        j=str(qn.j),
        m=str(qn.m),
        n=qn.n,
        delta=qn.delta,
        E=mode.E,
    )


def _result_row(report: ResidualReport) -> ResultRow:
    return ResultRow(
        equation_id=report.equation_id.value,
        mode=_mode_info(report.mode),
        max_abs=report.max_abs,
        rms=report.rms,
        grid=GridInfo(
            r_points=len(report.grid.r_points),
            t_points=len(report.grid.t_points),
            margin=report.grid.margin,
        ),
    )


def run_spectrum(req: SpectrumRequest) -> SpectrumResponse:
    """Quantized levels (j, n, 2ME, E) of the expanding model."""
    if req.model != "ds":
        raise NotQuantizedError(
            "the oscillating anti de Sitter model has no quantized spectrum; "
            "supply the spectral parameter explicitly"
        )
    model = Model(kind=ModelKind.EXPANDING_DS, mass=req.mass)
    rows = []
    for j in _half_int_range(HalfInt.parse(req.j_max)):
        for n in range(req.n_max + 1):
            e_val = spectrum(model, j, n)
            rows.append(
                SpectrumRow(j=str(j), n=n, two_me=2.0 * req.mass * e_val, energy=e_val)
            )
    return SpectrumResponse(model=req.model, mass=req.mass, rows=rows)


def _eval_mode(req: EvalRequest) -> RadialMode:
    kind = ModelKind(req.model)
    model = Model(kind=kind, mass=req.mass)
    qn = QuantumNumbers(
        j=HalfInt.parse(req.j),
        m=HalfInt.parse(req.m),
        n=req.n if req.n is not None else 0,
        delta=req.delta,
    )
    if kind is ModelKind.EXPANDING_DS:
        if req.energy is not None:
            raise DomainError(
                "the expanding model is quantized; select the mode with n, not energy"
            )
        return ds_mode(model, qn)
    if req.energy is None:
        raise DomainError(
            "the oscillating model needs the spectral parameter: set energy to 2ME"
        )
    return ads_mode(model, qn, req.energy)


def run_eval(req: EvalRequest) -> EvalResponse:
    """Tabulate one mode over a grid: f, g_small, and the density.

    The f and g_small columns carry the separated phase e^{-iE tau(t)};
    the density column is evaluated at the request's (theta, phi) and is
    time-independent by construction.
    """
    mode = _eval_mode(req)
    grid = default_grid(
        mode.model, r_count=req.grid_r, t_count=req.grid_t, margin=req.margin
    )
    rows = []
    for r in grid.r_points:
        big = radial_big(mode, r)
        for t in grid.t_points:
            phase = time_profile(mode.model, mode.E, t)
            f_val = big * phase
            g_val = radial_small(mode, r, t) * phase
            density = pauli_wavefunction(mode, t, r, req.theta, req.phi).density
            rows.append(
                EvalRow(
                    r=r,
                    t=t,
                    re_f=f_val.real,
                    im_f=f_val.imag,
                    re_g_small=g_val.real,
                    im_g_small=g_val.imag,
                    psi_sq=density,
                )
            )
    return EvalResponse(request=req, rows=rows)


def _suite_modes(req: VerifyRequest) -> list[RadialMode]:
    deltas = req.deltas if req.deltas is not None else [1, -1]
    m_half = HalfInt(1)
    modes: list[RadialMode] = []
    if req.model in ("ds", "both"):
        model = Model(kind=ModelKind.EXPANDING_DS, mass=req.mass)
        j_max = HalfInt.parse(req.j_max) if req.j_max is not None else DS_SUITE_J_MAX
        n_max = req.n_max if req.n_max is not None else DS_SUITE_N_MAX
        for j in _half_int_range(j_max):
            for n in range(n_max + 1):
                for delta in deltas:
                    qn = QuantumNumbers(j=j, m=m_half, n=n, delta=delta)
                    modes.append(ds_mode(model, qn))
    if req.model in ("ads", "both"):
        model = Model(kind=ModelKind.OSCILLATING_ADS, mass=req.mass)
        j_max = HalfInt.parse(req.j_max) if req.j_max is not None else ADS_SUITE_J_MAX
        for j in _half_int_range(j_max):
            for two_me in req.energies:
                for delta in deltas:
                    qn = QuantumNumbers(j=j, m=m_half, n=0, delta=delta)
                    modes.append(ads_mode(model, qn, two_me))
    if not modes:
        raise DomainError("the configured verification suite is empty")
    return modes


def _inject(mode: RadialMode, spec: dict[str, float] | None) -> RadialMode:
    if not spec:
        return mode
    out = mode
    for key, value in spec.items():
        if key == "e-perturb":
            out = out.with_spectral_parameter(out.E * (1.0 + value))
        else:
            raise DomainError(f"unknown error-injection key {key!r}")
    return out


def _scaling_rows(req: VerifyRequest) -> list[ScalingRow]:
    masses = [float(m) for m in req.masses or ()]
    if len(masses) < 2:
        raise DomainError("scaling needs at least two masses")
    if any(b <= a for a, b in zip(masses, masses[1:])):
        raise DomainError("masses must be strictly increasing")
    rows = []
    kinds = []
    if req.model in ("ds", "both"):
        kinds.append(ModelKind.EXPANDING_DS)
    if req.model in ("ads", "both"):
        kinds.append(ModelKind.OSCILLATING_ADS)
    for kind in kinds:
        if kind is ModelKind.EXPANDING_DS:
            qn = QuantumNumbers(j=HalfInt(1), m=HalfInt(1), n=1, delta=1)
            two_me = None
        else:
            qn = QuantumNumbers(j=HalfInt(1), m=HalfInt(1), n=0, delta=1)
            two_me = 1.0
        grid = default_grid(
            Model(kind=kind, mass=masses[0]),
            r_count=req.grid_r,
            t_count=req.grid_t,
            margin=req.margin,
        )
        pairs = relativistic_limit_scaling(kind, qn, masses, grid, two_me=two_me)
        residuals = [res for _, res in pairs]
        ratios = [b / a for a, b in zip(residuals, residuals[1:])]
        lo, hi = SCALING_RATIO_RANGE
        probe = Model(kind=kind, mass=masses[0])
        if kind is ModelKind.EXPANDING_DS:
            mode0 = ds_mode(probe, qn)
        else:
            mode0 = ads_mode(probe, qn, two_me)
        rows.append(
            ScalingRow(
                equation_id=_SCALING_EQUATION[kind].value,
                mode=_mode_info(mode0),
                masses=masses,
                residuals=residuals,
                ratios=ratios,
                monotone=all(b < a for a, b in zip(residuals, residuals[1:])),
                ratios_in_range=all(lo <= x <= hi for x in ratios),
            )
        )
    return rows


def run_verify(req: VerifyRequest) -> VerifyReport:
    """Run every residual engine over the configured mode set.

    The report passes iff each residual's max_abs is under the request
    tolerance and, when a mass sweep is requested, each scaling row's
    residuals decrease monotonically. The ratio range is reported per
    row but does not gate the pass flag: it presumes doubling masses,
    which the request need not use.
    """
    all_pass = True
    results = []
    for clean in _suite_modes(req):
        mode = _inject(clean, req.inject_error)
        grid = default_grid(
            mode.model, r_count=req.grid_r, t_count=req.grid_t, margin=req.margin
        )
        for engine in _ENGINES:
            report = engine(mode, grid)
            results.append(_result_row(report))
            if not report.max_abs < req.tolerance:
                all_pass = False
    scaling = None
    if req.masses:
        scaling = _scaling_rows(req)
        if any(not row.monotone for row in scaling):
            all_pass = False
    return VerifyReport(run_config=req, results=results, scaling=scaling, passed=all_pass)
