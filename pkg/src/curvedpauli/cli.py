"""Command-line front end: spectra, mode tables, and the verification suite.

Every subcommand builds a typed request, runs it through the same
handlers the HTTP service uses (in process by default, over HTTP with
--server), and renders the typed response as CSV or JSON with a fixed
17-significant-digit float rendering.

Exit codes: 0 success, 1 verification failure, 2 usage or config error,
3 unsupported request (e.g. a spectrum of the oscillating model).
"""
from __future__ import annotations

import math
import pathlib
import sys
from typing import NoReturn, Optional

import click
from pydantic import ValidationError

from .errors import CurvedPauliError, DomainError, NotQuantizedError
from .serialize import csv_text, json_text
from .service.handlers import run_eval, run_spectrum, run_verify
from .service.schemas import (
    EvalRequest,
    EvalResponse,
    SpectrumRequest,
    SpectrumResponse,
    VerifyReport,
    VerifyRequest,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_UNSUPPORTED = 3

_ROUTES = {
    "/spectrum": (run_spectrum, SpectrumResponse),
    "/eval": (run_eval, EvalResponse),
    "/verify": (run_verify, VerifyReport),
}


def _fail(message: str, code: int) -> NoReturn:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _execute(server: Optional[str], path: str, request):
    """Run a request in process, or POST it to a running service."""
    handler, response_type = _ROUTES[path]
    if server is None:
        return handler(request)
    import httpx

    url = server.rstrip("/") + path
    resp = httpx.post(
        url, json=request.model_dump(mode="json", by_alias=True), timeout=600.0
    )
    if resp.status_code >= 400:
        try:
            body = resp.json()
        except ValueError:
            body = {}
        detail = body.get("detail", resp.text)
        if body.get("error") == "unsupported":
            raise NotQuantizedError(str(detail))
        raise DomainError(f"server rejected the request ({resp.status_code}): {detail}")
    return response_type.model_validate(resp.json())


def _emit(text: str, out: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        pathlib.Path(out).write_text(text, encoding="utf-8")


def _dump(model) -> dict:
    return model.model_dump(by_alias=True, exclude_none=True)


@click.group()
def main() -> None:
    """Closed-form Pauli modes on expanding and oscillating backgrounds,
    with residual-based verification of every construction step."""


@main.command()
@click.option("--model", type=click.Choice(["ds", "ads"]), default="ds",
              show_default=True, help="background: expanding (ds) or oscillating (ads)")
@click.option("--mass", type=float, default=1.0, show_default=True,
              help="particle mass M")
@click.option("--j", "j_max", default="3/2", show_default=True,
              help='largest total angular momentum, a "p/2" string')
@click.option("--n", "n_max", type=int, default=2, show_default=True,
              help="largest radial number")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write to this file instead of stdout")
@click.option("--server", default=None, metavar="URL",
              help="base URL of a running HTTP service; default runs in process")
def spectrum(model: str, mass: float, j_max: str, n_max: int, fmt: str,
             out: Optional[str], server: Optional[str]) -> None:
    """List the quantized levels (j, n, 2ME, E) of the expanding model."""
    try:
        request = SpectrumRequest(
            model=model, mass=mass, j_max=j_max, n_max=n_max, format=fmt, out=out
        )
    except ValidationError as exc:
        _fail(str(exc), EXIT_CONFIG)
    try:
        response = _execute(server, "/spectrum", request)
    except NotQuantizedError:
        _fail(
            "the oscillating anti de Sitter model has no quantized spectrum; "
            "supply --energy to evaluate a mode instead",
            EXIT_UNSUPPORTED,
        )
    except (CurvedPauliError, ValidationError) as exc:
        _fail(str(exc), EXIT_CONFIG)
    if fmt == "json":
        _emit(json_text(_dump(response)), out)
    else:
        header = ["j", "n", "two_me", "energy"]
        rows = [[row.j, row.n, row.two_me, row.energy] for row in response.rows]
        _emit(csv_text(header, rows), out)


@main.command(name="eval")
@click.option("--model", type=click.Choice(["ds", "ads"]), default="ds",
              show_default=True, help="background: expanding (ds) or oscillating (ads)")
@click.option("--mass", type=float, default=1.0, show_default=True)
@click.option("--j", default="1/2", show_default=True,
              help='total angular momentum, a "p/2" string')
@click.option("--m", "m_proj", default="1/2", show_default=True,
              help='angular momentum projection, a "p/2" string')
@click.option("--n", type=int, default=None,
              help="radial number (expanding model; default 0)")
@click.option("--delta", type=click.Choice(["+1", "-1"]), default="+1",
              show_default=True, help="parity sector")
@click.option("--energy", type=float, default=None,
              help="spectral parameter 2ME (required for the oscillating model)")
@click.option("--grid-r", type=int, default=41, show_default=True)
@click.option("--grid-t", type=int, default=7, show_default=True)
@click.option("--margin", type=float, default=0.05, show_default=True,
              help="distance kept from the coordinate-domain edges")
@click.option("--theta", type=float, default=math.pi / 2, show_default=True,
              help="polar angle for the density column")
@click.option("--phi", type=float, default=0.0, show_default=True,
              help="azimuthal angle for the density column")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--server", default=None, metavar="URL")
def eval_cmd(model: str, mass: float, j: str, m_proj: str, n: Optional[int],
             delta: str, energy: Optional[float], grid_r: int, grid_t: int,
             margin: float, theta: float, phi: float, fmt: str,
             out: Optional[str], server: Optional[str]) -> None:
    """Tabulate one mode: f, g_small (with the separated phase), and the
    density at (--theta, --phi), over an (r, t) grid."""
    try:
        request = EvalRequest(
            model=model, mass=mass, j=j, m=m_proj, delta=int(delta), n=n,
            energy=energy, grid_r=grid_r, grid_t=grid_t, margin=margin,
            theta=theta, phi=phi, format=fmt, out=out,
        )
    except ValidationError as exc:
        _fail(str(exc), EXIT_CONFIG)
    try:
        response = _execute(server, "/eval", request)
    except NotQuantizedError as exc:
        _fail(str(exc), EXIT_UNSUPPORTED)
    except (CurvedPauliError, ValidationError) as exc:
        _fail(str(exc), EXIT_CONFIG)
    if fmt == "json":
        _emit(json_text(_dump(response)), out)
    else:
        header = ["r", "t", "re_f", "im_f", "re_g_small", "im_g_small", "psi_sq"]
        rows = [
            [row.r, row.t, row.re_f, row.im_f, row.re_g_small, row.im_g_small,
             row.psi_sq]
            for row in response.rows
        ]
        _emit(csv_text(header, rows), out)


def _parse_masses(text: Optional[str]) -> Optional[list[float]]:
    if text is None:
        return None
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        _fail(f"cannot parse --masses {text!r}: expected comma-separated numbers",
              EXIT_CONFIG)
    if len(values) < 2:
        _fail("--masses needs at least two comma-separated values", EXIT_CONFIG)
    return values


def _parse_injections(pairs: tuple[str, ...]) -> Optional[dict[str, float]]:
    if not pairs:
        return None
    injections: dict[str, float] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            _fail(f"--inject-error expects KEY=VAL, got {pair!r}", EXIT_CONFIG)
        try:
            injections[key] = float(value)
        except ValueError:
            _fail(f"--inject-error value in {pair!r} is not a number", EXIT_CONFIG)
    return injections


def _verify_csv(report: VerifyReport) -> str:
    header = ["equation_id", "model", "j", "m", "n", "delta", "E",
              "max_abs", "rms", "grid_r", "grid_t", "margin"]
    rows = [
        [r.equation_id, r.mode.model, r.mode.j, r.mode.m, r.mode.n, r.mode.delta,
         r.mode.E, r.max_abs, r.rms, r.grid.r_points, r.grid.t_points,
         r.grid.margin]
        for r in report.results
    ]
    text = csv_text(header, rows)
    if report.scaling:
        s_rows = []
        for srow in report.scaling:
            for i, (mass, res) in enumerate(zip(srow.masses, srow.residuals)):
                ratio = srow.ratios[i - 1] if i > 0 else None
                s_rows.append([srow.equation_id, srow.mode.model, mass, res, ratio])
        text += "\n" + csv_text(
            ["equation_id", "model", "mass", "residual", "ratio"], s_rows
        )
    return text


@main.command()
@click.option("--model", type=click.Choice(["ds", "ads", "both"]), default="both",
              show_default=True, help="which backgrounds to verify")
@click.option("--mass", type=float, default=1.0, show_default=True)
@click.option("--j", "j_max", default=None,
              help='cap the suite j (default "7/2" expanding, "3/2" oscillating)')
@click.option("--n", "n_max", type=int, default=None,
              help="cap the suite radial number (default 3, expanding only)")
@click.option("--delta", type=click.Choice(["+1", "-1"]), default=None,
              help="restrict to one parity sector (default: both)")
@click.option("--energy", "energies", type=float, multiple=True,
              help="2ME value for the oscillating suite; repeatable "
                   "(default 0.5, 1.0, 4.0)")
@click.option("--grid-r", type=int, default=41, show_default=True)
@click.option("--grid-t", type=int, default=7, show_default=True)
@click.option("--margin", type=float, default=0.05, show_default=True)
@click.option("--tolerance", type=float, default=1e-7, show_default=True,
              help="max allowed normalized residual")
@click.option("--masses", default=None, metavar="LIST",
              help='mass sweep for the relativistic-limit scaling, e.g. "10,20,40"')
@click.option("--inject-error", "inject", multiple=True, metavar="KEY=VAL",
              help='sanity switch, e.g. "e-perturb=0.01"; must make verify fail')
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--server", default=None, metavar="URL")
def verify(model: str, mass: float, j_max: Optional[str], n_max: Optional[int],
           delta: Optional[str], energies: tuple[float, ...], grid_r: int,
           grid_t: int, margin: float, tolerance: float, masses: Optional[str],
           inject: tuple[str, ...], fmt: str, out: Optional[str],
           server: Optional[str]) -> None:
    """Run the residual engines over the configured mode set; exit 0 iff
    every equation is satisfied under --tolerance."""
    mass_list = _parse_masses(masses)
    injections = _parse_injections(inject)
    try:
        kwargs = dict(
            model=model, mass=mass, j_max=j_max, n_max=n_max,
            deltas=[int(delta)] if delta is not None else None,
            grid_r=grid_r, grid_t=grid_t, margin=margin, tolerance=tolerance,
            masses=mass_list, inject_error=injections, format=fmt, out=out,
        )
        if energies:
            kwargs["energies"] = list(energies)
        request = VerifyRequest(**kwargs)
    except ValidationError as exc:
        _fail(str(exc), EXIT_CONFIG)
    try:
        report = _execute(server, "/verify", request)
    except NotQuantizedError as exc:
        _fail(str(exc), EXIT_UNSUPPORTED)
    except (CurvedPauliError, ValidationError) as exc:
        _fail(str(exc), EXIT_CONFIG)
    if fmt == "json":
        _emit(json_text(_dump(report)), out)
    else:
        _emit(_verify_csv(report), out)
    failing = [r for r in report.results if not r.max_abs < report.run_config.tolerance]
    for row in failing:
        click.echo(
            f"FAIL {row.equation_id} model={row.mode.model} j={row.mode.j} "
            f"m={row.mode.m} n={row.mode.n} delta={row.mode.delta:+d} "
            f"E={row.mode.E:.9g} max_abs={row.max_abs:.3e}",
            err=True,
        )
    if report.scaling:
        for srow in report.scaling:
            if not srow.monotone:
                click.echo(
                    f"FAIL scaling {srow.equation_id}: residuals not monotone "
                    f"{srow.residuals}",
                    err=True,
                )
    status = "pass" if report.passed else "FAIL"
    click.echo(
        f"verify: {len(report.results)} checks, tolerance "
        f"{report.run_config.tolerance:g}: {status}",
        err=True,
    )
    sys.exit(EXIT_OK if report.passed else EXIT_VERIFY_FAILED)


if __name__ == "__main__":
    main()
