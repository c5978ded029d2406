#!/usr/bin/env python3
"""
citer CLI - complex-exponent iterated integrals, zeta values and their
verification suites
"""

import json
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

import click
import numpy as np
import sympy
import typer
from rich import print as rprint
from rich.console import Console
from rich.table import Table

from . import __version__
from .core.continuation import (
    ContourSpec,
    continue_L,
    residue_at_1,
    value_at_negative_integer,
    value_by_derivative,
    w_truncated_continuation,
)
from .core.errors import CiterError, SpecError
from .core.iterated import gap_transform_integral, power_iterated_integral
from .core.monodromy import MonodromyScenario, monodromy_defect
from .core.report import ReportGenerator, canonical_json
from .core.series import s_gap_eval
from .core.specs import parse_complex, parse_s_tuple, path_from_spec, series_from_spec
from .core.verification import SuiteLoader, SuiteRunner
from .core.zeta import ZetaKind, ZetaRequest
from .models.results import CheckStatus, EvalResult, VerificationReport, to_pair
from .utils.config import CONFIG_ENV_VAR, Config, create_default_config_file, get_config_template, load_config
from .utils.log import setup_logging

app = typer.Typer(
    name="citer",
    help="citer - iterated integrals with complex exponents and the zeta functions they carry",
    add_completion=False,
)

console = Console()

# "zeta" and "series" are CLI names; the rest are ZetaKind values
EVAL_KINDS = ("zeta", "series") + tuple(kind.value for kind in ZetaKind)


@dataclass
class CliState:
    """Global flags shared by every command"""

    tol: Optional[float] = None
    max_level: Optional[int] = None
    config_file: Optional[Path] = None
    json_path: Optional[Path] = None
    quiet: bool = False
    verbose: bool = False

    def config(self) -> Config:
        """flags > environment > file > defaults"""
        config = load_config(self.config_file)
        updates: Dict[str, Any] = {}
        if self.tol is not None:
            updates["rel_tol"] = self.tol
        if self.max_level is not None:
            updates["max_level"] = self.max_level
        if not updates:
            return config
        return Config(**{**config.model_dump(), **updates})


def _state(ctx: typer.Context) -> CliState:
    return ctx.obj if isinstance(ctx.obj, CliState) else CliState()


def _error_object(error: Exception, name: Optional[str] = None, exit_code: int = 4) -> Dict[str, Any]:
    return {"error": name or type(error).__name__, "message": str(error), "exit_code": exit_code}


@contextmanager
def _handle_errors() -> Iterator[None]:
    """Map engine errors to exit codes with a JSON error object on stderr"""
    try:
        yield
    except CiterError as e:
        typer.echo(json.dumps(e.to_dict(), sort_keys=True), err=True)
        raise typer.Exit(e.exit_code)
    except (ValueError, TypeError, OSError) as e:
        # pydantic validation errors are ValueErrors
        typer.echo(json.dumps(_error_object(e, "InputError", 2), sort_keys=True), err=True)
        raise typer.Exit(2)


def _emit(state: CliState, data: Dict[str, Any]) -> None:
    """Canonical JSON to stdout, and to --json when given"""
    text = canonical_json(data)
    typer.echo(text, nl=False)
    if state.json_path is not None:
        state.json_path.parent.mkdir(parents=True, exist_ok=True)
        state.json_path.write_text(text, encoding="utf-8")


def _contour(config: Config, delta: Optional[float], x_max: Optional[float]) -> ContourSpec:
    spec = ContourSpec.from_config(config)
    return ContourSpec(
        delta=spec.delta if delta is None else delta,
        x_max=spec.x_max if x_max is None else x_max,
        samples_per_unit=spec.samples_per_unit,
    )


@app.callback()
def main_options(
    ctx: typer.Context,
    tol: Optional[float] = typer.Option(None, "--tol", help="Target relative tolerance of the quadrature"),
    max_level: Optional[int] = typer.Option(None, "--max-level", help="Maximum tanh-sinh refinement level"),
    config_file: Optional[Path] = typer.Option(
        None, "--config", "-c", help=f"Configuration file (default: ${CONFIG_ENV_VAR})"
    ),
    json_path: Optional[Path] = typer.Option(None, "--json", help="Also write the JSON result to this path"),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Only errors on stderr, no progress"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
) -> None:
    """citer command line"""
    setup_logging(verbose=verbose, quiet=quiet)
    ctx.obj = CliState(tol, max_level, config_file, json_path, quiet, verbose)


@app.command("eval")
def eval_(
    ctx: typer.Context,
    kind: str = typer.Argument(..., help=f"One of: {', '.join(EVAL_KINDS)}"),
    s: str = typer.Option(..., "--s", help="Exponent or comma-separated exponents, e.g. 2 or 2,1 or 2+3j"),
    series: Optional[str] = typer.Option(None, "--series", help="Series model as JSON or shorthand"),
    w: Optional[str] = typer.Option(None, "--w", help="Polylogarithm point"),
    z: Optional[str] = typer.Option(None, "--z", help="Hurwitz shift"),
    discriminant: Optional[int] = typer.Option(None, "--discriminant", "-D", help="Field discriminant"),
    path: Optional[str] = typer.Option(None, "--path", help="Integration path as JSON"),
    lower: float = typer.Option(0.0, "--lower", help="Lower limit of the transform of --series"),
) -> None:
    """
    Evaluate a zeta-type function or the L-transform of a series model

    Examples:
      citer eval zeta --s 2
      citer eval polylog --s 2 --w 0.5
      citer eval mzv --s 2,1
      citer eval series --series '{"type": "katz", "a": 2}' --s 3
    """
    state = _state(ctx)
    with _handle_errors():
        if kind not in EVAL_KINDS:
            raise SpecError(f"unknown kind {kind!r}; expected one of {', '.join(EVAL_KINDS)}")
        config = state.config()
        cfg = config.quadrature()
        s_tuple = parse_s_tuple(s)
        start = time.perf_counter()

        if kind == "series":
            if series is None:
                raise SpecError("eval series needs --series")
            if len(s_tuple) != 1:
                raise SpecError("the L-transform takes a single exponent")
            model = series_from_spec(series, sieve_cap=config.sieve_cap)
            value = power_iterated_integral(model, s_tuple[0], lower=lower, cfg=cfg)
        else:
            character = None
            if kind == ZetaKind.DIRICHLET.value:
                if series is None:
                    raise SpecError("dirichlet needs --series of type character")
                character = series_from_spec(series).metadata.get("character")
                if character is None:
                    raise SpecError("dirichlet needs a character series")
            request = ZetaRequest(
                kind=ZetaKind.RIEMANN if kind == "zeta" else ZetaKind(kind),
                s_tuple=s_tuple,
                character=character,
                z=None if z is None else parse_complex(z),
                w=None if w is None else parse_complex(w),
                discriminant=discriminant,
                path=None if path is None else path_from_spec(path),
            )
            value = request.evaluate(cfg)

        result = EvalResult(
            kind=kind,
            value=to_pair(value),
            error_estimate=value.error,
            runtime_ms=(time.perf_counter() - start) * 1000.0,
        )
        _emit(state, result.to_dict())


@app.command()
def verify(
    ctx: typer.Context,
    suite: str = typer.Argument("all", help="Suite name: all, core, comult, continuation, monodromy, zeta"),
    list_suites: bool = typer.Option(False, "--list", help="List suites and their checks"),
    html: Optional[Path] = typer.Option(None, "--html", help="Write an HTML report"),
    timing: bool = typer.Option(False, "--timing", help="Include per-check runtimes in reports"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Checks run in parallel"),
) -> None:
    """
    Run a verification suite; exit code 0 iff every check passes

    Examples:
      citer verify core
      citer verify all --json report.json
      citer --tol 1e-6 verify all
    """
    state = _state(ctx)
    loader = SuiteLoader()

    if list_suites:
        table = Table(title="Verification suites")
        table.add_column("Suite", style="cyan", no_wrap=True)
        table.add_column("Check", style="magenta")
        table.add_column("Tolerance", justify="right")
        table.add_column("Description", style="green")
        for name in loader.list_suites()[:-1]:
            for check in loader.load_suite(name):
                table.add_row(name, check.id, f"{check.tolerance:.0e}", check.description)
        console.print(table)
        return

    with _handle_errors():
        if suite not in loader.list_suites():
            raise SpecError(f"unknown suite {suite!r}; expected one of {', '.join(loader.list_suites())}")
        config = state.config()
        if workers is not None:
            config = Config(**{**config.model_dump(), "parallel_workers": workers})
        runner = SuiteRunner(config, tolerance=state.tol, show_progress=not state.quiet, loader=loader)
        report = runner.run(suite)

        generator = ReportGenerator(timing=timing)
        if state.json_path is not None:
            generator.generate_json(report, state.json_path)
        if html is not None:
            generator.generate_html(report, html)

    if not state.quiet:
        _print_report(report, timing)
    if not report.all_passed:
        raise typer.Exit(1)


def _print_report(report: VerificationReport, timing: bool) -> None:
    colors = {CheckStatus.PASS: "green", CheckStatus.FAIL: "red", CheckStatus.SKIPPED: "yellow"}
    table = Table(title=f"citer verify {report.suite}")
    table.add_column("Check", style="cyan", no_wrap=True)
    table.add_column("Status")
    table.add_column("|error|", justify="right")
    table.add_column("Tolerance", justify="right")
    if timing:
        table.add_column("ms", justify="right")
    for r in report.results:
        color = colors[r.status]
        row = [r.name, f"[{color}]{r.status.value}[/{color}]", f"{r.abs_error:.2e}", f"{r.tolerance:.0e}"]
        if timing:
            row.append(f"{r.runtime_ms:.1f}")
        table.add_row(*row)
    console.print(table)
    rprint(
        f"[green]{report.passed} passed[/green], [red]{report.failed} failed[/red], "
        f"[yellow]{report.skipped} skipped[/yellow] of {len(report.results)}"
    )


@app.command("continue")
def continue_(
    ctx: typer.Context,
    series: str = typer.Option(..., "--series", help="Series model as JSON or shorthand"),
    k: Optional[int] = typer.Option(None, "--k", help="Continue to s = -k"),
    s: Optional[str] = typer.Option(None, "--s", help="Continue to this s"),
    delta: Optional[float] = typer.Option(None, "--delta", help="Contour circle radius"),
    x_max: Optional[float] = typer.Option(None, "--x-max", help="Ray truncation"),
    derivative: bool = typer.Option(False, "--derivative", help="Use (t d/dt)^k F at 1 instead of Laurent data"),
    w: Optional[float] = typer.Option(None, "--w", help="Continue the transform over [w, 1] instead"),
    residue: bool = typer.Option(False, "--residue", help="Print the residue at s = 1"),
) -> None:
    """
    Analytic continuation of the L-transform of a series model

    Examples:
      citer continue --series '{"type":"rational","num":[0,1],"den":[1,-1]}' --k 1
      citer continue --series 'katz a=2' --k 1
      citer continue --series 'character mod 4' --s 1
    """
    state = _state(ctx)
    with _handle_errors():
        config = state.config()
        cfg = config.quadrature()
        spec = _contour(config, delta, x_max)
        model = series_from_spec(series, sieve_cap=config.sieve_cap)

        if residue:
            value = residue_at_1(model, spec, cfg)
            _emit(state, {"value": list(to_pair(value)), "error_estimate": value.error, "label": model.label})
            return
        if (k is None) == (s is None):
            raise SpecError("give exactly one of --k and --s")
        if w is not None:
            if k is None:
                raise SpecError("--w continues to negative integers only; use --k")
            result = w_truncated_continuation(model, w, k, spec, cfg)
        elif k is not None:
            result = value_by_derivative(model, k) if derivative else value_at_negative_integer(model, k, spec, cfg)
        else:
            result = continue_L(model, parse_complex(s), spec, cfg)
        _emit(state, result.to_dict())


@app.command()
def transform(
    ctx: typer.Context,
    series: str = typer.Option(..., "--series", help="Series model as JSON or shorthand"),
    s: str = typer.Option(..., "--s", help="Gap exponent, or the transform exponent with --gap-k"),
    z: Optional[float] = typer.Option(None, "--z", help="Evaluate sum a_n z^(n^s) at this real z"),
    gap_k: Optional[int] = typer.Option(None, "--gap-k", help="Transform of the k-gap series at s/k"),
) -> None:
    """
    s-gap transform of a series model

    Examples:
      citer transform --series 'katz a=2' --s 2 --z 0.5
      citer transform --series '{"type":"rational","num":[0,1],"den":[1,-1]}' --s 4 --gap-k 2
    """
    state = _state(ctx)
    with _handle_errors():
        if (z is None) == (gap_k is None):
            raise SpecError("give exactly one of --z and --gap-k")
        config = state.config()
        cfg = config.quadrature()
        model = series_from_spec(series, sieve_cap=config.sieve_cap)
        exponent = parse_complex(s)
        start = time.perf_counter()
        if z is not None:
            value = complex(s_gap_eval(model, exponent, z, cfg))
            error = 0.0
        else:
            estimate = gap_transform_integral(model, gap_k, exponent, cfg)
            value, error = complex(estimate), estimate.error
        result = EvalResult(
            kind="transform",
            value=to_pair(value),
            error_estimate=error,
            runtime_ms=(time.perf_counter() - start) * 1000.0,
        )
        _emit(state, result.to_dict())


@app.command()
def monodromy(
    ctx: typer.Context,
    s: str = typer.Option(..., "--s", help="Polylogarithm order, Re(s) > 1"),
    w: str = typer.Option(..., "--w", help="Point in the punctured unit disc"),
    eta: float = typer.Option(0.75, "--eta", help="Split point on [0, 1]"),
    epsilon: float = typer.Option(0.02, "--epsilon", help="Loop radius about 1"),
    turns: int = typer.Option(1, "--turns", help="Number of positive loops"),
    terms: Optional[int] = typer.Option(None, "--terms", help="Comultiplication terms (default from config)"),
) -> None:
    """
    Monodromy of Li_s(w) about 1: looped minus straight-path value

    Examples:
      citer monodromy --s 2 --w 0.5
      citer monodromy --s 2.5 --w 0.4+0.2j --turns 2
    """
    state = _state(ctx)
    with _handle_errors():
        config = state.config()
        scenario = MonodromyScenario(
            s=parse_complex(s),
            w=parse_complex(w),
            eta=eta,
            epsilon=epsilon,
            terms=config.comult_terms if terms is None else terms,
            turns=turns,
        )
        result = monodromy_defect(scenario, config.quadrature())
        _emit(state, result.to_dict())


@app.command()
def version() -> None:
    """Show version information"""

    version_info = {
        "version": __version__,
        "python": f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}",
        "numpy": np.__version__,
        "sympy": sympy.__version__,
        "platform": sys.platform,
    }

    rprint("[bold blue]citer[/bold blue]")
    rprint("[dim]Iterated integrals with complex exponents[/dim]\n")

    for key, value in version_info.items():
        rprint(f"[cyan]{key.capitalize()}:[/cyan] {value}")


@app.command()
def config(
    ctx: typer.Context,
    show: bool = typer.Option(False, "--show", help="Show current configuration"),
    create: bool = typer.Option(False, "--create", help="Create default config file"),
    file: Optional[str] = typer.Option(None, "--file", help="Config file path"),
    template: bool = typer.Option(False, "--template", help="Print a commented config template"),
) -> None:
    """Manage configuration settings"""

    if create:
        config_path = Path(file) if file else Path("citer.yaml")

        if config_path.exists():
            rprint(f"[yellow]Config file already exists: {config_path}[/yellow]")
            if not typer.confirm("Overwrite?"):
                return

        create_default_config_file(config_path)
        rprint(f"[green]Created config file: {config_path}[/green]")
        return

    if template:
        typer.echo(get_config_template(), nl=False)
        return

    if show:
        with _handle_errors():
            state = _state(ctx)
            current = load_config(Path(file) if file else state.config_file)
        rprint("[bold blue]Current configuration[/bold blue]\n")

        values = current.model_dump()
        for section, keys in {
            "Quadrature": ("rel_tol", "max_level", "tail_cutoff", "circle_radius", "circle_points"),
            "Series": ("sieve_cap",),
            "Continuation": ("contour_delta", "contour_x_max"),
            "Comultiplication": ("comult_terms",),
            "Suites": ("seed", "parallel_workers"),
        }.items():
            rprint(f"[cyan]{section}:[/cyan]")
            for key in keys:
                rprint(f"  {key}: {values[key]}")
            rprint()
        return

    # Default: show help
    rprint("Configuration management")
    rprint("Use --show to view current config, --create to write a default config file or --template")


def main() -> None:
    """Main CLI entrypoint"""
    try:
        code = app(standalone_mode=False)
    except KeyboardInterrupt:
        rprint("\n[yellow]Interrupted[/yellow]", file=sys.stderr)
        sys.exit(130)
    except click.Abort:
        sys.exit(130)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except Exception as e:
        typer.echo(json.dumps(_error_object(e, "internal", 4), sort_keys=True), err=True)
        if "--verbose" in sys.argv or "-v" in sys.argv:
            import traceback
            traceback.print_exc()
        sys.exit(4)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
