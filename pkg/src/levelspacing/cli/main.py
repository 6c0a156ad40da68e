"""levelspacing CLI - exact and surmised level spacing distributions."""

import os
import sys
from collections.abc import Callable
from dataclasses import replace
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import click
import numpy as np
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from levelspacing import __version__
from levelspacing.cli.manifest import RunManifest
from levelspacing.cli.reproduce import TARGETS, ReproduceSettings, reproduce as run_reproduction
from levelspacing.ensembles import EnsembleConfig, simulate as run_simulation, solve_alpha_for_lambda
from levelspacing.errors import (
    AcceptanceFailureError,
    CacheCorruptionError,
    InvalidArgumentError,
    NumericalFailureError,
)
from levelspacing.exact import (
    DEFAULT_DS,
    DEFAULT_M,
    DEFAULT_SMAX,
    CrossoverParam,
    GapCache,
    KernelSpec,
    LsdCurve,
    convergence_report,
    crossover_lsd,
    default_grid,
    dynamical_kernel,
    gap_curve,
    gauss_legendre,
    kernel_lsd,
    lsd_from_values,
    lsd_normalization,
    pure_class_lsd,
    rescale,
    sine_kernel,
    sine_kernel_projected,
)
from levelspacing.fitting import fit_lambda, ratio_curve, step_density
from levelspacing.fitting.distance import DEFAULT_BINS
from levelspacing.samples import SpacingSample
from levelspacing.surmise import SurmiseSpec, crossover_surmise_cdf, ks_distance, surmise_mc_oracle
from levelspacing.utils.config import CACHE_ENV, configure_logging, load_config_file
from levelspacing.utils.io import dumps, read_csv, sidecar_path, write_csv, write_json

console = Console()

F = TypeVar("F", bound=Callable[..., Any])

# Dotted paths of every command, so top-level config keys reach all of them
COMMANDS = (
    "quad.dump",
    "kernel.eval",
    "gap",
    "lsd",
    "converge",
    "surmise",
    "surmise.mc",
    "simulate",
    "fit",
    "ratio",
    "reproduce",
    "cache.list",
    "cache.clear",
    "cache.verify",
)


def exit_code(error: Exception) -> int:
    """0 ok, 2 invalid arguments, 3 numerical failure, 4 acceptance failure, 1 anything else."""
    if isinstance(error, AcceptanceFailureError):
        return 4
    if isinstance(error, (InvalidArgumentError, click.UsageError)):
        return 2
    if isinstance(error, (NumericalFailureError, CacheCorruptionError)):
        return 3
    return 1


def fail(error: Exception) -> NoReturn:
    console.print(f"[red]✗ Error: {escape(str(error))}[/red]")
    sys.exit(exit_code(error))


class NumberList(click.ParamType):
    """Comma-separated numbers, e.g. ``1,2,3,4``."""

    name = "list"

    def __init__(self, kind: type = float, length: int | None = None):
        self.kind = kind
        self.length = length

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> tuple:
        if isinstance(value, tuple):
            return value
        try:
            items = tuple(self.kind(part) for part in str(value).split(",") if part.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of {self.kind.__name__}s", param, ctx)
        if not items or (self.length is not None and len(items) != self.length):
            expected = f"{self.length} values" if self.length else "at least one value"
            self.fail(f"expected {expected}, got {value!r}", param, ctx)
        return items


FLOAT_PAIR = NumberList(float, 2)


def _load_config(ctx: click.Context, param: click.Parameter, value: Path | None) -> None:
    if value is None:
        return
    try:
        ctx.default_map = load_config_file(value, COMMANDS)
    except InvalidArgumentError as e:
        raise click.BadParameter(str(e), ctx, param) from e


def _state(ctx: click.Context) -> dict[str, Any]:
    return ctx.find_root().obj


def _run_config(ctx: click.Context) -> dict[str, Any]:
    """Effective parameters of the command and its parent groups."""
    config: dict[str, Any] = {}
    node: click.Context | None = ctx
    while node is not None:
        for key, value in node.params.items():
            config.setdefault(key, str(value) if isinstance(value, Path) else value)
        node = node.parent
    return config


def _kernel_spec(kind: str, rho: float | None, lambda_big: float | None) -> KernelSpec:
    if kind == "dyn":
        if (rho is None) == (lambda_big is None):
            raise InvalidArgumentError("--kernel dyn needs exactly one of --rho or --Lambda")
        param = CrossoverParam(rho) if rho is not None else CrossoverParam.from_lambda_big(lambda_big)
        return KernelSpec.crossover(param)
    if rho is not None or lambda_big is not None:
        raise InvalidArgumentError(f"--rho/--Lambda only apply to --kernel dyn, not {kind}")
    return KernelSpec(kind)


def _write_with_sidecar(
    ctx: click.Context, out: Path, columns: list[str], data: np.ndarray, metadata: dict[str, Any]
) -> None:
    write_csv(out, columns, data, metadata)
    cache: GapCache = _state(ctx)["cache"]
    manifest = RunManifest(config=_run_config(ctx), cache_keys=sorted(cache.touched))
    manifest.add_output(out)
    write_json(sidecar_path(out), {**metadata, "manifest": manifest.to_dict()})


def kernel_options(choices: list[str]) -> Callable[[F], F]:
    """--kernel, --rho and --Lambda."""

    def decorator(f: F) -> F:
        f = click.option("--Lambda", "lambda_big", type=float, help="Crossover parameter Lambda (dyn kernel)")(f)
        f = click.option("--rho", type=float, help="Kernel parameter rho = Lambda / sqrt(2 pi) (dyn kernel)")(f)
        f = click.option("--kernel", "kernel_kind", type=click.Choice(choices), help="Kernel")(f)
        return f

    return decorator


def grid_options(f: F) -> F:
    """--m, --smax and --ds."""
    f = click.option("--ds", type=float, default=DEFAULT_DS, show_default=True, help="Grid step")(f)
    f = click.option("--smax", type=float, default=DEFAULT_SMAX, show_default=True, help="Grid end")(f)
    f = click.option("--m", type=int, default=DEFAULT_M, show_default=True, help="Quadrature order")(f)
    return f


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    callback=_load_config,
    is_eager=True,
    expose_value=False,
    help="key=value config file; explicit flags win",
)
@click.option("--threads", type=int, default=os.cpu_count() or 1, show_default=True, help="Worker threads")
@click.option(
    "--cache-dir", type=click.Path(file_okay=False, path_type=Path), envvar=CACHE_ENV, help="Gap curve cache"
)
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
@click.pass_context
def main(ctx: click.Context, threads: int, cache_dir: Path | None, verbose: bool) -> None:
    """levelspacing - exact level spacing distributions of the GOE-GUE crossover.

    Fredholm determinants of the (dynamical) sine kernel, Wigner surmises,
    finite-N Monte Carlo and L2 fits of the surmise parameter.
    """
    configure_logging(verbose)
    if threads < 1:
        raise click.BadParameter(f"must be at least 1, got {threads}", ctx, param_hint="--threads")
    ctx.obj = {"threads": threads, "cache": GapCache(cache_dir)}


@main.group()
def quad() -> None:
    """Gauss-Legendre quadrature rules."""
    pass


@quad.command("dump")
@click.option("--m", type=int, required=True, help="Number of nodes")
@click.option("--interval", type=FLOAT_PAIR, default="0,1", show_default=True, help="Interval a,b")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Output CSV (default: stdout)")
def quad_dump(m: int, interval: tuple[float, float], out: Path | None) -> None:
    """Nodes and weights of the order-M rule as CSV index,node,weight."""
    try:
        rule = gauss_legendre(m)
        if interval != (0.0, 1.0):
            rule = rescale(rule, *interval)
        data = np.column_stack([np.arange(rule.order), rule.nodes, rule.weights])
        if out is None:
            click.echo("index,node,weight")
            for i, x, w in zip(range(rule.order), rule.nodes, rule.weights):
                click.echo(f"{i},{x:.17g},{w:.17g}")
            return
        write_csv(out, ["index", "node", "weight"], data, {"m": rule.order, "interval": list(rule.interval)})
        console.print(f"[green]✓ Wrote {rule.order} nodes to {out}[/green]")
    except Exception as e:
        fail(e)


@main.group()
def kernel() -> None:
    """Kernel evaluation."""
    pass


@kernel.command("eval")
@click.option("--kind", type=click.Choice(["sine", "even", "odd", "dyn"]), required=True, help="Kernel")
@click.option("--rho", type=float, help="Kernel parameter (dyn only)")
@click.option("--x", type=float, required=True)
@click.option("--y", type=float, required=True)
def kernel_eval(kind: str, rho: float | None, x: float, y: float) -> None:
    """Print K(x, y) as JSON: a scalar, or the 2x2 block of the dyn kernel."""
    try:
        if kind != "dyn" and rho is not None:
            raise InvalidArgumentError(f"--rho only applies to --kind dyn, not {kind}")
        if kind == "sine":
            value: Any = sine_kernel(x, y)
        elif kind in ("even", "odd"):
            value = sine_kernel_projected(x, y, kind)
        else:
            if rho is None:
                raise InvalidArgumentError("--kind dyn needs --rho")
            value = dynamical_kernel(x, y, rho)
        click.echo(dumps({"kind": kind, "rho": rho, "x": x, "y": y, "value": value}, indent=None))
    except Exception as e:
        fail(e)


@main.command()
@kernel_options(["sine", "even", "odd", "dyn"])
@grid_options
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Output CSV")
@click.pass_context
def gap(
    ctx: click.Context,
    kernel_kind: str | None,
    rho: float | None,
    lambda_big: float | None,
    m: int,
    smax: float,
    ds: float,
    out: Path,
) -> None:
    """Gap probability E(s) on [0, SMAX] as CSV s,E."""
    try:
        spec = _kernel_spec(kernel_kind or "sine", rho, lambda_big)
        state = _state(ctx)
        with console.status(f"Computing {spec.label} gap probability (m={m})..."):
            curve = gap_curve(spec, default_grid(smax, ds), m, state["threads"], state["cache"])
        _write_with_sidecar(ctx, out, ["s", "E"], np.column_stack([curve.grid, curve.values]), curve.metadata())
        console.print(f"[green]✓ Wrote {curve.grid.size} points of {curve.label} to {out}[/green]")
    except Exception as e:
        fail(e)


@main.command()
@kernel_options(["sine", "dyn"])
@click.option("--class", "klass", type=click.Choice(["goe", "gue", "gse"]), help="Pure symmetry class")
@grid_options
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Output CSV")
@click.pass_context
def lsd(
    ctx: click.Context,
    kernel_kind: str | None,
    rho: float | None,
    lambda_big: float | None,
    klass: str | None,
    m: int,
    smax: float,
    ds: float,
    out: Path,
) -> None:
    """Level spacing density P(s) as CSV s,P with a JSON sidecar."""
    try:
        if (kernel_kind is None) == (klass is None):
            raise InvalidArgumentError("give exactly one of --kernel or --class")
        state = _state(ctx)
        grid = default_grid(smax, ds)
        with console.status("Computing level spacing density..."):
            if klass is not None:
                beta = {"goe": 1, "gue": 2, "gse": 4}[klass]
                curve = pure_class_lsd(beta, grid, m, state["threads"], state["cache"])
            else:
                spec = _kernel_spec(kernel_kind or "sine", rho, lambda_big)
                if spec.rho is not None:
                    curve = crossover_lsd(spec.rho, grid, m, state["threads"], state["cache"])
                else:
                    curve = kernel_lsd(spec, grid, m, state["threads"], state["cache"])
        normalization = lsd_normalization(curve)
        metadata = {**curve.source, **curve.metadata, "mass": curve.mass, "mean": curve.mean}
        metadata["normalization"] = normalization
        _write_with_sidecar(ctx, out, ["s", "P"], np.column_stack([curve.grid, curve.clipped()]), metadata)
        if not normalization["ok"]:
            console.print(
                f"[yellow]! Normalization outside tolerance: mass={curve.mass:.8f}, mean={curve.mean:.8f}[/yellow]"
            )
        console.print(f"[green]✓ Wrote {curve.grid.size} points to {out} (mass {curve.mass:.8f})[/green]")
    except Exception as e:
        fail(e)


@main.command()
@kernel_options(["sine", "even", "odd", "dyn"])
@click.option("--s", "s_list", type=NumberList(float), default="1,2,3,4", show_default=True, help="Interval lengths")
@click.option("--m", "m_list", type=NumberList(int), default="25,50,100,200", show_default=True, help="Orders")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Output CSV")
@click.pass_context
def converge(
    ctx: click.Context,
    kernel_kind: str | None,
    rho: float | None,
    lambda_big: float | None,
    s_list: tuple[float, ...],
    m_list: tuple[int, ...],
    out: Path | None,
) -> None:
    """Relative shift of E(s) between consecutive quadrature orders."""
    try:
        spec = _kernel_spec(kernel_kind or "sine", rho, lambda_big)
        with console.status(f"Convergence study of {spec.label}..."):
            rows = convergence_report(spec, s_list, m_list)

        table = Table(title=f"Convergence: {spec.label}")
        for column in ("s", "m_low", "m_high", "rel_shift"):
            table.add_column(column, justify="right")
        for row in rows:
            table.add_row(f"{row.s:g}", str(row.m_low), str(row.m_high), f"{row.rel_shift:.3e}")
        console.print(table)

        if out is not None:
            data = np.array([[r.s, r.m_low, r.m_high, r.rel_shift] for r in rows])
            _write_with_sidecar(ctx, out, ["s", "m_low", "m_high", "rel_shift"], data, {"kernel": spec.to_dict()})
            console.print(f"[green]✓ Wrote {len(rows)} rows to {out}[/green]")
    except Exception as e:
        fail(e)


@main.group(invoke_without_command=True)
@click.option("--beta", type=click.Choice(["1", "2", "4"]), help="Pure surmise")
@click.option("--lambda", "lam", type=float, help="Crossover surmise parameter")
@click.option("--smax", type=float, default=DEFAULT_SMAX, show_default=True)
@click.option("--ds", type=float, default=DEFAULT_DS, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Output CSV")
@click.pass_context
def surmise(
    ctx: click.Context, beta: str | None, lam: float | None, smax: float, ds: float, out: Path | None
) -> None:
    """Wigner-surmised density as CSV s,P."""
    if ctx.invoked_subcommand is not None:
        return
    try:
        if (beta is None) == (lam is None):
            raise InvalidArgumentError("give exactly one of --beta or --lambda")
        if out is None:
            raise InvalidArgumentError("--out is required")
        spec = SurmiseSpec.pure(int(beta)) if beta is not None else SurmiseSpec.crossover(lam or 0.0)
        grid = default_grid(smax, ds)
        _write_with_sidecar(ctx, out, ["s", "P"], np.column_stack([grid, spec.pdf(grid)]), spec.to_dict())
        console.print(f"[green]✓ Wrote {spec.label} to {out}[/green]")
    except Exception as e:
        fail(e)


@surmise.command("mc")
@click.option("--lambda", "lam", type=float, default=0.0, show_default=True, help="Crossover parameter")
@click.option("--n", "n_samples", type=int, default=1_000_000, show_default=True, help="Number of 2x2 matrices")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Output CSV")
@click.pass_context
def surmise_mc(ctx: click.Context, lam: float, n_samples: int, seed: int, out: Path) -> None:
    """Monte Carlo spacings of 2x2 matrices H1 + lambda H2, scaled to unit mean."""
    try:
        with console.status(f"Sampling {n_samples} 2x2 matrices..."):
            sample = surmise_mc_oracle(lam, n_samples, seed)
        ks = ks_distance(sample, lambda s: crossover_surmise_cdf(s, lam))
        metadata = {**sample.metadata(), "ks_distance": ks}
        _write_with_sidecar(ctx, out, ["s"], sample.spacings, metadata)
        console.print(f"[green]✓ Wrote {sample.n_kept} spacings to {out}[/green]")
        console.print(f"  raw mean {sample.raw_mean:.6f}, KS distance to the surmise {ks:.2e}")
    except Exception as e:
        fail(e)


@main.command()
@click.option("--alpha", type=float, help="Strength of the GUE perturbation")
@click.option("--target-Lambda", "target_lambda", type=float, help="Solve alpha for this measured Lambda")
@click.option("--N", "n", type=int, default=400, show_default=True, help="Matrix rank")
@click.option("--samples", type=int, default=1000, show_default=True, help="Number of matrices")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--bulk", type=float, default=0.5, show_default=True, help="Central fraction of levels kept")
@click.option("--beta", type=click.Choice(["1", "2", "4"]), default="1", show_default=True,
              help="Pure ensemble when alpha is 0")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True, help="Output directory")
@click.pass_context
def simulate(
    ctx: click.Context,
    alpha: float | None,
    target_lambda: float | None,
    n: int,
    samples: int,
    seed: int,
    bulk: float,
    beta: str,
    out: Path,
) -> None:
    """Finite-N spacings of H1 + alpha H2 (or a pure ensemble)."""
    try:
        if (alpha is None) == (target_lambda is None):
            raise InvalidArgumentError("give exactly one of --alpha or --target-Lambda")
        threads = _state(ctx)["threads"]
        config = EnsembleConfig(
            alpha=alpha or 0.0, n=n, n_samples=samples, seed=seed, beta=int(beta), bulk_fraction=bulk
        )
        if target_lambda is not None:
            with console.status(f"Solving alpha for Lambda={target_lambda:g}..."):
                config = replace(config, alpha=solve_alpha_for_lambda(target_lambda, config, threads=threads))
            console.print(f"  alpha = {config.alpha:.8g}")
        with console.status(f"Diagonalizing {samples} matrices of rank {n}..."):
            sample = run_simulation(config, threads)

        manifest = RunManifest(config=_run_config(ctx), seed=seed)
        spacings = write_csv(out / "spacings.csv", ["s"], sample.spacings, sample.metadata())
        manifest.add_output(spacings)
        report = write_json(
            out / "report.json",
            {"lambda_big_measured": sample.lambda_big_measured, "n_kept": sample.n_kept, "config": sample.config},
        )
        manifest.add_output(report)
        manifest.write(out / "manifest.json")

        console.print(f"[green]✓ Wrote {sample.n_kept} spacings to {out}[/green]")
        if sample.lambda_big_measured is not None:
            console.print(f"  measured Lambda = {sample.lambda_big_measured:.6f}")
    except Exception as e:
        fail(e)


def _read_sample(path: Path) -> SpacingSample:
    metadata, columns, data = read_csv(path)
    if "s" not in columns:
        raise InvalidArgumentError(f"{path}: no 's' column")
    spacings = np.ascontiguousarray(data[:, columns.index("s")])
    return SpacingSample(
        spacings=spacings,
        scale=float(metadata.get("scale", 1.0)),
        raw_mean=float(metadata.get("raw_mean", np.mean(spacings))),
        lambda_big_measured=metadata.get("lambda_big_measured"),
        config=dict(metadata.get("config", {}), file=str(path)),
    )


def _read_lsd(path: Path) -> LsdCurve:
    metadata, columns, data = read_csv(path)
    if len(columns) < 2 or columns[0] != "s":
        raise InvalidArgumentError(f"{path}: expected columns s,P")
    return lsd_from_values(data[:, 0], data[:, 1], label=metadata.get("label", path.stem))


@main.command()
@click.option("--Lambda", "lambda_big", type=float, help="Fit the exact crossover LSD at this Lambda")
@click.option("--sample", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Fit a spacings CSV")
@click.option("--window", type=FLOAT_PAIR, default="0,6", show_default=True, help="Integration window lo,hi")
@click.option("--m", type=int, default=DEFAULT_M, show_default=True, help="Quadrature order")
@click.option("--tolerance", type=float, default=1e-4, show_default=True, help="Lambda tolerance")
@click.option("--bins", type=int, default=DEFAULT_BINS, show_default=True, help="Histogram bins for --sample")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Output JSON (default: stdout)")
@click.pass_context
def fit(
    ctx: click.Context,
    lambda_big: float | None,
    sample: Path | None,
    window: tuple[float, float],
    m: int,
    tolerance: float,
    bins: int,
    out: Path | None,
) -> None:
    """Best-fit crossover surmise parameter lambda* by L2 minimization."""
    try:
        if (lambda_big is None) == (sample is None):
            raise InvalidArgumentError("give exactly one of --Lambda or --sample")
        state = _state(ctx)
        if lambda_big is not None:
            with console.status(f"Computing the exact LSD at Lambda={lambda_big:g}..."):
                param = CrossoverParam.from_lambda_big(lambda_big)
                target = crossover_lsd(param.rho, None, m, state["threads"], state["cache"])
        else:
            target = step_density(_read_sample(sample), bins, window)
        with console.status("Fitting lambda..."):
            result = fit_lambda(target, window=window, tolerance=tolerance)

        manifest = RunManifest(config=_run_config(ctx), cache_keys=sorted(state["cache"].touched))
        payload = {**result.to_dict(), "manifest": manifest.to_dict()}
        if out is None:
            click.echo(dumps(payload))
            return
        write_json(out, payload)
        console.print(f"[green]✓ lambda* = {result.lambda_star:.6f} (delta2 = {result.delta2:.3e}) → {out}[/green]")
    except Exception as e:
        fail(e)


@main.command()
@click.option("--num", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--den", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--smin", type=float, default=0.05, show_default=True, help="Smallest s kept")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Output CSV")
@click.pass_context
def ratio(ctx: click.Context, num: Path, den: Path, smin: float, out: Path) -> None:
    """Pointwise ratio of two s,P CSV files as CSV s,ratio."""
    try:
        curve = ratio_curve(_read_lsd(num), _read_lsd(den), smin)
        metadata = {"numerator": str(num), "denominator": str(den), "s_min_cut": smin, "omitted": curve.omitted}
        _write_with_sidecar(ctx, out, ["s", "ratio"], np.column_stack([curve.grid, curve.ratio]), metadata)
        console.print(f"[green]✓ Wrote {curve.grid.size} ratios to {out}[/green]")
        if curve.omitted:
            console.print(f"[yellow]! Omitted {curve.omitted} points with a vanishing denominator[/yellow]")
    except Exception as e:
        fail(e)


@main.command()
@click.argument("target", type=click.Choice(TARGETS))
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True, help="Output directory")
@click.option("--m", type=int, default=DEFAULT_M, show_default=True, help="Quadrature order")
@click.option("--seed", type=int, default=42, show_default=True, help="Seed of the finite-N run")
@click.option("--N", "n", type=int, default=400, show_default=True, help="Matrix rank of the finite-N run")
@click.option("--samples", type=int, default=1000, show_default=True, help="Matrices in the finite-N run")
@click.pass_context
def reproduce(
    ctx: click.Context, target: str, out: Path, m: int, seed: int, n: int, samples: int
) -> None:
    """Regenerate a reference figure or table and check it against tolerances.

    TARGET is one of fig1, fig2, fig3, lambda-table, convergence, finite-n, limits.
    """
    state = _state(ctx)
    settings = ReproduceSettings(
        out_dir=out,
        cache=state["cache"],
        m=m,
        threads=state["threads"],
        seed=seed,
        n=n,
        samples=samples,
        config=_run_config(ctx),
    )
    try:
        with console.status(f"Reproducing {target}..."):
            checks = run_reproduction(target, settings)
        report = [c.to_dict() for c in checks]
    except AcceptanceFailureError as e:
        report = e.report
        _print_checks(target, report)
        fail(e)
    except Exception as e:
        fail(e)
    _print_checks(target, report)
    console.print(f"[green]✓ {target}: all {len(report)} checks passed, outputs in {out}[/green]")


def _print_checks(target: str, report: list[dict[str, Any]]) -> None:
    table = Table(title=f"Checks: {target}")
    table.add_column("Check", style="cyan")
    table.add_column("Value", justify="right")
    table.add_column("Bound", justify="right")
    table.add_column("Result")
    for check in report:
        result = "[green]pass[/green]" if check["passed"] else "[red]FAIL[/red]"
        table.add_row(check["name"], f"{check['value']:.4g}", f"{check['bound']:.3g}", result)
    console.print(table)


@main.group()
def cache() -> None:
    """Inspect, verify and clear the gap curve cache."""
    pass


@cache.command("list")
@click.pass_context
def cache_list(ctx: click.Context) -> None:
    """List cached gap curves."""
    try:
        store: GapCache = _state(ctx)["cache"]
        entries = store.entries()
        if not entries:
            console.print(f"[yellow]No cached curves in {store.directory}[/yellow]")
            return

        table = Table(title=f"Cached gap curves ({store.directory})")
        table.add_column("Key", style="cyan")
        table.add_column("Kernel", style="green")
        table.add_column("rho", justify="right")
        table.add_column("m", justify="right")
        table.add_column("Points", justify="right")
        for entry in entries:
            rho = "-" if entry.rho is None else f"{entry.rho:.6g}"
            table.add_row(entry.key[:12], entry.kind, rho, str(entry.m), str(entry.points))
        console.print(table)
        console.print(f"\n[dim]Total: {len(entries)} curves[/dim]")
    except Exception as e:
        fail(e)


@cache.command("clear")
@click.option("--yes", "-y", is_flag=True, help="Skip confirmation")
@click.pass_context
def cache_clear(ctx: click.Context, yes: bool) -> None:
    """Delete every cached gap curve."""
    try:
        store: GapCache = _state(ctx)["cache"]
        if not yes and not click.confirm(f"Delete all cached curves in {store.directory}?"):
            console.print("[yellow]Cancelled[/yellow]")
            return
        removed = store.clear()
        console.print(f"[green]✓ Removed {removed} cached curves[/green]")
    except Exception as e:
        fail(e)


@cache.command("verify")
@click.option("--fraction", type=float, default=0.01, show_default=True, help="Fraction of points recomputed")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed choosing the points")
@click.pass_context
def cache_verify(ctx: click.Context, fraction: float, seed: int) -> None:
    """Recompute a random sample of cached points and compare bit for bit."""
    try:
        if not 0 < fraction <= 1:
            raise InvalidArgumentError(f"--fraction must be in (0, 1], got {fraction}")
        store: GapCache = _state(ctx)["cache"]
        with console.status("Verifying cached curves..."):
            report = store.verify(fraction, seed)
        points = sum(report.checked.values())
        console.print(f"[green]✓ {len(report.checked)} curves verified ({points} points recomputed)[/green]")
    except Exception as e:
        fail(e)


if __name__ == "__main__":
    main()
