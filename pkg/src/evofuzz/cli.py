"""Command line interface: run one experiment, run a grid, export a series."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import datasets
from .builders import GenerationMethod
from .errors import DomainError, IngestionError
from .experiments import (
    PROFILES,
    DatasetSpec,
    ExperimentSpec,
    format_grid_table,
    grid_columns,
    run_experiment,
    run_grid,
    write_grid_csv,
)
from .fuzzysets import UniverseGrid
from .measures import measure_names
from .model import ModelConfig

_FS_METHODS = {
    "gaussian": GenerationMethod.gaussian(),
    "singleton-linear": GenerationMethod.singleton_polling("linear"),
    "singleton-lagrange": GenerationMethod.singleton_polling("lagrange"),
}


def _model_config(values: dict) -> ModelConfig:
    method = values.get("fs_method", "gaussian")
    if method not in _FS_METHODS:
        raise DomainError(
            f"fs_method must be one of {sorted(_FS_METHODS)}, got {method!r}")
    grid = values.get("grid", (0.0, 10.0, 101))
    return ModelConfig(
        alpha=values.get("alpha", 0.001),
        beta=values.get("beta", 0.06),
        lambda_reg=values.get("lambda_reg", 1e-7),
        sigma=values.get("sigma", 0.3),
        epsilon=values.get("epsilon", 0.05),
        omega=values.get("omega", 1.0),
        tau=values.get("tau"),
        measure=values.get("measure", "zeng_li"),
        fs_method=_FS_METHODS[method],
        fs_type=values.get("fs_type", "gt2"),
        n_zslices=values.get("zslices", 4),
        grid=UniverseGrid(*grid),
        kernel_size_update=values.get("kernel_size_update", "frozen"),
    )


def _load_config_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"cannot read config {path}: {exc}") from exc


def _collect(config_file, profile, flags) -> dict:
    """Merge config file, profile preset and explicit flags, in that order."""
    values: dict = {}
    if config_file:
        file_values = _load_config_file(config_file)
        values.update(file_values.get("model", {}))
        for key in ("dataset", "repeats", "output_dir", "denormalize_metrics"):
            if key in file_values:
                values[key] = file_values[key]
    if profile:
        if profile not in PROFILES:
            raise click.UsageError(
                f"unknown profile {profile!r}; available: {sorted(PROFILES)}")
        values.update(PROFILES[profile])
    values.update({k: v for k, v in flags.items() if v is not None})
    return values


def _dataset_spec(values: dict, dataset, theta, path, column) -> DatasetSpec:
    if dataset is None and "dataset" in values:
        ds = values["dataset"]
        return DatasetSpec(
            kind=ds["kind"],
            theta=ds.get("theta", 17.0),
            path=ds.get("path"),
            column=ds.get("column", "Close"),
        )
    if dataset is None:
        raise click.UsageError("missing --dataset (or a config file with one)")
    if dataset == "mackey-glass":
        return DatasetSpec(kind=dataset, theta=theta if theta is not None else 17.0)
    if path is None:
        raise click.UsageError("--dataset stock-csv needs --path")
    return DatasetSpec(kind=dataset, path=path,
                       column=column if column is not None else "Close")


def _shared_options(fn):
    options = [
        click.option("--dataset", type=click.Choice(["mackey-glass", "stock-csv"]),
                     default=None, help="Benchmark to run."),
        click.option("--theta", type=float, default=None,
                     help="Delay of the generated series."),
        click.option("--path", type=click.Path(), default=None,
                     help="CSV file for stock-csv."),
        click.option("--column", default=None, help="CSV close-price column."),
        click.option("--measure", default=None,
                     help="Compatibility measure registry key."),
        click.option("--fs-method", default=None,
                     type=click.Choice(sorted(_FS_METHODS)),
                     help="Fuzzy set generation method."),
        click.option("--fs-type", default=None,
                     type=click.Choice(["t1", "it2", "gt2"]),
                     help="Fuzzy representation windows are compared in."),
        click.option("--zslices", type=int, default=None,
                     help="Number of slice levels for gt2 sets."),
        click.option("--alpha", type=float, default=None, help="Learning rate."),
        click.option("--beta", type=float, default=None,
                     help="Arousal growth rate (also the creation threshold)."),
        click.option("--lambda", "lambda_reg", type=float, default=None,
                     help="KRLS regularization."),
        click.option("--sigma", type=float, default=None,
                     help="Kernel width / antecedent spread."),
        click.option("--epsilon", type=float, default=None,
                     help="Utility pruning threshold."),
        click.option("--uod-lo", type=float, default=None,
                     help="Universe of discourse lower bound."),
        click.option("--uod-hi", type=float, default=None,
                     help="Universe of discourse upper bound."),
        click.option("--disc", type=int, default=None,
                     help="Number of universe discretization points."),
        click.option("--repeats", type=int, default=None,
                     help="Timed train+test repetitions (default 20)."),
        click.option("--profile", default=None,
                     help="Hyperparameter preset: " + ", ".join(sorted(PROFILES))),
        click.option("--config", "config_file", type=click.Path(), default=None,
                     help="JSON config file; flags override its values."),
        click.option("--out", default=None, help="Output directory."),
        click.option("--denormalize", "denormalize_metrics", is_flag=True,
                     default=None,
                     help="Compute metrics on the original scale."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _assemble_spec(kwargs) -> ExperimentSpec:
    flag_names = ("measure", "fs_method", "fs_type", "zslices", "alpha", "beta",
                  "lambda_reg", "sigma", "epsilon", "repeats")
    flags = {k: kwargs[k] for k in flag_names}
    values = _collect(kwargs["config_file"], kwargs["profile"], flags)
    if kwargs["uod_lo"] is not None or kwargs["uod_hi"] is not None \
            or kwargs["disc"] is not None:
        base = values.get("grid", (0.0, 10.0, 101))
        values["grid"] = (
            kwargs["uod_lo"] if kwargs["uod_lo"] is not None else base[0],
            kwargs["uod_hi"] if kwargs["uod_hi"] is not None else base[1],
            kwargs["disc"] if kwargs["disc"] is not None else base[2],
        )
    dataset = _dataset_spec(values, kwargs["dataset"], kwargs["theta"],
                            kwargs["path"], kwargs["column"])
    try:
        config = _model_config(values)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    out = kwargs["out"] or values.get("output_dir", "out")
    denorm = kwargs["denormalize_metrics"]
    if denorm is None:
        denorm = bool(values.get("denormalize_metrics", False))
    return ExperimentSpec(
        dataset=dataset,
        model_config=config,
        repeats=values.get("repeats") or 20,
        output_dir=out,
        denormalize_metrics=denorm,
    )


@click.group()
def main():
    """Evolving fuzzy forecaster: train, evaluate and compare measures."""


@main.command()
@_shared_options
def run(**kwargs):
    """Run one experiment and write metrics, predictions and rule trace."""
    try:
        spec = _assemble_spec(kwargs)
        report, _, _ = run_experiment(spec)
    except (DomainError, IngestionError) as exc:
        raise click.UsageError(str(exc)) from exc
    row = report.as_dict()
    click.echo(f"dataset={spec.dataset.label()} measure={spec.model_config.measure}")
    for key in ("rmse", "ndei", "mae", "er2", "mape"):
        click.echo(f"{key}={row[key]:.7f}")
    click.echo(f"final_rules={report.final_rules}")
    click.echo(f"runtime={report.runtime_mean_s:.2f}s "
               f"+/- {report.runtime_std_s:.2f}s over {spec.repeats} run(s)")
    click.echo(f"artifacts written to {spec.output_dir}/")


@main.command()
@_shared_options
@click.option("--measures", default=None,
              help="Comma-separated measure keys; one grid cell per key.")
@click.option("--jobs", type=int, default=1, help="Parallel worker processes.")
def grid(measures, jobs, **kwargs):
    """Run a grid of experiments and emit one comparison table per dataset."""
    try:
        base = _assemble_spec(kwargs)
    except (DomainError, IngestionError) as exc:
        raise click.UsageError(str(exc)) from exc

    cells = []
    config_file = kwargs["config_file"]
    file_cells = []
    if config_file:
        file_cells = _load_config_file(config_file).get("cells", [])
    if measures:
        for name in [m.strip() for m in measures.split(",") if m.strip()]:
            cfg_values = {**_config_as_values(base.model_config), "measure": name}
            try:
                _reconcile_fs_type(cfg_values, name)
                cfg = _model_config(cfg_values)
            except DomainError as exc:
                raise click.UsageError(str(exc)) from exc
            cells.append(ExperimentSpec(
                dataset=base.dataset, model_config=cfg, repeats=base.repeats,
                output_dir=base.output_dir,
                denormalize_metrics=base.denormalize_metrics))
    for cell in file_cells:
        cfg_values = {**_config_as_values(base.model_config),
                      **cell.get("model", {})}
        try:
            cfg = _model_config(cfg_values)
            dataset = _dataset_spec(cell, None, None, None, None) \
                if "dataset" in cell else base.dataset
        except DomainError as exc:
            raise click.UsageError(str(exc)) from exc
        cells.append(ExperimentSpec(
            dataset=dataset, model_config=cfg,
            repeats=cell.get("repeats", base.repeats),
            output_dir=base.output_dir,
            denormalize_metrics=base.denormalize_metrics))
    if not cells:
        cells = [base]

    tables, any_failed = run_grid(cells, jobs=jobs)
    out = Path(base.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for label, rows in tables.items():
        kind = "mackey-glass" if label.startswith("mackey-glass") else "stock-csv"
        columns = grid_columns(kind)
        click.echo(format_grid_table(label, rows, columns))
        write_grid_csv(out / f"grid_{label}.csv", rows, columns)
    if any_failed:
        sys.exit(1)


def _reconcile_fs_type(values: dict, measure_name: str):
    """Align a grid cell's fuzzy representation with its measure's kind.

    A grid mixes type-1 and type-2 measures in one sweep; each cell gets
    the representation its measure consumes.
    """
    from .measures import get_measure
    kind = get_measure(measure_name).set_kind
    if kind == "t1":
        values["fs_type"] = "t1"
    elif kind == "gt2":
        values["fs_type"] = "gt2"
    elif values.get("fs_type") == "t1":
        values["fs_type"] = "gt2"


def _config_as_values(cfg: ModelConfig) -> dict:
    method = {v: k for k, v in _FS_METHODS.items()}[cfg.fs_method]
    return {
        "alpha": cfg.alpha, "beta": cfg.beta, "lambda_reg": cfg.lambda_reg,
        "sigma": cfg.sigma, "epsilon": cfg.epsilon, "omega": cfg.omega,
        "tau": cfg.tau, "measure": cfg.measure, "fs_method": method,
        "fs_type": cfg.fs_type, "zslices": cfg.n_zslices,
        "grid": (cfg.grid.lo, cfg.grid.hi, cfg.grid.n_points),
        "kernel_size_update": cfg.kernel_size_update,
    }


@main.command("gen-mackey-glass")
@click.option("--theta", type=float, default=17.0, help="Delay parameter.")
@click.option("--length", type=int, default=5586,
              help="Number of integer-time samples.")
@click.option("--dt", type=float, default=0.1, help="Integration step.")
@click.option("--x0", type=float, default=1.2, help="Constant history value.")
@click.option("--out", type=click.Path(), required=True,
              help="Output CSV path.")
def gen_mackey_glass(theta, length, dt, x0, out):
    """Generate the chaotic benchmark series and export it as CSV."""
    try:
        spec = datasets.SeriesSpec(theta=theta, length=length, dt=dt, x0=x0)
        series = datasets.generate_mackey_glass(spec)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    datasets.export_series_csv(series, out)
    click.echo(f"wrote {length} samples to {out}")


if __name__ == "__main__":
    main()
