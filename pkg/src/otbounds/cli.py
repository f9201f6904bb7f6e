"""Command-line front end: parse data, dispatch estimators, emit results.

Commands mirror the library surface: ``bounds`` and ``sweep`` run the
penalized estimator on observed or synthetic samples, ``oracle`` prints
the Gaussian closed forms, ``synth`` and ``rate`` run convergence studies
against those closed forms, ``neyman`` and ``corr`` produce the
variance-tightening and correlation reports.

Output is deterministic: JSON floats are rounded to 12 significant
digits, CSV floats use full round-trip ``repr``, and files are written to
a temporary path and renamed so failures leave no partial artifacts.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import os
import tempfile
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import click
import numpy as np

from .applications import correlation_bound, neyman_bound
from .cost_model import CostSpec, EtaGrid, QuadraticCost, product, sq_diff, sq_sum
from .errors import (
    EmptyGroup,
    MissingColumn,
    NonBinaryTreatment,
    NonNumericCell,
    OTBoundsError,
)
from .gaussian_oracle import (
    GaussianLinearSpec,
    LocationScaleSpec,
    v_c_closed,
    v_ip_closed,
    v_ip_general,
    v_u_closed,
    v_u_general,
)
from .pi_estimator import ObservedSample, estimate_bound, rate_diagnostic, sweep
from .synthetic import PRESET_NAMES, SynthConfig, generate, preset

__all__ = [
    "main",
    "run",
    "RunConfig",
    "parse_csv",
    "write_csv",
    "parse_eta_grid",
    "parse_cost",
]


# ---------------------------------------------------------------------------
# parsing helpers

def parse_eta_grid(text: str) -> EtaGrid:
    """Parse ``"0,1,10"`` comma lists or ``"start:stop:count"`` log ranges."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"log range must be start:stop:count, got {text!r}")
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
        if start <= 0:
            raise ValueError(
                f"log-spaced ranges need start > 0, got {start}; "
                "use a comma list to include eta=0"
            )
        if stop <= start:
            raise ValueError(f"log range needs stop > start, got {text!r}")
        if count < 2:
            raise ValueError(f"log range needs count >= 2, got {count}")
        return EtaGrid(tuple(float(v) for v in np.geomspace(start, stop, count)))
    values = tuple(float(v) for v in text.split(",") if v.strip() != "")
    if not values:
        raise ValueError(f"empty eta grid: {text!r}")
    return EtaGrid(values)


def parse_cost(text: str, dim: int) -> CostSpec:
    """Resolve a cost flag: a preset name or ``quadratic:<json path>``."""
    if text == "sq-sum":
        return sq_sum(dim)
    if text == "sq-diff":
        return sq_diff(dim)
    if text == "product":
        return product(dim)
    if text.startswith("quadratic:"):
        spec = QuadraticCost.from_json(text[len("quadratic:"):])
        if spec.dim != dim:
            raise ValueError(
                f"quadratic cost has dimension {spec.dim} but outcomes have "
                f"dimension {dim}"
            )
        return spec
    raise ValueError(
        f"unknown cost {text!r}; choose sq-sum, sq-diff, product, or "
        "quadratic:<path.json>"
    )


def parse_csv(path: str) -> ObservedSample:
    """Read an observed sample from ``w, y1..y{dY}, z1..z{dZ}`` columns.

    The header must list ``w`` first, then the outcome block, then the
    covariate block, with 1-based contiguous suffixes.  Cell errors are
    reported with their file line and column name.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [cell.strip() for cell in next(reader)]
        except StopIteration:
            raise MissingColumn(
                f"{path} is empty; expected a header row like 'w,y1,z1'"
            ) from None
        if not header or header[0] != "w":
            found = header[0] if header else "nothing"
            raise MissingColumn(f"first column must be 'w', found {found!r}")
        pos = 1
        d_y = 0
        while pos < len(header) and header[pos] == f"y{d_y + 1}":
            d_y += 1
            pos += 1
        if d_y == 0:
            raise MissingColumn("expected outcome column 'y1' after 'w'")
        d_z = 0
        while pos < len(header) and header[pos] == f"z{d_z + 1}":
            d_z += 1
            pos += 1
        if d_z == 0:
            raise MissingColumn("expected covariate column 'z1' after the outcomes")
        if pos != len(header):
            raise MissingColumn(
                f"unexpected column {header[pos]!r}; header must read "
                f"w,y1..y{d_y},z1..z{d_z}"
            )
        w_rows: list[int] = []
        y_rows: list[list[float]] = []
        z_rows: list[list[float]] = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise MissingColumn(
                    f"line {line_no} has {len(row)} cells, expected {len(header)}"
                )
            values = []
            for name, cell in zip(header, row):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise NonNumericCell(
                        f"line {line_no}, column {name!r}: {cell.strip()!r} is not numeric"
                    ) from None
            if values[0] not in (0.0, 1.0):
                raise NonBinaryTreatment(
                    f"line {line_no}: w = {row[0].strip()} (expected 0 or 1)"
                )
            w_rows.append(int(values[0]))
            y_rows.append(values[1 : 1 + d_y])
            z_rows.append(values[1 + d_y :])
    if not w_rows:
        raise EmptyGroup(f"{path} has a header but no data rows")
    return ObservedSample(
        w=np.asarray(w_rows, dtype=np.int8),
        y=np.asarray(y_rows, dtype=np.float64),
        z=np.asarray(z_rows, dtype=np.float64),
    )


def write_csv(sample: ObservedSample, destination) -> None:
    """Write a sample in the ``w,y1..,z1..`` schema with round-trip floats."""
    own = isinstance(destination, (str, os.PathLike))
    fh = open(destination, "w", newline="", encoding="utf-8") if own else destination
    try:
        header = (
            ["w"]
            + [f"y{i + 1}" for i in range(sample.y_dim)]
            + [f"z{i + 1}" for i in range(sample.z_dim)]
        )
        fh.write(",".join(header) + "\n")
        for i in range(sample.w.shape[0]):
            cells = [str(int(sample.w[i]))]
            cells += [repr(float(v)) for v in sample.y[i]]
            cells += [repr(float(v)) for v in sample.z[i]]
            fh.write(",".join(cells) + "\n")
    finally:
        if own:
            fh.close()


# ---------------------------------------------------------------------------
# emission helpers

def _round_floats(obj):
    # 12 significant digits, re-parsed so json prints the shortest form
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    names = list(rows[0].keys())
    buf.write(",".join(names) + "\n")
    for row in rows:
        cells = []
        for name in names:
            value = row[name]
            cells.append(repr(float(value)) if isinstance(value, float) else str(value))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def _rows_to_table(rows: Sequence[dict]) -> str:
    if not rows:
        return "(no results)"
    names = list(rows[0].keys())
    rendered = [
        [f"{v:.6g}" if isinstance(v, float) else str(v) for v in row.values()]
        for row in rows
    ]
    widths = [
        max(len(name), max(len(r[i]) for r in rendered))
        for i, name in enumerate(names)
    ]
    lines = [
        "  ".join(name.rjust(width) for name, width in zip(names, widths)),
        "  ".join("-" * width for width in widths),
    ]
    for r in rendered:
        lines.append("  ".join(cell.rjust(width) for cell, width in zip(r, widths)))
    return "\n".join(lines)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".otbounds-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# configuration and dispatch

_DATA_COMMANDS = ("bounds", "sweep", "neyman", "corr")


@dataclass
class RunConfig:
    """Everything one invocation needs; unused fields stay at defaults."""

    command: str
    input: Optional[str] = None
    preset: Optional[str] = None
    n: int = 100
    m: int = 100
    seed: int = 0
    cost: str = "sq-sum"
    etas: Optional[EtaGrid] = None
    side: str = "both"
    solver: str = "exact"
    epsilon: Optional[float] = None
    max_iters: int = 10_000
    tol: float = 1e-9
    standardize: bool = False
    fmt: str = "json"
    output: Optional[str] = None
    clamp: bool = False
    sizes: Optional[tuple[int, ...]] = None
    seeds: int = 20
    beta0: Optional[float] = None
    beta1: Optional[float] = None
    sd0: float = 1.0
    sd1: float = 1.0
    model: Optional[str] = None
    dump_sample: bool = False

    def validate(self) -> None:
        if self.command in _DATA_COMMANDS or (
            self.command == "synth" and self.dump_sample
        ):
            if (self.input is None) == (self.preset is None):
                raise ValueError("provide exactly one of --input and --preset")
        if self.preset is not None and self.preset not in PRESET_NAMES:
            raise ValueError(
                f"unknown preset {self.preset!r}; choose from {PRESET_NAMES}"
            )
        if self.fmt not in ("json", "csv", "table"):
            raise ValueError(f"format must be json, csv, or table, got {self.fmt!r}")
        if self.side not in ("lower", "upper", "both"):
            raise ValueError(f"side must be lower, upper, or both, got {self.side!r}")

    def as_dict(self) -> dict:
        out = {"command": self.command}
        uses_data = self.command in _DATA_COMMANDS
        uses_model = self.command in ("oracle", "synth", "rate")
        if uses_data:
            if self.input is not None:
                out["input"] = self.input
            else:
                out.update(preset=self.preset, n=self.n, m=self.m, seed=self.seed)
        if uses_model:
            if self.model is not None:
                out["model"] = self.model
            elif self.preset is not None:
                out["preset"] = self.preset
            else:
                out.update(beta0=self.beta0, beta1=self.beta1,
                           sd0=self.sd0, sd1=self.sd1)
        if self.command in ("bounds", "sweep", "synth", "rate"):
            out["cost"] = self.cost
        if self.command in ("bounds", "sweep"):
            out["side"] = self.side
            out["solver"] = self.solver
            if self.epsilon is not None:
                out["epsilon"] = self.epsilon
            if self.standardize:
                out["standardize"] = True
        if self.etas is not None:
            out["etas"] = list(self.etas.values)
        if self.command in ("synth", "rate"):
            out["seeds"] = self.seeds
            out["base_seed"] = self.seed
            if self.sizes:
                out["sizes"] = list(self.sizes)
        if self.command == "corr" and self.clamp:
            out["clamp"] = True
        return out


def _load_sample(config: RunConfig) -> ObservedSample:
    if config.input is not None:
        return parse_csv(config.input)
    return generate(
        SynthConfig(preset(config.preset), n=config.n, m=config.m, seed=config.seed)
    )


def _linear_from_location(spec: LocationScaleSpec) -> GaussianLinearSpec:
    if spec.kind != "location" or not (spec.f0.is_linear and spec.f1.is_linear):
        raise ValueError("only linear location models have Gaussian closed forms")
    if spec.f0.intercept.any() or spec.f1.intercept.any():
        raise ValueError("closed forms need zero-intercept covariate maps")
    if spec.z_cov is not None:
        raise ValueError("closed forms assume identity covariate covariance")
    return GaussianLinearSpec(spec.f0.linear, spec.f1.linear, spec.sigma0, spec.sigma1)


def _resolve_linear_model(config: RunConfig) -> tuple[GaussianLinearSpec, str]:
    if config.model is not None:
        return GaussianLinearSpec.from_json(config.model), config.model
    if config.preset is not None:
        if config.preset not in PRESET_NAMES:
            raise ValueError(
                f"unknown preset {config.preset!r}; choose from {PRESET_NAMES}"
            )
        return _linear_from_location(preset(config.preset)), config.preset
    if config.beta0 is not None and config.beta1 is not None:
        spec = GaussianLinearSpec.from_scalar(
            config.beta0, config.beta1, config.sd0, config.sd1
        )
        return spec, "gaussian-linear"
    raise ValueError("provide --model, --preset, or both --beta0 and --beta1")


def _bound_rows(config: RunConfig, sample: ObservedSample) -> list[dict]:
    cost = parse_cost(config.cost, sample.y_dim)
    if config.side == "both":
        bounds = sweep(
            sample, cost, config.etas,
            solver=config.solver, epsilon=config.epsilon,
            standardize=config.standardize,
            max_iters=config.max_iters, tol=config.tol,
        )
        return [b.as_dict() for b in bounds]
    rows = []
    for eta in config.etas:
        res = estimate_bound(
            sample, cost, eta, side=config.side,
            solver=config.solver, epsilon=config.epsilon,
            standardize=config.standardize,
            max_iters=config.max_iters, tol=config.tol,
        )
        row = {
            "eta": eta,
            config.side: res.value,
            f"{config.side}_penalty": res.penalty,
            f"plan_support_{config.side}": res.plan.support_size,
        }
        if config.solver == "sinkhorn":
            row["converged"] = res.plan.converged
        rows.append(row)
    return rows


def _run_oracle(config: RunConfig) -> tuple[dict, list[dict]]:
    model, _ = _resolve_linear_model(config)
    if model.is_scalar:
        extras = {"v_u": v_u_closed(model), "v_c": v_c_closed(model)}
        rows = [{"eta": eta, "v_ip": v_ip_closed(model, eta)} for eta in config.etas]
    else:
        # no conditional closed form beyond the scalar model
        extras = {"v_u": v_u_general(model)}
        rows = [{"eta": eta, "v_ip": v_ip_general(model, eta)} for eta in config.etas]
    return extras, rows


def _run_rate(config: RunConfig) -> tuple[dict, list[dict]]:
    model, _ = _resolve_linear_model(config)
    if len(config.etas) != 1:
        raise ValueError("rate takes a single --eta value")
    cost = parse_cost(config.cost, model.y_dim)
    diag = rate_diagnostic(
        model, cost, config.etas.values[0],
        sizes=config.sizes or (100, 200, 400, 800),
        seeds=config.seeds, base_seed=config.seed,
    )
    rows = [{"n": size, "mean_abs_error": err} for size, err in diag.entries()]
    return {"slope": diag.slope}, rows


def _run_synth_study(config: RunConfig) -> tuple[dict, list[dict]]:
    model, label = _resolve_linear_model(config)
    cost = parse_cost(config.cost, model.y_dim)
    sizes = config.sizes or (100, 200, 400, 800)
    rows, slopes = [], []
    for eta in config.etas:
        diag = rate_diagnostic(
            model, cost, eta, sizes=sizes, seeds=config.seeds, base_seed=config.seed
        )
        slopes.append({"eta": eta, "slope": diag.slope})
        rows += [
            {"model": label, "n": size, "eta": eta, "mean_abs_error": err}
            for size, err in diag.entries()
        ]
    return {"slopes": slopes}, rows


def run(config: RunConfig) -> str:
    """Execute one command and return (and optionally write) its rendering."""
    config.validate()
    if config.command == "synth" and config.dump_sample:
        sample = _load_sample(config)
        buf = io.StringIO()
        write_csv(sample, buf)
        text = buf.getvalue()
        if config.output:
            _atomic_write(config.output, text)
        return text
    table_override = None
    if config.command in ("bounds", "sweep"):
        rows = _bound_rows(config, _load_sample(config))
        extras = {}
    elif config.command == "oracle":
        extras, rows = _run_oracle(config)
    elif config.command == "rate":
        extras, rows = _run_rate(config)
    elif config.command == "synth":
        extras, rows = _run_synth_study(config)
    elif config.command == "neyman":
        report = neyman_bound(_load_sample(config), config.etas)
        payload = report.as_dict()
        rows = payload.pop("rows")
        extras = payload
        table_override = report.format_table()
    elif config.command == "corr":
        report = correlation_bound(_load_sample(config), config.etas, clamp=config.clamp)
        payload = report.as_dict()
        rows = payload.pop("rows")
        extras = payload
        table_override = report.format_table()
    else:
        raise ValueError(f"unknown command {config.command!r}")
    if config.fmt == "json":
        payload = {"config": config.as_dict(), **extras, "results": rows}
        text = json.dumps(_round_floats(payload), indent=2) + "\n"
    elif config.fmt == "csv":
        text = _rows_to_csv(rows)
    else:
        text = (table_override or _rows_to_table(rows)) + "\n"
    if config.output:
        _atomic_write(config.output, text)
    return text


# ---------------------------------------------------------------------------
# click wiring

def _wrap_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except (OTBoundsError, ValueError, RuntimeError, OSError,
                json.JSONDecodeError) as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _echo(config: RunConfig) -> None:
    text = run(config)
    if not config.output:
        click.echo(text, nl=False)


_input_opt = click.option("--input", "-i", "input_", type=click.Path(), default=None,
                          help="CSV sample with columns w,y1..,z1..")
_preset_opt = click.option("--preset", type=str, default=None,
                           help=f"synthetic model preset: {', '.join(PRESET_NAMES)}")
_n_opt = click.option("--n", type=int, default=100, show_default=True,
                      help="control group size for --preset data")
_m_opt = click.option("--m", type=int, default=100, show_default=True,
                      help="treated group size for --preset data")
_seed_opt = click.option("--seed", type=int, default=0, show_default=True,
                         help="seed for synthetic draws")
_cost_opt = click.option("--cost", type=str, default="sq-sum", show_default=True,
                         help="sq-sum | sq-diff | product | quadratic:<path.json>")
_solver_opts = [
    click.option("--solver", type=click.Choice(["exact", "sinkhorn"]),
                 default="exact", show_default=True),
    click.option("--epsilon", type=float, default=None,
                 help="entropic temperature for --solver sinkhorn"),
    click.option("--max-iters", type=int, default=10_000, show_default=True,
                 help="sinkhorn iteration budget"),
    click.option("--tol", type=float, default=1e-9, show_default=True,
                 help="sinkhorn marginal tolerance"),
]
_standardize_opt = click.option("--standardize-z", "standardize", is_flag=True,
                                help="standardize covariates on the pooled sample")
_format_opt = click.option("--format", "fmt", type=click.Choice(["json", "csv", "table"]),
                           default="json", show_default=True)
_output_opt = click.option("--output", "-o", type=click.Path(), default=None,
                           help="write here (atomically) instead of stdout")


def _apply(options, fn):
    for option in reversed(options):
        fn = option(fn)
    return fn


@click.group()
@click.version_option(package_name="otbounds")
def main() -> None:
    """Partial-identification bounds via penalized optimal transport."""
    threads = os.environ.get("OTBOUNDS_NUM_THREADS")
    if threads is not None:
        try:
            count = int(threads)
        except ValueError:
            raise click.ClickException(
                f"OTBOUNDS_NUM_THREADS must be an integer, got {threads!r}"
            ) from None
        import numba

        numba.set_num_threads(count)


def _bounds_like(name: str, help_text: str, default_eta: Optional[str], single: bool):
    options = [
        _input_opt, _preset_opt, _n_opt, _m_opt, _seed_opt, _cost_opt,
        click.option("--eta", type=str, required=default_eta is None,
                     default=default_eta,
                     show_default=default_eta is not None,
                     help="comma list '0,1,10' or log range 'start:stop:count'"),
        click.option("--side", type=click.Choice(["lower", "upper", "both"]),
                     default="both", show_default=True),
        *_solver_opts, _standardize_opt, _format_opt, _output_opt,
    ]

    @_wrap_errors
    def command(input_, preset, n, m, seed, cost, eta, side, solver, epsilon,
                max_iters, tol, standardize, fmt, output):
        grid = parse_eta_grid(eta)
        if single and len(grid) != 1:
            raise ValueError(f"{name} takes a single --eta value; use sweep for grids")
        _echo(RunConfig(
            command=name, input=input_, preset=preset, n=n, m=m, seed=seed,
            cost=cost, etas=grid, side=side, solver=solver, epsilon=epsilon,
            max_iters=max_iters, tol=tol, standardize=standardize,
            fmt=fmt, output=output,
        ))

    command.__name__ = name
    command.__doc__ = help_text
    return main.command(name=name)(_apply(options, command))


_bounds_like(
    "bounds",
    "PI interval at one penalty weight.",
    default_eta=None,
    single=True,
)
_bounds_like(
    "sweep",
    "PI intervals across a penalty grid.",
    default_eta="0,1,10,100",
    single=False,
)


@main.command()
@click.option("--beta0", type=float, default=None, help="control slope")
@click.option("--beta1", type=float, default=None, help="treated slope")
@click.option("--sd0", type=float, default=1.0, show_default=True,
              help="control noise standard deviation")
@click.option("--sd1", type=float, default=1.0, show_default=True,
              help="treated noise standard deviation")
@click.option("--model", type=click.Path(), default=None,
              help="JSON file with beta0/beta1/sigma0/sigma1 blocks")
@click.option("--eta", type=str, default="0,1,10,100", show_default=True)
@_format_opt
@_output_opt
@_wrap_errors
def oracle(beta0, beta1, sd0, sd1, model, eta, fmt, output):
    """Closed-form bound values for a linear Gaussian model."""
    _echo(RunConfig(
        command="oracle", beta0=beta0, beta1=beta1, sd0=sd0, sd1=sd1,
        model=model, etas=parse_eta_grid(eta), fmt=fmt, output=output,
    ))


@main.command()
@_preset_opt
@_n_opt
@_m_opt
@_seed_opt
@click.option("--beta0", type=float, default=None, help="control slope")
@click.option("--beta1", type=float, default=None, help="treated slope")
@click.option("--sd0", type=float, default=1.0, show_default=True)
@click.option("--sd1", type=float, default=1.0, show_default=True)
@click.option("--model", type=click.Path(), default=None,
              help="JSON model file (see oracle --model)")
@click.option("--cost", type=str, default="sq-sum", show_default=True)
@click.option("--eta", type=str, default="10", show_default=True)
@click.option("--sizes", type=str, default="100,200,400,800", show_default=True,
              help="comma list of sample sizes (n=m=N per size)")
@click.option("--seeds", type=int, default=20, show_default=True,
              help="replicates per size")
@click.option("--dump-sample", is_flag=True,
              help="emit one generated sample as CSV instead of the error study")
@_format_opt
@_output_opt
@_wrap_errors
def synth(preset, n, m, seed, beta0, beta1, sd0, sd1, model, cost, eta, sizes,
          seeds, dump_sample, fmt, output):
    """Generate synthetic data; study estimator error against the oracle."""
    _echo(RunConfig(
        command="synth", preset=preset, n=n, m=m, seed=seed,
        beta0=beta0, beta1=beta1, sd0=sd0, sd1=sd1, model=model, cost=cost,
        etas=parse_eta_grid(eta),
        sizes=tuple(int(s) for s in sizes.split(",")) if sizes else None,
        seeds=seeds, dump_sample=dump_sample, fmt=fmt, output=output,
    ))


@main.command()
@click.option("--beta0", type=float, default=None, help="control slope")
@click.option("--beta1", type=float, default=None, help="treated slope")
@click.option("--sd0", type=float, default=1.0, show_default=True)
@click.option("--sd1", type=float, default=1.0, show_default=True)
@click.option("--model", type=click.Path(), default=None,
              help="JSON model file (see oracle --model)")
@click.option("--cost", type=str, default="sq-sum", show_default=True)
@click.option("--eta", type=str, default="10", show_default=True)
@click.option("--sizes", type=str, default="100,200,400,800", show_default=True)
@click.option("--seeds", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="base seed for replicate streams")
@_format_opt
@_output_opt
@_wrap_errors
def rate(beta0, beta1, sd0, sd1, model, cost, eta, sizes, seeds, seed, fmt, output):
    """Convergence-rate diagnostic: mean error per size and log-log slope."""
    _echo(RunConfig(
        command="rate", beta0=beta0, beta1=beta1, sd0=sd0, sd1=sd1, model=model,
        cost=cost, etas=parse_eta_grid(eta),
        sizes=tuple(int(s) for s in sizes.split(",")) if sizes else None,
        seeds=seeds, seed=seed, fmt=fmt, output=output,
    ))


@main.command()
@_input_opt
@_preset_opt
@_n_opt
@_m_opt
@_seed_opt
@click.option("--eta", type=str, default="0,10,20,30,40,50", show_default=True)
@_format_opt
@_output_opt
@_wrap_errors
def neyman(input_, preset, n, m, seed, eta, fmt, output):
    """Tightened design-based variance bounds across a penalty grid."""
    _echo(RunConfig(
        command="neyman", input=input_, preset=preset, n=n, m=m, seed=seed,
        etas=parse_eta_grid(eta), fmt=fmt, output=output,
    ))


@main.command()
@_input_opt
@_preset_opt
@_n_opt
@_m_opt
@_seed_opt
@click.option("--eta", type=str, default="0,10,20,30,40,50", show_default=True)
@click.option("--clamp", is_flag=True, help="clip correlation bounds into [-1, 1]")
@_format_opt
@_output_opt
@_wrap_errors
def corr(input_, preset, n, m, seed, eta, clamp, fmt, output):
    """PI intervals for the correlation between potential outcomes."""
    _echo(RunConfig(
        command="corr", input=input_, preset=preset, n=n, m=m, seed=seed,
        etas=parse_eta_grid(eta), clamp=clamp, fmt=fmt, output=output,
    ))


if __name__ == "__main__":
    main()
