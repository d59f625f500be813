"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data or I/O error, 3 numerical
error (including a failed ``verify``).
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click
import numpy as np

from .correlation import covariance_matrix
from .dataset import ingest_csv, read_loadings, write_table_csv
from .errors import DataError, NumericalError
from .factor import FactorModel, implied_correlation, simulate
from .pca import DEFAULT_THRESHOLD
from .report import MODES, run_analysis, verify_identity

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERICAL = 0, 1, 2, 3


def run_simulation(model_path, samples: int, seed: int, out_path, factors=None) -> dict:
    """Simulate data from a loadings artifact and write it as CSV.

    Args:
        model_path: JSON report or loadings CSV written by ``analyze``.
        samples: number of simulated observations, at least 2.
        seed: generator seed.
        out_path: destination CSV; the header holds the variable names.
        factors: keep only the first ``factors`` columns of the loadings.
            All of them by default.

    Returns:
        Summary with the largest entrywise gap between the empirical
        covariance of the simulated data and the implied matrix ``L' L'^T``.
        For a full model that is the correlation matrix itself; for a
        reduced one the diagonal is the communality.
    """
    variables, _, loadings = read_loadings(model_path)
    if factors is not None:
        if not 1 <= factors <= loadings.shape[1]:
            raise click.BadParameter(
                f"must be in [1, {loadings.shape[1]}]", param_hint="--factors"
            )
        loadings = loadings[:, :factors]
    model = FactorModel(loadings)
    sim = simulate(model, samples, seed)
    write_table_csv(out_path, sim.values, variables)
    deviation = float(np.max(np.abs(covariance_matrix(sim) - implied_correlation(model))))
    return {
        "samples": samples,
        "seed": seed,
        "factors": model.k,
        "variables": variables,
        "modeled_variance": model.modeled_variance.tolist(),
        "max_deviation": deviation,
    }


@click.group()
def cli():
    """Principal components and factor loadings from a numeric CSV table."""


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False), help="Input CSV.")
@click.option("--header/--no-header", default=True, show_default=True, help="First row holds column names.")
@click.option("--mode", type=click.Choice(MODES), default="pca", show_default=True)
@click.option("--threshold", type=click.FloatRange(0, 1, min_open=True), default=DEFAULT_THRESHOLD,
              show_default=True, help="Share of each variable's variance the kept components must carry.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="JSON report path (stdout if omitted).")
@click.option("--export-csv-dir", type=click.Path(file_okay=False), help="Also write every matrix as CSV here.")
def analyze(input_path, header, mode, threshold, out_path, export_csv_dir):
    """Correlation, eigen-structure, loadings and the selected k."""
    report = run_analysis(ingest_csv(input_path, header), threshold, mode)
    text = report.to_json()
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
        click.echo(f"selected_k: {report.selected_k} of {len(report.eigenvalues)}", err=True)
    else:
        click.echo(text, nl=False)
    if export_csv_dir:
        report.export_csv(export_csv_dir)


@cli.command("simulate")
@click.option("--model", "model_path", required=True, type=click.Path(dir_okay=False),
              help="JSON report or loadings CSV from analyze.")
@click.option("--samples", type=click.IntRange(min=2), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--factors", type=click.IntRange(min=1), default=None, help="Use only the first N factors.")
def simulate_cmd(model_path, samples, seed, out_path, factors):
    """Monte Carlo draws of the variables from independent normal factors."""
    summary = run_simulation(model_path, samples, seed, out_path, factors)
    click.echo(f"wrote {samples} samples of {len(summary['variables'])} variables "
               f"from {summary['factors']} factors to {out_path}")
    click.echo(f"max deviation (empirical vs implied): {summary['max_deviation']!r}")
    if summary["factors"] < len(summary["variables"]):
        for name, v in zip(summary["variables"], summary["modeled_variance"]):
            click.echo(f"modeled variance {name}: {v!r}")


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--header/--no-header", default=True, show_default=True)
def verify(input_path, header):
    """Check loadings U*S against correlations measured from the data."""
    result = verify_identity(ingest_csv(input_path, header))
    click.echo(f"max deviation: {result.max_deviation!r}")
    click.echo(f"components compared: {result.compared}, skipped (zero variance): {result.skipped}")
    if not result.passed:
        click.echo(f"FAILED: deviation exceeds {result.tolerance!r}", err=True)
        raise click.exceptions.Exit(EXIT_NUMERICAL)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        rv = cli.main(args=argv, prog_name="pcaloadings", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_DATA
    except NumericalError as exc:
        click.echo(f"numerical error: {exc}", err=True)
        return EXIT_NUMERICAL
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
