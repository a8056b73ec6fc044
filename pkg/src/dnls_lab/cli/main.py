"""dnls-lab CLI - run simulations and verification experiments from a config file."""

import json
import logging
import sys
from pathlib import Path
from typing import Any

import click
import yaml
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from dnls_lab import __version__
from dnls_lab.experiments import ALL_EXPERIMENTS, EXIT_CHECK_FAILED
from dnls_lab.models import RunConfig
from dnls_lab.orchestration.runner import ExperimentRunner, RunOutcome
from dnls_lab.settings import settings

console = Console()


def setup_logging(level: str) -> None:
    """Route the package logger through rich on stderr."""
    logger = logging.getLogger("dnls_lab")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=Console(stderr=True), show_path=False))
    logger.setLevel(level.upper())
    logger.propagate = False


def load_run_config(file_path: str) -> RunConfig:
    """Load and validate a run configuration from YAML or JSON.

    Every failure becomes a single-line ClickException (exit code 1) naming the field.
    """
    path = Path(file_path)
    if not path.exists():
        raise click.ClickException(f"invalid config: file not found: {file_path}")

    content = path.read_text()
    try:
        data = json.loads(content) if path.suffix == ".json" else yaml.safe_load(content)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        first = str(e).splitlines()[0] if str(e) else type(e).__name__
        raise click.ClickException(f"invalid config: cannot parse {file_path}: {first}") from None
    if not isinstance(data, dict):
        raise click.ClickException(f"invalid config: {file_path} must hold a mapping")

    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        loc = ".".join(str(part) for part in error["loc"]) or "<root>"
        raise click.ClickException(f"invalid config: {loc}: {error['msg']}") from None


def _summary(outcome: RunOutcome) -> Table:
    table = Table(title=f"{outcome.subcommand} -> {outcome.directory}")
    table.add_column("check")
    table.add_column("value", justify="right")
    table.add_column("threshold", justify="right")
    table.add_column("status")
    output = outcome.result.output
    for o in output.report.outcomes if output else []:
        threshold = "" if o.threshold is None else f"{o.kind} {o.threshold:.4g}"
        status = "info" if o.informational else ("pass" if o.passed else "FAIL")
        table.add_row(o.name, f"{o.value:.6g}", threshold, status)
    return table


def _report_failures(outcome: RunOutcome) -> None:
    """One structured stderr line per failure."""
    result = outcome.result
    if outcome.exit_code == EXIT_CHECK_FAILED and result.output is not None:
        for o in result.output.report.get_failed():
            click.echo(
                f"check_failed name={o.name} value={o.value!r} "
                f"threshold={o.threshold!r} kind={o.kind}",
                err=True,
            )
    elif result.error:
        click.echo(f"error exit_code={outcome.exit_code} detail={result.error}", err=True)


@click.group()
@click.version_option(version=__version__, prog_name="dnls-lab")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Overrides DNLS_LAB_LOG_LEVEL",
)
def cli(log_level: str | None) -> None:
    """dnls-lab - simulation and verification lab for the derivative NLS family.

    Every subcommand takes a YAML (or JSON) run configuration and writes CSV plot
    data, a report and a manifest into the output directory.
    """
    setup_logging(log_level or settings.log_level)


def _experiment_command(name: str, description: str) -> click.Command:
    @click.command(name=name, help=f"{description}.")
    @click.argument("config_path", type=click.Path())
    @click.option("--output", "-o", type=click.Path(), default=None, help="Output directory")
    def command(config_path: str, output: str | None) -> None:
        config = load_run_config(config_path)
        runner = ExperimentRunner.create_default()
        outcome = runner.run(name, config, output)
        console.print(_summary(outcome))
        if outcome.exit_code:
            _report_failures(outcome)
            sys.exit(outcome.exit_code)

    return command


for _experiment in ALL_EXPERIMENTS:
    cli.add_command(_experiment_command(_experiment.name, _experiment.description))


@cli.command()
@click.option("--output", "-o", type=click.Path(), default="run.yaml", help="Output file path")
def init(output: str) -> None:
    """Create a run configuration template.

    Example:
        dnls-lab init -o run.yaml
    """
    template: dict[str, Any] = {
        "grid": {"L": 40.0, "N": 256, "dt": 0.001, "n_steps": 200},
        "equation": {"alpha": -1.0, "domain": "full"},
        "data": {
            "initial": {"generator": "gaussian", "amplitude": 0.05, "width": 1.0},
            "boundary": {"generator": "zero"},
        },
        "checks": [{"name": "pde_residual", "tolerance": 1e-3}],
        "output": {"formats": ["csv", "json"]},
    }
    Path(output).write_text(yaml.safe_dump(template, sort_keys=False))
    click.echo(f"Run configuration template created: {output}")
    click.echo(f"  dnls-lab simulate {output}")


def main() -> None:
    """Main entry point."""
    cli()


if __name__ == "__main__":
    main()
