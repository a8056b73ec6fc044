"""Experiment dispatch, output emission and run manifests."""

from __future__ import annotations

import hashlib
import json
import logging
import platform
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import pydantic
import scipy

from dnls_lab import __version__
from dnls_lab.errors import InvalidParameterError
from dnls_lab.experiments import ALL_EXPERIMENTS, EXIT_NUMERICAL, Experiment, ExperimentResult
from dnls_lab.models import RunConfig
from dnls_lab.settings import settings

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
REPORT = "report.json"


def git_blob_hash(content: bytes) -> str:
    """sha1 of the content as git stores it as a blob."""
    header = f"blob {len(content)}\0".encode()
    return hashlib.sha1(header + content).hexdigest()


def versions() -> dict[str, str]:
    return {
        "dnls_lab": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "pydantic": pydantic.VERSION,
    }


def write_csv(frame: pd.DataFrame, path: Path) -> bytes:
    """Header row always; floats as shortest round-trip decimals; LF line endings."""
    content = frame.to_csv(index=False, lineterminator="\n", na_rep="nan").encode()
    path.write_bytes(content)
    return content


@dataclass
class RunOutcome:
    """What one run produced."""

    subcommand: str
    exit_code: int
    directory: Path
    result: ExperimentResult
    manifest: dict[str, Any] = field(default_factory=dict)


class ExperimentRunner:
    """Runs registered experiments and writes their outputs into one directory per run."""

    def __init__(self, experiments: dict[str, Experiment]) -> None:
        self.experiments = experiments

    @classmethod
    def create_default(cls) -> "ExperimentRunner":
        """Create a runner with every lab subcommand registered.

        Returns:
            Configured ExperimentRunner instance
        """
        return cls({exp.name: exp() for exp in ALL_EXPERIMENTS})

    @property
    def names(self) -> list[str]:
        return list(self.experiments)

    def output_directory(
        self, subcommand: str, config: RunConfig, override: str | None = None
    ) -> Path:
        directory = override or config.output.directory
        return Path(directory) if directory else Path(settings.output_dir) / subcommand

    def run(
        self, subcommand: str, config: RunConfig, output_dir: str | None = None
    ) -> RunOutcome:
        """Execute one subcommand and write its tables, report and manifest.

        Args:
            subcommand: Registered experiment name
            config: Validated run configuration
            output_dir: Overrides output.directory from the config

        Returns:
            RunOutcome with the exit code and the written manifest
        """
        experiment = self.experiments.get(subcommand)
        if experiment is None:
            raise InvalidParameterError(
                f"unknown subcommand '{subcommand}'; expected one of {self.names}"
            )
        directory = self.output_directory(subcommand, config, output_dir)
        directory.mkdir(parents=True, exist_ok=True)

        logger.info("running %s into %s", subcommand, directory)
        start = time.perf_counter()
        result = experiment.execute(config)
        elapsed = time.perf_counter() - start

        hashes: dict[str, str] = {}
        try:
            hashes = self.write_outputs(result, set(config.output.formats), directory)
        except Exception as e:
            logger.exception("%s: writing outputs failed", subcommand)
            result.success = False
            result.error = f"{type(e).__name__}: {e}"
            result.exit_code = EXIT_NUMERICAL

        manifest = {
            "subcommand": subcommand,
            "exit_code": result.exit_code,
            "error": result.error,
            "config": config.echo(),
            "versions": versions(),
            "timing_seconds": elapsed,
            "output_hashes": dict(sorted(hashes.items())),
        }
        (directory / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        logger.info("%s finished in %.2fs with exit code %d", subcommand, elapsed, result.exit_code)
        return RunOutcome(subcommand, result.exit_code, directory, result, manifest)

    @staticmethod
    def write_outputs(
        result: ExperimentResult, formats: set[str], directory: Path
    ) -> dict[str, str]:
        """Write CSV tables and report.json; returns git blob hashes by file name."""
        hashes: dict[str, str] = {}
        if result.output is None:
            return hashes
        if "csv" in formats:
            for name, table in result.output.tables.items():
                hashes[name] = git_blob_hash(write_csv(table, directory / name))
        if "json" in formats:
            report = result.output.report.model_dump(mode="json")
            content = (json.dumps(report, indent=2, sort_keys=True) + "\n").encode()
            (directory / REPORT).write_bytes(content)
            hashes[REPORT] = git_blob_hash(content)
        return hashes
