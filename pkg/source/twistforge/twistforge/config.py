# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Runtime configuration objects."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import psutil

JOBS_ENV_VAR = "TWISTFORGE_JOBS"


@dataclass(frozen=True)
class TateCfg:
    """Configuration for the Tate's-algorithm oracle."""

    restart_cap: int = 64
    """Maximum number of non-minimal restarts (division by [p, 0, 0, 0]) before giving up."""

    subloop_cap: int = 256
    """Maximum number of iterations of the I*_n sub-procedure."""


@dataclass(frozen=True)
class StrongMinCfg:
    """Configuration for the strongly-minimal normalization."""

    loop_slack: int = 4
    """Added to v(Δ) to obtain the iteration cap of every "repeat until" loop."""


@dataclass
class HarnessCfg:
    """Configuration for the differential-testing harness."""

    jobs: int | None = None
    """Number of worker processes. None resolves through :func:`resolve_jobs`."""

    chunk_size: int = 64
    """Number of (curve, d) work items handed to a worker at once."""

    minimize: bool = True
    """Whether disagreements are shrunk to a locally minimal witness."""

    paths: tuple[str, ...] = field(default=("fast", "model"))
    """Fast paths compared against the oracle at p = 2: "fast" reads q2_unit_twist, "model" builds the twist."""


def resolve_jobs(cli_value: int | None = None) -> int:
    """Resolve the number of worker processes.

    Precedence is the ``TWISTFORGE_JOBS`` environment variable, then the command-line value,
    then the number of physical cores, then 1.

    Args:
        cli_value: The value of ``--jobs``, if given.

    Returns:
        A positive job count.

    Raises:
        ValueError: If the environment variable or the command-line value is not a positive integer.
    """
    env_value = os.environ.get(JOBS_ENV_VAR)
    if env_value is not None and env_value.strip() != "":
        try:
            jobs = int(env_value)
        except ValueError:
            raise ValueError(f"{JOBS_ENV_VAR} must be a positive integer, got '{env_value}'.") from None
        if jobs <= 0:
            raise ValueError(f"{JOBS_ENV_VAR} must be a positive integer, got '{env_value}'.")
        return jobs
    if cli_value is not None:
        if cli_value <= 0:
            raise ValueError(f"--jobs must be a positive integer, got {cli_value}.")
        return cli_value
    cores = psutil.cpu_count(logical=False)
    return cores if cores else 1
