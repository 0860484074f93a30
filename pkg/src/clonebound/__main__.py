#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-07
# @Filename: __main__.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import json
import logging
import pathlib

from typing import Any

import click

from sdsstools.daemonizer import cli_coro


path_type = click.Path(dir_okay=False, path_type=pathlib.Path)


def common_options(func):
    """Options shared by all the commands."""

    func = click.option(
        "--tol",
        "tolerances",
        type=str,
        help="Tolerance overrides as key=value,key=value.",
    )(func)
    func = click.option(
        "--output",
        "output_path",
        type=path_type,
        help="File where to write the report. Defaults to stdout.",
    )(func)
    func = click.option(
        "--format",
        "output_format",
        type=click.Choice(["json", "csv"], case_sensitive=False),
        default="json",
        show_default=True,
        help="Format of the report.",
    )(func)

    return func


def counts_options(func):
    func = click.option("--L", "l_copies", type=int, help="Number of copies.")(func)
    func = click.option("--N", "n_originals", type=int, help="Number of originals.")(
        func
    )

    return func


def sweep_option(func):
    return click.option(
        "--sweep",
        type=str,
        help="Sweep a parameter as name:start:stop:steps.",
    )(func)


async def execute(command: str, **kwargs: Any):
    """Builds the run configuration, runs the command, and exits."""

    from clonebound.cli import format_report, make_run_config, run
    from clonebound.exceptions import ParseError
    from clonebound.utils import get_exception_data

    kwargs["N"] = kwargs.pop("n_originals", None)
    kwargs["L"] = kwargs.pop("l_copies", None)

    try:
        config = make_run_config(command=command, **kwargs)
    except ParseError as err:
        error = {"error": get_exception_data(err), "exit_status": err.exit_status}
        click.echo(json.dumps(error, indent=2), err=True)
        raise click.exceptions.Exit(err.exit_status)

    result = await run(config)

    if result.report is None:
        click.echo(json.dumps(result.error, indent=2), err=True)
        raise click.exceptions.Exit(result.exit_status)

    text = format_report(result.report, config.output_format)
    if config.output_path is not None:
        config.output_path.write_text(text)
    else:
        click.echo(text)

    raise click.exceptions.Exit(result.exit_status)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug output.")
def clonebound(verbose: bool = False):
    """Bounds and circuits for approximate quantum cloning."""

    if verbose:
        from clonebound import log

        log.setLevel(logging.DEBUG)
        if log.sh is not None:
            log.sh.setLevel(logging.DEBUG)


@clonebound.command()
@click.option(
    "--scenario",
    "input_path",
    type=path_type,
    help="JSON file with the states, priors, and ancillas to clone.",
)
@click.option("--f", "f", type=float, help="Overlap between the two pure states.")
@click.option("--phi", "phi", type=float, help="Overlap between the ancillas.")
@click.option("--p-minus", "p_minus", type=float, help="Prior of the minus state.")
@counts_options
@sweep_option
@common_options
@cli_coro()
async def bound(**kwargs):
    """Lower bound on the relative cloning error."""

    await execute("bound", **kwargs)


@clonebound.command()
@click.option("--f", "f", type=float, help="Overlap between the two pure states.")
@counts_options
@sweep_option
@common_options
@cli_coro()
async def criteria(**kwargs):
    """Optimal values of the alternative cloning criteria."""

    await execute("criteria", **kwargs)


@clonebound.command()
@click.option("--eps", "eps", type=float, help="Distance to the limiting overlap.")
@counts_options
@common_options
@cli_coro()
async def table1(**kwargs):
    """Checks the asymptotic expansions of the cloning criteria."""

    await execute("table1", **kwargs)


@clonebound.command()
@click.option("--alpha0", "alpha0", type=float, help="Angle of the input states.")
@click.option("--theta", "theta", type=float, help="Angle of the ancilla states.")
@click.option("--p-minus", "p_minus", type=float, help="Prior of the minus state.")
@counts_options
@sweep_option
@common_options
@cli_coro()
async def simulate(**kwargs):
    """Simulates the cloning circuit and compares it with the bound."""

    await execute("simulate", **kwargs)


@clonebound.command()
@click.option(
    "--scenario",
    "input_path",
    type=path_type,
    help="JSON file with the scenario whose program will be minimised.",
)
@click.option(
    "--program",
    "program_path",
    type=path_type,
    help="JSON file with the program to minimise.",
)
@common_options
@cli_coro()
async def optimize(**kwargs):
    """Minimises the sine-sum program over the angle box."""

    await execute("optimize", **kwargs)


if __name__ == "__main__":
    clonebound()
