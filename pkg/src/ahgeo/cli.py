"""Command-line interface.

Settings resolve in precedence order: command-line flag, then config file,
then the AHGEO_TOL environment variable, then built-in defaults.  Exit
status is 0 for a clean run, 1 when a mathematical check fails or a
computation aborts, 2 for usage and configuration errors.
"""

from __future__ import annotations

import os
import sys

import click

from . import __version__
from . import report
from . import runners
from .catalog import catalog_get, catalog_list
from .errors import (AhgeoError, ConfigParseError, IncompatibleEntry,
                     UnknownEntry)

_KEY_TYPES = {
    "tol": float,
    "seed": int,
    "smax": float,
    "ladder_rmin": float,
    "format": str,
}


def _comment_start(line):
    quote = None
    for i, ch in enumerate(line):
        if quote is None and ch in "\"'":
            quote = ch
        elif ch == quote:
            quote = None
        elif ch == "#" and quote is None:
            return i
    return len(line)


def _parse_value(text, line_no, col):
    if text.startswith(('"', "'")):
        q = text[0]
        if len(text) < 2 or not text.endswith(q) or len(text) == 1:
            raise ConfigParseError("unterminated string", line_no, col)
        return text[1:-1]
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ConfigParseError(
            f"cannot parse value {text!r} (strings must be quoted)",
            line_no, col) from None


def parse_config(text):
    """Flat key = value configuration with # comments.

    Accepts quoted strings, integers, floats and true/false.  Raises
    ConfigParseError carrying the 1-based line and column of the problem.
    """
    out = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw[:_comment_start(raw)]
        if not line.strip():
            continue
        key_col = len(line) - len(line.lstrip()) + 1
        if "=" not in line:
            raise ConfigParseError("expected key = value", line_no, key_col)
        key_text, _, value_text = line.partition("=")
        key = key_text.strip()
        if not key or not all(c.isalnum() or c in "_-" for c in key):
            raise ConfigParseError(f"malformed key {key.strip()!r}",
                                   line_no, key_col)
        if key not in _KEY_TYPES:
            known = ", ".join(sorted(_KEY_TYPES))
            raise ConfigParseError(
                f"unknown key {key!r} (known: {known})", line_no, key_col)
        if key in out:
            raise ConfigParseError(f"duplicate key {key!r}", line_no, key_col)
        stripped = value_text.strip()
        value_col = len(key_text) + 2 + (len(value_text)
                                         - len(value_text.lstrip()))
        if not stripped:
            raise ConfigParseError("missing value", line_no, value_col)
        value = _parse_value(stripped, line_no, value_col)
        out[key] = _check_type(key, value, line_no, value_col)
    return out


def _check_type(key, value, line_no, col):
    want = _KEY_TYPES[key]
    if want is float and isinstance(value, (int, float)) \
            and not isinstance(value, bool):
        value = float(value)
        if not value > 0:
            raise ConfigParseError(f"{key} must be positive", line_no, col)
        return value
    if want is int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if want is str and isinstance(value, str):
        if key == "format" and value not in report.FORMATS:
            raise ConfigParseError(
                f"format must be one of {', '.join(report.FORMATS)}",
                line_no, col)
        return value
    raise ConfigParseError(
        f"{key} expects a {want.__name__} value", line_no, col)


def _resolve_settings(config_path, flags):
    settings = dict(runners.DEFAULT_CONFIG)
    settings["format"] = "json"

    env_tol = os.environ.get("AHGEO_TOL")
    if env_tol is not None:
        try:
            val = float(env_tol)
        except ValueError:
            raise click.UsageError(
                f"AHGEO_TOL must be a number, got {env_tol!r}")
        if not val > 0:
            raise click.UsageError("AHGEO_TOL must be positive")
        settings["tol"] = val

    if config_path is not None:
        try:
            with open(config_path, encoding="utf-8") as fh:
                settings.update(parse_config(fh.read()))
        except OSError as exc:
            raise click.UsageError(f"cannot read config file: {exc}")
        except ConfigParseError as exc:
            raise click.UsageError(f"{config_path}: {exc}")

    for key, value in flags.items():
        if value is not None:
            settings[key] = value
    return settings


@click.group()
@click.version_option(__version__)
@click.option("--config", "config_path", metavar="FILE", default=None,
              help="Flat key = value settings file.")
@click.option("--tol", type=float, default=None,
              help="Override residual gate tolerances.")
@click.option("--seed", type=int, default=None,
              help="Seed for sampled points and random checks.")
@click.option("--smax", type=float, default=None,
              help="Profile integration range for catenoid entries.")
@click.option("--ladder-rmin", type=float, default=None,
              help="Innermost radius of extrapolation ladders.")
@click.option("--format", "fmt", type=click.Choice(report.FORMATS),
              default=None, help="Output serialization (default json).")
@click.pass_context
def main(ctx, config_path, tol, seed, smax, ladder_rmin, fmt):
    """Checks and reports for asymptotically hyperbolic geometries.

    ENTRY arguments name catalog items such as 'catenoid(2, 1.0)' or
    'hyperbolic-normal-sphere(3)'; run 'ahgeo catalog' for the full list.
    """
    ctx.obj = _resolve_settings(config_path, {
        "tol": tol, "seed": seed, "smax": smax,
        "ladder_rmin": ladder_rmin, "format": fmt,
    })


def _execute(runner, entry, settings):
    try:
        doc = runner(entry, settings)
    except (UnknownEntry, IncompatibleEntry) as exc:
        raise click.UsageError(str(exc))
    except AhgeoError as exc:
        click.echo(f"computation failed: {exc}", err=True)
        sys.exit(1)
    sys.stdout.buffer.write(report.emit(doc, settings["format"]))
    sys.stdout.buffer.flush()
    if not doc.passed:
        failed = ", ".join(c.name for c in doc.checks if not c.passed)
        click.echo(f"FAILED: {failed}", err=True)
        sys.exit(1)


@main.command()
@click.argument("entry")
@click.pass_obj
def expand(settings, entry):
    """Boundary metric expansion with dual-route coefficient checks."""
    _execute(runners.run_expand, entry, settings)


@main.command()
@click.argument("entry")
@click.pass_obj
def classify(settings, entry):
    """Boundary-regularity classification of a collar family."""
    _execute(runners.run_classify, entry, settings)


@main.command()
@click.argument("entry")
@click.pass_obj
def catenoid(settings, entry):
    """Solve a minimal rotation profile and verify its properties."""
    _execute(runners.run_catenoid, entry, settings)


@main.command()
@click.argument("entry")
@click.pass_obj
def cheeger(settings, entry):
    """Cheeger-constant bounds and isoperimetric ratio checks."""
    _execute(runners.run_cheeger, entry, settings)


@main.command()
@click.argument("entry")
@click.pass_obj
def verify(settings, entry):
    """Run the identity battery appropriate to an entry's kind."""
    _execute(runners.run_verify, entry, settings)


@main.command()
@click.argument("name", required=False, default=None)
@click.pass_obj
def catalog(settings, name):
    """List registered entries, or show one entry in detail."""
    if name is not None:
        try:
            entry = catalog_get(name)
        except UnknownEntry as exc:
            raise click.UsageError(str(exc))
        click.echo(f"name:       {entry.name}")
        click.echo(f"kind:       {entry.kind}")
        click.echo(f"parameters: {entry.parameters}")
        click.echo(f"note:       {entry.note}")
        if entry.sample_box is not None:
            box = ", ".join(f"[{lo:g}, {hi:g}]" for lo, hi in entry.sample_box)
            click.echo(f"sample box: {box}")
        return
    try:
        entries = catalog_list()
    except RuntimeError as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    width = max(len(e.name) for e in entries)
    kw = max(len(e.kind) for e in entries)
    for e in entries:
        click.echo(f"{e.name:<{width}}  {e.kind:<{kw}}  {e.note}")
