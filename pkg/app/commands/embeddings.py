"""
Command-line surface for counting, enumerating, verifying and exporting
nonorientable regular embeddings of K_{n,n}.

Exit codes: 0 success, 1 mathematical disagreement, 2 usage or domain
error, 3 I/O error.
"""

import json
import logging
import os
import sys

import click
from flask import Blueprint, current_app

from app.exceptions import EmbeddingError
from app.services.bipartite_maps import deltabar_nx, map_of_deltabar, nnon_rejection
from app.services.classifier import EmbeddingClassifier
from app.services.flag_maps import dumps, invariants, is_regular, loads
from app.services.number_theory import count_details

logger = logging.getLogger(__name__)

bp = Blueprint('embeddings', __name__, cli_group=None)

EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_IO = 3

format_option = click.option('--format', 'output_format', type=click.Choice(['json', 'text']),
                             default='text', show_default=True, help='Output format.')


def _fail(message, code):
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _echo_json(data):
    click.echo(json.dumps(data, indent=current_app.config['JSON_INDENT']))


def _member_map(n, x):
    """Derived flag map of the constructive member (n, x), or exit 2 with the reason."""
    reason = nnon_rejection(n, x)
    if reason:
        _fail(f"(n={n}, x={x}) is not in the constructive family: {reason}", EXIT_USAGE)
    try:
        return map_of_deltabar(deltabar_nx(n, x))
    except EmbeddingError as e:
        _fail(str(e), EXIT_USAGE)


def _write(path, text):
    try:
        with open(path, 'w') as handle:
            handle.write(text + '\n')
    except OSError as e:
        _fail(f"Cannot write {path}: {e}", EXIT_IO)


@bp.cli.command('count')
@click.argument('n', type=click.IntRange(min=2))
@format_option
def count(n, output_format):
    """Print the predicted number of embeddings for K_{n,n}."""
    details = count_details(n)
    if output_format == 'json':
        _echo_json(details)
    else:
        click.echo(details['count'])


@bp.cli.command('enumerate')
@click.argument('n', type=click.IntRange(min=2))
@click.option('--export', 'export_dir', type=click.Path(file_okay=False),
              help='Directory to write one flag-map file per record.')
@format_option
def enumerate_embeddings(n, export_dir, output_format):
    """List the constructive embeddings of K_{n,n}."""
    try:
        records = EmbeddingClassifier().classify_constructive(n)
    except EmbeddingError as e:
        _fail(str(e), EXIT_USAGE)

    if export_dir:
        try:
            os.makedirs(export_dir, exist_ok=True)
        except OSError as e:
            _fail(f"Cannot create {export_dir}: {e}", EXIT_IO)
        for record in records:
            flag_map = record.flag_map
            if flag_map is None:
                flag_map = map_of_deltabar(deltabar_nx(record.n, record.x))
            name = f"knn_{n}_x{record.x}.json" if record.x is not None else f"knn_{n}_projective.json"
            _write(os.path.join(export_dir, name), dumps(flag_map))
            logger.info(f"Exported {record} to {name}")

    if output_format == 'json':
        _echo_json([record.to_dict() for record in records])
    else:
        for record in records:
            inv = record.invariants
            click.echo(f"n={record.n} x={record.x} class={record.class_id} flags={record.group_order} "
                       f"V={inv.vertices} E={inv.edges} F={inv.faces} crosscaps={inv.crosscaps}")


@bp.cli.command('verify')
@click.argument('n_low', type=click.IntRange(min=2))
@click.argument('n_high', type=click.IntRange(min=2))
@click.option('--brute', 'brute_max', type=click.IntRange(min=0), default=0, show_default=True,
              help='Brute-force every n up to this bound.')
@click.option('--workers', type=click.IntRange(min=1), default=None,
              help='Worker processes for brute force (default from KNN_WORKERS).')
@format_option
def verify(n_low, n_high, brute_max, workers, output_format):
    """Check predicted, constructive and brute-force counts over a range of n."""
    if n_low > n_high:
        _fail(f"Empty range {n_low}..{n_high}", EXIT_USAGE)
    try:
        classifier = EmbeddingClassifier({'workers': workers})
        reports = classifier.verify_theorem(n_low, n_high, brute_max)
    except EmbeddingError as e:
        _fail(str(e), EXIT_USAGE)

    for report in reports:
        if output_format == 'json':
            click.echo(json.dumps(report.to_dict()))
        else:
            brute = '-' if report.brute_count is None else report.brute_count
            status = 'ok' if report.success else 'DISAGREE'
            click.echo(f"n={report.n} predicted={report.predicted} constructive={report.constructive_count} "
                       f"brute={brute} {status}")

    failed = [report.n for report in reports if not report.success]
    if failed:
        _fail(f"disagreement at n = {', '.join(map(str, failed))}", EXIT_DISAGREEMENT)


@bp.cli.command('invariants')
@click.argument('n', type=click.IntRange(min=2))
@click.argument('x', type=int)
@format_option
def show_invariants(n, x, output_format):
    """Print the surface invariants of the embedding for (n, x)."""
    result = invariants(_member_map(n, x))
    if output_format == 'json':
        _echo_json({'n': n, 'x': x, **result.to_dict()})
    else:
        click.echo(f"V={result.vertices} E={result.edges} F={result.faces} "
                   f"chi={result.euler_characteristic} crosscaps={result.crosscaps} "
                   f"valency={result.valency} covalency={result.covalency}")


@bp.cli.command('export')
@click.argument('n', type=click.IntRange(min=2))
@click.argument('x', type=int)
@click.option('--output', 'output_path', required=True, type=click.Path(dir_okay=False),
              help='File to write the flag map to.')
def export(n, x, output_path):
    """Write the flag map of the embedding for (n, x) as JSON."""
    flag_map = _member_map(n, x)
    _write(output_path, dumps(flag_map))
    click.echo(output_path)


@bp.cli.command('inspect')
@click.argument('path', type=click.Path(dir_okay=False))
@format_option
def inspect(path, output_format):
    """Reload a flag-map file, revalidate it and print its invariants."""
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as e:
        _fail(f"Cannot read {path}: {e}", EXIT_IO)
    try:
        flag_map = loads(text)
    except EmbeddingError as e:
        _fail(f"{path}: {e}", EXIT_USAGE)

    result = invariants(flag_map)
    regular = is_regular(flag_map)
    if output_format == 'json':
        _echo_json({'flag_count': flag_map.flag_count, 'regular': regular, **result.to_dict()})
    else:
        click.echo(f"{flag_map.flag_count} flags, {'regular' if regular else 'not regular'}, {result}")
