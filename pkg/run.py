#!/usr/bin/env python3
"""
KnnMap Application Entry Point

Run this file with a command to count, enumerate, verify or export
nonorientable regular embeddings of K_{n,n}:

    python run.py count 14
    python run.py verify 2 13 --brute 13
"""

import json

import click
from flask.cli import FlaskGroup

from app import create_app
from app.services.search_config_service import get_search_config

app = create_app()


@app.cli.command()
def search_config():
    """Show the resolved search configuration."""
    with app.app_context():
        click.echo(json.dumps(get_search_config(), indent=app.config['JSON_INDENT']))


cli = FlaskGroup(create_app=lambda: app)

if __name__ == '__main__':
    cli()
