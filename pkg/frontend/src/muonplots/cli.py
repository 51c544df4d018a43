"""Command-line figure rendering: muonplots render --kind ... --in ... --out ..."""
from __future__ import annotations

import sys

import click

from .figures import KINDS, EmptyDataError, FigureSpec, SchemaMismatchError, render


@click.group()
def main():
    """Render muontomo CSV data products into figures."""


@main.command("render")
@click.option("--kind", "kind", required=True,
              type=click.Choice(sorted(KINDS)), help="Figure kind.")
@click.option("--in", "product", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Input CSV product.")
@click.option("--out", "output", required=True,
              type=click.Path(dir_okay=False), help="Output image (png/svg).")
@click.option("--column", "column", default="solid_angle_tilted_sr",
              show_default=True, help="Value column for heatmap figures.")
def cmd_render(kind, product, output, column):
    """Render one figure from one CSV product."""
    spec = FigureSpec(product, kind, output, value_column=column)
    try:
        meta = render(spec)
    except (SchemaMismatchError, EmptyDataError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        sys.exit(2)
    for key, value in meta.items():
        click.echo(f"{key}={value}")


if __name__ == "__main__":
    main()
