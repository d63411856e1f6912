"""Service entry point: `matagent-serve --config service.json`."""

from __future__ import annotations

import click
import uvicorn

from .app import create_app
from .config import load_config


@click.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True),
              help="service configuration file (JSON; TOML on Python 3.11+)")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def main(config_path: str, host: str, port: int) -> None:
    config = load_config(config_path)
    app = create_app(config)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
