"""Logging setup for the command line."""

import logging

from rich.console import Console
from rich.logging import RichHandler

stderr_console = Console(stderr=True, emoji=False)


def setup_logging(verbose: bool = False) -> None:
    """Route the ``coxtype`` loggers through a rich handler on stderr."""
    level = logging.DEBUG if verbose else logging.INFO
    handler = RichHandler(console=stderr_console, show_path=verbose, rich_tracebacks=True)
    handler.setFormatter(logging.Formatter("%(message)s"))

    root = logging.getLogger("coxtype")
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False
