"""Datum sources: inline grammar text or ``@path`` files."""

from coxtype.core.root_data import CoxeterDatum
from coxtype.sources.base import DatumSource
from coxtype.sources.file import FileSource
from coxtype.sources.inline import InlineSource


def get_source(target: str) -> DatumSource:
    if target.startswith("@"):
        return FileSource()
    return InlineSource()


def load_data(target: str) -> list[CoxeterDatum]:
    """All data named by a ``--datum`` argument."""
    return get_source(target).get_data(target)


__all__ = ["DatumSource", "FileSource", "InlineSource", "get_source", "load_data"]
