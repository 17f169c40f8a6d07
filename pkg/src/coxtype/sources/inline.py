"""Inline datum text given directly on the command line."""

from coxtype.sources.base import DatumSource


class InlineSource(DatumSource):
    """The target is the datum itself."""

    def read_lines(self, target: str) -> list[str]:
        return [target]
