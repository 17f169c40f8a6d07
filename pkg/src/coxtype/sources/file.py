"""Datum files: one datum per line, ``#`` starts a comment."""

from pathlib import Path

from coxtype.exceptions import ConfigError
from coxtype.sources.base import DatumSource


class FileSource(DatumSource):
    """Reads ``@path`` targets."""

    def read_lines(self, target: str) -> list[str]:
        path = Path(target.removeprefix("@"))
        if not path.is_file():
            raise ConfigError(f"Datum file not found: {path}")
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"Cannot read {path}: {e}") from e

        lines = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
        return lines
