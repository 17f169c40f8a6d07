"""Base class for datum sources."""

from abc import ABC, abstractmethod

from coxtype.core.parser import parse_datum
from coxtype.core.root_data import CoxeterDatum


class DatumSource(ABC):
    """Turns a ``--datum`` argument into Coxeter data."""

    @abstractmethod
    def read_lines(self, target: str) -> list[str]:
        """Return the datum texts named by ``target``.

        Raises:
            ConfigError: If a referenced file cannot be read.
        """
        pass

    def get_data(self, target: str) -> list[CoxeterDatum]:
        """Parse every datum text named by ``target``.

        Raises:
            DatumError: If a text is not a valid datum.
        """
        return [parse_datum(line) for line in self.read_lines(target)]
