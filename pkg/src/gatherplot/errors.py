"""Exception hierarchy shared across the engine."""


class GatherplotError(Exception):
    """Base class for all engine errors."""


class DataFormatError(GatherplotError):
    """Malformed tabular input: ragged rows, empty files, unparseable cells."""


class EmptyDatasetError(DataFormatError):
    """Input had a header (or nothing) but no data rows."""


class ParameterError(GatherplotError):
    """An operation was called with an out-of-domain parameter."""


class UnknownDimensionError(ParameterError):
    """A dimension or value key was named that the dataset does not contain."""

    def __init__(self, name: str, message: str | None = None):
        self.name = name
        super().__init__(message or f"unknown dimension {name!r}")


class CapacityError(GatherplotError):
    """The pixel extent cannot hold the requested segments at minimum width."""
