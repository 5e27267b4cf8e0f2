from skyfed.exceptions import SkyfedError


class SummaryError(SkyfedError):
    """A metrics file could not be summarised; the message names file and line."""
