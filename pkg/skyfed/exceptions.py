from typing import Optional


class SkyfedError(Exception):
    pass


class ConfigError(SkyfedError):
    """
    Invalid experiment configuration. ``line`` is the config file line which
    caused it, when known.
    """

    def __init__(
        self, message: str, line: Optional[int] = None, path: Optional[str] = None
    ):
        self.line = line
        self.path = path
        location = ""
        if path is not None and line is not None:
            location = f"{path}:{line}: "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")
