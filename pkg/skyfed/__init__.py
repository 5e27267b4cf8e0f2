DEFAULT_VERSION = "0.0.0"

try:
    from ._version import version as __version__
except ImportError:
    __version__ = DEFAULT_VERSION
