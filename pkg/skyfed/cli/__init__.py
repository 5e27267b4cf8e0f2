from .cli import skyfed
