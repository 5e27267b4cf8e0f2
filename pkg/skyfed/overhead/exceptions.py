from skyfed.exceptions import SkyfedError


class RoutingError(SkyfedError):
    """A model copy has no route to its destination."""
