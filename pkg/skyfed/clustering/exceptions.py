from skyfed.exceptions import SkyfedError


class ClusteringError(SkyfedError):
    pass


class UnclusterableError(ClusteringError):
    pass
