from skyfed.exceptions import SkyfedError


class TopologyError(SkyfedError):
    pass


class InfeasibleDensityError(TopologyError):
    pass
