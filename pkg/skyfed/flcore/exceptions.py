from skyfed.exceptions import SkyfedError


class FLCoreError(SkyfedError):
    pass


class DimensionMismatchError(FLCoreError):
    pass


class AggregationWeightError(FLCoreError):
    pass


class EmptyShardError(FLCoreError):
    pass


class NonFiniteModelError(FLCoreError):
    pass


class DatasetError(FLCoreError):
    pass
